//! Running suites under one or more pruning policies.

use rayon::prelude::*;
use serde::Serialize;

use crate::board::san::to_san;
use crate::eval::{Evaluator, Score};
use crate::search::{PruningPolicy, SearchLimits, SearchOptions, Searcher};

use super::epd::EpdRecord;
use super::HarnessError;

/// How each suite position is searched.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub search: SearchOptions,
    pub evaluator: Evaluator,
    /// Per-position node budget; a position that runs out is reported
    /// unsolved with the stats gathered so far.
    pub node_limit: Option<u64>,
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub jobs: usize,
    /// Skip the solved check, for suites whose bm opcodes are unreliable.
    pub count_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositionResult {
    pub id: String,
    /// Total nodes, full-width plus quiescence.
    pub nodes: u64,
    pub qnodes: u64,
    pub value: Score,
    /// SAN of the chosen move.
    pub best_move: String,
    /// `None` in count-only mode.
    pub solved: Option<bool>,
    pub zugzwang_researches: u64,
    /// False when the node budget ran out before the last iteration.
    pub complete: bool,
}

fn run_one(
    record: &EpdRecord,
    policy: PruningPolicy,
    depth: u32,
    options: &RunOptions,
) -> Result<PositionResult, HarnessError> {
    let limits = SearchLimits {
        depth,
        nodes: options.node_limit,
        time: None,
    };
    let mut searcher = Searcher::with_evaluator(policy, options.search.clone(), options.evaluator.clone());
    let result = searcher
        .search_root(&record.position, &limits)
        .map_err(|source| HarnessError::Search {
            id: record.label().to_string(),
            source,
        })?;
    let complete = !result.interrupted;
    let solved = (!options.count_only).then(|| complete && record.accepts(&result.best_move));
    Ok(PositionResult {
        id: record.label().to_string(),
        nodes: result.stats.total_nodes(),
        qnodes: result.stats.qnodes,
        value: result.value,
        best_move: to_san(&record.position, result.best_move),
        solved,
        zugzwang_researches: result.stats.zugzwang_researches,
        complete,
    })
}

fn run_tasks<T, F>(tasks: &[T], jobs: usize, f: F) -> Result<Vec<PositionResult>, HarnessError>
where
    T: Sync,
    F: Fn(&T) -> Result<PositionResult, HarnessError> + Sync + Send,
{
    if jobs <= 1 {
        return tasks.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    // Indexed collect keeps input order regardless of completion order.
    pool.install(|| tasks.par_iter().map(f).collect())
}

/// Searches every record with a fresh engine and returns one row per
/// record, in input order.
pub fn run_suite(
    records: &[EpdRecord],
    policy: PruningPolicy,
    depth: u32,
    options: &RunOptions,
) -> Result<Vec<PositionResult>, HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::EmptySuite);
    }
    run_tasks(records, options.jobs, |r| run_one(r, policy, depth, options))
}

/// `100 * (other - baseline) / baseline` with two decimals and an explicit
/// sign, e.g. `+267.46%`. Digits past the second decimal are dropped, not
/// rounded, which is how the published tables print them.
pub fn percent_delta(other: u64, baseline: u64) -> Result<String, HarnessError> {
    if baseline == 0 {
        return Err(HarnessError::ZeroBaseline);
    }
    let diff = i128::from(other) - i128::from(baseline);
    let hundredths = (diff.abs() * 10_000) / i128::from(baseline);
    let sign = if diff < 0 { '-' } else { '+' };
    Ok(format!("{sign}{}.{:02}%", hundredths / 100, hundredths % 100))
}

/// One policy at one depth over the whole suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub policy: PruningPolicy,
    pub depth: u32,
    pub total_nodes: u64,
    pub solved: usize,
    pub rows: Vec<PositionResult>,
}

impl Cell {
    fn new(policy: PruningPolicy, depth: u32, rows: Vec<PositionResult>) -> Cell {
        Cell {
            policy,
            depth,
            total_nodes: rows.iter().map(|r| r.nodes).sum(),
            solved: rows.iter().filter(|r| r.solved == Some(true)).count(),
            rows,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub positions: usize,
    /// Records removed by the king-and-pawns filter before the run.
    pub dropped: usize,
    pub policies: Vec<PruningPolicy>,
    pub baseline: PruningPolicy,
    pub depths: Vec<u32>,
    pub count_only: bool,
    /// Depth-major: all policies at the first depth, then the next depth.
    pub cells: Vec<Cell>,
}

impl SuiteReport {
    pub fn cell(&self, policy: PruningPolicy, depth: u32) -> Option<&Cell> {
        self.cells.iter().find(|c| c.policy == policy && c.depth == depth)
    }

    pub fn total_nodes(&self, policy: PruningPolicy, depth: u32) -> Option<u64> {
        self.cell(policy, depth).map(|c| c.total_nodes)
    }

    /// Percent delta of `policy` against the baseline at `depth`.
    pub fn delta(&self, policy: PruningPolicy, depth: u32) -> Option<String> {
        let base = self.total_nodes(self.baseline, depth)?;
        percent_delta(self.total_nodes(policy, depth)?, base).ok()
    }
}

/// What [`compare_policies`] runs.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub suite: String,
    pub policies: Vec<PruningPolicy>,
    /// Defaults to the last policy.
    pub baseline: Option<PruningPolicy>,
    pub depths: Vec<u32>,
    pub dropped: usize,
}

pub fn compare_policies(
    records: &[EpdRecord],
    plan: &Comparison,
    options: &RunOptions,
) -> Result<SuiteReport, HarnessError> {
    if plan.policies.len() < 2 {
        return Err(HarnessError::TooFewPolicies);
    }
    let mut seen = Vec::new();
    for p in &plan.policies {
        if seen.contains(p) {
            return Err(HarnessError::DuplicatePolicy(*p));
        }
        seen.push(*p);
    }
    let baseline = plan.baseline.unwrap_or(*plan.policies.last().unwrap());
    if !plan.policies.contains(&baseline) {
        return Err(HarnessError::BaselineNotCompared(baseline));
    }
    if plan.depths.is_empty() {
        return Err(HarnessError::NoDepths);
    }
    if records.is_empty() {
        return Err(HarnessError::EmptySuite);
    }

    let mut tasks = Vec::new();
    for &depth in &plan.depths {
        for &policy in &plan.policies {
            for record in records {
                tasks.push((depth, policy, record));
            }
        }
    }
    let mut rows = run_tasks(&tasks, options.jobs, |&(depth, policy, record)| {
        run_one(record, policy, depth, options)
    })?
    .into_iter();

    let mut cells = Vec::new();
    for &depth in &plan.depths {
        for &policy in &plan.policies {
            let chunk: Vec<PositionResult> = rows.by_ref().take(records.len()).collect();
            cells.push(Cell::new(policy, depth, chunk));
        }
    }
    Ok(SuiteReport {
        suite: plan.suite.clone(),
        positions: records.len(),
        dropped: plan.dropped,
        policies: plan.policies.clone(),
        baseline,
        depths: plan.depths.clone(),
        count_only: options.count_only,
        cells,
    })
}
