//! The `nullmove` command-line tool.
//!
//! Exit codes: 0 success, 2 input error, 3 nothing to do, 4 internal error.

pub mod config;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::board::san::to_san;
use crate::board::{divide, zobrist, Position, START_FEN};
use crate::eval::{mate_distance, Evaluator, PieceSquareTables, Score};
use crate::harness::{
    compare_policies, filter_suite, parse_suite, play_match, render_csv, render_text, run_suite,
    Comparison, EpdRecord, HarnessError, MatchOptions, RunOptions,
};
use crate::search::{PruningPolicy, SearchLimits, Searcher};

pub use config::{resolve_policy, FileConfig, Format};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    EmptyWork(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::EmptyWork(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::EmptySuite => CliError::EmptyWork(e.to_string()),
            HarnessError::Pool(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "nullmove",
    version,
    about = "Chess search with standard and verified null-move pruning, and a suite harness to compare them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search one position and print the best move, value, PV and statistics.
    Solve {
        /// Position in FEN (4 or 6 fields).
        #[arg(long, default_value = START_FEN)]
        fen: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Run one policy over an EPD suite and report per-position results.
    Bench {
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Compare several policies over an EPD suite at one or more depths.
    Compare {
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        suite: SuiteArgs,
        /// Policy the percent deltas are measured against (default: the last policy).
        #[arg(long)]
        baseline: Option<String>,
    },
    /// Count leaf nodes of the legal move tree, broken down by root move.
    Perft {
        #[arg(long, default_value = START_FEN)]
        fen: String,
        #[arg(long)]
        depth: u32,
    },
    /// Fixed-depth games between two policies from a set of openings.
    Match {
        /// Engine A's policy.
        #[arg(long, default_value = "verified:3")]
        policy_a: String,
        /// Engine B's policy.
        #[arg(long, default_value = "std:2")]
        policy_b: String,
        /// EPD or FEN file with one opening position per line (default: the initial position).
        #[arg(long)]
        openings: Option<PathBuf>,
        /// Number of games; must be even so every opening is played with both colors.
        #[arg(long, default_value_t = 20)]
        games: usize,
        /// Plies after which a game is adjudicated drawn.
        #[arg(long, default_value_t = crate::harness::matchplay::DEFAULT_MAX_PLIES)]
        max_plies: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
}

/// Search settings shared by every searching command.
#[derive(Debug, Clone, Default, Args)]
pub struct SearchArgs {
    /// Pruning policy: nonull, std, verified, var-nocut2, var-reduce1 or
    /// var-reduce12, optionally with R as in `std:2`. `compare` takes a
    /// comma-separated list.
    #[arg(long, value_delimiter = ',')]
    pub policy: Vec<String>,
    /// Null-move depth reduction for policies given without one.
    #[arg(long = "R", value_name = "N")]
    pub r: Option<u8>,
    /// Search depth in plies; `compare` takes a comma-separated list.
    #[arg(long, value_delimiter = ',')]
    pub depth: Vec<u32>,
    /// Node budget per search.
    #[arg(long)]
    pub nodes: Option<u64>,
    /// Time budget per search in milliseconds; `solve` only, since it makes
    /// node counts timing-dependent.
    #[arg(long)]
    pub time_ms: Option<u64>,
    /// Transposition table size in bytes; 0 disables it.
    #[arg(long)]
    pub tt_bytes: Option<usize>,
    /// Use two killer moves per ply in move ordering.
    #[arg(long, overrides_with = "no_killers")]
    pub killers: bool,
    /// Disable killer moves (the default).
    #[arg(long, overrides_with = "killers")]
    pub no_killers: bool,
    /// Extend one ply when in check at the horizon (the default).
    #[arg(long, overrides_with = "no_check_ext")]
    pub check_ext: bool,
    /// Disable the check extension.
    #[arg(long, overrides_with = "check_ext")]
    pub no_check_ext: bool,
    /// Piece-square table file replacing the built-in tables.
    #[arg(long)]
    pub pst: Option<PathBuf>,
    /// TOML file with defaults for any of these settings; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SuiteArgs {
    /// EPD suite file.
    #[arg(long)]
    pub suite: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; results do not depend on this.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Directory for report files; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Count nodes only; do not check bm/am.
    #[arg(long)]
    pub count_only: bool,
}

fn flag_pair(on: bool, off: bool) -> Option<bool> {
    match (on, off) {
        (true, _) => Some(true),
        (_, true) => Some(false),
        _ => None,
    }
}

impl SearchArgs {
    fn to_config(&self) -> FileConfig {
        FileConfig {
            policy: None,
            policies: (!self.policy.is_empty()).then(|| self.policy.clone()),
            r: self.r,
            depth: (!self.depth.is_empty()).then(|| self.depth.clone()),
            nodes: self.nodes,
            time_ms: self.time_ms,
            tt_bytes: self.tt_bytes,
            killers: flag_pair(self.killers, self.no_killers),
            check_extension: flag_pair(self.check_ext, self.no_check_ext),
            pst: self.pst.clone(),
            ..FileConfig::default()
        }
    }

    /// Flags over the config file over defaults.
    fn resolve(&self, suite: Option<&SuiteArgs>) -> Result<FileConfig, CliError> {
        let mut flags = self.to_config();
        if let Some(s) = suite {
            flags.suite = s.suite.clone();
            flags.format = s.format;
            flags.jobs = s.jobs;
            flags.out = s.out.clone();
            flags.count_only = s.count_only.then_some(true);
        }
        let file = match &self.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let merged = flags.or(file);
        if merged.tt_bytes.is_some_and(|b| b > 1 << 36) {
            return Err(CliError::Input("--tt-bytes is larger than 64 GiB".into()));
        }
        if merged.jobs == Some(0) {
            return Err(CliError::Input("--jobs must be at least 1".into()));
        }
        Ok(merged)
    }
}

struct Resolved {
    config: FileConfig,
    evaluator: Evaluator,
}

impl Resolved {
    fn new(config: FileConfig) -> Result<Resolved, CliError> {
        let evaluator = match &config.pst {
            Some(path) => Evaluator::new(
                PieceSquareTables::load(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
            ),
            None => Evaluator::default(),
        };
        Ok(Resolved { config, evaluator })
    }

    fn policies(&self) -> Result<Vec<PruningPolicy>, CliError> {
        let specs: Vec<String> = match (&self.config.policies, &self.config.policy) {
            (Some(list), _) => list.clone(),
            (None, Some(p)) => vec![p.clone()],
            (None, None) => Vec::new(),
        };
        specs.iter().map(|s| resolve_policy(s, self.config.r)).collect()
    }

    fn single_policy(&self) -> Result<PruningPolicy, CliError> {
        let mut list = self.policies()?;
        match list.len() {
            0 => match self.config.r {
                Some(r) => resolve_policy("verified", Some(r)),
                None => Ok(PruningPolicy::default()),
            },
            1 => Ok(list.remove(0)),
            _ => Err(CliError::Input("this command takes a single --policy".into())),
        }
    }

    fn depths(&self, default: &[u32]) -> Result<Vec<u32>, CliError> {
        let depths = self.config.depth.clone().unwrap_or_else(|| default.to_vec());
        for &d in &depths {
            SearchLimits::depth(d)
                .validate()
                .map_err(|e| CliError::Input(e.to_string()))?;
        }
        Ok(depths)
    }

    fn single_depth(&self, default: u32) -> Result<u32, CliError> {
        let depths = self.depths(&[default])?;
        match depths[..] {
            [d] => Ok(d),
            _ => Err(CliError::Input("this command takes a single --depth".into())),
        }
    }

    fn limits(&self, depth: u32) -> SearchLimits {
        SearchLimits {
            depth,
            nodes: self.config.nodes,
            time: self.config.time_ms.map(Duration::from_millis),
        }
    }

    fn run_options(&self) -> Result<RunOptions, CliError> {
        if self.config.time_ms.is_some() {
            return Err(CliError::Input(
                "suite runs take --nodes, not --time-ms, so that reports stay reproducible".into(),
            ));
        }
        Ok(RunOptions {
            search: self.config.search_options(),
            evaluator: self.evaluator.clone(),
            node_limit: self.config.nodes,
            jobs: self.config.jobs.unwrap_or(1),
            count_only: self.config.count_only.unwrap_or(false),
        })
    }

    fn load_suite(&self) -> Result<(String, Vec<EpdRecord>, usize), CliError> {
        let path = self
            .config
            .suite
            .as_ref()
            .ok_or_else(|| CliError::Input("--suite is required".into()))?;
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read suite {}: {e}", path.display())))?;
        let parsed = parse_suite(&text);
        for (line, err) in &parsed.errors {
            eprintln!("{}:{line}: skipped: {err}", path.display());
        }
        let (records, dropped) = filter_suite(parsed.records);
        if records.is_empty() {
            return Err(CliError::EmptyWork(format!(
                "{}: no positions left to search ({} skipped as invalid, {dropped} dropped because a side has only king and pawns)",
                path.display(),
                parsed.errors.len()
            )));
        }
        let name = path
            .file_stem()
            .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        Ok((name, records, dropped))
    }
}

fn format_value(v: Score) -> String {
    match mate_distance(v) {
        Some(plies) if plies > 0 => format!("{v} (mate in {})", (plies + 1) / 2),
        Some(plies) => format!("{v} (mated in {})", (-plies) / 2),
        None => v.to_string(),
    }
}

fn parse_fen(fen: &str) -> Result<Position, CliError> {
    Position::from_fen(fen).map_err(|e| CliError::Input(format!("bad FEN: {e}")))
}

fn cmd_solve(fen: &str, args: &SearchArgs) -> Result<String, CliError> {
    let pos = parse_fen(fen)?;
    let r = Resolved::new(args.resolve(None)?)?;
    let policy = r.single_policy()?;
    let depth = r.single_depth(6)?;
    let mut searcher = Searcher::with_evaluator(policy, r.config.search_options(), r.evaluator.clone());
    let result = searcher
        .search_root(&pos, &r.limits(depth))
        .map_err(|e| CliError::Input(e.to_string()))?;

    let mut san_pv = Vec::new();
    let mut walk = pos.clone();
    for &m in &result.pv {
        san_pv.push(to_san(&walk, m));
        walk.make_move(m);
    }
    let s = &result.stats;
    let mut out = String::new();
    writeln!(out, "policy     {}", policy.label()).unwrap();
    writeln!(out, "depth      {} (completed {})", depth, result.completed_depth).unwrap();
    writeln!(out, "bestmove   {} ({})", to_san(&pos, result.best_move), result.best_move.uci()).unwrap();
    writeln!(out, "value      {}", format_value(result.value)).unwrap();
    writeln!(out, "pv         {}", san_pv.join(" ")).unwrap();
    writeln!(out, "nodes      {}", s.total_nodes()).unwrap();
    writeln!(out, "  search   {}", s.nodes).unwrap();
    writeln!(out, "  quiesce  {}", s.qnodes).unwrap();
    writeln!(out, "null tries {} (fail-high {})", s.null_tries, s.null_fail_highs).unwrap();
    writeln!(out, "zugzwang   {} re-search(es)", s.zugzwang_researches).unwrap();
    writeln!(out, "tt         {} probes, {} hits", s.tt_probes, s.tt_hits).unwrap();
    writeln!(out, "check ext  {}", s.check_extensions).unwrap();
    let per_iter: Vec<String> = s.iteration_nodes.iter().map(|n| n.to_string()).collect();
    writeln!(out, "iterations {}", per_iter.join(" ")).unwrap();
    if result.interrupted {
        writeln!(out, "note       search stopped by its node or time budget").unwrap();
    }
    Ok(out)
}

fn cmd_perft(fen: &str, depth: u32) -> Result<String, CliError> {
    let mut pos = parse_fen(fen)?;
    let mut out = String::new();
    if depth == 0 {
        out.push_str("total 1\n");
        return Ok(out);
    }
    let mut total = 0;
    for (m, n) in divide(&mut pos, depth) {
        writeln!(out, "{} {n}", m.uci()).unwrap();
        total += n;
    }
    writeln!(out, "total {total}").unwrap();
    Ok(out)
}

fn header(config: &FileConfig) -> String {
    let o = config.search_options();
    format!(
        "# zobrist-seed {:#018x} tt-bytes {} killers {} check-ext {} nodes {}\n",
        zobrist::SEED,
        o.tt_bytes,
        if o.killers { "on" } else { "off" },
        if o.check_extension { "on" } else { "off" },
        config.nodes.map_or("unlimited".to_string(), |n| n.to_string())
    )
}

fn emit(config: &FileConfig, text: String, csv: String) -> Result<String, CliError> {
    let format = config.format.unwrap_or(Format::Both);
    let Some(dir) = &config.out else {
        return Ok(match format {
            Format::Text => text,
            Format::Csv => csv,
            Format::Both => format!("{text}\n{csv}"),
        });
    };
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
    let mut written = String::new();
    let mut write = |name: &str, body: &str| -> Result<(), CliError> {
        let path = dir.join(name);
        std::fs::write(&path, body).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
        writeln!(written, "wrote {}", path.display()).unwrap();
        Ok(())
    };
    if matches!(format, Format::Text | Format::Both) {
        write("report.txt", &text)?;
    }
    if matches!(format, Format::Csv | Format::Both) {
        write("report.csv", &csv)?;
    }
    Ok(written)
}

fn cmd_bench(search: &SearchArgs, suite: &SuiteArgs) -> Result<String, CliError> {
    let r = Resolved::new(search.resolve(Some(suite))?)?;
    let policy = r.single_policy()?;
    let depth = r.single_depth(6)?;
    let options = r.run_options()?;
    let (name, records, dropped) = r.load_suite()?;
    let rows = run_suite(&records, policy, depth, &options)?;
    // A one-policy report renders the same way as a comparison.
    let report = crate::harness::SuiteReport {
        suite: name,
        positions: records.len(),
        dropped,
        policies: vec![policy],
        baseline: policy,
        depths: vec![depth],
        count_only: options.count_only,
        cells: vec![crate::harness::Cell {
            policy,
            depth,
            total_nodes: rows.iter().map(|r| r.nodes).sum(),
            solved: rows.iter().filter(|r| r.solved == Some(true)).count(),
            rows,
        }],
    };
    let text = format!("{}{}", header(&r.config), render_text(&report));
    emit(&r.config, text, render_csv(&report))
}

/// The paper's headline comparison when no policies are given.
const DEFAULT_COMPARISON: [PruningPolicy; 4] = [
    PruningPolicy::standard(1),
    PruningPolicy::standard(2),
    PruningPolicy::standard(3),
    PruningPolicy::verified(3),
];

fn cmd_compare(search: &SearchArgs, suite: &SuiteArgs, baseline: Option<&str>) -> Result<String, CliError> {
    let mut config = search.resolve(Some(suite))?;
    if let Some(b) = baseline {
        config.baseline = Some(b.to_string());
    }
    let r = Resolved::new(config)?;
    let mut policies = r.policies()?;
    if policies.is_empty() {
        policies = DEFAULT_COMPARISON.to_vec();
    }
    let baseline = match &r.config.baseline {
        Some(b) => Some(resolve_policy(b, r.config.r)?),
        None => None,
    };
    let depths = r.depths(&[7, 8])?;
    let options = r.run_options()?;
    let (name, records, dropped) = r.load_suite()?;
    let plan = Comparison {
        suite: name,
        policies,
        baseline,
        depths,
        dropped,
    };
    let report = compare_policies(&records, &plan, &options)?;
    let text = format!("{}{}", header(&r.config), render_text(&report));
    emit(&r.config, text, render_csv(&report))
}

fn load_openings(path: Option<&Path>) -> Result<Vec<Position>, CliError> {
    let Some(path) = path else {
        return Ok(vec![Position::startpos()]);
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read openings {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().take(4).collect();
        let pos = Position::from_fen(&fields.join(" "))
            .map_err(|e| CliError::Input(format!("{}:{}: {e}", path.display(), i + 1)))?;
        if !pos.has_legal_move() {
            return Err(CliError::Input(format!("{}:{}: game already over", path.display(), i + 1)));
        }
        out.push(pos);
    }
    if out.is_empty() {
        return Err(CliError::EmptyWork(format!("{}: no opening positions", path.display())));
    }
    Ok(out)
}

struct MatchArgs<'a> {
    policy_a: &'a str,
    policy_b: &'a str,
    openings: Option<&'a Path>,
    games: usize,
    max_plies: usize,
}

fn cmd_match(m: &MatchArgs<'_>, search: &SearchArgs) -> Result<String, CliError> {
    let r = Resolved::new(search.resolve(None)?)?;
    if !r.policies()?.is_empty() {
        return Err(CliError::Input("match takes --policy-a and --policy-b, not --policy".into()));
    }
    let a = resolve_policy(m.policy_a, r.config.r)?;
    let b = resolve_policy(m.policy_b, r.config.r)?;
    let depth = r.single_depth(6)?;
    if r.config.nodes.is_some() || r.config.time_ms.is_some() {
        return Err(CliError::Input("match games are played at fixed depth; drop --nodes/--time-ms".into()));
    }
    let openings = load_openings(m.openings)?;
    let options = MatchOptions {
        search: r.config.search_options(),
        evaluator: r.evaluator.clone(),
        max_plies: m.max_plies,
    };
    let result = play_match(a, b, &openings, depth, m.games, &options)?;
    let mut out = header(&r.config);
    writeln!(out, "A = {}, B = {}, depth {}", a.label(), b.label(), depth).unwrap();
    for (i, g) in result.games.iter().enumerate() {
        writeln!(
            out,
            "game {:>3}  A {}  {:?} by {:?} after {} plies  A scores {}",
            i + 1,
            if g.a_is_white { "white" } else { "black" },
            g.outcome,
            g.termination,
            g.moves.len(),
            match g.a_half_points() {
                2 => "1",
                1 => "1/2",
                _ => "0",
            }
        )
        .unwrap();
        writeln!(out, "          {}", g.moves.join(" ")).unwrap();
    }
    let (sa, sb) = result.score();
    writeln!(out, "score A {sa} : B {sb} ({} games)", result.games.len()).unwrap();
    Ok(out)
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Solve { fen, search } => cmd_solve(fen, search),
        Command::Bench { search, suite } => cmd_bench(search, suite),
        Command::Compare { search, suite, baseline } => cmd_compare(search, suite, baseline.as_deref()),
        Command::Perft { fen, depth } => cmd_perft(fen, *depth),
        Command::Match {
            policy_a,
            policy_b,
            openings,
            games,
            max_plies,
            search,
        } => cmd_match(
            &MatchArgs {
                policy_a,
                policy_b,
                openings: openings.as_deref(),
                games: *games,
                max_plies: *max_plies,
            },
            search,
        ),
    }
}

/// Parses arguments, runs the command and maps errors to exit codes.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from([
            "nullmove", "compare", "--policy", "std:2,std:3,verified:3", "--depth", "7,8", "--suite", "x.epd",
            "--format", "csv", "--jobs", "4", "--no-killers", "--no-check-ext", "--R", "3",
        ])
        .unwrap();
        let Command::Compare { search, suite, .. } = cli.command else { panic!() };
        assert_eq!(search.policy, ["std:2", "std:3", "verified:3"]);
        assert_eq!(search.depth, [7, 8]);
        assert_eq!(search.r, Some(3));
        assert_eq!(suite.format, Some(Format::Csv));
        let cfg = search.resolve(Some(&suite)).unwrap();
        assert_eq!(cfg.killers, Some(false));
        assert_eq!(cfg.check_extension, Some(false));
    }

    #[test]
    fn values_show_mate_distance() {
        assert_eq!(format_value(35), "35");
        assert_eq!(format_value(crate::eval::MATE - 3), "31997 (mate in 2)");
        assert_eq!(format_value(-(crate::eval::MATE - 2)), "-31998 (mated in 1)");
    }

    #[test]
    fn perft_command() {
        let out = cmd_perft(START_FEN, 3).unwrap();
        assert!(out.ends_with("total 8902\n"));
        assert_eq!(out.lines().count(), 21);
        assert_eq!(cmd_perft(START_FEN, 0).unwrap(), "total 1\n");
        assert!(matches!(cmd_perft("nonsense", 1), Err(CliError::Input(_))));
    }
}
