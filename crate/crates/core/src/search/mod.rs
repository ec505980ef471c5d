//! NegaScout/PVS search with a transposition table, history heuristic,
//! check extension at the horizon, capture-only quiescence, and a pruning
//! policy layer covering standard, verified and no-cutoff null-move schemes.

mod engine;
mod history;
mod ordering;
mod policy;
mod stats;
mod tt;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{Move, Position};
use crate::eval::{Score, MAX_PLY};

pub use engine::{null_move_allowed, Searcher};
pub use history::{HistoryTable, Killers, HISTORY_MAX};
pub use ordering::{mvv_lva, order_moves, order_tactical};
pub use policy::{PolicyError, PruningPolicy};
pub use stats::SearchStats;
pub use tt::{value_from_tt, value_to_tt, Bound, PackedMove, TTEntry, TranspositionTable};

/// Deepest iteration accepted by [`SearchLimits`].
pub const MAX_SEARCH_DEPTH: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("no legal moves: side to move is checkmated")]
    Checkmate,
    #[error("no legal moves: stalemate")]
    Stalemate,
    #[error("invalid search limits: {0}")]
    InvalidLimits(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub depth: u32,
    pub nodes: Option<u64>,
    pub time: Option<Duration>,
}

impl SearchLimits {
    pub fn depth(depth: u32) -> SearchLimits {
        SearchLimits {
            depth,
            nodes: None,
            time: None,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.depth == 0 {
            return Err(SearchError::InvalidLimits(
                "depth 0: at least one iteration is required".into(),
            ));
        }
        if self.depth > MAX_SEARCH_DEPTH {
            return Err(SearchError::InvalidLimits(format!(
                "depth {} exceeds the maximum of {MAX_SEARCH_DEPTH}",
                self.depth
            )));
        }
        debug_assert!((MAX_SEARCH_DEPTH as usize) < MAX_PLY);
        if self.nodes == Some(0) {
            return Err(SearchError::InvalidLimits("node limit must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchOptions {
    /// Transposition table size; 0 disables the table.
    pub tt_bytes: usize,
    pub killers: bool,
    pub check_extension: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            tt_bytes: 16 << 20,
            killers: false,
            check_extension: true,
        }
    }
}

impl SearchOptions {
    pub fn without_tt() -> SearchOptions {
        SearchOptions {
            tt_bytes: 0,
            ..SearchOptions::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub best_move: Move,
    pub value: Score,
    pub pv: Vec<Move>,
    pub stats: SearchStats,
    /// Some node detected a zugzwang and was re-searched.
    pub zugzwang_detected: bool,
    /// Deepest fully completed iteration; 0 if the first one was cut short,
    /// in which case `best_move` is just the first ordered move.
    pub completed_depth: u32,
    pub interrupted: bool,
}

/// Searches `pos` with a fresh engine instance.
pub fn search_root(
    pos: &Position,
    policy: PruningPolicy,
    limits: &SearchLimits,
    options: &SearchOptions,
) -> Result<SearchResult, SearchError> {
    Searcher::new(policy, options.clone()).search_root(pos, limits)
}
