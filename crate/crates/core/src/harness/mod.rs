//! Test-suite tooling: EPD ingestion, policy comparisons with Tables-style
//! reports, and fixed-depth self-play.

pub mod epd;
pub mod matchplay;
pub mod report;
pub mod suite;

use thiserror::Error;

use crate::search::{PruningPolicy, SearchError};

pub use epd::{filter_suite, parse_epd, parse_suite, EpdError, EpdRecord, Opcode, SuiteFile};
pub use matchplay::{play_match, GameRecord, MatchOptions, MatchResult, Outcome, Termination};
pub use report::{render_csv, render_text, thousands, CSV_HEADER};
pub use suite::{
    compare_policies, percent_delta, run_suite, Cell, Comparison, PositionResult, RunOptions, SuiteReport,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("the suite has no positions to search")]
    EmptySuite,
    #[error("a comparison needs at least two policies")]
    TooFewPolicies,
    #[error("policy {0} is listed twice")]
    DuplicatePolicy(PruningPolicy),
    #[error("baseline {0} is not among the compared policies")]
    BaselineNotCompared(PruningPolicy),
    #[error("no search depths given")]
    NoDepths,
    #[error("percent delta against a zero baseline is undefined")]
    ZeroBaseline,
    #[error("record {id}: {source}")]
    Search {
        id: String,
        #[source]
        source: SearchError,
    },
    #[error("a match needs at least one game")]
    NoGames,
    #[error("a match needs an even number of games to alternate colors, got {0}")]
    OddGames(usize),
    #[error("a match needs at least one opening position")]
    NoOpenings,
    #[error("game {game}: {source}")]
    Game {
        game: usize,
        #[source]
        source: SearchError,
    },
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}
