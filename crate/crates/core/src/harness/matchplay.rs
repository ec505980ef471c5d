//! Fixed-depth self-play between two policies.

use std::collections::HashMap;

use serde::Serialize;

use crate::board::{Color, Position};
use crate::search::{PruningPolicy, SearchLimits, SearchOptions, Searcher};
use crate::eval::Evaluator;

use super::HarnessError;

/// Games longer than this many plies are adjudicated drawn.
pub const DEFAULT_MAX_PLIES: usize = 300;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Termination {
    Checkmate,
    Stalemate,
    ThreefoldRepetition,
    FiftyMoveRule,
    InsufficientMaterial,
    MaxLength,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    WhiteWins,
    BlackWins,
    Draw,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameRecord {
    pub opening: String,
    /// Whether engine A had the white pieces.
    pub a_is_white: bool,
    /// Moves in UCI notation.
    pub moves: Vec<String>,
    pub outcome: Outcome,
    pub termination: Termination,
}

impl GameRecord {
    /// Engine A's score in half points (0, 1 or 2).
    pub fn a_half_points(&self) -> u32 {
        match (self.outcome, self.a_is_white) {
            (Outcome::Draw, _) => 1,
            (Outcome::WhiteWins, true) | (Outcome::BlackWins, false) => 2,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchResult {
    pub policy_a: PruningPolicy,
    pub policy_b: PruningPolicy,
    pub depth: u32,
    pub games: Vec<GameRecord>,
}

impl MatchResult {
    pub fn a_half_points(&self) -> u32 {
        self.games.iter().map(GameRecord::a_half_points).sum()
    }

    /// (A, B) scores in points.
    pub fn score(&self) -> (f64, f64) {
        let a = f64::from(self.a_half_points()) / 2.0;
        (a, self.games.len() as f64 - a)
    }
}

#[derive(Clone, Debug)]
pub struct MatchOptions {
    pub search: SearchOptions,
    pub evaluator: Evaluator,
    pub max_plies: usize,
}

impl Default for MatchOptions {
    fn default() -> Self {
        MatchOptions {
            search: SearchOptions::default(),
            evaluator: Evaluator::default(),
            max_plies: DEFAULT_MAX_PLIES,
        }
    }
}

fn play_game(
    opening: &Position,
    white: PruningPolicy,
    black: PruningPolicy,
    depth: u32,
    options: &MatchOptions,
) -> Result<(Vec<String>, Outcome, Termination), crate::search::SearchError> {
    let mut pos = opening.clone();
    let mut seen: HashMap<u64, u32> = HashMap::new();
    seen.insert(pos.hash(), 1);
    let mut moves = Vec::new();
    let limits = SearchLimits::depth(depth);
    loop {
        if !pos.has_legal_move() {
            return Ok(if pos.in_check() {
                let winner = match pos.side_to_move() {
                    Color::White => Outcome::BlackWins,
                    Color::Black => Outcome::WhiteWins,
                };
                (moves, winner, Termination::Checkmate)
            } else {
                (moves, Outcome::Draw, Termination::Stalemate)
            });
        }
        let draw = if seen[&pos.hash()] >= 3 {
            Some(Termination::ThreefoldRepetition)
        } else if pos.halfmove_clock() >= 100 {
            Some(Termination::FiftyMoveRule)
        } else if pos.insufficient_material() {
            Some(Termination::InsufficientMaterial)
        } else if moves.len() >= options.max_plies {
            Some(Termination::MaxLength)
        } else {
            None
        };
        if let Some(t) = draw {
            return Ok((moves, Outcome::Draw, t));
        }
        let policy = match pos.side_to_move() {
            Color::White => white,
            Color::Black => black,
        };
        // Each move gets a fresh engine so games do not depend on history.
        let mut engine = Searcher::with_evaluator(policy, options.search.clone(), options.evaluator.clone());
        let m = engine.search_root(&pos, &limits)?.best_move;
        moves.push(m.uci());
        pos.make_move(m);
        *seen.entry(pos.hash()).or_insert(0) += 1;
    }
}

/// Plays `games` games (an even number), cycling through `openings`; each
/// opening is played twice with colors swapped, A taking white first.
pub fn play_match(
    policy_a: PruningPolicy,
    policy_b: PruningPolicy,
    openings: &[Position],
    depth: u32,
    games: usize,
    options: &MatchOptions,
) -> Result<MatchResult, HarnessError> {
    if games == 0 {
        return Err(HarnessError::NoGames);
    }
    if !games.is_multiple_of(2) {
        return Err(HarnessError::OddGames(games));
    }
    if openings.is_empty() {
        return Err(HarnessError::NoOpenings);
    }
    let mut records = Vec::with_capacity(games);
    for game in 0..games {
        let opening = &openings[(game / 2) % openings.len()];
        let a_is_white = game % 2 == 0;
        let (white, black) = if a_is_white {
            (policy_a, policy_b)
        } else {
            (policy_b, policy_a)
        };
        let (moves, outcome, termination) = play_game(opening, white, black, depth, options)
            .map_err(|source| HarnessError::Game { game, source })?;
        records.push(GameRecord {
            opening: opening.to_fen(),
            a_is_white,
            moves,
            outcome,
            termination,
        });
    }
    Ok(MatchResult {
        policy_a,
        policy_b,
        depth,
        games: records,
    })
}
