use std::time::Instant;

use crate::board::{Move, Position};
use crate::eval::{is_tactical, Evaluator, Score, INFINITY, MATE, MAX_PLY};

use super::history::{HistoryTable, Killers};
use super::ordering::{order_moves, order_tactical};
use super::policy::PruningPolicy;
use super::stats::SearchStats;
use super::tt::{value_from_tt, value_to_tt, Bound, PackedMove, TranspositionTable};
use super::{SearchError, SearchLimits, SearchOptions, SearchResult};

const POLL_INTERVAL: u64 = 1024;

/// Null-move preconditions that do not depend on the policy: no check, no
/// null move on the previous ply, some piece besides king and pawns, and
/// enough depth left to verify a fail-high when verification is on.
pub fn null_move_allowed(pos: &Position, depth: i32, verify: bool) -> bool {
    !pos.in_check()
        && pos.null_count() == 0
        && !pos.only_king_and_pawns(pos.side_to_move())
        && (!verify || depth > 1)
}

#[derive(Clone, Copy)]
struct PathEntry {
    hash: u64,
    // Reached by an irreversible or null move: no earlier position can repeat.
    barrier: bool,
}

/// One single-threaded search instance: TT, history, killers and stats.
pub struct Searcher {
    policy: PruningPolicy,
    options: SearchOptions,
    evaluator: Evaluator,
    tt: TranspositionTable,
    history: HistoryTable,
    killers: Killers,
    stats: SearchStats,
    path: Vec<PathEntry>,
    pv: Vec<Vec<Move>>,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    next_poll: u64,
    stopped: bool,
}

impl Searcher {
    pub fn new(policy: PruningPolicy, options: SearchOptions) -> Searcher {
        Searcher::with_evaluator(policy, options, Evaluator::default())
    }

    pub fn with_evaluator(policy: PruningPolicy, options: SearchOptions, evaluator: Evaluator) -> Searcher {
        Searcher {
            policy,
            tt: TranspositionTable::new(options.tt_bytes),
            options,
            evaluator,
            history: HistoryTable::default(),
            killers: Killers::default(),
            stats: SearchStats::default(),
            path: Vec::with_capacity(MAX_PLY + 1),
            pv: vec![Vec::new(); MAX_PLY + 1],
            node_limit: None,
            deadline: None,
            next_poll: POLL_INTERVAL,
            stopped: false,
        }
    }

    pub fn policy(&self) -> PruningPolicy {
        self.policy
    }

    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    /// Forgets everything learned so far (TT, history, killers).
    pub fn clear(&mut self) {
        self.tt.clear();
        self.history.clear();
        self.killers.clear();
    }

    /// Prepares the instance for direct calls to [`Searcher::search`] or
    /// [`Searcher::quiescence`] on `root`.
    pub fn begin(&mut self, root: &Position) {
        self.stats = SearchStats::default();
        self.path.clear();
        self.path.push(PathEntry {
            hash: root.hash(),
            barrier: true,
        });
        self.stopped = false;
        self.node_limit = None;
        self.deadline = None;
        self.next_poll = POLL_INTERVAL;
        self.tt.new_generation();
    }

    pub fn search_root(&mut self, root: &Position, limits: &SearchLimits) -> Result<SearchResult, SearchError> {
        limits.validate()?;
        let mut moves = root.generate_moves();
        if moves.is_empty() {
            return Err(if root.in_check() {
                SearchError::Checkmate
            } else {
                SearchError::Stalemate
            });
        }
        self.begin(root);
        self.killers.clear();
        self.node_limit = limits.nodes;
        self.deadline = limits.time.map(|t| Instant::now() + t);

        let tt_move = self.tt.probe(root.hash()).map_or(PackedMove::default(), |e| e.best_move);
        order_moves(
            &mut moves,
            tt_move,
            None,
            &self.history,
            root.side_to_move(),
        );

        let verify = self.policy.uses_verification();
        let mut pos = root.clone();
        let mut best: Option<(Move, Score, Vec<Move>)> = None;
        let mut completed = 0;
        let mut spent = 0;

        for depth in 1..=limits.depth as i32 {
            let outcome = self.root_iteration(&mut pos, &moves, depth, verify);
            self.stats.iteration_nodes.push(self.stats.total_nodes() - spent);
            spent = self.stats.total_nodes();
            let Some((index, value, pv)) = outcome else {
                break;
            };
            // Best move first next time; the rest keep their order.
            let m = moves.remove(index);
            moves.insert(0, m);
            best = Some((m, value, pv));
            completed = depth as u32;
        }
        debug_assert_eq!(pos, *root);

        let interrupted = self.stopped;
        let (best_move, value, pv) = best.unwrap_or_else(|| (moves[0], 0, vec![moves[0]]));
        Ok(SearchResult {
            best_move,
            value,
            pv,
            zugzwang_detected: self.stats.zugzwang_researches > 0,
            stats: self.stats.clone(),
            completed_depth: completed,
            interrupted,
        })
    }

    // Returns (index of best move, value, pv) or None when interrupted.
    fn root_iteration(
        &mut self,
        pos: &mut Position,
        moves: &[Move],
        depth: i32,
        verify: bool,
    ) -> Option<(usize, Score, Vec<Move>)> {
        self.count_node();
        let mut alpha = -INFINITY;
        let beta = INFINITY;
        let mut best = -INFINITY;
        let mut best_index = 0;
        let mut best_pv = Vec::new();
        for (i, &m) in moves.iter().enumerate() {
            let undo = self.make(pos, m);
            let mut score;
            if i == 0 {
                score = -self.search(pos, -beta, -alpha, depth - 1, 1, verify);
            } else {
                score = -self.search(pos, -alpha - 1, -alpha, depth - 1, 1, verify);
                if score > alpha && score < beta && !self.stopped {
                    score = -self.search(pos, -beta, -alpha, depth - 1, 1, verify);
                }
            }
            self.unmake(pos, m, &undo);
            if self.stopped {
                return None;
            }
            if score > best {
                best = score;
                best_index = i;
                best_pv.clear();
                best_pv.push(m);
                best_pv.extend_from_slice(&self.pv[1]);
                if score > alpha {
                    alpha = score;
                }
            }
        }
        self.tt.store(pos.hash(), depth, value_to_tt(best, 0), Bound::Exact, Some(moves[best_index]));
        Some((best_index, best, best_pv))
    }

    #[inline]
    fn make(&mut self, pos: &mut Position, m: Move) -> crate::board::UndoInfo {
        let undo = pos.make_move(m);
        self.path.push(PathEntry {
            hash: pos.hash(),
            barrier: pos.halfmove_clock() == 0,
        });
        undo
    }

    #[inline]
    fn unmake(&mut self, pos: &mut Position, m: Move, undo: &crate::board::UndoInfo) {
        self.path.pop();
        pos.unmake_move(m, undo);
    }

    #[inline]
    fn count_node(&mut self) {
        self.stats.nodes += 1;
        self.poll();
    }

    #[inline]
    fn poll(&mut self) {
        let total = self.stats.nodes + self.stats.qnodes;
        if total < self.next_poll {
            return;
        }
        self.next_poll = total + POLL_INTERVAL;
        if self.node_limit.is_some_and(|limit| total >= limit)
            || self.deadline.is_some_and(|d| Instant::now() >= d)
        {
            self.stopped = true;
        }
    }

    // Fifty-move rule or a repetition along the current search path.
    fn is_draw(&self, pos: &Position) -> bool {
        if pos.halfmove_clock() >= 100 {
            return true;
        }
        let Some((current, earlier)) = self.path.split_last() else {
            return false;
        };
        if current.barrier {
            return false;
        }
        for e in earlier.iter().rev() {
            if e.hash == current.hash {
                return true;
            }
            if e.barrier {
                break;
            }
        }
        false
    }

    /// The recursive null-move-aware NegaScout routine. Fail-soft.
    pub fn search(
        &mut self,
        pos: &mut Position,
        mut alpha: Score,
        beta: Score,
        mut depth: i32,
        ply: usize,
        mut verify: bool,
    ) -> Score {
        debug_assert!(alpha < beta);
        self.pv[ply].clear();
        if depth <= 0 {
            if self.options.check_extension && pos.in_check() {
                depth = 1;
                self.stats.check_extensions += 1;
            } else {
                return self.quiescence(pos, alpha, beta, ply);
            }
        }
        self.count_node();
        if self.stopped {
            return 0;
        }
        if ply > 0 && self.is_draw(pos) {
            return 0;
        }
        if ply >= MAX_PLY - 1 {
            return self.evaluator.evaluate(pos);
        }

        let key = pos.hash();
        let mut tt_move = PackedMove::default();
        if self.tt.is_enabled() {
            self.stats.tt_probes += 1;
            if let Some(entry) = self.tt.probe(key) {
                self.stats.tt_hits += 1;
                tt_move = entry.best_move;
                let v = value_from_tt(entry.value, ply);
                if entry.cuts_off(depth, alpha, beta, v) {
                    return v;
                }
            }
        }

        let mut fail_high = false;
        if let Some(r) = self.policy.reduction() {
            let verify_gate = verify && self.policy.uses_verification();
            if null_move_allowed(pos, depth, verify_gate) {
                self.stats.null_tries += 1;
                let undo = pos.make_null_move();
                self.path.push(PathEntry {
                    hash: pos.hash(),
                    barrier: true,
                });
                let v = -self.search(pos, -beta, -beta + 1, depth - i32::from(r) - 1, ply + 1, verify);
                self.path.pop();
                pos.unmake_null_move(&undo);
                self.pv[ply].clear();
                if self.stopped {
                    return 0;
                }
                if v >= beta {
                    self.stats.null_fail_highs += 1;
                    match self.policy {
                        PruningPolicy::NoNull => unreachable!(),
                        PruningPolicy::Standard { .. } => return v,
                        PruningPolicy::Verified { .. } => {
                            if !verify {
                                return v;
                            }
                            depth -= 1;
                            verify = false;
                            fail_high = true;
                        }
                        PruningPolicy::VariantNoCutoffReduce2 { .. } => depth -= 2,
                        PruningPolicy::VariantReduceOneEverywhere { .. } => depth -= 1,
                        PruningPolicy::VariantReduceOneThenTwo { .. } => {
                            if verify {
                                depth -= 1;
                                verify = false;
                                fail_high = true;
                            } else {
                                depth -= 2;
                            }
                        }
                    }
                    if depth <= 0 {
                        return self.quiescence(pos, alpha, beta, ply);
                    }
                }
            }
        }

        let mut moves = pos.generate_moves();
        if moves.is_empty() {
            return if pos.in_check() { -(MATE - ply as Score) } else { 0 };
        }
        let killers = self.options.killers.then(|| self.killers.get(ply));
        order_moves(&mut moves, tt_move, killers, &self.history, pos.side_to_move());

        let original_alpha = alpha;
        let (best, best_move) = loop {
            alpha = original_alpha;
            let mut best = -INFINITY;
            let mut best_move = None;
            for (i, &m) in moves.iter().enumerate() {
                let undo = self.make(pos, m);
                let mut score;
                if i == 0 {
                    score = -self.search(pos, -beta, -alpha, depth - 1, ply + 1, verify);
                } else {
                    score = -self.search(pos, -alpha - 1, -alpha, depth - 1, ply + 1, verify);
                    if score > alpha && score < beta && !self.stopped {
                        score = -self.search(pos, -beta, -alpha, depth - 1, ply + 1, verify);
                    }
                }
                self.unmake(pos, m, &undo);
                if self.stopped {
                    return 0;
                }
                if score > best {
                    best = score;
                    best_move = Some(m);
                    if score > alpha {
                        alpha = score;
                        let (head, tail) = self.pv.split_at_mut(ply + 1);
                        head[ply].clear();
                        head[ply].push(m);
                        head[ply].extend_from_slice(&tail[0]);
                        if score >= beta {
                            if !is_tactical(&m) {
                                self.history.reward(pos.side_to_move(), &m, depth);
                                if self.options.killers {
                                    self.killers.record(ply, m);
                                }
                            }
                            break;
                        }
                    }
                }
            }
            if fail_high && best < beta {
                // The null move looked good but nothing real is: zugzwang.
                // Restore the depth and search again with verification on.
                depth += 1;
                fail_high = false;
                verify = true;
                self.stats.zugzwang_researches += 1;
                continue;
            }
            break (best, best_move);
        };

        let bound = if best >= beta {
            Bound::Lower
        } else if best > original_alpha {
            Bound::Exact
        } else {
            Bound::Upper
        };
        self.tt.store(key, depth, value_to_tt(best, ply), bound, best_move);
        best
    }

    /// Capture-only search with stand-pat. Fail-soft.
    pub fn quiescence(&mut self, pos: &mut Position, mut alpha: Score, beta: Score, ply: usize) -> Score {
        self.pv[ply].clear();
        self.stats.qnodes += 1;
        self.poll();
        if self.stopped {
            return 0;
        }
        let stand_pat = self.evaluator.evaluate(pos);
        if stand_pat >= beta || ply >= MAX_PLY - 1 {
            return stand_pat;
        }
        let mut best = stand_pat;
        if stand_pat > alpha {
            alpha = stand_pat;
        }
        let mut moves = pos.generate_moves();
        moves.retain(is_tactical);
        order_tactical(&mut moves);
        for m in moves {
            let undo = pos.make_move(m);
            let score = -self.quiescence(pos, -beta, -alpha, ply + 1);
            pos.unmake_move(m, &undo);
            if self.stopped {
                return 0;
            }
            if score > best {
                best = score;
                if score > alpha {
                    alpha = score;
                    if score >= beta {
                        break;
                    }
                }
            }
        }
        best
    }
}
