//! Independent oracles shared by the integration tests: a mailbox move
//! generator for perft and a plain minimax searcher.

#![allow(dead_code)]

use nullmove::board::{Move, Position};
use nullmove::eval::{evaluate, is_tactical, Score, MATE};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Square-centric board. Pieces are `PNBRQK` / `pnbrqk`, empty is `.`.
#[derive(Clone, Debug)]
pub struct Mailbox {
    sq: [char; 64],
    white: bool,
    // K, Q, k, q
    castle: [bool; 4],
    ep: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MbMove {
    pub from: usize,
    pub to: usize,
    pub promo: Option<char>,
}

fn on_board(f: i32, r: i32) -> bool {
    (0..8).contains(&f) && (0..8).contains(&r)
}

fn is_white(c: char) -> bool {
    c.is_ascii_uppercase()
}

impl Mailbox {
    pub fn from_fen(fen: &str) -> Mailbox {
        let parts: Vec<&str> = fen.split_whitespace().collect();
        let mut sq = ['.'; 64];
        for (i, row) in parts[0].split('/').enumerate() {
            let rank = 7 - i;
            let mut file = 0;
            for c in row.chars() {
                if let Some(n) = c.to_digit(10) {
                    file += n as usize;
                } else {
                    sq[rank * 8 + file] = c;
                    file += 1;
                }
            }
        }
        let castle = ['K', 'Q', 'k', 'q'].map(|c| parts[2].contains(c));
        let ep = (parts[3] != "-").then(|| {
            let b = parts[3].as_bytes();
            usize::from(b[1] - b'1') * 8 + usize::from(b[0] - b'a')
        });
        Mailbox {
            sq,
            white: parts[1] == "w",
            castle,
            ep,
        }
    }

    fn own(&self, c: char) -> bool {
        c != '.' && is_white(c) == self.white
    }

    fn enemy(&self, c: char) -> bool {
        c != '.' && is_white(c) != self.white
    }

    /// Whether `target` is attacked by the side `by_white`.
    fn attacked(&self, target: usize, by_white: bool) -> bool {
        let (tf, tr) = ((target % 8) as i32, (target / 8) as i32);
        let piece = |f: i32, r: i32| -> char {
            if on_board(f, r) {
                self.sq[(r * 8 + f) as usize]
            } else {
                '.'
            }
        };
        let mine = |c: char, kind: char| c != '.' && is_white(c) == by_white && c.to_ascii_lowercase() == kind;
        let dir = if by_white { -1 } else { 1 };
        for df in [-1, 1] {
            if mine(piece(tf + df, tr + dir), 'p') {
                return true;
            }
        }
        for (df, dr) in [(1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2)] {
            if mine(piece(tf + df, tr + dr), 'n') {
                return true;
            }
        }
        for df in -1..=1 {
            for dr in -1..=1 {
                if (df, dr) != (0, 0) && mine(piece(tf + df, tr + dr), 'k') {
                    return true;
                }
            }
        }
        let rays = [(1, 0, 'r'), (-1, 0, 'r'), (0, 1, 'r'), (0, -1, 'r'), (1, 1, 'b'), (1, -1, 'b'), (-1, 1, 'b'), (-1, -1, 'b')];
        for (df, dr, kind) in rays {
            let (mut f, mut r) = (tf + df, tr + dr);
            while on_board(f, r) {
                let c = piece(f, r);
                if c != '.' {
                    if mine(c, kind) || mine(c, 'q') {
                        return true;
                    }
                    break;
                }
                f += df;
                r += dr;
            }
        }
        false
    }

    fn king(&self, white: bool) -> usize {
        let k = if white { 'K' } else { 'k' };
        self.sq.iter().position(|&c| c == k).expect("king on board")
    }

    pub fn in_check(&self) -> bool {
        self.attacked(self.king(self.white), !self.white)
    }

    fn pseudo(&self) -> Vec<MbMove> {
        let mut out = Vec::new();
        for from in 0..64 {
            let c = self.sq[from];
            if !self.own(c) {
                continue;
            }
            let (f, r) = ((from % 8) as i32, (from / 8) as i32);
            let add = |to: usize, out: &mut Vec<MbMove>| out.push(MbMove { from, to, promo: None });
            match c.to_ascii_lowercase() {
                'p' => {
                    let dir = if self.white { 1 } else { -1 };
                    let start = if self.white { 1 } else { 6 };
                    let last = if self.white { 7 } else { 0 };
                    let push = |to: usize, out: &mut Vec<MbMove>| {
                        if (to / 8) as i32 == last {
                            for p in ['q', 'r', 'b', 'n'] {
                                out.push(MbMove { from, to, promo: Some(p) });
                            }
                        } else {
                            out.push(MbMove { from, to, promo: None });
                        }
                    };
                    let one = ((r + dir) * 8 + f) as usize;
                    if self.sq[one] == '.' {
                        push(one, &mut out);
                        let two = ((r + 2 * dir) * 8 + f) as usize;
                        if r == start && self.sq[two] == '.' {
                            push(two, &mut out);
                        }
                    }
                    for df in [-1, 1] {
                        if on_board(f + df, r + dir) {
                            let to = ((r + dir) * 8 + f + df) as usize;
                            if self.enemy(self.sq[to]) || self.ep == Some(to) {
                                push(to, &mut out);
                            }
                        }
                    }
                }
                'n' | 'k' => {
                    let steps: &[(i32, i32)] = if c.eq_ignore_ascii_case(&'n') {
                        &[(1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2)]
                    } else {
                        &[(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
                    };
                    for &(df, dr) in steps {
                        if on_board(f + df, r + dr) {
                            let to = ((r + dr) * 8 + f + df) as usize;
                            if !self.own(self.sq[to]) {
                                add(to, &mut out);
                            }
                        }
                    }
                }
                kind => {
                    let dirs: &[(i32, i32)] = match kind {
                        'b' => &[(1, 1), (1, -1), (-1, 1), (-1, -1)],
                        'r' => &[(1, 0), (-1, 0), (0, 1), (0, -1)],
                        _ => &[(1, 1), (1, -1), (-1, 1), (-1, -1), (1, 0), (-1, 0), (0, 1), (0, -1)],
                    };
                    for &(df, dr) in dirs {
                        let (mut tf, mut tr) = (f + df, r + dr);
                        while on_board(tf, tr) {
                            let to = (tr * 8 + tf) as usize;
                            if self.own(self.sq[to]) {
                                break;
                            }
                            add(to, &mut out);
                            if self.sq[to] != '.' {
                                break;
                            }
                            tf += df;
                            tr += dr;
                        }
                    }
                }
            }
        }
        // Castling: king and rook on their home squares, empty between,
        // no attacked square on the king's path.
        let (base, k, rk, idx) = if self.white { (0, 'K', 'R', 0) } else { (56, 'k', 'r', 2) };
        if self.sq[base + 4] == k && !self.attacked(base + 4, !self.white) {
            if self.castle[idx]
                && self.sq[base + 7] == rk
                && self.sq[base + 5] == '.'
                && self.sq[base + 6] == '.'
                && !self.attacked(base + 5, !self.white)
                && !self.attacked(base + 6, !self.white)
            {
                out.push(MbMove { from: base + 4, to: base + 6, promo: None });
            }
            if self.castle[idx + 1]
                && self.sq[base] == rk
                && self.sq[base + 1] == '.'
                && self.sq[base + 2] == '.'
                && self.sq[base + 3] == '.'
                && !self.attacked(base + 3, !self.white)
                && !self.attacked(base + 2, !self.white)
            {
                out.push(MbMove { from: base + 4, to: base + 2, promo: None });
            }
        }
        out
    }

    pub fn play(&self, m: MbMove) -> Mailbox {
        let mut next = self.clone();
        let c = self.sq[m.from];
        let kind = c.to_ascii_lowercase();
        next.sq[m.from] = '.';
        next.sq[m.to] = match m.promo {
            Some(p) if self.white => p.to_ascii_uppercase(),
            Some(p) => p,
            None => c,
        };
        if kind == 'p' && self.ep == Some(m.to) {
            let victim = if self.white { m.to - 8 } else { m.to + 8 };
            next.sq[victim] = '.';
        }
        if kind == 'k' && m.from.abs_diff(m.to) == 2 {
            let (rf, rt) = if m.to > m.from { (m.from + 3, m.from + 1) } else { (m.from - 4, m.from - 1) };
            next.sq[rt] = next.sq[rf];
            next.sq[rf] = '.';
        }
        next.ep = (kind == 'p' && m.from.abs_diff(m.to) == 16).then(|| (m.from + m.to) / 2);
        for (i, corner, king) in [(0, 7, 4), (1, 0, 4), (2, 63, 60), (3, 56, 60)] {
            if [m.from, m.to].contains(&corner) || m.from == king {
                next.castle[i] = false;
            }
        }
        next.white = !self.white;
        next
    }

    pub fn legal(&self) -> Vec<MbMove> {
        self.pseudo()
            .into_iter()
            .filter(|&m| {
                let next = self.play(m);
                !next.attacked(next.king(self.white), next.white)
            })
            .collect()
    }

    pub fn uci(m: MbMove) -> String {
        let name = |s: usize| format!("{}{}", (b'a' + (s % 8) as u8) as char, s / 8 + 1);
        let mut s = format!("{}{}", name(m.from), name(m.to));
        if let Some(p) = m.promo {
            s.push(p);
        }
        s
    }
}

pub fn mailbox_perft(b: &Mailbox, depth: u32) -> u64 {
    if depth == 0 {
        return 1;
    }
    let moves = b.legal();
    if depth == 1 {
        return moves.len() as u64;
    }
    moves.iter().map(|&m| mailbox_perft(&b.play(m), depth - 1)).sum()
}

/// Reference value of a NoNull search with the TT off, with the same
/// draw, mate and check-extension rules and a capture/queen-promotion
/// quiescence at the horizon. Plain fail-hard alpha-beta over moves in
/// generation order: with the full window at the root it returns the
/// minimax value. `path` holds the hashes from the root to `pos` inclusive.
pub fn minimax(pos: &mut Position, depth: i32, ply: usize, path: &mut Vec<u64>) -> Score {
    alphabeta(pos, -MATE - 1, MATE + 1, depth, ply, path)
}

fn alphabeta(pos: &mut Position, mut alpha: Score, beta: Score, depth: i32, ply: usize, path: &mut Vec<u64>) -> Score {
    if depth <= 0 {
        if pos.in_check() {
            return alphabeta(pos, alpha, beta, 1, ply, path);
        }
        return quiesce(pos, alpha, beta);
    }
    if ply > 0 && (pos.halfmove_clock() >= 100 || repeats(pos, path)) {
        return 0.clamp(alpha, beta);
    }
    let moves = pos.generate_moves();
    if moves.is_empty() {
        return (if pos.in_check() { -(MATE - ply as Score) } else { 0 }).clamp(alpha, beta);
    }
    for m in moves {
        let undo = pos.make_move(m);
        path.push(pos.hash());
        let v = -alphabeta(pos, -beta, -alpha, depth - 1, ply + 1, path);
        path.pop();
        pos.unmake_move(m, &undo);
        if v >= beta {
            return beta;
        }
        alpha = alpha.max(v);
    }
    alpha
}

// A repetition within the reversible tail of `path`, whose last entry is
// the current position and whose first is the search root.
fn repeats(pos: &Position, path: &[u64]) -> bool {
    let n = path.len();
    (1..=usize::from(pos.halfmove_clock()))
        .take_while(|&d| d < n)
        .any(|d| path[n - 1 - d] == pos.hash())
}

fn victim_value(pos: &Position, m: &Move) -> i32 {
    if m.is_en_passant() {
        return 1;
    }
    pos.piece_at(m.to).map_or(0, |p| [1, 3, 3, 5, 9, 0][p.kind.index()])
}

/// Fail-hard quiescence: stand pat, then captures and queen promotions,
/// most valuable victim first.
fn quiesce(pos: &mut Position, mut alpha: Score, beta: Score) -> Score {
    let stand = evaluate(pos);
    if stand >= beta {
        return beta;
    }
    alpha = alpha.max(stand);
    let mut moves: Vec<Move> = pos.generate_moves().into_iter().filter(is_tactical).collect();
    moves.sort_by_key(|m| -victim_value(pos, m));
    for m in moves {
        let undo = pos.make_move(m);
        let v = -quiesce(pos, -beta, -alpha);
        pos.unmake_move(m, &undo);
        if v >= beta {
            return beta;
        }
        alpha = alpha.max(v);
    }
    alpha
}

/// Positions reached by seeded random playouts from the start position.
pub fn random_positions(count: usize, seed: u64, min_plies: usize, max_plies: usize) -> Vec<Position> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut pos = Position::startpos();
        let plies = rng.gen_range(min_plies..=max_plies);
        let mut ok = true;
        for _ in 0..plies {
            let moves = pos.generate_moves();
            let Some(&m) = moves.choose(&mut rng) else {
                ok = false;
                break;
            };
            pos.make_move(m);
        }
        if ok && pos.has_legal_move() {
            out.push(pos);
        }
    }
    out
}

pub fn uci_moves(moves: &[Move]) -> Vec<String> {
    let mut v: Vec<String> = moves.iter().map(Move::uci).collect();
    v.sort();
    v
}
