//! Generates the shipped mate suite: random middlegame-like placements kept
//! only when brute force finds a mate in exactly N with a unique key move.
//!
//! cargo run --release --example gen_mates -- <count-per-n> <seed>

use nullmove::board::{san, Move, Position};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mates_in(pos: &mut Position, n: u32) -> bool {
    for m in pos.generate_moves() {
        if forced(pos, m, n) {
            return true;
        }
    }
    false
}

fn forced(pos: &mut Position, m: Move, n: u32) -> bool {
    let undo = pos.make_move(m);
    let replies = pos.generate_moves();
    let ok = if replies.is_empty() {
        pos.in_check()
    } else if n > 1 {
        replies.into_iter().all(|r| {
            let u = pos.make_move(r);
            let ok = mates_in(pos, n - 1);
            pos.unmake_move(r, &u);
            ok
        })
    } else {
        false
    };
    pos.unmake_move(m, &undo);
    ok
}

fn random_position(rng: &mut ChaCha8Rng) -> Option<Position> {
    let mut board = [['.'; 8]; 8];
    let mut free: Vec<(usize, usize)> = (0..8).flat_map(|r| (0..8).map(move |f| (r, f))).collect();
    free.shuffle(rng);
    // Black king near its back rank, attacker pieces anywhere.
    let bk = *free.iter().find(|(r, _)| *r >= 6)?;
    free.retain(|&s| s != bk);
    board[bk.0][bk.1] = 'k';
    let white = ["K", "Q", "R", "B", "N", "R", "B", "N"];
    let n_white = rng.gen_range(3..=6);
    let mut pieces: Vec<char> = white[..n_white].iter().map(|s| s.chars().next().unwrap()).collect();
    pieces.extend(std::iter::repeat_n('P', rng.gen_range(1..=4)));
    let black = ['r', 'b', 'n', 'q', 'r'];
    let n_black = rng.gen_range(1..=3);
    pieces.extend(black.choose_multiple(rng, n_black).copied());
    pieces.extend(std::iter::repeat_n('p', rng.gen_range(1..=4)));
    for c in pieces {
        let idx = free
            .iter()
            .position(|&(r, _)| !(c.eq_ignore_ascii_case(&'p') && (r == 0 || r == 7)))?;
        let (r, f) = free.remove(idx);
        board[r][f] = c;
    }
    let mut fen = String::new();
    for r in (0..8).rev() {
        let mut empty = 0;
        for &cell in &board[r] {
            match cell {
                '.' => empty += 1,
                c => {
                    if empty > 0 {
                        fen.push_str(&empty.to_string());
                        empty = 0;
                    }
                    fen.push(c);
                }
            }
        }
        if empty > 0 {
            fen.push_str(&empty.to_string());
        }
        if r > 0 {
            fen.push('/');
        }
    }
    fen.push_str(" w - - 0 1");
    Position::from_fen(&fen).ok()
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let per_n: usize = args.get(1).map_or(15, |s| s.parse().unwrap());
    let seed: u64 = args.get(2).map_or(7, |s| s.parse().unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in [2u32, 3] {
        let mut found = 0;
        while found < per_n {
            let Some(mut pos) = random_position(&mut rng) else { continue };
            if pos.in_check() || !pos.has_legal_move() || mates_in(&mut pos, n - 1) {
                continue;
            }
            let keys: Vec<Move> = pos
                .generate_moves()
                .into_iter()
                .filter(|&m| forced(&mut pos, m, n))
                .take(2)
                .collect();
            if keys.len() != 1 {
                continue;
            }
            // Half the suite has black to move.
            let flip = found % 2 == 1;
            let out = if flip { pos.color_flipped() } else { pos.clone() };
            let key = if flip {
                out.generate_moves()
                    .into_iter()
                    .find(|&m| m.from == keys[0].from.flip_rank() && m.to == keys[0].to.flip_rank() && m.promotion == keys[0].promotion)
                    .unwrap()
            } else {
                keys[0]
            };
            found += 1;
            let fen = out.to_fen();
            let epd: Vec<&str> = fen.split(' ').take(4).collect();
            println!("{} bm {}; id \"mate{}.{:02}\"; dm {};", epd.join(" "), san::to_san(&out, key), n, found, n);
        }
    }
}
