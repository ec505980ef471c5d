//! Generates the shipped zugzwang suite. Each frame (pawns and bishops) is
//! completed with every legal placement of the two kings on files b-g and
//! ranks 2-7, either side to move. A placement is kept when verified search
//! records a zugzwang re-search and a full-width search confirms that the
//! side to move, or its opponent after the best move, loses at least
//! MARGIN centipawns by being forced to move.
//!
//! cargo run --release --example gen_zugzwang -- [count]

use nullmove::board::{Position, Square};
use nullmove::eval::Score;
use nullmove::search::{search_root, SearchLimits, SearchOptions, SearchResult};

const DEPTH: u32 = 6;
const MARGIN: Score = 50;
const FRAMES: [&str; 13] = [
    "b7/1p6/1P6/4p3/4P3/8/6P1/7B",
    "7b/6p1/6P1/3p4/3P4/8/1P6/B7",
    "b7/1p6/1P6/2p5/2P1p3/4P3/6P1/7B",
    "b7/1p6/1P6/8/2p5/2P5/6P1/7B",
    "7b/6p1/6P1/5p2/5P2/8/1P6/B7",
    "b7/1p6/1P6/3p4/3P4/8/6P1/7B",
    "7b/6p1/6P1/2p5/2P5/8/1P6/B7",
    "b7/1p6/1P6/5p2/5P2/8/6P1/7B",
    "7b/6p1/6P1/4p3/4P3/8/1P6/B7",
    "b7/1p6/1P6/8/3p4/3P4/6P1/7B",
    "b7/1p6/1P6/8/4p3/4P3/6P1/7B",
    "b7/1p6/1P6/2p5/2P5/8/6P1/7B",
    "b7/1p6/1P6/8/5p2/5P2/6P1/7B",
];

fn run(policy: &str, pos: &Position, depth: u32) -> SearchResult {
    search_root(pos, policy.parse().unwrap(), &SearchLimits::depth(depth), &SearchOptions::default()).unwrap()
}

// Value for the side to move in `pos` if it could pass, or None when the
// passed position has no legal reply.
fn pass_value(pos: &Position, depth: u32) -> Option<Score> {
    let mut passed = pos.clone();
    passed.make_null_move();
    let passed = Position::from_fen(&passed.to_fen()).unwrap();
    passed.has_legal_move().then(|| -run("nonull", &passed, depth).value)
}

fn with_kings(frame: &str, wk: Square, bk: Square, side: &str) -> Option<Position> {
    let mut grid = [['.'; 8]; 8];
    for (i, row) in frame.split('/').enumerate() {
        let mut f = 0;
        for c in row.chars() {
            match c.to_digit(10) {
                Some(n) => f += n as usize,
                None => {
                    grid[7 - i][f] = c;
                    f += 1;
                }
            }
        }
    }
    for (sq, k) in [(wk, 'K'), (bk, 'k')] {
        let cell = &mut grid[usize::from(sq.rank())][usize::from(sq.file())];
        if *cell != '.' {
            return None;
        }
        *cell = k;
    }
    let rows: Vec<String> = (0..8)
        .rev()
        .map(|r| {
            let mut s = String::new();
            let mut empty = 0;
            for c in grid[r] {
                if c == '.' {
                    empty += 1;
                } else {
                    if empty > 0 {
                        s.push_str(&empty.to_string());
                        empty = 0;
                    }
                    s.push(c);
                }
            }
            if empty > 0 {
                s.push_str(&empty.to_string());
            }
            s
        })
        .collect();
    Position::from_fen(&format!("{} {side} - - 0 1", rows.join("/"))).ok()
}

fn main() {
    let count: usize = std::env::args().nth(1).map_or(12, |s| s.parse().unwrap());
    let squares: Vec<Square> = (0..64u8)
        .map(Square::new)
        .filter(|s| (1..=6).contains(&s.file()) && (1..=6).contains(&s.rank()))
        .collect();
    let mut found = 0;
    for frame in FRAMES {
        for &wk in &squares {
            for &bk in &squares {
                if wk.file().abs_diff(bk.file()) <= 1 && wk.rank().abs_diff(bk.rank()) <= 1 {
                    continue;
                }
                for side in ["w", "b"] {
                    let Some(pos) = with_kings(frame, wk, bk, side) else { continue };
                    if pos.in_check() || !pos.has_legal_move() {
                        continue;
                    }
                    let full = run("nonull", &pos, DEPTH);
                    if full.value.abs() > 5000 || run("verified:3", &pos, DEPTH).stats.zugzwang_researches == 0 {
                        continue;
                    }
                    let root_zz = pass_value(&pos, DEPTH - 1).is_some_and(|p| p - full.value >= MARGIN);
                    let mut child = pos.clone();
                    child.make_move(full.best_move);
                    let child = Position::from_fen(&child.to_fen()).unwrap();
                    let child_zz = child.has_legal_move()
                        && !child.in_check()
                        && pass_value(&child, DEPTH - 2)
                            .is_some_and(|p| p - run("nonull", &child, DEPTH - 1).value >= MARGIN);
                    if !(root_zz || child_zz) {
                        continue;
                    }
                    found += 1;
                    let fen = pos.to_fen();
                    let epd: Vec<&str> = fen.split(' ').take(4).collect();
                    println!("{} acd {DEPTH}; ce {}; id \"zz.{found:02}\";", epd.join(" "), full.value);
                    if found == count {
                        return;
                    }
                }
            }
        }
    }
}
