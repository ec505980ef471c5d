//! Precomputed attack tables. Sliding pieces use ray tables with a
//! first-blocker scan, which is plenty for a research engine.

use super::types::{Color, Square};

const fn leaper_table(deltas: &[(i8, i8)]) -> [u64; 64] {
    let mut table = [0u64; 64];
    let mut sq = 0;
    while sq < 64 {
        let file = (sq % 8) as i8;
        let rank = (sq / 8) as i8;
        let mut i = 0;
        while i < deltas.len() {
            let f = file + deltas[i].0;
            let r = rank + deltas[i].1;
            if f >= 0 && f < 8 && r >= 0 && r < 8 {
                table[sq] |= 1u64 << (r * 8 + f);
            }
            i += 1;
        }
        sq += 1;
    }
    table
}

const KNIGHT_DELTAS: [(i8, i8); 8] = [
    (1, 2),
    (2, 1),
    (2, -1),
    (1, -2),
    (-1, -2),
    (-2, -1),
    (-2, 1),
    (-1, 2),
];
const KING_DELTAS: [(i8, i8); 8] = [
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
];

static KNIGHT: [u64; 64] = leaper_table(&KNIGHT_DELTAS);
static KING: [u64; 64] = leaper_table(&KING_DELTAS);
static WHITE_PAWN: [u64; 64] = leaper_table(&[(-1, 1), (1, 1)]);
static BLACK_PAWN: [u64; 64] = leaper_table(&[(-1, -1), (1, -1)]);

// Directions 0..4 increase the square index, 4..8 decrease it.
const DIRECTIONS: [(i8, i8); 8] = [
    (0, 1),
    (1, 0),
    (1, 1),
    (-1, 1),
    (0, -1),
    (-1, 0),
    (-1, -1),
    (1, -1),
];

const fn ray_table() -> [[u64; 64]; 8] {
    let mut table = [[0u64; 64]; 8];
    let mut d = 0;
    while d < 8 {
        let mut sq = 0;
        while sq < 64 {
            let mut f = (sq % 8) as i8 + DIRECTIONS[d].0;
            let mut r = (sq / 8) as i8 + DIRECTIONS[d].1;
            while f >= 0 && f < 8 && r >= 0 && r < 8 {
                table[d][sq] |= 1u64 << (r * 8 + f);
                f += DIRECTIONS[d].0;
                r += DIRECTIONS[d].1;
            }
            sq += 1;
        }
        d += 1;
    }
    table
}

static RAYS: [[u64; 64]; 8] = ray_table();

#[inline]
fn ray_attacks(dir: usize, sq: usize, occupied: u64) -> u64 {
    let ray = RAYS[dir][sq];
    let blockers = ray & occupied;
    if blockers == 0 {
        return ray;
    }
    let first = if dir < 4 {
        blockers.trailing_zeros() as usize
    } else {
        63 - blockers.leading_zeros() as usize
    };
    ray ^ RAYS[dir][first]
}

#[inline]
pub fn knight(sq: Square) -> u64 {
    KNIGHT[sq.index()]
}

#[inline]
pub fn king(sq: Square) -> u64 {
    KING[sq.index()]
}

/// Squares attacked by a pawn of `color` standing on `sq`.
#[inline]
pub fn pawn(color: Color, sq: Square) -> u64 {
    match color {
        Color::White => WHITE_PAWN[sq.index()],
        Color::Black => BLACK_PAWN[sq.index()],
    }
}

#[inline]
pub fn rook(sq: Square, occupied: u64) -> u64 {
    let s = sq.index();
    ray_attacks(0, s, occupied)
        | ray_attacks(1, s, occupied)
        | ray_attacks(4, s, occupied)
        | ray_attacks(5, s, occupied)
}

#[inline]
pub fn bishop(sq: Square, occupied: u64) -> u64 {
    let s = sq.index();
    ray_attacks(2, s, occupied)
        | ray_attacks(3, s, occupied)
        | ray_attacks(6, s, occupied)
        | ray_attacks(7, s, occupied)
}

#[inline]
pub fn queen(sq: Square, occupied: u64) -> u64 {
    rook(sq, occupied) | bishop(sq, occupied)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(s: &str) -> Square {
        Square::parse(s).unwrap()
    }

    #[test]
    fn leaper_counts() {
        assert_eq!(knight(sq("a1")).count_ones(), 2);
        assert_eq!(knight(sq("d4")).count_ones(), 8);
        assert_eq!(king(sq("h8")).count_ones(), 3);
        assert_eq!(king(sq("e4")).count_ones(), 8);
        assert_eq!(pawn(Color::White, sq("a2")), sq("b3").bb());
        assert_eq!(pawn(Color::Black, sq("e5")), sq("d4").bb() | sq("f4").bb());
    }

    #[test]
    fn sliders_stop_at_first_blocker() {
        assert_eq!(rook(sq("a1"), 0).count_ones(), 14);
        assert_eq!(bishop(sq("d4"), 0).count_ones(), 13);
        let occ = sq("a4").bb() | sq("c1").bb();
        let r = rook(sq("a1"), occ);
        assert_eq!(r, sq("a2").bb() | sq("a3").bb() | sq("a4").bb() | sq("b1").bb() | sq("c1").bb());
        let b = bishop(sq("h8"), sq("e5").bb());
        assert_eq!(b, sq("g7").bb() | sq("f6").bb() | sq("e5").bb());
    }
}
