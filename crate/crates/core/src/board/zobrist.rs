//! Zobrist keys, generated at compile time from a fixed SplitMix64 seed so
//! hashes (and therefore TT behaviour and node counts) are identical across
//! runs and platforms.

use super::types::{Color, Piece, Square};

pub const SEED: u64 = 0x6E75_6C6C_6D6F_7665;

const fn splitmix64(state: u64) -> (u64, u64) {
    let state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    (state, z ^ (z >> 31))
}

pub struct Keys {
    pub pieces: [[u64; 64]; 12],
    pub black_to_move: u64,
    pub castling: [u64; 16],
    pub en_passant_file: [u64; 8],
}

const fn generate() -> Keys {
    let mut state = SEED;
    let mut keys = Keys {
        pieces: [[0; 64]; 12],
        black_to_move: 0,
        castling: [0; 16],
        en_passant_file: [0; 8],
    };
    let mut p = 0;
    while p < 12 {
        let mut s = 0;
        while s < 64 {
            let (next, v) = splitmix64(state);
            state = next;
            keys.pieces[p][s] = v;
            s += 1;
        }
        p += 1;
    }
    let (next, v) = splitmix64(state);
    state = next;
    keys.black_to_move = v;
    // Castling keys are per right; a mask key is the XOR of its rights.
    let mut single = [0u64; 4];
    let mut i = 0;
    while i < 4 {
        let (next, v) = splitmix64(state);
        state = next;
        single[i] = v;
        i += 1;
    }
    let mut mask = 0;
    while mask < 16 {
        let mut k = 0;
        let mut bit = 0;
        while bit < 4 {
            if mask & (1 << bit) != 0 {
                k ^= single[bit];
            }
            bit += 1;
        }
        keys.castling[mask] = k;
        mask += 1;
    }
    let mut f = 0;
    while f < 8 {
        let (next, v) = splitmix64(state);
        state = next;
        keys.en_passant_file[f] = v;
        f += 1;
    }
    keys
}

pub static KEYS: Keys = generate();

#[inline]
pub fn piece(p: Piece, sq: Square) -> u64 {
    KEYS.pieces[p.index()][sq.index()]
}

#[inline]
pub fn side(color: Color) -> u64 {
    match color {
        Color::White => 0,
        Color::Black => KEYS.black_to_move,
    }
}

#[inline]
pub fn castling(rights: u8) -> u64 {
    KEYS.castling[rights as usize & 15]
}

#[inline]
pub fn en_passant(sq: Option<Square>) -> u64 {
    sq.map_or(0, |s| KEYS.en_passant_file[s.file() as usize])
}
