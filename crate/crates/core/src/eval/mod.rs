//! Static evaluation (material plus piece-square tables) and the tactical
//! move classifier used by quiescence search.

mod pst;

pub use pst::{PieceSquareTables, PstError, DEFAULT_PST};

use crate::board::{BitIter, Color, Move, PieceKind, Position};

/// Centipawns from the side to move's point of view.
pub type Score = i32;

pub const MAX_PLY: usize = 128;
pub const MATE: Score = 32_000;
/// Scores with a larger magnitude encode a forced mate.
pub const MATE_THRESHOLD: Score = MATE - 2 * MAX_PLY as Score;
pub const INFINITY: Score = MATE + 1;

pub const PIECE_VALUES: [Score; 6] = [100, 320, 330, 500, 900, 0];

#[inline]
pub fn piece_value(kind: PieceKind) -> Score {
    PIECE_VALUES[kind.index()]
}

#[inline]
pub fn is_mate_score(s: Score) -> bool {
    s.abs() > MATE_THRESHOLD
}

/// Plies to mate encoded in a mate score (positive when the side to move
/// mates, negative when it is mated).
pub fn mate_distance(s: Score) -> Option<i32> {
    if !is_mate_score(s) {
        return None;
    }
    Some(if s > 0 { MATE - s } else { -(MATE + s) })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Evaluator {
    tables: PieceSquareTables,
}

impl Evaluator {
    pub fn new(tables: PieceSquareTables) -> Evaluator {
        Evaluator { tables }
    }

    pub fn tables(&self) -> &PieceSquareTables {
        &self.tables
    }

    pub fn evaluate(&self, pos: &Position) -> Score {
        score_with(&self.tables, pos)
    }
}

/// [`Evaluator::evaluate`] with the built-in tables.
pub fn evaluate(pos: &Position) -> Score {
    score_with(PieceSquareTables::builtin(), pos)
}

fn score_with(tables: &PieceSquareTables, pos: &Position) -> Score {
    let mut white = 0;
    for kind in PieceKind::ALL {
        let v = piece_value(kind);
        for sq in BitIter(pos.pieces(Color::White, kind)) {
            white += v + tables.value(kind, sq.flip_rank().index());
        }
        for sq in BitIter(pos.pieces(Color::Black, kind)) {
            white -= v + tables.value(kind, sq.index());
        }
    }
    let score = match pos.side_to_move() {
        Color::White => white,
        Color::Black => -white,
    };
    debug_assert!(score.abs() < MATE_THRESHOLD);
    score
}

/// Captures (en passant included) and queen promotions. Quiet
/// underpromotions are not tactical.
#[inline]
pub fn is_tactical(m: &Move) -> bool {
    m.is_capture() || m.promotion == Some(PieceKind::Queen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(fen: &str) -> Position {
        Position::from_fen(fen).unwrap()
    }

    #[test]
    fn opening_is_balanced() {
        assert_eq!(evaluate(&Position::startpos()), 0);
    }

    #[test]
    fn flipped_position_scores_the_same() {
        let p = pos("r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1");
        assert_eq!(evaluate(&p), evaluate(&p.color_flipped()));
        assert_ne!(evaluate(&p), 0);
    }

    #[test]
    fn extra_queen_is_worth_over_800() {
        // Material oracle: kings and pawns mirror each other, white has a queen.
        let p = pos("4k3/pppppppp/8/8/8/8/PPPPPPPP/3QK3 w - - 0 1");
        let mirrored_kings_and_pawns = 0;
        let material = piece_value(PieceKind::Queen) + mirrored_kings_and_pawns;
        let s = evaluate(&p);
        assert!(s > 800, "{s}");
        let pst = PieceSquareTables::builtin().value(PieceKind::Queen, 7 * 8 + 3);
        assert_eq!(s, material + pst);
        // From black's point of view the sign flips.
        let b = pos("4k3/pppppppp/8/8/8/8/PPPPPPPP/3QK3 b - - 0 1");
        assert_eq!(evaluate(&b), -s);
    }

    #[test]
    fn custom_tables_are_used() {
        let flat = DEFAULT_PST
            .lines()
            .map(|l| {
                if l.starts_with('[') || l.starts_with('#') || l.trim().is_empty() {
                    l.to_string()
                } else {
                    "0 0 0 0 0 0 0 0".to_string()
                }
            })
            .collect::<Vec<_>>()
            .join("\n");
        let e = Evaluator::new(PieceSquareTables::parse(&flat).unwrap());
        let p = pos("4k3/8/8/8/8/8/8/3QK3 w - - 0 1");
        assert_eq!(e.evaluate(&p), 900);
        assert_eq!(Evaluator::default().evaluate(&p), evaluate(&p));
    }

    #[test]
    fn tactical_classification() {
        let p = pos("4k3/P7/8/3pP3/8/8/8/4K3 w - d6 0 1");
        let moves = p.generate_moves();
        let find = |uci: &str| *moves.iter().find(|m| m.uci() == uci).unwrap();
        assert!(!is_tactical(&find("e5e6")));
        assert!(is_tactical(&find("e5d6")));
        assert!(is_tactical(&find("a7a8q")));
        assert!(!is_tactical(&find("a7a8n")));
    }

    #[test]
    fn mate_band_is_disjoint_from_static_scores() {
        assert!(MATE_THRESHOLD < MATE - MAX_PLY as Score);
        assert_eq!(mate_distance(MATE - 3), Some(3));
        assert_eq!(mate_distance(-(MATE - 2)), Some(-2));
        assert_eq!(mate_distance(150), None);
    }
}
