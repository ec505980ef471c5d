//! Move ordering: TT move, MVV/LVA captures (queen promotions alongside),
//! optional killers, then quiets by history score. Sorting is stable so
//! ties keep generation order.

use crate::board::{Color, Move, PieceKind};
use crate::eval::piece_value;

use super::history::{HistoryTable, HISTORY_MAX};
use super::tt::PackedMove;

const TT_MOVE: i64 = 1 << 40;
const TACTICAL: i64 = 1 << 32;
const KILLER: i64 = (HISTORY_MAX as i64) + 2;

#[inline]
pub fn mvv_lva(m: &Move) -> i64 {
    let victim = m.captured.map_or(0, piece_value) as i64;
    let promo = if m.promotion == Some(PieceKind::Queen) {
        piece_value(PieceKind::Queen) as i64
    } else {
        0
    };
    (victim + promo) * 8 - m.piece.index() as i64
}

pub fn order_moves(
    moves: &mut [Move],
    tt_move: PackedMove,
    killers: Option<[Option<Move>; 2]>,
    history: &HistoryTable,
    side: Color,
) {
    moves.sort_by_cached_key(|m| {
        let key = if tt_move.matches(m) {
            TT_MOVE
        } else if crate::eval::is_tactical(m) {
            TACTICAL + mvv_lva(m)
        } else if let Some(k) = killers.and_then(|k| k.iter().position(|x| x.as_ref() == Some(m))) {
            KILLER - k as i64
        } else {
            history.score(side, m) as i64
        };
        std::cmp::Reverse(key)
    });
}

/// Captures and queen promotions only, MVV/LVA order.
pub fn order_tactical(moves: &mut [Move]) {
    moves.sort_by_cached_key(|m| std::cmp::Reverse(mvv_lva(m)));
}
