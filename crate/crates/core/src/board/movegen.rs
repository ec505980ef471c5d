//! Pseudo-legal generation followed by a king-safety filter. Output order is
//! fixed for a given position: pieces in kind order (pawns first), origin
//! squares ascending, destinations ascending, promotions strongest first.

use super::attacks;
use super::types::{castling, BitIter, Color, PieceKind, Square};
use super::{flags, Move, Position};

pub(super) fn legal_moves(pos: &Position) -> Vec<Move> {
    let mut moves = Vec::with_capacity(48);
    pseudo_legal(pos, &mut moves);
    moves.retain(|m| leaves_king_safe(pos, m));
    moves
}

pub(super) fn has_legal_move(pos: &Position) -> bool {
    let mut moves = Vec::with_capacity(48);
    pseudo_legal(pos, &mut moves);
    moves.iter().any(|m| leaves_king_safe(pos, m))
}

fn push_pawn_moves(moves: &mut Vec<Move>, from: Square, to: Square, captured: Option<PieceKind>, us: Color) {
    if to.rank() == us.promotion_rank() {
        for promo in PieceKind::PROMOTIONS {
            moves.push(Move {
                from,
                to,
                piece: PieceKind::Pawn,
                captured,
                promotion: Some(promo),
                flags: 0,
            });
        }
    } else {
        moves.push(Move {
            from,
            to,
            piece: PieceKind::Pawn,
            captured,
            promotion: None,
            flags: 0,
        });
    }
}

fn pseudo_legal(pos: &Position, moves: &mut Vec<Move>) {
    let us = pos.side_to_move();
    let them = !us;
    let own = pos.color_bb(us);
    let enemy = pos.color_bb(them);
    let occ = own | enemy;

    for from in BitIter(pos.pieces(us, PieceKind::Pawn)) {
        let one = from.offset(us.forward());
        let mut targets = attacks::pawn(us, from) & enemy;
        if occ & one.bb() == 0 {
            targets |= one.bb();
        }
        for to in BitIter(targets) {
            let captured = pos.piece_at(to).map(|p| p.kind);
            push_pawn_moves(moves, from, to, captured, us);
            if to == one && from.rank() == us.pawn_rank() {
                let two = one.offset(us.forward());
                if occ & two.bb() == 0 {
                    moves.push(Move {
                        from,
                        to: two,
                        piece: PieceKind::Pawn,
                        captured: None,
                        promotion: None,
                        flags: flags::DOUBLE_PUSH,
                    });
                }
            }
        }
        if let Some(ep) = pos.en_passant() {
            if attacks::pawn(us, from) & ep.bb() != 0 {
                moves.push(Move {
                    from,
                    to: ep,
                    piece: PieceKind::Pawn,
                    captured: Some(PieceKind::Pawn),
                    promotion: None,
                    flags: flags::EN_PASSANT,
                });
            }
        }
    }

    for kind in [
        PieceKind::Knight,
        PieceKind::Bishop,
        PieceKind::Rook,
        PieceKind::Queen,
        PieceKind::King,
    ] {
        for from in BitIter(pos.pieces(us, kind)) {
            let targets = match kind {
                PieceKind::Knight => attacks::knight(from),
                PieceKind::Bishop => attacks::bishop(from, occ),
                PieceKind::Rook => attacks::rook(from, occ),
                PieceKind::Queen => attacks::queen(from, occ),
                _ => attacks::king(from),
            } & !own;
            for to in BitIter(targets) {
                moves.push(Move {
                    from,
                    to,
                    piece: kind,
                    captured: pos.piece_at(to).map(|p| p.kind),
                    promotion: None,
                    flags: 0,
                });
            }
        }
    }

    castling_moves(pos, moves);
}

fn castling_moves(pos: &Position, moves: &mut Vec<Move>) {
    let us = pos.side_to_move();
    let rights = pos.castling_rights();
    let (king_right, queen_right, base) = match us {
        Color::White => (castling::WHITE_KING, castling::WHITE_QUEEN, 0u8),
        Color::Black => (castling::BLACK_KING, castling::BLACK_QUEEN, 56u8),
    };
    if rights & (king_right | queen_right) == 0 {
        return;
    }
    let king_from = Square::new(base + 4);
    if pos.piece_at(king_from).map(|p| p.kind) != Some(PieceKind::King) || pos.in_check() {
        return;
    }
    let occ = pos.occupied();
    let sq = |i: u8| Square::new(base + i);
    let attacked = |s: Square| pos.is_attacked(s, !us);
    let rook_home = |s: Square| {
        pos.piece_at(s)
            .is_some_and(|p| p.color == us && p.kind == PieceKind::Rook)
    };

    if rights & king_right != 0
        && rook_home(sq(7))
        && occ & (sq(5).bb() | sq(6).bb()) == 0
        && !attacked(sq(5))
        && !attacked(sq(6))
    {
        moves.push(Move {
            from: king_from,
            to: sq(6),
            piece: PieceKind::King,
            captured: None,
            promotion: None,
            flags: flags::CASTLE,
        });
    }
    if rights & queen_right != 0
        && rook_home(sq(0))
        && occ & (sq(1).bb() | sq(2).bb() | sq(3).bb()) == 0
        && !attacked(sq(3))
        && !attacked(sq(2))
    {
        moves.push(Move {
            from: king_from,
            to: sq(2),
            piece: PieceKind::King,
            captured: None,
            promotion: None,
            flags: flags::CASTLE,
        });
    }
}

/// Whether the mover's king survives `m`. Castling paths are already vetted
/// during generation.
fn leaves_king_safe(pos: &Position, m: &Move) -> bool {
    if m.is_castle() {
        return true;
    }
    let us = pos.side_to_move();
    let them = !us;
    let king_sq = if m.piece == PieceKind::King {
        m.to
    } else {
        pos.king_square(us)
    };
    let mut occ = (pos.occupied() & !m.from.bb()) | m.to.bb();
    let mut removed = 0;
    if m.is_en_passant() {
        let cap = m.to.offset(-us.forward());
        occ &= !cap.bb();
        removed = cap.bb();
    } else if m.captured.is_some() {
        removed = m.to.bb();
    }
    let enemy = pos.color_bb(them) & !removed;
    let pawns = pos.kind_bb(PieceKind::Pawn) & enemy;
    let knights = pos.kind_bb(PieceKind::Knight) & enemy;
    let kings = pos.kind_bb(PieceKind::King) & enemy;
    let queens = pos.kind_bb(PieceKind::Queen);
    let diag = (pos.kind_bb(PieceKind::Bishop) | queens) & enemy;
    let orth = (pos.kind_bb(PieceKind::Rook) | queens) & enemy;
    attacks::pawn(us, king_sq) & pawns == 0
        && attacks::knight(king_sq) & knights == 0
        && attacks::king(king_sq) & kings == 0
        && attacks::bishop(king_sq, occ) & diag == 0
        && attacks::rook(king_sq, occ) & orth == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn underpromotions_are_generated() {
        let p = Position::from_fen("8/P6k/8/8/8/8/8/K7 w - - 0 1").unwrap();
        let promos: Vec<_> = p
            .generate_moves()
            .into_iter()
            .filter_map(|m| m.promotion)
            .collect();
        assert_eq!(
            promos,
            vec![PieceKind::Queen, PieceKind::Rook, PieceKind::Bishop, PieceKind::Knight]
        );
    }

    #[test]
    fn pinned_piece_cannot_leave_line() {
        // Knight on e2 is pinned by the rook on e8.
        let p = Position::from_fen("4r2k/8/8/8/8/8/4N3/4K3 w - - 0 1").unwrap();
        assert!(p.generate_moves().iter().all(|m| m.piece != PieceKind::Knight));
    }

    #[test]
    fn en_passant_discovered_check_is_illegal() {
        // Taking e.p. would expose the king on a5 to the rook on h5.
        let p = Position::from_fen("8/8/8/KPp4r/8/8/8/7k w - c6 0 1").unwrap();
        assert!(p.generate_moves().iter().all(|m| !m.is_en_passant()));
    }

    #[test]
    fn castling_through_attack_is_illegal() {
        let p = Position::from_fen("r3k2r/8/8/8/8/8/8/R3K2R w KQkq - 0 1").unwrap();
        assert_eq!(p.generate_moves().iter().filter(|m| m.is_castle()).count(), 2);
        let p = Position::from_fen("r3k2r/8/8/8/8/8/5r2/R3K2R w KQkq - 0 1").unwrap();
        // f2 rook covers f1 and gives no check; king side is blocked, queen side fine.
        let castles: Vec<_> = p.generate_moves().into_iter().filter(|m| m.is_castle()).collect();
        assert_eq!(castles.len(), 1);
        assert_eq!(castles[0].to.to_string(), "c1");
    }

    #[test]
    fn generation_order_is_deterministic() {
        let p = Position::startpos();
        assert_eq!(p.generate_moves(), p.generate_moves());
        assert_eq!(p.generate_moves()[0].uci(), "a2a3");
    }
}
