//! Chess rules kernel: position representation, legal move generation,
//! reversible make/unmake (including the null move), check detection,
//! hashing, FEN/SAN and perft.

pub mod attacks;
mod fen;
mod movegen;
mod perft;
pub mod san;
pub mod types;
pub mod zobrist;

use std::fmt;

pub use fen::{FenError, FenField, START_FEN};
pub use perft::{divide, perft};
pub use types::{castling, BitIter, Color, Piece, PieceKind, Square};

pub mod flags {
    pub const CASTLE: u8 = 1;
    pub const EN_PASSANT: u8 = 2;
    pub const DOUBLE_PUSH: u8 = 4;
    pub const NULL: u8 = 8;
}

/// A fully described move. Carrying the moved and captured pieces keeps
/// make/unmake free of board lookups and lets the move orderer score
/// captures without touching the position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub from: Square,
    pub to: Square,
    pub piece: PieceKind,
    pub captured: Option<PieceKind>,
    pub promotion: Option<PieceKind>,
    pub flags: u8,
}

impl Move {
    /// The null move. Only [`Position::make_null_move`] understands it.
    pub const NULL: Move = Move {
        from: Square::new(0),
        to: Square::new(0),
        piece: PieceKind::King,
        captured: None,
        promotion: None,
        flags: flags::NULL,
    };

    #[inline]
    pub const fn is_null(&self) -> bool {
        self.flags & flags::NULL != 0
    }

    #[inline]
    pub const fn is_capture(&self) -> bool {
        self.captured.is_some()
    }

    #[inline]
    pub const fn is_castle(&self) -> bool {
        self.flags & flags::CASTLE != 0
    }

    #[inline]
    pub const fn is_en_passant(&self) -> bool {
        self.flags & flags::EN_PASSANT != 0
    }

    #[inline]
    pub const fn is_double_push(&self) -> bool {
        self.flags & flags::DOUBLE_PUSH != 0
    }

    /// Long algebraic (UCI) notation, e.g. `e2e4`, `e7e8q`, `0000` for null.
    pub fn uci(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_null() {
            return f.write_str("0000");
        }
        write!(f, "{}{}", self.from, self.to)?;
        if let Some(p) = self.promotion {
            let c = Piece::new(Color::Black, p).fen_char();
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Everything `make_move` destroys that the move itself cannot restore.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UndoInfo {
    pub castling: u8,
    pub en_passant: Option<Square>,
    pub halfmove_clock: u16,
    pub fullmove_number: u16,
    pub hash: u64,
    pub captured: Option<Piece>,
    pub null_count: u8,
}

// Castling rights surviving a move that touches the square.
const fn castle_masks() -> [u8; 64] {
    let mut m = [castling::ALL; 64];
    m[0] = castling::ALL & !castling::WHITE_QUEEN;
    m[7] = castling::ALL & !castling::WHITE_KING;
    m[4] = castling::ALL & !(castling::WHITE_KING | castling::WHITE_QUEEN);
    m[56] = castling::ALL & !castling::BLACK_QUEEN;
    m[63] = castling::ALL & !castling::BLACK_KING;
    m[60] = castling::ALL & !(castling::BLACK_KING | castling::BLACK_QUEEN);
    m
}

static CASTLE_MASK: [u8; 64] = castle_masks();

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Position {
    squares: [Option<Piece>; 64],
    by_kind: [u64; 6],
    by_color: [u64; 2],
    side: Color,
    castling: u8,
    en_passant: Option<Square>,
    halfmove_clock: u16,
    fullmove_number: u16,
    hash: u64,
    null_count: u8,
}

impl Default for Position {
    fn default() -> Self {
        Position::startpos()
    }
}

impl Position {
    fn empty() -> Position {
        Position {
            squares: [None; 64],
            by_kind: [0; 6],
            by_color: [0; 2],
            side: Color::White,
            castling: 0,
            en_passant: None,
            halfmove_clock: 0,
            fullmove_number: 1,
            hash: 0,
            null_count: 0,
        }
    }

    pub fn startpos() -> Position {
        Position::from_fen(START_FEN).expect("start position FEN is valid")
    }

    pub fn from_fen(text: &str) -> Result<Position, FenError> {
        fen::parse(text)
    }

    pub fn to_fen(&self) -> String {
        fen::render(self)
    }

    #[inline]
    pub fn side_to_move(&self) -> Color {
        self.side
    }

    #[inline]
    pub fn piece_at(&self, sq: Square) -> Option<Piece> {
        self.squares[sq.index()]
    }

    #[inline]
    pub fn castling_rights(&self) -> u8 {
        self.castling
    }

    #[inline]
    pub fn en_passant(&self) -> Option<Square> {
        self.en_passant
    }

    #[inline]
    pub fn halfmove_clock(&self) -> u16 {
        self.halfmove_clock
    }

    #[inline]
    pub fn fullmove_number(&self) -> u16 {
        self.fullmove_number
    }

    #[inline]
    pub fn hash(&self) -> u64 {
        self.hash
    }

    /// Consecutive null moves leading to this position (0 or 1).
    #[inline]
    pub fn null_count(&self) -> u8 {
        self.null_count
    }

    #[inline]
    pub fn occupied(&self) -> u64 {
        self.by_color[0] | self.by_color[1]
    }

    #[inline]
    pub fn color_bb(&self, color: Color) -> u64 {
        self.by_color[color.index()]
    }

    #[inline]
    pub fn kind_bb(&self, kind: PieceKind) -> u64 {
        self.by_kind[kind.index()]
    }

    #[inline]
    pub fn pieces(&self, color: Color, kind: PieceKind) -> u64 {
        self.by_color[color.index()] & self.by_kind[kind.index()]
    }

    #[inline]
    pub fn king_square(&self, color: Color) -> Square {
        let bb = self.pieces(color, PieceKind::King);
        debug_assert!(bb != 0, "no {color:?} king");
        Square::new(bb.trailing_zeros() as u8)
    }

    pub fn piece_count(&self) -> u32 {
        self.occupied().count_ones()
    }

    #[inline]
    fn set_piece(&mut self, sq: Square, piece: Piece) {
        debug_assert!(self.squares[sq.index()].is_none());
        self.squares[sq.index()] = Some(piece);
        self.by_kind[piece.kind.index()] |= sq.bb();
        self.by_color[piece.color.index()] |= sq.bb();
    }

    #[inline]
    fn clear_piece(&mut self, sq: Square) -> Piece {
        let piece = self.squares[sq.index()].take().expect("square is occupied");
        self.by_kind[piece.kind.index()] &= !sq.bb();
        self.by_color[piece.color.index()] &= !sq.bb();
        piece
    }

    /// Bitboard of pieces of either color attacking `sq` under occupancy `occ`.
    pub fn attackers_to(&self, sq: Square, occ: u64) -> u64 {
        let diag = self.by_kind[PieceKind::Bishop.index()] | self.by_kind[PieceKind::Queen.index()];
        let orth = self.by_kind[PieceKind::Rook.index()] | self.by_kind[PieceKind::Queen.index()];
        (attacks::pawn(Color::White, sq) & self.pieces(Color::Black, PieceKind::Pawn))
            | (attacks::pawn(Color::Black, sq) & self.pieces(Color::White, PieceKind::Pawn))
            | (attacks::knight(sq) & self.by_kind[PieceKind::Knight.index()])
            | (attacks::king(sq) & self.by_kind[PieceKind::King.index()])
            | (attacks::bishop(sq, occ) & diag)
            | (attacks::rook(sq, occ) & orth)
    }

    #[inline]
    pub fn is_attacked(&self, sq: Square, by: Color) -> bool {
        self.attackers_to(sq, self.occupied()) & self.by_color[by.index()] != 0
    }

    /// True iff the side to move's king is attacked.
    #[inline]
    pub fn in_check(&self) -> bool {
        self.is_attacked(self.king_square(self.side), !self.side)
    }

    /// True iff `color` owns nothing but its king and pawns.
    pub fn only_king_and_pawns(&self, color: Color) -> bool {
        let own = self.by_color[color.index()];
        own & !(self.by_kind[PieceKind::King.index()] | self.by_kind[PieceKind::Pawn.index()]) == 0
    }

    /// Hash recomputed from scratch; equals [`Position::hash`] whenever the
    /// incremental updates are correct.
    pub fn compute_hash(&self) -> u64 {
        let mut h = 0;
        for sq in BitIter(self.occupied()) {
            h ^= zobrist::piece(self.squares[sq.index()].unwrap(), sq);
        }
        h ^ zobrist::side(self.side)
            ^ zobrist::castling(self.castling)
            ^ zobrist::en_passant(self.en_passant)
    }

    pub fn generate_moves(&self) -> Vec<Move> {
        movegen::legal_moves(self)
    }

    pub fn has_legal_move(&self) -> bool {
        movegen::has_legal_move(self)
    }

    pub fn is_checkmate(&self) -> bool {
        self.in_check() && !self.has_legal_move()
    }

    pub fn is_stalemate(&self) -> bool {
        !self.in_check() && !self.has_legal_move()
    }

    /// Neither side can possibly deliver mate: bare kings, or a single minor
    /// piece against a bare king.
    pub fn insufficient_material(&self) -> bool {
        let heavy = self.by_kind[PieceKind::Pawn.index()]
            | self.by_kind[PieceKind::Rook.index()]
            | self.by_kind[PieceKind::Queen.index()];
        if heavy != 0 {
            return false;
        }
        let minors = self.by_kind[PieceKind::Knight.index()] | self.by_kind[PieceKind::Bishop.index()];
        minors.count_ones() <= 1
    }

    // An en-passant square is only recorded when an enemy pawn can actually
    // take, so transpositions hash identically.
    fn en_passant_target(&self, behind: Square, capturer: Color) -> Option<Square> {
        let pawns = self.pieces(capturer, PieceKind::Pawn);
        (attacks::pawn(!capturer, behind) & pawns != 0).then_some(behind)
    }

    pub fn make_move(&mut self, m: Move) -> UndoInfo {
        debug_assert!(!m.is_null(), "use make_null_move for the null move");
        let us = self.side;
        let them = !us;
        let mut undo = UndoInfo {
            castling: self.castling,
            en_passant: self.en_passant,
            halfmove_clock: self.halfmove_clock,
            fullmove_number: self.fullmove_number,
            hash: self.hash,
            captured: None,
            null_count: self.null_count,
        };

        let mut hash = self.hash
            ^ zobrist::castling(self.castling)
            ^ zobrist::en_passant(self.en_passant)
            ^ zobrist::side(us)
            ^ zobrist::side(them);
        self.en_passant = None;

        if m.is_castle() {
            let (rook_from, rook_to) = castle_rook_squares(m.to);
            let king = self.clear_piece(m.from);
            self.set_piece(m.to, king);
            let rook = self.clear_piece(rook_from);
            self.set_piece(rook_to, rook);
            hash ^= zobrist::piece(king, m.from) ^ zobrist::piece(king, m.to);
            hash ^= zobrist::piece(rook, rook_from) ^ zobrist::piece(rook, rook_to);
        } else {
            if m.is_en_passant() {
                let cap_sq = m.to.offset(-us.forward());
                let victim = self.clear_piece(cap_sq);
                hash ^= zobrist::piece(victim, cap_sq);
                undo.captured = Some(victim);
            } else if m.captured.is_some() {
                let victim = self.clear_piece(m.to);
                hash ^= zobrist::piece(victim, m.to);
                undo.captured = Some(victim);
            }
            let mover = self.clear_piece(m.from);
            hash ^= zobrist::piece(mover, m.from);
            let placed = match m.promotion {
                Some(kind) => Piece::new(us, kind),
                None => mover,
            };
            self.set_piece(m.to, placed);
            hash ^= zobrist::piece(placed, m.to);
            if m.is_double_push() {
                self.en_passant = self.en_passant_target(m.from.offset(us.forward()), them);
            }
        }

        self.castling &= CASTLE_MASK[m.from.index()] & CASTLE_MASK[m.to.index()];
        hash ^= zobrist::castling(self.castling) ^ zobrist::en_passant(self.en_passant);

        if m.piece == PieceKind::Pawn || undo.captured.is_some() {
            self.halfmove_clock = 0;
        } else {
            self.halfmove_clock += 1;
        }
        if us == Color::Black {
            self.fullmove_number += 1;
        }
        self.side = them;
        self.null_count = 0;
        self.hash = hash;
        debug_assert_eq!(self.hash, self.compute_hash());
        undo
    }

    pub fn unmake_move(&mut self, m: Move, undo: &UndoInfo) {
        let them = self.side;
        let us = !them;
        if m.is_castle() {
            let (rook_from, rook_to) = castle_rook_squares(m.to);
            let king = self.clear_piece(m.to);
            self.set_piece(m.from, king);
            let rook = self.clear_piece(rook_to);
            self.set_piece(rook_from, rook);
        } else {
            self.clear_piece(m.to);
            self.set_piece(m.from, Piece::new(us, m.piece));
            if let Some(victim) = undo.captured {
                let sq = if m.is_en_passant() {
                    m.to.offset(-us.forward())
                } else {
                    m.to
                };
                self.set_piece(sq, victim);
            }
        }
        self.side = us;
        self.castling = undo.castling;
        self.en_passant = undo.en_passant;
        self.halfmove_clock = undo.halfmove_clock;
        self.fullmove_number = undo.fullmove_number;
        self.hash = undo.hash;
        self.null_count = undo.null_count;
    }

    /// Passes the turn. Placement and the halfmove clock are untouched; the
    /// en-passant right lapses.
    pub fn make_null_move(&mut self) -> UndoInfo {
        debug_assert!(!self.in_check(), "null move while in check");
        debug_assert_eq!(self.null_count, 0, "two null moves in a row");
        let undo = UndoInfo {
            castling: self.castling,
            en_passant: self.en_passant,
            halfmove_clock: self.halfmove_clock,
            fullmove_number: self.fullmove_number,
            hash: self.hash,
            captured: None,
            null_count: self.null_count,
        };
        self.hash ^= zobrist::en_passant(self.en_passant)
            ^ zobrist::side(self.side)
            ^ zobrist::side(!self.side);
        self.en_passant = None;
        self.side = !self.side;
        self.null_count += 1;
        undo
    }

    pub fn unmake_null_move(&mut self, undo: &UndoInfo) {
        self.side = !self.side;
        self.en_passant = undo.en_passant;
        self.hash = undo.hash;
        self.null_count = undo.null_count;
    }

    /// Checks every structural invariant; used by the FEN parser and tests.
    pub fn validate(&self) -> Result<(), FenError> {
        for color in Color::ALL {
            let kings = self.pieces(color, PieceKind::King).count_ones();
            if kings != 1 {
                return Err(FenError::new(
                    FenField::Placement,
                    format!("expected exactly one {color:?} king, found {kings}"),
                ));
            }
        }
        let back_ranks = 0xFF00_0000_0000_00FFu64;
        if self.by_kind[PieceKind::Pawn.index()] & back_ranks != 0 {
            return Err(FenError::new(FenField::Placement, "pawn on first or last rank"));
        }
        if self.is_attacked(self.king_square(!self.side), self.side) {
            return Err(FenError::new(
                FenField::SideToMove,
                "side not to move is in check (illegal position)",
            ));
        }
        if let Some(ep) = self.en_passant {
            let expected_rank = if self.side == Color::White { 5 } else { 2 };
            if ep.rank() != expected_rank || self.piece_at(ep).is_some() {
                return Err(FenError::new(FenField::EnPassant, format!("invalid en-passant square {ep}")));
            }
            let pusher = self.pieces(!self.side, PieceKind::Pawn);
            if pusher & ep.offset((!self.side).forward()).bb() == 0 {
                return Err(FenError::new(
                    FenField::EnPassant,
                    format!("no pawn could have just passed {ep}"),
                ));
            }
        }
        if self.null_count > 1 {
            return Err(FenError::new(FenField::Placement, "more than one consecutive null move"));
        }
        Ok(())
    }

    /// Vertical mirror with colors swapped: the same position seen from the
    /// other side of the board.
    pub fn color_flipped(&self) -> Position {
        let mut p = Position::empty();
        for sq in BitIter(self.occupied()) {
            let piece = self.squares[sq.index()].unwrap();
            p.set_piece(sq.flip_rank(), Piece::new(!piece.color, piece.kind));
        }
        p.side = !self.side;
        p.castling = ((self.castling & 3) << 2) | ((self.castling >> 2) & 3);
        p.en_passant = self.en_passant.map(Square::flip_rank);
        p.halfmove_clock = self.halfmove_clock;
        p.fullmove_number = self.fullmove_number;
        p.null_count = self.null_count;
        p.hash = p.compute_hash();
        p
    }
}

/// Rook source and destination for a castling king landing on `king_to`.
#[inline]
fn castle_rook_squares(king_to: Square) -> (Square, Square) {
    match king_to.index() {
        6 => (Square::new(7), Square::new(5)),
        2 => (Square::new(0), Square::new(3)),
        62 => (Square::new(63), Square::new(61)),
        58 => (Square::new(56), Square::new(59)),
        _ => unreachable!("not a castling destination: {king_to}"),
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rank in (0..8).rev() {
            for file in 0..8 {
                let c = self
                    .piece_at(Square::from_coords(file, rank))
                    .map_or('.', Piece::fen_char);
                write!(f, "{c}")?;
                if file < 7 {
                    f.write_str(" ")?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "{}", self.to_fen())
    }
}
