use std::fmt;

use thiserror::Error;

use super::types::{castling, Color, Piece, Square};
use super::Position;

pub const START_FEN: &str = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FenField {
    FieldCount,
    Placement,
    SideToMove,
    Castling,
    EnPassant,
    HalfmoveClock,
    FullmoveNumber,
}

impl fmt::Display for FenField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FenField::FieldCount => "field count",
            FenField::Placement => "piece placement",
            FenField::SideToMove => "side to move",
            FenField::Castling => "castling rights",
            FenField::EnPassant => "en-passant square",
            FenField::HalfmoveClock => "halfmove clock",
            FenField::FullmoveNumber => "fullmove number",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid FEN ({field}): {message}")]
pub struct FenError {
    pub field: FenField,
    pub message: String,
}

impl FenError {
    pub fn new(field: FenField, message: impl Into<String>) -> FenError {
        FenError {
            field,
            message: message.into(),
        }
    }
}

pub(super) fn parse(text: &str) -> Result<Position, FenError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if !(4..=6).contains(&fields.len()) {
        return Err(FenError::new(
            FenField::FieldCount,
            format!("expected 4 to 6 fields, found {}", fields.len()),
        ));
    }

    let mut pos = Position::empty();
    let ranks: Vec<&str> = fields[0].split('/').collect();
    if ranks.len() != 8 {
        return Err(FenError::new(
            FenField::Placement,
            format!("expected 8 ranks, found {}", ranks.len()),
        ));
    }
    for (i, row) in ranks.iter().enumerate() {
        let rank = 7 - i as u8;
        let mut file = 0u8;
        for c in row.chars() {
            if let Some(skip) = c.to_digit(10) {
                if !(1..=8).contains(&skip) {
                    return Err(FenError::new(FenField::Placement, format!("bad empty-square count '{c}'")));
                }
                file += skip as u8;
            } else {
                let piece = Piece::from_fen_char(c)
                    .ok_or_else(|| FenError::new(FenField::Placement, format!("unknown piece '{c}'")))?;
                if file >= 8 {
                    file = 9;
                    break;
                }
                pos.set_piece(Square::from_coords(file, rank), piece);
                file += 1;
            }
            if file > 8 {
                break;
            }
        }
        if file != 8 {
            return Err(FenError::new(
                FenField::Placement,
                format!("rank {} does not describe 8 files", rank + 1),
            ));
        }
    }
    for color in Color::ALL {
        if pos.pieces(color, super::PieceKind::King) == 0 {
            return Err(FenError::new(FenField::Placement, format!("missing {color:?} king")));
        }
    }

    pos.side = match fields[1] {
        "w" => Color::White,
        "b" => Color::Black,
        other => {
            return Err(FenError::new(FenField::SideToMove, format!("expected 'w' or 'b', found '{other}'")))
        }
    };

    if fields[2] != "-" {
        for c in fields[2].chars() {
            pos.castling |= match c {
                'K' => castling::WHITE_KING,
                'Q' => castling::WHITE_QUEEN,
                'k' => castling::BLACK_KING,
                'q' => castling::BLACK_QUEEN,
                _ => return Err(FenError::new(FenField::Castling, format!("unknown right '{c}'"))),
            };
        }
    }
    // Rights whose king or rook has left home cannot be exercised; drop them.
    let home = |sq: u8, color: Color, kind: super::PieceKind| {
        pos.piece_at(Square::new(sq)) == Some(Piece::new(color, kind))
    };
    use super::PieceKind::{King, Rook};
    let mut keep = 0;
    if home(4, Color::White, King) {
        if home(7, Color::White, Rook) {
            keep |= castling::WHITE_KING;
        }
        if home(0, Color::White, Rook) {
            keep |= castling::WHITE_QUEEN;
        }
    }
    if home(60, Color::Black, King) {
        if home(63, Color::Black, Rook) {
            keep |= castling::BLACK_KING;
        }
        if home(56, Color::Black, Rook) {
            keep |= castling::BLACK_QUEEN;
        }
    }
    pos.castling &= keep;

    if fields[3] != "-" {
        let sq = Square::parse(fields[3])
            .ok_or_else(|| FenError::new(FenField::EnPassant, format!("bad square '{}'", fields[3])))?;
        pos.en_passant = Some(sq);
    }

    if let Some(h) = fields.get(4) {
        pos.halfmove_clock = h
            .parse()
            .map_err(|_| FenError::new(FenField::HalfmoveClock, format!("not a number: '{h}'")))?;
    }
    if let Some(f) = fields.get(5) {
        pos.fullmove_number = f
            .parse()
            .map_err(|_| FenError::new(FenField::FullmoveNumber, format!("not a number: '{f}'")))?;
        pos.fullmove_number = pos.fullmove_number.max(1);
    }

    pos.validate()?;
    // Keep the en-passant square only when a capture is actually possible,
    // matching what make_move records.
    if let Some(ep) = pos.en_passant {
        pos.en_passant = pos.en_passant_target(ep, pos.side);
    }
    pos.hash = pos.compute_hash();
    Ok(pos)
}

pub(super) fn render(pos: &Position) -> String {
    let mut out = String::with_capacity(90);
    for rank in (0..8).rev() {
        let mut empty = 0;
        for file in 0..8 {
            match pos.piece_at(Square::from_coords(file, rank)) {
                Some(p) => {
                    if empty > 0 {
                        out.push(char::from(b'0' + empty));
                        empty = 0;
                    }
                    out.push(p.fen_char());
                }
                None => empty += 1,
            }
        }
        if empty > 0 {
            out.push(char::from(b'0' + empty));
        }
        if rank > 0 {
            out.push('/');
        }
    }
    out.push(' ');
    out.push(if pos.side == Color::White { 'w' } else { 'b' });
    out.push(' ');
    if pos.castling == 0 {
        out.push('-');
    } else {
        for (bit, c) in [
            (castling::WHITE_KING, 'K'),
            (castling::WHITE_QUEEN, 'Q'),
            (castling::BLACK_KING, 'k'),
            (castling::BLACK_QUEEN, 'q'),
        ] {
            if pos.castling & bit != 0 {
                out.push(c);
            }
        }
    }
    out.push(' ');
    match pos.en_passant {
        Some(sq) => out.push_str(&sq.to_string()),
        None => out.push('-'),
    }
    out.push_str(&format!(" {} {}", pos.halfmove_clock, pos.fullmove_number));
    out
}
