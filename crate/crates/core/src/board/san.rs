//! Standard algebraic notation, as used by EPD `bm`/`am` opcodes.

use thiserror::Error;

use super::types::{PieceKind, Square};
use super::{Move, Position};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SanError {
    #[error("malformed SAN '{0}'")]
    Malformed(String),
    #[error("'{0}' is not a legal move here")]
    Illegal(String),
    #[error("'{san}' is ambiguous ({candidates} candidates); add a file or rank")]
    Ambiguous { san: String, candidates: usize },
}

/// Renders `m` (legal in `pos`) in SAN with minimal disambiguation and a
/// check or mate suffix.
pub fn to_san(pos: &Position, m: Move) -> String {
    let mut out = String::with_capacity(8);
    if m.is_castle() {
        out.push_str(if m.to.file() == 6 { "O-O" } else { "O-O-O" });
    } else if m.piece == PieceKind::Pawn {
        if m.is_capture() {
            out.push((b'a' + m.from.file()) as char);
            out.push('x');
        }
        out.push_str(&m.to.to_string());
        if let Some(p) = m.promotion {
            out.push('=');
            out.push(p.san_letter().unwrap());
        }
    } else {
        out.push(m.piece.san_letter().unwrap());
        let rivals: Vec<Move> = pos
            .generate_moves()
            .into_iter()
            .filter(|o| o.piece == m.piece && o.to == m.to && o.from != m.from)
            .collect();
        if !rivals.is_empty() {
            let file_unique = rivals.iter().all(|o| o.from.file() != m.from.file());
            let rank_unique = rivals.iter().all(|o| o.from.rank() != m.from.rank());
            if file_unique {
                out.push((b'a' + m.from.file()) as char);
            } else if rank_unique {
                out.push((b'1' + m.from.rank()) as char);
            } else {
                out.push_str(&m.from.to_string());
            }
        }
        if m.is_capture() {
            out.push('x');
        }
        out.push_str(&m.to.to_string());
    }

    let mut after = pos.clone();
    after.make_move(m);
    if after.in_check() {
        out.push(if after.has_legal_move() { '+' } else { '#' });
    }
    out
}

/// Resolves `text` to the unique legal move it names.
pub fn parse_san(pos: &Position, text: &str) -> Result<Move, SanError> {
    let raw = text.trim();
    let cleaned: String = raw
        .trim_end_matches("e.p.")
        .chars()
        .filter(|c| !matches!(c, '+' | '#' | '!' | '?'))
        .collect();
    let malformed = || SanError::Malformed(raw.to_string());
    if cleaned.is_empty() {
        return Err(malformed());
    }
    let legal = pos.generate_moves();

    let castle = cleaned.replace('0', "O");
    if castle == "O-O" || castle == "O-O-O" {
        let file = if castle == "O-O" { 6 } else { 2 };
        return legal
            .into_iter()
            .find(|m| m.is_castle() && m.to.file() == file)
            .ok_or_else(|| SanError::Illegal(raw.to_string()));
    }

    let mut chars: Vec<char> = cleaned.chars().collect();
    let piece = match PieceKind::from_san_letter(chars[0]) {
        Some(k) => {
            chars.remove(0);
            k
        }
        None => PieceKind::Pawn,
    };

    let mut promotion = None;
    if piece == PieceKind::Pawn {
        if let Some(&last) = chars.last() {
            if let Some(k) = PieceKind::from_san_letter(last.to_ascii_uppercase()) {
                if k != PieceKind::King && k != PieceKind::Pawn && last != 'b' {
                    promotion = Some(k);
                    chars.pop();
                    if chars.last() == Some(&'=') {
                        chars.pop();
                    }
                }
            }
        }
    }
    if chars.len() < 2 {
        return Err(malformed());
    }
    let dest: String = chars[chars.len() - 2..].iter().collect();
    let to = Square::parse(&dest).ok_or_else(malformed)?;
    let mut from_file = None;
    let mut from_rank = None;
    for &c in &chars[..chars.len() - 2] {
        match c {
            'a'..='h' => from_file = Some(c as u8 - b'a'),
            '1'..='8' => from_rank = Some(c as u8 - b'1'),
            'x' | ':' | '-' => {}
            _ => return Err(malformed()),
        }
    }

    let candidates: Vec<Move> = legal
        .into_iter()
        .filter(|m| {
            !m.is_castle()
                && m.piece == piece
                && m.to == to
                && m.promotion == promotion
                && from_file.is_none_or(|f| m.from.file() == f)
                && from_rank.is_none_or(|r| m.from.rank() == r)
        })
        .collect();
    match candidates.len() {
        0 => Err(SanError::Illegal(raw.to_string())),
        1 => Ok(candidates[0]),
        n => Err(SanError::Ambiguous {
            san: raw.to_string(),
            candidates: n,
        }),
    }
}
