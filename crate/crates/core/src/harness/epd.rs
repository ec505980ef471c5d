//! EPD records: four FEN fields followed by `;`-terminated opcodes.

use std::fmt;

use thiserror::Error;

use crate::board::san::{parse_san, to_san, SanError};
use crate::board::{Color, FenError, Move, Position};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EpdError {
    #[error("record has {0} position fields, expected 4")]
    TooFewFields(usize),
    #[error("record {id}: {source}")]
    Fen {
        id: String,
        #[source]
        source: FenError,
    },
    #[error("record {id}: bad {opcode} move: {source}")]
    Move {
        id: String,
        opcode: &'static str,
        #[source]
        source: SanError,
    },
    #[error("record {id}: {san} is listed under both bm and am")]
    Overlap { id: String, san: String },
    #[error("record {id}: unterminated string operand")]
    UnterminatedString { id: String },
    #[error("record {id}: empty opcode")]
    EmptyOpcode { id: String },
}

/// An opcode other than `bm`, `am` and `id`, kept verbatim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Opcode {
    pub name: String,
    pub operands: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpdRecord {
    pub position: Position,
    pub best_moves: Vec<Move>,
    pub avoid_moves: Vec<Move>,
    pub id: Option<String>,
    pub opcodes: Vec<Opcode>,
}

impl EpdRecord {
    /// The record id, or a placeholder for anonymous records.
    pub fn label(&self) -> &str {
        self.id.as_deref().unwrap_or("?")
    }

    /// Whether `m` counts as solving this record: in bm (when bm is given)
    /// and not in am.
    pub fn accepts(&self, m: &Move) -> bool {
        (self.best_moves.is_empty() || self.best_moves.contains(m)) && !self.avoid_moves.contains(m)
    }

    /// Whether either side is down to king and pawns.
    pub fn is_pawn_ending(&self) -> bool {
        self.position.only_king_and_pawns(Color::White) || self.position.only_king_and_pawns(Color::Black)
    }

    pub fn opcode(&self, name: &str) -> Option<&str> {
        self.opcodes.iter().find(|o| o.name == name).map(|o| o.operands.as_str())
    }
}

/// Serializes with the position first, then `bm`, `am`, `id` and the other
/// opcodes in their original order.
impl fmt::Display for EpdRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fen = self.position.to_fen();
        let fields: Vec<&str> = fen.split(' ').take(4).collect();
        f.write_str(&fields.join(" "))?;
        for (name, moves) in [("bm", &self.best_moves), ("am", &self.avoid_moves)] {
            if !moves.is_empty() {
                let sans: Vec<String> = moves.iter().map(|&m| to_san(&self.position, m)).collect();
                write!(f, " {name} {};", sans.join(" "))?;
            }
        }
        if let Some(id) = &self.id {
            write!(f, " id \"{id}\";")?;
        }
        for op in &self.opcodes {
            if op.operands.is_empty() {
                write!(f, " {};", op.name)?;
            } else {
                write!(f, " {} {};", op.name, op.operands)?;
            }
        }
        Ok(())
    }
}

// Splits at semicolons that are not inside a double-quoted string.
fn split_opcodes(text: &str) -> Option<Vec<&str>> {
    let mut out = Vec::new();
    let mut quoted = false;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '"' => quoted = !quoted,
            ';' if !quoted => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if quoted {
        return None;
    }
    let tail = text[start..].trim();
    if !tail.is_empty() {
        out.push(tail);
    }
    Some(out)
}

fn unquote(s: &str) -> &str {
    s.strip_prefix('"').and_then(|s| s.strip_suffix('"')).unwrap_or(s)
}

pub fn parse_epd(line: &str) -> Result<EpdRecord, EpdError> {
    let line = line.trim();
    let mut rest = line;
    let mut fields = Vec::with_capacity(4);
    while fields.len() < 4 {
        rest = rest.trim_start();
        if rest.is_empty() {
            return Err(EpdError::TooFewFields(fields.len()));
        }
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        fields.push(&rest[..end]);
        rest = &rest[end..];
    }

    // The id is needed for error messages before anything else is checked.
    let provisional_id = rest
        .split(';')
        .map(str::trim)
        .find_map(|op| op.strip_prefix("id ").map(|v| unquote(v.trim()).to_string()))
        .unwrap_or_else(|| "?".to_string());
    let ops = split_opcodes(rest).ok_or_else(|| EpdError::UnterminatedString {
        id: provisional_id.clone(),
    })?;

    let position = Position::from_fen(&fields.join(" ")).map_err(|source| EpdError::Fen {
        id: provisional_id.clone(),
        source,
    })?;

    let mut record = EpdRecord {
        position,
        best_moves: Vec::new(),
        avoid_moves: Vec::new(),
        id: None,
        opcodes: Vec::new(),
    };
    let mut pending = Vec::new();
    for op in ops {
        let (name, operands) = match op.find(char::is_whitespace) {
            Some(i) => (&op[..i], op[i..].trim()),
            None => (op, ""),
        };
        if name.is_empty() {
            return Err(EpdError::EmptyOpcode { id: provisional_id });
        }
        match name {
            "bm" | "am" => pending.push((name, operands)),
            "id" => record.id = Some(unquote(operands).to_string()),
            _ => record.opcodes.push(Opcode {
                name: name.to_string(),
                operands: operands.to_string(),
            }),
        }
    }

    let id = record.label().to_string();
    for (name, operands) in pending {
        let opcode = if name == "bm" { "bm" } else { "am" };
        for san in operands.split_whitespace() {
            let m = parse_san(&record.position, san).map_err(|source| EpdError::Move {
                id: id.clone(),
                opcode,
                source,
            })?;
            let list = if opcode == "bm" {
                &mut record.best_moves
            } else {
                &mut record.avoid_moves
            };
            if !list.contains(&m) {
                list.push(m);
            }
        }
    }
    if let Some(&m) = record.best_moves.iter().find(|m| record.avoid_moves.contains(m)) {
        return Err(EpdError::Overlap {
            id,
            san: to_san(&record.position, m),
        });
    }
    Ok(record)
}

/// A parsed suite file: good records plus per-line failures (1-based line
/// numbers). Blank lines and `#` comments are skipped.
#[derive(Clone, Debug, Default)]
pub struct SuiteFile {
    pub records: Vec<EpdRecord>,
    pub errors: Vec<(usize, EpdError)>,
}

pub fn parse_suite(text: &str) -> SuiteFile {
    let mut suite = SuiteFile::default();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match parse_epd(line) {
            Ok(r) => suite.records.push(r),
            Err(e) => suite.errors.push((i + 1, e)),
        }
    }
    suite
}

/// Drops every record in which either side has only king and pawns.
/// Returns the kept records and the number dropped.
pub fn filter_suite(records: Vec<EpdRecord>) -> (Vec<EpdRecord>, usize) {
    let before = records.len();
    let kept: Vec<EpdRecord> = records.into_iter().filter(|r| !r.is_pawn_ending()).collect();
    let dropped = before - kept.len();
    (kept, dropped)
}
