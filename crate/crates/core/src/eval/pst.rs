use std::path::Path;
use std::sync::OnceLock;

use thiserror::Error;

use crate::board::PieceKind;

pub const DEFAULT_PST: &str = include_str!("../../data/pst.txt");

#[derive(Debug, Error)]
pub enum PstError {
    #[error("line {line}: unknown section '{name}'")]
    UnknownSection { line: usize, name: String },
    #[error("line {line}: values before any [piece] header")]
    NoSection { line: usize },
    #[error("line {line}: '{token}' is not an integer")]
    BadValue { line: usize, token: String },
    #[error("section [{0}] must hold exactly 64 values, found {1}")]
    WrongCount(&'static str, usize),
    #[error("section [{0}] is missing")]
    Missing(&'static str),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

const NAMES: [&str; 6] = ["pawn", "knight", "bishop", "rook", "queen", "king"];

/// Six 64-entry tables indexed as written in the data file: entry 0 is a8,
/// entry 63 is h1, from White's point of view.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceSquareTables {
    tables: [[i32; 64]; 6],
}

impl PieceSquareTables {
    pub fn parse(text: &str) -> Result<PieceSquareTables, PstError> {
        let mut values: [Vec<i32>; 6] = Default::default();
        let mut current: Option<usize> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let name = name.trim().to_ascii_lowercase();
                current = Some(NAMES.iter().position(|n| *n == name).ok_or(PstError::UnknownSection {
                    line: line_no,
                    name,
                })?);
                continue;
            }
            let idx = current.ok_or(PstError::NoSection { line: line_no })?;
            for token in line.split_whitespace() {
                let v = token.parse().map_err(|_| PstError::BadValue {
                    line: line_no,
                    token: token.to_string(),
                })?;
                values[idx].push(v);
            }
        }
        let mut tables = [[0; 64]; 6];
        for (k, vals) in values.iter().enumerate() {
            if vals.is_empty() {
                return Err(PstError::Missing(NAMES[k]));
            }
            if vals.len() != 64 {
                return Err(PstError::WrongCount(NAMES[k], vals.len()));
            }
            tables[k].copy_from_slice(vals);
        }
        Ok(PieceSquareTables { tables })
    }

    pub fn load(path: &Path) -> Result<PieceSquareTables, PstError> {
        let text = std::fs::read_to_string(path).map_err(|source| PstError::Io {
            path: path.display().to_string(),
            source,
        })?;
        PieceSquareTables::parse(&text)
    }

    /// The checked-in tables, parsed once.
    pub fn builtin() -> &'static PieceSquareTables {
        static TABLES: OnceLock<PieceSquareTables> = OnceLock::new();
        TABLES.get_or_init(|| PieceSquareTables::parse(DEFAULT_PST).expect("builtin tables are valid"))
    }

    #[inline]
    pub fn value(&self, kind: PieceKind, index: usize) -> i32 {
        self.tables[kind.index()][index]
    }

    /// Largest absolute table entry, used to bound static scores.
    pub fn max_abs(&self) -> i32 {
        self.tables.iter().flatten().map(|v| v.abs()).max().unwrap_or(0)
    }
}

impl Default for PieceSquareTables {
    fn default() -> Self {
        PieceSquareTables::builtin().clone()
    }
}
