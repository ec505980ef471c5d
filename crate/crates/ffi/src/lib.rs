//! C ABI over the nullmove engine.
//!
//! Positions and search results are opaque heap handles owned by the
//! caller and released with the matching `*_free` function. Every fallible
//! call returns an [`NmStatus`]; strings are written into caller buffers
//! as NUL-terminated UTF-8.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nullmove::board::{perft, Position};
use nullmove::harness::percent_delta;
use nullmove::search::{PruningPolicy, SearchLimits, SearchOptions, SearchResult, Searcher};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidFen = 3,
    InvalidPolicy = 4,
    InvalidArgument = 5,
    IllegalMove = 6,
    NoLegalMoves = 7,
    BufferTooSmall = 8,
    Internal = 9,
}

/// Opaque chess position.
pub struct NmPosition {
    inner: Position,
}

/// Opaque search outcome.
pub struct NmSearchResult {
    inner: SearchResult,
}

fn guard(f: impl FnOnce() -> NmStatus) -> NmStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(NmStatus::Internal)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, NmStatus> {
    if s.is_null() {
        return Err(NmStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| NmStatus::InvalidUtf8)
}

// Copies `s` plus a NUL into `buf`; `needed` (if non-null) receives the
// required size including the NUL either way.
unsafe fn write_str(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> NmStatus {
    if !needed.is_null() {
        *needed = s.len() + 1;
    }
    if buf.is_null() {
        return NmStatus::NullPointer;
    }
    if len < s.len() + 1 {
        return NmStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    *buf.add(s.len()) = 0;
    NmStatus::Ok
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn nm_status_message(status: NmStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        NmStatus::Ok => b"ok\0",
        NmStatus::NullPointer => b"null pointer argument\0",
        NmStatus::InvalidUtf8 => b"string argument is not valid UTF-8\0",
        NmStatus::InvalidFen => b"invalid FEN\0",
        NmStatus::InvalidPolicy => b"unknown pruning policy\0",
        NmStatus::InvalidArgument => b"invalid argument\0",
        NmStatus::IllegalMove => b"move is not legal in this position\0",
        NmStatus::NoLegalMoves => b"position has no legal moves\0",
        NmStatus::BufferTooSmall => b"output buffer too small\0",
        NmStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}

/// Parses a 4- to 6-field FEN into a new position handle.
///
/// # Safety
/// `fen` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nm_position_from_fen(fen: *const c_char, out: *mut *mut NmPosition) -> NmStatus {
    guard(|| {
        if out.is_null() {
            return NmStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match read_str(fen) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Position::from_fen(text) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(NmPosition { inner: p }));
                NmStatus::Ok
            }
            Err(_) => NmStatus::InvalidFen,
        }
    })
}

/// Releases a position; null is ignored.
///
/// # Safety
/// `pos` must come from `nm_position_from_fen` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nm_position_free(pos: *mut NmPosition) {
    if !pos.is_null() {
        drop(Box::from_raw(pos));
    }
}

/// Writes the position's FEN into `buf`.
///
/// # Safety
/// `pos` must be a live handle; `buf` must hold `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn nm_position_to_fen(
    pos: *const NmPosition,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> NmStatus {
    guard(|| match pos.as_ref() {
        Some(p) => write_str(&p.inner.to_fen(), buf, len, needed),
        None => NmStatus::NullPointer,
    })
}

/// Plays a move given in UCI (`e2e4`, `e7e8q`) or SAN (`Nf3`).
///
/// # Safety
/// `pos` must be a live handle; `mv` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nm_position_play(pos: *mut NmPosition, mv: *const c_char) -> NmStatus {
    guard(|| {
        let Some(p) = pos.as_mut() else {
            return NmStatus::NullPointer;
        };
        let text = match read_str(mv) {
            Ok(t) => t.trim(),
            Err(s) => return s,
        };
        let found = p
            .inner
            .generate_moves()
            .into_iter()
            .find(|m| m.uci() == text)
            .or_else(|| nullmove::board::san::parse_san(&p.inner, text).ok());
        match found {
            Some(m) => {
                p.inner.make_move(m);
                NmStatus::Ok
            }
            None => NmStatus::IllegalMove,
        }
    })
}

/// Number of legal moves, or -1 for a null handle.
///
/// # Safety
/// `pos` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nm_position_legal_move_count(pos: *const NmPosition) -> i32 {
    match pos.as_ref() {
        Some(p) => p.inner.generate_moves().len() as i32,
        None => -1,
    }
}

/// Leaf count of the legal move tree to `depth` plies.
///
/// # Safety
/// `pos` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nm_perft(pos: *const NmPosition, depth: u32, out: *mut u64) -> NmStatus {
    guard(|| {
        let (Some(p), false) = (pos.as_ref(), out.is_null()) else {
            return NmStatus::NullPointer;
        };
        if depth > 12 {
            return NmStatus::InvalidArgument;
        }
        let mut copy = p.inner.clone();
        *out = perft(&mut copy, depth);
        NmStatus::Ok
    })
}

/// Searches to `depth` plies under `policy` (`nonull`, `std:2`,
/// `verified:3`, ...). `tt_bytes` of 0 disables the transposition table.
///
/// # Safety
/// `pos` must be a live handle, `policy` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nm_search(
    pos: *const NmPosition,
    policy: *const c_char,
    depth: u32,
    tt_bytes: usize,
    out: *mut *mut NmSearchResult,
) -> NmStatus {
    guard(|| {
        if out.is_null() {
            return NmStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let Some(p) = pos.as_ref() else {
            return NmStatus::NullPointer;
        };
        let policy: PruningPolicy = match read_str(policy) {
            Ok(s) => match s.parse() {
                Ok(p) => p,
                Err(_) => return NmStatus::InvalidPolicy,
            },
            Err(s) => return s,
        };
        let options = SearchOptions {
            tt_bytes,
            ..SearchOptions::default()
        };
        let limits = SearchLimits::depth(depth);
        if limits.validate().is_err() {
            return NmStatus::InvalidArgument;
        }
        match Searcher::new(policy, options).search_root(&p.inner, &limits) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(NmSearchResult { inner: r }));
                NmStatus::Ok
            }
            Err(nullmove::search::SearchError::InvalidLimits(_)) => NmStatus::InvalidArgument,
            Err(_) => NmStatus::NoLegalMoves,
        }
    })
}

/// Releases a search result; null is ignored.
///
/// # Safety
/// `result` must come from `nm_search` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nm_search_result_free(result: *mut NmSearchResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Score in centipawns from the side to move's view; mate scores are
/// `±(32000 - plies)`. Returns 0 for a null handle.
///
/// # Safety
/// `result` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nm_search_result_value(result: *const NmSearchResult) -> i32 {
    result.as_ref().map_or(0, |r| r.inner.value)
}

/// Total nodes (full-width plus quiescence).
///
/// # Safety
/// `result` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nm_search_result_nodes(result: *const NmSearchResult) -> u64 {
    result.as_ref().map_or(0, |r| r.inner.stats.total_nodes())
}

/// Quiescence nodes only.
///
/// # Safety
/// `result` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nm_search_result_qnodes(result: *const NmSearchResult) -> u64 {
    result.as_ref().map_or(0, |r| r.inner.stats.qnodes)
}

/// Number of zugzwang re-searches performed by verification.
///
/// # Safety
/// `result` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nm_search_result_zugzwang_researches(result: *const NmSearchResult) -> u64 {
    result.as_ref().map_or(0, |r| r.inner.stats.zugzwang_researches)
}

/// Writes the best move in UCI notation.
///
/// # Safety
/// `result` must be a live handle; `buf` must hold `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn nm_search_result_best_move(
    result: *const NmSearchResult,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> NmStatus {
    guard(|| match result.as_ref() {
        Some(r) => write_str(&r.inner.best_move.uci(), buf, len, needed),
        None => NmStatus::NullPointer,
    })
}

/// Writes the principal variation as space-separated UCI moves.
///
/// # Safety
/// As for `nm_search_result_best_move`.
#[no_mangle]
pub unsafe extern "C" fn nm_search_result_pv(
    result: *const NmSearchResult,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> NmStatus {
    guard(|| match result.as_ref() {
        Some(r) => {
            let pv: Vec<String> = r.inner.pv.iter().map(|m| m.uci()).collect();
            write_str(&pv.join(" "), buf, len, needed)
        }
        None => NmStatus::NullPointer,
    })
}

/// Formats `100 * (other - baseline) / baseline` as e.g. `+267.46%`.
///
/// # Safety
/// `buf` must hold `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn nm_percent_delta(
    other: u64,
    baseline: u64,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> NmStatus {
    guard(|| match percent_delta(other, baseline) {
        Ok(s) => write_str(&s, buf, len, needed),
        Err(_) => NmStatus::InvalidArgument,
    })
}
