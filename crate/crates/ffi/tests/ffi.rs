use std::ffi::{CStr, CString};
use std::ptr;

use nullmove_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn position(fen: &str) -> *mut NmPosition {
    let mut pos = ptr::null_mut();
    let status = unsafe { nm_position_from_fen(c(fen).as_ptr(), &mut pos) };
    assert_eq!(status, NmStatus::Ok);
    assert!(!pos.is_null());
    pos
}

fn read(f: impl Fn(*mut std::ffi::c_char, usize, *mut usize) -> NmStatus) -> String {
    let mut needed = 0usize;
    assert_eq!(f(ptr::null_mut(), 0, &mut needed), NmStatus::NullPointer);
    let mut buf = vec![0 as std::ffi::c_char; needed];
    assert_eq!(f(buf.as_mut_ptr(), buf.len(), ptr::null_mut()), NmStatus::Ok);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap().to_string()
}

#[test]
fn fen_round_trip_and_moves() {
    let fen = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";
    let pos = position(fen);
    unsafe {
        assert_eq!(read(|b, l, n| nm_position_to_fen(pos, b, l, n)), fen);
        assert_eq!(nm_position_legal_move_count(pos), 20);
        assert_eq!(nm_position_play(pos, c("e2e4").as_ptr()), NmStatus::Ok);
        assert_eq!(nm_position_play(pos, c("Nf6").as_ptr()), NmStatus::Ok);
        assert_eq!(nm_position_play(pos, c("e4e6").as_ptr()), NmStatus::IllegalMove);
        assert_eq!(
            read(|b, l, n| nm_position_to_fen(pos, b, l, n)),
            "rnbqkb1r/pppppppp/5n2/8/4P3/8/PPPP1PPP/RNBQKBNR w KQkq - 1 2"
        );
        nm_position_free(pos);
    }
}

#[test]
fn error_codes() {
    let mut pos = ptr::null_mut();
    unsafe {
        assert_eq!(nm_position_from_fen(c("8/8/8/8/8/8/8/8 w - - 0 1").as_ptr(), &mut pos), NmStatus::InvalidFen);
        assert!(pos.is_null());
        assert_eq!(nm_position_from_fen(ptr::null(), &mut pos), NmStatus::NullPointer);
        assert_eq!(nm_position_from_fen(c("x").as_ptr(), ptr::null_mut()), NmStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(nm_position_from_fen(bad.as_ptr().cast(), &mut pos), NmStatus::InvalidUtf8);
        assert_eq!(nm_position_legal_move_count(ptr::null()), -1);

        let start = position("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1");
        let mut small = [0 as std::ffi::c_char; 4];
        let mut needed = 0;
        assert_eq!(nm_position_to_fen(start, small.as_mut_ptr(), 4, &mut needed), NmStatus::BufferTooSmall);
        assert_eq!(needed, 57);
        let mut res = ptr::null_mut();
        assert_eq!(nm_search(start, c("fancy").as_ptr(), 3, 0, &mut res), NmStatus::InvalidPolicy);
        assert_eq!(nm_search(start, c("std:2").as_ptr(), 0, 0, &mut res), NmStatus::InvalidArgument);
        assert!(res.is_null());
        nm_position_free(start);

        let mated = position("rnb1kbnr/pppp1ppp/8/4p3/6Pq/5P2/PPPPP2P/RNBQKBNR w KQkq - 1 3");
        assert_eq!(nm_search(mated, c("verified:3").as_ptr(), 3, 0, &mut res), NmStatus::NoLegalMoves);
        nm_position_free(mated);

        let msg = CStr::from_ptr(nm_status_message(NmStatus::InvalidFen));
        assert_eq!(msg.to_str().unwrap(), "invalid FEN");
        nm_position_free(ptr::null_mut());
        nm_search_result_free(ptr::null_mut());
    }
}

#[test]
fn perft_counts() {
    let pos = position("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1");
    let mut n = 0;
    unsafe {
        assert_eq!(nm_perft(pos, 3, &mut n), NmStatus::Ok);
        assert_eq!(n, 8902);
        assert_eq!(nm_perft(pos, 0, &mut n), NmStatus::Ok);
        assert_eq!(n, 1);
        assert_eq!(nm_perft(pos, 2, ptr::null_mut()), NmStatus::NullPointer);
        nm_position_free(pos);
    }
}

#[test]
fn search_finds_mate() {
    let pos = position("6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1");
    let mut res = ptr::null_mut();
    unsafe {
        assert_eq!(nm_search(pos, c("verified:3").as_ptr(), 3, 1 << 20, &mut res), NmStatus::Ok);
        assert_eq!(read(|b, l, n| nm_search_result_best_move(res, b, l, n)), "a1a8");
        assert_eq!(read(|b, l, n| nm_search_result_pv(res, b, l, n)), "a1a8");
        assert_eq!(nm_search_result_value(res), 32_000 - 1);
        assert!(nm_search_result_nodes(res) > nm_search_result_qnodes(res));
        assert_eq!(nm_search_result_zugzwang_researches(res), 0);
        nm_search_result_free(res);
        nm_position_free(pos);
    }
}

#[test]
fn percent_delta_strings() {
    let r = read(|b, l, n| unsafe { nm_percent_delta(1_652_668_804, 449_744_588, b, l, n) });
    assert_eq!(r, "+267.46%");
    let mut buf = [0 as std::ffi::c_char; 16];
    let status = unsafe { nm_percent_delta(1, 0, buf.as_mut_ptr(), buf.len(), ptr::null_mut()) };
    assert_eq!(status, NmStatus::InvalidArgument);
}

#[test]
fn header_is_current() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/nullmove.h")).unwrap();
    for name in [
        "nm_position_from_fen",
        "nm_position_free",
        "nm_position_to_fen",
        "nm_position_play",
        "nm_perft",
        "nm_search",
        "nm_search_result_free",
        "nm_search_result_best_move",
        "nm_percent_delta",
        "NM_STATUS_BUFFER_TOO_SMALL",
    ] {
        assert!(header.contains(name), "{name} missing from nullmove.h");
    }
}
