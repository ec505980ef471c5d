//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use common::{mailbox_perft, minimax, random_positions, Mailbox};
use nullmove::board::{perft, Position, START_FEN};
use nullmove::harness::{compare_policies, parse_suite, percent_delta, Comparison, EpdRecord, RunOptions, SuiteReport};
use nullmove::search::{search_root, PruningPolicy, SearchLimits, SearchOptions};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const STD1: PruningPolicy = PruningPolicy::standard(1);
const STD2: PruningPolicy = PruningPolicy::standard(2);
const STD3: PruningPolicy = PruningPolicy::standard(3);
const VRFD3: PruningPolicy = PruningPolicy::verified(3);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn suite_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("suites").join(name)
}

fn suite(name: &str) -> Vec<EpdRecord> {
    let file = parse_suite(&std::fs::read_to_string(suite_path(name)).unwrap());
    assert!(file.errors.is_empty(), "{name}: {:?}", file.errors);
    file.records
}

fn movegen_soundness() -> Outcome {
    let fens = [
        START_FEN,
        "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1",
        "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1",
    ];
    let mut mismatches = Vec::new();
    for fen in fens {
        let oracle = Mailbox::from_fen(fen);
        for depth in 1..=4 {
            let ours = perft(&mut Position::from_fen(fen).unwrap(), depth);
            let theirs = mailbox_perft(&oracle, depth);
            if ours != theirs {
                mismatches.push(format!("{fen} d{depth}: {ours} vs {theirs}"));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut pos = Position::startpos();
    let mut broken = 0;
    let mut plies = 0;
    while plies < 10_000 {
        let moves = pos.generate_moves();
        if moves.is_empty() || pos.halfmove_clock() >= 100 {
            pos = Position::startpos();
            continue;
        }
        let before = pos.clone();
        for &m in &moves {
            let undo = pos.make_move(m);
            if pos.hash() != pos.compute_hash() {
                broken += 1;
            }
            pos.unmake_move(m, &undo);
            if pos != before {
                broken += 1;
            }
        }
        if !pos.in_check() {
            let undo = pos.make_null_move();
            if pos.hash() != pos.compute_hash() {
                broken += 1;
            }
            pos.unmake_null_move(&undo);
            if pos != before {
                broken += 1;
            }
        }
        pos.make_move(*moves.choose(&mut rng).unwrap());
        plies += 1;
    }
    outcome(
        mismatches.is_empty() && broken == 0,
        format!("perft d1-4 on 3 positions: {} mismatches; 10000-ply round trips: {broken} failures {mismatches:?}", mismatches.len()),
    )
}

fn oracle_equivalence() -> Outcome {
    let positions = random_positions(200, 2, 4, 80);
    let mut diffs = Vec::new();
    for pos in &positions {
        let ours = search_root(pos, PruningPolicy::NoNull, &SearchLimits::depth(3), &SearchOptions::without_tt())
            .unwrap()
            .value;
        let mut p = pos.clone();
        let theirs = minimax(&mut p, 3, 0, &mut vec![pos.hash()]);
        if ours != theirs {
            diffs.push(format!("{}: {ours} vs {theirs}", pos.to_fen()));
        }
    }
    outcome(diffs.is_empty(), format!("200 positions at depth 3, {} differ {diffs:?}", diffs.len()))
}

fn compare(records: &[EpdRecord], policies: &[PruningPolicy], depths: &[u32]) -> SuiteReport {
    let plan = Comparison {
        suite: "suite".into(),
        policies: policies.to_vec(),
        baseline: None,
        depths: depths.to_vec(),
        dropped: 0,
    };
    compare_policies(records, &plan, &RunOptions::default()).unwrap()
}

fn tree_size_ordering(report: &SuiteReport) -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for depth in [7, 8] {
        let n = |p| report.total_nodes(p, depth).unwrap();
        let chain = [(STD3, n(STD3)), (VRFD3, n(VRFD3)), (STD2, n(STD2)), (STD1, n(STD1))];
        let mut parts = vec![format!("{} {}", chain[0].0.label(), chain[0].1)];
        for w in chain.windows(2) {
            let (small, large) = (w[0].1, w[1].1);
            let ok = large > small && (large - small) * 20 >= small;
            pass &= ok;
            parts.push(format!(
                "{} {} {} ({})",
                if ok { "<" } else { "!<" },
                w[1].0.label(),
                large,
                percent_delta(large, small).unwrap()
            ));
        }
        detail.push(format!("d{depth}: {}", parts.join(" ")));
    }
    outcome(pass, detail.join("; "))
}

fn deepening_trend(report: &SuiteReport) -> Outcome {
    let ratio = |d| report.total_nodes(VRFD3, d).unwrap() as f64 / report.total_nodes(STD2, d).unwrap() as f64;
    let (r6, r8) = (ratio(6), ratio(8));
    outcome(r8 <= r6, format!("Vrfd3/Std2 at d6 {r6:.4}, at d8 {r8:.4}"))
}

fn tactical_strength() -> Outcome {
    let mates = suite("mates.epd");
    let mut solved = [0usize; 4];
    let policies = [STD1, STD2, STD3, VRFD3];
    for r in &mates {
        let n: u32 = r.opcode("dm").unwrap().parse().unwrap();
        for (i, &p) in policies.iter().enumerate() {
            let res = search_root(&r.position, p, &SearchLimits::depth(2 * n), &SearchOptions::default()).unwrap();
            if r.accepts(&res.best_move) {
                solved[i] += 1;
            }
        }
    }
    let [s1, s2, s3, v3] = solved;
    outcome(
        v3 >= s3 && v3 >= s2 && s1 == mates.len(),
        format!("of {}: Std1 {s1}, Std2 {s2}, Std3 {s3}, Vrfd3 {v3}", mates.len()),
    )
}

fn zugzwang_soundness() -> Outcome {
    let records = suite("zugzwang.epd");
    let mut wrong = Vec::new();
    let mut std_misses = 0;
    for r in &records {
        let depth: u32 = r.opcode("acd").unwrap().parse().unwrap();
        let run = |p| search_root(&r.position, p, &SearchLimits::depth(depth), &SearchOptions::default()).unwrap();
        let full = run(PruningPolicy::NoNull).value;
        let v = run(VRFD3);
        if v.value != full || v.stats.zugzwang_researches == 0 {
            wrong.push(format!("{} vrfd {} nonull {} re-searches {}", r.label(), v.value, full, v.stats.zugzwang_researches));
        }
        if run(STD3).value != full {
            std_misses += 1;
        }
    }
    outcome(
        records.len() >= 10 && wrong.is_empty() && std_misses >= 1,
        format!(
            "{} positions: Vrfd3 wrong on {} {wrong:?}; Std3 mis-evaluates {std_misses}",
            records.len(),
            wrong.len()
        ),
    )
}

fn percent_delta_arithmetic() -> Outcome {
    let cases = [
        (1_652_668_804, 449_744_588, "+267.46%"),
        (105_488_197_524, 51_080_338_048, "+106.51%"),
        (24_644_668_194, 51_080_338_048, "-51.75%"),
    ];
    let got: Vec<String> = cases.iter().map(|&(a, b, _)| percent_delta(a, b).unwrap()).collect();
    let pass = cases.iter().zip(&got).all(|(c, g)| c.2 == g);
    outcome(pass, got.join(", "))
}

fn variant_claim(records: &[EpdRecord]) -> Outcome {
    let report = compare(records, &[PruningPolicy::VariantReduceOneEverywhere { r: 3 }, STD2], &[7]);
    let v = report.total_nodes(PruningPolicy::VariantReduceOneEverywhere { r: 3 }, 7).unwrap();
    let s = report.total_nodes(STD2, 7).unwrap();
    outcome(v > s, format!("d7: var-reduce1 {v} vs Std2 {s} ({})", percent_delta(v, s).unwrap()))
}

fn determinism() -> Outcome {
    let run = |jobs: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_nullmove"))
            .args(["compare", "--suite"])
            .arg(suite_path("tactical.epd"))
            .args(["--depth", "4,5", "--format", "both", "--jobs", jobs])
            .output()
            .unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        o.stdout
    };
    let first = run("1");
    let same = [run("1"), run("4"), run("4")].iter().all(|o| *o == first);
    outcome(same, format!("4 runs of compare (jobs 1,1,4,4), {} bytes each", first.len()))
}

fn main() -> ExitCode {
    let tactical = suite("tactical.epd");
    let mut results: Vec<(u32, &str, Outcome, f64)> = Vec::new();
    let mut timed = |n: u32, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "{} criterion {n}: {name} [{secs:.1}s] {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        results.push((n, name, o, secs));
    };

    timed(1, "movegen soundness", &mut movegen_soundness);
    timed(2, "oracle equivalence", &mut oracle_equivalence);
    let mut table = None;
    timed(3, "tree-size ordering", &mut || {
        let report = compare(&tactical, &[STD1, STD2, STD3, VRFD3], &[6, 7, 8]);
        let o = tree_size_ordering(&report);
        table = Some(report);
        o
    });
    let report = table.unwrap();
    timed(4, "deepening trend", &mut || deepening_trend(&report));
    timed(5, "tactical-strength trend", &mut tactical_strength);
    timed(6, "zugzwang soundness", &mut zugzwang_soundness);
    timed(7, "percent_delta arithmetic", &mut percent_delta_arithmetic);
    timed(8, "variant tree size", &mut || variant_claim(&tactical));
    timed(9, "determinism", &mut determinism);

    let failed: Vec<u32> = results.iter().filter(|r| !r.2.pass).map(|r| r.0).collect();
    println!("{} of {} criteria pass", results.len() - failed.len(), results.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed: {failed:?}");
        ExitCode::FAILURE
    }
}
