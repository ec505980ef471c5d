//! Plain-text and CSV renderings of a [`SuiteReport`].

use std::fmt::Write;

use super::suite::{PositionResult, SuiteReport};

pub const CSV_HEADER: &str = "id,policy,depth,nodes,qnodes,value,best_move,solved,zugzwang_researches";

/// `1234567` as `1,234,567`.
pub fn thousands(n: u64) -> String {
    let digits = n.to_string();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(c);
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_csv(report: &SuiteReport) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for cell in &report.cells {
        for row in &cell.rows {
            let solved = match row.solved {
                Some(true) => "true",
                Some(false) => "false",
                None => "",
            };
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                csv_field(&row.id),
                cell.policy,
                cell.depth,
                row.nodes,
                row.qnodes,
                row.value,
                csv_field(&row.best_move),
                solved,
                row.zugzwang_researches
            )
            .unwrap();
        }
    }
    out
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn render(&self, out: &mut String) {
        let cols = self.header.len();
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String], out: &mut String| {
            let parts: Vec<String> = (0..cols)
                .map(|i| {
                    let c = cells.get(i).map_or("", String::as_str);
                    if i == 0 {
                        format!("{c:<w$}", w = widths[i])
                    } else {
                        format!("{c:>w$}", w = widths[i])
                    }
                })
                .collect();
            out.push_str(parts.join(" | ").trim_end());
            out.push('\n');
        };
        line(&self.header, out);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&rule.join("-+-"));
        out.push('\n');
        for row in &self.rows {
            line(row, out);
        }
    }
}

fn position_cell(row: &PositionResult) -> String {
    let mark = match (row.complete, row.solved) {
        (false, _) => " ~",
        (true, Some(true)) => " *",
        _ => "",
    };
    format!("{} {}{mark}", thousands(row.nodes), row.best_move)
}

/// Tables-style report: node totals with percent deltas against the
/// baseline, solved counts, then per-position detail for each depth.
pub fn render_text(report: &SuiteReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "Suite: {} ({} positions, {} dropped by the king-and-pawns filter)",
        report.suite, report.positions, report.dropped
    )
    .unwrap();
    writeln!(out, "Baseline: {}", report.baseline.label()).unwrap();
    out.push('\n');

    let mut header = vec!["Depth".to_string()];
    header.extend(report.policies.iter().map(|p| p.label()));

    out.push_str("Total node count\n");
    let mut nodes = Table {
        header: header.clone(),
        rows: Vec::new(),
    };
    for &depth in &report.depths {
        let mut totals = vec![depth.to_string()];
        let mut deltas = vec![String::new()];
        for &p in &report.policies {
            totals.push(report.total_nodes(p, depth).map_or_else(String::new, thousands));
            deltas.push(if p == report.baseline {
                "-".to_string()
            } else {
                report.delta(p, depth).map_or_else(|| "n/a".to_string(), |d| format!("({d})"))
            });
        }
        nodes.rows.push(totals);
        nodes.rows.push(deltas);
    }
    nodes.render(&mut out);

    if !report.count_only {
        writeln!(out, "\nSolved positions (of {})", report.positions).unwrap();
        let mut solved = Table {
            header: header.clone(),
            rows: Vec::new(),
        };
        for &depth in &report.depths {
            let mut row = vec![depth.to_string()];
            for &p in &report.policies {
                row.push(report.cell(p, depth).map_or_else(String::new, |c| c.solved.to_string()));
            }
            solved.rows.push(row);
        }
        solved.render(&mut out);
    }

    out.push_str("\nZugzwang re-searches\n");
    let mut zz = Table {
        header: header.clone(),
        rows: Vec::new(),
    };
    for &depth in &report.depths {
        let mut row = vec![depth.to_string()];
        for &p in &report.policies {
            let n: u64 = report
                .cell(p, depth)
                .map_or(0, |c| c.rows.iter().map(|r| r.zugzwang_researches).sum());
            row.push(n.to_string());
        }
        zz.rows.push(row);
    }
    zz.render(&mut out);

    for &depth in &report.depths {
        writeln!(out, "\nPer position, depth {depth} (nodes, move; * solved, ~ budget exhausted)").unwrap();
        let mut header = vec!["Id".to_string()];
        header.extend(report.policies.iter().map(|p| p.label()));
        let mut table = Table {
            header,
            rows: Vec::new(),
        };
        for i in 0..report.positions {
            let mut row = Vec::new();
            for &p in &report.policies {
                let Some(cell) = report.cell(p, depth) else { continue };
                let r = &cell.rows[i];
                if row.is_empty() {
                    row.push(r.id.clone());
                }
                row.push(position_cell(r));
            }
            table.rows.push(row);
        }
        table.render(&mut out);
    }
    out
}
