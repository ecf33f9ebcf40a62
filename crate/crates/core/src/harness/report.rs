//! Text, CSV and JSON renderings of harness results.

use std::fmt::Write;

use serde::Serialize;

use super::{BenchReport, ResidualMaxima, UlpErrorTable};
use crate::format::FormatKind;

pub const CSV_HEADER: &str = "algo,format,component,ulp0_pct,ulp1_pct,ulp2_pct,ulp3plus_pct,n,seed";

/// Error-rate tables laid out with one column per algorithm and component
/// and one row block per format.
pub fn rates_text(tables: &[UlpErrorTable]) -> String {
    let mut formats: Vec<FormatKind> = Vec::new();
    let mut algos = Vec::new();
    for t in tables {
        if !formats.contains(&t.format) {
            formats.push(t.format);
        }
        if !algos.contains(&t.algo) {
            algos.push(t.algo);
        }
    }
    let mut out = String::new();
    let _ = write!(out, "{:<10} {:<10}", "", "");
    for a in &algos {
        let _ = write!(out, " {:^21}", a.table_name());
    }
    out.push('\n');
    let _ = write!(out, "{:<10} {:<10}", "Precision", "Error");
    for _ in &algos {
        let _ = write!(out, " {:>10} {:>10}", "Cosine", "Sine");
    }
    out.push('\n');
    let labels = ["Zero ulp", "One ulp", "Two ulp", ">=3 ulp"];
    for fmt in formats {
        for (bucket, label) in labels.iter().enumerate() {
            let name = if bucket == 0 { fmt.table_name() } else { "" };
            let _ = write!(out, "{name:<10} {label:<10}");
            for a in &algos {
                match tables.iter().find(|t| t.format == fmt && t.algo == *a) {
                    Some(t) => {
                        let _ = write!(out, " {:>10} {:>10}", pct(t.cosine.pct(bucket)), pct(t.sine.pct(bucket)));
                    }
                    None => {
                        let _ = write!(out, " {:>10} {:>10}", "-", "-");
                    }
                }
            }
            out.push('\n');
        }
    }
    if let Some(t) = tables.first() {
        let _ = writeln!(out, "n = {}, seed = {}, redraws = {}", t.n, t.seed, t.redraws);
    }
    out
}

fn pct(v: f64) -> String {
    if v == 0.0 || v >= 0.1 {
        format!("{v:.1}")
    } else {
        format!("{v:.4}")
    }
}

pub fn rates_csv(tables: &[UlpErrorTable]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for t in tables {
        for r in t.rows() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.algo, r.format, r.component, r.ulp0_pct, r.ulp1_pct, r.ulp2_pct, r.ulp3plus_pct, r.n, r.seed
            );
        }
    }
    out
}

pub fn bench_text(report: &BenchReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<16} {:>12}", "", report.format.table_name());
    for e in &report.entries {
        let _ = writeln!(out, "{:<16} {:>10.2}ns", e.algo.table_name(), e.median_ns);
    }
    let _ = writeln!(out, "{:<16} {:>12.3}", "ratio", report.ratio);
    let _ = writeln!(out, "samples = {} x {}, hardware fma = {}", report.iters, report.batch, report.hardware_fma);
    out
}

pub fn bench_csv(report: &BenchReport) -> String {
    let mut out = String::from("algo,format,median_ns,ratio,iters,hardware_fma\n");
    for e in &report.entries {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            e.algo,
            report.format.short_name(),
            e.median_ns,
            report.ratio,
            report.iters,
            report.hardware_fma
        );
    }
    out
}

pub fn residual_text(maxima: &[ResidualMaxima]) -> String {
    let mut out = format!("{:<16} {:>14} {:>14} {:>14}\n", "", "|c^2+s^2-1|/u", "|cg-sf|/(ru)", "|cf+sg-r|/(ru)");
    for m in maxima {
        let [a, b, c] = m.in_units_of_u();
        let _ = writeln!(out, "{:<16} {a:>14.4} {b:>14.4} {c:>14.4}", m.algo.table_name());
    }
    out
}

/// Pretty-printed JSON of any harness result.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("harness results serialize")
}
