use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::SweepResult;
use crate::error::{Error, Result};

pub const REPORT_HEADER: &str = "descriptor,classifier,mode,iteration,acc_mean,acc_std";

/// `fraction * 100` with two decimals, rounding half up (`0.79625 -> "79.63"`).
pub fn format_percent(fraction: f64) -> String {
    // accuracies are ratios of small integers; the slack absorbs binary
    // representation error at exact halves
    let hundredths = (fraction * 10_000.0 + 0.5 + 1e-6).floor() as i64;
    let sign = if hundredths < 0 { "-" } else { "" };
    let abs = hundredths.abs();
    format!("{sign}{}.{:02}", abs / 100, abs % 100)
}

/// CSV text of a sweep: header, baseline row, one row per threshold, and a
/// final `BEST` row (omitted in baseline mode).
pub fn render_report(result: &SweepResult) -> String {
    let (d, c) = (result.descriptor, result.classifier);
    let mut out = String::new();
    writeln!(out, "{REPORT_HEADER}").unwrap();
    writeln!(
        out,
        "{d},{c},baseline,,{},{}",
        format_percent(result.baseline.mean),
        format_percent(result.baseline.std)
    )
    .unwrap();
    for (i, report) in &result.per_iteration {
        writeln!(
            out,
            "{d},{c},{},{i},{},{}",
            result.mode,
            format_percent(report.mean),
            format_percent(report.std)
        )
        .unwrap();
    }
    if let Some((i, report)) = result.best() {
        writeln!(
            out,
            "{d},{c},BEST,{i},{},{}",
            format_percent(report.mean),
            format_percent(report.std)
        )
        .unwrap();
    }
    out
}

pub fn write_report(result: &SweepResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render_report(result)).map_err(|e| Error::io(path, e))
}

/// `iteration,acc_mean` pairs for plotting accuracy against threshold.
pub fn render_curve(result: &SweepResult) -> String {
    let mut out = String::from("iteration,acc_mean\n");
    for (i, report) in &result.per_iteration {
        writeln!(out, "{i},{}", format_percent(report.mean)).unwrap();
    }
    out
}

pub fn write_curve(result: &SweepResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render_curve(result)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{ClassifierKind, CvReport};
    use crate::descriptors::DescriptorId;
    use crate::harness::SweepMode;

    #[test]
    fn percent_rounding() {
        assert_eq!(format_percent(0.79625), "79.63");
        assert_eq!(format_percent(0.725), "72.50");
        assert_eq!(format_percent(1.0), "100.00");
        assert_eq!(format_percent(0.0), "0.00");
        assert_eq!(format_percent(0.0248), "2.48");
        assert_eq!(format_percent(0.333333), "33.33");
        assert_eq!(format_percent(0.00005), "0.01");
    }

    fn result(mode: SweepMode, iterations: usize) -> SweepResult {
        let report = |m: f64| CvReport::from_folds(vec![m, m]);
        let per_iteration: Vec<(u8, CvReport)> =
            (1..=iterations as u8).map(|i| (i, report(i as f64 / 200.0))).collect();
        SweepResult {
            descriptor: DescriptorId::Lbp,
            classifier: ClassifierKind::Knn1,
            mode,
            baseline: report(0.5),
            best_i: per_iteration.last().map(|e| e.0),
            per_iteration,
        }
    }

    #[test]
    fn baseline_only_rows() {
        let csv = render_report(&result(SweepMode::Baseline, 0));
        assert_eq!(
            csv,
            "descriptor,classifier,mode,iteration,acc_mean,acc_std\nlbp,knn,baseline,,50.00,0.00\n"
        );
    }

    #[test]
    fn full_sweep_rows() {
        let csv = render_report(&result(SweepMode::Combined, 150));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 1 + 152);
        assert_eq!(lines[2], "lbp,knn,combined,1,0.50,0.00");
        assert_eq!(lines[152], "lbp,knn,BEST,150,75.00,0.00");
        let curve = render_curve(&result(SweepMode::Combined, 3));
        assert_eq!(curve, "iteration,acc_mean\n1,0.50\n2,1.00\n3,1.50\n");
    }
}
