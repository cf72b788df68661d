//! Schema-stable CSV emission and parsing. Fixed column order, header row,
//! dot-decimal lowercase-exponent floats, newline-terminated lines.

use crate::bench::runner::{ComparisonResult, DiagnosticsEntry};
use crate::budget::{RunRecord, CHECKPOINT_FRACTIONS};
use crate::error::{Error, Result};

fn fmt(v: f64) -> String {
    format!("{v:e}")
}

pub fn runs_csv_header() -> String {
    let mut columns = vec!["algorithm".to_string(), "function".into(), "run".into(), "seed".into(), "final_error".into()];
    for f in CHECKPOINT_FRACTIONS {
        columns.push(format!("err_at_{f}"));
    }
    columns.join(",")
}

/// One row per run with the final error and the convergence checkpoints.
pub fn runs_csv(records: &[RunRecord], runs_per_cell: usize) -> String {
    let mut out = String::new();
    out.push_str(&runs_csv_header());
    out.push('\n');
    for (idx, record) in records.iter().enumerate() {
        let run = idx % runs_per_cell;
        out.push_str(&format!(
            "{},{},{},{},{}",
            record.algorithm,
            record.function,
            run,
            record.seed,
            fmt(record.final_error)
        ));
        for v in &record.convergence {
            out.push(',');
            out.push_str(&fmt(*v));
        }
        out.push('\n');
    }
    out
}

/// Long-format convergence trace: one row per (run, budget fraction).
pub fn convergence_csv(records: &[RunRecord], runs_per_cell: usize) -> String {
    let mut out = String::from("algorithm,function,run,fe_fraction,best_error\n");
    for (idx, record) in records.iter().enumerate() {
        let run = idx % runs_per_cell;
        for (fraction, value) in CHECKPOINT_FRACTIONS.iter().zip(&record.convergence) {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                record.algorithm, record.function, run, fraction, fmt(*value)
            ));
        }
    }
    out
}

/// Per-function mean(std) per algorithm plus the verdict of the first
/// algorithm against each other one.
pub fn summary_csv(cmp: &ComparisonResult) -> String {
    let mut header = String::from("function");
    for algo in &cmp.algorithms {
        header.push_str(&format!(",{algo}_mean,{algo}_std"));
    }
    for algo in &cmp.algorithms[1..] {
        header.push_str(&format!(",verdict_vs_{algo}"));
    }
    let mut out = header;
    out.push('\n');
    for (f, function) in cmp.functions.iter().enumerate() {
        out.push_str(function);
        for a in 0..cmp.algorithms.len() {
            out.push_str(&format!(",{},{}", fmt(cmp.mean[a][f]), fmt(cmp.std_dev[a][f])));
        }
        for row in &cmp.verdicts {
            out.push(',');
            out.push(row[f].symbol());
        }
        out.push('\n');
    }
    out
}

/// Rank-resolved selected-candidate distances with the random-pick control.
pub fn td_by_rank_csv(entries: &[DiagnosticsEntry]) -> String {
    let mut out = String::from("algorithm,function,rank,decisions,td_selected,td_random\n");
    for entry in entries {
        let rec = &entry.record;
        for rank in 0..rec.max_rank() {
            if rec.decisions[rank] == 0 {
                continue;
            }
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                entry.algorithm,
                entry.function,
                rank + 1,
                rec.decisions[rank],
                fmt(rec.td_selected[rank]),
                fmt(rec.td_random[rank]),
            ));
        }
    }
    out
}

/// Prediction accuracy split into exploitation and exploration picks.
pub fn prediction_accuracy_csv(entries: &[DiagnosticsEntry]) -> String {
    let mut out = String::from(
        "algorithm,function,eip_correct,eip_trials,eip_accuracy,erp_correct,erp_trials,erp_accuracy\n",
    );
    for entry in entries {
        let rec = &entry.record;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            entry.algorithm,
            entry.function,
            rec.exploit.correct,
            rec.exploit.total,
            fmt(rec.exploit.accuracy()),
            rec.explore.correct,
            rec.explore.total,
            fmt(rec.explore.accuracy()),
        ));
    }
    out
}

/// Parsed view of a runs.csv row, enough to recompute comparisons.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedRun {
    pub algorithm: String,
    pub function: String,
    pub run: usize,
    pub seed: u64,
    pub final_error: f64,
}

pub fn parse_runs_csv(content: &str) -> Result<Vec<ParsedRun>> {
    let mut lines = content.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::IncompatibleInputs("empty runs.csv".into()))?;
    if header != runs_csv_header() {
        return Err(Error::IncompatibleInputs(format!(
            "unexpected runs.csv header: {header}"
        )));
    }
    let mut rows = Vec::new();
    for (line_no, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 + CHECKPOINT_FRACTIONS.len() {
            return Err(Error::IncompatibleInputs(format!(
                "runs.csv line {}: expected {} fields, found {}",
                line_no + 2,
                5 + CHECKPOINT_FRACTIONS.len(),
                fields.len()
            )));
        }
        let parse_err = |what: &str| {
            Error::IncompatibleInputs(format!("runs.csv line {}: bad {what}", line_no + 2))
        };
        rows.push(ParsedRun {
            algorithm: fields[0].to_string(),
            function: fields[1].to_string(),
            run: fields[2].parse().map_err(|_| parse_err("run index"))?,
            seed: fields[3].parse().map_err(|_| parse_err("seed"))?,
            final_error: fields[4].parse().map_err(|_| parse_err("final error"))?,
        });
    }
    Ok(rows)
}
