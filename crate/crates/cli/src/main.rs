//! `scss` command line: run experiments from a config file, compare result
//! files, emit similarity-selection diagnostics, list the built-in
//! functions and algorithms.

mod config;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use scss_core::bench::csv::{
    convergence_csv, parse_runs_csv, prediction_accuracy_csv, runs_csv, summary_csv, td_by_rank_csv,
    ParsedRun,
};
use scss_core::bench::{
    run_experiment, BaseFunction, ComparisonResult, ExperimentResult, ExperimentSpec,
    SIGNIFICANCE_LEVEL,
};

#[derive(Parser)]
#[command(
    name = "scss",
    about = "Selective-candidate optimization benchmark harness",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file and write CSV results.
    Run {
        config: PathBuf,
        /// Output directory for runs.csv, summary.csv, convergence.csv
        /// (and diagnostics.csv when enabled).
        #[arg(long, default_value = "results")]
        out: PathBuf,
        /// Worker threads (default: SCSS_PARALLEL or all cores).
        #[arg(long)]
        parallel: Option<usize>,
        /// Override the config's master seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Recompute the comparison table from one or more runs.csv files.
    Compare {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Run with selection-rule diagnostics and write td_by_rank.csv and
    /// prediction_accuracy.csv.
    Diagnose {
        config: PathBuf,
        #[arg(long, default_value = "results")]
        out: PathBuf,
        #[arg(long)]
        parallel: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List the built-in benchmark functions.
    ListFunctions,
    /// List the built-in baselines and their wrapper defaults.
    ListAlgorithms,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run { config, out, parallel, seed } => cmd_run(&config, &out, parallel, seed),
        Command::Compare { files } => cmd_compare(&files),
        Command::Diagnose { config, out, parallel, seed } => {
            cmd_diagnose(&config, &out, parallel, seed)
        }
        Command::ListFunctions => {
            list_functions();
            ExitCode::SUCCESS
        }
        Command::ListAlgorithms => {
            list_algorithms();
            ExitCode::SUCCESS
        }
    }
}

fn default_parallelism() -> usize {
    if let Ok(value) = std::env::var("SCSS_PARALLEL") {
        if let Ok(n) = value.parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
        eprintln!("warning: ignoring invalid SCSS_PARALLEL={value}");
    }
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Parse and validate a config file; exit code 2 on any failure, before any
/// output file is touched.
fn load_spec(path: &Path, seed_override: Option<u64>) -> Result<ExperimentSpec<f64>, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(2)
    })?;
    let mut spec = config::parse_config(&text).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })?;
    if let Some(seed) = seed_override {
        spec.master_seed = seed;
    }
    spec.validate().map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })?;
    Ok(spec)
}

fn execute(spec: &ExperimentSpec<f64>, parallel: Option<usize>) -> Result<ExperimentResult, ExitCode> {
    let workers = parallel.unwrap_or_else(default_parallelism).max(1);
    run_experiment(spec, workers).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::FAILURE
    })
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<(), ExitCode> {
    let path = dir.join(name);
    std::fs::write(&path, content).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        ExitCode::FAILURE
    })
}

fn render_comparison(cmp: &ComparisonResult) -> String {
    let mut out = String::new();
    let name_width = cmp
        .functions
        .iter()
        .map(|f| f.len())
        .max()
        .unwrap_or(8)
        .max("function".len());
    out.push_str(&format!("{:name_width$}", "function"));
    for algo in &cmp.algorithms {
        out.push_str(&format!("  {algo:>24}"));
    }
    out.push('\n');
    for (f, function) in cmp.functions.iter().enumerate() {
        out.push_str(&format!("{function:name_width$}"));
        for a in 0..cmp.algorithms.len() {
            let mark = if a == 0 {
                ' '
            } else {
                cmp.verdicts[a - 1][f].symbol()
            };
            let cell = format!("{:.3e} ({:.2e}){mark}", cmp.mean[a][f], cmp.std_dev[a][f]);
            out.push_str(&format!("  {cell:>24}"));
        }
        out.push('\n');
    }
    for line in cmp.summary_lines() {
        out.push_str(&line);
        out.push('\n');
    }
    if let Some(ranks) = &cmp.friedman {
        out.push_str("friedman mean ranks (ascending):\n");
        let mut order: Vec<usize> = (0..ranks.len()).collect();
        order.sort_by(|&a, &b| ranks[a].partial_cmp(&ranks[b]).expect("finite ranks"));
        for idx in order {
            out.push_str(&format!("  {:<24} {:.2}\n", cmp.algorithms[idx], ranks[idx]));
        }
    }
    out
}

fn cmd_run(config: &Path, out: &Path, parallel: Option<usize>, seed: Option<u64>) -> ExitCode {
    let spec = match load_spec(config, seed) {
        Ok(spec) => spec,
        Err(code) => return code,
    };
    let result = match execute(&spec, parallel) {
        Ok(result) => result,
        Err(code) => return code,
    };
    if let Err(e) = std::fs::create_dir_all(out) {
        eprintln!("error: cannot create {}: {e}", out.display());
        return ExitCode::FAILURE;
    }
    let steps = [
        ("runs.csv", runs_csv(&result.records, spec.runs)),
        ("summary.csv", summary_csv(&result.comparison)),
        ("convergence.csv", convergence_csv(&result.records, spec.runs)),
    ];
    for (name, content) in steps {
        if let Err(code) = write_file(out, name, &content) {
            return code;
        }
    }
    if spec.diagnostics {
        if let Err(code) = write_file(out, "diagnostics.csv", &td_by_rank_csv(&result.diagnostics))
        {
            return code;
        }
    }
    print!("{}", render_comparison(&result.comparison));
    ExitCode::SUCCESS
}

fn cmd_diagnose(config: &Path, out: &Path, parallel: Option<usize>, seed: Option<u64>) -> ExitCode {
    let spec = match load_spec(config, seed) {
        Ok(spec) => spec,
        Err(code) => return code,
    };
    if !spec.diagnostics {
        eprintln!("error: diagnose requires `diagnostics = on` in [experiment]");
        return ExitCode::from(2);
    }
    if spec.algorithms.iter().all(|a| a.scss.is_none()) {
        eprintln!("error: diagnose requires at least one algorithm with `scss = on`");
        return ExitCode::from(2);
    }
    let result = match execute(&spec, parallel) {
        Ok(result) => result,
        Err(code) => return code,
    };
    if let Err(e) = std::fs::create_dir_all(out) {
        eprintln!("error: cannot create {}: {e}", out.display());
        return ExitCode::FAILURE;
    }
    if let Err(code) = write_file(out, "td_by_rank.csv", &td_by_rank_csv(&result.diagnostics)) {
        return code;
    }
    if let Err(code) = write_file(
        out,
        "prediction_accuracy.csv",
        &prediction_accuracy_csv(&result.diagnostics),
    ) {
        return code;
    }
    print!("{}", render_comparison(&result.comparison));
    ExitCode::SUCCESS
}

/// A comparison column rebuilt from stored runs: one per (file, algorithm).
struct Column {
    name: String,
    /// function -> (run, error), ordered by run index for pairing
    errors: BTreeMap<String, Vec<(usize, f64)>>,
    /// function order as first encountered
    function_order: Vec<String>,
}

fn columns_from_rows(rows: &[ParsedRun]) -> Vec<Column> {
    let mut columns: Vec<Column> = Vec::new();
    for row in rows {
        let column = match columns.iter_mut().find(|c| c.name == row.algorithm) {
            Some(column) => column,
            None => {
                columns.push(Column {
                    name: row.algorithm.clone(),
                    errors: BTreeMap::new(),
                    function_order: Vec::new(),
                });
                columns.last_mut().expect("just pushed")
            }
        };
        if !column.errors.contains_key(&row.function) {
            column.function_order.push(row.function.clone());
        }
        column
            .errors
            .entry(row.function.clone())
            .or_default()
            .push((row.run, row.final_error));
    }
    for column in &mut columns {
        for runs in column.errors.values_mut() {
            runs.sort_by_key(|(run, _)| *run);
        }
    }
    columns
}

fn cmd_compare(files: &[PathBuf]) -> ExitCode {
    let mut columns: Vec<Column> = Vec::new();
    for path in files {
        let text = match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        };
        let rows = match parse_runs_csv(&text) {
            Ok(rows) => rows,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        };
        for mut column in columns_from_rows(&rows) {
            if columns.iter().any(|c| c.name == column.name) {
                column.name = format!("{}#{}", column.name, columns.len() + 1);
            }
            columns.push(column);
        }
    }
    if columns.len() < 2 {
        eprintln!("error: compare needs at least two algorithm columns");
        return ExitCode::from(2);
    }

    // compatibility: identical function lists and run counts everywhere
    let functions = columns[0].function_order.clone();
    let runs = columns[0].errors.values().next().map(|v| v.len()).unwrap_or(0);
    for column in &columns {
        if column.function_order != functions {
            eprintln!("error: incompatible inputs: function sets differ ({})", column.name);
            return ExitCode::from(2);
        }
        if column.errors.values().any(|v| v.len() != runs) {
            eprintln!("error: incompatible inputs: run counts differ ({})", column.name);
            return ExitCode::from(2);
        }
    }

    let errors: Vec<Vec<Vec<f64>>> = columns
        .iter()
        .map(|c| {
            functions
                .iter()
                .map(|f| c.errors[f].iter().map(|(_, e)| *e).collect())
                .collect()
        })
        .collect();
    let cmp = ComparisonResult::from_errors(
        columns.into_iter().map(|c| c.name).collect(),
        functions,
        &errors,
        SIGNIFICANCE_LEVEL,
    );
    match cmp {
        Ok(cmp) => {
            print!("{}", render_comparison(&cmp));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn list_functions() {
    println!("base functions (flags: shifted, rotated):");
    for base in BaseFunction::ALL {
        let (lo, hi) = base.bounds();
        println!("  {:<18} bounds [{lo}, {hi}]", base.name());
    }
}

fn list_algorithms() {
    println!("baselines and published defaults:");
    println!("  de      rand/1/bin           np=100 f=0.7 cr=0.5");
    println!("  es      (mu+lambda) self-adaptive   mu=25 lambda=100 chi=0.5 tau=1 tau_prime=1");
    println!("  pso     inertia-weight       np=20 w=0.9 c1=2 c2=2 vmax_scale=0.5");
    println!("  jade    current-to-pbest/1   np=100 p=0.05 c=0.1");
    println!("  shade   success-history      np=100 h=np");
    println!("  lshade  shade + linear population reduction   np_init=18*dim np_min=4 h=6 p=0.11 arc_rate=2.6");
    println!();
    println!("wrapper keys (scss = on): m (default 2), scheme = scheme1|scheme2|oppo|meval,");
    println!("gd (scheme1 only; default 1.0). scheme defaults: scheme1/gd=1 for de/es/pso,");
    println!("scheme2 for jade/shade/lshade.");
}
