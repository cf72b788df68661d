//! Experiment protocol: paired runs over an algorithm/function grid with
//! deterministic per-cell seeds, aggregated into mean/std tables, Wilcoxon
//! verdicts against the first algorithm and Friedman mean ranks.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::baselines::de::{DeParams, DeState};
use crate::baselines::es::{EsParams, EsState};
use crate::baselines::jade::{JadeParams, JadeState};
use crate::baselines::lshade::{LshadeParams, LshadeState};
use crate::baselines::pso::{PsoParams, PsoState};
use crate::baselines::shade::{ShadeParams, ShadeState};
use crate::baselines::Optimizer;
use crate::bench::functions::{BaseFunction, BenchFunction};
use crate::bench::stats::{friedman_ranks, wilcoxon_signed_rank, Verdict};
use crate::budget::{BudgetCounter, RunRecord};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, RngStream};
use crate::scss::{run_baseline, run_scss, DiagnosticsRecord, ScssConfig};
use crate::{Problem, Scalar};

pub const DEFAULT_RUNS: usize = 51;
pub const DEFAULT_BUDGET_MULTIPLIER: u64 = 10_000;
pub const DEFAULT_ERROR_FLOOR: f64 = 1e-8;
pub const SIGNIFICANCE_LEVEL: f64 = 0.05;

/// Which baseline an algorithm configuration drives.
#[derive(Debug, Clone, PartialEq)]
pub enum BaselineSpec<T: Scalar> {
    De(DeParams<T>),
    Es(EsParams<T>),
    Pso(PsoParams<T>),
    Jade(JadeParams),
    Shade(ShadeParams),
    Lshade(LshadeParams),
}

impl<T: Scalar> BaselineSpec<T> {
    pub fn kind_name(&self) -> &'static str {
        match self {
            BaselineSpec::De(_) => "de",
            BaselineSpec::Es(_) => "es",
            BaselineSpec::Pso(_) => "pso",
            BaselineSpec::Jade(_) => "jade",
            BaselineSpec::Shade(_) => "shade",
            BaselineSpec::Lshade(_) => "lshade",
        }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        let bad = |msg: &str| Err(Error::ConfigInvalid(format!("{}: {msg}", self.kind_name())));
        match self {
            BaselineSpec::De(p) => {
                if p.np < 4 {
                    return bad("rand/1 needs np >= 4");
                }
                if !(p.f > T::zero() && p.f <= T::one()) {
                    return bad("f must lie in (0, 1]");
                }
                if !(p.cr >= T::zero() && p.cr <= T::one()) {
                    return bad("cr must lie in [0, 1]");
                }
            }
            BaselineSpec::Es(p) => {
                if p.mu < 2 {
                    return bad("recombination needs mu >= 2");
                }
                if p.lambda <= p.mu {
                    return bad("lambda must exceed mu");
                }
                if !(p.chi > T::zero() && p.chi < T::one()) {
                    return bad("chi must lie in (0, 1)");
                }
            }
            BaselineSpec::Pso(p) => {
                if p.np < 1 {
                    return bad("swarm needs np >= 1");
                }
                if p.vmax_scale <= T::zero() {
                    return bad("vmax_scale must be positive");
                }
            }
            BaselineSpec::Jade(p) => {
                if p.np < 4 {
                    return bad("current-to-pbest/1 needs np >= 4");
                }
                if (p.p * p.np as f64).round() < 1.0 {
                    return bad("p * np must round to at least 1");
                }
                if !(0.0..=1.0).contains(&p.c) {
                    return bad("c must lie in [0, 1]");
                }
            }
            BaselineSpec::Shade(p) => {
                if p.np < 4 {
                    return bad("current-to-pbest/1 needs np >= 4");
                }
                if p.h == Some(0) {
                    return bad("memory size h must be at least 1");
                }
            }
            BaselineSpec::Lshade(p) => {
                let np_init = p.np_init.unwrap_or(18 * dim);
                if p.np_min < 4 {
                    return bad("np_min must be at least 4");
                }
                if np_init < p.np_min {
                    return bad("np_init must be at least np_min");
                }
                if p.h < 1 {
                    return bad("memory size h must be at least 1");
                }
                if !(0.0..=1.0).contains(&p.p) {
                    return bad("p must lie in [0, 1]");
                }
                if p.archive_rate <= 0.0 {
                    return bad("arc_rate must be positive");
                }
            }
        }
        Ok(())
    }
}

/// One named column of an experiment: a baseline, optionally wrapped.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmConfig<T: Scalar> {
    pub name: String,
    pub baseline: BaselineSpec<T>,
    pub scss: Option<ScssConfig>,
}

/// A function slot of an experiment grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionSpec {
    pub base: BaseFunction,
    pub shifted: bool,
    pub rotated: bool,
}

impl FunctionSpec {
    pub fn label(&self) -> String {
        let tag = match (self.shifted, self.rotated) {
            (false, false) => "",
            (true, false) => "-s",
            (false, true) => "-r",
            (true, true) => "-sr",
        };
        format!("{}{}", self.base.name(), tag)
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec<T: Scalar> {
    pub algorithms: Vec<AlgorithmConfig<T>>,
    pub functions: Vec<FunctionSpec>,
    pub dim: usize,
    pub runs: usize,
    pub budget_multiplier: u64,
    pub error_floor: f64,
    pub master_seed: u64,
    pub diagnostics: bool,
}

impl<T: Scalar> ExperimentSpec<T> {
    pub fn budget_limit(&self) -> u64 {
        self.budget_multiplier * self.dim as u64
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::ConfigInvalid("no algorithms configured".into()));
        }
        if self.functions.is_empty() {
            return Err(Error::ConfigInvalid("no functions configured".into()));
        }
        if self.runs < 2 {
            return Err(Error::ConfigInvalid("statistics need at least 2 runs".into()));
        }
        if self.dim < 2 {
            return Err(Error::ConfigInvalid("dimension must be at least 2".into()));
        }
        if self.budget_multiplier == 0 {
            return Err(Error::ConfigInvalid("budget multiplier must be positive".into()));
        }
        if self.error_floor.is_nan() || self.error_floor < 0.0 {
            return Err(Error::ConfigInvalid("error floor must be non-negative".into()));
        }
        for config in &self.algorithms {
            config.baseline.validate(self.dim)?;
        }
        Ok(())
    }

    /// Materialize the benchmark instances; shift/rotation data derives
    /// from the master seed and the function index only, so every
    /// algorithm and run sees the same instance.
    pub fn materialize_functions(&self) -> Vec<BenchFunction<T>> {
        self.functions
            .iter()
            .enumerate()
            .map(|(idx, spec)| {
                let seed = derive_seed(self.master_seed, idx as u64, u64::MAX - 1);
                let mut rng = RngStream::from_seed(seed);
                BenchFunction::make(spec.base, self.dim, spec.shifted, spec.rotated, &mut rng)
            })
            .collect()
    }

    /// Per-cell run seed: the algorithm index is deliberately excluded so
    /// run r of every algorithm starts from the same initial draw sequence
    /// (paired-test validity).
    pub fn run_seed(&self, function_idx: usize, run_idx: usize) -> u64 {
        derive_seed(self.master_seed, function_idx as u64, run_idx as u64)
    }
}

/// Execute one run of a configuration on a problem.
pub fn run_one<T: Scalar>(
    config: &AlgorithmConfig<T>,
    problem: &Problem<T>,
    seed: u64,
    budget_limit: u64,
    error_floor: f64,
    diagnostics: bool,
) -> Result<(RunRecord, Option<DiagnosticsRecord>)> {
    let mut budget = BudgetCounter::new(budget_limit);
    let mut rng = RngStream::from_seed(seed);
    let mut diag = (diagnostics && config.scss.is_some()).then(DiagnosticsRecord::new);

    match (&config.baseline, &config.scss) {
        (BaselineSpec::De(p), scss) => {
            let mut state = DeState::new(p.clone());
            drive(&mut state, scss, problem, &mut budget, &mut rng, diag.as_mut())?;
        }
        (BaselineSpec::Es(p), scss) => {
            let mut state = EsState::new(p.clone());
            drive(&mut state, scss, problem, &mut budget, &mut rng, diag.as_mut())?;
        }
        (BaselineSpec::Pso(p), scss) => {
            let mut state = PsoState::new(p.clone());
            drive(&mut state, scss, problem, &mut budget, &mut rng, diag.as_mut())?;
        }
        (BaselineSpec::Jade(p), scss) => {
            let mut state = JadeState::<T>::new(p.clone());
            drive(&mut state, scss, problem, &mut budget, &mut rng, diag.as_mut())?;
        }
        (BaselineSpec::Shade(p), scss) => {
            let mut state = ShadeState::<T>::new(p.clone());
            drive(&mut state, scss, problem, &mut budget, &mut rng, diag.as_mut())?;
        }
        (BaselineSpec::Lshade(p), scss) => {
            let mut state = LshadeState::<T>::new(p.clone(), problem.dim());
            drive(&mut state, scss, problem, &mut budget, &mut rng, diag.as_mut())?;
        }
    }

    let record = RunRecord::from_budget(
        &config.name,
        problem.name(),
        seed,
        &budget,
        error_floor,
    );
    Ok((record, diag))
}

fn drive<T: Scalar, A: Optimizer<T>>(
    state: &mut A,
    scss: &Option<ScssConfig>,
    problem: &Problem<T>,
    budget: &mut BudgetCounter,
    rng: &mut RngStream,
    diag: Option<&mut DiagnosticsRecord>,
) -> Result<()> {
    match scss {
        Some(config) => run_scss(state, config, problem, budget, rng, diag),
        None => run_baseline(state, problem, budget, rng),
    }
}

/// Summary of an experiment: per-algorithm per-function statistics,
/// Wilcoxon verdicts of the first algorithm against every other, and
/// Friedman mean ranks when at least three algorithms are compared.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonResult {
    pub algorithms: Vec<String>,
    pub functions: Vec<String>,
    /// `mean[algo][func]`
    pub mean: Vec<Vec<f64>>,
    pub std_dev: Vec<Vec<f64>>,
    /// `verdicts[j - 1][func]`: `algorithms[0]` compared against `algorithms[j]`
    pub verdicts: Vec<Vec<Verdict>>,
    /// (minus, equal, plus) counts per comparison row
    pub counts: Vec<(usize, usize, usize)>,
    pub friedman: Option<Vec<f64>>,
}

impl ComparisonResult {
    /// Build from per-run errors: `errors[algo][func][run]`.
    pub fn from_errors(
        algorithms: Vec<String>,
        functions: Vec<String>,
        errors: &[Vec<Vec<f64>>],
        alpha: f64,
    ) -> Result<Self> {
        let mean: Vec<Vec<f64>> = errors
            .iter()
            .map(|by_func| by_func.iter().map(|runs| mean_of(runs)).collect())
            .collect();
        let std_dev: Vec<Vec<f64>> = errors
            .iter()
            .map(|by_func| by_func.iter().map(|runs| std_of(runs)).collect())
            .collect();
        let mut verdicts = Vec::new();
        let mut counts = Vec::new();
        for j in 1..algorithms.len() {
            let mut row = Vec::with_capacity(functions.len());
            let (mut minus, mut equal, mut plus) = (0, 0, 0);
            for f in 0..functions.len() {
                let outcome = wilcoxon_signed_rank(&errors[0][f], &errors[j][f], alpha)?;
                match outcome.verdict {
                    Verdict::Minus => minus += 1,
                    Verdict::Equal => equal += 1,
                    Verdict::Plus => plus += 1,
                }
                row.push(outcome.verdict);
            }
            verdicts.push(row);
            counts.push((minus, equal, plus));
        }
        let friedman = if algorithms.len() >= 3 {
            Some(friedman_ranks(&mean)?)
        } else {
            None
        };
        Ok(Self { algorithms, functions, mean, std_dev, verdicts, counts, friedman })
    }

    /// The per-comparison summary lines, e.g. `de vs scss-de  -/=/+ : 4/2/0`.
    pub fn summary_lines(&self) -> Vec<String> {
        self.counts
            .iter()
            .enumerate()
            .map(|(idx, (m, e, p))| {
                format!(
                    "{} vs {}  -/=/+ : {}/{}/{}",
                    self.algorithms[0],
                    self.algorithms[idx + 1],
                    m, e, p
                )
            })
            .collect()
    }
}

fn mean_of(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn std_of(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean_of(values);
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    (ss / (values.len() - 1) as f64).sqrt()
}

/// Diagnostics merged over the runs of one (algorithm, function) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsEntry {
    pub algorithm: String,
    pub function: String,
    pub record: DiagnosticsRecord,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    /// Ordered by (algorithm, function, run).
    pub records: Vec<RunRecord>,
    pub comparison: ComparisonResult,
    pub diagnostics: Vec<DiagnosticsEntry>,
}

/// Run the full grid. Cells execute independently (each owns its seeded
/// stream and is stored by index), so the result is identical for any
/// worker count.
pub fn run_experiment<T: Scalar>(
    spec: &ExperimentSpec<T>,
    parallelism: usize,
) -> Result<ExperimentResult> {
    spec.validate()?;
    let workers = parallelism.max(1);
    let problems: Vec<Problem<T>> =
        spec.materialize_functions().iter().map(|f| f.to_problem()).collect();
    let budget_limit = spec.budget_limit();

    let n_algos = spec.algorithms.len();
    let n_funcs = problems.len();
    let n_cells = n_algos * n_funcs * spec.runs;

    type CellOutput = (RunRecord, Option<DiagnosticsRecord>);
    let slots: Mutex<Vec<Option<Result<CellOutput>>>> = Mutex::new((0..n_cells).map(|_| None).collect());
    let next = AtomicUsize::new(0);

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let cell = next.fetch_add(1, Ordering::Relaxed);
                if cell >= n_cells {
                    break;
                }
                let run_idx = cell % spec.runs;
                let func_idx = (cell / spec.runs) % n_funcs;
                let algo_idx = cell / (spec.runs * n_funcs);
                let seed = spec.run_seed(func_idx, run_idx);
                let output = run_one(
                    &spec.algorithms[algo_idx],
                    &problems[func_idx],
                    seed,
                    budget_limit,
                    spec.error_floor,
                    spec.diagnostics,
                );
                slots.lock().expect("no poisoned cells")[cell] = Some(output);
            });
        }
    });

    let mut records = Vec::with_capacity(n_cells);
    let mut errors = vec![vec![Vec::with_capacity(spec.runs); n_funcs]; n_algos];
    let mut diag_cells: Vec<DiagnosticsEntry> = Vec::new();
    for (cell, slot) in slots.into_inner().expect("no poisoned cells").into_iter().enumerate() {
        let (record, diag) = slot.expect("every cell executed")?;
        let func_idx = (cell / spec.runs) % n_funcs;
        let algo_idx = cell / (spec.runs * n_funcs);
        errors[algo_idx][func_idx].push(record.final_error);
        if let Some(diag) = diag {
            let algorithm = &spec.algorithms[algo_idx].name;
            let function = problems[func_idx].name();
            match diag_cells
                .iter_mut()
                .find(|e| e.algorithm == *algorithm && e.function == function)
            {
                Some(entry) => entry.record.merge(&diag),
                None => diag_cells.push(DiagnosticsEntry {
                    algorithm: algorithm.clone(),
                    function: function.to_string(),
                    record: diag,
                }),
            }
        }
        records.push(record);
    }

    let comparison = ComparisonResult::from_errors(
        spec.algorithms.iter().map(|a| a.name.clone()).collect(),
        problems.iter().map(|p| p.name().to_string()).collect(),
        &errors,
        SIGNIFICANCE_LEVEL,
    )?;

    Ok(ExperimentResult { records, comparison, diagnostics: diag_cells })
}
