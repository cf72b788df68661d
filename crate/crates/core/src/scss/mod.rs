//! Selective-candidate generation with similarity selection.
//!
//! Each generation produces M candidates per slot through the baseline's
//! own reproduction (independent control parameters and operator draws per
//! candidate). One candidate per slot is then chosen by rank-conditioned
//! distance to the slot's anchor, and only that candidate is evaluated, so
//! the evaluation cost per generation stays at one per slot regardless of
//! M. With M = 1 the machinery collapses onto the plain baseline: the
//! selection rule draws nothing and the RNG stream stays aligned draw for
//! draw.

mod diagnostics;

pub use diagnostics::{DiagnosticsRecord, PaCounter};

use crate::baselines::{Candidate, Evaluated, Optimizer};
use crate::budget::BudgetCounter;
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::{evaluate, Problem, Scalar};

/// How the final candidate is chosen from the M-pool.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SelectionScheme {
    /// Deterministic split: slots ranked within the top `ceil(n * gd)` take
    /// the closest candidate, the rest take the farthest.
    Scheme1 { gd: f64 },
    /// Probabilistic split: a slot of rank r takes the closest candidate
    /// with probability 1 - r/n.
    Scheme2,
    /// Scheme 2 with the branches swapped (ablation control).
    VariantOppo,
    /// Evaluate all M candidates on budget and keep the fittest (ablation
    /// control; costs M evaluations per slot).
    VariantMeval,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScssConfig {
    pub m: usize,
    pub scheme: SelectionScheme,
}

impl ScssConfig {
    pub fn new(m: usize, scheme: SelectionScheme) -> Self {
        assert!(m >= 1, "at least one reproduction per slot");
        if let SelectionScheme::Scheme1 { gd } = scheme {
            assert!((0.0..=1.0).contains(&gd), "greedy degree lies in [0, 1]");
        }
        Self { m, scheme }
    }
}

/// Which branch of the similarity-selection rule produced a pick.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PickKind {
    Closest,
    Farthest,
}

/// Euclidean distance; the similarity measure between a candidate and its
/// anchor.
pub fn euclidean_distance<T: Scalar>(a: &[T], b: &[T]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    let sum = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = (x - y).as_f64();
            d * d
        })
        .sum::<f64>();
    Ok(sum.sqrt())
}

fn argmin(distances: &[f64]) -> usize {
    let mut best = 0;
    for (i, &d) in distances.iter().enumerate().skip(1) {
        if d < distances[best] {
            best = i;
        }
    }
    best
}

fn argmax(distances: &[f64]) -> usize {
    let mut best = 0;
    for (i, &d) in distances.iter().enumerate().skip(1) {
        if d > distances[best] {
            best = i;
        }
    }
    best
}

/// Scheme 1: ranks up to ceil(n * gd) exploit (closest), the rest explore
/// (farthest). Ties pick the lowest candidate index in both branches.
pub fn select_scheme1(rank: f64, n: usize, gd: f64, distances: &[f64]) -> (usize, PickKind) {
    debug_assert!(!distances.is_empty());
    if rank <= (n as f64 * gd).ceil() {
        (argmin(distances), PickKind::Closest)
    } else {
        (argmax(distances), PickKind::Farthest)
    }
}

/// Scheme 2: exploit when u > rank/n, explore otherwise; u is one fresh
/// uniform draw per slot per generation.
pub fn select_scheme2(rank: f64, n: usize, u: f64, distances: &[f64]) -> (usize, PickKind) {
    debug_assert!(!distances.is_empty());
    if u > rank / n as f64 {
        (argmin(distances), PickKind::Closest)
    } else {
        (argmax(distances), PickKind::Farthest)
    }
}

/// Opposite of Scheme 2: the branch condition is identical but the
/// closest/farthest outcomes are swapped.
pub fn select_variant_oppo(rank: f64, n: usize, u: f64, distances: &[f64]) -> (usize, PickKind) {
    debug_assert!(!distances.is_empty());
    if u > rank / n as f64 {
        (argmax(distances), PickKind::Farthest)
    } else {
        (argmin(distances), PickKind::Closest)
    }
}

/// Outcome of driving one generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerationStatus {
    Completed,
    BudgetExhausted,
}

/// One generation of the unwrapped baseline: reproduce each slot once,
/// evaluate in slot order, integrate. When the budget runs out mid-loop the
/// remaining slots stay unevaluated and their incumbents survive.
pub fn baseline_generation<T: Scalar, A: Optimizer<T>>(
    algo: &mut A,
    problem: &Problem<T>,
    budget: &mut BudgetCounter,
    rng: &mut RngStream,
) -> Result<GenerationStatus> {
    algo.begin_generation(rng);
    let n = algo.offspring_count();
    let candidates: Vec<Candidate<T>> =
        (0..n).map(|slot| algo.reproduce(slot, problem, rng)).collect();
    let mut outcomes: Vec<Option<Evaluated<T>>> = Vec::with_capacity(n);
    let mut exhausted = false;
    for candidate in candidates {
        if exhausted {
            outcomes.push(None);
            continue;
        }
        match evaluate(problem, &candidate.position, budget) {
            Ok(fitness) => outcomes.push(Some(Evaluated { candidate, fitness })),
            Err(Error::BudgetExhausted { .. }) => {
                exhausted = true;
                outcomes.push(None);
            }
            Err(e) => return Err(e),
        }
    }
    algo.integrate(outcomes, budget, rng);
    Ok(if exhausted { GenerationStatus::BudgetExhausted } else { GenerationStatus::Completed })
}

/// One selective-candidate generation.
///
/// Draw order per the baseline contract: per-slot reproductions (candidate
/// index outermost), then one selection draw per slot for the probabilistic
/// schemes -- skipped entirely when M = 1 -- then integration randomness.
pub fn scss_generation<T: Scalar, A: Optimizer<T>>(
    algo: &mut A,
    config: &ScssConfig,
    problem: &Problem<T>,
    budget: &mut BudgetCounter,
    rng: &mut RngStream,
    diagnostics: Option<&mut DiagnosticsRecord>,
) -> Result<GenerationStatus> {
    algo.begin_generation(rng);
    let n = algo.offspring_count();
    let m = config.m;

    let mut pools: Vec<Vec<Candidate<T>>> = (0..n).map(|_| Vec::with_capacity(m)).collect();
    for _ in 0..m {
        for (slot, pool) in pools.iter_mut().enumerate() {
            pool.push(algo.reproduce(slot, problem, rng));
        }
    }

    let distances: Vec<Vec<f64>> = pools
        .iter()
        .enumerate()
        .map(|(slot, pool)| {
            pool.iter()
                .map(|c| euclidean_distance(&c.position, algo.anchor(slot)))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    if matches!(config.scheme, SelectionScheme::VariantMeval) {
        return meval_generation(algo, problem, budget, rng, pools, distances, diagnostics);
    }

    let ranks = algo.rank_values()?;
    let picks: Vec<(usize, Option<PickKind>)> = (0..n)
        .map(|slot| {
            if m == 1 {
                return (0, None);
            }
            let (index, kind) = match config.scheme {
                SelectionScheme::Scheme1 { gd } => {
                    select_scheme1(ranks[slot], n, gd, &distances[slot])
                }
                SelectionScheme::Scheme2 => {
                    let u: f64 = rng.uniform();
                    select_scheme2(ranks[slot], n, u, &distances[slot])
                }
                SelectionScheme::VariantOppo => {
                    let u: f64 = rng.uniform();
                    select_variant_oppo(ranks[slot], n, u, &distances[slot])
                }
                SelectionScheme::VariantMeval => unreachable!("handled above"),
            };
            (index, Some(kind))
        })
        .collect();

    if let Some(diag) = diagnostics {
        for (slot, &(index, kind)) in picks.iter().enumerate() {
            let Some(kind) = kind else { continue };
            // off-budget oracle: the true fitness of every candidate
            let fitnesses: Vec<T> =
                pools[slot].iter().map(|c| problem.eval_raw(&c.position)).collect();
            let best = fitnesses
                .iter()
                .fold(T::infinity(), |acc, &f| if f < acc { f } else { acc });
            diag.observe(ranks[slot], &distances[slot], index, kind, fitnesses[index] <= best);
        }
    }

    let mut outcomes: Vec<Option<Evaluated<T>>> = Vec::with_capacity(n);
    let mut exhausted = false;
    for (slot, pool) in pools.into_iter().enumerate() {
        if exhausted {
            outcomes.push(None);
            continue;
        }
        let index = picks[slot].0;
        let candidate = pool.into_iter().nth(index).expect("valid pick index");
        match evaluate(problem, &candidate.position, budget) {
            Ok(fitness) => outcomes.push(Some(Evaluated { candidate, fitness })),
            Err(Error::BudgetExhausted { .. }) => {
                exhausted = true;
                outcomes.push(None);
            }
            Err(e) => return Err(e),
        }
    }
    algo.integrate(outcomes, budget, rng);
    Ok(if exhausted { GenerationStatus::BudgetExhausted } else { GenerationStatus::Completed })
}

/// Variant-Meval: evaluate all M candidates of a slot on budget and keep
/// the fittest (lowest candidate index on ties).
fn meval_generation<T: Scalar, A: Optimizer<T>>(
    algo: &mut A,
    problem: &Problem<T>,
    budget: &mut BudgetCounter,
    rng: &mut RngStream,
    pools: Vec<Vec<Candidate<T>>>,
    distances: Vec<Vec<f64>>,
    mut diagnostics: Option<&mut DiagnosticsRecord>,
) -> Result<GenerationStatus> {
    let ranks = algo.rank_values()?;
    let mut outcomes: Vec<Option<Evaluated<T>>> = Vec::with_capacity(pools.len());
    let mut exhausted = false;
    for (slot, pool) in pools.into_iter().enumerate() {
        let mut best: Option<(usize, Evaluated<T>)> = None;
        for (index, candidate) in pool.into_iter().enumerate() {
            if exhausted {
                break;
            }
            match evaluate(problem, &candidate.position, budget) {
                Ok(fitness) => {
                    let better = best
                        .as_ref()
                        .map(|(_, incumbent)| fitness < incumbent.fitness)
                        .unwrap_or(true);
                    if better {
                        best = Some((index, Evaluated { candidate, fitness }));
                    }
                }
                Err(Error::BudgetExhausted { .. }) => exhausted = true,
                Err(e) => return Err(e),
            }
        }
        if let (Some(diag), Some((index, _))) = (diagnostics.as_deref_mut(), best.as_ref()) {
            diag.observe_distance_only(ranks[slot], &distances[slot], *index);
        }
        outcomes.push(best.map(|(_, ev)| ev));
    }
    algo.integrate(outcomes, budget, rng);
    Ok(if exhausted { GenerationStatus::BudgetExhausted } else { GenerationStatus::Completed })
}

/// Drive a baseline until its budget is exhausted.
pub fn run_baseline<T: Scalar, A: Optimizer<T>>(
    algo: &mut A,
    problem: &Problem<T>,
    budget: &mut BudgetCounter,
    rng: &mut RngStream,
) -> Result<()> {
    match algo.init(problem, budget, rng) {
        Err(Error::BudgetExhausted { .. }) => return Ok(()),
        other => other?,
    }
    while !budget.is_exhausted() {
        if baseline_generation(algo, problem, budget, rng)? == GenerationStatus::BudgetExhausted {
            break;
        }
    }
    Ok(())
}

/// Drive a selective-candidate wrapper until its budget is exhausted.
pub fn run_scss<T: Scalar, A: Optimizer<T>>(
    algo: &mut A,
    config: &ScssConfig,
    problem: &Problem<T>,
    budget: &mut BudgetCounter,
    rng: &mut RngStream,
    mut diagnostics: Option<&mut DiagnosticsRecord>,
) -> Result<()> {
    match algo.init(problem, budget, rng) {
        Err(Error::BudgetExhausted { .. }) => return Ok(()),
        other => other?,
    }
    while !budget.is_exhausted() {
        let status = scss_generation(
            algo,
            config,
            problem,
            budget,
            rng,
            diagnostics.as_deref_mut(),
        )?;
        if status == GenerationStatus::BudgetExhausted {
            break;
        }
    }
    Ok(())
}
