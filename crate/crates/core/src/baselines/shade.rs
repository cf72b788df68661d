//! SHADE: success-history based adaptive DE. Control parameters are drawn
//! from a circular memory of H (F, CR) location pairs; each generation's
//! successful parameters update one cell with improvement-weighted means.

use crate::baselines::adaptive::{
    adaptive_trial, sample_cr, sample_f, sorted_by_fitness, weighted_arithmetic_mean,
    weighted_lehmer_mean, Archive, Successes,
};
use crate::baselines::{Candidate, Evaluated, Optimizer, Payload};
use crate::budget::BudgetCounter;
use crate::error::Result;
use crate::individual::{fitness_values, Individual};
use crate::rng::RngStream;
use crate::{evaluate, rank_population, repair_bounds, Problem, RepairRule, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct ShadeParams {
    pub np: usize,
    /// Memory size; defaults to NP.
    pub h: Option<usize>,
}

impl Default for ShadeParams {
    fn default() -> Self {
        Self { np: 100, h: None }
    }
}

/// Success-history memory of (F, CR) location pairs.
#[derive(Debug, Clone)]
pub struct ShadeMemory<T: Scalar> {
    pub f: Vec<T>,
    pub cr: Vec<T>,
    pub k: usize,
}

impl<T: Scalar> ShadeMemory<T> {
    pub fn new(h: usize) -> Self {
        assert!(h >= 1);
        Self {
            f: vec![T::from_f64_c(0.5); h],
            cr: vec![T::from_f64_c(0.5); h],
            k: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    /// Update cell k from the generation's successes (improvement-weighted
    /// Lehmer mean for F, improvement-weighted arithmetic mean for CR) and
    /// advance k cyclically. Empty successes leave the memory untouched.
    pub fn update(&mut self, successes: &Successes<T>) {
        if successes.is_empty() {
            return;
        }
        self.f[self.k] = weighted_lehmer_mean(&successes.f, &successes.improvement);
        self.cr[self.k] = weighted_arithmetic_mean(&successes.cr, &successes.improvement);
        self.k = (self.k + 1) % self.f.len();
    }
}

#[derive(Debug, Clone)]
pub struct ShadeState<T: Scalar> {
    params: ShadeParams,
    pop: Vec<Individual<T>>,
    archive: Archive<T>,
    memory: ShadeMemory<T>,
    sorted: Vec<usize>,
}

impl<T: Scalar> ShadeState<T> {
    pub fn new(params: ShadeParams) -> Self {
        assert!(params.np >= 4);
        let h = params.h.unwrap_or(params.np);
        Self {
            params,
            pop: Vec::new(),
            archive: Archive::new(),
            memory: ShadeMemory::new(h),
            sorted: Vec::new(),
        }
    }

    pub fn memory(&self) -> &ShadeMemory<T> {
        &self.memory
    }

    pub fn population(&self) -> &[Individual<T>] {
        &self.pop
    }
}

/// CP draw used by SHADE: memory cell, then F, CR, then the per-individual
/// greediness fraction p_i in [2/NP, 0.2].
fn shade_control_params<T: Scalar>(
    memory: &ShadeMemory<T>,
    np: usize,
    rng: &mut RngStream,
) -> (T, T, usize) {
    let cell = rng.below(memory.len());
    let f = sample_f(memory.f[cell], rng);
    let cr = sample_cr(memory.cr[cell], rng);
    let p_lo = 2.0 / np as f64;
    let p_hi = p_lo.max(0.2);
    let p_i: f64 = rng.uniform_in(p_lo, p_hi);
    let count = ((p_i * np as f64).round() as usize).clamp(2.min(np), np);
    (f, cr, count)
}

impl<T: Scalar> Optimizer<T> for ShadeState<T> {
    fn init(
        &mut self,
        problem: &Problem<T>,
        budget: &mut BudgetCounter,
        rng: &mut RngStream,
    ) -> Result<()> {
        self.pop.clear();
        self.archive = Archive::new();
        self.memory = ShadeMemory::new(self.params.h.unwrap_or(self.params.np));
        for _ in 0..self.params.np {
            let position = problem.sample_uniform(rng);
            let fitness = evaluate(problem, &position, budget)?;
            self.pop.push(Individual::evaluated(position, fitness));
        }
        Ok(())
    }

    fn begin_generation(&mut self, _rng: &mut RngStream) {
        self.sorted = sorted_by_fitness(&self.pop);
    }

    fn offspring_count(&self) -> usize {
        self.params.np
    }

    fn rank_values(&self) -> Result<Vec<f64>> {
        let ranks = rank_population(&fitness_values(&self.pop))?;
        Ok(ranks.into_iter().map(|r| r as f64).collect())
    }

    fn reproduce(&self, slot: usize, problem: &Problem<T>, rng: &mut RngStream) -> Candidate<T> {
        let (f, cr, pbest_count) = shade_control_params(&self.memory, self.params.np, rng);
        let trial = adaptive_trial(
            &self.pop,
            &self.sorted,
            &self.archive,
            slot,
            f,
            cr,
            pbest_count,
            rng,
        );
        let trial = repair_bounds(
            trial,
            &self.pop[slot].position,
            problem,
            RepairRule::MidpointToBound,
        );
        Candidate { position: trial, payload: Payload::DeParams { f, cr } }
    }

    fn anchor(&self, slot: usize) -> &[T] {
        &self.pop[slot].position
    }

    fn integrate(
        &mut self,
        outcomes: Vec<Option<Evaluated<T>>>,
        _budget: &BudgetCounter,
        rng: &mut RngStream,
    ) {
        let mut successes = Successes::new();
        for (slot, outcome) in outcomes.into_iter().enumerate() {
            let Some(ev) = outcome else { continue };
            let parent_fitness = self.pop[slot].fitness_known();
            if ev.fitness > parent_fitness {
                continue;
            }
            if ev.fitness < parent_fitness {
                let Payload::DeParams { f, cr } = ev.candidate.payload else {
                    unreachable!("adaptive DE candidates carry (F, CR)");
                };
                successes.record(f, cr, parent_fitness - ev.fitness);
                self.archive.push(self.pop[slot].position.clone());
            }
            self.pop[slot] = Individual::evaluated(ev.candidate.position, ev.fitness);
        }
        self.memory.update(&successes);
        self.archive.trim_to(self.params.np, rng);
    }
}
