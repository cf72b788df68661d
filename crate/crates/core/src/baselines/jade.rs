//! JADE: adaptive DE with current-to-pbest/1 mutation, an external archive
//! of replaced parents, and location parameters mu_F / mu_CR adapted from
//! the successful control parameters of each generation.

use crate::baselines::adaptive::{
    adaptive_trial, lehmer_mean, sample_cr, sample_f, sorted_by_fitness, Archive, Successes,
};
use crate::baselines::{Candidate, Evaluated, Optimizer, Payload};
use crate::budget::BudgetCounter;
use crate::error::Result;
use crate::individual::{fitness_values, Individual};
use crate::rng::RngStream;
use crate::{evaluate, rank_population, repair_bounds, Problem, RepairRule, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct JadeParams {
    pub np: usize,
    /// Greediness: pbest is drawn from the top `round(p * NP)` individuals.
    pub p: f64,
    /// Adaptation rate of the location parameters.
    pub c: f64,
}

impl Default for JadeParams {
    fn default() -> Self {
        Self { np: 100, p: 0.05, c: 0.1 }
    }
}

#[derive(Debug, Clone)]
pub struct JadeState<T: Scalar> {
    params: JadeParams,
    pop: Vec<Individual<T>>,
    archive: Archive<T>,
    mu_f: T,
    mu_cr: T,
    sorted: Vec<usize>,
}

impl<T: Scalar> JadeState<T> {
    pub fn new(params: JadeParams) -> Self {
        assert!(params.np >= 4);
        assert!(params.p * params.np as f64 >= 0.5, "p*NP must round to >= 1");
        Self {
            params,
            pop: Vec::new(),
            archive: Archive::new(),
            mu_f: T::from_f64_c(0.5),
            mu_cr: T::from_f64_c(0.5),
            sorted: Vec::new(),
        }
    }

    pub fn location_params(&self) -> (T, T) {
        (self.mu_f, self.mu_cr)
    }

    pub fn population(&self) -> &[Individual<T>] {
        &self.pop
    }

    fn pbest_count(&self) -> usize {
        ((self.params.p * self.params.np as f64).round() as usize).clamp(1, self.params.np)
    }

    /// Location-parameter update from the successful control parameters:
    /// mu_CR <- (1-c) mu_CR + c * mean(S_CR),
    /// mu_F  <- (1-c) mu_F  + c * lehmer(S_F);
    /// empty success sets leave the state unchanged.
    pub fn update_location_params(&mut self, successful_f: &[T], successful_cr: &[T]) {
        if successful_f.is_empty() {
            return;
        }
        let c = T::from_f64_c(self.params.c);
        let one_minus_c = T::one() - c;
        let mean_cr = successful_cr.iter().fold(T::zero(), |a, &v| a + v)
            / T::from_usize_c(successful_cr.len());
        self.mu_cr = one_minus_c * self.mu_cr + c * mean_cr;
        self.mu_f = one_minus_c * self.mu_f + c * lehmer_mean(successful_f);
    }
}

impl<T: Scalar> Optimizer<T> for JadeState<T> {
    fn init(
        &mut self,
        problem: &Problem<T>,
        budget: &mut BudgetCounter,
        rng: &mut RngStream,
    ) -> Result<()> {
        self.pop.clear();
        self.archive = Archive::new();
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
        let f = sample_f(self.mu_f, rng);
        let cr = sample_cr(self.mu_cr, rng);
        let trial = adaptive_trial(
            &self.pop,
            &self.sorted,
            &self.archive,
            slot,
            f,
            cr,
            self.pbest_count(),
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
        self.update_location_params(&successes.f, &successes.cr);
        self.archive.trim_to(self.params.np, rng);
    }
}
