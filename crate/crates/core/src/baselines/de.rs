//! Classic differential evolution, rand/1/bin with fixed F and CR.

use crate::baselines::{Candidate, Evaluated, Optimizer, Payload};
use crate::budget::BudgetCounter;
use crate::error::{Error, Result};
use crate::individual::{fitness_values, Individual};
use crate::rng::RngStream;
use crate::{evaluate, rank_population, repair_bounds, Problem, RepairRule, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct DeParams<T: Scalar> {
    pub np: usize,
    pub f: T,
    pub cr: T,
}

impl<T: Scalar> Default for DeParams<T> {
    fn default() -> Self {
        Self {
            np: 100,
            f: T::from_f64_c(0.7),
            cr: T::from_f64_c(0.5),
        }
    }
}

/// rand/1 mutation: v = x_{r1} + F * (x_{r2} - x_{r3}), with r1, r2, r3
/// distinct and different from the target index.
pub fn de_mutate_rand1<T: Scalar>(
    pop: &[Individual<T>],
    target: usize,
    f: T,
    rng: &mut RngStream,
) -> Result<Vec<T>> {
    if pop.len() < 4 {
        return Err(Error::PopulationTooSmall {
            np: pop.len(),
            operation: "rand/1 mutation",
        });
    }
    let r1 = rng.below_excluding(pop.len(), &[target]);
    let r2 = rng.below_excluding(pop.len(), &[target, r1]);
    let r3 = rng.below_excluding(pop.len(), &[target, r1, r2]);
    Ok(pop[r1]
        .position
        .iter()
        .zip(pop[r2].position.iter().zip(&pop[r3].position))
        .map(|(&a, (&b, &c))| a + f * (b - c))
        .collect())
}

/// Binomial crossover: take the mutant coordinate when rand_j <= CR or at
/// the forced index j_rand. Draws one uniform per dimension regardless.
pub fn de_crossover_bin<T: Scalar>(
    target: &[T],
    mutant: &[T],
    cr: T,
    rng: &mut RngStream,
) -> Vec<T> {
    debug_assert_eq!(target.len(), mutant.len());
    let j_rand = rng.below(target.len());
    target
        .iter()
        .zip(mutant)
        .enumerate()
        .map(|(j, (&t, &m))| {
            let u: T = rng.uniform();
            if u <= cr || j == j_rand {
                m
            } else {
                t
            }
        })
        .collect()
}

/// One-to-one survivor selection; the trial wins ties.
pub fn de_select<T: Scalar>(
    target: &Individual<T>,
    trial: &Individual<T>,
) -> Result<Individual<T>> {
    let ft = trial.fitness()?;
    let fx = target.fitness()?;
    Ok(if ft <= fx { trial.clone() } else { target.clone() })
}

/// Classic DE population with fixed control parameters.
#[derive(Debug, Clone)]
pub struct DeState<T: Scalar> {
    params: DeParams<T>,
    pop: Vec<Individual<T>>,
}

impl<T: Scalar> DeState<T> {
    pub fn new(params: DeParams<T>) -> Self {
        assert!(params.np >= 4, "rand/1 needs at least 4 individuals");
        Self { params, pop: Vec::new() }
    }

    pub fn population(&self) -> &[Individual<T>] {
        &self.pop
    }
}

impl<T: Scalar> Optimizer<T> for DeState<T> {
    fn init(
        &mut self,
        problem: &Problem<T>,
        budget: &mut BudgetCounter,
        rng: &mut RngStream,
    ) -> Result<()> {
        self.pop.clear();
        for _ in 0..self.params.np {
            let position = problem.sample_uniform(rng);
            let fitness = evaluate(problem, &position, budget)?;
            self.pop.push(Individual::evaluated(position, fitness));
        }
        Ok(())
    }

    fn begin_generation(&mut self, _rng: &mut RngStream) {}

    fn offspring_count(&self) -> usize {
        self.params.np
    }

    fn rank_values(&self) -> Result<Vec<f64>> {
        let ranks = rank_population(&fitness_values(&self.pop))?;
        Ok(ranks.into_iter().map(|r| r as f64).collect())
    }

    fn reproduce(&self, slot: usize, problem: &Problem<T>, rng: &mut RngStream) -> Candidate<T> {
        let mutant = de_mutate_rand1(&self.pop, slot, self.params.f, rng)
            .expect("population size checked at construction");
        let trial = de_crossover_bin(&self.pop[slot].position, &mutant, self.params.cr, rng);
        let trial = repair_bounds(trial, &self.pop[slot].position, problem, RepairRule::Clamp);
        Candidate { position: trial, payload: Payload::None }
    }

    fn anchor(&self, slot: usize) -> &[T] {
        &self.pop[slot].position
    }

    fn integrate(
        &mut self,
        outcomes: Vec<Option<Evaluated<T>>>,
        _budget: &BudgetCounter,
        _rng: &mut RngStream,
    ) {
        for (slot, outcome) in outcomes.into_iter().enumerate() {
            if let Some(ev) = outcome {
                if ev.fitness <= self.pop[slot].fitness_known() {
                    self.pop[slot] = Individual::evaluated(ev.candidate.position, ev.fitness);
                }
            }
        }
    }
}
