//! L-SHADE: SHADE with linear population size reduction. The population
//! shrinks from NP_init to NP_min as the evaluation budget is consumed;
//! the worst-ranked individuals are dropped and the archive cap shrinks
//! proportionally. Memory size, greediness and archive rate follow the
//! published design (H = 6, p = 0.11, archive = 2.6 NP).

use crate::baselines::adaptive::{
    adaptive_trial, sample_cr, sample_f, sorted_by_fitness, Archive, Successes,
};
use crate::baselines::shade::ShadeMemory;
use crate::baselines::{Candidate, Evaluated, Optimizer, Payload};
use crate::budget::BudgetCounter;
use crate::error::Result;
use crate::individual::{fitness_values, Individual};
use crate::rng::RngStream;
use crate::{evaluate, rank_population, repair_bounds, Problem, RepairRule, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct LshadeParams {
    /// Initial population size; defaults to 18 * D when unset.
    pub np_init: Option<usize>,
    pub np_min: usize,
    pub h: usize,
    pub p: f64,
    pub archive_rate: f64,
}

impl Default for LshadeParams {
    fn default() -> Self {
        Self { np_init: None, np_min: 4, h: 6, p: 0.11, archive_rate: 2.6 }
    }
}

/// Linear population size schedule:
/// NP(t) = round(NP_init + (NP_min - NP_init) * consumed / limit).
pub fn lshade_resize(np_init: usize, np_min: usize, budget: &BudgetCounter) -> usize {
    let progress = budget.consumed() as f64 / budget.limit() as f64;
    let np = (np_init as f64 + (np_min as f64 - np_init as f64) * progress).round();
    (np as usize).clamp(np_min, np_init)
}

#[derive(Debug, Clone)]
pub struct LshadeState<T: Scalar> {
    params: LshadeParams,
    np_init: usize,
    pop: Vec<Individual<T>>,
    archive: Archive<T>,
    memory: ShadeMemory<T>,
    sorted: Vec<usize>,
}

impl<T: Scalar> LshadeState<T> {
    pub fn new(params: LshadeParams, dim: usize) -> Self {
        let np_init = params.np_init.unwrap_or(18 * dim);
        assert!(np_init >= params.np_min && params.np_min >= 4);
        let memory = ShadeMemory::new(params.h);
        Self {
            params,
            np_init,
            pop: Vec::new(),
            archive: Archive::new(),
            memory,
            sorted: Vec::new(),
        }
    }

    pub fn current_np(&self) -> usize {
        self.pop.len()
    }

    pub fn memory(&self) -> &ShadeMemory<T> {
        &self.memory
    }

    fn pbest_count(&self) -> usize {
        let np = self.pop.len();
        ((self.params.p * np as f64).round() as usize).clamp(2.min(np), np)
    }

    fn archive_cap(&self) -> usize {
        ((self.params.archive_rate * self.pop.len() as f64).round() as usize).max(1)
    }
}

impl<T: Scalar> Optimizer<T> for LshadeState<T> {
    fn init(
        &mut self,
        problem: &Problem<T>,
        budget: &mut BudgetCounter,
        rng: &mut RngStream,
    ) -> Result<()> {
        self.pop.clear();
        self.archive = Archive::new();
        self.memory = ShadeMemory::new(self.params.h);
        for _ in 0..self.np_init {
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
        self.pop.len()
    }

    fn rank_values(&self) -> Result<Vec<f64>> {
        let ranks = rank_population(&fitness_values(&self.pop))?;
        Ok(ranks.into_iter().map(|r| r as f64).collect())
    }

    fn reproduce(&self, slot: usize, problem: &Problem<T>, rng: &mut RngStream) -> Candidate<T> {
        let cell = rng.below(self.memory.len());
        let f = sample_f(self.memory.f[cell], rng);
        let cr = sample_cr(self.memory.cr[cell], rng);
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
        budget: &BudgetCounter,
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

        let new_np = lshade_resize(self.np_init, self.params.np_min, budget);
        if new_np < self.pop.len() {
            let ranks = rank_population(&fitness_values(&self.pop))
                .expect("population fitnesses are finite");
            let mut keep = Vec::with_capacity(new_np);
            for (individual, rank) in self.pop.drain(..).zip(ranks) {
                if rank <= new_np {
                    keep.push(individual);
                }
            }
            self.pop = keep;
        }
        self.archive.trim_to(self.archive_cap(), rng);
    }
}
