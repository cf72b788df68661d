//! Particle swarm optimization with inertia weight and velocity clamping.
//! Updates are synchronous: every particle's velocity uses the previous
//! generation's gbest, and pbest/gbest are refreshed after the whole swarm
//! has moved.

use crate::baselines::{Candidate, Evaluated, Optimizer, Payload};
use crate::budget::BudgetCounter;
use crate::error::Result;
use crate::rng::RngStream;
use crate::{evaluate, rank_population, repair_bounds, Problem, RepairRule, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct PsoParams<T: Scalar> {
    pub np: usize,
    pub w: T,
    pub c1: T,
    pub c2: T,
    /// V_MAX as a fraction of the domain width per coordinate.
    pub vmax_scale: T,
}

impl<T: Scalar> Default for PsoParams<T> {
    fn default() -> Self {
        Self {
            np: 20,
            w: T::from_f64_c(0.9),
            c1: T::from_f64_c(2.0),
            c2: T::from_f64_c(2.0),
            vmax_scale: T::from_f64_c(0.5),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle<T: Scalar> {
    pub position: Vec<T>,
    pub velocity: Vec<T>,
    pub fitness: T,
    pub pbest_position: Vec<T>,
    pub pbest_fitness: T,
}

/// Velocity and position update for one particle. Draws two uniforms per
/// coordinate (r1 then r2); the new velocity is clamped to +-vmax before the
/// position moves. The returned position is not yet bound-repaired.
pub fn pso_step_particle<T: Scalar>(
    particle: &Particle<T>,
    gbest: &[T],
    vmax: &[T],
    params: &PsoParams<T>,
    rng: &mut RngStream,
) -> (Vec<T>, Vec<T>) {
    let dim = particle.position.len();
    let mut velocity = Vec::with_capacity(dim);
    let mut position = Vec::with_capacity(dim);
    for j in 0..dim {
        let r1: T = rng.uniform();
        let r2: T = rng.uniform();
        let x = particle.position[j];
        let mut v = params.w * particle.velocity[j]
            + params.c1 * r1 * (particle.pbest_position[j] - x)
            + params.c2 * r2 * (gbest[j] - x);
        if v.abs() > vmax[j] {
            v = v.signum() * vmax[j];
        }
        velocity.push(v);
        position.push(x + v);
    }
    (velocity, position)
}

#[derive(Debug, Clone)]
pub struct PsoState<T: Scalar> {
    params: PsoParams<T>,
    vmax: Vec<T>,
    particles: Vec<Particle<T>>,
    gbest_position: Vec<T>,
    gbest_fitness: T,
}

impl<T: Scalar> PsoState<T> {
    pub fn new(params: PsoParams<T>) -> Self {
        assert!(params.np >= 1);
        Self {
            params,
            vmax: Vec::new(),
            particles: Vec::new(),
            gbest_position: Vec::new(),
            gbest_fitness: T::infinity(),
        }
    }

    pub fn particles(&self) -> &[Particle<T>] {
        &self.particles
    }

    pub fn gbest(&self) -> (&[T], T) {
        (&self.gbest_position, self.gbest_fitness)
    }
}

impl<T: Scalar> Optimizer<T> for PsoState<T> {
    fn init(
        &mut self,
        problem: &Problem<T>,
        budget: &mut BudgetCounter,
        rng: &mut RngStream,
    ) -> Result<()> {
        self.vmax = problem
            .lower()
            .iter()
            .zip(problem.upper())
            .map(|(&lo, &hi)| self.params.vmax_scale * (hi - lo))
            .collect();
        self.particles.clear();
        self.gbest_fitness = T::infinity();
        for _ in 0..self.params.np {
            let position = problem.sample_uniform(rng);
            let velocity: Vec<T> = self
                .vmax
                .iter()
                .map(|&vm| rng.uniform_in(-vm, vm))
                .collect();
            let fitness = evaluate(problem, &position, budget)?;
            if fitness <= self.gbest_fitness {
                self.gbest_fitness = fitness;
                self.gbest_position = position.clone();
            }
            self.particles.push(Particle {
                pbest_position: position.clone(),
                pbest_fitness: fitness,
                position,
                velocity,
                fitness,
            });
        }
        Ok(())
    }

    fn begin_generation(&mut self, _rng: &mut RngStream) {}

    fn offspring_count(&self) -> usize {
        self.params.np
    }

    fn rank_values(&self) -> Result<Vec<f64>> {
        let fitnesses: Vec<T> = self.particles.iter().map(|p| p.fitness).collect();
        let ranks = rank_population(&fitnesses)?;
        Ok(ranks.into_iter().map(|r| r as f64).collect())
    }

    fn reproduce(&self, slot: usize, problem: &Problem<T>, rng: &mut RngStream) -> Candidate<T> {
        let (velocity, position) = pso_step_particle(
            &self.particles[slot],
            &self.gbest_position,
            &self.vmax,
            &self.params,
            rng,
        );
        let position = repair_bounds(
            position,
            &self.particles[slot].position,
            problem,
            RepairRule::Clamp,
        );
        Candidate { position, payload: Payload::PsoVelocity(velocity) }
    }

    fn anchor(&self, slot: usize) -> &[T] {
        &self.particles[slot].pbest_position
    }

    fn integrate(
        &mut self,
        outcomes: Vec<Option<Evaluated<T>>>,
        _budget: &BudgetCounter,
        _rng: &mut RngStream,
    ) {
        for (slot, outcome) in outcomes.into_iter().enumerate() {
            let Some(ev) = outcome else { continue };
            let velocity = match ev.candidate.payload {
                Payload::PsoVelocity(v) => v,
                _ => unreachable!("PSO candidates carry velocities"),
            };
            let particle = &mut self.particles[slot];
            particle.position = ev.candidate.position;
            particle.velocity = velocity;
            particle.fitness = ev.fitness;
            if ev.fitness <= particle.pbest_fitness {
                particle.pbest_fitness = ev.fitness;
                particle.pbest_position = particle.position.clone();
            }
            if ev.fitness <= self.gbest_fitness {
                self.gbest_fitness = ev.fitness;
                self.gbest_position = particle.position.clone();
            }
        }
    }
}
