//! Machinery shared by the adaptive DE family (JADE, SHADE, L-SHADE):
//! Cauchy/normal control-parameter sampling, current-to-pbest/1 mutation
//! with an external archive, and the success means.

use crate::baselines::de::de_crossover_bin;
use crate::individual::Individual;
use crate::rng::RngStream;
use crate::Scalar;

const CP_SCALE: f64 = 0.1;

/// F ~ Cauchy(loc, 0.1), resampled while non-positive and clamped to 1.
pub(crate) fn sample_f<T: Scalar>(loc: T, rng: &mut RngStream) -> T {
    let scale = T::from_f64_c(CP_SCALE);
    loop {
        let f = rng.cauchy(loc, scale);
        if f > T::zero() {
            return f.min(T::one());
        }
    }
}

/// CR ~ Normal(loc, 0.1), clipped to [0, 1].
pub(crate) fn sample_cr<T: Scalar>(loc: T, rng: &mut RngStream) -> T {
    let cr = loc + T::from_f64_c(CP_SCALE) * rng.normal();
    cr.max(T::zero()).min(T::one())
}

/// Lehmer mean: sum(v^2) / sum(v).
pub fn lehmer_mean<T: Scalar>(values: &[T]) -> T {
    let num = values.iter().fold(T::zero(), |acc, &v| acc + v * v);
    let den = values.iter().fold(T::zero(), |acc, &v| acc + v);
    num / den
}

/// Lehmer mean with weights: sum(w v^2) / sum(w v).
pub fn weighted_lehmer_mean<T: Scalar>(values: &[T], weights: &[T]) -> T {
    debug_assert_eq!(values.len(), weights.len());
    let num = values
        .iter()
        .zip(weights)
        .fold(T::zero(), |acc, (&v, &w)| acc + w * v * v);
    let den = values
        .iter()
        .zip(weights)
        .fold(T::zero(), |acc, (&v, &w)| acc + w * v);
    num / den
}

/// Arithmetic mean with weights (weights need not be normalized).
pub fn weighted_arithmetic_mean<T: Scalar>(values: &[T], weights: &[T]) -> T {
    debug_assert_eq!(values.len(), weights.len());
    let num = values
        .iter()
        .zip(weights)
        .fold(T::zero(), |acc, (&v, &w)| acc + w * v);
    let den = weights.iter().fold(T::zero(), |acc, &w| acc + w);
    num / den
}

/// Bounded archive of replaced parents; overflow is resolved by removing
/// uniformly random entries once per generation.
#[derive(Debug, Clone, Default)]
pub(crate) struct Archive<T: Scalar> {
    entries: Vec<Vec<T>>,
}

impl<T: Scalar> Archive<T> {
    pub fn new() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, idx: usize) -> &[T] {
        &self.entries[idx]
    }

    pub fn push(&mut self, position: Vec<T>) {
        self.entries.push(position);
    }

    pub fn trim_to(&mut self, cap: usize, rng: &mut RngStream) {
        while self.entries.len() > cap {
            let victim = rng.below(self.entries.len());
            self.entries.swap_remove(victim);
        }
    }
}

/// current-to-pbest/1 mutant:
/// v = x_i + F (x_pbest - x_i) + F (x_r1 - x~_r2),
/// where pbest is drawn from the `pbest_count` fittest individuals, r1 from
/// the population (distinct from i) and r2 from population union archive
/// (distinct from i and r1).
pub(crate) fn current_to_pbest_mutant<T: Scalar>(
    pop: &[Individual<T>],
    sorted_by_fitness: &[usize],
    archive: &Archive<T>,
    target: usize,
    f: T,
    pbest_count: usize,
    rng: &mut RngStream,
) -> Vec<T> {
    let np = pop.len();
    debug_assert!(pbest_count >= 1 && pbest_count <= np);
    let pbest = sorted_by_fitness[rng.below(pbest_count)];
    let r1 = rng.below_excluding(np, &[target]);
    let r2 = loop {
        let k = rng.below(np + archive.len());
        if k != target && k != r1 {
            break k;
        }
    };
    let x_r2 = if r2 < np { &pop[r2].position } else { archive.get(r2 - np) };
    let x_i = &pop[target].position;
    (0..x_i.len())
        .map(|j| {
            x_i[j]
                + f * (pop[pbest].position[j] - x_i[j])
                + f * (pop[r1].position[j] - x_r2[j])
        })
        .collect()
}

/// Shared reproduction tail for the adaptive DEs: mutate, cross over, and
/// return the trial (midpoint-to-bound repair is applied by the caller's
/// state since it owns the problem reference).
pub(crate) fn adaptive_trial<T: Scalar>(
    pop: &[Individual<T>],
    sorted_by_fitness: &[usize],
    archive: &Archive<T>,
    target: usize,
    f: T,
    cr: T,
    pbest_count: usize,
    rng: &mut RngStream,
) -> Vec<T> {
    let mutant =
        current_to_pbest_mutant(pop, sorted_by_fitness, archive, target, f, pbest_count, rng);
    de_crossover_bin(&pop[target].position, &mutant, cr, rng)
}

/// Indices sorted best-first by fitness, ties by lower index.
pub(crate) fn sorted_by_fitness<T: Scalar>(pop: &[Individual<T>]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pop.len()).collect();
    idx.sort_by(|&a, &b| {
        pop[a]
            .fitness_known()
            .partial_cmp(&pop[b].fitness_known())
            .expect("finite fitness")
            .then(a.cmp(&b))
    });
    idx
}

/// Success bookkeeping for one generation of an adaptive DE.
#[derive(Debug, Default)]
pub struct Successes<T: Scalar> {
    pub f: Vec<T>,
    pub cr: Vec<T>,
    pub improvement: Vec<T>,
}

impl<T: Scalar> Successes<T> {
    pub fn new() -> Self {
        Self { f: Vec::new(), cr: Vec::new(), improvement: Vec::new() }
    }

    pub fn record(&mut self, f: T, cr: T, improvement: T) {
        self.f.push(f);
        self.cr.push(cr);
        self.improvement.push(improvement);
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }
}
