//! (mu + lambda) evolution strategy with per-coordinate self-adaptive step
//! sizes, intermediate recombination and lognormal sigma mutation.

use crate::baselines::{Candidate, Evaluated, Optimizer, Payload};
use crate::budget::BudgetCounter;
use crate::error::Result;
use crate::rng::RngStream;
use crate::scss::euclidean_distance;
use crate::{evaluate, rank_population, repair_bounds, Problem, RepairRule, Scalar};

/// Step sizes never fall below this; the fittest initial individual has a
/// zero self-distance and would otherwise freeze.
pub const SIGMA_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct EsParams<T: Scalar> {
    pub mu: usize,
    pub lambda: usize,
    /// Recombination constant (intermediate recombination weight).
    pub chi: T,
    pub tau: T,
    pub tau_prime: T,
}

impl<T: Scalar> Default for EsParams<T> {
    fn default() -> Self {
        Self {
            mu: 25,
            lambda: 100,
            chi: T::from_f64_c(0.5),
            tau: T::one(),
            tau_prime: T::one(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EsIndividual<T: Scalar> {
    pub position: Vec<T>,
    pub sigma: Vec<T>,
    pub fitness: T,
}

/// Initial step sizes: sigma_i = |x_i - x_best| / sqrt(D) in every
/// coordinate, floored at `SIGMA_FLOOR`.
pub fn es_init_sigma<T: Scalar>(
    positions: &[Vec<T>],
    fitnesses: &[T],
    dim: usize,
) -> Result<Vec<Vec<T>>> {
    let ranks = rank_population(fitnesses)?;
    let best = ranks.iter().position(|&r| r == 1).expect("nonempty population");
    let sqrt_d = T::from_f64_c((dim as f64).sqrt());
    let floor = T::from_f64_c(SIGMA_FLOOR);
    Ok(positions
        .iter()
        .map(|x| {
            let dist = T::from_f64_c(
                euclidean_distance(x, &positions[best]).expect("equal lengths"),
            );
            let s = (dist / sqrt_d).max(floor);
            vec![s; dim]
        })
        .collect())
}

/// Intermediate recombination of two distinct parents chosen uniformly:
/// child = x_p + chi * (x_q - x_p), applied to positions and step sizes.
/// Returns the parent indices for the averaged-rank bookkeeping.
pub fn es_recombine<T: Scalar>(
    parents: &[EsIndividual<T>],
    params: &EsParams<T>,
    rng: &mut RngStream,
) -> (Vec<T>, Vec<T>, usize, usize) {
    debug_assert!(parents.len() >= 2);
    let p = rng.below(parents.len());
    let q = rng.below_excluding(parents.len(), &[p]);
    let mix = |a: &[T], b: &[T]| -> Vec<T> {
        a.iter()
            .zip(b)
            .map(|(&ap, &bq)| ap + params.chi * (bq - ap))
            .collect()
    };
    let position = mix(&parents[p].position, &parents[q].position);
    let sigma = mix(&parents[p].sigma, &parents[q].sigma);
    (position, sigma, p, q)
}

/// Lognormal self-adaptation followed by the position mutation. One shared
/// normal draw scales all step sizes, one per-coordinate draw perturbs each,
/// then each coordinate moves by N(0, sigma'_j).
pub fn es_mutate<T: Scalar>(
    position: &[T],
    sigma: &[T],
    params: &EsParams<T>,
    rng: &mut RngStream,
) -> (Vec<T>, Vec<T>) {
    let shared: T = rng.normal();
    let floor = T::from_f64_c(SIGMA_FLOOR);
    let new_sigma: Vec<T> = sigma
        .iter()
        .map(|&s| {
            let per_coord: T = rng.normal();
            (s * (params.tau_prime * shared + params.tau * per_coord).exp()).max(floor)
        })
        .collect();
    let new_position: Vec<T> = position
        .iter()
        .zip(&new_sigma)
        .map(|(&x, &s)| x + rng.normal::<T>() * s)
        .collect();
    (new_position, new_sigma)
}

/// (mu + lambda) ES state. Each generation recombines lambda individuals
/// once and mutates them; the recombined individuals are the anchors for
/// candidate-distance calculations and their ranks are the averaged parent
/// ranks.
#[derive(Debug, Clone)]
pub struct EsState<T: Scalar> {
    params: EsParams<T>,
    parents: Vec<EsIndividual<T>>,
    recombined: Vec<(Vec<T>, Vec<T>)>,
    rank_values: Vec<f64>,
}

impl<T: Scalar> EsState<T> {
    pub fn new(params: EsParams<T>) -> Self {
        assert!(params.mu >= 2, "recombination needs two parents");
        assert!(params.lambda > params.mu, "lambda must exceed mu");
        Self {
            params,
            parents: Vec::new(),
            recombined: Vec::new(),
            rank_values: Vec::new(),
        }
    }

    pub fn parents(&self) -> &[EsIndividual<T>] {
        &self.parents
    }
}

impl<T: Scalar> Optimizer<T> for EsState<T> {
    fn init(
        &mut self,
        problem: &Problem<T>,
        budget: &mut BudgetCounter,
        rng: &mut RngStream,
    ) -> Result<()> {
        let mut positions = Vec::with_capacity(self.params.mu);
        let mut fitnesses = Vec::with_capacity(self.params.mu);
        self.parents.clear();
        for _ in 0..self.params.mu {
            let position = problem.sample_uniform(rng);
            let fitness = evaluate(problem, &position, budget)?;
            positions.push(position);
            fitnesses.push(fitness);
        }
        let sigmas = es_init_sigma(&positions, &fitnesses, problem.dim())?;
        self.parents = positions
            .into_iter()
            .zip(sigmas)
            .zip(fitnesses)
            .map(|((position, sigma), fitness)| EsIndividual { position, sigma, fitness })
            .collect();
        Ok(())
    }

    fn begin_generation(&mut self, rng: &mut RngStream) {
        let fitnesses: Vec<T> = self.parents.iter().map(|m| m.fitness).collect();
        let ranks = rank_population(&fitnesses).expect("parent fitnesses are finite");
        self.recombined.clear();
        self.rank_values.clear();
        for _ in 0..self.params.lambda {
            let (position, sigma, p, q) = es_recombine(&self.parents, &self.params, rng);
            self.recombined.push((position, sigma));
            self.rank_values.push((ranks[p] as f64 + ranks[q] as f64) / 2.0);
        }
    }

    fn offspring_count(&self) -> usize {
        self.params.lambda
    }

    fn rank_values(&self) -> Result<Vec<f64>> {
        Ok(self.rank_values.clone())
    }

    fn reproduce(&self, slot: usize, problem: &Problem<T>, rng: &mut RngStream) -> Candidate<T> {
        let (base_position, base_sigma) = &self.recombined[slot];
        let (position, sigma) = es_mutate(base_position, base_sigma, &self.params, rng);
        let position = repair_bounds(position, base_position, problem, RepairRule::Clamp);
        Candidate { position, payload: Payload::EsSigma(sigma) }
    }

    fn anchor(&self, slot: usize) -> &[T] {
        &self.recombined[slot].0
    }

    fn integrate(
        &mut self,
        outcomes: Vec<Option<Evaluated<T>>>,
        _budget: &BudgetCounter,
        _rng: &mut RngStream,
    ) {
        let mut pool = std::mem::take(&mut self.parents);
        for outcome in outcomes.into_iter().flatten() {
            let sigma = match outcome.candidate.payload {
                Payload::EsSigma(sigma) => sigma,
                _ => unreachable!("ES candidates carry step sizes"),
            };
            pool.push(EsIndividual {
                position: outcome.candidate.position,
                sigma,
                fitness: outcome.fitness,
            });
        }
        pool.sort_by(|a, b| a.fitness.partial_cmp(&b.fitness).expect("finite fitness"));
        pool.truncate(self.params.mu);
        self.parents = pool;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn init_sigma_is_distance_over_sqrt_d() {
        // two individuals at [0,0] and [3,4], best at [0,0]: sigma = 5/sqrt(2)
        let positions = vec![vec![0.0, 0.0], vec![3.0, 4.0]];
        let sigmas = es_init_sigma(&positions, &[1.0, 2.0], 2).unwrap();
        assert_eq!(sigmas[0], vec![SIGMA_FLOOR; 2]);
        let expect = 5.0 / 2.0f64.sqrt();
        assert!((sigmas[1][0] - expect).abs() < 1e-15);
        assert_eq!(sigmas[1][0], sigmas[1][1]);
    }

    #[test]
    fn init_sigma_nine_dims() {
        // distance 3 in 9 dimensions: sigma = 1
        let mut far = vec![0.0; 9];
        far[0] = 3.0;
        let sigmas = es_init_sigma(&[vec![0.0; 9], far], &[0.0f64, 1.0], 9).unwrap();
        assert!((sigmas[1][0] - 1.0).abs() < 1e-15);
    }

    fn member(position: Vec<f64>, sigma: Vec<f64>, fitness: f64) -> EsIndividual<f64> {
        EsIndividual { position, sigma, fitness }
    }

    #[test]
    fn recombine_midpoint() {
        let parents = vec![
            member(vec![0.0], vec![1.0], 0.0),
            member(vec![2.0], vec![3.0], 1.0),
        ];
        let params = EsParams::default();
        let mut rng = RngStream::from_seed(5);
        let (x, s, p, q) = es_recombine(&parents, &params, &mut rng);
        assert_ne!(p, q);
        assert_eq!(x, vec![1.0]);
        assert_eq!(s, vec![2.0]);
    }

    #[test]
    fn recombine_identical_parents_is_identity() {
        let parents = vec![
            member(vec![4.0, -1.0], vec![0.5, 0.5], 0.0),
            member(vec![4.0, -1.0], vec![0.5, 0.5], 1.0),
        ];
        let params = EsParams::default();
        let mut rng = RngStream::from_seed(6);
        let (x, _, _, _) = es_recombine(&parents, &params, &mut rng);
        assert_eq!(x, vec![4.0, -1.0]);
    }

    #[test]
    fn recombine_seeded_hand_trace() {
        let parents = vec![
            member(vec![1.0, 2.0], vec![0.1, 0.2], 0.0),
            member(vec![3.0, -4.0], vec![0.3, 0.4], 1.0),
            member(vec![-5.0, 6.0], vec![0.5, 0.6], 2.0),
            member(vec![7.0, 8.0], vec![0.7, 0.8], 3.0),
        ];
        let params = EsParams::<f64>::default();
        let mut rng = RngStream::from_seed(11);
        let mut probe = rng.clone();
        let p = probe.below(4);
        let q = probe.below_excluding(4, &[p]);
        let (x, _, rp, rq) = es_recombine(&parents, &params, &mut rng);
        assert_eq!((rp, rq), (p, q));
        for j in 0..2 {
            let expect =
                parents[p].position[j] + 0.5 * (parents[q].position[j] - parents[p].position[j]);
            assert!((x[j] - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn mutate_zero_tau_keeps_sigma() {
        let params = EsParams { tau: 0.0, tau_prime: 0.0, ..EsParams::default() };
        let mut rng = RngStream::from_seed(7);
        let (_, sigma) = es_mutate(&[0.0, 0.0], &[0.25, 0.5], &params, &mut rng);
        assert_eq!(sigma, vec![0.25, 0.5]);
    }

    #[test]
    fn mutate_sigma_stays_positive() {
        let params = EsParams::default();
        let mut rng = RngStream::from_seed(8);
        let mut sigma = vec![1e-9, 1.0, 3.0];
        for _ in 0..200 {
            let (_, s) = es_mutate(&[0.0; 3], &sigma, &params, &mut rng);
            sigma = s;
            assert!(sigma.iter().all(|&v| v > 0.0));
        }
    }

    #[test]
    fn generation_rank_values_average_parent_ranks() {
        use crate::baselines::Optimizer;
        use crate::BudgetCounter;

        let problem = crate::Problem::with_uniform_bounds("sphere", 2, -5.0, 5.0, 0.0, |x: &[f64]| {
            x.iter().map(|v| v * v).sum()
        });
        let params = EsParams { mu: 4, lambda: 6, ..EsParams::default() };
        let mut state = EsState::new(params.clone());
        let mut budget = BudgetCounter::new(1000);
        let mut rng = RngStream::from_seed(13);
        state.init(&problem, &mut budget, &mut rng).unwrap();

        let fitnesses: Vec<f64> = state.parents().iter().map(|m| m.fitness).collect();
        let parent_ranks = rank_population(&fitnesses).unwrap();
        let mut probe = rng.clone();
        state.begin_generation(&mut rng);
        let got = state.rank_values().unwrap();
        for value in &got {
            // replay this slot's p, q draws (two index draws, no more)
            let p = probe.below(4);
            let q = probe.below_excluding(4, &[p]);
            let expect = (parent_ranks[p] as f64 + parent_ranks[q] as f64) / 2.0;
            assert_eq!(*value, expect);
        }
        assert_eq!(got.len(), 6);
    }

    #[test]
    fn mutate_seeded_replay() {
        let params = EsParams::<f64>::default();
        let mut rng = RngStream::from_seed(9);
        let mut probe = rng.clone();
        let shared: f64 = probe.normal();
        let n1: f64 = probe.normal();
        let n2: f64 = probe.normal();
        let z1: f64 = probe.normal();
        let z2: f64 = probe.normal();

        let (x, s) = es_mutate(&[1.0, -1.0], &[0.5, 0.25], &params, &mut rng);
        let s1 = 0.5 * (shared + n1).exp();
        let s2 = 0.25 * (shared + n2).exp();
        assert!((s[0] - s1).abs() < 1e-15);
        assert!((s[1] - s2).abs() < 1e-15);
        assert!((x[0] - (1.0 + z1 * s1)).abs() < 1e-15);
        assert!((x[1] - (-1.0 + z2 * s2)).abs() < 1e-15);
    }
}
