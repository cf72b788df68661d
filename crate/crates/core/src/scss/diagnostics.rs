//! Instrumentation of the similarity-selection rule: per-rank total
//! distance of the selected candidates (with a random-selection control)
//! and prediction accuracy split into exploitation and exploration picks.
//! The oracle evaluations behind the accuracy counters never touch the
//! evaluation budget.

use crate::scss::PickKind;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PaCounter {
    pub correct: u64,
    pub total: u64,
}

impl PaCounter {
    pub fn accuracy(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.correct as f64 / self.total as f64
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DiagnosticsRecord {
    /// Cumulative distance of the selected candidate, bucketed by rank
    /// (index 0 holds rank 1).
    pub td_selected: Vec<f64>,
    /// Cumulative mean candidate distance per bucket: what a uniformly
    /// random selection would accumulate in expectation.
    pub td_random: Vec<f64>,
    /// Number of selection decisions per bucket.
    pub decisions: Vec<u64>,
    pub exploit: PaCounter,
    pub explore: PaCounter,
}

impl DiagnosticsRecord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn max_rank(&self) -> usize {
        self.td_selected.len()
    }

    fn bucket(&mut self, rank: f64) -> usize {
        let bucket = (rank.ceil() as usize).max(1);
        if bucket > self.td_selected.len() {
            self.td_selected.resize(bucket, 0.0);
            self.td_random.resize(bucket, 0.0);
            self.decisions.resize(bucket, 0);
        }
        bucket - 1
    }

    /// Record one similarity-selection decision.
    pub fn observe(
        &mut self,
        rank: f64,
        distances: &[f64],
        chosen: usize,
        kind: PickKind,
        chose_fittest: bool,
    ) {
        self.observe_distance_only(rank, distances, chosen);
        let counter = match kind {
            PickKind::Closest => &mut self.exploit,
            PickKind::Farthest => &mut self.explore,
        };
        counter.total += 1;
        if chose_fittest {
            counter.correct += 1;
        }
    }

    /// Distance bookkeeping without a prediction-accuracy sample (used by
    /// the evaluate-everything variant, which makes no distance-based
    /// prediction).
    pub fn observe_distance_only(&mut self, rank: f64, distances: &[f64], chosen: usize) {
        let bucket = self.bucket(rank);
        self.td_selected[bucket] += distances[chosen];
        self.td_random[bucket] += distances.iter().sum::<f64>() / distances.len() as f64;
        self.decisions[bucket] += 1;
    }

    /// Fold another record into this one (used to aggregate runs).
    pub fn merge(&mut self, other: &DiagnosticsRecord) {
        if other.td_selected.len() > self.td_selected.len() {
            self.td_selected.resize(other.td_selected.len(), 0.0);
            self.td_random.resize(other.td_random.len(), 0.0);
            self.decisions.resize(other.decisions.len(), 0);
        }
        for (i, &v) in other.td_selected.iter().enumerate() {
            self.td_selected[i] += v;
        }
        for (i, &v) in other.td_random.iter().enumerate() {
            self.td_random[i] += v;
        }
        for (i, &v) in other.decisions.iter().enumerate() {
            self.decisions[i] += v;
        }
        self.exploit.correct += other.exploit.correct;
        self.exploit.total += other.exploit.total;
        self.explore.correct += other.explore.correct;
        self.explore.total += other.explore.total;
    }
}
