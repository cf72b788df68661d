//! Nonparametric tests for paired run errors: two-sided Wilcoxon
//! signed-rank (exact permutation distribution for small samples, normal
//! approximation with tie correction above) and Friedman mean ranks.

use crate::error::{Error, Result};

/// Effective sample sizes up to this use the exact permutation null.
pub const EXACT_LIMIT: usize = 25;

/// Outcome mark of a paired comparison, from the perspective of the first
/// sample: `Minus` means the first algorithm is significantly worse (its
/// errors are larger), `Plus` significantly better.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Minus,
    Equal,
    Plus,
}

impl Verdict {
    pub fn symbol(&self) -> char {
        match self {
            Verdict::Minus => '-',
            Verdict::Equal => '=',
            Verdict::Plus => '+',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WilcoxonOutcome {
    pub verdict: Verdict,
    pub p_value: f64,
    pub w_plus: f64,
    pub w_minus: f64,
    /// Pairs remaining after zero differences are dropped.
    pub n_effective: usize,
}

/// Two-sided Wilcoxon signed-rank test on paired samples.
///
/// Zero differences are dropped; tied absolute differences receive averaged
/// ranks. All-zero differences yield `Equal` with p = 1.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64], alpha: f64) -> Result<WilcoxonOutcome> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    if a.len() < 2 {
        return Err(Error::IncompatibleInputs(
            "paired test needs at least two runs".into(),
        ));
    }
    let diffs: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| x - y)
        .filter(|d| *d != 0.0)
        .collect();
    let n = diffs.len();
    if n == 0 {
        return Ok(WilcoxonOutcome {
            verdict: Verdict::Equal,
            p_value: 1.0,
            w_plus: 0.0,
            w_minus: 0.0,
            n_effective: 0,
        });
    }

    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = average_ranks(&abs);
    let w_plus: f64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| *r)
        .sum();
    let total = n as f64 * (n as f64 + 1.0) / 2.0;
    let w_minus = total - w_plus;

    let p_value = if n <= EXACT_LIMIT {
        exact_two_sided_p(&ranks, w_plus)
    } else {
        approx_two_sided_p(&abs, &ranks, w_plus)
    };

    let verdict = if p_value < alpha && w_plus != w_minus {
        // larger rank sum on the positive side means a's errors dominate
        if w_plus > w_minus {
            Verdict::Minus
        } else {
            Verdict::Plus
        }
    } else {
        Verdict::Equal
    };
    Ok(WilcoxonOutcome { verdict, p_value, w_plus, w_minus, n_effective: n })
}

/// 1-based ranks with tied values sharing the average of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).expect("finite values"));
    let mut ranks = vec![0.0; n];
    let mut pos = 0;
    while pos < n {
        let mut end = pos;
        while end + 1 < n && values[order[end + 1]] == values[order[pos]] {
            end += 1;
        }
        let avg = (pos + 1 + end + 1) as f64 / 2.0;
        for &idx in &order[pos..=end] {
            ranks[idx] = avg;
        }
        pos = end + 1;
    }
    ranks
}

/// Exact two-sided p: enumerate the distribution of W+ over all sign
/// assignments by dynamic programming over doubled ranks (ties make ranks
/// half-integral), then double the smaller tail.
fn exact_two_sided_p(ranks: &[f64], w_plus: f64) -> f64 {
    let doubled: Vec<u64> = ranks.iter().map(|r| (r * 2.0).round() as u64).collect();
    let max_sum: u64 = doubled.iter().sum();
    let mut counts = vec![0.0f64; max_sum as usize + 1];
    counts[0] = 1.0;
    for &r in &doubled {
        for s in (r..=max_sum).rev() {
            let from = counts[(s - r) as usize];
            if from > 0.0 {
                counts[s as usize] += from;
            }
        }
    }
    let total: f64 = 2f64.powi(ranks.len() as i32);
    let w2 = (w_plus * 2.0).round() as usize;
    let tail_ge: f64 = counts[w2..].iter().sum::<f64>() / total;
    let tail_le: f64 = counts[..=w2].iter().sum::<f64>() / total;
    (2.0 * tail_ge.min(tail_le)).min(1.0)
}

/// Normal approximation with tie correction and continuity correction.
fn approx_two_sided_p(abs: &[f64], ranks: &[f64], w_plus: f64) -> f64 {
    let n = ranks.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut variance = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
    // tie correction: subtract sum(t^3 - t)/48 over tie groups
    let mut sorted = abs.to_vec();
    sorted.sort_by(|x, y| x.partial_cmp(y).expect("finite values"));
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        if t > 1.0 {
            variance -= (t * t * t - t) / 48.0;
        }
        i = j + 1;
    }
    if variance <= 0.0 {
        return 1.0;
    }
    let delta = w_plus - mean;
    let corrected = delta.abs() - 0.5;
    if corrected <= 0.0 {
        return 1.0;
    }
    let z = corrected / variance.sqrt();
    2.0 * (1.0 - standard_normal_cdf(z))
}

/// Phi(z) via the Abramowitz-Stegun 7.1.26 erf approximation (|err| < 1.5e-7).
pub fn standard_normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z / std::f64::consts::SQRT_2))
}

fn erf(x: f64) -> f64 {
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let x = x.abs();
    let t = 1.0 / (1.0 + 0.3275911 * x);
    let poly = t
        * (0.254829592
            + t * (-0.284496736 + t * (1.421413741 + t * (-1.453152027 + t * 1.061405429))));
    sign * (1.0 - poly * (-x * x).exp())
}

/// Friedman mean ranks over a matrix of per-function scores
/// (`scores[algorithm][function]`, lower is better). Ranks are averaged on
/// ties; the result is the mean rank of each algorithm across functions.
pub fn friedman_ranks(scores: &[Vec<f64>]) -> Result<Vec<f64>> {
    let k = scores.len();
    if k < 2 {
        return Err(Error::IncompatibleInputs("Friedman needs >= 2 algorithms".into()));
    }
    let n_functions = scores[0].len();
    if n_functions < 2 {
        return Err(Error::IncompatibleInputs("Friedman needs >= 2 functions".into()));
    }
    if scores.iter().any(|row| row.len() != n_functions) {
        return Err(Error::IncompatibleInputs("ragged score matrix".into()));
    }
    let mut sums = vec![0.0; k];
    for f in 0..n_functions {
        let column: Vec<f64> = scores.iter().map(|row| row[f]).collect();
        for (algo, r) in average_ranks(&column).into_iter().enumerate() {
            sums[algo] += r;
        }
    }
    Ok(sums.into_iter().map(|s| s / n_functions as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identical_samples_are_equal_with_p_one() {
        let a = [1.0, 2.0, 3.0];
        let out = wilcoxon_signed_rank(&a, &a, 0.05).unwrap();
        assert_eq!(out.verdict, Verdict::Equal);
        assert_eq!(out.p_value, 1.0);
        assert_eq!(out.n_effective, 0);
    }

    #[test]
    fn five_positive_differences_not_significant() {
        let a = [2.0, 3.0, 4.0, 5.0, 6.0];
        let b = [1.0, 1.0, 1.0, 1.0, 1.0];
        let out = wilcoxon_signed_rank(&a, &b, 0.05).unwrap();
        assert_eq!(out.w_plus, 15.0);
        assert!((out.p_value - 0.0625).abs() < 1e-12);
        assert_eq!(out.verdict, Verdict::Equal);
    }

    #[test]
    fn ten_positive_differences_significant() {
        let a: Vec<f64> = (1..=10).map(|i| i as f64 + 10.0).collect();
        let b: Vec<f64> = (1..=10).map(|i| i as f64).collect();
        let out = wilcoxon_signed_rank(&a, &b, 0.05).unwrap();
        assert!((out.p_value - 2.0 / 1024.0).abs() < 1e-12);
        // a's errors are larger: a significantly worse
        assert_eq!(out.verdict, Verdict::Minus);
        let swapped = wilcoxon_signed_rank(&b, &a, 0.05).unwrap();
        assert_eq!(swapped.verdict, Verdict::Plus);
        assert_eq!(swapped.p_value, out.p_value);
    }

    #[test]
    fn averaged_ranks_on_ties() {
        assert_eq!(average_ranks(&[5.0, 1.0, 5.0]), vec![2.5, 1.0, 2.5]);
        assert_eq!(average_ranks(&[2.0, 2.0, 2.0]), vec![2.0, 2.0, 2.0]);
    }

    /// Brute-force oracle: enumerate all 2^n sign assignments directly.
    fn enumeration_p(diffs: &[f64], w_obs: f64) -> f64 {
        let ranks = average_ranks(&diffs.iter().map(|d| d.abs()).collect::<Vec<_>>());
        let n = diffs.len();
        let mut ge = 0u64;
        let mut le = 0u64;
        for mask in 0u64..(1 << n) {
            let w: f64 = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| ranks[j]).sum();
            if w >= w_obs - 1e-9 {
                ge += 1;
            }
            if w <= w_obs + 1e-9 {
                le += 1;
            }
        }
        let total = (1u64 << n) as f64;
        (2.0 * (ge.min(le) as f64) / total).min(1.0)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn exact_p_matches_sign_enumeration(
            raw in proptest::collection::vec(-5i32..=5, 2..=10),
        ) {
            // build pairs whose differences are the raw integers (ties and
            // zeros included)
            let a: Vec<f64> = raw.iter().map(|&d| d as f64).collect();
            let b = vec![0.0; a.len()];
            let out = wilcoxon_signed_rank(&a, &b, 0.05).unwrap();
            if out.n_effective == 0 {
                prop_assert_eq!(out.p_value, 1.0);
            } else {
                let diffs: Vec<f64> = a.iter().copied().filter(|d| *d != 0.0).collect();
                let oracle = enumeration_p(&diffs, out.w_plus);
                prop_assert!((out.p_value - oracle).abs() < 1e-9,
                    "impl {} vs oracle {}", out.p_value, oracle);
            }
        }

        #[test]
        fn antisymmetry(
            a in proptest::collection::vec(0.0..10.0f64, 4..12),
            b in proptest::collection::vec(0.0..10.0f64, 4..12),
        ) {
            let n = a.len().min(b.len());
            let x = &a[..n];
            let y = &b[..n];
            let xy = wilcoxon_signed_rank(x, y, 0.05).unwrap();
            let yx = wilcoxon_signed_rank(y, x, 0.05).unwrap();
            prop_assert!((xy.p_value - yx.p_value).abs() < 1e-12);
            let flipped = match xy.verdict {
                Verdict::Minus => Verdict::Plus,
                Verdict::Equal => Verdict::Equal,
                Verdict::Plus => Verdict::Minus,
            };
            prop_assert_eq!(yx.verdict, flipped);
        }

        #[test]
        fn exact_and_normal_agree_above_twenty(
            raw in proptest::collection::vec(1..1000i32, 21..=25),
            signs in proptest::collection::vec(proptest::bool::ANY, 25),
        ) {
            let diffs: Vec<f64> = raw.iter().zip(&signs)
                .map(|(&v, &s)| if s { v as f64 } else { -(v as f64) })
                .collect();
            let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
            let ranks = average_ranks(&abs);
            let w_plus: f64 = diffs.iter().zip(&ranks)
                .filter(|(d, _)| **d > 0.0).map(|(_, r)| *r).sum();
            let exact = exact_two_sided_p(&ranks, w_plus);
            let approx = approx_two_sided_p(&abs, &ranks, w_plus);
            prop_assert!((exact - approx).abs() < 0.01,
                "n={} exact={} approx={}", diffs.len(), exact, approx);
        }
    }

    #[test]
    fn friedman_dominating_algorithm() {
        let scores = vec![vec![1.0, 1.0, 1.0], vec![2.0, 2.0, 2.0]];
        assert_eq!(friedman_ranks(&scores).unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn friedman_full_ties_give_average_rank() {
        let scores = vec![vec![3.0, 3.0], vec![3.0, 3.0], vec![3.0, 3.0]];
        assert_eq!(friedman_ranks(&scores).unwrap(), vec![2.0, 2.0, 2.0]);
    }

    #[test]
    fn friedman_three_by_four_hand_ranked() {
        // functions are columns; hand ranks per column:
        // col0: 1,2,3  col1: 2,1,3  col2: 1.5,1.5,3  col3: 3,1,2
        let scores = vec![
            vec![0.1, 5.0, 2.0, 9.0],
            vec![0.2, 4.0, 2.0, 1.0],
            vec![0.3, 6.0, 3.0, 5.0],
        ];
        let ranks = friedman_ranks(&scores).unwrap();
        let expect = [
            (1.0 + 2.0 + 1.5 + 3.0) / 4.0,
            (2.0 + 1.0 + 1.5 + 1.0) / 4.0,
            (3.0 + 3.0 + 3.0 + 2.0) / 4.0,
        ];
        for (r, e) in ranks.iter().zip(expect) {
            assert!((r - e).abs() < 1e-12);
        }
        // mean ranks always sum to k(k+1)/2
        assert!((ranks.iter().sum::<f64>() - 6.0).abs() < 1e-12);
    }
}
