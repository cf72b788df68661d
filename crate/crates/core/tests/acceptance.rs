//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `cargo test -- --nocapture`).

use scss_core::baselines::de::{DeParams, DeState};
use scss_core::baselines::es::{es_init_sigma, es_mutate, EsParams, EsState};
use scss_core::baselines::jade::JadeParams;
use scss_core::baselines::lshade::LshadeParams;
use scss_core::baselines::pso::{PsoParams, PsoState};
use scss_core::baselines::shade::ShadeParams;
use scss_core::baselines::{lehmer_mean, Optimizer};
use scss_core::bench::csv::{convergence_csv, runs_csv, summary_csv};
use scss_core::bench::{
    average_ranks, run_experiment, run_one, wilcoxon_signed_rank, AlgorithmConfig, BaseFunction,
    BaselineSpec, BenchFunction, ExperimentSpec, FunctionSpec, Verdict, DEFAULT_ERROR_FLOOR,
};
use scss_core::scss::{
    euclidean_distance, run_baseline, run_scss, scss_generation, select_scheme1, select_scheme2,
    select_variant_oppo, DiagnosticsRecord, PickKind, ScssConfig, SelectionScheme,
};
use scss_core::{BudgetCounter, Problem, RngStream, RunRecord};

fn report(criterion: &str, ok: bool) {
    println!("acceptance {criterion}: {}", if ok { "PASS" } else { "FAIL" });
}

fn sphere_and_rastrigin(dim: usize) -> Vec<Problem<f64>> {
    let mut rng = RngStream::from_seed(20_240_101);
    vec![
        BenchFunction::make(BaseFunction::Sphere, dim, true, false, &mut rng).to_problem(),
        BenchFunction::make(BaseFunction::Rastrigin, dim, true, false, &mut rng).to_problem(),
    ]
}

fn baseline_roster(dim: usize) -> Vec<(&'static str, BaselineSpec<f64>)> {
    vec![
        ("de", BaselineSpec::De(DeParams::default())),
        ("es", BaselineSpec::Es(EsParams::default())),
        ("pso", BaselineSpec::Pso(PsoParams::default())),
        ("jade", BaselineSpec::Jade(JadeParams::default())),
        ("shade", BaselineSpec::Shade(ShadeParams::default())),
        (
            "lshade",
            BaselineSpec::Lshade(LshadeParams { np_init: Some(18 * dim), ..LshadeParams::default() }),
        ),
    ]
}

// 1. With M = 1 every wrapped baseline reproduces the unwrapped run
//    bit for bit, for every selection scheme.
#[test]
fn acceptance_01_m1_degeneration_is_bit_exact() {
    let dim = 10;
    let budget_limit = 20_000u64;
    let schemes = [
        SelectionScheme::Scheme1 { gd: 1.0 },
        SelectionScheme::Scheme1 { gd: 0.4 },
        SelectionScheme::Scheme2,
        SelectionScheme::VariantOppo,
        SelectionScheme::VariantMeval,
    ];
    let problems = sphere_and_rastrigin(dim);
    let mut ok = true;
    for (name, baseline) in baseline_roster(dim) {
        for problem in &problems {
            for seed in [11u64, 22, 33, 44, 55] {
                let plain = AlgorithmConfig {
                    name: name.to_string(),
                    baseline: baseline.clone(),
                    scss: None,
                };
                let (reference, _) =
                    run_one(&plain, problem, seed, budget_limit, DEFAULT_ERROR_FLOOR, false)
                        .unwrap();
                for scheme in schemes {
                    let wrapped = AlgorithmConfig {
                        name: name.to_string(),
                        baseline: baseline.clone(),
                        scss: Some(ScssConfig::new(1, scheme)),
                    };
                    let (record, _) =
                        run_one(&wrapped, problem, seed, budget_limit, DEFAULT_ERROR_FLOOR, false)
                            .unwrap();
                    if record != reference {
                        ok = false;
                        eprintln!(
                            "M=1 mismatch: {name} on {} seed {seed} scheme {scheme:?}",
                            problem.name()
                        );
                    }
                }
            }
        }
    }
    report("01 m1-degeneration", ok);
    assert!(ok);
}

// 2. FE accounting: a full generation of the similarity-selection wrapper
//    costs exactly one evaluation per slot regardless of M; the
//    evaluate-everything variant costs M per slot.
#[test]
fn acceptance_02_fe_accounting() {
    let problem = sphere_and_rastrigin(5).remove(0);
    let mut ok = true;
    for m in [2usize, 3, 5, 10] {
        for (scheme, factor) in [
            (SelectionScheme::Scheme1 { gd: 0.5 }, 1),
            (SelectionScheme::Scheme2, 1),
            (SelectionScheme::VariantOppo, 1),
            (SelectionScheme::VariantMeval, m),
        ] {
            // generous budget so generations complete
            let mut budget = BudgetCounter::new(1_000_000);
            let mut rng = RngStream::from_seed(5);
            let mut state = DeState::new(DeParams { np: 30, ..DeParams::default() });
            let config = ScssConfig::new(m, scheme);
            state.init(&problem, &mut budget, &mut rng).unwrap();
            let before = budget.consumed();
            scss_generation(&mut state, &config, &problem, &mut budget, &mut rng, None).unwrap();
            let spent = budget.consumed() - before;
            let expect = (30 * factor) as u64;
            if spent != expect {
                ok = false;
                eprintln!("m={m} scheme={scheme:?}: consumed {spent}, expected {expect}");
            }
        }
    }
    // the ES wrapper spends lambda per generation
    let mut budget = BudgetCounter::new(1_000_000);
    let mut rng = RngStream::from_seed(6);
    let mut es = EsState::new(EsParams::<f64>::default());
    es.init(&problem, &mut budget, &mut rng).unwrap();
    let before = budget.consumed();
    let config = ScssConfig::new(3, SelectionScheme::Scheme1 { gd: 1.0 });
    scss_generation(&mut es, &config, &problem, &mut budget, &mut rng, None).unwrap();
    if budget.consumed() - before != 100 {
        ok = false;
        eprintln!("ES generation consumed {}", budget.consumed() - before);
    }
    report("02 fe-accounting", ok);
    assert!(ok);
}

/// Literal transliteration of the selection rules used as the oracle for
/// criterion 3: explicit first-min / first-max scans and the straight
/// branch conditions.
mod rule_oracle {
    pub fn first_min(d: &[f64]) -> usize {
        let mut best = 0;
        for i in 1..d.len() {
            if d[i] < d[best] {
                best = i;
            }
        }
        best
    }

    pub fn first_max(d: &[f64]) -> usize {
        let mut best = 0;
        for i in 1..d.len() {
            if d[i] > d[best] {
                best = i;
            }
        }
        best
    }

    pub fn scheme1(rank: f64, n: usize, gd: f64, d: &[f64]) -> usize {
        if rank <= (n as f64 * gd).ceil() {
            first_min(d)
        } else {
            first_max(d)
        }
    }

    pub fn scheme2(rank: f64, n: usize, u: f64, d: &[f64]) -> usize {
        if u > rank / n as f64 {
            first_min(d)
        } else {
            first_max(d)
        }
    }

    pub fn oppo(rank: f64, n: usize, u: f64, d: &[f64]) -> usize {
        if u > rank / n as f64 {
            first_max(d)
        } else {
            first_min(d)
        }
    }
}

// 3. Exhaustive check of the selection rules against the rule oracle for
//    NP <= 8, M <= 4, with tied distances included.
#[test]
fn acceptance_03_ss_rule_exhaustive() {
    let gds = [0.0, 0.13, 0.25, 0.5, 0.77, 1.0];
    let us = [0.01, 0.2, 0.5, 0.8, 0.99];
    let values = [0.0, 1.0, 2.0];
    let mut checked = 0u64;
    let mut ok = true;

    for np in 1..=8usize {
        for m in 1..=4usize {
            // all M-tuples over the value grid (ties included)
            let mut tuples = vec![Vec::new()];
            for _ in 0..m {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t: Vec<f64>| {
                        values.iter().map(move |&v| {
                            let mut next = t.clone();
                            next.push(v);
                            next
                        })
                    })
                    .collect();
            }
            for d in &tuples {
                for rank in 1..=np {
                    let rank = rank as f64;
                    for &gd in &gds {
                        let got = select_scheme1(rank, np, gd, d).0;
                        if got != rule_oracle::scheme1(rank, np, gd, d) {
                            ok = false;
                        }
                        checked += 1;
                    }
                    for &u in &us {
                        if select_scheme2(rank, np, u, d).0 != rule_oracle::scheme2(rank, np, u, d)
                        {
                            ok = false;
                        }
                        if select_variant_oppo(rank, np, u, d).0
                            != rule_oracle::oppo(rank, np, u, d)
                        {
                            ok = false;
                        }
                        // complementarity: same inputs, swapped extremes
                        let s2 = select_scheme2(rank, np, u, d);
                        let op = select_variant_oppo(rank, np, u, d);
                        if s2.1 == op.1 {
                            ok = false;
                        }
                        checked += 2;
                    }
                    // scale invariance across two orders of magnitude
                    let scaled: Vec<f64> = d.iter().map(|v| v * 137.0).collect();
                    if select_scheme1(rank, np, 0.5, d).0 != select_scheme1(rank, np, 0.5, &scaled).0
                    {
                        ok = false;
                    }
                }
            }
        }
    }
    report("03 ss-rule-exhaustive", ok);
    println!("  ({checked} rule decisions checked)");
    assert!(ok);
}

// 4. Scheme 2 picks the closest candidate with empirical frequency
//    1 - rank/NP, within 3 binomial sigma over 1e5 draws.
#[test]
fn acceptance_04_scheme2_pick_frequency() {
    let np = 100usize;
    let trials = 100_000u32;
    let mut rng = RngStream::from_seed(424_242);
    let distances = [1.0, 2.0];
    let mut ok = true;
    for rank in [1usize, 50, 100] {
        let mut closest = 0u32;
        for _ in 0..trials {
            let u: f64 = rng.uniform();
            if select_scheme2(rank as f64, np, u, &distances).1 == PickKind::Closest {
                closest += 1;
            }
        }
        let p = 1.0 - rank as f64 / np as f64;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        let observed = closest as f64 / trials as f64;
        if (observed - p).abs() > 3.0 * sigma {
            ok = false;
            eprintln!("rank {rank}: observed {observed}, expected {p} (3sigma {})", 3.0 * sigma);
        }
    }
    report("04 scheme2-pick-frequency", ok);
    assert!(ok);
}

// 5. Wilcoxon exact p-values match full sign enumeration for n <= 10, and
//    the two pinned cases hold.
#[test]
fn acceptance_05_wilcoxon_oracle() {
    let mut ok = true;

    // pinned: n = 5 all positive -> p = 2/32, not significant
    let a5 = [2.0, 3.0, 4.0, 5.0, 6.0];
    let b5 = [1.0; 5];
    let out5 = wilcoxon_signed_rank(&a5, &b5, 0.05).unwrap();
    ok &= (out5.p_value - 0.0625).abs() < 1e-12 && out5.verdict == Verdict::Equal;

    // pinned: n = 10 all positive -> p = 2/1024, significant
    let a10: Vec<f64> = (1..=10).map(|i| 10.0 + i as f64).collect();
    let b10: Vec<f64> = (1..=10).map(|i| i as f64).collect();
    let out10 = wilcoxon_signed_rank(&a10, &b10, 0.05).unwrap();
    ok &= (out10.p_value - 2.0 / 1024.0).abs() < 1e-12 && out10.verdict == Verdict::Minus;
    ok &= wilcoxon_signed_rank(&b10, &a10, 0.05).unwrap().verdict == Verdict::Plus;

    // enumeration oracle over every n <= 10, signed magnitude sets with
    // ties, deterministic pseudo-random instances
    let mut rng = RngStream::from_seed(99);
    for n in 2..=10usize {
        for _ in 0..40 {
            let a: Vec<f64> = (0..n).map(|_| (rng.below(7) as f64) - 3.0).collect();
            let b = vec![0.0; n];
            let out = wilcoxon_signed_rank(&a, &b, 0.05).unwrap();
            let diffs: Vec<f64> = a.iter().copied().filter(|d| *d != 0.0).collect();
            if diffs.is_empty() {
                ok &= out.p_value == 1.0 && out.verdict == Verdict::Equal;
                continue;
            }
            let ranks = average_ranks(&diffs.iter().map(|d| d.abs()).collect::<Vec<_>>());
            let mut ge = 0u64;
            let mut le = 0u64;
            let total = 1u64 << diffs.len();
            for mask in 0..total {
                let w: f64 = (0..diffs.len())
                    .filter(|j| mask >> j & 1 == 1)
                    .map(|j| ranks[j])
                    .sum();
                if w >= out.w_plus - 1e-9 {
                    ge += 1;
                }
                if w <= out.w_plus + 1e-9 {
                    le += 1;
                }
            }
            let oracle = (2.0 * (ge.min(le) as f64) / total as f64).min(1.0);
            if (out.p_value - oracle).abs() > 1e-9 {
                ok = false;
                eprintln!("n={n}: impl {} vs enumeration {}", out.p_value, oracle);
            }
        }
    }
    report("05 wilcoxon-oracle", ok);
    assert!(ok);
}

fn desk_functions() -> Vec<FunctionSpec> {
    [
        BaseFunction::Sphere,
        BaseFunction::Rosenbrock,
        BaseFunction::Rastrigin,
        BaseFunction::Ackley,
        BaseFunction::Griewank,
        BaseFunction::Schwefel226,
    ]
    .into_iter()
    .map(|base| FunctionSpec { base, shifted: true, rotated: false })
    .collect()
}

fn workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

// 6. Direction of improvement, classic DE: the wrapper wins at least half
//    the desk suite and loses at most once.
#[test]
fn acceptance_06_direction_classic_de() {
    let spec = ExperimentSpec::<f64> {
        algorithms: vec![
            AlgorithmConfig {
                name: "de".into(),
                baseline: BaselineSpec::De(DeParams::default()),
                scss: None,
            },
            AlgorithmConfig {
                name: "scss-de".into(),
                baseline: BaselineSpec::De(DeParams::default()),
                scss: Some(ScssConfig::new(2, SelectionScheme::Scheme1 { gd: 1.0 })),
            },
        ],
        functions: desk_functions(),
        dim: 10,
        runs: 25,
        budget_multiplier: 10_000,
        error_floor: DEFAULT_ERROR_FLOOR,
        master_seed: 2024,
        diagnostics: false,
    };
    let result = run_experiment(&spec, workers()).unwrap();
    let (minus, equal, plus) = result.comparison.counts[0];
    let ok = minus >= 3 && plus <= 1;
    report("06 direction-classic-de", ok);
    println!("  (de vs scss-de  -/=/+ : {minus}/{equal}/{plus})");
    if !ok {
        // full table for the record: three functions saturate below the
        // error floor for both sides (forced ties) and rosenbrock favors
        // plain DE at this budget, capping the attainable wins at two
        let cmp = &result.comparison;
        for (f, function) in cmp.functions.iter().enumerate() {
            eprintln!(
                "  {function:14} de {:10.3e} ({:9.3e})  scss-de {:10.3e} ({:9.3e})  [{}]",
                cmp.mean[0][f],
                cmp.std_dev[0][f],
                cmp.mean[1][f],
                cmp.std_dev[1][f],
                cmp.verdicts[0][f].symbol()
            );
        }
    }
    assert!(ok, "-/=/+ was {minus}/{equal}/{plus}");
}

// 7. Direction of improvement, adaptive DE: no significant net
//    degradation of JADE under the wrapper.
#[test]
fn acceptance_07_direction_adaptive_jade() {
    let spec = ExperimentSpec::<f64> {
        algorithms: vec![
            AlgorithmConfig {
                name: "jade".into(),
                baseline: BaselineSpec::Jade(JadeParams::default()),
                scss: None,
            },
            AlgorithmConfig {
                name: "scss-jade".into(),
                baseline: BaselineSpec::Jade(JadeParams::default()),
                scss: Some(ScssConfig::new(2, SelectionScheme::Scheme2)),
            },
        ],
        functions: desk_functions(),
        dim: 10,
        runs: 25,
        budget_multiplier: 10_000,
        error_floor: DEFAULT_ERROR_FLOOR,
        master_seed: 2025,
        diagnostics: false,
    };
    let result = run_experiment(&spec, workers()).unwrap();
    let (minus, equal, plus) = result.comparison.counts[0];
    let ok = plus <= 1;
    report("07 direction-adaptive-jade", ok);
    println!("  (jade vs scss-jade  -/=/+ : {minus}/{equal}/{plus})");
    assert!(ok, "-/=/+ was {minus}/{equal}/{plus}");
}

// 8. Diagnostics direction: under Scheme 2 on SHADE the selected distance
//    grows with rank (top half below bottom half); under Scheme 1 GD = 1
//    on DE the selected distance sits below the random-pick control in
//    every decile.
#[test]
fn acceptance_08_diagnostics_direction() {
    let dim = 10;
    let mut rng = RngStream::from_seed(77);
    let problem =
        BenchFunction::<f64>::make(BaseFunction::Rastrigin, dim, true, false, &mut rng)
            .to_problem();

    // SHADE + Scheme 2
    let mut merged = DiagnosticsRecord::new();
    for seed in [1u64, 2, 3] {
        let config = AlgorithmConfig {
            name: "scss-shade".into(),
            baseline: BaselineSpec::Shade(ShadeParams::default()),
            scss: Some(ScssConfig::new(2, SelectionScheme::Scheme2)),
        };
        let (_, diag) = run_one(&config, &problem, seed, 50_000, DEFAULT_ERROR_FLOOR, true).unwrap();
        merged.merge(&diag.unwrap());
    }
    let np = merged.max_rank();
    let half = np / 2;
    let mean_of = |rec: &DiagnosticsRecord, range: std::ops::Range<usize>| {
        let mut td = 0.0;
        let mut n = 0u64;
        for i in range {
            td += rec.td_selected[i];
            n += rec.decisions[i];
        }
        td / n as f64
    };
    let top = mean_of(&merged, 0..half);
    let bottom = mean_of(&merged, half..np);
    let shade_ok = top < bottom;
    if !shade_ok {
        eprintln!("shade scheme2: top-half mean {top} !< bottom-half mean {bottom}");
    }

    // DE + Scheme 1, GD = 1: selected below the random-selection control
    // in every rank decile
    let mut de_diag = DiagnosticsRecord::new();
    for seed in [4u64, 5, 6] {
        let config = AlgorithmConfig {
            name: "scss-de".into(),
            baseline: BaselineSpec::De(DeParams::default()),
            scss: Some(ScssConfig::new(2, SelectionScheme::Scheme1 { gd: 1.0 })),
        };
        let (_, diag) = run_one(&config, &problem, seed, 50_000, DEFAULT_ERROR_FLOOR, true).unwrap();
        de_diag.merge(&diag.unwrap());
    }
    let mut de_ok = true;
    let deciles = 10;
    let per = de_diag.max_rank() / deciles;
    for d in 0..deciles {
        let lo = d * per;
        let hi = if d == deciles - 1 { de_diag.max_rank() } else { (d + 1) * per };
        let (mut sel, mut rnd) = (0.0, 0.0);
        for i in lo..hi {
            sel += de_diag.td_selected[i];
            rnd += de_diag.td_random[i];
        }
        if !(sel < rnd) {
            de_ok = false;
            eprintln!("decile {d}: selected {sel} !< random control {rnd}");
        }
    }

    let ok = shade_ok && de_ok;
    report("08 diagnostics-direction", ok);
    assert!(ok);
}

// 9. Numerical invariants: metric axioms, step-size laws, elitism
//    monotonicity, Lehmer hand cases.
#[test]
fn acceptance_09_numerical_invariants() {
    let mut ok = true;
    let mut rng = RngStream::from_seed(31);

    // distance axioms vs a naive index-loop oracle, 1e-12 relative
    for _ in 0..200 {
        let x: Vec<f64> = (0..30).map(|_| rng.uniform_in(-100.0, 100.0)).collect();
        let y: Vec<f64> = (0..30).map(|_| rng.uniform_in(-100.0, 100.0)).collect();
        let z: Vec<f64> = (0..30).map(|_| rng.uniform_in(-100.0, 100.0)).collect();
        let d_xy = euclidean_distance(&x, &y).unwrap();
        let mut oracle = 0.0;
        for j in 0..30 {
            oracle += (x[j] - y[j]) * (x[j] - y[j]);
        }
        let oracle = oracle.sqrt();
        ok &= ((d_xy - oracle) / oracle.max(1e-300)).abs() < 1e-12;
        ok &= euclidean_distance(&y, &x).unwrap() == d_xy;
        ok &= euclidean_distance(&x, &x).unwrap() == 0.0;
        let d_xz = euclidean_distance(&x, &z).unwrap();
        let d_zy = euclidean_distance(&z, &y).unwrap();
        ok &= d_xy <= d_xz + d_zy + 1e-12;
    }

    // initial sigma law and positivity after lognormal mutation
    let positions = vec![vec![0.0, 0.0], vec![3.0, 4.0]];
    let sigmas = es_init_sigma(&positions, &[0.0f64, 1.0], 2).unwrap();
    ok &= (sigmas[1][0] - 5.0 / 2.0f64.sqrt()).abs() < 1e-15;
    let params = EsParams::<f64>::default();
    let mut sigma = vec![1.0, 1e-6, 42.0];
    for _ in 0..500 {
        let (_, s) = es_mutate(&[0.0; 3], &sigma, &params, &mut rng);
        ok &= s.iter().all(|&v| v > 0.0);
        sigma = s;
    }

    // Lehmer hand cases
    ok &= (lehmer_mean(&[0.2f64, 0.4]) - 1.0 / 3.0).abs() < 1e-15;
    ok &= (lehmer_mean(&[0.5f64]) - 0.5).abs() < 1e-15;

    // elitism monotonicity over seeded runs
    let problem = sphere_and_rastrigin(6).remove(1);

    // DE family: per-slot survivor fitness never increases
    let mut de = DeState::new(DeParams { np: 30, ..DeParams::default() });
    let mut budget = BudgetCounter::new(10_000);
    let mut de_rng = RngStream::from_seed(7);
    de.init(&problem, &mut budget, &mut de_rng).unwrap();
    let mut previous: Vec<f64> =
        de.population().iter().map(|m| m.fitness_known()).collect();
    for _ in 0..50 {
        scss_generation(
            &mut de,
            &ScssConfig::new(2, SelectionScheme::Scheme2),
            &problem,
            &mut budget,
            &mut de_rng,
            None,
        )
        .unwrap();
        let current: Vec<f64> = de.population().iter().map(|m| m.fitness_known()).collect();
        ok &= current.iter().zip(&previous).all(|(c, p)| c <= p);
        previous = current;
    }

    // ES: best parent fitness never increases
    let mut es = EsState::new(EsParams::<f64>::default());
    let mut budget = BudgetCounter::new(30_000);
    let mut es_rng = RngStream::from_seed(8);
    es.init(&problem, &mut budget, &mut es_rng).unwrap();
    let mut best = es.parents().iter().map(|m| m.fitness).fold(f64::INFINITY, f64::min);
    for _ in 0..50 {
        scss_generation(
            &mut es,
            &ScssConfig::new(2, SelectionScheme::Scheme1 { gd: 1.0 }),
            &problem,
            &mut budget,
            &mut es_rng,
            None,
        )
        .unwrap();
        let now = es.parents().iter().map(|m| m.fitness).fold(f64::INFINITY, f64::min);
        ok &= now <= best;
        best = now;
    }

    // PSO: pbest and gbest never increase
    let mut pso = PsoState::new(PsoParams::<f64>::default());
    let mut budget = BudgetCounter::new(10_000);
    let mut pso_rng = RngStream::from_seed(9);
    pso.init(&problem, &mut budget, &mut pso_rng).unwrap();
    let mut pbests: Vec<f64> = pso.particles().iter().map(|p| p.pbest_fitness).collect();
    let mut gbest = pso.gbest().1;
    for _ in 0..100 {
        scss_generation(
            &mut pso,
            &ScssConfig::new(2, SelectionScheme::Scheme1 { gd: 1.0 }),
            &problem,
            &mut budget,
            &mut pso_rng,
            None,
        )
        .unwrap();
        let now: Vec<f64> = pso.particles().iter().map(|p| p.pbest_fitness).collect();
        ok &= now.iter().zip(&pbests).all(|(c, p)| c <= p);
        ok &= pso.gbest().1 <= gbest;
        gbest = pso.gbest().1;
        pbests = now;
    }

    report("09 numerical-invariants", ok);
    assert!(ok);
}

// 10. run_experiment output is identical for 1 and 8 workers.
#[test]
fn acceptance_10_parallel_determinism() {
    let spec = ExperimentSpec::<f64> {
        algorithms: vec![
            AlgorithmConfig {
                name: "shade".into(),
                baseline: BaselineSpec::Shade(ShadeParams { np: 30, h: None }),
                scss: None,
            },
            AlgorithmConfig {
                name: "scss-shade".into(),
                baseline: BaselineSpec::Shade(ShadeParams { np: 30, h: None }),
                scss: Some(ScssConfig::new(2, SelectionScheme::Scheme2)),
            },
        ],
        functions: vec![
            FunctionSpec { base: BaseFunction::Ackley, shifted: true, rotated: false },
            FunctionSpec { base: BaseFunction::Griewank, shifted: true, rotated: true },
        ],
        dim: 6,
        runs: 5,
        budget_multiplier: 1_000,
        error_floor: DEFAULT_ERROR_FLOOR,
        master_seed: 99,
        diagnostics: true,
    };
    let sequential = run_experiment(&spec, 1).unwrap();
    let parallel = run_experiment(&spec, 8).unwrap();
    let ok = runs_csv(&sequential.records, spec.runs) == runs_csv(&parallel.records, spec.runs)
        && summary_csv(&sequential.comparison) == summary_csv(&parallel.comparison)
        && convergence_csv(&sequential.records, spec.runs)
            == convergence_csv(&parallel.records, spec.runs)
        && sequential.diagnostics == parallel.diagnostics;
    report("10 parallel-determinism", ok);
    assert!(ok);
}

// Cross-check used by criterion 1's premise: the wrapped-and-unwrapped
// equality also holds for f32 instantiations (the stream alignment does
// not depend on the scalar type).
#[test]
fn m1_degeneration_holds_for_f32() {
    let mut rng = RngStream::from_seed(55);
    let problem =
        BenchFunction::<f32>::make(BaseFunction::Sphere, 6, true, false, &mut rng).to_problem();
    let mut a = DeState::new(DeParams::<f32>::default());
    let mut b = DeState::new(DeParams::<f32>::default());
    let mut budget_a = BudgetCounter::new(5_000);
    let mut budget_b = BudgetCounter::new(5_000);
    let mut rng_a = RngStream::from_seed(77);
    let mut rng_b = RngStream::from_seed(77);
    run_baseline(&mut a, &problem, &mut budget_a, &mut rng_a).unwrap();
    run_scss(
        &mut b,
        &ScssConfig::new(1, SelectionScheme::Scheme2),
        &problem,
        &mut budget_b,
        &mut rng_b,
        None,
    )
    .unwrap();
    let ra = RunRecord::from_budget("de", problem.name(), 77, &budget_a, DEFAULT_ERROR_FLOOR);
    let rb = RunRecord::from_budget("de", problem.name(), 77, &budget_b, DEFAULT_ERROR_FLOOR);
    assert_eq!(ra, rb);
}
