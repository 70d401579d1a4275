use proptest::prelude::*;

use qdd_core::dd_solver::{
    iterate_once, run, state_csv, AdaptiveSource, InitMode, Oracle, Problem, SolverConfig, STATE_HEADER,
};
use qdd_core::fem_core::{Mesh, Metric};
use qdd_core::material_db::{gen_ramberg_osgood_1d, RambergOsgood};

fn bar(c: f64, count: usize) -> Problem<f64> {
    let law = RambergOsgood {
        e: 1e4,
        nu: 0.0,
        alpha: 3.0,
        sigma0: 10.0,
        n: 3.0,
    };
    let db = gen_ramberg_osgood_1d(&law, (-5.0, 60.0), count).unwrap();
    let mut mesh = Mesh::bar(10, 100.0, 1.0);
    *mesh.loads.last_mut().unwrap() = 50.0;
    Problem::new(&mesh, db, &Metric::scalar(c).unwrap()).unwrap()
}

fn quantum(n_s: u64, seed: u64) -> SolverConfig<f64> {
    SolverConfig {
        oracle: Oracle::QuantumAnalytic,
        n_s,
        seed,
        ..SolverConfig::default()
    }
}

#[test]
fn classical_bar_reaches_equilibrium() {
    let p = bar(10.0, 100);
    let r = run(&p, &SolverConfig::default()).unwrap();
    assert!(r.converged());
    for s in &r.state.sig_adm {
        assert!((s[0] - 50.0).abs() < 1e-8);
    }
    assert!(p.equilibrium_residual(&r.state).unwrap() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn classical_penalty_never_increases(c in 1.0f64..2e4, seed in any::<u64>(), count in 5usize..60) {
        let p = bar(c, count);
        let cfg = SolverConfig { init: InitMode::Random, seed, ..SolverConfig::default() };
        let r = run(&p, &cfg).unwrap();
        for w in r.history.windows(2) {
            prop_assert!(w[1].penalty <= w[0].penalty * (1.0 + 1e-12) + 1e-15, "{} -> {}", w[0].penalty, w[1].penalty);
        }
    }
}

#[test]
fn converged_state_is_a_fixed_point() {
    let p = bar(10.0, 100);
    let cfg = SolverConfig::default();
    let r = run(&p, &cfg).unwrap();
    let next = iterate_once(&r.state, &p, &cfg).unwrap();
    assert_eq!(next.assignments, r.state.assignments);
    assert_eq!(next.changed_count, 0);
    assert_eq!(next.penalty, r.state.penalty);
}

#[test]
fn runs_are_deterministic_across_thread_counts() {
    let p = bar(10.0, 100);
    let cfg = quantum(180, 7);
    let a = run(&p, &cfg).unwrap();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = single.install(|| run(&p, &cfg).unwrap());
    assert_eq!(a.state.assignments, b.state.assignments);
    let pa: Vec<f64> = a.history.iter().map(|h| h.penalty).collect();
    let pb: Vec<f64> = b.history.iter().map(|h| h.penalty).collect();
    assert_eq!(pa, pb);
}

#[test]
fn precomputed_translation_matches_on_the_fly() {
    let p = bar(10.0, 100);
    for seed in 0..5 {
        let on_the_fly = quantum(180, seed);
        let pre = SolverConfig {
            adaptive_source: AdaptiveSource::Precomputed,
            ..on_the_fly.clone()
        };
        let a = run(&p, &on_the_fly).unwrap();
        let b = run(&p, &pre).unwrap();
        assert_eq!(a.state.assignments, b.state.assignments, "seed {seed}");
        assert_eq!(a.iterations(), b.iterations());
    }
}

#[test]
fn many_shots_agree_with_classical() {
    let p = bar(10.0, 100);
    let reference = run(&p, &SolverConfig::default()).unwrap();
    let (mut same, mut total) = (0, 0);
    for seed in 0..10 {
        let r = run(&p, &quantum(1_000_000, seed)).unwrap();
        same += r.state.assignments.iter().zip(&reference.state.assignments).filter(|(a, b)| a == b).count();
        total += r.state.assignments.len();
    }
    assert!(same as f64 >= 0.99 * total as f64, "{same}/{total}");
}

#[test]
fn penalty_recomputes_from_dump() {
    let p = bar(10.0, 100);
    let r = run(&p, &quantum(180, 3)).unwrap();
    let csv = state_csv(&r.state, &p.db, true);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(STATE_HEADER));
    let c = 10.0;
    let mut total = 0.0;
    for (line, qp) in lines.zip(p.system.quad_points()) {
        let f: Vec<f64> = line.split(',').skip(3).map(|x| x.parse().unwrap()).collect();
        let (eps, sig, eps_s, sig_s) = (f[0], f[1], f[2], f[3]);
        total += qp.weight * (c * (eps - eps_s).powi(2) + (sig - sig_s).powi(2) / c);
    }
    assert!((total - r.state.penalty).abs() <= 1e-12 * r.state.penalty.max(1e-300));
}
