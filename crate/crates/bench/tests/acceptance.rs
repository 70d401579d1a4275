//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::time::{Duration, Instant};

use rand::Rng;

use qdd_bench::experiments::{plate, run_problem, springbar, sweep, swaptest_demo};
use qdd_bench::presets::{BarPreset, PlatePreset, SpringBarPreset};
use qdd_bench::report::median;
use qdd_core::dd_solver::{Oracle, SolverConfig};
use qdd_core::distance_engine::{
    build_phi_psi, empirical_error_stats, exact_distance, gate_p, rmse_model, Backend, Encoding,
};
use qdd_core::quantum_core::{mottonen_prepare, query_ledger, StateVector};
use qdd_core::stream::StreamKey;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn swap_test_exactness() -> Outcome {
    let start = Instant::now();
    let mut rng = StreamKey::new(1, 0, 0, 0).rng();
    let mut worst: f64 = 0.0;
    for dim in [1usize, 2, 3, 4, 8] {
        for _ in 0..200 {
            let x: Vec<f64> = (0..dim).map(|_| rng.random_range(-10.0..10.0)).collect();
            let xp: Vec<f64> = (0..dim).map(|_| rng.random_range(-10.0..10.0)).collect();
            let spec = build_phi_psi(&x, &xp).unwrap();
            let p = gate_p(&spec, Encoding::Inject).unwrap();
            let err = (4.0 * spec.z_hat * (p - 0.5) - exact_distance(&x, &xp).unwrap()).abs();
            worst = worst.max(err);
        }
    }
    let t = start.elapsed();
    check(
        worst <= 1e-9 && t < Duration::from_secs(5),
        format!("max |4Z(p-1/2) - d| = {worst:.2e}, {t:.2?}"),
    )
}

fn reference_pair_histogram() -> Outcome {
    let start = Instant::now();
    let (x, xp, n_s, trials) = ([0.5, -1.5], [-1.5, 0.5], 1024, 20000);
    let st = swaptest_demo(&x, &xp, n_s, trials, Backend::Analytic, 0).unwrap();
    let t = start.elapsed();
    let eps = rmse_model(8.0, st.z_hat, n_s).unwrap();
    let band = 3.0 * eps / (trials as f64).sqrt();
    let mean_ok = (st.mean - 8.0).abs() <= band;
    let rmse_ok = (st.rmse - eps).abs() <= 0.05 * eps;
    check(
        mean_ok && rmse_ok && t < Duration::from_secs(30),
        format!(
            "mean {:.5} (8 ± {band:.5}), rmse {:.5} vs {eps:.5}, {t:.2?}",
            st.mean, st.rmse
        ),
    )
}

fn estimator_law_grid() -> Outcome {
    let trials = 10_000;
    let mut failures = Vec::new();
    let mut cell = 0;
    for r in [0.0, 0.25, 0.5, 0.9, 1.0] {
        // unit vectors at angle θ: d = 2 - 2 cos θ, Z = 2
        let c: f64 = 1.0 - 2.0 * r;
        let x = [1.0, 0.0];
        let xp = [c, (1.0 - c * c).max(0.0).sqrt()];
        for n_s in [50u64, 180, 1000] {
            cell += 1;
            let st = empirical_error_stats(&x, &xp, n_s, trials, Backend::Analytic, 100 + cell).unwrap();
            let eps = st.predicted_rmse;
            let se = eps / (trials as f64).sqrt();
            let unbiased = (st.mean - st.d).abs() <= (4.0 * se).max(1e-9);
            let rmse_ok = (st.rmse - eps).abs() <= (0.05 * eps).max(1e-9);
            let bound_ok = eps <= 2.0 * st.z_hat / (n_s as f64).sqrt() * (1.0 + 1e-12);
            if !(unbiased && rmse_ok && bound_ok) {
                failures.push(format!(
                    "r={r} n_s={n_s}: mean {:.5} d {:.5} rmse {:.5} eps {:.5}",
                    st.mean, st.d, st.rmse, eps
                ));
            }
        }
    }
    check(
        failures.is_empty(),
        if failures.is_empty() {
            "15 cells unbiased, rmse within 5%, bound respected".to_string()
        } else {
            failures.join("; ")
        },
    )
}

fn bar_classical() -> Outcome {
    let p = BarPreset::default().problem().unwrap();
    let (r, _) = run_problem(&p, &SolverConfig::default(), false).unwrap();
    let worst = r.state.sig_adm.iter().map(|s| (s[0] - 50.0).abs()).fold(0.0, f64::max);
    let monotone = r.history.windows(2).all(|w| w[1].penalty <= w[0].penalty);
    check(
        r.converged() && worst <= 1e-8 && monotone && r.iterations() <= 25,
        format!(
            "converged {}, {} iterations, max |σ - 50| = {worst:.1e}, penalty non-increasing {monotone}",
            r.converged(),
            r.iterations()
        ),
    )
}

fn bar_quantum_runs(adaptive: bool, seeds: u64) -> (f64, Vec<(bool, usize, f64)>) {
    let p = BarPreset::default().problem().unwrap();
    let (classical, _) = run_problem(&p, &SolverConfig::default(), false).unwrap();
    let runs = (0..seeds)
        .map(|seed| {
            let cfg = SolverConfig {
                oracle: Oracle::QuantumAnalytic,
                n_s: 180,
                adaptive,
                seed,
                ..SolverConfig::default()
            };
            let (r, _) = run_problem(&p, &cfg, false).unwrap();
            (r.converged(), r.iterations(), r.state.penalty)
        })
        .collect();
    (classical.state.penalty, runs)
}

fn bar_adaptive() -> Outcome {
    let start = Instant::now();
    let (f_classical, runs) = bar_quantum_runs(true, 40);
    let t = start.elapsed();
    let converged = runs.iter().filter(|r| r.0).count();
    let its: Vec<f64> = runs.iter().map(|r| r.1 as f64).collect();
    let med = median(&its);
    let ratio = runs.iter().map(|r| r.2).sum::<f64>() / runs.len() as f64 / f_classical;
    check(
        converged >= 36 && med <= 10.0 && ratio <= 10.0 && t < Duration::from_secs(600),
        format!("{converged}/40 converged, median iterations {med}, penalty ratio {ratio:.3}, {t:.2?}"),
    )
}

fn bar_non_adaptive() -> Outcome {
    let (f_classical, runs) = bar_quantum_runs(false, 40);
    let ratio = runs.iter().map(|r| r.2).sum::<f64>() / runs.len() as f64 / f_classical;
    check(ratio >= 100.0, format!("mean penalty / classical = {ratio:.1}"))
}

fn shot_sweep() -> Outcome {
    let p = BarPreset::default().problem().unwrap();
    let base = SolverConfig {
        oracle: Oracle::QuantumAnalytic,
        ..SolverConfig::default()
    };
    let out = sweep(&p, &base, &[30, 1000], 100).unwrap();
    let scale = out
        .reference
        .state
        .assignments
        .iter()
        .map(|&j| p.db.points()[j].sig[0].abs())
        .fold(0.0, f64::max);
    let (lo, hi) = (&out.aggregates[0], &out.aggregates[1]);
    let ref_its = out.reference.iterations() as f64;
    let hi_ok = (hi.iterations.mean - ref_its).abs() <= 2.0 && hi.rms_stress_error.mean <= 0.01 * scale;
    let trend = lo.iterations.mean > hi.iterations.mean && lo.rms_stress_error.mean > hi.rms_stress_error.mean;
    check(
        hi_ok && trend,
        format!(
            "iterations {:.2} / {:.2} (classical {ref_its}), rms error {:.4} / {:.4} MPa at n_s = 30 / 1000",
            lo.iterations.mean, hi.iterations.mean, lo.rms_stress_error.mean, hi.rms_stress_error.mean
        ),
    )
}

fn spring_bar_gate() -> Outcome {
    let qubits = query_ledger(2).unwrap().qubits;
    let mut rng = StreamKey::new(2, 0, 0, 0).rng();
    let mut worst_fid: f64 = 1.0;
    for q in 1..=4 {
        for _ in 0..50 {
            let v: Vec<f64> = (0..1 << q).map(|_| rng.random_range(-1.0..1.0)).collect();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let v: Vec<f64> = v.iter().map(|x| x / n).collect();
            let mut s = StateVector::zero(q).unwrap();
            mottonen_prepare(&v).unwrap().apply_to(&mut s).unwrap();
            worst_fid = worst_fid.min(s.fidelity(&StateVector::from_real(&v).unwrap()));
        }
    }
    let preset = SpringBarPreset::default();
    let classical = springbar(&preset, &SolverConfig::default()).unwrap();
    let agree = (0..10)
        .filter(|&seed| {
            let cfg = SolverConfig {
                oracle: Oracle::QuantumGate(Encoding::Mottonen),
                n_s: 10_000,
                seed,
                ..SolverConfig::default()
            };
            let r = springbar(&preset, &cfg).unwrap();
            r.converged() && r.assignment == classical.assignment
        })
        .count();
    check(
        qubits == 4 && worst_fid >= 1.0 - 1e-10 && agree >= 9 && classical.converged(),
        format!(
            "{qubits} qubits, min Mottonen fidelity {worst_fid:.12}, {agree}/10 seeds select point {}",
            classical.assignment
        ),
    )
}

fn plate_desk_scale() -> Outcome {
    let preset = PlatePreset::default();
    let classical = plate(&preset, &SolverConfig::default(), 10, false).unwrap();
    let cfg = SolverConfig {
        oracle: Oracle::QuantumAnalytic,
        n_s: 5000,
        seed: 1,
        ..SolverConfig::default()
    };
    let q = plate(&preset, &cfg, 10, false).unwrap();
    let ratio = q.dd.state.penalty / classical.dd.state.penalty;
    let sx_ok = classical.sx_error <= 0.05;
    check(
        sx_ok && ratio <= 2.0 && q.equilibrium_residual <= 1e-8,
        format!(
            "classical max relative σx error {:.4} (limit 0.05){}, qDD penalty ratio {ratio:.3}, equilibrium residual {:.1e}",
            classical.sx_error,
            if sx_ok { "" } else { " FAILS" },
            q.equilibrium_residual
        ),
    )
}

fn complexity_ledger() -> Outcome {
    let bad: Vec<usize> = (1..=64)
        .filter(|&d| {
            let l = query_ledger(d).unwrap();
            let log = d.next_power_of_two().trailing_zeros() as usize;
            l.qubits != 3 + log || l.swap_test_gates != 3
        })
        .collect();
    check(
        bad.is_empty(),
        format!("qubits = 3 + ceil(log2 D), 3 swap-test gates for D = 1..=64; mismatches {bad:?}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("swap-test exactness", swap_test_exactness),
        ("two-point histogram", reference_pair_histogram),
        ("estimator law grid", estimator_law_grid),
        ("bar, classical oracle", bar_classical),
        ("bar, adaptive qDD", bar_adaptive),
        ("bar, non-adaptive qDD", bar_non_adaptive),
        ("shot-count sweep", shot_sweep),
        ("spring-bar gate path", spring_bar_gate),
        ("plate at desk scale", plate_desk_scale),
        ("complexity ledger", complexity_ledger),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {:>2} {name}: {} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
