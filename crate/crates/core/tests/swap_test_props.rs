use proptest::prelude::*;
use proptest::sample::select;

use qdd_core::distance_engine::{
    analytic_p, build_phi_psi, estimate_distance, exact_distance, gate_p, rmse_model, Backend, Encoding,
};
use qdd_core::fem_core::Metric;
use qdd_core::material_db::{build_adaptive_entry, scale_pair};
use qdd_core::quantum_core::{mottonen_prepare, swap_test_circuit, StateVector};
use qdd_core::stream::StreamKey;

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    select(vec![1usize, 2, 3, 4, 8])
        .prop_flat_map(|d| {
            (
                prop::collection::vec(-10.0f64..10.0, d),
                prop::collection::vec(-10.0f64..10.0, d),
            )
        })
        .prop_filter("nonzero vectors", |(a, b)| norm(a) > 1e-3 && norm(b) > 1e-3)
}

fn unit_vector(max_qubits: usize) -> impl Strategy<Value = Vec<f64>> {
    (1..=max_qubits)
        .prop_flat_map(|q| prop::collection::vec(-1.0f64..1.0, 1 << q))
        .prop_filter("nonzero", |v| norm(v) > 1e-3)
        .prop_map(|v| {
            let n = norm(&v);
            v.into_iter().map(|x| x / n).collect()
        })
}

proptest! {
    #[test]
    fn swap_probability_recovers_squared_distance((x, xp) in pair()) {
        let spec = build_phi_psi(&x, &xp).unwrap();
        let d = exact_distance(&x, &xp).unwrap();
        let tol = 1e-9 * spec.z_hat.max(1.0);
        for p in [
            analytic_p(&spec),
            gate_p(&spec, Encoding::Inject).unwrap(),
            gate_p(&spec, Encoding::Mottonen).unwrap(),
        ] {
            prop_assert!((4.0 * spec.z_hat * (p - 0.5) - d).abs() <= tol, "p = {p}, d = {d}");
        }
    }

    #[test]
    fn translation_preserves_distance(
        (x, xp) in pair(),
        shift in prop::collection::vec(-5.0f64..5.0, 8),
        delta in prop::collection::vec(-1.0f64..1.0, 8),
    ) {
        let dim = x.len();
        let (xs, dl) = (&shift[..dim], &delta[..dim]);
        let a = build_adaptive_entry(&x, xs, dl).unwrap().vector();
        let b = build_adaptive_entry(&xp, xs, dl).unwrap().vector();
        let before = exact_distance(&x, &xp).unwrap();
        let after = exact_distance(&a, &b).unwrap();
        prop_assert!((before - after).abs() <= 1e-9 * before.max(1.0));
    }

    #[test]
    fn scaled_distance_is_energy_distance(
        e in prop::collection::vec(-0.01f64..0.01, 6),
        s in prop::collection::vec(-500.0f64..500.0, 6),
        e_ref in 10.0f64..1e5,
        nu in 0.0f64..0.45,
    ) {
        for metric in [Metric::scalar(e_ref).unwrap(), Metric::plane_stress(e_ref, nu).unwrap()] {
            let k = metric.dim();
            let a = scale_pair(&e[..k], &s[..k], &metric).unwrap();
            let b = scale_pair(&e[3..3 + k], &s[3..3 + k], &metric).unwrap();
            let de: Vec<f64> = (0..k).map(|i| e[i] - e[3 + i]).collect();
            let ds: Vec<f64> = (0..k).map(|i| s[i] - s[3 + i]).collect();
            let energy = metric.energy_distance(&de, &ds);
            let scaled = exact_distance(a.as_slice(), b.as_slice()).unwrap();
            prop_assert!((energy - scaled).abs() <= 1e-10 * energy.max(1e-12));
        }
    }

    #[test]
    fn mottonen_matches_injection(v in unit_vector(5)) {
        let q = v.len().trailing_zeros() as usize;
        let mut prepared = StateVector::zero(q).unwrap();
        mottonen_prepare(&v).unwrap().apply_to(&mut prepared).unwrap();
        let target = StateVector::from_real(&v).unwrap();
        prop_assert!(prepared.fidelity(&target) >= 1.0 - 1e-10);
    }

    #[test]
    fn swap_circuit_preserves_norm(dim in 1usize..=8, seed in any::<u64>()) {
        let (layout, circuit) = swap_test_circuit::<f64>(dim).unwrap();
        let n = 1usize << layout.total_qubits();
        let raw: Vec<f64> = (0..n).map(|i| ((seed.wrapping_mul(2654435761).wrapping_add(i as u64 * 40503)) % 1000) as f64 - 499.5).collect();
        let r = norm(&raw);
        let amps: Vec<f64> = raw.iter().map(|x| x / r).collect();
        let mut state = StateVector::from_real(&amps).unwrap();
        circuit.apply_to(&mut state).unwrap();
        prop_assert!((state.norm_sq() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn estimates_stay_in_range((x, xp) in pair(), n_s in 1u64..2000, seed in any::<u64>()) {
        let spec = build_phi_psi(&x, &xp).unwrap();
        let mut rng = StreamKey::new(seed, 0, 0, 0).rng();
        let est = estimate_distance(&spec, n_s, Backend::Analytic, &mut rng).unwrap();
        prop_assert!(est.v <= n_s);
        prop_assert!(est.d_bar.abs() <= 2.0 * spec.z_hat * (1.0 + 1e-12));
        let d = exact_distance(&x, &xp).unwrap();
        let eps = rmse_model(d.min(2.0 * spec.z_hat), spec.z_hat, n_s).unwrap();
        prop_assert!(eps <= 2.0 * spec.z_hat / (n_s as f64).sqrt() * (1.0 + 1e-12));
    }
}
