//! Distance oracles for the nearest-neighbor search.
//!
//! Three routes to `d = |X − X'|²`:
//! * [`exact_distance`], the classical reference;
//! * the analytic swap-test oracle, which evaluates the ancilla-zero
//!   probability `p = ½ + ½ |⟨φ|ψ⟩|²` from the encoded `φ`/`ψ` amplitudes
//!   and draws the zero count `V ~ Binomial(n_s, p)`;
//! * the gate oracle, which loads `φ`/`ψ` into a simulated register
//!   (direct injection or Mottonen preparation), runs the swap-test
//!   circuit and reads the ancilla marginal before sampling.
//!
//! Either quantum route reports `d̄ = Ẑ (4 V / n_s − 2)`, unbiased with
//! RMSE `√((4Ẑ² − d²)/n_s)`. Negative estimates are legal and are kept.

use rand::Rng;

use crate::material_db::AdaptiveEntry;
use crate::quantum_core::{
    ancilla_zero_probability, inject_state, mottonen_prepare, sample_measurements, swap_test_circuit,
    StateVector, SwapTestLayout,
};
use crate::scalar::{norm_sq, Real};
use crate::stream::StreamKey;
use crate::{Error, Result};

/// How the gate oracle loads `φ` and `ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoding {
    /// Idealized qRAM: amplitudes written directly.
    Inject,
    /// RY/CNOT state preparation from `|0…0⟩`.
    Mottonen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Analytic,
    Gate(Encoding),
}

/// Pre-computed swap-test inputs for one pair of (translated) vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiPsiSpec<T> {
    /// Data dimension `D` before padding.
    pub dim: usize,
    /// `Ẑ = |X̂|² + |X̂'|²`
    pub z_hat: T,
    /// `(|X̂|, −|X̂'|)/√Ẑ`
    pub phi: [T; 2],
    /// `[X̂/(√2|X̂|) ; X̂'/(√2|X̂'|)]`, each half zero-padded to a power of two.
    pub psi: Vec<T>,
}

impl<T: Real> PhiPsiSpec<T> {
    /// The two halves of `ψ`.
    pub fn halves(&self) -> (&[T], &[T]) {
        self.psi.split_at(self.psi.len() / 2)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceEstimate<T> {
    pub d_bar: T,
    pub v: u64,
    pub n_s: u64,
    pub z_hat: T,
    /// Probability the counts were drawn from.
    pub exact_p: Option<T>,
}

impl<T: Real> DistanceEstimate<T> {
    pub const CSV_HEADER: &'static str = "z_hat,p,v,n_s,d_bar";

    pub fn csv_row(&self) -> String {
        let p = self.exact_p.map_or(String::new(), |p| format!("{p:.16e}"));
        format!("{:.16e},{p},{},{},{:.16e}", self.z_hat, self.v, self.n_s, self.d_bar)
    }
}

/// `|x − x'|²`
pub fn exact_distance<T: Real>(x: &[T], xp: &[T]) -> Result<T> {
    if x.len() != xp.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: xp.len(),
        });
    }
    Ok(x.iter().zip(xp).map(|(&a, &b)| (a - b) * (a - b)).sum())
}

fn padded_half<T: Real>(entry: &AdaptiveEntry<T>, padded: usize) -> Vec<T> {
    let mut h = entry.unit.clone();
    h.resize(padded, T::zero());
    h
}

/// Builds `φ`/`ψ` from two adaptive entries (norm plus `1/√2`-scaled
/// direction), the form in which the solver reads its data.
pub fn phi_psi_from_entries<T: Real>(query: &AdaptiveEntry<T>, cand: &AdaptiveEntry<T>) -> Result<PhiPsiSpec<T>> {
    let dim = query.unit.len();
    if cand.unit.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: cand.unit.len(),
        });
    }
    let z_hat = query.norm * query.norm + cand.norm * cand.norm;
    let s = z_hat.sqrt();
    let padded = SwapTestLayout::new(dim).padded_dim();
    let mut psi = padded_half(query, padded);
    psi.extend(padded_half(cand, padded));
    Ok(PhiPsiSpec {
        dim,
        z_hat,
        phi: [query.norm / s, -cand.norm / s],
        psi,
    })
}

/// Swap-test inputs for translated vectors `x̂`, `x̂'`; both must be nonzero.
pub fn build_phi_psi<T: Real>(x_hat: &[T], xp_hat: &[T]) -> Result<PhiPsiSpec<T>> {
    if x_hat.len() != xp_hat.len() {
        return Err(Error::DimensionMismatch {
            expected: x_hat.len(),
            got: xp_hat.len(),
        });
    }
    let q = AdaptiveEntry::from_translated(x_hat)?;
    let c = AdaptiveEntry::from_translated(xp_hat)?;
    phi_psi_from_entries(&q, &c)
}

/// `½ + ½ |φ₀ h₀ + φ₁ h₁|²`: the ancilla-zero probability of the swap test
/// between the `φ` qubit and the selector qubit of `ψ = |0⟩h₀ + |1⟩h₁`.
pub fn analytic_p_parts<T: Real>(phi: [T; 2], h0: &[T], h1: &[T]) -> T {
    let half = T::lit(0.5);
    let overlap: T = h0
        .iter()
        .zip(h1)
        .map(|(&a, &b)| {
            let v = phi[0] * a + phi[1] * b;
            v * v
        })
        .sum();
    half + half * overlap
}

pub fn analytic_p<T: Real>(spec: &PhiPsiSpec<T>) -> T {
    let (h0, h1) = spec.halves();
    analytic_p_parts(spec.phi, h0, h1)
}

/// Runs the swap-test circuit on a simulated register and returns the
/// exact ancilla-zero probability.
pub fn gate_p<T: Real>(spec: &PhiPsiSpec<T>, encoding: Encoding) -> Result<T> {
    let (layout, swap) = swap_test_circuit::<T>(spec.dim)?;
    let q = layout.total_qubits();
    let mut state = match encoding {
        Encoding::Inject => {
            let phi = inject_state(&[layout.phi], &spec.phi)?;
            let psi = inject_state(&layout.psi, &spec.psi)?;
            StateVector::from_fragments(q, &[phi, psi])?
        }
        Encoding::Mottonen => {
            let mut prep = crate::quantum_core::Circuit::new(q)?;
            prep.append_mapped(&mottonen_prepare(&spec.phi)?, &[layout.phi])?;
            prep.append_mapped(&mottonen_prepare(&spec.psi)?, &layout.psi)?;
            let mut s = StateVector::zero(q)?;
            prep.apply_to(&mut s)?;
            s
        }
    };
    swap.apply_to(&mut state)?;
    ancilla_zero_probability(&state, layout.ancilla)
}

/// `Ẑ (4 V / n_s − 2)`
pub fn estimate_from_count<T: Real>(z_hat: T, v: u64, n_s: u64) -> T {
    let ratio = T::lit(v as f64) / T::lit(n_s as f64);
    z_hat * (T::lit(4.0) * ratio - T::lit(2.0))
}

pub fn estimate_distance<T: Real, R: Rng + ?Sized>(
    spec: &PhiPsiSpec<T>,
    n_s: u64,
    backend: Backend,
    rng: &mut R,
) -> Result<DistanceEstimate<T>> {
    if n_s == 0 {
        return Err(Error::InvalidParameter("need at least one shot".into()));
    }
    let p = match backend {
        Backend::Analytic => analytic_p(spec),
        Backend::Gate(enc) => gate_p(spec, enc)?,
    };
    let v = sample_measurements(p, n_s, rng);
    Ok(DistanceEstimate {
        d_bar: estimate_from_count(spec.z_hat, v, n_s),
        v,
        n_s,
        z_hat: spec.z_hat,
        exact_p: Some(p),
    })
}

/// Predicted RMSE of `d̄`: `√((4Ẑ² − d²)/n_s)`, defined for `0 ≤ d ≤ 2Ẑ`.
pub fn rmse_model<T: Real>(d: T, z_hat: T, n_s: u64) -> Result<T> {
    let two_z = T::lit(2.0) * z_hat;
    let slack = T::lit(1e-12) * two_z.max(T::one());
    if !(d >= -slack && d <= two_z + slack) || n_s == 0 {
        return Err(Error::InvalidParameter(format!(
            "distance {d} outside [0, 2Z = {two_z}] or zero shots"
        )));
    }
    let d = d.max(T::zero()).min(two_z);
    Ok(((two_z * two_z - d * d) / T::lit(n_s as f64)).sqrt())
}

/// Sample statistics of repeated estimates for one pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorStats<T> {
    pub trials: usize,
    pub n_s: u64,
    pub d: T,
    pub z_hat: T,
    pub mean: T,
    pub rmse: T,
    pub predicted_rmse: T,
    pub samples: Vec<DistanceEstimate<T>>,
}

/// Repeats the estimate `trials` times (each trial on its own stream
/// `(seed, 0, 0, trial)`) and reports mean and RMSE against the exact
/// distance of the pair.
pub fn empirical_error_stats<T: Real>(
    x_hat: &[T],
    xp_hat: &[T],
    n_s: u64,
    trials: usize,
    backend: Backend,
    seed: u64,
) -> Result<ErrorStats<T>> {
    if trials < 1000 {
        return Err(Error::InvalidParameter("need at least 1000 trials".into()));
    }
    let spec = build_phi_psi(x_hat, xp_hat)?;
    let d = exact_distance(x_hat, xp_hat)?;
    let samples = (0..trials)
        .map(|t| {
            let mut rng = StreamKey::new(seed, 0, 0, t).rng();
            estimate_distance(&spec, n_s, backend, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;
    let n = T::count(trials);
    let mean = samples.iter().map(|s| s.d_bar).sum::<T>() / n;
    let sq: Vec<T> = samples.iter().map(|s| s.d_bar - d).collect();
    let rmse = (norm_sq(&sq) / n).sqrt();
    Ok(ErrorStats {
        trials,
        n_s,
        d,
        z_hat: spec.z_hat,
        mean,
        rmse,
        predicted_rmse: rmse_model(d, spec.z_hat, n_s)?,
        samples,
    })
}
