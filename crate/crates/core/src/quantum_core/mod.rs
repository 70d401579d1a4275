//! Minimal statevector simulator for the swap-test distance circuit.
//!
//! Qubit ordering is little-endian: qubit 0 is the least significant bit
//! of the amplitude index.

mod circuit;
mod mottonen;
mod state;

pub use circuit::{decompose_cswap, Circuit, Gate};
pub use mottonen::mottonen_prepare;
pub use state::{inject_state, pad_to_pow2, Fragment, StateVector, MAX_QUBITS};

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::scalar::Real;
use crate::Result;

/// Qubit layout of the swap test for `D`-dimensional data.
///
/// Qubit 0 is the ancilla, qubit 1 holds `|φ⟩`, and qubits
/// `2 ..= 2 + ⌈log₂ D⌉` hold `|ψ⟩`, whose most significant qubit selects
/// between the two data halves. The controlled-SWAP exchanges the `φ`
/// qubit with that selector qubit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapTestLayout {
    pub dim: usize,
    /// `⌈log₂ D⌉`, qubits per amplitude-encoded data vector.
    pub index_qubits: usize,
    pub ancilla: usize,
    pub phi: usize,
    /// `ψ` register, least significant first; the last entry is the selector.
    pub psi: Vec<usize>,
}

impl SwapTestLayout {
    pub fn new(dim: usize) -> Self {
        let dim = dim.max(1);
        let index_qubits = dim.next_power_of_two().trailing_zeros() as usize;
        Self {
            dim,
            index_qubits,
            ancilla: 0,
            phi: 1,
            psi: (2..3 + index_qubits).collect(),
        }
    }

    pub fn total_qubits(&self) -> usize {
        2 + self.psi.len()
    }

    pub fn selector(&self) -> usize {
        *self.psi.last().expect("psi register is never empty")
    }

    /// Amplitudes per half of `|ψ⟩` after zero padding.
    pub fn padded_dim(&self) -> usize {
        1 << self.index_qubits
    }
}

/// `H(anc) · CSWAP(anc; φ, selector) · H(anc)`.
pub fn swap_test_circuit<T: Real>(dim: usize) -> Result<(SwapTestLayout, Circuit<T>)> {
    let layout = SwapTestLayout::new(dim);
    let mut c = Circuit::new(layout.total_qubits())?;
    c.push(Gate::H(layout.ancilla))?;
    c.push(Gate::Cswap {
        control: layout.ancilla,
        a: layout.phi,
        b: layout.selector(),
    })?;
    c.push(Gate::H(layout.ancilla))?;
    Ok((layout, c))
}

/// Per-query resource accounting of one distance estimation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryLedger {
    pub dim: usize,
    pub qubits: usize,
    /// Gates of the swap test proper (independent of `D`).
    pub swap_test_gates: usize,
    /// Qubits addressed by the qRAM load, the `O(log D)` encoding cost.
    pub encode_qubits: usize,
}

pub fn query_ledger(dim: usize) -> Result<QueryLedger> {
    let (layout, c) = swap_test_circuit::<f64>(dim)?;
    Ok(QueryLedger {
        dim: layout.dim,
        qubits: layout.total_qubits(),
        swap_test_gates: c.len(),
        encode_qubits: 1 + layout.psi.len(),
    })
}

/// Probability of reading the ancilla as 0.
pub fn ancilla_zero_probability<T: Real>(state: &StateVector<T>, ancilla: usize) -> Result<T> {
    state.probability_zero(ancilla)
}

/// Number of zeros in `n_s` ancilla readouts: a draw from
/// `Binomial(n_s, p)`. `p` is clamped into `[0, 1]` against rounding.
pub fn sample_measurements<T: Real, R: Rng + ?Sized>(p: T, n_s: u64, rng: &mut R) -> u64 {
    let p = p.as_f64().clamp(0.0, 1.0);
    Binomial::new(n_s, p)
        .expect("p in [0,1] after clamping")
        .sample(rng)
}
