use num_complex::Complex;

use super::circuit::Gate;
use crate::scalar::Real;
use crate::{Error, Result};

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 24;

/// Pure state of `q` qubits. Qubit 0 is the least significant bit of the
/// amplitude index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    amps: Vec<Complex<T>>,
    q: usize,
}

/// Real amplitudes destined for a set of qubits; `qubits[0]` is the least
/// significant bit of the fragment's own index.
#[derive(Clone, Debug, PartialEq)]
pub struct Fragment<T> {
    pub qubits: Vec<usize>,
    pub amps: Vec<T>,
}

/// Zero-pads `v` to the next power-of-two length (at least 1).
pub fn pad_to_pow2<T: Real>(v: &[T]) -> Vec<T> {
    let n = v.len().max(1).next_power_of_two();
    let mut out = v.to_vec();
    out.resize(n, T::zero());
    out
}

fn check_normalized<T: Real>(amps: &[T]) -> Result<()> {
    let n2: T = amps.iter().map(|&a| a * a).sum();
    if (n2 - T::one()).abs() > T::lit(1e-10) {
        return Err(Error::NotNormalized(n2.as_f64()));
    }
    Ok(())
}

/// Idealized qRAM load: the register holds exactly `amplitudes`.
pub fn inject_state<T: Real>(register: &[usize], amplitudes: &[T]) -> Result<Fragment<T>> {
    if amplitudes.len() != 1usize << register.len() {
        return Err(Error::DimensionMismatch {
            expected: 1 << register.len(),
            got: amplitudes.len(),
        });
    }
    check_normalized(amplitudes)?;
    Ok(Fragment {
        qubits: register.to_vec(),
        amps: amplitudes.to_vec(),
    })
}

impl<T: Real> StateVector<T> {
    /// `|0…0⟩` on `q` qubits.
    pub fn zero(q: usize) -> Result<Self> {
        if q > MAX_QUBITS {
            return Err(Error::TooManyQubits(q));
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << q];
        amps[0] = Complex::new(T::one(), T::zero());
        Ok(Self { amps, q })
    }

    /// State whose amplitudes are the given real vector (length `2^q`).
    pub fn from_real(amps: &[T]) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: amps.len().next_power_of_two(),
                got: amps.len(),
            });
        }
        let q = amps.len().trailing_zeros() as usize;
        let frag = inject_state(&(0..q).collect::<Vec<_>>(), amps)?;
        Self::from_fragments(q, &[frag])
    }

    /// Product state of disjoint fragments; qubits not covered start in `|0⟩`.
    pub fn from_fragments(q: usize, fragments: &[Fragment<T>]) -> Result<Self> {
        let mut state = Self::zero(q)?;
        let mut used = vec![false; q];
        for f in fragments {
            for &b in &f.qubits {
                if b >= q {
                    return Err(Error::QubitOutOfRange { index: b, qubits: q });
                }
                if std::mem::replace(&mut used[b], true) {
                    return Err(Error::OverlappingQubits(b));
                }
            }
        }
        let covered = used
            .iter()
            .enumerate()
            .fold(0usize, |m, (b, &u)| if u { m | (1 << b) } else { m });
        for (idx, amp) in state.amps.iter_mut().enumerate() {
            if idx & !covered != 0 {
                *amp = Complex::new(T::zero(), T::zero());
                continue;
            }
            let mut v = T::one();
            for f in fragments {
                let local = f
                    .qubits
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (bit, &qb)| acc | (((idx >> qb) & 1) << bit));
                v = v * f.amps[local];
            }
            *amp = Complex::new(v, T::zero());
        }
        Ok(state)
    }

    pub fn qubits(&self) -> usize {
        self.q
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm_sq(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `|⟨self|other⟩|²`
    pub fn fidelity(&self, other: &Self) -> T {
        let ip = self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::new(T::zero(), T::zero()), |s, (a, b)| s + a.conj() * b);
        ip.norm_sqr()
    }

    fn check_qubit(&self, b: usize) -> Result<()> {
        if b >= self.q {
            return Err(Error::QubitOutOfRange {
                index: b,
                qubits: self.q,
            });
        }
        Ok(())
    }

    fn apply_1q(&mut self, t: usize, controls: &[usize], m: [[Complex<T>; 2]; 2]) {
        let tb = 1usize << t;
        let cmask = controls.iter().fold(0usize, |m, &c| m | (1 << c));
        for i in 0..self.amps.len() {
            if i & tb != 0 || i & cmask != cmask {
                continue;
            }
            let j = i | tb;
            let (a0, a1) = (self.amps[i], self.amps[j]);
            self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[j] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    pub fn apply(&mut self, gate: &Gate<T>) -> Result<()> {
        for &b in gate.qubits().iter() {
            self.check_qubit(b)?;
        }
        gate.check_distinct()?;
        let r = |x: T| Complex::new(x, T::zero());
        let (zero, one) = (r(T::zero()), r(T::one()));
        let half = T::lit(0.5);
        match *gate {
            Gate::H(t) => {
                let s = r(T::FRAC_1_SQRT_2());
                self.apply_1q(t, &[], [[s, s], [s, -s]]);
            }
            Gate::X(t) => self.apply_1q(t, &[], [[zero, one], [one, zero]]),
            Gate::Ry(t, theta) => {
                let (s, c) = (theta * half).sin_cos();
                self.apply_1q(t, &[], [[r(c), r(-s)], [r(s), r(c)]]);
            }
            Gate::Rz(t, theta) => {
                let ph = Complex::from_polar(T::one(), theta * half);
                self.apply_1q(t, &[], [[ph.conj(), zero], [zero, ph]]);
            }
            Gate::Cnot { control, target } => {
                self.apply_1q(target, &[control], [[zero, one], [one, zero]])
            }
            Gate::Toffoli { c1, c2, target } => {
                self.apply_1q(target, &[c1, c2], [[zero, one], [one, zero]])
            }
            Gate::Cswap { control, a, b } => {
                let (cb, ab, bb) = (1usize << control, 1usize << a, 1usize << b);
                for i in 0..self.amps.len() {
                    if i & cb != 0 && i & ab != 0 && i & bb == 0 {
                        self.amps.swap(i, (i & !ab) | bb);
                    }
                }
            }
        }
        Ok(())
    }

    /// Exact marginal probability that `qubit` is measured in `|0⟩`.
    pub fn probability_zero(&self, qubit: usize) -> Result<T> {
        self.check_qubit(qubit)?;
        let m = 1usize << qubit;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & m == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }
}
