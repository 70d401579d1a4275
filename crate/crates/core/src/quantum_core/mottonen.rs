//! Real-amplitude state preparation from uniformly controlled RY rotations,
//! each expanded into alternating RY and CNOT gates along a Gray code.

use super::circuit::{Circuit, Gate};
use crate::scalar::Real;
use crate::{Error, Result};

fn gray(i: usize) -> usize {
    i ^ (i >> 1)
}

/// Circuit on `log₂ len` qubits mapping `|0…0⟩` to `amplitudes`.
///
/// Qubit `k−1` (most significant) is rotated first; the rotation on qubit
/// `t` is uniformly controlled by qubits `t+1..k`. Rotation angles on the
/// lowest qubit use signed amplitudes, so the sign pattern of a real
/// target is reproduced exactly. Rotations whose angles all vanish are
/// omitted.
pub fn mottonen_prepare<T: Real>(amplitudes: &[T]) -> Result<Circuit<T>> {
    let n = amplitudes.len();
    if !n.is_power_of_two() {
        return Err(Error::DimensionMismatch {
            expected: n.next_power_of_two(),
            got: n,
        });
    }
    let n2: T = amplitudes.iter().map(|&a| a * a).sum();
    if (n2 - T::one()).abs() > T::lit(1e-10) {
        return Err(Error::NotNormalized(n2.as_f64()));
    }
    let k = n.trailing_zeros() as usize;
    let mut circuit = Circuit::new(k)?;
    let two = T::lit(2.0);

    for t in (0..k).rev() {
        let n_ctrl = k - 1 - t;
        let controls: Vec<usize> = (t + 1..k).collect();
        // α_c for every pattern c of the control qubits (bit j ↔ qubit t+1+j)
        let alphas: Vec<T> = (0..1usize << n_ctrl)
            .map(|c| {
                let (a0, a1) = if t == 0 {
                    (amplitudes[c << 1], amplitudes[(c << 1) | 1])
                } else {
                    let block = |b: usize| -> T {
                        let base = (c << (t + 1)) | (b << t);
                        amplitudes[base..base + (1 << t)]
                            .iter()
                            .map(|&x| x * x)
                            .sum::<T>()
                            .sqrt()
                    };
                    (block(0), block(1))
                };
                two * a1.atan2(a0)
            })
            .collect();

        if alphas.iter().all(|&a| a == T::zero()) {
            continue;
        }
        if n_ctrl == 0 {
            circuit.push(Gate::Ry(t, alphas[0]))?;
            continue;
        }
        // θ = Mᵀ α / 2^m with M_ci = (−1)^{popcount(c & gray(i))}
        let m = alphas.len();
        let scale = T::count(m);
        for i in 0..m {
            let g = gray(i);
            let theta = alphas
                .iter()
                .enumerate()
                .map(|(c, &a)| if (c & g).count_ones() % 2 == 0 { a } else { -a })
                .sum::<T>()
                / scale;
            circuit.push(Gate::Ry(t, theta))?;
            let flip = g ^ gray((i + 1) % m);
            let bit = flip.trailing_zeros() as usize;
            circuit.push(Gate::Cnot {
                control: controls[bit],
                target: t,
            })?;
        }
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum_core::StateVector;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    #[test]
    fn closed_form_one_qubit_cases() {
        assert!(mottonen_prepare(&[1.0, 0.0]).unwrap().is_empty());
        let c = mottonen_prepare(&[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]).unwrap();
        assert_eq!(c.gates().len(), 1);
        match c.gates()[0] {
            Gate::Ry(0, a) => assert!((a + FRAC_PI_2).abs() < 1e-15),
            ref g => panic!("unexpected gate {g:?}"),
        }
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(matches!(mottonen_prepare(&[1.0, 1.0]), Err(Error::NotNormalized(_))));
        assert!(mottonen_prepare(&[1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn prepares_signed_three_qubit_state() {
        let raw = [0.3, -0.1, 0.0, 0.5, -0.4, 0.2, 0.6, -0.25];
        let n = raw.iter().map(|x: &f64| x * x).sum::<f64>().sqrt();
        let target: Vec<f64> = raw.iter().map(|x| x / n).collect();
        let c = mottonen_prepare(&target).unwrap();
        let mut s = StateVector::zero(3).unwrap();
        c.apply_to(&mut s).unwrap();
        for (a, t) in s.amplitudes().iter().zip(&target) {
            assert!((a.re - t).abs() < 1e-12 && a.im.abs() < 1e-15);
        }
    }
}
