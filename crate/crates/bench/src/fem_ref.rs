//! Nonlinear finite-element reference for the plane-stress Ramberg–Osgood
//! law: load stepping with a global Newton iteration, and a local Newton
//! inversion of `ε(σ)` at every integration point.

use qdd_core::fem_core::{assemble_system, Mesh, Metric};
use qdd_core::linalg::{Cholesky, Matrix};
use qdd_core::material_db::RambergOsgood;
use qdd_core::{Error, Result};

#[derive(Clone, Debug)]
pub struct NewtonSolution {
    pub u: Vec<f64>,
    pub strain: Vec<[f64; 3]>,
    pub stress: Vec<[f64; 3]>,
    pub newton_iterations: usize,
}

/// Compliance tangent `∂ε/∂σ` by central differences.
fn compliance(law: &RambergOsgood<f64>, sig: [f64; 3]) -> Matrix<f64> {
    let mut s = Matrix::zeros(3, 3);
    for j in 0..3 {
        let h = 1e-6 * sig[j].abs().max(1.0);
        let (mut p, mut m) = (sig, sig);
        p[j] += h;
        m[j] -= h;
        let (ep, em) = (law.strain_plane_stress(p), law.strain_plane_stress(m));
        for i in 0..3 {
            s[(i, j)] = (ep[i] - em[i]) / (2.0 * h);
        }
    }
    s
}

fn symmetric_part(a: &Matrix<f64>) -> Matrix<f64> {
    let mut s = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            s[(i, j)] = 0.5 * (a[(i, j)] + a[(j, i)]);
        }
    }
    s
}

/// Stress reproducing `eps` under the law, starting from `guess`, together
/// with the consistent tangent `∂σ/∂ε`.
pub fn stress_from_strain(law: &RambergOsgood<f64>, eps: [f64; 3], guess: [f64; 3]) -> Result<([f64; 3], Matrix<f64>)> {
    let mut sig = guess;
    let scale = eps.iter().map(|e| e.abs()).fold(1e-12, f64::max);
    for _ in 0..60 {
        let e = law.strain_plane_stress(sig);
        let r = [e[0] - eps[0], e[1] - eps[1], e[2] - eps[2]];
        let s = symmetric_part(&compliance(law, sig));
        let ch = Cholesky::factor(&s)?;
        if r.iter().map(|x| x.abs()).fold(0.0, f64::max) <= 1e-13 * scale {
            return Ok((sig, ch.inverse()));
        }
        let d = ch.solve(&r);
        for i in 0..3 {
            sig[i] -= d[i];
        }
    }
    Err(Error::InvalidParameter(format!("local stress update did not converge for strain {eps:?}")))
}

/// Solves `Σ w Bᵀ σ(B u) = f` with `steps` equal load increments.
pub fn solve_plane_stress(mesh: &Mesh<f64>, law: &RambergOsgood<f64>, steps: usize) -> Result<NewtonSolution> {
    law.validate()?;
    let elastic = Metric::plane_stress(law.e, law.nu)?;
    let sys = assemble_system(mesh, &elastic)?;
    let qps = sys.quad_points();
    let free = sys.free_dofs().to_vec();
    let n = sys.n_dofs();
    let mut u = vec![0.0; n];
    for &(d, v) in &mesh.dirichlet {
        u[d] = v;
    }
    let mut stress = vec![[0.0; 3]; qps.len()];
    let mut total_iters = 0;
    let steps = steps.max(1);
    let fnorm = free.iter().map(|&i| mesh.loads[i].powi(2)).sum::<f64>().sqrt().max(1e-300);

    for step in 1..=steps {
        let lambda = step as f64 / steps as f64;
        let mut converged = false;
        for _ in 0..50 {
            let mut r = vec![0.0; n];
            let mut k = Matrix::zeros(n, n);
            for (q, qp) in qps.iter().enumerate() {
                let e = qp.strain(&u);
                let (sig, d) = stress_from_strain(law, [e[0], e[1], e[2]], stress[q])?;
                stress[q] = sig;
                let bt_s = qp.b.tr_mul_vec(&sig);
                let kl = qp.b.transpose().mul(&d.mul(&qp.b));
                for (a, &da) in qp.dofs.iter().enumerate() {
                    r[da] += qp.weight * bt_s[a];
                    for (b, &db) in qp.dofs.iter().enumerate() {
                        k[(da, db)] += qp.weight * kl[(a, b)];
                    }
                }
            }
            let rf: Vec<f64> = free.iter().map(|&i| lambda * mesh.loads[i] - r[i]).collect();
            let rnorm = rf.iter().map(|x| x * x).sum::<f64>().sqrt();
            if rnorm <= 1e-10 * fnorm {
                converged = true;
                break;
            }
            let mut kff = Matrix::zeros(free.len(), free.len());
            for (i, &di) in free.iter().enumerate() {
                for (j, &dj) in free.iter().enumerate() {
                    kff[(i, j)] = k[(di, dj)];
                }
            }
            let du = Cholesky::factor(&symmetric_part(&kff))?.solve(&rf);
            for (&d, x) in free.iter().zip(du) {
                u[d] += x;
            }
            total_iters += 1;
        }
        if !converged {
            return Err(Error::InvalidParameter(format!("Newton failed to converge at load step {step}")));
        }
    }
    let strain = qps
        .iter()
        .map(|qp| {
            let e = qp.strain(&u);
            [e[0], e[1], e[2]]
        })
        .collect();
    Ok(NewtonSolution {
        u,
        strain,
        stress,
        newton_iterations: total_iters,
    })
}
