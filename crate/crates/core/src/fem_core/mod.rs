//! Finite-element side of the data-driven scheme: meshes, the scaling
//! metric, assembly of `K = Σ w Bᵀ C B`, the two reduced solves for the
//! displacement `u` and the multiplier `η`, and recovery of the admissible
//! strain/stress state at every integration point.
//!
//! Strains use engineering shear (`γ_xy = 2 ε_xy`) throughout, so the
//! plane-stress `C` below is the usual Voigt elasticity matrix and
//! `Δεᵀ C Δε` is an energy density.

mod mesh_io;
mod tri6;

pub use mesh_io::{parse_mesh, read_mesh, write_mesh};
pub use tri6::{shape_derivatives, shape_functions, TRI3_POINTS};

use crate::linalg::{Cholesky, Matrix};
use crate::scalar::{norm_sq, Real};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    /// Two-node truss element, one axial dof per node.
    Bar2,
    /// Six-node quadratic triangle (corners then mid-sides 1-2, 2-3, 3-1),
    /// two dofs per node, plane stress.
    Tri6,
}

impl ElementKind {
    pub fn nodes_per_element(self) -> usize {
        match self {
            ElementKind::Bar2 => 2,
            ElementKind::Tri6 => 6,
        }
    }

    pub fn dofs_per_node(self) -> usize {
        match self {
            ElementKind::Bar2 => 1,
            ElementKind::Tri6 => 2,
        }
    }

    pub fn strain_dim(self) -> usize {
        match self {
            ElementKind::Bar2 => 1,
            ElementKind::Tri6 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ElementKind::Bar2 => "bar2",
            ElementKind::Tri6 => "tri6",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Mesh<T> {
    /// Node coordinates in mm; bars use the x coordinate only.
    pub nodes: Vec<[T; 2]>,
    pub elements: Vec<Vec<usize>>,
    pub kind: ElementKind,
    /// Cross-section area (bar2, mm²) or thickness (tri6, mm).
    pub section: T,
    /// Prescribed displacements as `(global dof, value in mm)`.
    pub dirichlet: Vec<(usize, T)>,
    /// Nodal force vector in N, one entry per global dof.
    pub loads: Vec<T>,
}

impl<T: Real> Mesh<T> {
    pub fn n_dofs(&self) -> usize {
        self.nodes.len() * self.kind.dofs_per_node()
    }

    /// Straight bar along x with `n_elements` equal elements, left end fixed
    /// and no loads.
    pub fn bar(n_elements: usize, length: T, area: T) -> Self {
        let n = n_elements.max(1);
        let h = length / T::count(n);
        let nodes = (0..=n).map(|i| [h * T::count(i), T::zero()]).collect();
        let elements = (0..n).map(|e| vec![e, e + 1]).collect();
        Self {
            nodes,
            elements,
            kind: ElementKind::Bar2,
            section: area,
            dirichlet: vec![(0, T::zero())],
            loads: vec![T::zero(); n + 1],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let npe = self.kind.nodes_per_element();
        if self.nodes.is_empty() {
            return Err(Error::BadMesh("no nodes".into()));
        }
        if !(self.section > T::zero()) {
            return Err(Error::BadMesh("section must be positive".into()));
        }
        for (e, conn) in self.elements.iter().enumerate() {
            if conn.len() != npe {
                return Err(Error::BadMesh(format!(
                    "element {e} has {} nodes, {} expects {npe}",
                    conn.len(),
                    self.kind.name()
                )));
            }
            if let Some(&n) = conn.iter().find(|&&n| n >= self.nodes.len()) {
                return Err(Error::BadMesh(format!("element {e} references node {n}")));
            }
        }
        let ndof = self.n_dofs();
        let mut seen = vec![false; ndof];
        for &(dof, _) in &self.dirichlet {
            if dof >= ndof {
                return Err(Error::BadMesh(format!("dirichlet dof {dof} out of range")));
            }
            if std::mem::replace(&mut seen[dof], true) {
                return Err(Error::BadMesh(format!("dirichlet dof {dof} given twice")));
            }
        }
        if self.loads.len() != ndof {
            return Err(Error::DimensionMismatch {
                expected: ndof,
                got: self.loads.len(),
            });
        }
        Ok(())
    }
}

/// One integration point: where it sits, which dofs it touches, its
/// strain-displacement matrix and its weight.
#[derive(Clone, Debug)]
pub struct QuadPoint<T> {
    pub element: usize,
    pub position: [T; 2],
    /// Global dofs matching the columns of `b`.
    pub dofs: Vec<usize>,
    /// Strain per unit dof displacement, `strain_dim × dofs.len()`.
    pub b: Matrix<T>,
    /// Integration weight (mm³).
    pub weight: T,
}

impl<T: Real> QuadPoint<T> {
    pub fn strain(&self, u: &[T]) -> Vec<T> {
        let local: Vec<T> = self.dofs.iter().map(|&d| u[d]).collect();
        self.b.mul_vec(&local)
    }

    /// Adds `scale · w Bᵀ v` into the global vector `out`.
    fn scatter_bt(&self, v: &[T], scale: T, out: &mut [T]) {
        let local = self.b.tr_mul_vec(v);
        for (&d, x) in self.dofs.iter().zip(local) {
            out[d] = out[d] + scale * self.weight * x;
        }
    }
}

/// The symmetric positive-definite scaling `C` of the distance
/// `Δεᵀ C Δε + Δσᵀ C⁻¹ Δσ`, stored with its Cholesky factor `C = L Lᵀ`.
#[derive(Clone, Debug)]
pub struct Metric<T> {
    c: Matrix<T>,
    c_inv: Matrix<T>,
    l: Matrix<T>,
    l_inv: Matrix<T>,
}

impl<T: Real> Metric<T> {
    pub fn new(c: Matrix<T>) -> Result<Self> {
        if !c.is_symmetric(T::lit(1e-12)) {
            return Err(Error::InvalidParameter("metric must be symmetric".into()));
        }
        let ch = Cholesky::factor(&c)?;
        let l = ch.lower().clone();
        let n = c.rows();
        // L⁻¹ column by column via forward substitution
        let mut l_inv = Matrix::zeros(n, n);
        let mut e = vec![T::zero(); n];
        for j in 0..n {
            e.iter_mut().for_each(|x| *x = T::zero());
            e[j] = T::one();
            let col = ch.forward(&e);
            for i in 0..n {
                l_inv[(i, j)] = col[i];
            }
        }
        let c_inv = ch.inverse();
        Ok(Self { c, c_inv, l, l_inv })
    }

    /// 1D metric `C = e_ref`.
    pub fn scalar(e_ref: T) -> Result<Self> {
        if !(e_ref > T::zero()) {
            return Err(Error::InvalidParameter("reference modulus must be positive".into()));
        }
        Self::new(Matrix::from_rows(&[&[e_ref]]))
    }

    /// Isotropic plane-stress elasticity matrix (engineering shear).
    pub fn plane_stress(e_ref: T, nu: T) -> Result<Self> {
        if !(e_ref > T::zero()) || !(nu > -T::one() && nu < T::lit(0.5)) {
            return Err(Error::InvalidParameter(format!(
                "plane-stress metric needs E > 0 and -1 < nu < 0.5 (E={e_ref}, nu={nu})"
            )));
        }
        let f = e_ref / (T::one() - nu * nu);
        let z = T::zero();
        let half = (T::one() - nu) / T::lit(2.0);
        Self::new(Matrix::from_rows(&[
            &[f, f * nu, z],
            &[f * nu, f, z],
            &[z, z, f * half],
        ]))
    }

    pub fn dim(&self) -> usize {
        self.c.rows()
    }

    pub fn c(&self) -> &Matrix<T> {
        &self.c
    }

    pub fn c_inv(&self) -> &Matrix<T> {
        &self.c_inv
    }

    /// Lower factor with `C = L Lᵀ`.
    pub fn factor(&self) -> &Matrix<T> {
        &self.l
    }

    /// `Lᵀ ε`, whose squared norm is `εᵀ C ε`.
    pub fn scale_strain(&self, eps: &[T]) -> Vec<T> {
        self.l.tr_mul_vec(eps)
    }

    /// `L⁻¹ σ`, whose squared norm is `σᵀ C⁻¹ σ`.
    pub fn scale_stress(&self, sig: &[T]) -> Vec<T> {
        self.l_inv.mul_vec(sig)
    }

    /// Direct evaluation of `Δεᵀ C Δε + Δσᵀ C⁻¹ Δσ`.
    pub fn energy_distance(&self, d_eps: &[T], d_sig: &[T]) -> T {
        let ce = self.c.mul_vec(d_eps);
        let cs = self.c_inv.mul_vec(d_sig);
        crate::scalar::dot(d_eps, &ce) + crate::scalar::dot(d_sig, &cs)
    }
}

/// Assembled stiffness with constraints applied and its factorization.
#[derive(Clone, Debug)]
pub struct AssembledSystem<T> {
    k: Matrix<T>,
    quad_points: Vec<QuadPoint<T>>,
    metric: Metric<T>,
    strain_dim: usize,
    n_dofs: usize,
    free: Vec<usize>,
    prescribed: Vec<(usize, T)>,
    chol: Cholesky<T>,
}

/// Builds `K = Σ w Bᵀ C B` and factors its free-free block.
pub fn assemble_system<T: Real>(mesh: &Mesh<T>, metric: &Metric<T>) -> Result<AssembledSystem<T>> {
    mesh.validate()?;
    let strain_dim = mesh.kind.strain_dim();
    if metric.dim() != strain_dim {
        return Err(Error::DimensionMismatch {
            expected: strain_dim,
            got: metric.dim(),
        });
    }
    let quad_points = quadrature_points(mesh)?;
    let n = mesh.n_dofs();
    let mut k = Matrix::zeros(n, n);
    for qp in &quad_points {
        let cb = metric.c().mul(&qp.b);
        let ke = qp.b.transpose().mul(&cb);
        for (a, &da) in qp.dofs.iter().enumerate() {
            for (b, &db) in qp.dofs.iter().enumerate() {
                k[(da, db)] = k[(da, db)] + qp.weight * ke[(a, b)];
            }
        }
    }

    let mut is_fixed = vec![false; n];
    for &(d, _) in &mesh.dirichlet {
        is_fixed[d] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&d| !is_fixed[d]).collect();
    let mut kff = Matrix::zeros(free.len(), free.len());
    for (i, &di) in free.iter().enumerate() {
        for (j, &dj) in free.iter().enumerate() {
            kff[(i, j)] = k[(di, dj)];
        }
    }
    let chol = Cholesky::factor(&kff).map_err(|_| Error::InsufficientBoundaryConditions)?;

    Ok(AssembledSystem {
        k,
        quad_points,
        metric: metric.clone(),
        strain_dim,
        n_dofs: n,
        free,
        prescribed: mesh.dirichlet.clone(),
        chol,
    })
}

fn quadrature_points<T: Real>(mesh: &Mesh<T>) -> Result<Vec<QuadPoint<T>>> {
    let mut out = Vec::new();
    for (e, conn) in mesh.elements.iter().enumerate() {
        match mesh.kind {
            ElementKind::Bar2 => {
                let (xa, xb) = (mesh.nodes[conn[0]][0], mesh.nodes[conn[1]][0]);
                let len = xb - xa;
                if !(len.abs() > T::zero()) {
                    return Err(Error::BadMesh(format!("bar element {e} has zero length")));
                }
                // signed length keeps B consistent with the node order
                let inv = T::one() / len;
                out.push(QuadPoint {
                    element: e,
                    position: [(xa + xb) / T::lit(2.0), T::zero()],
                    dofs: vec![conn[0], conn[1]],
                    b: Matrix::from_rows(&[&[-inv, inv]]),
                    weight: mesh.section * len.abs(),
                });
            }
            ElementKind::Tri6 => {
                let xy: Vec<[T; 2]> = conn.iter().map(|&n| mesh.nodes[n]).collect();
                for &(xi, eta, w) in TRI3_POINTS.iter() {
                    let (xi, eta, w) = (T::lit(xi), T::lit(eta), T::lit(w));
                    let (dxi, deta) = shape_derivatives(xi, eta);
                    let mut j = [[T::zero(); 2]; 2];
                    for a in 0..6 {
                        j[0][0] = j[0][0] + dxi[a] * xy[a][0];
                        j[0][1] = j[0][1] + dxi[a] * xy[a][1];
                        j[1][0] = j[1][0] + deta[a] * xy[a][0];
                        j[1][1] = j[1][1] + deta[a] * xy[a][1];
                    }
                    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
                    if !(det > T::zero()) {
                        return Err(Error::BadMesh(format!(
                            "tri6 element {e} has non-positive Jacobian {det}"
                        )));
                    }
                    let n = shape_functions(xi, eta);
                    let mut b = Matrix::zeros(3, 12);
                    let mut pos = [T::zero(); 2];
                    for a in 0..6 {
                        let dx = (j[1][1] * dxi[a] - j[0][1] * deta[a]) / det;
                        let dy = (-j[1][0] * dxi[a] + j[0][0] * deta[a]) / det;
                        b[(0, 2 * a)] = dx;
                        b[(1, 2 * a + 1)] = dy;
                        b[(2, 2 * a)] = dy;
                        b[(2, 2 * a + 1)] = dx;
                        pos[0] = pos[0] + n[a] * xy[a][0];
                        pos[1] = pos[1] + n[a] * xy[a][1];
                    }
                    out.push(QuadPoint {
                        element: e,
                        position: pos,
                        dofs: conn.iter().flat_map(|&n| [2 * n, 2 * n + 1]).collect(),
                        b,
                        weight: mesh.section * det * w,
                    });
                }
            }
        }
    }
    Ok(out)
}

impl<T: Real> AssembledSystem<T> {
    /// Full stiffness before constraints.
    pub fn stiffness(&self) -> &Matrix<T> {
        &self.k
    }

    pub fn quad_points(&self) -> &[QuadPoint<T>] {
        &self.quad_points
    }

    pub fn metric(&self) -> &Metric<T> {
        &self.metric
    }

    pub fn strain_dim(&self) -> usize {
        self.strain_dim
    }

    pub fn n_dofs(&self) -> usize {
        self.n_dofs
    }

    pub fn free_dofs(&self) -> &[usize] {
        &self.free
    }

    fn check_fields(&self, fields: &[Vec<T>]) -> Result<()> {
        if fields.len() != self.quad_points.len() {
            return Err(Error::DimensionMismatch {
                expected: self.quad_points.len(),
                got: fields.len(),
            });
        }
        if let Some(f) = fields.iter().find(|f| f.len() != self.strain_dim) {
            return Err(Error::DimensionMismatch {
                expected: self.strain_dim,
                got: f.len(),
            });
        }
        Ok(())
    }

    /// `Σ w Bᵀ C ε*`
    pub fn strain_rhs(&self, eps_star: &[Vec<T>]) -> Result<Vec<T>> {
        self.check_fields(eps_star)?;
        let mut rhs = vec![T::zero(); self.n_dofs];
        for (qp, eps) in self.quad_points.iter().zip(eps_star) {
            qp.scatter_bt(&self.metric.c().mul_vec(eps), T::one(), &mut rhs);
        }
        Ok(rhs)
    }

    /// `Σ w Bᵀ σ`
    pub fn internal_force(&self, sig: &[Vec<T>]) -> Result<Vec<T>> {
        self.check_fields(sig)?;
        let mut out = vec![T::zero(); self.n_dofs];
        for (qp, s) in self.quad_points.iter().zip(sig) {
            qp.scatter_bt(s, T::one(), &mut out);
        }
        Ok(out)
    }

    /// Solves `K x = rhs` on the free dofs with `x = prescribed` on the
    /// constrained ones.
    fn constrained_solve(&self, rhs: &[T], prescribed: bool) -> Vec<T> {
        let mut x = vec![T::zero(); self.n_dofs];
        if prescribed {
            for &(d, v) in &self.prescribed {
                x[d] = v;
            }
        }
        let rhs_f: Vec<T> = self
            .free
            .iter()
            .map(|&i| {
                let coupling: T = self.prescribed.iter().map(|&(d, _)| self.k[(i, d)] * x[d]).sum();
                rhs[i] - coupling
            })
            .collect();
        let xf = self.chol.solve(&rhs_f);
        for (&d, v) in self.free.iter().zip(xf) {
            x[d] = v;
        }
        x
    }

    /// Displacements compatible with the assigned strains:
    /// `K u = Σ w Bᵀ C ε*` with the prescribed displacements imposed.
    pub fn solve_u(&self, eps_star: &[Vec<T>]) -> Result<Vec<T>> {
        let rhs = self.strain_rhs(eps_star)?;
        Ok(self.constrained_solve(&rhs, true))
    }

    /// Multipliers restoring equilibrium: `K η = f − Σ w Bᵀ σ*`, `η = 0` on
    /// constrained dofs.
    pub fn solve_eta(&self, sigma_star: &[Vec<T>], f: &[T]) -> Result<Vec<T>> {
        if f.len() != self.n_dofs {
            return Err(Error::DimensionMismatch {
                expected: self.n_dofs,
                got: f.len(),
            });
        }
        let internal = self.internal_force(sigma_star)?;
        let rhs: Vec<T> = f.iter().zip(&internal).map(|(&a, &b)| a - b).collect();
        Ok(self.constrained_solve(&rhs, false))
    }

    /// Admissible states `ε = B u`, `σ = σ* + C B η` at every point.
    pub fn recover_admissible(
        &self,
        u: &[T],
        eta: &[T],
        sigma_star: &[Vec<T>],
    ) -> Result<Vec<(Vec<T>, Vec<T>)>> {
        for v in [u, eta] {
            if v.len() != self.n_dofs {
                return Err(Error::DimensionMismatch {
                    expected: self.n_dofs,
                    got: v.len(),
                });
            }
        }
        self.check_fields(sigma_star)?;
        Ok(self
            .quad_points
            .iter()
            .zip(sigma_star)
            .map(|(qp, s_star)| {
                let eps = qp.strain(u);
                let c_b_eta = self.metric.c().mul_vec(&qp.strain(eta));
                let sig = s_star.iter().zip(c_b_eta).map(|(&a, b)| a + b).collect();
                (eps, sig)
            })
            .collect())
    }

    /// `‖(K x − rhs)_free‖` relative to `‖rhs_free‖` (absolute when the
    /// right-hand side vanishes).
    pub fn relative_residual(&self, x: &[T], rhs: &[T]) -> T {
        let kx = self.k.mul_vec(x);
        let r: Vec<T> = self.free.iter().map(|&i| kx[i] - rhs[i]).collect();
        let b: Vec<T> = self.free.iter().map(|&i| rhs[i]).collect();
        let nb = norm_sq(&b).sqrt();
        let nr = norm_sq(&r).sqrt();
        if nb > T::zero() {
            nr / nb
        } else {
            nr
        }
    }

    /// Discrete equilibrium residual `‖(Σ w Bᵀ σ − f)_free‖`, relative to
    /// the larger of `‖f_free‖` and the magnitude of the internal forces.
    pub fn equilibrium_residual(&self, sig: &[Vec<T>], f: &[T]) -> Result<T> {
        let internal = self.internal_force(sig)?;
        let mut abs_scale = vec![T::zero(); self.n_dofs];
        for (qp, s) in self.quad_points.iter().zip(sig) {
            let abs: Vec<T> = s.iter().map(|x| x.abs()).collect();
            let local = qp.b.tr_mul_vec(&abs);
            for (&d, x) in qp.dofs.iter().zip(local) {
                abs_scale[d] = abs_scale[d] + qp.weight * x.abs();
            }
        }
        let pick = |v: &[T]| -> T { self.free.iter().map(|&i| v[i] * v[i]).sum::<T>().sqrt() };
        let r: Vec<T> = internal.iter().zip(f).map(|(&a, &b)| a - b).collect();
        let scale = pick(f).max(pick(&abs_scale)).max(T::min_positive_value());
        Ok(pick(&r) / scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_bar(c: f64) -> (Mesh<f64>, Metric<f64>) {
        (Mesh::bar(1, 100.0, 1.0), Metric::scalar(c).unwrap())
    }

    #[test]
    fn single_bar_stiffness_is_ea_over_l() {
        let (mesh, metric) = one_bar(1e4);
        let sys = assemble_system(&mesh, &metric).unwrap();
        let k = sys.stiffness();
        assert!((k[(0, 0)] - 100.0).abs() < 1e-12);
        assert!((k[(0, 1)] + 100.0).abs() < 1e-12);
        assert!((k[(1, 1)] - 100.0).abs() < 1e-12);
    }

    #[test]
    fn unconstrained_bar_is_singular() {
        let (mut mesh, metric) = one_bar(1e4);
        mesh.dirichlet.clear();
        assert!(matches!(
            assemble_system(&mesh, &metric),
            Err(Error::InsufficientBoundaryConditions)
        ));
    }

    #[test]
    fn ten_element_bar_is_tridiagonal() {
        let mesh = Mesh::<f64>::bar(10, 100.0, 1.0);
        let sys = assemble_system(&mesh, &Metric::scalar(1e4).unwrap()).unwrap();
        let k = sys.stiffness();
        for i in 0..11usize {
            for j in 0..11 {
                if i.abs_diff(j) > 1 {
                    assert_eq!(k[(i, j)], 0.0);
                }
            }
        }
        assert!(k.is_symmetric(1e-14));
    }

    #[test]
    fn single_bar_free_end_displacement() {
        let (mesh, metric) = one_bar(1e4);
        let sys = assemble_system(&mesh, &metric).unwrap();
        let u = sys.solve_u(&[vec![0.005]]).unwrap();
        assert!((u[1] - 0.5).abs() < 1e-12);
        assert_eq!(u[0], 0.0);
        let zero = sys.solve_u(&[vec![0.0]]).unwrap();
        assert!(zero.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn eta_vanishes_for_equilibrated_stress() {
        let mut mesh = Mesh::<f64>::bar(10, 100.0, 1.0);
        mesh.loads[10] = 50.0;
        let sys = assemble_system(&mesh, &Metric::scalar(1e4).unwrap()).unwrap();
        let eta = sys.solve_eta(&vec![vec![50.0]; 10], &mesh.loads).unwrap();
        assert!(eta.iter().all(|x| x.abs() < 1e-12));
        let states = sys.recover_admissible(&vec![0.0; 11], &eta, &vec![vec![50.0]; 10]).unwrap();
        assert!(states.iter().all(|(_, s)| (s[0] - 50.0).abs() < 1e-10));
    }

    #[test]
    fn eta_matches_linear_elastic_solution_when_stress_is_zero() {
        let mut mesh = Mesh::<f64>::bar(10, 100.0, 1.0);
        mesh.loads[10] = 50.0;
        let sys = assemble_system(&mesh, &Metric::scalar(1e4).unwrap()).unwrap();
        let eta = sys.solve_eta(&vec![vec![0.0]; 10], &mesh.loads).unwrap();
        // u(x) = f x / (E A)
        for (i, &e) in eta.iter().enumerate() {
            assert!((e - 50.0 * 10.0 * i as f64 / 1e4).abs() < 1e-12);
        }
    }

    #[test]
    fn mismatched_fields_rejected() {
        let (mesh, metric) = one_bar(1e4);
        let sys = assemble_system(&mesh, &metric).unwrap();
        assert!(sys.solve_u(&[]).is_err());
        assert!(sys.solve_u(&[vec![0.0, 1.0]]).is_err());
        assert!(sys.solve_eta(&[vec![0.0]], &[0.0]).is_err());
    }

    #[test]
    fn duplicate_dirichlet_rejected() {
        let mut mesh = Mesh::<f64>::bar(2, 10.0, 1.0);
        mesh.dirichlet.push((0, 0.0));
        assert!(matches!(mesh.validate(), Err(Error::BadMesh(_))));
    }

    #[test]
    fn metric_factors_are_consistent() {
        let m = Metric::<f64>::plane_stress(2.0e5, 0.3).unwrap();
        let l = m.factor();
        let llt = l.mul(&l.transpose());
        let c = m.c();
        for i in 0..3 {
            for j in 0..3 {
                assert!((llt[(i, j)] - c[(i, j)]).abs() <= 1e-10 * c.max_abs());
            }
        }
        let id = c.mul(m.c_inv());
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((id[(i, j)] - want).abs() < 1e-10);
            }
        }
        assert!(Metric::plane_stress(1.0, 0.5).is_err());
        assert!(Metric::<f64>::scalar(0.0).is_err());
    }
}
