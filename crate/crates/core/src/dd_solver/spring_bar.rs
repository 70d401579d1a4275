//! A bar in series with a linear spring whose far end is displaced by `u0`:
//! a data-driven problem with a single material point whose admissible set
//! is the line `A σ + k L ε = k u0`.

use super::{HistoryRecord, SearchData, SolverConfig, Termination};
use crate::fem_core::Metric;
use crate::material_db::Database;
use crate::scalar::Real;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpringBar<T> {
    /// Spring constant (N/mm).
    pub k_spring: T,
    /// Displacement imposed at the free end of the spring (mm).
    pub u0: T,
    pub length: T,
    pub area: T,
}

impl<T: Real> SpringBar<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.k_spring > T::zero()) {
            return Err(Error::InvalidParameter("spring constant must be positive".into()));
        }
        if !(self.length > T::zero() && self.area > T::zero()) {
            return Err(Error::InvalidParameter("bar length and area must be positive".into()));
        }
        Ok(())
    }

    /// Coefficients `(a, b, c)` of the line `a σ + b ε = c`.
    pub fn line(&self) -> (T, T, T) {
        (self.area, self.k_spring * self.length, self.k_spring * self.u0)
    }
}

/// C-metric projection of `(ε*, σ*)` onto `a σ + b ε = c`.
pub fn project_onto_line<T: Real>(line: (T, T, T), c_ref: T, eps_star: T, sig_star: T) -> (T, T) {
    let (a, b, c) = line;
    let two = T::lit(2.0);
    let lambda = two * (c - a * sig_star - b * eps_star) / (a * a * c_ref + b * b / c_ref);
    (eps_star + lambda * b / (two * c_ref), sig_star + lambda * a * c_ref / two)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpringBarResult<T> {
    pub assignment: usize,
    pub eps: T,
    pub sig: T,
    /// Exact distance between the final admissible state and its datum.
    pub penalty: T,
    pub history: Vec<HistoryRecord<T>>,
    pub termination: Termination,
}

impl<T> SpringBarResult<T> {
    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }
}

pub fn solve_spring_bar<T: Real>(
    db: &Database<T>,
    setup: &SpringBar<T>,
    metric: &Metric<T>,
    config: &SolverConfig<T>,
) -> Result<SpringBarResult<T>> {
    setup.validate()?;
    config.validate()?;
    if db.dim() != 1 || metric.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: db.dim().max(metric.dim()),
        });
    }
    let c_ref = metric.c()[(0, 0)];
    let line = setup.line();
    let scaled = db.scaled(metric)?;
    let data = SearchData::new(&scaled, scaled.default_delta(config.delta_rel), config)?;
    let search = data.search(&scaled, config);

    let admissible = |j: usize| {
        let p = &db.points()[j];
        let (e, s) = project_onto_line(line, c_ref, p.eps[0], p.sig[0]);
        let d = metric.energy_distance(&[e - p.eps[0]], &[s - p.sig[0]]);
        (e, s, d)
    };
    let mut j = super::init_assignments(&scaled, 1, config)?[0];
    let (mut eps, mut sig, mut pen) = admissible(j);
    let mut history = vec![HistoryRecord {
        iter: 0,
        penalty: pen,
        changed: 1,
        queries: 0,
    }];
    let mut termination = Termination::MaxIterations;
    for it in 0..config.max_iter {
        let x = [metric.scale_strain(&[eps])[0], metric.scale_stress(&[sig])[0]];
        let next = search.nearest(&x, j, 0, it as u64)?;
        let changed = usize::from(next != j);
        j = next;
        (eps, sig, pen) = admissible(j);
        history.push(HistoryRecord {
            iter: it + 1,
            penalty: pen,
            changed,
            queries: db.len() as u64,
        });
        if changed == 0 {
            termination = Termination::Converged;
            break;
        }
    }
    Ok(SpringBarResult {
        assignment: j,
        eps,
        sig,
        penalty: pen,
        history,
        termination,
    })
}
