//! Fixed-point iteration of distance-minimizing data-driven mechanics.
//!
//! Each iteration maps the current assignments `j_e` through the two
//! reduced linear solves to an admissible state `z_e` per integration point,
//! then reassigns every point to the database entry nearest to `z_e`. The
//! nearest-neighbor distances come from the configured [`Oracle`]; the
//! reported penalty always uses exact distances.

mod dump;
mod spring_bar;

pub use dump::{history_csv, state_csv, HISTORY_HEADER, STATE_HEADER};
pub use spring_bar::{project_onto_line, solve_spring_bar, SpringBar, SpringBarResult};

use rand::Rng;
use rayon::prelude::*;

use crate::distance_engine::{
    analytic_p_parts, estimate_from_count, exact_distance, gate_p, phi_psi_from_entries, Encoding,
};
use crate::fem_core::{assemble_system, AssembledSystem, Mesh, Metric};
use crate::material_db::{build_adaptive_entry, precompute_adaptive_db, AdaptiveEntry, Database, ScaledDatabase};
use crate::quantum_core::sample_measurements;
use crate::scalar::{norm_sq, Real};
use crate::stream::{StreamKey, INIT_ITERATION};
use crate::{Error, Result};

/// Source of the distances used by the nearest-neighbor search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    Classical,
    QuantumAnalytic,
    QuantumGate(Encoding),
}

impl Oracle {
    pub fn is_quantum(self) -> bool {
        !matches!(self, Oracle::Classical)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InitMode {
    /// Uniform random index per point.
    Random,
    /// Database entry nearest to the zero state, at every point.
    FixedZeroNearest,
    Given(Vec<usize>),
}

/// Where translated database entries come from in adaptive mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdaptiveSource {
    OnTheFly,
    /// All `N` translated copies of the database built up front
    /// (`O(N² D)` memory).
    Precomputed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig<T> {
    pub oracle: Oracle,
    /// Shots per distance estimate.
    pub n_s: u64,
    pub adaptive: bool,
    /// Translation length relative to the RMS norm of the scaled database.
    pub delta_rel: T,
    pub adaptive_source: AdaptiveSource,
    pub init: InitMode,
    pub max_iter: usize,
    pub seed: u64,
}

impl<T: Real> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            oracle: Oracle::Classical,
            n_s: 180,
            adaptive: true,
            delta_rel: T::lit(1e-3),
            adaptive_source: AdaptiveSource::OnTheFly,
            init: InitMode::FixedZeroNearest,
            max_iter: 100,
            seed: 0,
        }
    }
}

impl<T: Real> SolverConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.n_s == 0 {
            return Err(Error::InvalidParameter("n_s must be at least 1".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
        }
        if !(self.delta_rel > T::zero()) {
            return Err(Error::InvalidParameter("delta scale must be positive".into()));
        }
        Ok(())
    }
}

/// Assignments together with the admissible state they induce.
#[derive(Clone, Debug, PartialEq)]
pub struct DDState<T> {
    pub iter: usize,
    pub assignments: Vec<usize>,
    pub u: Vec<T>,
    pub eta: Vec<T>,
    pub eps_adm: Vec<Vec<T>>,
    pub sig_adm: Vec<Vec<T>>,
    /// `Σ w_e F_e(z_e, z*_e)` with exact distances.
    pub penalty: T,
    /// Points whose assignment changed in the step that produced this state.
    pub changed_count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HistoryRecord<T> {
    pub iter: usize,
    pub penalty: T,
    pub changed: usize,
    /// Distance queries issued in this iteration.
    pub queries: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    Converged,
    MaxIterations,
}

#[derive(Clone, Debug)]
pub struct RunResult<T> {
    /// The converged state, or the best-penalty state otherwise.
    pub state: DDState<T>,
    pub last: DDState<T>,
    pub history: Vec<HistoryRecord<T>>,
    pub termination: Termination,
}

impl<T> RunResult<T> {
    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }

    /// Iterations performed after initialization.
    pub fn iterations(&self) -> usize {
        self.history.last().map_or(0, |h| h.iter)
    }
}

/// A meshed boundary-value problem paired with a material database.
#[derive(Clone, Debug)]
pub struct Problem<T> {
    pub system: AssembledSystem<T>,
    pub db: Database<T>,
    pub scaled: ScaledDatabase<T>,
    pub loads: Vec<T>,
    /// Translation vector `Δ` of the adaptive search.
    delta: Vec<T>,
    delta_rel: T,
}

impl<T: Real> Problem<T> {
    pub fn new(mesh: &Mesh<T>, db: Database<T>, metric: &Metric<T>) -> Result<Self> {
        if db.dim() != mesh.kind.strain_dim() {
            return Err(Error::DimensionMismatch {
                expected: mesh.kind.strain_dim(),
                got: db.dim(),
            });
        }
        let system = assemble_system(mesh, metric)?;
        let scaled = db.scaled(metric)?;
        let delta_rel = T::lit(1e-3);
        Ok(Self {
            delta: scaled.default_delta(delta_rel),
            delta_rel,
            system,
            db,
            scaled,
            loads: mesh.loads.clone(),
        })
    }

    pub fn metric(&self) -> &Metric<T> {
        self.system.metric()
    }

    pub fn n_points(&self) -> usize {
        self.system.quad_points().len()
    }

    fn delta_for(&self, rel: T) -> Vec<T> {
        if rel == self.delta_rel {
            self.delta.clone()
        } else {
            self.scaled.default_delta(rel)
        }
    }

    /// Solves for the admissible state induced by `assignments` and its
    /// exact penalty.
    pub fn admissible_state(&self, assignments: &[usize], iter: usize, changed: usize) -> Result<DDState<T>> {
        if assignments.len() != self.n_points() {
            return Err(Error::DimensionMismatch {
                expected: self.n_points(),
                got: assignments.len(),
            });
        }
        if let Some(&j) = assignments.iter().find(|&&j| j >= self.db.len()) {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.db.len(),
            });
        }
        let eps_star: Vec<Vec<T>> = assignments.iter().map(|&j| self.db.points()[j].eps.clone()).collect();
        let sig_star: Vec<Vec<T>> = assignments.iter().map(|&j| self.db.points()[j].sig.clone()).collect();
        let u = self.system.solve_u(&eps_star)?;
        let eta = self.system.solve_eta(&sig_star, &self.loads)?;
        let (eps_adm, sig_adm): (Vec<_>, Vec<_>) = self.system.recover_admissible(&u, &eta, &sig_star)?.into_iter().unzip();
        let mut state = DDState {
            iter,
            assignments: assignments.to_vec(),
            u,
            eta,
            eps_adm,
            sig_adm,
            penalty: T::zero(),
            changed_count: changed,
        };
        state.penalty = penalty(&state, &self.db, self.metric(), &self.weights());
        Ok(state)
    }

    fn weights(&self) -> Vec<T> {
        self.system.quad_points().iter().map(|q| q.weight).collect()
    }

    /// Relative discrete equilibrium residual of a state's stresses.
    pub fn equilibrium_residual(&self, state: &DDState<T>) -> Result<T> {
        self.system.equilibrium_residual(&state.sig_adm, &self.loads)
    }
}

/// `Σ_e w_e F_e(z_e, z*_e)` with exact distances; no factor ½.
pub fn penalty<T: Real>(state: &DDState<T>, db: &Database<T>, metric: &Metric<T>, weights: &[T]) -> T {
    state
        .assignments
        .iter()
        .enumerate()
        .map(|(e, &j)| {
            let p = &db.points()[j];
            let de: Vec<T> = state.eps_adm[e].iter().zip(&p.eps).map(|(&a, &b)| a - b).collect();
            let ds: Vec<T> = state.sig_adm[e].iter().zip(&p.sig).map(|(&a, &b)| a - b).collect();
            weights[e] * metric.energy_distance(&de, &ds)
        })
        .sum()
}

/// Initial assignment per point.
pub fn init_assignments<T: Real>(scaled: &ScaledDatabase<T>, n_points: usize, config: &SolverConfig<T>) -> Result<Vec<usize>> {
    let n = scaled.len();
    if n == 0 {
        return Err(Error::EmptyDatabase);
    }
    match &config.init {
        InitMode::Random => Ok((0..n_points)
            .map(|e| StreamKey::new(config.seed, e, INIT_ITERATION, 0).rng().random_range(0..n))
            .collect()),
        InitMode::FixedZeroNearest => {
            let mut best = 0;
            let mut best_d = T::infinity();
            for (i, x) in scaled.iter().enumerate() {
                let d = norm_sq(x);
                if d < best_d {
                    best = i;
                    best_d = d;
                }
            }
            Ok(vec![best; n_points])
        }
        InitMode::Given(v) => {
            if v.len() != n_points {
                return Err(Error::DimensionMismatch {
                    expected: n_points,
                    got: v.len(),
                });
            }
            if let Some(&j) = v.iter().find(|&&j| j >= n) {
                return Err(Error::IndexOutOfRange { index: j, len: n });
            }
            Ok(v.clone())
        }
    }
}

/// Translated database, either computed per query or looked up.
pub(crate) enum Candidates<'a, T> {
    OnTheFly(&'a ScaledDatabase<T>),
    Precomputed(&'a [Vec<AdaptiveEntry<T>>]),
}

/// Everything one nearest-neighbor query needs.
pub(crate) struct Search<'a, T> {
    pub scaled: &'a ScaledDatabase<T>,
    pub precomputed: Option<&'a [Vec<AdaptiveEntry<T>>]>,
    pub delta: &'a [T],
    pub config: &'a SolverConfig<T>,
}

fn argmin<T: Real>(dist: impl Iterator<Item = T>) -> usize {
    let mut best = 0;
    let mut best_d = T::infinity();
    for (i, d) in dist.enumerate() {
        // strict comparison keeps the lowest index on ties and skips NaN
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    best
}

impl<T: Real> Search<'_, T> {
    /// Nearest database index to the scaled state `x`, whose current
    /// assignment is `current`.
    pub fn nearest(&self, x: &[T], current: usize, point: usize, iter: u64) -> Result<usize> {
        let cfg = self.config;
        let n = self.scaled.len();
        match cfg.oracle {
            Oracle::Classical => {
                let d: Vec<T> = self.scaled.iter().map(|c| exact_distance(x, c)).collect::<Result<_>>()?;
                Ok(argmin(d.into_iter()))
            }
            oracle => {
                let (query, cands) = if cfg.adaptive {
                    let xstar = self.scaled.get(current);
                    let q = build_adaptive_entry(x, xstar, self.delta)?;
                    let c = match self.precomputed {
                        Some(p) => Candidates::Precomputed(p),
                        None => Candidates::OnTheFly(self.scaled),
                    };
                    (q, c)
                } else {
                    (AdaptiveEntry::from_translated(x)?, Candidates::OnTheFly(self.scaled))
                };
                let zeros = vec![T::zero(); x.len()];
                let mut d = Vec::with_capacity(n);
                for i in 0..n {
                    let owned;
                    let cand: &AdaptiveEntry<T> = match &cands {
                        Candidates::Precomputed(p) => &p[current][i],
                        Candidates::OnTheFly(s) => {
                            owned = if cfg.adaptive {
                                build_adaptive_entry(s.get(i), s.get(current), self.delta)?
                            } else {
                                build_adaptive_entry(s.get(i), &zeros, &zeros)?
                            };
                            &owned
                        }
                    };
                    let z_hat = query.norm * query.norm + cand.norm * cand.norm;
                    let p = match oracle {
                        Oracle::QuantumGate(enc) => gate_p(&phi_psi_from_entries(&query, cand)?, enc)?,
                        _ => {
                            let s = z_hat.sqrt();
                            analytic_p_parts([query.norm / s, -cand.norm / s], &query.unit, &cand.unit)
                        }
                    };
                    let mut rng = StreamKey::new(cfg.seed, point, iter, i).rng();
                    let v = sample_measurements(p, cfg.n_s, &mut rng);
                    d.push(estimate_from_count(z_hat, v, cfg.n_s));
                }
                Ok(argmin(d.into_iter()))
            }
        }
    }
}

/// Shared per-run data of the search.
pub(crate) struct SearchData<T> {
    delta: Vec<T>,
    precomputed: Option<Vec<Vec<AdaptiveEntry<T>>>>,
}

impl<T: Real> SearchData<T> {
    pub fn new(scaled: &ScaledDatabase<T>, delta: Vec<T>, config: &SolverConfig<T>) -> Result<Self> {
        let precomputed = if config.oracle.is_quantum()
            && config.adaptive
            && config.adaptive_source == AdaptiveSource::Precomputed
        {
            Some((0..scaled.len()).map(|j| precompute_adaptive_db(scaled, j, &delta)).collect::<Result<Vec<_>>>()?)
        } else {
            None
        };
        Ok(Self { delta, precomputed })
    }

    pub fn search<'a>(&'a self, scaled: &'a ScaledDatabase<T>, config: &'a SolverConfig<T>) -> Search<'a, T> {
        Search {
            scaled,
            precomputed: self.precomputed.as_deref(),
            delta: &self.delta,
            config,
        }
    }
}

/// Initial state: assignments from the configured mode and the admissible
/// state they induce.
pub fn initial_state<T: Real>(problem: &Problem<T>, config: &SolverConfig<T>) -> Result<DDState<T>> {
    config.validate()?;
    let a = init_assignments(&problem.scaled, problem.n_points(), config)?;
    problem.admissible_state(&a, 0, 0)
}

fn step<T: Real>(state: &DDState<T>, problem: &Problem<T>, search: &Search<'_, T>) -> Result<DDState<T>> {
    let metric = problem.metric();
    let iter = state.iter as u64;
    let new: Vec<usize> = (0..problem.n_points())
        .into_par_iter()
        .map(|e| {
            let mut x = metric.scale_strain(&state.eps_adm[e]);
            x.extend(metric.scale_stress(&state.sig_adm[e]));
            search.nearest(&x, state.assignments[e], e, iter)
        })
        .collect::<Result<_>>()?;
    let changed = new.iter().zip(&state.assignments).filter(|(a, b)| a != b).count();
    problem.admissible_state(&new, state.iter + 1, changed)
}

/// One nearest-neighbor search from `state`'s admissible states followed
/// by the linear solves for the new assignments.
pub fn iterate_once<T: Real>(state: &DDState<T>, problem: &Problem<T>, config: &SolverConfig<T>) -> Result<DDState<T>> {
    config.validate()?;
    let data = SearchData::new(&problem.scaled, problem.delta_for(config.delta_rel), config)?;
    step(state, problem, &data.search(&problem.scaled, config))
}

/// Iterates until no assignment changes or `max_iter` is reached, calling
/// `observe` on every state including the initial one.
pub fn run_with<T: Real>(
    problem: &Problem<T>,
    config: &SolverConfig<T>,
    mut observe: impl FnMut(&DDState<T>),
) -> Result<RunResult<T>> {
    let mut state = initial_state(problem, config)?;
    observe(&state);
    let data = SearchData::new(&problem.scaled, problem.delta_for(config.delta_rel), config)?;
    let search = data.search(&problem.scaled, config);
    let queries = (problem.n_points() * problem.db.len()) as u64;
    let mut history = vec![HistoryRecord {
        iter: 0,
        penalty: state.penalty,
        changed: state.assignments.len(),
        queries: 0,
    }];
    let mut best = state.clone();
    let mut termination = Termination::MaxIterations;
    for _ in 0..config.max_iter {
        state = step(&state, problem, &search)?;
        observe(&state);
        history.push(HistoryRecord {
            iter: state.iter,
            penalty: state.penalty,
            changed: state.changed_count,
            queries,
        });
        if state.penalty < best.penalty {
            best = state.clone();
        }
        if state.changed_count == 0 {
            termination = Termination::Converged;
            break;
        }
    }
    let chosen = if termination == Termination::Converged { state.clone() } else { best };
    Ok(RunResult {
        state: chosen,
        last: state,
        history,
        termination,
    })
}

pub fn run<T: Real>(problem: &Problem<T>, config: &SolverConfig<T>) -> Result<RunResult<T>> {
    run_with(problem, config, |_| {})
}
