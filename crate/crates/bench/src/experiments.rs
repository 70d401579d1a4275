//! Experiment drivers shared by the CLI and the acceptance suite.

use rayon::prelude::*;

use qdd_core::dd_solver::{run_with, solve_spring_bar, DDState, Oracle, Problem, RunResult, SolverConfig, SpringBarResult};
use qdd_core::distance_engine::{empirical_error_stats, Backend, ErrorStats};
use qdd_core::Result;

use crate::fem_ref::{solve_plane_stress, NewtonSolution};
use crate::presets::{PlatePreset, SpringBarPreset};
use crate::report::{aggregate, max_relative_error, rms_stress_error, Aggregate, Record};

/// Runs the solver, keeping every iterate when `trace` is set.
pub fn run_problem(problem: &Problem<f64>, cfg: &SolverConfig<f64>, trace: bool) -> Result<(RunResult<f64>, Vec<DDState<f64>>)> {
    let mut states = Vec::new();
    let r = run_with(problem, cfg, |s| {
        if trace {
            states.push(s.clone());
        }
    })?;
    Ok((r, states))
}

pub fn weights(problem: &Problem<f64>) -> Vec<f64> {
    problem.system.quad_points().iter().map(|q| q.weight).collect()
}

/// Data stresses `σ*` selected by `assignments`.
pub fn data_stress(problem: &Problem<f64>, assignments: &[usize]) -> Vec<Vec<f64>> {
    assignments.iter().map(|&j| problem.db.points()[j].sig.clone()).collect()
}

pub fn classical(cfg: &SolverConfig<f64>) -> SolverConfig<f64> {
    SolverConfig {
        oracle: Oracle::Classical,
        ..cfg.clone()
    }
}

pub fn record(problem: &Problem<f64>, r: &RunResult<f64>, reference: &[Vec<f64>], seed: u64, n_s: u64) -> Record {
    Record {
        seed,
        n_s,
        iterations: r.iterations(),
        converged: r.converged(),
        penalty: r.state.penalty,
        rms_stress_error: rms_stress_error(&weights(problem), &data_stress(problem, &r.state.assignments), reference),
    }
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub reference: RunResult<f64>,
    pub records: Vec<Record>,
    pub aggregates: Vec<Aggregate>,
    /// Mean penalty per iteration index and `n_s`, runs that stopped early
    /// carrying their final value forward.
    pub mean_curves: Vec<(u64, Vec<f64>)>,
}

/// Mean penalty per iteration across runs, holding each run's last value
/// after it stops.
pub fn mean_penalty_curve(runs: &[&RunResult<f64>]) -> Vec<f64> {
    let len = runs.iter().map(|r| r.history.len()).max().unwrap_or(0);
    (0..len)
        .map(|k| {
            runs.iter()
                .map(|r| r.history[k.min(r.history.len() - 1)].penalty)
                .sum::<f64>()
                / runs.len() as f64
        })
        .collect()
}

/// Every `(n_s, seed)` cell of a sweep with the oracle of `base`; stress
/// errors are measured against the classical run from the same start.
pub fn sweep(problem: &Problem<f64>, base: &SolverConfig<f64>, shots: &[u64], seeds: u64) -> Result<SweepOutcome> {
    let (reference, _) = run_problem(problem, &classical(base), false)?;
    let ref_sig = data_stress(problem, &reference.state.assignments);
    let cells: Vec<(u64, u64)> = shots.iter().flat_map(|&n| (0..seeds).map(move |s| (n, s))).collect();
    let runs: Vec<(u64, u64, RunResult<f64>)> = cells
        .par_iter()
        .map(|&(n_s, seed)| {
            let cfg = SolverConfig {
                n_s,
                seed,
                ..base.clone()
            };
            run_problem(problem, &cfg, false).map(|(r, _)| (n_s, seed, r))
        })
        .collect::<Result<_>>()?;
    let records: Vec<Record> = runs.iter().map(|(n, s, r)| record(problem, r, &ref_sig, *s, *n)).collect();
    let mut aggregates = Vec::new();
    let mut mean_curves = Vec::new();
    for &n in shots {
        let recs: Vec<Record> = records.iter().filter(|r| r.n_s == n).cloned().collect();
        aggregates.push(aggregate(n, &recs));
        let rs: Vec<&RunResult<f64>> = runs.iter().filter(|(m, _, _)| *m == n).map(|(_, _, r)| r).collect();
        mean_curves.push((n, mean_penalty_curve(&rs)));
    }
    Ok(SweepOutcome {
        reference,
        records,
        aggregates,
        mean_curves,
    })
}

pub fn springbar(preset: &SpringBarPreset, cfg: &SolverConfig<f64>) -> Result<SpringBarResult<f64>> {
    solve_spring_bar(&preset.database()?, &preset.setup, &preset.metric()?, cfg)
}

#[derive(Clone, Debug)]
pub struct PlateOutcome {
    pub problem: Problem<f64>,
    pub dd: RunResult<f64>,
    /// Every iterate when run with `trace`, else empty.
    pub states: Vec<DDState<f64>>,
    pub reference: NewtonSolution,
    /// Max relative σx error of the admissible stress against the reference.
    pub sx_error: f64,
    /// Same for the assigned data stress.
    pub sx_error_data: f64,
    pub equilibrium_residual: f64,
}

pub fn plate(preset: &PlatePreset, cfg: &SolverConfig<f64>, load_steps: usize, trace: bool) -> Result<PlateOutcome> {
    let problem = preset.problem()?;
    let reference = solve_plane_stress(&preset.mesh()?, &preset.law, load_steps)?;
    let (dd, states) = run_problem(&problem, cfg, trace)?;
    let sx_ref: Vec<f64> = reference.stress.iter().map(|s| s[0]).collect();
    let sx: Vec<f64> = dd.state.sig_adm.iter().map(|s| s[0]).collect();
    let sx_data: Vec<f64> = data_stress(&problem, &dd.state.assignments).iter().map(|s| s[0]).collect();
    Ok(PlateOutcome {
        sx_error: max_relative_error(&sx, &sx_ref),
        sx_error_data: max_relative_error(&sx_data, &sx_ref),
        equilibrium_residual: problem.equilibrium_residual(&dd.state)?,
        problem,
        dd,
        states,
        reference,
    })
}

pub fn swaptest_demo(x: &[f64], xp: &[f64], n_s: u64, trials: usize, backend: Backend, seed: u64) -> Result<ErrorStats<f64>> {
    empirical_error_stats(x, xp, n_s, trials, backend, seed)
}
