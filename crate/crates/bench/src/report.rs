//! Per-run records and their aggregates.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub seed: u64,
    pub n_s: u64,
    pub iterations: usize,
    pub converged: bool,
    pub penalty: f64,
    /// RMS error of the assigned data stress against the reference run.
    pub rms_stress_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stats {
    pub mean: f64,
    /// Only present with at least two samples.
    pub p5: Option<f64>,
    pub p95: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub n_s: u64,
    pub runs: usize,
    pub converged: usize,
    pub iterations: Stats,
    pub median_iterations: f64,
    pub penalty: Stats,
    pub rms_stress_error: Stats,
}

/// Linear-interpolation percentile of `sorted` (ascending), `q ∈ [0, 1]`.
pub fn percentile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let pos = q.clamp(0.0, 1.0) * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn stats(values: &[f64]) -> Stats {
    let mean = values.iter().sum::<f64>() / values.len().max(1) as f64;
    if values.len() < 2 {
        return Stats { mean, p5: None, p95: None };
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Stats {
        mean,
        p5: Some(percentile(&v, 0.05)),
        p95: Some(percentile(&v, 0.95)),
    }
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    percentile(&v, 0.5)
}

pub fn aggregate(n_s: u64, records: &[Record]) -> Aggregate {
    let its: Vec<f64> = records.iter().map(|r| r.iterations as f64).collect();
    let pen: Vec<f64> = records.iter().map(|r| r.penalty).collect();
    let rms: Vec<f64> = records.iter().map(|r| r.rms_stress_error).collect();
    Aggregate {
        n_s,
        runs: records.len(),
        converged: records.iter().filter(|r| r.converged).count(),
        iterations: stats(&its),
        median_iterations: median(&its),
        penalty: stats(&pen),
        rms_stress_error: stats(&rms),
    }
}

/// `√(Σ w |σ − σ_ref|² / Σ w)`
pub fn rms_stress_error(weights: &[f64], sig: &[Vec<f64>], reference: &[Vec<f64>]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for ((w, s), r) in weights.iter().zip(sig).zip(reference) {
        num += w * s.iter().zip(r).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
        den += w;
    }
    (num / den).sqrt()
}

/// `max |σx − σx_ref| / max |σx_ref|` over integration points.
pub fn max_relative_error(values: &[f64], reference: &[f64]) -> f64 {
    let scale = reference.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let diff = values.iter().zip(reference).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    diff / scale
}

pub const RECORD_HEADER: &str = "seed,n_s,iterations,converged,penalty,rms_stress_error";

pub fn records_csv(records: &[Record]) -> String {
    let mut s = format!("{RECORD_HEADER}\n");
    for r in records {
        let _ = writeln!(
            s,
            "{},{},{},{},{:.16e},{:.16e}",
            r.seed, r.n_s, r.iterations, r.converged, r.penalty, r.rms_stress_error
        );
    }
    s
}

pub fn aggregates_csv(aggs: &[Aggregate]) -> String {
    let opt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x:.10e}"));
    let mut s = String::from(
        "n_s,runs,converged,iter_mean,iter_median,iter_p5,iter_p95,penalty_mean,penalty_p5,penalty_p95,rms_mean,rms_p5,rms_p95\n",
    );
    for a in aggs {
        let _ = writeln!(
            s,
            "{},{},{},{:.6},{},{},{},{:.10e},{},{},{:.10e},{},{}",
            a.n_s,
            a.runs,
            a.converged,
            a.iterations.mean,
            a.median_iterations,
            opt(a.iterations.p5),
            opt(a.iterations.p95),
            a.penalty.mean,
            opt(a.penalty.p5),
            opt(a.penalty.p95),
            a.rms_stress_error.mean,
            opt(a.rms_stress_error.p5),
            opt(a.rms_stress_error.p95),
        );
    }
    s
}
