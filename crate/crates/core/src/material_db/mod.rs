//! Material databases: Ramberg–Osgood samplers, metric scaling of
//! strain/stress pairs into Euclidean vectors, and the translated
//! ("adaptive") entries fed to the swap-test oracle.

mod csv_io;

pub use csv_io::{
    format_adaptive, format_database, parse_adaptive, parse_database, read_adaptive, read_database,
    write_adaptive, write_database,
};

use crate::fem_core::Metric;
use crate::scalar::{norm_sq, Real};
use crate::{Error, Result};

/// One strain/stress pair. Shear strain is engineering shear.
#[derive(Clone, Debug, PartialEq)]
pub struct MaterialPoint<T> {
    pub eps: Vec<T>,
    pub sig: Vec<T>,
}

impl<T: Real> MaterialPoint<T> {
    pub fn new(eps: Vec<T>, sig: Vec<T>) -> Self {
        Self { eps, sig }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            eps: vec![T::zero(); dim],
            sig: vec![T::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.eps.len()
    }
}

/// Ordered collection of material points. The index order is the
/// tie-break order of every nearest-neighbor search.
#[derive(Clone, Debug, PartialEq)]
pub struct Database<T> {
    points: Vec<MaterialPoint<T>>,
    dim: usize,
    /// Generation parameters as `key=value` pairs, echoed into files.
    pub meta: Vec<(String, String)>,
}

impl<T: Real> Database<T> {
    pub fn new(points: Vec<MaterialPoint<T>>, meta: Vec<(String, String)>) -> Result<Self> {
        let dim = points.first().ok_or(Error::EmptyDatabase)?.dim();
        if let Some(p) = points
            .iter()
            .find(|p| p.eps.len() != dim || p.sig.len() != dim)
        {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: if p.eps.len() != dim { p.eps.len() } else { p.sig.len() },
            });
        }
        Ok(Self { points, dim, meta })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Strain (and stress) dimension: 1 or 3.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[MaterialPoint<T>] {
        &self.points
    }

    pub fn get(&self, i: usize) -> Result<&MaterialPoint<T>> {
        self.points.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.points.len(),
        })
    }

    /// `rms(σ) / rms(ε)` over every component: the modulus that brings
    /// scaled strain and scaled stress to the same magnitude.
    pub fn stress_strain_ratio(&self) -> Result<T> {
        let se: T = self.points.iter().map(|p| norm_sq(&p.eps)).sum();
        let ss: T = self.points.iter().map(|p| norm_sq(&p.sig)).sum();
        if !(se > T::zero()) || !(ss > T::zero()) {
            return Err(Error::InvalidParameter(
                "database strains or stresses are all zero".into(),
            ));
        }
        Ok((ss / se).sqrt())
    }

    /// Scales every point with `metric` into flat contiguous storage.
    pub fn scaled(&self, metric: &Metric<T>) -> Result<ScaledDatabase<T>> {
        let d = 2 * self.dim;
        let mut data = Vec::with_capacity(d * self.len());
        for p in &self.points {
            data.extend(scale(p, metric)?.0);
        }
        Ok(ScaledDatabase { d, data })
    }
}

fn meta_entry(k: &str, v: impl std::fmt::Display) -> (String, String) {
    (k.to_string(), v.to_string())
}

/// Ramberg–Osgood parameters (`E`, `σ₀` in MPa).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RambergOsgood<T> {
    pub e: T,
    pub nu: T,
    pub alpha: T,
    pub sigma0: T,
    pub n: T,
}

impl<T: Real> RambergOsgood<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.e > T::zero()) || !(self.sigma0 > T::zero()) {
            return Err(Error::InvalidParameter("E and sigma0 must be positive".into()));
        }
        if !(self.alpha >= T::zero()) || !(self.n >= T::one()) {
            return Err(Error::InvalidParameter("need alpha >= 0 and n >= 1".into()));
        }
        if !(self.nu > -T::one() && self.nu < T::lit(0.5)) {
            return Err(Error::InvalidParameter("need -1 < nu < 0.5".into()));
        }
        Ok(())
    }

    /// `ε = σ/E + α (σ/E) (|σ|/σ₀)^(n−1)`
    pub fn strain_1d(&self, sigma: T) -> T {
        let lin = sigma / self.e;
        lin + self.alpha * lin * (sigma.abs() / self.sigma0).powf(self.n - T::one())
    }

    /// Plane-stress strain `(εx, εy, γxy)` for stress `(σx, σy, σxy)`,
    /// evaluated on the full 3D tensor with `σz = 0`.
    pub fn strain_plane_stress(&self, sig: [T; 3]) -> [T; 3] {
        let three = T::lit(3.0);
        let [sx, sy, sxy] = sig;
        // hydrostatic p = −tr(σ)/3, deviator σᵈ = σ + p I
        let p = -(sx + sy) / three;
        let (dx, dy, dz) = (sx + p, sy + p, p);
        let dd = dx * dx + dy * dy + dz * dz + T::lit(2.0) * sxy * sxy;
        let mises = (T::lit(1.5) * dd).sqrt();
        let g = T::one()
            + self.nu
            + T::lit(1.5) * self.alpha * (mises / self.sigma0).powf(self.n - T::one());
        let vol = (T::one() - T::lit(2.0) * self.nu) * p;
        let ex = (g * dx - vol) / self.e;
        let ey = (g * dy - vol) / self.e;
        let exy = g * sxy / self.e;
        [ex, ey, T::lit(2.0) * exy]
    }

    fn meta(&self) -> Vec<(String, String)> {
        vec![
            meta_entry("E", self.e),
            meta_entry("nu", self.nu),
            meta_entry("alpha", self.alpha),
            meta_entry("sigma0", self.sigma0),
            meta_entry("n", self.n),
        ]
    }
}

fn grid<T: Real>(range: (T, T), count: usize) -> Result<Vec<T>> {
    let (lo, hi) = range;
    if count < 2 {
        return Err(Error::InvalidParameter("need at least 2 samples per range".into()));
    }
    if !(lo < hi) {
        return Err(Error::InvalidParameter(format!("stress range [{lo}, {hi}] is empty or inverted")));
    }
    let steps = T::count(count - 1);
    Ok((0..count)
        .map(|i| lo + (hi - lo) * T::count(i) / steps)
        .collect())
}

/// Uniform stress samples on `sigma_range` mapped through the 1D law.
pub fn gen_ramberg_osgood_1d<T: Real>(
    law: &RambergOsgood<T>,
    sigma_range: (T, T),
    count: usize,
) -> Result<Database<T>> {
    law.validate()?;
    let points = grid(sigma_range, count)?
        .into_iter()
        .map(|s| MaterialPoint::new(vec![law.strain_1d(s)], vec![s]))
        .collect();
    let mut meta = law.meta();
    meta.push(meta_entry("sigma_range", format!("{}:{}", sigma_range.0, sigma_range.1)));
    meta.push(meta_entry("count", count));
    Database::new(points, meta)
}

/// Tensor grid over `(σx, σy, σxy)`, `σx` outermost.
pub fn gen_ramberg_osgood_plane_stress<T: Real>(
    law: &RambergOsgood<T>,
    ranges: [(T, T); 3],
    counts: [usize; 3],
) -> Result<Database<T>> {
    law.validate()?;
    let gx = grid(ranges[0], counts[0])?;
    let gy = grid(ranges[1], counts[1])?;
    let gxy = grid(ranges[2], counts[2])?;
    let mut points = Vec::with_capacity(gx.len() * gy.len() * gxy.len());
    for &sx in &gx {
        for &sy in &gy {
            for &sxy in &gxy {
                let sig = [sx, sy, sxy];
                points.push(MaterialPoint::new(law.strain_plane_stress(sig).to_vec(), sig.to_vec()));
            }
        }
    }
    let mut meta = law.meta();
    for (name, r, c) in [("x", ranges[0], counts[0]), ("y", ranges[1], counts[1]), ("xy", ranges[2], counts[2])] {
        meta.push(meta_entry(&format!("sigma_{name}_range"), format!("{}:{}", r.0, r.1)));
        meta.push(meta_entry(&format!("count_{name}"), c));
    }
    Database::new(points, meta)
}

/// Metric-scaled point `[Lᵀ ε ; L⁻¹ σ]`, so that squared Euclidean
/// distances equal the energy distance.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledVector<T>(pub Vec<T>);

impl<T: Real> ScaledVector<T> {
    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn norm(&self) -> T {
        norm_sq(&self.0).sqrt()
    }
}

pub fn scale<T: Real>(point: &MaterialPoint<T>, metric: &Metric<T>) -> Result<ScaledVector<T>> {
    scale_pair(&point.eps, &point.sig, metric)
}

pub fn scale_pair<T: Real>(eps: &[T], sig: &[T], metric: &Metric<T>) -> Result<ScaledVector<T>> {
    for v in [eps, sig] {
        if v.len() != metric.dim() {
            return Err(Error::DimensionMismatch {
                expected: metric.dim(),
                got: v.len(),
            });
        }
    }
    let mut x = metric.scale_strain(eps);
    x.extend(metric.scale_stress(sig));
    Ok(ScaledVector(x))
}

/// Scaled database in one contiguous buffer.
#[derive(Clone, Debug)]
pub struct ScaledDatabase<T> {
    d: usize,
    data: Vec<T>,
}

impl<T: Real> ScaledDatabase<T> {
    /// Scaled dimension `D = 2 × strain dimension`.
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.d
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[T] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks_exact(self.d)
    }

    /// Root-mean-square norm of the scaled points.
    pub fn rms_norm(&self) -> T {
        (norm_sq(&self.data) / T::count(self.len().max(1))).sqrt()
    }

    /// `Δ = δ (1, …, 1)/√D` with `δ = rel × rms_norm()`.
    pub fn default_delta(&self, rel: T) -> Vec<T> {
        let delta = rel * self.rms_norm();
        vec![delta / T::count(self.d).sqrt(); self.d]
    }
}

/// Translated database vector `X̂' = X' − X* + Δ` in the form read by the
/// solver: its norm and its direction scaled to length `1/√2`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptiveEntry<T> {
    pub norm: T,
    pub unit: Vec<T>,
}

impl<T: Real> AdaptiveEntry<T> {
    /// Builds the entry for an already translated vector.
    pub fn from_translated(v: &[T]) -> Result<Self> {
        let norm = norm_sq(v).sqrt();
        if !(norm > T::zero()) {
            return Err(Error::ZeroNorm);
        }
        let s = T::one() / (T::SQRT_2() * norm);
        Ok(Self {
            norm,
            unit: v.iter().map(|&x| x * s).collect(),
        })
    }

    /// Recovers the translated vector `norm · √2 · unit`.
    pub fn vector(&self) -> Vec<T> {
        let s = self.norm * T::SQRT_2();
        self.unit.iter().map(|&u| u * s).collect()
    }
}

/// `X̂' = x' − x* + Δ` as an adaptive entry; fails when the translated
/// vector vanishes (choose a larger Δ).
pub fn build_adaptive_entry<T: Real>(xprime: &[T], xstar: &[T], delta: &[T]) -> Result<AdaptiveEntry<T>> {
    if xstar.len() != xprime.len() || delta.len() != xprime.len() {
        return Err(Error::DimensionMismatch {
            expected: xprime.len(),
            got: if xstar.len() != xprime.len() { xstar.len() } else { delta.len() },
        });
    }
    let v: Vec<T> = xprime
        .iter()
        .zip(xstar)
        .zip(delta)
        .map(|((&a, &b), &d)| a - b + d)
        .collect();
    AdaptiveEntry::from_translated(&v)
}

/// All `N` entries of the database translated by its `j`-th point.
/// Storing this for every `j` costs `O(N² D)`.
pub fn precompute_adaptive_db<T: Real>(
    db: &ScaledDatabase<T>,
    j: usize,
    delta: &[T],
) -> Result<Vec<AdaptiveEntry<T>>> {
    if j >= db.len() {
        return Err(Error::IndexOutOfRange { index: j, len: db.len() });
    }
    let xstar = db.get(j);
    db.iter().map(|x| build_adaptive_entry(x, xstar, delta)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bar_law() -> RambergOsgood<f64> {
        RambergOsgood {
            e: 1e4,
            nu: 0.0,
            alpha: 3.0,
            sigma0: 10.0,
            n: 3.0,
        }
    }

    #[test]
    fn ramberg_osgood_1d_values() {
        let law = bar_law();
        assert_eq!(law.strain_1d(0.0), 0.0);
        assert!((law.strain_1d(10.0) - 0.004).abs() < 1e-15);
        let db = gen_ramberg_osgood_1d(&law, (-5.0, 60.0), 100).unwrap();
        assert_eq!(db.len(), 100);
        assert_eq!(db.points()[0].sig[0], -5.0);
        assert_eq!(db.points()[99].sig[0], 60.0);
        for w in db.points().windows(2) {
            assert!(w[1].eps[0] > w[0].eps[0]);
        }
    }

    #[test]
    fn generator_rejects_bad_parameters() {
        let law = bar_law();
        assert!(gen_ramberg_osgood_1d(&law, (60.0, -5.0), 100).is_err());
        assert!(gen_ramberg_osgood_1d(&law, (-5.0, 60.0), 1).is_err());
        let bad = RambergOsgood { e: 0.0, ..law };
        assert!(gen_ramberg_osgood_1d(&bad, (-5.0, 60.0), 10).is_err());
    }

    #[test]
    fn plane_stress_elastic_limit_is_hooke() {
        let law = RambergOsgood {
            e: 2e5f64,
            nu: 0.3,
            alpha: 0.0,
            sigma0: 300.0,
            n: 3.0,
        };
        let s = 120.0;
        let [ex, ey, gxy] = law.strain_plane_stress([s, 0.0, 0.0]);
        assert!((ex - s / 2e5).abs() < 1e-16);
        assert!((ey + 0.3 * s / 2e5).abs() < 1e-16);
        assert_eq!(gxy, 0.0);
        let [_, _, g] = law.strain_plane_stress([0.0, 0.0, 50.0]);
        assert!((g - 50.0 * 2.0 * 1.3 / 2e5).abs() < 1e-16);
        assert_eq!(law.strain_plane_stress([0.0; 3]), [0.0; 3]);
    }

    #[test]
    fn plane_stress_grid_size_and_order() {
        let law = RambergOsgood {
            e: 1e5,
            nu: 0.3,
            alpha: 0.2,
            sigma0: 300.0,
            n: 3.0,
        };
        let db = gen_ramberg_osgood_plane_stress(
            &law,
            [(-1000.0, 10.0), (-250.0, 600.0), (-150.0, 350.0)],
            [3, 4, 5],
        )
        .unwrap();
        assert_eq!(db.len(), 60);
        assert_eq!(db.dim(), 3);
        assert_eq!(db.points()[1].sig, vec![-1000.0, -250.0, -25.0]);
    }

    #[test]
    fn scaling_1d_example() {
        let m = Metric::<f64>::scalar(1e4).unwrap();
        let x = scale(&MaterialPoint::new(vec![0.01], vec![50.0]), &m).unwrap();
        assert!((x.0[0] - 1.0).abs() < 1e-15 && (x.0[1] - 0.5).abs() < 1e-15);
        let z = scale(&MaterialPoint::zero(1), &m).unwrap();
        assert_eq!(z.0, vec![0.0, 0.0]);
        assert!(scale(&MaterialPoint::zero(3), &m).is_err());
    }

    #[test]
    fn adaptive_entry_examples() {
        let e = build_adaptive_entry::<f64>(&[0.3, 0.4], &[0.3, 0.4], &[1e-3, 0.0]).unwrap();
        assert!((e.norm - 1e-3).abs() < 1e-18);
        assert!((e.unit[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(e.unit[1], 0.0);
        assert!(matches!(
            build_adaptive_entry(&[0.3, 0.4], &[0.3, 0.4], &[0.0, 0.0]),
            Err(Error::ZeroNorm)
        ));
    }

    #[test]
    fn precompute_matches_on_the_fly() {
        let pts = vec![
            MaterialPoint::new(vec![0.0], vec![0.0]),
            MaterialPoint::new(vec![0.01], vec![20.0]),
            MaterialPoint::new(vec![0.03], vec![40.0]),
        ];
        let db = Database::<f64>::new(pts, vec![]).unwrap();
        let sdb = db.scaled(&Metric::scalar(1e3).unwrap()).unwrap();
        let delta = sdb.default_delta(1e-3);
        let entries = precompute_adaptive_db(&sdb, 0, &delta).unwrap();
        let dn = norm_sq(&delta).sqrt();
        assert!((entries[0].norm - dn).abs() < 1e-15);
        for (i, e) in entries.iter().enumerate() {
            assert_eq!(*e, build_adaptive_entry(sdb.get(i), sdb.get(0), &delta).unwrap());
        }
        assert!(precompute_adaptive_db(&sdb, 3, &delta).is_err());
    }
}
