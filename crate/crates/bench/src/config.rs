//! Run configuration: a TOML file with optional sections, every key
//! defaulting to the preset of the chosen experiment.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use qdd_core::dd_solver::{AdaptiveSource, InitMode, Oracle, SolverConfig};
use qdd_core::distance_engine::{Backend, Encoding};
use serde::{Deserialize, Serialize};

use crate::presets::{BarPreset, PlatePreset, SpringBarPreset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Bar1d,
    Springbar,
    Plate2d,
    SwaptestDemo,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DatabaseSection {
    /// Read the database from this CSV instead of generating it.
    pub file: Option<PathBuf>,
    pub e: Option<f64>,
    pub nu: Option<f64>,
    pub alpha: Option<f64>,
    pub sigma0: Option<f64>,
    pub n: Option<f64>,
    /// 1D stress range.
    pub sigma_min: Option<f64>,
    pub sigma_max: Option<f64>,
    pub count: Option<usize>,
    /// Plane-stress ranges `[[min, max]; 3]` and counts for σx, σy, σxy.
    pub ranges: Option<[[f64; 2]; 3]>,
    pub counts: Option<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSection {
    /// `classical` or `quantum`.
    pub oracle: String,
    /// `analytic` or `gate`.
    pub backend: String,
    /// `inject` or `mottonen`, gate backend only.
    pub encoding: String,
    pub shots: u64,
    pub adaptive: bool,
    pub delta_rel: f64,
    pub precompute_adaptive: bool,
    /// `zero` or `random`.
    pub init: String,
    pub max_iter: usize,
    pub seed: u64,
    /// Metric modulus; preset value when absent.
    pub e_ref: Option<f64>,
    pub nu_ref: Option<f64>,
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            oracle: "classical".into(),
            backend: "analytic".into(),
            encoding: "inject".into(),
            shots: 180,
            adaptive: true,
            delta_rel: 1e-3,
            precompute_adaptive: false,
            init: "zero".into(),
            max_iter: 100,
            seed: 0,
            e_ref: None,
            nu_ref: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub shots: Vec<u64>,
    pub seeds: u64,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            shots: vec![10, 30, 100, 180, 300, 1000],
            seeds: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SwaptestSection {
    pub x: Vec<f64>,
    pub x_prime: Vec<f64>,
    pub trials: usize,
}

impl Default for SwaptestSection {
    fn default() -> Self {
        Self {
            x: vec![0.5, -1.5],
            x_prime: vec![-1.5, 0.5],
            trials: 20000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub out: PathBuf,
    /// Write every iterate of a run, not just the final state.
    pub trace: bool,
    pub database: DatabaseSection,
    pub solver: SolverSection,
    pub sweep: SweepSection,
    pub swaptest: SwaptestSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            experiment: Experiment::Bar1d,
            out: PathBuf::from("qdd-out"),
            trace: false,
            database: DatabaseSection::default(),
            solver: SolverSection::default(),
            sweep: SweepSection::default(),
            swaptest: SwaptestSection::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> anyhow::Result<Self> {
        let cfg: Self = toml::from_str(text).context("invalid configuration")?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut cfg = Self::from_toml(&text)?;
        if let (Some(dir), Some(file)) = (path.parent(), cfg.database.file.as_mut()) {
            if file.is_relative() {
                *file = dir.join(&*file);
            }
        }
        if let Some(f) = &cfg.database.file {
            if !f.exists() {
                bail!("database file {} does not exist", f.display());
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.sweep.shots.is_empty() || self.sweep.seeds == 0 {
            bail!("sweep needs at least one shot count and one seed");
        }
        if self.sweep.shots.contains(&0) || self.solver.shots == 0 {
            bail!("shot counts must be positive");
        }
        if self.solver.max_iter == 0 {
            bail!("max_iter must be positive");
        }
        self.oracle()?;
        self.backend()?;
        self.init()?;
        Ok(())
    }

    fn encoding(&self) -> anyhow::Result<Encoding> {
        match self.solver.encoding.as_str() {
            "inject" => Ok(Encoding::Inject),
            "mottonen" => Ok(Encoding::Mottonen),
            other => bail!("unknown encoding `{other}` (inject|mottonen)"),
        }
    }

    /// Distance backend of the swap-test demo.
    pub fn backend(&self) -> anyhow::Result<Backend> {
        match self.solver.backend.as_str() {
            "analytic" => Ok(Backend::Analytic),
            "gate" => Ok(Backend::Gate(self.encoding()?)),
            other => bail!("unknown backend `{other}` (analytic|gate)"),
        }
    }

    pub fn oracle(&self) -> anyhow::Result<Oracle> {
        match self.solver.oracle.as_str() {
            "classical" => Ok(Oracle::Classical),
            "quantum" => Ok(match self.backend()? {
                Backend::Analytic => Oracle::QuantumAnalytic,
                Backend::Gate(enc) => Oracle::QuantumGate(enc),
            }),
            other => bail!("unknown oracle `{other}` (classical|quantum)"),
        }
    }

    fn init(&self) -> anyhow::Result<InitMode> {
        match self.solver.init.as_str() {
            "zero" => Ok(InitMode::FixedZeroNearest),
            "random" => Ok(InitMode::Random),
            other => bail!("unknown init `{other}` (zero|random)"),
        }
    }

    pub fn solver_config(&self) -> anyhow::Result<SolverConfig<f64>> {
        let s = &self.solver;
        let cfg = SolverConfig {
            oracle: self.oracle()?,
            n_s: s.shots,
            adaptive: s.adaptive,
            delta_rel: s.delta_rel,
            adaptive_source: if s.precompute_adaptive {
                AdaptiveSource::Precomputed
            } else {
                AdaptiveSource::OnTheFly
            },
            init: self.init()?,
            max_iter: s.max_iter,
            seed: s.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn bar_preset(&self) -> BarPreset {
        let mut p = BarPreset::default();
        let d = &self.database;
        apply_law(&mut p.law, d);
        if let Some(v) = d.sigma_min {
            p.sigma_range.0 = v;
        }
        if let Some(v) = d.sigma_max {
            p.sigma_range.1 = v;
        }
        if let Some(v) = d.count {
            p.count = v;
        }
        if let Some(v) = self.solver.e_ref {
            p.e_ref = v;
        }
        p
    }

    pub fn springbar_preset(&self) -> SpringBarPreset {
        let mut p = SpringBarPreset::default();
        let d = &self.database;
        apply_law(&mut p.law, d);
        if let Some(v) = d.sigma_min {
            p.sigma_range.0 = v;
        }
        if let Some(v) = d.sigma_max {
            p.sigma_range.1 = v;
        }
        if let Some(v) = d.count {
            p.count = v;
        }
        if let Some(v) = self.solver.e_ref {
            p.e_ref = v;
        }
        p
    }

    pub fn plate_preset(&self) -> PlatePreset {
        let mut p = PlatePreset::default();
        let d = &self.database;
        apply_law(&mut p.law, d);
        if let Some(r) = d.ranges {
            p.ranges = r.map(|[a, b]| (a, b));
        }
        if let Some(c) = d.counts {
            p.counts = c;
        }
        if let Some(v) = self.solver.e_ref {
            p.e_ref = v;
        }
        if let Some(v) = self.solver.nu_ref {
            p.nu_ref = v;
        }
        p
    }
}

fn apply_law(law: &mut qdd_core::material_db::RambergOsgood<f64>, d: &DatabaseSection) {
    for (field, value) in [
        (&mut law.e, d.e),
        (&mut law.nu, d.nu),
        (&mut law.alpha, d.alpha),
        (&mut law.sigma0, d.sigma0),
        (&mut law.n, d.n),
    ] {
        if let Some(v) = value {
            *field = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
    }

    #[test]
    fn parses_sections() {
        let cfg = RunConfig::from_toml(
            r#"
experiment = "plate2d"
[solver]
oracle = "quantum"
backend = "gate"
encoding = "mottonen"
shots = 5000
[sweep]
shots = [30, 1000]
seeds = 4
"#,
        )
        .unwrap();
        assert_eq!(cfg.experiment, Experiment::Plate2d);
        assert_eq!(cfg.oracle().unwrap(), Oracle::QuantumGate(Encoding::Mottonen));
        assert_eq!(cfg.sweep.shots, vec![30, 1000]);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(RunConfig::from_toml("[solver]\noracle = \"psychic\"").is_err());
        assert!(RunConfig::from_toml("[sweep]\nshots = []").is_err());
        assert!(RunConfig::from_toml("bogus = 1").is_err());
    }
}
