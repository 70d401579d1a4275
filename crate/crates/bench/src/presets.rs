//! Parameter sets of the three experiments.

use qdd_core::dd_solver::{Problem, SpringBar};
use qdd_core::fem_core::{Mesh, Metric};
use qdd_core::material_db::{gen_ramberg_osgood_1d, gen_ramberg_osgood_plane_stress, Database, RambergOsgood};
use qdd_core::Result;

use crate::plate::{plate_with_hole, PlateGeometry};

/// Ramberg–Osgood law used by the bar and spring-bar experiments.
pub fn bar_law() -> RambergOsgood<f64> {
    RambergOsgood {
        e: 1e4,
        nu: 0.0,
        alpha: 3.0,
        sigma0: 10.0,
        n: 3.0,
    }
}

/// Clamped bar under an end force.
#[derive(Clone, Debug, PartialEq)]
pub struct BarPreset {
    pub law: RambergOsgood<f64>,
    pub sigma_range: (f64, f64),
    pub count: usize,
    pub n_elements: usize,
    pub length: f64,
    pub area: f64,
    pub force: f64,
    /// Scalar `C` of the distance metric (MPa).
    pub e_ref: f64,
}

impl Default for BarPreset {
    fn default() -> Self {
        Self {
            law: bar_law(),
            sigma_range: (-5.0, 60.0),
            count: 100,
            n_elements: 10,
            length: 100.0,
            area: 1.0,
            force: 50.0,
            e_ref: 10.0,
        }
    }
}

impl BarPreset {
    pub fn database(&self) -> Result<Database<f64>> {
        gen_ramberg_osgood_1d(&self.law, self.sigma_range, self.count)
    }

    pub fn mesh(&self) -> Mesh<f64> {
        let mut mesh = Mesh::bar(self.n_elements, self.length, self.area);
        if let Some(f) = mesh.loads.last_mut() {
            *f = self.force;
        }
        mesh
    }

    pub fn metric(&self) -> Result<Metric<f64>> {
        Metric::scalar(self.e_ref)
    }

    pub fn problem_with(&self, db: Database<f64>) -> Result<Problem<f64>> {
        Problem::new(&self.mesh(), db, &self.metric()?)
    }

    pub fn problem(&self) -> Result<Problem<f64>> {
        self.problem_with(self.database()?)
    }
}

/// Bar in series with a displaced spring, a single material point.
#[derive(Clone, Debug, PartialEq)]
pub struct SpringBarPreset {
    pub law: RambergOsgood<f64>,
    pub sigma_range: (f64, f64),
    pub count: usize,
    pub setup: SpringBar<f64>,
    pub e_ref: f64,
}

impl Default for SpringBarPreset {
    fn default() -> Self {
        Self {
            law: bar_law(),
            sigma_range: (-5.0, 60.0),
            count: 20,
            setup: SpringBar {
                k_spring: 140.0,
                u0: 0.5,
                length: 100.0,
                area: 1.0,
            },
            e_ref: 1e4,
        }
    }
}

impl SpringBarPreset {
    pub fn database(&self) -> Result<Database<f64>> {
        gen_ramberg_osgood_1d(&self.law, self.sigma_range, self.count)
    }

    pub fn metric(&self) -> Result<Metric<f64>> {
        Metric::scalar(self.e_ref)
    }
}

/// Quarter plate with a hole under edge pressure.
#[derive(Clone, Debug, PartialEq)]
pub struct PlatePreset {
    pub law: RambergOsgood<f64>,
    pub ranges: [(f64, f64); 3],
    pub counts: [usize; 3],
    pub geometry: PlateGeometry,
    pub e_ref: f64,
    pub nu_ref: f64,
}

impl Default for PlatePreset {
    fn default() -> Self {
        Self {
            law: RambergOsgood {
                e: 1e5,
                nu: 0.3,
                alpha: 0.2,
                sigma0: 300.0,
                n: 3.0,
            },
            ranges: [(-1000.0, 10.0), (-250.0, 600.0), (-150.0, 350.0)],
            counts: [20, 20, 20],
            geometry: PlateGeometry::default(),
            e_ref: 3e4,
            nu_ref: 0.3,
        }
    }
}

impl PlatePreset {
    pub fn database(&self) -> Result<Database<f64>> {
        gen_ramberg_osgood_plane_stress(&self.law, self.ranges, self.counts)
    }

    pub fn mesh(&self) -> Result<Mesh<f64>> {
        plate_with_hole(&self.geometry)
    }

    pub fn metric(&self) -> Result<Metric<f64>> {
        Metric::plane_stress(self.e_ref, self.nu_ref)
    }

    pub fn problem_with(&self, db: Database<f64>) -> Result<Problem<f64>> {
        Problem::new(&self.mesh()?, db, &self.metric()?)
    }

    pub fn problem(&self) -> Result<Problem<f64>> {
        self.problem_with(self.database()?)
    }
}
