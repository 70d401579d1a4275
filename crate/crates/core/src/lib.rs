//! Distance-minimizing data-driven computational mechanics with a
//! swap-test distance oracle.
//!
//! The solver alternates between two projections: a linear finite-element
//! solve that maps assigned material data to the nearest
//! equilibrium/compatibility-admissible state, and a nearest-neighbor search
//! that maps each admissible state back into the material database. The
//! distance queries of the search are answered either exactly or by a
//! simulated swap-test circuit whose estimates carry binomial shot noise.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64` for everyday use.

pub mod dd_solver;
pub mod distance_engine;
mod error;
pub mod fem_core;
pub mod linalg;
pub mod material_db;
pub mod quantum_core;
mod scalar;
pub mod stream;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Mesh = fem_core::Mesh<f64>;
pub type Metric = fem_core::Metric<f64>;
pub type QuadPoint = fem_core::QuadPoint<f64>;
pub type AssembledSystem = fem_core::AssembledSystem<f64>;
pub type MaterialPoint = material_db::MaterialPoint<f64>;
pub type Database = material_db::Database<f64>;
pub type ScaledVector = material_db::ScaledVector<f64>;
pub type AdaptiveEntry = material_db::AdaptiveEntry<f64>;
pub type StateVector = quantum_core::StateVector<f64>;
pub type Circuit = quantum_core::Circuit<f64>;
pub type PhiPsiSpec = distance_engine::PhiPsiSpec<f64>;
pub type DistanceEstimate = distance_engine::DistanceEstimate<f64>;
pub type DDState = dd_solver::DDState<f64>;
pub type SolverConfig = dd_solver::SolverConfig<f64>;

/// Single-precision variants, mostly useful for cross-checking rounding.
pub mod f32 {
    pub type Mesh = crate::fem_core::Mesh<f32>;
    pub type Metric = crate::fem_core::Metric<f32>;
    pub type Database = crate::material_db::Database<f32>;
    pub type StateVector = crate::quantum_core::StateVector<f32>;
}
