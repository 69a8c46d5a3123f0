//! Closed-form mechanics of orthotropic unshearable cylindrical shells.

pub mod bvp;
pub mod effective;
pub mod error;
pub mod io;
pub mod kirchhoff_love;
pub mod material;
pub mod oracle;
pub mod quadrature;
pub mod scalar;
pub mod shell_model;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Material = material::OrthotropicMaterial<f64>;
pub type KlMaterial = material::KLMaterial<f64>;
pub type Stiffness = material::StiffnessComponents<f64>;
pub type Geometry = shell_model::ShellGeometry<f64>;
pub type State = shell_model::AxisymmetricState<f64>;
pub type Load = bvp::LoadCase<f64>;
pub type Solution = bvp::Solution<f64>;
pub type Radial = bvp::RadialSolution<f64>;
pub type Torsion = bvp::TorsionSolution<f64>;
pub type Grid = oracle::GridSolution<f64>;
pub type Properties = effective::EffectiveProperties<f64>;
pub type ExperimentRecord = kirchhoff_love::KLExperimentRecord<f64>;
