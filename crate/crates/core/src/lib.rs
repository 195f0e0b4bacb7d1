//! Dunkl operators, the rank-one and radial Dunkl transform, spectral multipliers, and
//! numerical checks of weighted functional inequalities for Dunkl operators.

pub mod error;
pub mod extremal;
pub mod inequalities;
pub mod jet;
pub mod measure;
pub mod operators;
pub mod rootsys;
pub mod special;
pub mod spectral;
pub mod waveeq;

pub use error::{DunklError, Result};
pub use rootsys::{build_root_system, Family, ReflectionGroup, RootSystem, RootSystemDoc};
