//! Bound states of the exponential-cosine screened Coulomb potential from a
//! superpotential-hierarchy trial family, checked against a Numerov shooting
//! solver.
//!
//! Units are `ħ = m = 1` with `H = -½ d²/dr² + l(l+1)/(2r²) + V(r)`.

mod cmath;
pub mod error;
pub mod minimize;
pub mod oracle;
pub mod potential;
pub mod quadrature;
pub mod report;
pub mod susy;
pub mod variational;

pub use error::{Error, Result};
pub use potential::{ComplexScreening, PartPotential, RadialGrid, ScreeningParams, Variant};
pub use report::{Convention, EnergyReport, Method};
