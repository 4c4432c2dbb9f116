//! Polytope families, named fixtures and closed-form spectra.

pub mod families;
pub mod fixtures;
pub mod formulas;

pub use families::*;
pub use fixtures::*;
pub use formulas::*;
