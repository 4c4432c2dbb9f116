//! Monotone and coherent path spectra of polytopes.
//!
//! The crate is organised bottom-up: [`exactgeom`] supplies exact arithmetic,
//! a simplex LP solver and polytope graphs; [`pathcount`] counts monotone
//! paths by length; [`coherence`] decides which of them are coherent;
//! [`zoo`] builds the polytope families with their closed-form spectra; and
//! [`betasim`] runs the beta-polygon Monte Carlo experiments.

pub mod betasim;
pub mod coherence;
pub mod error;
pub mod exactgeom;
pub mod pathcount;
pub mod zoo;

pub use error::{Error, Result};
pub use exactgeom::{Backend, DirectedGraph, Polytope, Rational, Scalar};
pub use pathcount::{LengthSpectrum, MonotonePath};
