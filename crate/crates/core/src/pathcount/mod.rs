//! Monotone path counting and sequence shape analysis.

mod count;
mod spectrum;

pub use count::{count_paths_by_length, enumerate_paths, histogram, prism_spectrum, MonotonePath, PathIter};
pub use spectrum::{
    is_log_concave, is_symmetric, is_ultra_log_concave, is_unimodal, modes, seq, Analytics, LengthSpectrum, Support,
};
