//! Random polygons from projected sphere samples: hull statistics, caps of
//! the planar β-distribution, difference moments and normal approximation.

mod caps;
mod hull;
pub mod quad;
mod sim;
mod sphere;

pub use caps::{cap_asymptotic, cap_measure, exact_cap_measure, floating_radius, max_independent_caps, outside_measure};
pub use hull::{inradius_about_origin, polygon_counts, PolygonCounts};
pub use sim::{
    clt_check, estimate_growth_exponent, first_diff_moment, floating_containment_rate, geometric_grid, grid_seed, ks_normal,
    ols_slope, simulate_qn, trial_rng, CltReport, DiffMoment, FloatingReport, GrowthFit, GrowthPoint, SimConfig, SimReport,
    Summary,
};
pub use sphere::{
    beta_constant, beta_density, beta_for_dim, chi_square_beta, project_to_disk, radial_cdf, sample_projected, sample_sphere,
};
