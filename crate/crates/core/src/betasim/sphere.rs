use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// `n` i.i.d. uniform points on `S^{d-1}` as normalised Gaussian vectors.
pub fn sample_sphere<R: Rng + ?Sized>(d: usize, n: usize, rng: &mut R) -> Vec<Vec<f64>> {
    assert!(d >= 2, "sphere sampling needs d >= 2");
    (0..n)
        .map(|_| loop {
            let g: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
            let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 0.0 {
                break g.into_iter().map(|x| x / norm).collect();
            }
        })
        .collect()
}

/// First two coordinates: the projection onto the `(c, ω) = (e_1, e_2)` plane.
pub fn project_to_disk(points: &[Vec<f64>]) -> Vec<[f64; 2]> {
    points.iter().map(|p| [p[0], p[1]]).collect()
}

/// Sphere sampling fused with the projection, without storing the
/// `d`-dimensional points.
pub fn sample_projected<R: Rng + ?Sized>(d: usize, n: usize, rng: &mut R, out: &mut Vec<[f64; 2]>) {
    out.clear();
    out.reserve(n);
    while out.len() < n {
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let mut s = x * x + y * y;
        for _ in 2..d {
            let z: f64 = rng.sample(StandardNormal);
            s += z * z;
        }
        if s > 0.0 {
            let inv = s.sqrt().recip();
            out.push([x * inv, y * inv]);
        }
    }
}

/// `β_d = d/2 - 2`.
pub fn beta_for_dim(d: usize) -> f64 {
    d as f64 / 2.0 - 2.0
}

/// Normalising constant `Γ(β+2) / (π Γ(β+1)) = (β+1)/π`.
pub fn beta_constant(beta: f64) -> f64 {
    (beta + 1.0) / PI
}

/// `C (1 - |x|^2)^β` on the open unit disk, zero outside.
pub fn beta_density(beta: f64, x: [f64; 2]) -> f64 {
    let r2 = x[0] * x[0] + x[1] * x[1];
    if r2 >= 1.0 {
        return 0.0;
    }
    beta_constant(beta) * (1.0 - r2).powf(beta)
}

/// `P(|X| <= r) = 1 - (1 - r^2)^{β+1}`.
pub fn radial_cdf(beta: f64, r: f64) -> f64 {
    if r >= 1.0 {
        1.0
    } else {
        1.0 - (1.0 - r * r).powf(beta + 1.0)
    }
}

/// Pearson test of planar points against the β-density over
/// `radial × angular` equal-probability cells. Returns `(statistic, p-value)`.
pub fn chi_square_beta(points: &[[f64; 2]], beta: f64, radial: usize, angular: usize) -> (f64, f64) {
    let cells = radial * angular;
    let mut counts = vec![0usize; cells];
    for p in points {
        let r2 = (p[0] * p[0] + p[1] * p[1]).min(1.0);
        let u = 1.0 - (1.0 - r2).powf(beta + 1.0);
        let ri = ((u * radial as f64) as usize).min(radial - 1);
        let theta = p[1].atan2(p[0]) + PI;
        let ai = ((theta / (2.0 * PI) * angular as f64) as usize).min(angular - 1);
        counts[ri * angular + ai] += 1;
    }
    let expected = points.len() as f64 / cells as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let dist = ChiSquared::new((cells - 1) as f64).expect("positive degrees of freedom");
    (stat, 1.0 - dist.cdf(stat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_norms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in sample_sphere(5, 200, &mut rng) {
            let n: f64 = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn density_values() {
        assert!((beta_density(0.0, [0.3, 0.2]) - 1.0 / PI).abs() < 1e-15);
        assert!((beta_density(1.0, [0.0, 0.0]) - 2.0 / PI).abs() < 1e-15);
        assert_eq!(beta_density(1.0, [1.0, 0.5]), 0.0);
    }
}
