use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

use super::caps::floating_radius;
use super::hull::{inradius_about_origin, polygon_counts, PolygonCounts};
use super::sphere::{beta_for_dim, sample_projected};
use crate::error::{Error, Result};

/// Parameters of one Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimConfig {
    pub d: usize,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(d: usize, n: usize, trials: usize, seed: u64) -> Result<Self> {
        if d < 3 {
            return Err(Error::input("dimension must be at least 3"));
        }
        if n < 3 {
            return Err(Error::input("need at least 3 points"));
        }
        if trials == 0 {
            return Err(Error::input("need at least one trial"));
        }
        Ok(SimConfig { d, n, trials, seed })
    }

    /// `d/2 - 2`.
    pub fn beta(&self) -> f64 {
        beta_for_dim(self.d)
    }
}

/// Generator for `trial`, attempt `attempt`: the seed picks the key and the
/// pair picks a disjoint stream.
pub fn trial_rng(seed: u64, trial: usize, attempt: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((attempt as u64) << 40) | trial as u64);
    rng
}

/// Sample until the hull is a proper polygon. Returns the points, the
/// counts and the number of rejected attempts.
fn sample_polygon(d: usize, n: usize, seed: u64, trial: usize, buf: &mut Vec<[f64; 2]>) -> (PolygonCounts, u32) {
    for attempt in 0.. {
        let mut rng = trial_rng(seed, trial, attempt);
        sample_projected(d, n, &mut rng, buf);
        if let Some(c) = polygon_counts(buf) {
            return (c, attempt);
        }
    }
    unreachable!()
}

/// Mean, unbiased variance and standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub mean: f64,
    pub variance: f64,
    pub stderr: f64,
}

impl Summary {
    pub fn of(xs: impl IntoIterator<Item = f64>) -> Summary {
        let xs: Vec<f64> = xs.into_iter().collect();
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let variance = if xs.len() > 1 { xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
        Summary { mean, variance, stderr: (variance / n).sqrt() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub config: SimConfig,
    pub beta: f64,
    pub trials: Vec<PolygonCounts>,
    pub f0: Summary,
    pub f1_up: Summary,
    pub f1_low: Summary,
    /// Samples redrawn because all points were collinear.
    pub retries: u64,
}

impl SimReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,f0,f1_up,f1_low\n");
        for (i, t) in self.trials.iter().enumerate() {
            out += &format!("{i},{},{},{}\n", t.f0, t.f1_up, t.f1_low);
        }
        out
    }
}

/// Hull statistics of the projected sample over independent trials.
pub fn simulate_qn(config: &SimConfig) -> SimReport {
    let runs: Vec<(PolygonCounts, u32)> = (0..config.trials)
        .into_par_iter()
        .map_init(Vec::new, |buf, t| sample_polygon(config.d, config.n, config.seed, t, buf))
        .collect();
    let trials: Vec<PolygonCounts> = runs.iter().map(|r| r.0).collect();
    SimReport {
        config: *config,
        beta: config.beta(),
        f0: Summary::of(trials.iter().map(|t| t.f0 as f64)),
        f1_up: Summary::of(trials.iter().map(|t| t.f1_up as f64)),
        f1_low: Summary::of(trials.iter().map(|t| t.f1_low as f64)),
        retries: runs.iter().map(|r| r.1 as u64).sum(),
        trials,
    }
}

/// `n_0, n_0 r, n_0 r^2, ...` rounded, `count` values.
pub fn geometric_grid(start: usize, ratio: f64, count: usize) -> Vec<usize> {
    (0..count).map(|k| (start as f64 * ratio.powi(k as i32)).round() as usize).collect()
}

/// Seed for grid point `k` of a sweep.
pub fn grid_seed(seed: u64, k: usize) -> u64 {
    seed.wrapping_add((k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthPoint {
    pub n: usize,
    pub mean_f0: f64,
    pub stderr: f64,
}

/// Weighted least-squares fit of `log E f0` against `log n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthFit {
    pub d: usize,
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    /// 95% confidence interval for the slope.
    pub ci: (f64, f64),
    /// `1/(d-1)`.
    pub expected: f64,
    pub points: Vec<GrowthPoint>,
}

/// Weighted line fit `y = a + b x`; returns `(b, a, se_b)`.
fn weighted_fit(x: &[f64], y: &[f64], w: &[f64]) -> (f64, f64, f64) {
    let sw: f64 = w.iter().sum();
    let mx = x.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let my = y.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let sxx: f64 = x.iter().zip(w).map(|(a, b)| b * (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).zip(w).map(|((a, c), b)| b * (a - mx) * (c - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let k = x.len() as f64;
    let resid: f64 = x.iter().zip(y).zip(w).map(|((a, c), b)| b * (c - intercept - slope * a).powi(2)).sum();
    // Scale by the reduced chi-square only when it exceeds one, so the error
    // never drops below the Monte Carlo standard error.
    let chi = if k > 2.0 { (resid / (k - 2.0)).max(1.0) } else { 1.0 };
    (slope, intercept, (chi / sxx).sqrt())
}

pub fn estimate_growth_exponent(d: usize, n_grid: &[usize], trials: usize, seed: u64) -> Result<GrowthFit> {
    if n_grid.len() < 4 {
        return Err(Error::input("growth fit needs at least 4 grid points"));
    }
    let mut points = Vec::new();
    for (k, &n) in n_grid.iter().enumerate() {
        let cfg = SimConfig::new(d, n, trials, grid_seed(seed, k))?;
        let r = simulate_qn(&cfg);
        points.push(GrowthPoint { n, mean_f0: r.f0.mean, stderr: r.f0.stderr });
    }
    let x: Vec<f64> = points.iter().map(|p| (p.n as f64).ln()).collect();
    let y: Vec<f64> = points.iter().map(|p| p.mean_f0.ln()).collect();
    // Var(log mean) ≈ (stderr / mean)^2.
    let w: Vec<f64> = points.iter().map(|p| (p.mean_f0 / p.stderr.max(1e-12)).powi(2)).collect();
    let (slope, intercept, se) = weighted_fit(&x, &y, &w);
    let dof = (points.len() - 2) as f64;
    let t = StudentsT::new(0.0, 1.0, dof).expect("dof > 0").inverse_cdf(0.975);
    Ok(GrowthFit {
        d,
        slope,
        intercept,
        slope_stderr: se,
        ci: (slope - t * se, slope + t * se),
        expected: 1.0 / (d as f64 - 1.0),
        points,
    })
}

/// Ordinary least-squares slope.
pub fn ols_slope(x: &[f64], y: &[f64]) -> f64 {
    weighted_fit(x, y, &vec![1.0; x.len()]).0
}

/// First-order difference moments of `f0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffMoment {
    pub config: SimConfig,
    pub p: u32,
    /// `Ê|D f0|^p`, where `D f0 = f0(Q) - f0(Q without X_1)` over `n` points.
    pub moment: f64,
    /// `Ê[(D f0)^2]`.
    pub second_moment: f64,
    /// Fraction of trials with `D f0 = 0`.
    pub zero_fraction: f64,
    /// Sample variance of `f0` over the same trials.
    pub variance_f0: f64,
    /// Efron–Stein jackknife proxy `(n+1) · Ê[(D f0)^2]` for `Var f0`.
    pub efron_stein_bound: f64,
    pub differences: Vec<i64>,
}

impl DiffMoment {
    pub fn efron_stein_holds(&self) -> bool {
        self.variance_f0 <= self.efron_stein_bound
    }
}

/// Per trial: sample `n` points, compare the hull with and without the first.
pub fn first_diff_moment(config: &SimConfig, p: u32) -> Result<DiffMoment> {
    if config.n < 4 {
        return Err(Error::input("difference moments need n >= 4"));
    }
    if ![1, 2, 4].contains(&p) {
        return Err(Error::input(format!("moment order must be 1, 2 or 4, got {p}")));
    }
    let runs: Vec<(usize, i64)> = (0..config.trials)
        .into_par_iter()
        .map_init(Vec::new, |buf, t| {
            for attempt in 0.. {
                let mut rng = trial_rng(config.seed, t, attempt);
                sample_projected(config.d, config.n, &mut rng, buf);
                if let (Some(full), Some(drop)) = (polygon_counts(buf), polygon_counts(&buf[1..])) {
                    return (full.f0, full.f0 as i64 - drop.f0 as i64);
                }
            }
            unreachable!()
        })
        .collect();
    let k = runs.len() as f64;
    let differences: Vec<i64> = runs.iter().map(|r| r.1).collect();
    let moment = differences.iter().map(|&x| (x.unsigned_abs() as f64).powi(p as i32)).sum::<f64>() / k;
    let second = differences.iter().map(|&x| (x * x) as f64).sum::<f64>() / k;
    let variance_f0 = Summary::of(runs.iter().map(|r| r.0 as f64)).variance;
    Ok(DiffMoment {
        config: *config,
        p,
        moment,
        second_moment: second,
        zero_fraction: differences.iter().filter(|&&x| x == 0).count() as f64 / k,
        variance_f0,
        efron_stein_bound: (config.n + 1) as f64 * second,
        differences,
    })
}

/// Kolmogorov distance between the sample and `Φ` after standardising.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CltReport {
    pub config: SimConfig,
    pub mean: f64,
    pub stdev: f64,
    /// `sup |F_n - Φ|` over the standardised upper-chain edge counts.
    pub ks: f64,
    /// Same distance with `Φ` evaluated at half-integers, the usual
    /// continuity correction for an integer-valued statistic.
    pub ks_continuity: f64,
    /// Fewer than 1000 trials: the distance is dominated by sampling noise.
    pub unreliable: bool,
}

/// `sup_x |F_n(x) - Φ((x - mean)/sd)|` for a sorted sample.
pub fn ks_normal(sorted: &[f64], mean: f64, sd: f64) -> f64 {
    let phi = Normal::new(0.0, 1.0).expect("standard normal");
    let n = sorted.len() as f64;
    let mut best: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = phi.cdf((x - mean) / sd);
        best = best.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs());
    }
    best
}

/// Integer sample: compare `F_n(k)` with `Φ((k + 1/2 - mean)/sd)` at each
/// attained value `k` and just below it.
fn ks_continuity(sorted: &[f64], mean: f64, sd: f64) -> f64 {
    let phi = Normal::new(0.0, 1.0).expect("standard normal");
    let n = sorted.len() as f64;
    let mut best: f64 = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let k = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == k {
            j += 1;
        }
        let below = phi.cdf((k - 0.5 - mean) / sd);
        let at = phi.cdf((k + 0.5 - mean) / sd);
        best = best.max((below - i as f64 / n).abs()).max((at - j as f64 / n).abs());
        i = j;
    }
    best
}

pub fn clt_check(config: &SimConfig) -> Result<CltReport> {
    let report = simulate_qn(config);
    let mut xs: Vec<f64> = report.trials.iter().map(|t| t.f1_up as f64).collect();
    xs.sort_by(f64::total_cmp);
    let s = Summary::of(xs.iter().copied());
    if !(s.variance > 0.0) {
        return Err(Error::Degeneracy("upper-chain length has zero sample variance".into()));
    }
    let sd = s.variance.sqrt();
    Ok(CltReport {
        config: *config,
        mean: s.mean,
        stdev: sd,
        ks: ks_normal(&xs, s.mean, sd),
        ks_continuity: ks_continuity(&xs, s.mean, sd),
        unreliable: config.trials < 1000,
    })
}

/// Containment of the floating body `F_ε`, `ε = c0 log n / n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FloatingReport {
    pub config: SimConfig,
    pub c0: f64,
    pub eps: f64,
    pub radius: f64,
    /// Fraction of trials whose hull misses part of the disk of radius `R_ε`.
    pub rate: f64,
    pub stderr: f64,
}

pub fn floating_containment_rate(config: &SimConfig, c0: f64) -> Result<FloatingReport> {
    let n = config.n as f64;
    let eps = c0 * n.ln() / n;
    let radius = floating_radius(config.beta(), eps)?;
    let misses: usize = (0..config.trials)
        .into_par_iter()
        .map_init(Vec::new, |buf, t| {
            let mut rng = trial_rng(config.seed, t, 0);
            sample_projected(config.d, config.n, &mut rng, buf);
            match inradius_about_origin(buf) {
                Some(r) if r >= radius => 0,
                _ => 1,
            }
        })
        .sum();
    let rate = misses as f64 / config.trials as f64;
    Ok(FloatingReport {
        config: *config,
        c0,
        eps,
        radius,
        rate,
        stderr: (rate * (1.0 - rate) / config.trials as f64).sqrt(),
    })
}
