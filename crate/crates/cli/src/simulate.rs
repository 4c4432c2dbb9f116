//! `simulate`, `growth`, `diffmoment`, `cltcheck` and `floatbody`.

use clap::Args;
use serde_json::{json, Value};

use monopaths::betasim::{
    clt_check, estimate_growth_exponent, first_diff_moment, floating_containment_rate, grid_seed, simulate_qn, SimConfig,
};

use crate::manifest::Sink;
use crate::{Failure, Global};

/// Sample sizes: `2^8..2^14` (powers of two), `100..1600` (doubling),
/// or a comma list such as `1000,1e4,2^12`.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Input(format!("bad size list {s:?}"));
    let one = |t: &str| -> Result<usize, Failure> {
        let t = t.trim();
        if let Some((b, e)) = t.split_once('^') {
            let (b, e): (usize, u32) = (b.parse().map_err(|_| bad())?, e.parse().map_err(|_| bad())?);
            return b.checked_pow(e).ok_or_else(bad);
        }
        match t.parse::<usize>() {
            Ok(v) => Ok(v),
            Err(_) => {
                let f: f64 = t.parse().map_err(|_| bad())?;
                if f >= 1.0 && f.fract() == 0.0 && f < 1e15 {
                    Ok(f as usize)
                } else {
                    Err(bad())
                }
            }
        }
    };
    let sizes = if let Some((a, b)) = s.split_once("..") {
        match (a.trim().strip_prefix("2^"), b.trim().strip_prefix("2^")) {
            (Some(x), Some(y)) => {
                let (x, y): (u32, u32) = (x.parse().map_err(|_| bad())?, y.parse().map_err(|_| bad())?);
                (x..=y).map(|k| 1usize.checked_shl(k).ok_or_else(bad)).collect::<Result<Vec<_>, _>>()?
            }
            _ => {
                let (lo, hi) = (one(a)?, one(b)?);
                if lo == 0 {
                    return Err(bad());
                }
                std::iter::successors(Some(lo), |&n| n.checked_mul(2)).take_while(|&n| n <= hi).collect()
            }
        }
    } else {
        s.split(',').map(one).collect::<Result<Vec<_>, _>>()?
    };
    if sizes.is_empty() {
        return Err(bad());
    }
    Ok(sizes)
}

#[derive(Args)]
pub struct SimulateArgs {
    /// Sphere dimension; the planar law has β = d/2 - 2.
    #[arg(long)]
    pub d: usize,
    /// Points per polygon.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
}

#[derive(Args)]
pub struct GrowthArgs {
    #[arg(long)]
    pub d: usize,
    /// Sample sizes of the regression.
    #[arg(long, default_value = "2^8..2^14")]
    pub grid: String,
    /// Trials per grid point.
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
}

#[derive(Args)]
pub struct DiffArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value = "2^4..2^11")]
    pub n: String,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Moment order: 1, 2 or 4.
    #[arg(long, default_value_t = 2)]
    pub p: u32,
}

#[derive(Args)]
pub struct CltArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value = "1000,10000,100000")]
    pub n: String,
    #[arg(long, default_value_t = 2000)]
    pub trials: usize,
}

#[derive(Args)]
pub struct FloatArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value = "2^8..2^14")]
    pub n: String,
    #[arg(long, default_value_t = 400)]
    pub trials: usize,
    /// ε = c0 log n / n; defaults to 1/(d-1) + 1.
    #[arg(long)]
    pub c0: Option<f64>,
}

fn float_sink(mut sink: Sink) -> Sink {
    sink.manifest.backend = "float".into();
    sink
}

pub fn simulate(args: &SimulateArgs, g: &Global, sink: Sink) -> Result<(), Failure> {
    let sink = float_sink(sink);
    let cfg = SimConfig::new(args.d, args.n, args.trials, g.seed)?;
    let r = simulate_qn(&cfg);
    let mut csv = format!("# d={} n={} trials={} beta={} retries={}\n", cfg.d, cfg.n, cfg.trials, r.beta, r.retries);
    for (name, s) in [("f0", r.f0), ("f1_up", r.f1_up), ("f1_low", r.f1_low)] {
        csv += &format!("# {name}: mean {:.6} variance {:.6} stderr {:.6}\n", s.mean, s.variance, s.stderr);
    }
    csv += &r.to_csv();
    sink.emit(&csv, serde_json::to_value(&r).expect("report serializes"))
}

pub fn growth(args: &GrowthArgs, g: &Global, sink: Sink) -> Result<(), Failure> {
    let sink = float_sink(sink);
    let grid = parse_sizes(&args.grid)?;
    let fit = estimate_growth_exponent(args.d, &grid, args.trials, g.seed)?;
    let mut csv = format!(
        "# d={} trials={} slope={:.6} stderr={:.6} ci95=({:.6},{:.6}) expected={:.6}\nn,mean_f0,stderr\n",
        fit.d, args.trials, fit.slope, fit.slope_stderr, fit.ci.0, fit.ci.1, fit.expected
    );
    for p in &fit.points {
        csv += &format!("{},{:.6},{:.6}\n", p.n, p.mean_f0, p.stderr);
    }
    sink.emit(&csv, serde_json::to_value(&fit).expect("fit serializes"))
}

pub fn diffmoment(args: &DiffArgs, g: &Global, sink: Sink) -> Result<(), Failure> {
    let sink = float_sink(sink);
    let mut csv = String::from("n,p,moment,second_moment,scaled,zero_fraction,variance_f0,efron_stein_bound,efron_stein_holds\n");
    let mut runs = Vec::new();
    for (k, n) in parse_sizes(&args.n)?.into_iter().enumerate() {
        let cfg = SimConfig::new(args.d, n, args.trials, grid_seed(g.seed, k))?;
        let m = first_diff_moment(&cfg, args.p)?;
        // n E[(D f0)^2] n^{-1/(d-1)}, bounded up to logarithms.
        let scaled = n as f64 * m.second_moment * (n as f64).powf(-1.0 / (args.d as f64 - 1.0));
        csv += &format!(
            "{n},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{}\n",
            m.p,
            m.moment,
            m.second_moment,
            scaled,
            m.zero_fraction,
            m.variance_f0,
            m.efron_stein_bound,
            m.efron_stein_holds()
        );
        let mut v = serde_json::to_value(&m).expect("moment serializes");
        if let Value::Object(map) = &mut v {
            map.remove("differences");
            map.insert("scaled".into(), json!(scaled));
            map.insert("efron_stein_holds".into(), json!(m.efron_stein_holds()));
        }
        runs.push(v);
    }
    sink.emit(&csv, json!({ "runs": runs }))
}

pub fn cltcheck(args: &CltArgs, g: &Global, sink: Sink) -> Result<(), Failure> {
    let sink = float_sink(sink);
    let mut csv = String::from("n,trials,mean,stdev,ks,ks_continuity,unreliable\n");
    let mut runs = Vec::new();
    for (k, n) in parse_sizes(&args.n)?.into_iter().enumerate() {
        let r = clt_check(&SimConfig::new(args.d, n, args.trials, grid_seed(g.seed, k))?)?;
        if r.unreliable {
            eprintln!("warning: {} trials at n = {n} give an unreliable KS distance", args.trials);
        }
        csv += &format!("{n},{},{:.6},{:.6},{:.6},{:.6},{}\n", args.trials, r.mean, r.stdev, r.ks, r.ks_continuity, r.unreliable);
        runs.push(r);
    }
    let decreasing = runs.windows(2).all(|w| w[1].ks < w[0].ks);
    csv += &format!("# ks decreasing in n: {decreasing}\n");
    sink.emit(&csv, json!({ "runs": runs, "ks_decreasing": decreasing }))
}

pub fn floatbody(args: &FloatArgs, g: &Global, sink: Sink) -> Result<(), Failure> {
    let sink = float_sink(sink);
    if args.d < 3 {
        return Err(Failure::Input("d must be at least 3".into()));
    }
    let c0 = args.c0.unwrap_or(1.0 / (args.d as f64 - 1.0) + 1.0);
    let mut csv = String::from("n,c0,eps,radius,rate,stderr\n");
    let mut runs = Vec::new();
    for (k, n) in parse_sizes(&args.n)?.into_iter().enumerate() {
        let r = floating_containment_rate(&SimConfig::new(args.d, n, args.trials, grid_seed(g.seed, k))?, c0)?;
        csv += &format!("{n},{c0},{:.6e},{:.9},{:.6},{:.6}\n", r.eps, r.radius, r.rate, r.stderr);
        runs.push(r);
    }
    sink.emit(&csv, json!({ "runs": runs }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_lists() {
        assert_eq!(parse_sizes("2^8..2^10").unwrap(), vec![256, 512, 1024]);
        assert_eq!(parse_sizes("100..1000").unwrap(), vec![100, 200, 400, 800]);
        assert_eq!(parse_sizes("1000, 1e4,2^3").unwrap(), vec![1000, 10000, 8]);
        assert!(parse_sizes("1.5").is_err());
        assert!(parse_sizes("0..10").is_err());
        assert!(parse_sizes("x").is_err());
    }
}
