//! Coherent monotone paths: slope cones, capture certificates and the
//! shadow-vertex path of a projection.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactgeom::scalar::{dot, sub_vec};
use crate::exactgeom::{max_margin, DirectedGraph, Polytope, Scalar};
use crate::pathcount::{enumerate_paths, LengthSpectrum, MonotonePath};

/// Homogeneous inequalities `row · ω > 0` describing the capture vectors of
/// one monotone path. Each row comes from a step `u → w` of the path and a
/// competing improving neighbour `v` of `u`:
///
/// `row = (w - u) ⟨c, v - u⟩ - (v - u) ⟨c, w - u⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeCone<T> {
    pub rows: Vec<Vec<T>>,
    /// `(step index, competing neighbour)` for each row.
    pub origins: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceCertificate<T> {
    pub omega: Vec<T>,
    /// Smallest slack `row · omega` over the cone rows.
    pub margin: T,
}

impl<T: Scalar> CoherenceCertificate<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "omega": self.omega.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "margin": self.margin.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let omega = v
            .get("omega")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::input("certificate needs an \"omega\" array"))?
            .iter()
            .map(|x| T::from_json(x).ok_or_else(|| Error::input(format!("bad omega entry {x}"))))
            .collect::<Result<Vec<T>>>()?;
        let margin = v
            .get("margin")
            .and_then(T::from_json)
            .ok_or_else(|| Error::input("certificate needs a \"margin\""))?;
        Ok(CoherenceCertificate { omega, margin })
    }
}

/// Rows of the slope cone of `path` in the orientation `g` of `p`.
pub fn slope_cone<T: Scalar>(p: &Polytope<T>, g: &DirectedGraph<T>, path: &MonotonePath) -> Result<SlopeCone<T>> {
    if !path.is_valid_in(g) {
        return Err(Error::input(format!("{:?} is not a monotone path of the graph", path.vertices)));
    }
    let c = &g.c;
    let mut rows = Vec::new();
    let mut origins = Vec::new();
    for (step, (u, w)) in path.steps().enumerate() {
        let du_w = sub_vec(p.vertex(w), p.vertex(u));
        let cw = dot(c, &du_w);
        for &v in &g.succ[u] {
            if v == w {
                continue;
            }
            let du_v = sub_vec(p.vertex(v), p.vertex(u));
            let cv = dot(c, &du_v);
            let row = du_w
                .iter()
                .zip(&du_v)
                .map(|(a, b)| a.clone() * &cv - b.clone() * &cw)
                .collect();
            rows.push(row);
            origins.push((step, v));
        }
    }
    Ok(SlopeCone { rows, origins })
}

/// Remove the component of `omega` along `c`.
fn orthogonalize<T: Scalar>(omega: &[T], c: &[T]) -> Vec<T> {
    let cc = dot(c, c);
    let f = dot(omega, c) / &cc;
    omega.iter().zip(c).map(|(o, ci)| o.clone() - f.clone() * ci).collect()
}

/// A capture vector for `path` if one exists.
///
/// Maximizes the smallest slack over `‖ω‖∞ ≤ 1`; the path is coherent iff the
/// optimum is positive. On floats an optimum inside the tolerance band but
/// above rounding noise is reported as indeterminate.
pub fn is_coherent<T: Scalar>(
    p: &Polytope<T>,
    g: &DirectedGraph<T>,
    path: &MonotonePath,
) -> Result<Option<CoherenceCertificate<T>>> {
    let cone = slope_cone(p, g, path)?;
    let tol = p.tolerance();
    let d = p.ambient_dim();
    if cone.rows.is_empty() {
        // Every vector independent of c captures the path.
        let k = (0..d).min_by(|&a, &b| g.c[a].abs_val().partial_cmp(&g.c[b].abs_val()).expect("ordered"));
        let mut e = vec![T::zero(); d];
        e[k.expect("dimension at least 1")] = T::one();
        let omega = orthogonalize(&e, &g.c);
        if omega.iter().all(|x| x.is_zero_tol(tol)) {
            return Err(Error::input("no vector independent of c in dimension 1"));
        }
        return Ok(Some(CoherenceCertificate { omega, margin: T::one() }));
    }
    let m = max_margin(&[], &cone.rows, tol)?;
    if m.t.is_pos(tol) {
        let omega = orthogonalize(&m.x, &g.c);
        let margin = cone
            .rows
            .iter()
            .map(|r| dot(r, &omega))
            .reduce(|a, b| if b < a { b } else { a })
            .expect("nonempty cone");
        return Ok(Some(CoherenceCertificate { omega, margin }));
    }
    if !T::EXACT {
        let scale = cone
            .rows
            .iter()
            .flatten()
            .map(|x| x.to_f64().abs())
            .fold(0.0f64, f64::max);
        let noise = 64.0 * f64::EPSILON * scale.max(1.0) * d as f64;
        if m.t.to_f64() > noise {
            return Err(Error::Indeterminate(format!(
                "margin {} of path {:?} is below the tolerance {tol}",
                m.t, path.vertices
            )));
        }
    }
    Ok(None)
}

/// The path captured by `omega`: from the source, repeatedly move to the
/// improving neighbour of largest slope `⟨ω, v-u⟩ / ⟨c, v-u⟩`.
pub fn shadow_path<T: Scalar>(p: &Polytope<T>, g: &DirectedGraph<T>, omega: &[T]) -> Result<MonotonePath> {
    let d = p.ambient_dim();
    if omega.len() != d {
        return Err(Error::input(format!("omega has length {}, expected {d}", omega.len())));
    }
    let tol = p.tolerance();
    let c = &g.c;
    let independent =
        (0..d).any(|i| (i + 1..d).any(|j| !(c[i].clone() * &omega[j] - c[j].clone() * &omega[i]).is_zero_tol(tol)));
    if !independent {
        return Err(Error::input("omega is parallel to c"));
    }
    let mut u = g.source;
    let mut vertices = vec![u];
    while u != g.sink {
        let mut best: Option<(usize, T, T)> = None;
        let mut tied = false;
        for &v in &g.succ[u] {
            let dv = sub_vec(p.vertex(v), p.vertex(u));
            let (num, den) = (dot(omega, &dv), dot(c, &dv));
            match &best {
                None => best = Some((v, num, den)),
                Some((_, bn, bd)) => {
                    // num/den vs bn/bd with positive denominators.
                    let cmp = (num.clone() * bd).cmp_tol(&(bn.clone() * &den), tol);
                    match cmp {
                        std::cmp::Ordering::Greater => {
                            best = Some((v, num, den));
                            tied = false;
                        }
                        std::cmp::Ordering::Equal => tied = true,
                        std::cmp::Ordering::Less => {}
                    }
                }
            }
        }
        let (v, _, _) = best.expect("non-sink vertex has a successor");
        if tied {
            return Err(Error::Degeneracy(format!("slope tie at vertex {u}")));
        }
        vertices.push(v);
        u = v;
    }
    Ok(MonotonePath::new(vertices))
}

/// Per-path coherence verdicts in enumeration order.
#[derive(Debug, Clone)]
pub struct CoherenceReport<T> {
    pub paths: Vec<(MonotonePath, Option<CoherenceCertificate<T>>)>,
}

impl<T: Scalar> CoherenceReport<T> {
    pub fn monotone(&self) -> LengthSpectrum {
        crate::pathcount::histogram(self.paths.iter().map(|(p, _)| p))
    }

    pub fn coherent(&self) -> LengthSpectrum {
        crate::pathcount::histogram(self.paths.iter().filter(|(_, c)| c.is_some()).map(|(p, _)| p))
    }

    pub fn coherent_paths(&self) -> impl Iterator<Item = (&MonotonePath, &CoherenceCertificate<T>)> {
        self.paths.iter().filter_map(|(p, c)| c.as_ref().map(|c| (p, c)))
    }
}

/// Test every monotone path; tests run in parallel, results keep the
/// enumeration order.
pub fn coherence_report<T: Scalar>(p: &Polytope<T>, g: &DirectedGraph<T>) -> Result<CoherenceReport<T>> {
    let paths: Vec<MonotonePath> = enumerate_paths(g).collect();
    let verdicts: Vec<Result<Option<CoherenceCertificate<T>>>> =
        paths.par_iter().map(|path| is_coherent(p, g, path)).collect();
    let mut out = Vec::with_capacity(paths.len());
    for (path, v) in paths.into_iter().zip(verdicts) {
        out.push((path, v?));
    }
    Ok(CoherenceReport { paths: out })
}

/// Number of coherent paths of each length.
pub fn coherent_spectrum<T: Scalar>(p: &Polytope<T>, g: &DirectedGraph<T>) -> Result<LengthSpectrum> {
    Ok(coherence_report(p, g)?.coherent())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleReport {
    /// Distinct captured paths.
    pub paths: BTreeSet<MonotonePath>,
    /// Samples whose ω produced a slope tie.
    pub skipped: usize,
}

/// Shadow paths of `samples` random integer vectors ω with entries in
/// `[-1000, 1000]`. Deterministic under `seed`.
pub fn sample_coherent<T: Scalar>(
    p: &Polytope<T>,
    g: &DirectedGraph<T>,
    samples: usize,
    seed: u64,
) -> Result<SampleReport> {
    if samples == 0 {
        return Err(Error::input("at least one sample is required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = p.ambient_dim();
    let mut paths = BTreeSet::new();
    let mut skipped = 0;
    for _ in 0..samples {
        let omega: Vec<T> = (0..d).map(|_| T::from_i64(rng.random_range(-1000..=1000))).collect();
        match shadow_path(p, g, &omega) {
            Ok(path) => {
                paths.insert(path);
            }
            Err(Error::Degeneracy(_)) | Err(Error::Input(_)) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(SampleReport { paths, skipped })
}
