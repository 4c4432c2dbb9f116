use super::polytope::Polytope;
use super::scalar::{dot, Scalar};
use crate::error::{Error, Result};

/// Image of every vertex under `x ↦ (⟨x, c⟩, ⟨x, ω⟩)`, in vertex order.
pub fn project2d<T: Scalar>(p: &Polytope<T>, c: &[T], omega: &[T]) -> Result<Vec<(T, T)>> {
    p.check_direction(c)?;
    if omega.len() != c.len() {
        return Err(Error::input("omega has the wrong dimension"));
    }
    let tol = p.tolerance();
    let independent = (0..c.len())
        .any(|i| (i + 1..c.len()).any(|j| !(c[i].clone() * &omega[j] - c[j].clone() * &omega[i]).is_zero_tol(tol)));
    if !independent {
        return Err(Error::input("omega is parallel to c"));
    }
    Ok(p.vertices().iter().map(|v| (dot(v, c), dot(v, omega))).collect())
}

fn cross<T: Scalar>(o: &(T, T), a: &(T, T), b: &(T, T)) -> T {
    (a.0.clone() - &o.0) * (b.1.clone() - &o.1) - (a.1.clone() - &o.1) * (b.0.clone() - &o.0)
}

/// Upper and lower chains of the convex hull of `points`, each running from
/// the leftmost to the rightmost hull vertex. Collinear points are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hull2d {
    pub upper: Vec<usize>,
    pub lower: Vec<usize>,
}

impl Hull2d {
    /// Distinct hull vertices.
    pub fn vertex_count(&self) -> usize {
        let n = self.upper.len() + self.lower.len();
        if self.upper.first() == self.upper.last() {
            // Degenerate single-point hull.
            return 1;
        }
        n - 2
    }

    pub fn upper_edges(&self) -> usize {
        self.upper.len() - 1
    }

    pub fn lower_edges(&self) -> usize {
        self.lower.len() - 1
    }
}

/// Andrew's monotone chain over an arbitrary scalar.
pub fn hull2d<T: Scalar>(points: &[(T, T)], tol: f64) -> Result<Hull2d> {
    if points.is_empty() {
        return Err(Error::input("hull of an empty point set"));
    }
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        points[a]
            .0
            .cmp_tol(&points[b].0, tol)
            .then(points[a].1.cmp_tol(&points[b].1, tol))
            .then(a.cmp(&b))
    });
    idx.dedup_by(|a, b| {
        points[*a].0.cmp_tol(&points[*b].0, tol).is_eq() && points[*a].1.cmp_tol(&points[*b].1, tol).is_eq()
    });
    if idx.len() == 1 {
        return Ok(Hull2d { upper: vec![idx[0]], lower: vec![idx[0]] });
    }
    let chain = |keep_sign: std::cmp::Ordering| -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &i in &idx {
            while out.len() >= 2 {
                let s = cross(&points[out[out.len() - 2]], &points[out[out.len() - 1]], &points[i]).sign(tol);
                if s == keep_sign {
                    break;
                }
                out.pop();
            }
            out.push(i);
        }
        out
    };
    let upper = chain(std::cmp::Ordering::Less);
    let lower = chain(std::cmp::Ordering::Greater);
    Ok(Hull2d { upper, lower })
}

/// Indices of the upper hull chain, left to right.
///
/// Two hull vertices with equal first coordinate are a degeneracy error.
pub fn upper_path<T: Scalar>(points: &[(T, T)], tol: f64) -> Result<Vec<usize>> {
    if points.len() < 2 {
        return Err(Error::input("upper path needs at least two points"));
    }
    let hull = hull2d(points, tol)?;
    let mut verts: Vec<usize> = hull.upper.iter().chain(&hull.lower).copied().collect();
    verts.sort_by(|&a, &b| points[a].0.cmp_tol(&points[b].0, tol).then(a.cmp(&b)));
    verts.dedup();
    if let Some(w) = verts.windows(2).find(|w| points[w[0]].0.cmp_tol(&points[w[1]].0, tol).is_eq()) {
        return Err(Error::Degeneracy(format!(
            "hull vertices {} and {} share their first coordinate",
            w[0], w[1]
        )));
    }
    Ok(hull.upper)
}
