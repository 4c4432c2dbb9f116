use std::collections::HashMap;

use serde_json::{json, Value};

use super::lp::max_margin;
use super::rational::Rational;
use super::scalar::{dot, sub_vec, Backend, Scalar, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};

/// What to do with listed points that are not vertices of the hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonVertexPolicy {
    Reject,
    Strip,
}

/// Convex hull of a finite point set, stored by its vertex list.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope<T> {
    vertices: Vec<Vec<T>>,
    dim: usize,
    label: String,
    tolerance: f64,
}

impl<T: Scalar> Polytope<T> {
    /// Validate and build. Duplicates are always rejected; non-vertices
    /// are rejected or removed according to `policy`.
    pub fn new(label: impl Into<String>, vertices: Vec<Vec<T>>, policy: NonVertexPolicy) -> Result<Self> {
        let tol = if T::EXACT { 0.0 } else { DEFAULT_TOLERANCE };
        Self::with_tolerance(label, vertices, policy, tol)
    }

    pub fn with_tolerance(
        label: impl Into<String>,
        vertices: Vec<Vec<T>>,
        policy: NonVertexPolicy,
        tolerance: f64,
    ) -> Result<Self> {
        if !(tolerance >= 0.0) {
            return Err(Error::input("tolerance must be nonnegative"));
        }
        let tolerance = if T::EXACT { 0.0 } else { tolerance };
        let Some(dim) = vertices.first().map(Vec::len) else {
            return Err(Error::input("polytope needs at least one vertex"));
        };
        if dim == 0 {
            return Err(Error::input("ambient dimension must be at least 1"));
        }
        if let Some(i) = vertices.iter().position(|v| v.len() != dim) {
            return Err(Error::input(format!("vertex {i} has dimension {}, expected {dim}", vertices[i].len())));
        }
        if let Some((i, j)) = find_duplicate(&vertices, tolerance) {
            return Err(Error::input(format!("vertices {i} and {j} coincide")));
        }
        let mut keep = Vec::with_capacity(vertices.len());
        for i in 0..vertices.len() {
            let rows: Vec<Vec<T>> = vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, w)| sub_vec(&vertices[i], w))
                .collect();
            let is_vertex = rows.is_empty() || max_margin(&[], &rows, tolerance)?.t.is_pos(tolerance);
            if is_vertex {
                keep.push(i);
            } else if policy == NonVertexPolicy::Reject {
                return Err(Error::input(format!("point {i} is not a vertex of the convex hull")));
            }
        }
        let vertices = if keep.len() == vertices.len() {
            vertices
        } else {
            keep.into_iter().map(|i| vertices[i].clone()).collect()
        };
        Ok(Polytope { vertices, dim, label: label.into(), tolerance })
    }

    pub fn vertices(&self) -> &[Vec<T>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &[T] {
        &self.vertices[i]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn backend(&self) -> Backend {
        if T::EXACT {
            Backend::ExactRational
        } else {
            Backend::Float { tolerance: self.tolerance }
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// ⟨v, c⟩ for every vertex.
    pub fn values(&self, c: &[T]) -> Result<Vec<T>> {
        self.check_direction(c)?;
        Ok(self.vertices.iter().map(|v| dot(v, c)).collect())
    }

    pub(crate) fn check_direction(&self, c: &[T]) -> Result<()> {
        if c.len() != self.dim {
            return Err(Error::input(format!("direction has length {}, expected {}", c.len(), self.dim)));
        }
        if c.iter().all(|x| x.is_zero_tol(0.0)) {
            return Err(Error::input("direction is the zero vector"));
        }
        Ok(())
    }

    /// Index of the first vertex equal to `point`.
    pub fn find_vertex(&self, point: &[T]) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.iter().zip(point).all(|(a, b)| a.cmp_tol(b, self.tolerance).is_eq()))
    }

    /// All vertices shifted by `offset`; the vertex order is preserved.
    pub fn translate(&self, offset: &[T]) -> Result<Self> {
        if offset.len() != self.dim {
            return Err(Error::input("offset dimension mismatch"));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(offset).map(|(a, b)| a.clone() + b).collect())
            .collect();
        Ok(Polytope { vertices, ..self.clone() })
    }

    /// All vertices multiplied by a positive factor.
    pub fn scale(&self, factor: &T) -> Result<Self> {
        if !factor.is_pos(0.0) {
            return Err(Error::input("scale factor must be positive"));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|a| a.clone() * factor).collect())
            .collect();
        Ok(Polytope { vertices, ..self.clone() })
    }

    /// Same vertex list on the floating-point backend.
    pub fn to_float(&self, tolerance: f64) -> Polytope<f64> {
        Polytope {
            vertices: self.vertices.iter().map(|v| v.iter().map(Scalar::to_f64).collect()).collect(),
            dim: self.dim,
            label: self.label.clone(),
            tolerance,
        }
    }

    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .map(|v| Value::Array(v.iter().map(Scalar::to_json).collect()))
            .collect();
        json!({ "dim": self.dim, "label": self.label, "vertices": vertices })
    }

    pub fn from_json(value: &Value, policy: NonVertexPolicy) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::input("polytope JSON must be an object"))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::input("missing integer field \"dim\""))? as usize;
        let label = obj.get("label").and_then(Value::as_str).unwrap_or("").to_string();
        let raw = obj
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::input("missing array field \"vertices\""))?;
        let mut vertices = Vec::with_capacity(raw.len());
        for (i, row) in raw.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| Error::input(format!("vertex {i} is not an array")))?;
            if row.len() != dim {
                return Err(Error::input(format!("vertex {i} has {} coordinates, expected {dim}", row.len())));
            }
            let coords = row
                .iter()
                .map(|x| T::from_json(x).ok_or_else(|| Error::input(format!("bad coordinate {x} in vertex {i}"))))
                .collect::<Result<Vec<T>>>()?;
            vertices.push(coords);
        }
        Self::new(label, vertices, policy)
    }

    pub fn from_json_str(s: &str, policy: NonVertexPolicy) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::input(format!("invalid JSON: {e}")))?;
        Self::from_json(&v, policy)
    }
}

impl Polytope<Rational> {
    /// Integer-coordinate convenience constructor with the hull check.
    pub fn from_integers(label: impl Into<String>, rows: &[Vec<i64>]) -> Result<Self> {
        let vertices = rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect();
        Self::new(label, vertices, NonVertexPolicy::Reject)
    }
}

fn find_duplicate<T: Scalar>(vertices: &[Vec<T>], tol: f64) -> Option<(usize, usize)> {
    if T::EXACT {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            let key: Vec<T::Key> = v.iter().map(|x| x.key().expect("exact key")).collect();
            if let Some(&j) = seen.get(&key) {
                return Some((j, i));
            }
            seen.insert(key, i);
        }
        None
    } else {
        for i in 0..vertices.len() {
            for j in 0..i {
                if vertices[i].iter().zip(&vertices[j]).all(|(a, b)| a.cmp_tol(b, tol).is_eq()) {
                    return Some((j, i));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_interior_points() {
        let rows = [[0, 0], [2, 0], [0, 2], [1, 1], [2, 2], [1, 0]];
        let vs: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect();
        let p = Polytope::new("sq", vs.clone(), NonVertexPolicy::Strip).unwrap();
        assert_eq!(p.num_vertices(), 4);
        assert!(Polytope::new("sq", vs, NonVertexPolicy::Reject).is_err());
    }

    #[test]
    fn rejects_duplicates_and_ragged_rows() {
        assert!(Polytope::from_integers("d", &[vec![0, 0], vec![0, 0]]).is_err());
        assert!(Polytope::from_integers("r", &[vec![0, 0], vec![1]]).is_err());
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let vs = vec![
            vec![Rational::new(1, 3), Rational::from_integer(0)],
            vec![Rational::from_integer(-2), Rational::new(7, 5)],
            vec![Rational::from_integer(4), Rational::from_integer(4)],
        ];
        let p = Polytope::new("tri", vs, NonVertexPolicy::Reject).unwrap();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let q = Polytope::<Rational>::from_json_str(&text, NonVertexPolicy::Reject).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn json_accepts_numbers_and_decimals() {
        let text = r#"{"dim": 2, "label": "t", "vertices": [[0, 0], ["20.5", 1], [1, "3/2"]]}"#;
        let p = Polytope::<Rational>::from_json_str(text, NonVertexPolicy::Reject).unwrap();
        assert_eq!(p.vertex(1)[0], Rational::new(41, 2));
    }
}
