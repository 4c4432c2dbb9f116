use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::spectrum::LengthSpectrum;
use crate::error::{Error, Result};
use crate::exactgeom::{DirectedGraph, Scalar};

/// Vertex indices of a directed source-to-sink path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonotonePath {
    pub vertices: Vec<usize>,
}

impl MonotonePath {
    pub fn new(vertices: Vec<usize>) -> Self {
        MonotonePath { vertices }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() < 2
    }

    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// Does the path run from source to sink along arcs of `g`?
    pub fn is_valid_in<T: Scalar>(&self, g: &DirectedGraph<T>) -> bool {
        self.vertices.first() == Some(&g.source)
            && self.vertices.last() == Some(&g.sink)
            && self.steps().all(|(u, v)| g.has_arc(u, v))
    }
}

fn check_endpoints<T: Scalar>(g: &DirectedGraph<T>) -> Result<()> {
    let n = g.num_vertices();
    let sources = (0..n).filter(|&v| g.pred[v].is_empty()).count();
    let sinks = (0..n).filter(|&v| g.succ[v].is_empty()).count();
    if sources != 1 || sinks != 1 {
        return Err(Error::Degeneracy(format!("graph has {sources} sources and {sinks} sinks")));
    }
    Ok(())
}

/// Number of source-to-sink paths with each number of edges.
///
/// Dynamic programming in increasing value order: the count vector of a
/// vertex, shifted by one, is added to each of its successors.
pub fn count_paths_by_length<T: Scalar>(g: &DirectedGraph<T>) -> Result<LengthSpectrum> {
    check_endpoints(g)?;
    let n = g.num_vertices();
    let mut table: Vec<Vec<BigUint>> = vec![Vec::new(); n];
    table[g.source] = vec![BigUint::one()];
    for &u in &g.order {
        if table[u].is_empty() {
            continue;
        }
        let here = std::mem::take(&mut table[u]);
        for &v in &g.succ[u] {
            let there = &mut table[v];
            if there.len() < here.len() + 1 {
                there.resize(here.len() + 1, BigUint::zero());
            }
            for (l, c) in here.iter().enumerate() {
                if !c.is_zero() {
                    there[l + 1] += c;
                }
            }
        }
        if u == g.sink {
            return Ok(LengthSpectrum::from_sequence(0, &here));
        }
    }
    Err(Error::Degeneracy("sink is unreachable from the source".into()))
}

/// Depth-first enumeration of monotone paths in lexicographic order of the
/// vertex ranks.
pub struct PathIter<'a, T> {
    g: &'a DirectedGraph<T>,
    stack: Vec<(usize, usize)>,
    done: bool,
}

pub fn enumerate_paths<T: Scalar>(g: &DirectedGraph<T>) -> PathIter<'_, T> {
    PathIter { g, stack: vec![(g.source, 0)], done: false }
}

impl<T: Scalar> Iterator for PathIter<'_, T> {
    type Item = MonotonePath;

    fn next(&mut self) -> Option<MonotonePath> {
        if self.done {
            return None;
        }
        loop {
            let Some(&(u, next)) = self.stack.last() else {
                self.done = true;
                return None;
            };
            if u == self.g.sink {
                let path = MonotonePath::new(self.stack.iter().map(|&(v, _)| v).collect());
                self.stack.pop();
                return Some(path);
            }
            let succ = &self.g.succ[u];
            if next < succ.len() {
                self.stack.last_mut().expect("nonempty").1 += 1;
                self.stack.push((succ[next], 0));
            } else {
                self.stack.pop();
            }
        }
    }
}

/// Histogram of path lengths.
pub fn histogram<'a>(paths: impl IntoIterator<Item = &'a MonotonePath>) -> LengthSpectrum {
    let mut s = LengthSpectrum::new();
    for p in paths {
        s.add(p.len(), BigUint::one());
    }
    s
}

/// Spectrum of the `k`-fold prism over a polytope, with the direction
/// extended so that every new coordinate increases: each path of length `l`
/// lifts to `(k+l)!/l!` paths of length `k+l`.
pub fn prism_spectrum(s: &LengthSpectrum, k: usize) -> LengthSpectrum {
    LengthSpectrum::from_pairs(s.iter().map(|(l, c)| {
        let factor: BigUint = (l + 1..=l + k).map(BigUint::from).product();
        (l + k, factor * c)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{orient, Polytope, Rational};

    fn cube(d: usize) -> Polytope<Rational> {
        let rows: Vec<Vec<i64>> = (0..1usize << d).map(|m| (0..d).map(|k| ((m >> k) & 1) as i64).collect()).collect();
        Polytope::from_integers("cube", &rows).unwrap()
    }

    #[test]
    fn cube_paths_all_have_length_d() {
        let p = cube(3);
        let g = orient(&p, &vec![Rational::one(); 3]).unwrap();
        let s = count_paths_by_length(&g).unwrap();
        assert_eq!(s, LengthSpectrum::from_pairs([(3usize, 6u32)]));
        let paths: Vec<_> = enumerate_paths(&g).collect();
        assert_eq!(paths.len(), 6);
        assert_eq!(histogram(&paths), s);
        let mut sorted = paths.clone();
        sorted.sort_by_key(|p| p.vertices.iter().map(|&v| g.rank[v]).collect::<Vec<_>>());
        assert_eq!(sorted, paths);
    }

    #[test]
    fn square_has_two_paths() {
        let p = cube(2);
        let c = vec![Rational::from_integer(1), Rational::from_integer(2)];
        let g = orient(&p, &c).unwrap();
        assert_eq!(enumerate_paths(&g).count(), 2);
    }

    #[test]
    fn prism_lifts() {
        let s = LengthSpectrum::from_pairs([(2usize, 2u32), (4, 4)]);
        assert_eq!(prism_spectrum(&s, 1), LengthSpectrum::from_pairs([(3usize, 6u32), (5, 20)]));
        assert_eq!(prism_spectrum(&s, 0), s);
        let tri = LengthSpectrum::from_pairs([(1usize, 1u32), (2, 1)]);
        assert_eq!(prism_spectrum(&tri, 1), LengthSpectrum::from_pairs([(2usize, 2u32), (3, 3)]));
    }
}
