use std::collections::HashMap;

use super::lp::max_margin;
use super::polytope::Polytope;
use super::scalar::{dot, sub_vec, Scalar};
use crate::error::{Error, Result};

/// Is `[v_i, v_j]` a 1-face of `p`?
///
/// Decided by the supporting-hyperplane LP: look for a normal `x` in the box
/// `[-1,1]^d` with `⟨x, v_i⟩ = ⟨x, v_j⟩ ≥ ⟨x, w⟩ + t` for every other vertex `w`;
/// the segment is an edge iff the optimal `t` is positive.
pub fn is_edge<T: Scalar>(p: &Polytope<T>, i: usize, j: usize) -> Result<bool> {
    let n = p.num_vertices();
    if i == j {
        return Err(Error::input("edge test needs two distinct vertices"));
    }
    if i >= n || j >= n {
        return Err(Error::input(format!("vertex index out of range (polytope has {n} vertices)")));
    }
    let (u, v) = (p.vertex(i), p.vertex(j));
    let eq = vec![sub_vec(u, v)];
    let rows: Vec<Vec<T>> = (0..n)
        .filter(|&k| k != i && k != j)
        .map(|k| sub_vec(u, p.vertex(k)))
        .collect();
    if rows.is_empty() {
        return Ok(true);
    }
    let m = max_margin(&eq, &rows, p.tolerance())?;
    Ok(m.t.is_pos(p.tolerance()))
}

/// All edges `(i, j)` with `i < j`, in lexicographic order.
pub fn edge_graph<T: Scalar>(p: &Polytope<T>) -> Result<Vec<(usize, usize)>> {
    let n = p.num_vertices();
    let blocked = midpoint_collisions(p);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if blocked.contains(&(i, j)) {
                continue;
            }
            if is_edge(p, i, j)? {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

/// Pairs whose midpoint is also the midpoint of another pair. Such a segment
/// cannot be a face, because the face containing its midpoint would contain
/// two further vertices. Only available on exact backends.
fn midpoint_collisions<T: Scalar>(p: &Polytope<T>) -> std::collections::HashSet<(usize, usize)> {
    let mut blocked = std::collections::HashSet::new();
    if !T::EXACT {
        return blocked;
    }
    let n = p.num_vertices();
    let mut by_sum: HashMap<Vec<T::Key>, Vec<(usize, usize)>> = HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let key = p
                .vertex(i)
                .iter()
                .zip(p.vertex(j))
                .map(|(a, b)| (a.clone() + b).key().expect("exact key"))
                .collect();
            by_sum.entry(key).or_default().push((i, j));
        }
    }
    for pairs in by_sum.into_values() {
        if pairs.len() > 1 {
            blocked.extend(pairs);
        }
    }
    blocked
}

/// Is every edge non-level under `c`?
pub fn is_generic<T: Scalar>(p: &Polytope<T>, c: &[T]) -> Result<bool> {
    let edges = edge_graph(p)?;
    Ok(first_level_edge(p, &edges, c)?.is_none())
}

fn first_level_edge<T: Scalar>(p: &Polytope<T>, edges: &[(usize, usize)], c: &[T]) -> Result<Option<(usize, usize)>> {
    let values = p.values(c)?;
    Ok(edges
        .iter()
        .copied()
        .find(|&(i, j)| values[i].cmp_tol(&values[j], p.tolerance()).is_eq()))
}

/// Polytope graph oriented by increasing `⟨·, c⟩`.
///
/// Vertices keep their polytope indices. `order` lists them by increasing
/// value (ties by index), `rank` is its inverse, and every successor list
/// is sorted by rank.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedGraph<T> {
    pub c: Vec<T>,
    pub values: Vec<T>,
    pub order: Vec<usize>,
    pub rank: Vec<usize>,
    pub succ: Vec<Vec<usize>>,
    pub pred: Vec<Vec<usize>>,
    pub source: usize,
    pub sink: usize,
}

impl<T: Scalar> DirectedGraph<T> {
    pub fn num_vertices(&self) -> usize {
        self.succ.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.succ.get(u).is_some_and(|s| s.contains(&v))
    }
}

/// Orient the graph of `p` by `c`. Fails with a genericity error naming the
/// first level edge.
pub fn orient<T: Scalar>(p: &Polytope<T>, c: &[T]) -> Result<DirectedGraph<T>> {
    let edges = edge_graph(p)?;
    orient_edges(p, &edges, c)
}

/// [`orient`] with a precomputed edge list.
pub fn orient_edges<T: Scalar>(p: &Polytope<T>, edges: &[(usize, usize)], c: &[T]) -> Result<DirectedGraph<T>> {
    if let Some((i, j)) = first_level_edge(p, edges, c)? {
        return Err(Error::Genericity(i, j));
    }
    build(p, edges, c)
}

/// Orientation that drops level edges instead of failing. Still requires a
/// unique source and sink.
pub fn orient_weak<T: Scalar>(p: &Polytope<T>, edges: &[(usize, usize)], c: &[T]) -> Result<DirectedGraph<T>> {
    build(p, edges, c)
}

fn build<T: Scalar>(p: &Polytope<T>, edges: &[(usize, usize)], c: &[T]) -> Result<DirectedGraph<T>> {
    let values = p.values(c)?;
    let tol = p.tolerance();
    let n = p.num_vertices();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].cmp_tol(&values[b], tol).then(a.cmp(&b)));
    let mut rank = vec![0; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    for &(i, j) in edges {
        if i >= n || j >= n || i == j {
            return Err(Error::input(format!("invalid edge ({i}, {j})")));
        }
        match values[i].cmp_tol(&values[j], tol) {
            std::cmp::Ordering::Less => {
                succ[i].push(j);
                pred[j].push(i);
            }
            std::cmp::Ordering::Greater => {
                succ[j].push(i);
                pred[i].push(j);
            }
            std::cmp::Ordering::Equal => {}
        }
    }
    for list in succ.iter_mut().chain(pred.iter_mut()) {
        list.sort_by_key(|&v| rank[v]);
        list.dedup();
    }
    let sources: Vec<usize> = (0..n).filter(|&v| pred[v].is_empty()).collect();
    let sinks: Vec<usize> = (0..n).filter(|&v| succ[v].is_empty()).collect();
    if sources.len() != 1 || sinks.len() != 1 {
        return Err(Error::Degeneracy(format!(
            "orientation has {} sources and {} sinks",
            sources.len(),
            sinks.len()
        )));
    }
    Ok(DirectedGraph {
        c: c.to_vec(),
        values,
        order,
        rank,
        succ,
        pred,
        source: sources[0],
        sink: sinks[0],
    })
}

/// `⟨v_i, c⟩` helper for callers holding raw vectors.
pub fn value<T: Scalar>(v: &[T], c: &[T]) -> T {
    dot(v, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::Rational;

    fn cube3() -> Polytope<Rational> {
        let rows: Vec<Vec<i64>> = (0..8).map(|m| (0..3).map(|k| (m >> k) & 1).collect()).collect();
        Polytope::from_integers("cube3", &rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x)).collect()
    }

    #[test]
    fn cube_edges_are_hamming_neighbours() {
        let p = cube3();
        let edges = edge_graph(&p).unwrap();
        assert_eq!(edges.len(), 12);
        for (i, j) in edges {
            assert_eq!((i ^ j).count_ones(), 1);
        }
    }

    #[test]
    fn octahedron_antipodes_are_not_edges() {
        let p = Polytope::from_integers(
            "cross3",
            &[vec![1, 0, 0], vec![-1, 0, 0], vec![0, 1, 0], vec![0, -1, 0], vec![0, 0, 1], vec![0, 0, -1]],
        )
        .unwrap();
        assert!(!is_edge(&p, 0, 1).unwrap());
        assert!(is_edge(&p, 0, 2).unwrap());
        assert_eq!(edge_graph(&p).unwrap().len(), 12);
        assert!(is_edge(&p, 3, 3).is_err());
    }

    #[test]
    fn genericity_is_an_edge_property() {
        let p = cube3();
        assert!(is_generic(&p, &ints(&[1, 1, 1])).unwrap());
        assert!(!is_generic(&p, &ints(&[1, 1, 0])).unwrap());
        match orient(&p, &ints(&[1, 1, 0])) {
            Err(Error::Genericity(i, j)) => assert_eq!(i ^ j, 4),
            other => panic!("expected genericity error, got {other:?}"),
        }
        assert!(is_generic(&p, &ints(&[0, 0, 0])).is_err());
    }

    #[test]
    fn square_orientation() {
        let p = Polytope::from_integers("sq", &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let g = orient(&p, &ints(&[1, 2])).unwrap();
        assert_eq!(g.source, 0);
        assert_eq!(g.sink, 3);
        assert_eq!(g.num_arcs(), 4);
    }
}
