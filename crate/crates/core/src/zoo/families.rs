use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exactgeom::scalar::{dot, sub_vec};
use crate::exactgeom::{edge_graph, orient_edges, orient_weak, DirectedGraph, NonVertexPolicy, Polytope, Rational, Scalar};

/// A polytope together with its canonical direction.
#[derive(Debug, Clone)]
pub struct Instance<T> {
    pub polytope: Polytope<T>,
    pub direction: Vec<T>,
    /// Level edges are dropped from the orientation instead of rejected.
    pub weak: bool,
}

impl<T: Scalar> Instance<T> {
    pub fn new(polytope: Polytope<T>, direction: Vec<T>) -> Self {
        Instance { polytope, direction, weak: false }
    }

    /// Edge graph oriented by the direction, dropping level edges if `weak`.
    pub fn graph(&self) -> Result<DirectedGraph<T>> {
        let edges = edge_graph(&self.polytope)?;
        if self.weak {
            orient_weak(&self.polytope, &edges, &self.direction)
        } else {
            orient_edges(&self.polytope, &edges, &self.direction)
        }
    }
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v)
}

fn ints(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

fn build(label: String, rows: Vec<Vec<Rational>>) -> Result<Polytope<Rational>> {
    Polytope::new(label, rows, NonVertexPolicy::Reject)
}

/// `(1, 2, ..., d)`.
pub fn increasing(d: usize) -> Vec<Rational> {
    (1..=d as i64).map(q).collect()
}

/// `conv(0, e_1, ..., e_d)` with direction `(1, ..., d)`.
pub fn simplex(d: usize) -> Result<Instance<Rational>> {
    if d == 0 {
        return Err(Error::input("simplex dimension must be at least 1"));
    }
    let mut rows = vec![vec![0; d]];
    for i in 0..d {
        let mut r = vec![0; d];
        r[i] = 1;
        rows.push(r);
    }
    Ok(Instance::new(build(format!("simplex({d})"), ints(&rows))?, increasing(d)))
}

/// `[0,1]^d` with direction all-ones. Vertex `m` has coordinates given by the
/// bits of `m`.
pub fn cube(d: usize) -> Result<Instance<Rational>> {
    if d == 0 || d > 20 {
        return Err(Error::input("cube dimension must be in 1..=20"));
    }
    let rows: Vec<Vec<i64>> = (0..1usize << d).map(|m| (0..d).map(|k| ((m >> k) & 1) as i64).collect()).collect();
    Ok(Instance::new(build(format!("cube({d})"), ints(&rows))?, vec![q(1); d]))
}

/// `conv(±e_i)` with direction `(1, ..., d)`. Vertex `2i` is `+e_{i+1}`, `2i+1` is `-e_{i+1}`.
pub fn cross_polytope(d: usize) -> Result<Instance<Rational>> {
    if d == 0 {
        return Err(Error::input("cross-polytope dimension must be at least 1"));
    }
    let mut rows = Vec::new();
    for i in 0..d {
        for s in [1, -1] {
            let mut r = vec![0; d];
            r[i] = s;
            rows.push(r);
        }
    }
    Ok(Instance::new(build(format!("cross({d})"), ints(&rows))?, increasing(d)))
}

/// Points `(t, t^2, ..., t^d)` on the moment curve, direction `e_1`.
pub fn cyclic(d: usize, t: &[Rational]) -> Result<Instance<Rational>> {
    if d < 2 {
        return Err(Error::input("cyclic polytope needs d >= 2"));
    }
    if t.len() <= d {
        return Err(Error::input("cyclic polytope needs more than d points"));
    }
    if t.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input("cyclic polytope parameters must be strictly increasing"));
    }
    let rows = t
        .iter()
        .map(|ti| {
            let mut r = Vec::with_capacity(d);
            let mut p = ti.clone();
            for _ in 0..d {
                r.push(p.clone());
                p *= ti;
            }
            r
        })
        .collect();
    let mut c = vec![q(0); d];
    c[0] = q(1);
    let label = format!("cyclic({d}, n={})", t.len());
    Ok(Instance::new(build(label, rows)?, c))
}

/// Cyclic polytope on the parameters `1, ..., n`.
pub fn cyclic_standard(d: usize, n: usize) -> Result<Instance<Rational>> {
    let t: Vec<Rational> = (1..=n as i64).map(q).collect();
    cyclic(d, &t)
}

/// 0/1 points whose coordinate sum lies in `S ∪ {0}`, with direction
/// all-ones. `S` must contain `d`, so the origin and the all-ones vector are
/// the unique source and sink; level edges inside a layer are dropped.
pub fn s_hypersimplex(d: usize, s: &[usize]) -> Result<Instance<Rational>> {
    if d == 0 || d > 20 {
        return Err(Error::input("S-hypersimplex dimension must be in 1..=20"));
    }
    let set: BTreeSet<usize> = s.iter().copied().collect();
    if set.iter().any(|&k| k == 0 || k > d) {
        return Err(Error::input("S must be a subset of [d]"));
    }
    if !set.contains(&d) {
        return Err(Error::input("S must contain d"));
    }
    let rows: Vec<Vec<i64>> = (0..1usize << d)
        .filter(|m| {
            let w = m.count_ones() as usize;
            w == 0 || set.contains(&w)
        })
        .map(|m| (0..d).map(|k| ((m >> k) & 1) as i64).collect())
        .collect();
    let label = format!("s_hypersimplex({d}, {:?})", set);
    let mut inst = Instance::new(build(label, ints(&rows))?, vec![q(1); d]);
    inst.weak = true;
    Ok(inst)
}

/// `conv(e_i + e_j)` with direction `(1, ..., d)`.
pub fn second_hypersimplex(d: usize) -> Result<Instance<Rational>> {
    if d < 3 {
        return Err(Error::input("second hypersimplex needs d >= 3"));
    }
    let mut rows = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut r = vec![0; d];
            r[i] = 1;
            r[j] = 1;
            rows.push(r);
        }
    }
    Ok(Instance::new(build(format!("hypersimplex2({d})"), ints(&rows))?, increasing(d)))
}

/// Lopsided 3-cube vertex `u_X`, `X ⊆ {1,2,3}` encoded as bits.
fn lopsided3_vertex(mask: usize) -> Vec<Rational> {
    let third = Rational::new(1, 3);
    match mask {
        0b000 => vec![q(0), q(0), q(0)],
        0b001 => vec![q(1), q(0), q(0)],
        0b010 => vec![q(0), q(1), q(0)],
        0b100 => vec![q(0), q(0), q(1)],
        0b011 => vec![q(4), q(1), q(0)],
        0b101 => vec![q(2), q(0), q(1)],
        0b110 => vec![q(0), third, q(1)],
        0b111 => vec![q(3), third, q(1)],
        _ => unreachable!("three-bit mask"),
    }
}

/// The `(d-3)`-fold prism over the lopsided 3-cube, direction all-ones.
///
/// The prism coordinates come first: vertex `m` (bits of `X ⊆ [d]`) is
/// `(e_{X ∩ [d-3]}, u_{X \ [d-3]})`. Vertex order follows `m`.
pub fn lopsided_cube(d: usize) -> Result<Instance<Rational>> {
    if !(3..=20).contains(&d) {
        return Err(Error::input("lopsided cube needs 3 <= d <= 20"));
    }
    let k = d - 3;
    let rows = (0..1usize << d)
        .map(|m| {
            let mut r: Vec<Rational> = (0..k).map(|i| q(((m >> i) & 1) as i64)).collect();
            r.extend(lopsided3_vertex(m >> k));
            r
        })
        .collect();
    Ok(Instance::new(build(format!("lopsided({d})"), rows)?, vec![q(1); d]))
}

/// The unique vertex of `p` maximizing `c`.
fn argmax_vertex(p: &Polytope<Rational>, c: &[Rational]) -> usize {
    let vals: Vec<Rational> = p.vertices().iter().map(|v| dot(v, c)).collect();
    (0..vals.len()).max_by(|&a, &b| vals[a].cmp(&vals[b])).expect("nonempty")
}

/// Cut the vertex `target` of a simple polytope with `⟨a, x⟩ <= b`. The
/// half-space must contain every other vertex strictly.
pub fn truncate_vertex(p: &Polytope<Rational>, target: usize, a: &[Rational], b: &Rational) -> Result<Polytope<Rational>> {
    let vals: Vec<Rational> = p.vertices().iter().map(|v| dot(v, a)).collect();
    if vals[target] <= *b {
        return Err(Error::input("the half-space does not cut off the vertex"));
    }
    if vals.iter().enumerate().any(|(i, v)| i != target && v >= b) {
        return Err(Error::input("the half-space cuts off more than one vertex"));
    }
    let edges = edge_graph(p)?;
    let mut rows: Vec<Vec<Rational>> =
        (0..p.num_vertices()).filter(|&i| i != target).map(|i| p.vertex(i).to_vec()).collect();
    for (i, j) in edges {
        let other = if i == target {
            j
        } else if j == target {
            i
        } else {
            continue;
        };
        // Point on [other, target] where ⟨a, x⟩ = b.
        let lambda = (b.clone() - &vals[other]) / (vals[target].clone() - &vals[other]);
        let dir = sub_vec(p.vertex(target), p.vertex(other));
        rows.push(p.vertex(other).iter().zip(&dir).map(|(x, dx)| x.clone() + lambda.clone() * dx).collect());
    }
    Polytope::new(format!("{} truncated", p.label()), rows, NonVertexPolicy::Reject)
}

/// Lopsided 4-cube with its maximal vertex cut by `⟨(2,4,3,3), x⟩ <= 41/2`.
pub fn truncated_lopsided_4() -> Result<Instance<Rational>> {
    let lop = lopsided_cube(4)?;
    let sink = argmax_vertex(&lop.polytope, &lop.direction);
    let a: Vec<Rational> = [2, 4, 3, 3].iter().map(|&x| q(x)).collect();
    let p = truncate_vertex(&lop.polytope, sink, &a, &Rational::new(41, 2))?.with_label("truncated_lopsided(4)");
    Ok(Instance::new(p, lop.direction))
}

/// A simple 3-polytope with ten vertices derived from the lopsided 3-cube:
/// the facet `z >= 0` is tilted, which moves a vertex, and one more vertex is
/// cut off. Direction all-ones; spectrum `(1, 2, 1, 3)` on lengths 2..5.
pub fn modified_lopsided_3() -> Result<Instance<Rational>> {
    let r = Rational::new;
    let rows = vec![
        vec![q(0), q(0), q(-1)],
        vec![q(0), r(1, 4), r(-7, 4)],
        vec![q(0), q(0), q(1)],
        vec![q(0), q(1), q(0)],
        vec![q(0), r(1, 3), q(1)],
        vec![q(0), q(1), q(-2)],
        vec![q(2), q(0), q(1)],
        vec![q(4), q(1), q(0)],
        vec![q(3), r(1, 3), q(1)],
        vec![r(3, 2), q(1), r(-5, 2)],
    ];
    Ok(Instance::new(build("modified_lopsided(3)".into(), rows)?, vec![q(1); 3]))
}

/// The 10-vertex simplicial 3-polytope, direction `e_1`.
pub fn p10() -> Result<Instance<Rational>> {
    let rows = vec![
        vec![0, 0, 0],
        vec![1, -5, -5],
        vec![2, 0, -5],
        vec![3, -5, 0],
        vec![4, -6, 0],
        vec![5, -3, 5],
        vec![6, 5, 5],
        vec![7, 0, 5],
        vec![8, 5, 2],
        vec![9, 0, 0],
    ];
    Ok(Instance::new(build("p10".into(), ints(&rows))?, vec![q(1), q(0), q(0)]))
}

/// `p10` pushed radially onto the unit sphere around its vertex barycenter.
/// Floating-point backend.
pub fn p10_spherical() -> Result<Instance<f64>> {
    let base = p10()?;
    let verts: Vec<Vec<f64>> = base.polytope.vertices().iter().map(|v| v.iter().map(Rational::to_f64).collect()).collect();
    let n = verts.len() as f64;
    let bary: Vec<f64> = (0..3).map(|k| verts.iter().map(|v| v[k]).sum::<f64>() / n).collect();
    let rows = verts
        .iter()
        .map(|v| {
            let w: Vec<f64> = v.iter().zip(&bary).map(|(a, b)| a - b).collect();
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            w.into_iter().map(|x| x / norm).collect()
        })
        .collect();
    let p = Polytope::new("p10_spherical", rows, NonVertexPolicy::Reject)?;
    Ok(Instance::new(p, vec![1.0, 0.0, 0.0]))
}

/// Binary trees with `n` internal nodes, as leaf-count products per node
/// in in-order.
fn tree_vectors(n: usize) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for left in 0..n {
        let right = n - 1 - left;
        for l in tree_vectors(left) {
            for r in tree_vectors(right) {
                let mut v = l.clone();
                v.push(((left + 1) * (right + 1)) as i64);
                v.extend(&r);
                out.push(v);
            }
        }
    }
    out
}

/// Loday's associahedron in `R^n` from binary-tree coordinates, direction
/// `(1, ..., n)`. It has Catalan(n) vertices.
pub fn loday_associahedron(n: usize) -> Result<Instance<Rational>> {
    if !(2..=9).contains(&n) {
        return Err(Error::input("associahedron parameter must be in 2..=9"));
    }
    let rows = tree_vectors(n);
    Ok(Instance::new(build(format!("ass({n})"), ints(&rows))?, increasing(n)))
}

/// `(2, 4, ..., 2^n)`.
pub fn c_lex(n: usize) -> Vec<Rational> {
    (1..=n).map(|k| q(1i64 << k)).collect()
}

/// Parse a set written as digits, e.g. `"1235"`; `""` or `"0"` is empty.
pub fn parse_set(s: &str, n: usize) -> Result<BTreeSet<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "0" || s == "{}" {
        return Ok(BTreeSet::new());
    }
    s.chars()
        .map(|ch| {
            let k = ch.to_digit(10).ok_or_else(|| Error::input(format!("bad element {ch:?} in set {s:?}")))? as usize;
            if k == 0 || k > n {
                return Err(Error::input(format!("element {k} outside [1, {n}]")));
            }
            Ok(k)
        })
        .collect()
}

/// `conv(e_X : X ∈ sets)` with direction `c_lex`.
pub fn zero_one_from_sets(n: usize, sets: &[BTreeSet<usize>]) -> Result<Instance<Rational>> {
    if n == 0 || n > 20 {
        return Err(Error::input("ground set size must be in 1..=20"));
    }
    let uniq: BTreeSet<Vec<i64>> =
        sets.iter().map(|x| (1..=n).map(|k| i64::from(x.contains(&k))).collect()).collect();
    if uniq.len() != sets.len() {
        return Err(Error::input("repeated set"));
    }
    let mut masks: Vec<&BTreeSet<usize>> = sets.iter().collect();
    masks.sort_by_key(|x| x.iter().map(|k| 1usize << k).sum::<usize>());
    let rows: Vec<Vec<i64>> = masks.iter().map(|x| (1..=n).map(|k| i64::from(x.contains(&k))).collect()).collect();
    Ok(Instance::new(build(format!("zero_one({n}, {} sets)", sets.len()), ints(&rows))?, c_lex(n)))
}

/// All faces of the simplicial complex generated by `facets`, as a 0/1 polytope.
pub fn zero_one_from_complex(n: usize, facets: &[BTreeSet<usize>]) -> Result<Instance<Rational>> {
    let mut faces = BTreeSet::new();
    for f in facets {
        let elems: Vec<usize> = f.iter().copied().collect();
        for m in 0..1usize << elems.len() {
            let face: BTreeSet<usize> = (0..elems.len()).filter(|&i| (m >> i) & 1 == 1).map(|i| elems[i]).collect();
            faces.insert(face);
        }
    }
    let faces: Vec<BTreeSet<usize>> = faces.into_iter().collect();
    let mut inst = zero_one_from_sets(n, &faces)?;
    let names: Vec<String> = facets.iter().map(|f| f.iter().map(|k| k.to_string()).collect()).collect();
    inst.polytope = inst.polytope.with_label(format!("complex({n}; {})", names.join(",")));
    Ok(inst)
}

/// `Δ × Δ × ...` with the given vertex count per factor, embedded with
/// standard basis vectors. Direction `(1, 2, ..., N)` over all coordinates.
pub fn product_of_simplices(vertex_counts: &[usize]) -> Result<Instance<Rational>> {
    if vertex_counts.is_empty() || vertex_counts.iter().any(|&k| k < 1) {
        return Err(Error::input("each factor needs at least one vertex"));
    }
    let total: usize = vertex_counts.iter().product();
    if total > 5000 {
        return Err(Error::input("product too large"));
    }
    let dim: usize = vertex_counts.iter().sum();
    let mut rows = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut r = vec![0; dim];
        let mut offset = 0;
        for &k in vertex_counts {
            r[offset + idx % k] = 1;
            idx /= k;
            offset += k;
        }
        rows.push(r);
    }
    let label = format!("product{:?}", vertex_counts);
    Ok(Instance::new(build(label, ints(&rows))?, increasing(dim)))
}
