//! Dense tableau simplex with Bland's rule.
//!
//! Works over any [`Scalar`]. On the exact backend Bland's rule guarantees
//! termination; on floats pivots smaller than the tolerance are skipped.

use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `coeffs · x  (relation)  rhs`
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T: Scalar> Constraint<T> {
    pub fn le(coeffs: Vec<T>, rhs: T) -> Self {
        Constraint { coeffs, relation: Relation::Le, rhs }
    }
    pub fn ge(coeffs: Vec<T>, rhs: T) -> Self {
        Constraint { coeffs, relation: Relation::Ge, rhs }
    }
    pub fn eq(coeffs: Vec<T>, rhs: T) -> Self {
        Constraint { coeffs, relation: Relation::Eq, rhs }
    }
}

/// Per-variable box; `None` means unbounded on that side.
#[derive(Debug, Clone, PartialEq)]
pub struct Bound<T> {
    pub lower: Option<T>,
    pub upper: Option<T>,
}

impl<T: Scalar> Bound<T> {
    pub fn free() -> Self {
        Bound { lower: None, upper: None }
    }
    pub fn nonnegative() -> Self {
        Bound { lower: Some(T::zero()), upper: None }
    }
    pub fn between(lower: T, upper: T) -> Self {
        Bound { lower: Some(lower), upper: Some(upper) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpResult<T> {
    pub status: LpStatus,
    /// Present iff `status == Optimal`.
    pub objective: Option<T>,
    /// Maximizer; empty unless `status == Optimal`.
    pub solution: Vec<T>,
}

impl<T> LpResult<T> {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// How an original variable is expressed through nonnegative columns.
enum VarMap<T> {
    /// x = offset + y
    Shift { col: usize, offset: T },
    /// x = offset - y
    Flip { col: usize, offset: T },
    /// x = p - q
    Split { pos: usize, neg: usize },
}

/// Maximize `objective · x` subject to `constraints` and the per-variable `bounds`.
///
/// `tol` is the pivot and sign tolerance; pass 0 on the exact backend.
pub fn lp_maximize<T: Scalar>(
    objective: &[T],
    constraints: &[Constraint<T>],
    bounds: &[Bound<T>],
    tol: f64,
) -> Result<LpResult<T>> {
    let n = objective.len();
    if bounds.len() != n {
        return Err(Error::input(format!(
            "objective has {n} variables but {} bounds were given",
            bounds.len()
        )));
    }
    for (i, con) in constraints.iter().enumerate() {
        if con.coeffs.len() != n {
            return Err(Error::input(format!(
                "constraint {i} has {} coefficients, expected {n}",
                con.coeffs.len()
            )));
        }
    }

    // Substitute every variable by nonnegative columns.
    let mut maps = Vec::with_capacity(n);
    let mut ncols = 0usize;
    let mut rows: Vec<(Vec<T>, T)> = Vec::new();
    let mut pending_caps: Vec<(usize, T)> = Vec::new();
    for b in bounds {
        if let (Some(l), Some(u)) = (&b.lower, &b.upper) {
            if l.cmp_tol(u, tol) == std::cmp::Ordering::Greater {
                return Ok(infeasible());
            }
        }
        let lo_nonpos = b.lower.as_ref().is_none_or(|l| !l.is_pos(0.0));
        let up_nonneg = b.upper.as_ref().is_none_or(|u| !u.is_neg(0.0));
        let lo_zero = b.lower.as_ref().is_some_and(|l| l.is_zero_tol(0.0));
        if lo_zero {
            if let Some(u) = &b.upper {
                pending_caps.push((ncols, u.clone()));
            }
            maps.push(VarMap::Shift { col: ncols, offset: T::zero() });
            ncols += 1;
        } else if lo_nonpos && up_nonneg {
            if let Some(u) = &b.upper {
                pending_caps.push((ncols, u.clone()));
            }
            if let Some(l) = &b.lower {
                pending_caps.push((ncols + 1, -l.clone()));
            }
            maps.push(VarMap::Split { pos: ncols, neg: ncols + 1 });
            ncols += 2;
        } else if let Some(l) = &b.lower {
            if let Some(u) = &b.upper {
                pending_caps.push((ncols, u.clone() - l));
            }
            maps.push(VarMap::Shift { col: ncols, offset: l.clone() });
            ncols += 1;
        } else {
            let u = b.upper.clone().expect("upper bound present when lower is absent");
            maps.push(VarMap::Flip { col: ncols, offset: u });
            ncols += 1;
        }
    }
    for (col, cap) in pending_caps {
        let mut r = vec![T::zero(); ncols];
        r[col] = T::one();
        rows.push((r, cap));
    }

    let expand = |coeffs: &[T]| -> (Vec<T>, T) {
        let mut out = vec![T::zero(); ncols];
        let mut constant = T::zero();
        for (a, m) in coeffs.iter().zip(&maps) {
            if a.is_zero_tol(0.0) {
                continue;
            }
            match m {
                VarMap::Shift { col, offset } => {
                    out[*col] = a.clone();
                    constant = constant + a.clone() * offset;
                }
                VarMap::Flip { col, offset } => {
                    out[*col] = -a.clone();
                    constant = constant + a.clone() * offset;
                }
                VarMap::Split { pos, neg } => {
                    out[*pos] = a.clone();
                    out[*neg] = -a.clone();
                }
            }
        }
        (out, constant)
    };

    for con in constraints {
        let (a, k) = expand(&con.coeffs);
        let rhs = con.rhs.clone() - &k;
        match con.relation {
            Relation::Le => rows.push((a, rhs)),
            Relation::Ge => rows.push((a.into_iter().map(|v| -v).collect(), -rhs)),
            Relation::Eq => {
                rows.push((a.iter().map(|v| -v.clone()).collect(), -rhs.clone()));
                rows.push((a, rhs));
            }
        }
    }
    let (cvec, _) = expand(objective);

    let y = match solve_standard(&cvec, rows, tol) {
        Standard::Optimal(y) => y,
        Standard::Infeasible => return Ok(infeasible()),
        Standard::Unbounded => {
            return Ok(LpResult { status: LpStatus::Unbounded, objective: None, solution: Vec::new() })
        }
    };

    let x: Vec<T> = maps
        .iter()
        .map(|m| match m {
            VarMap::Shift { col, offset } => offset.clone() + &y[*col],
            VarMap::Flip { col, offset } => offset.clone() - &y[*col],
            VarMap::Split { pos, neg } => y[*pos].clone() - &y[*neg],
        })
        .collect();
    let value = objective
        .iter()
        .zip(&x)
        .fold(T::zero(), |acc, (c, v)| acc + c.clone() * v);
    Ok(LpResult { status: LpStatus::Optimal, objective: Some(value), solution: x })
}

fn infeasible<T>() -> LpResult<T> {
    LpResult { status: LpStatus::Infeasible, objective: None, solution: Vec::new() }
}

enum Standard<T> {
    Optimal(Vec<T>),
    Infeasible,
    Unbounded,
}

struct Tableau<T> {
    /// Row i reads `sum_j a[i][j] x_j = a[i][ncols]`.
    a: Vec<Vec<T>>,
    /// Reduced costs, last entry is minus the current objective value.
    obj: Vec<T>,
    basis: Vec<usize>,
    ncols: usize,
    tol: f64,
}

impl<T: Scalar> Tableau<T> {
    fn rhs(&self, i: usize) -> &T {
        &self.a[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let p = self.a[r][e].clone();
        let width = self.ncols + 1;
        {
            let row = &mut self.a[r];
            for j in 0..width {
                if !row[j].is_zero_tol(0.0) {
                    row[j] = row[j].clone() / &p;
                }
            }
            row[e] = T::one();
        }
        let prow = self.a[r].clone();
        let nz: Vec<usize> = (0..width).filter(|&j| !prow[j].is_zero_tol(0.0)).collect();
        for i in 0..self.a.len() {
            if i == r {
                continue;
            }
            let f = self.a[i][e].clone();
            if f.is_zero_tol(0.0) {
                continue;
            }
            let row = &mut self.a[i];
            for &j in &nz {
                row[j] = row[j].clone() - f.clone() * &prow[j];
            }
            row[e] = T::zero();
        }
        let f = self.obj[e].clone();
        if !f.is_zero_tol(0.0) {
            for &j in &nz {
                self.obj[j] = self.obj[j].clone() - f.clone() * &prow[j];
            }
            self.obj[e] = T::zero();
        }
        self.basis[r] = e;
    }

    /// Bland's rule iterations; `allowed` masks columns that may enter.
    fn run(&mut self, allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.ncols).find(|&j| allowed[j] && self.obj[j].is_pos(self.tol));
            let Some(e) = entering else { return true };
            let mut best: Option<(usize, T)> = None;
            for i in 0..self.a.len() {
                let aie = &self.a[i][e];
                if !aie.is_pos(self.tol) {
                    continue;
                }
                let ratio = self.rhs(i).clone() / aie;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => match ratio.cmp_tol(&br, self.tol) {
                        std::cmp::Ordering::Less => Some((i, ratio)),
                        std::cmp::Ordering::Equal if self.basis[i] < self.basis[bi] => {
                            Some((i, ratio))
                        }
                        _ => Some((bi, br)),
                    },
                };
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, e),
            }
        }
    }
}

/// max c·y s.t. A y ≤ b, y ≥ 0.
fn solve_standard<T: Scalar>(c: &[T], rows: Vec<(Vec<T>, T)>, tol: f64) -> Standard<T> {
    let n = c.len();
    let m = rows.len();
    // Columns: originals, slacks, artificial.
    let art = n + m;
    let ncols = n + m + 1;
    let mut a = Vec::with_capacity(m);
    for (i, (coeffs, rhs)) in rows.into_iter().enumerate() {
        let mut row = coeffs;
        row.resize(ncols + 1, T::zero());
        row[n + i] = T::one();
        row[art] = -T::one();
        row[ncols] = rhs;
        a.push(row);
    }
    let mut tab = Tableau { a, obj: vec![T::zero(); ncols + 1], basis: (n..n + m).collect(), ncols, tol };

    let most_negative = (0..m)
        .filter(|&i| tab.rhs(i).is_neg(tol))
        .min_by(|&i, &j| tab.rhs(i).partial_cmp(tab.rhs(j)).unwrap_or(std::cmp::Ordering::Equal));
    let mut allowed = vec![true; ncols];
    if let Some(r) = most_negative {
        // Phase 1: maximize -x0.
        tab.obj[art] = -T::one();
        tab.pivot(r, art);
        tab.run(&allowed);
        if tab.obj[ncols].is_neg(tol) || tab.obj[ncols].is_pos(tol) {
            return Standard::Infeasible;
        }
        if let Some(r) = tab.basis.iter().position(|&b| b == art) {
            let e = (0..art).find(|&j| !tab.a[r][j].is_zero_tol(tol));
            match e {
                Some(e) => tab.pivot(r, e),
                None => {
                    // Redundant row; neutralize it.
                    tab.a[r][art] = T::one();
                }
            }
        }
    }
    allowed[art] = false;
    if tab.basis.iter().all(|&b| b != art) {
        for row in tab.a.iter_mut() {
            row[art] = T::zero();
        }
    }
    // Restore the phase-2 objective in terms of the current nonbasic columns.
    let mut obj = vec![T::zero(); ncols + 1];
    obj[..n].clone_from_slice(c);
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n && !obj[b].is_zero_tol(0.0) {
            let f = obj[b].clone();
            for j in 0..=ncols {
                if !tab.a[i][j].is_zero_tol(0.0) {
                    obj[j] = obj[j].clone() - f.clone() * &tab.a[i][j];
                }
            }
        }
    }
    tab.obj = obj;
    if !tab.run(&allowed) {
        return Standard::Unbounded;
    }
    let mut y = vec![T::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            y[b] = tab.rhs(i).clone();
        }
    }
    Standard::Optimal(y)
}

/// Result of [`max_margin`].
#[derive(Debug, Clone, PartialEq)]
pub struct Margin<T> {
    /// Optimal t in [0, 1].
    pub t: T,
    /// Maximizer x in [-1, 1]^k.
    pub x: Vec<T>,
}

/// Solve `max t` s.t. `eqs·x = 0`, `rows·x >= t`, `x in [-1,1]^k`, `t in [0,1]`.
///
/// Uses constraint generation over `rows`: the relaxation is re-solved with
/// the most violated rows added until its maximizer satisfies every row.
/// A relaxation optimum within `tol` of zero is returned as is.
pub fn max_margin<T: Scalar>(eqs: &[Vec<T>], rows: &[Vec<T>], tol: f64) -> Result<Margin<T>> {
    let Some(k) = eqs.first().or(rows.first()).map(|r| r.len()) else {
        return Err(Error::input("margin problem without constraints"));
    };
    if eqs.iter().chain(rows).any(|r| r.len() != k) {
        return Err(Error::input("margin rows of unequal dimension"));
    }
    let mut objective = vec![T::zero(); k + 1];
    objective[k] = T::one();
    let mut bounds = vec![Bound::between(-T::one(), T::one()); k];
    bounds.push(Bound::between(T::zero(), T::one()));

    let batch = (k + 1).max(4);
    let mut active: Vec<usize> = Vec::new();
    let mut in_active = vec![false; rows.len()];
    // Seed with rows that are far apart in index; cheap and deterministic.
    let seed = (2 * batch).min(rows.len());
    for s in 0..seed {
        let i = s * rows.len() / seed;
        if !in_active[i] {
            in_active[i] = true;
            active.push(i);
        }
    }
    let base: Vec<Constraint<T>> = eqs
        .iter()
        .map(|r| {
            let mut c = r.clone();
            c.push(T::zero());
            Constraint::eq(c, T::zero())
        })
        .collect();
    loop {
        let mut cons = base.clone();
        for &i in &active {
            let mut c = rows[i].clone();
            c.push(-T::one());
            cons.push(Constraint::ge(c, T::zero()));
        }
        let res = lp_maximize(&objective, &cons, &bounds, tol)?;
        if res.status != LpStatus::Optimal {
            // t = 0, x = 0 is always feasible, so this only happens on floats.
            return Err(Error::Indeterminate(format!("margin LP reported {:?}", res.status)));
        }
        let mut sol = res.solution;
        let t = sol.pop().expect("t component");
        if !t.is_pos(tol) {
            // The full problem can only be tighter.
            return Ok(Margin { t, x: sol });
        }
        let mut violated: Vec<(T, usize)> = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            if in_active[i] {
                continue;
            }
            let slack = super::scalar::dot(r, &sol) - &t;
            if slack.is_neg(tol) {
                violated.push((slack, i));
            }
        }
        if violated.is_empty() {
            return Ok(Margin { t, x: sol });
        }
        violated.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal).then(a.1.cmp(&b.1)));
        for &(_, i) in violated.iter().take(batch) {
            in_active[i] = true;
            active.push(i);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn single_binding_constraint() {
        let res = lp_maximize(&[r(1)], &[Constraint::le(vec![r(1)], r(3))], &[Bound::nonnegative()], 0.0).unwrap();
        assert_eq!(res.status, LpStatus::Optimal);
        assert_eq!(res.objective, Some(r(3)));
    }

    #[test]
    fn simplex_face() {
        let res = lp_maximize(
            &[r(1), r(1)],
            &[Constraint::le(vec![r(1), r(1)], r(1))],
            &[Bound::nonnegative(), Bound::nonnegative()],
            0.0,
        )
        .unwrap();
        assert_eq!(res.objective, Some(r(1)));
    }

    #[test]
    fn contradictory_bounds() {
        let res = lp_maximize(
            &[r(1)],
            &[Constraint::le(vec![r(1)], r(1)), Constraint::ge(vec![r(1)], r(2))],
            &[Bound::free()],
            0.0,
        )
        .unwrap();
        assert_eq!(res.status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_ray() {
        let res = lp_maximize(&[r(1), r(0)], &[Constraint::le(vec![r(-1), r(1)], r(0))], &[Bound::free(), Bound::free()], 0.0)
            .unwrap();
        assert_eq!(res.status, LpStatus::Unbounded);
    }

    #[test]
    fn negative_box_and_equality() {
        // max x - y, x in [-5,-2], y in [-3, 4], x + y = -1
        let res = lp_maximize(
            &[r(1), r(-1)],
            &[Constraint::eq(vec![r(1), r(1)], r(-1))],
            &[Bound::between(r(-5), r(-2)), Bound::between(r(-3), r(4))],
            0.0,
        )
        .unwrap();
        assert_eq!(res.objective, Some(r(-3)));
        assert_eq!(res.solution, vec![r(-2), r(1)]);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(lp_maximize(&[r(1)], &[Constraint::le(vec![r(1), r(1)], r(1))], &[Bound::free()], 0.0).is_err());
    }

    #[test]
    fn float_backend_matches() {
        let res = lp_maximize(
            &[3.0, 2.0],
            &[Constraint::le(vec![1.0, 1.0], 4.0), Constraint::le(vec![1.0, 3.0], 6.0)],
            &[Bound::nonnegative(), Bound::nonnegative()],
            1e-9,
        )
        .unwrap();
        assert!((res.objective.unwrap() - 12.0).abs() < 1e-9);
    }

    #[test]
    fn margin_positive_and_zero() {
        // x1 > 0 and x2 > 0 simultaneously: margin 1 at x = (1,1).
        let rows = vec![vec![r(1), r(0)], vec![r(0), r(1)]];
        let m = max_margin(&[], &rows, 0.0).unwrap();
        assert_eq!(m.t, r(1));
        // x1 > 0 and -x1 > 0: no strict solution.
        let rows = vec![vec![r(1), r(0)], vec![r(-1), r(0)]];
        assert_eq!(max_margin(&[], &rows, 0.0).unwrap().t, r(0));
    }
}
