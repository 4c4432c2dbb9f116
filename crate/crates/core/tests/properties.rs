use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;

use monopaths::betasim::{cap_measure, floating_radius, polygon_counts};
use monopaths::coherence::{coherence_report, sample_coherent, shadow_path};
use monopaths::exactgeom::{hull2d, lp_maximize, orient, project2d, upper_path, Bound, Constraint, LpStatus, NonVertexPolicy};
use monopaths::pathcount::{count_paths_by_length, enumerate_paths, histogram, prism_spectrum, Support};
use monopaths::{Error, LengthSpectrum, Polytope, Rational};

fn q(x: i64) -> Rational {
    Rational::from_integer(x)
}

fn point_cloud(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::btree_set(prop::collection::vec(-4i64..=4, dim), dim + 1..=9).prop_map(|s| s.into_iter().collect())
}

fn direction(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, dim)
}

/// A polytope with a generic direction, or `None` when the draw is degenerate.
fn instance(points: &[Vec<i64>], c: &[i64]) -> Option<(Polytope<Rational>, Vec<Rational>)> {
    let rows = points.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let p = Polytope::new("random", rows, NonVertexPolicy::Strip).ok()?;
    let c: Vec<Rational> = c.iter().map(|&x| q(x)).collect();
    if p.num_vertices() < 2 {
        return None;
    }
    match orient(&p, &c) {
        Ok(_) => Some((p, c)),
        Err(Error::Genericity(..)) | Err(Error::Input(_)) => None,
        Err(e) => panic!("unexpected error {e}"),
    }
}

fn spectrum_of(seq: &[u64]) -> LengthSpectrum {
    LengthSpectrum::from_sequence(0, seq)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn dp_matches_enumeration(points in point_cloud(3), c in direction(3)) {
        let Some((p, c)) = instance(&points, &c) else { return Ok(()) };
        let g = orient(&p, &c).unwrap();
        let paths: Vec<_> = enumerate_paths(&g).collect();
        prop_assert_eq!(count_paths_by_length(&g).unwrap(), histogram(&paths));
        prop_assert!(paths.iter().all(|path| path.is_valid_in(&g)));
        let distinct: BTreeSet<_> = paths.iter().collect();
        prop_assert_eq!(distinct.len(), paths.len());
    }

    #[test]
    fn coherent_is_dominated_and_certified(points in point_cloud(3), c in direction(3)) {
        let Some((p, c)) = instance(&points, &c) else { return Ok(()) };
        let g = orient(&p, &c).unwrap();
        let report = coherence_report(&p, &g).unwrap();
        prop_assert!(report.coherent().dominated_by(&report.monotone()));
        if p.num_vertices() >= 3 {
            prop_assert!(report.coherent().total() >= BigUint::from(2u32));
        }
        for (path, cert) in report.coherent_paths() {
            prop_assert!(cert.margin.is_positive());
            prop_assert_eq!(&shadow_path(&p, &g, &cert.omega).unwrap(), path);
        }
    }

    #[test]
    fn sampled_paths_are_coherent(points in point_cloud(3), c in direction(3), seed in any::<u64>()) {
        let Some((p, c)) = instance(&points, &c) else { return Ok(()) };
        let g = orient(&p, &c).unwrap();
        let report = coherence_report(&p, &g).unwrap();
        let coherent: BTreeSet<_> = report.coherent_paths().map(|(path, _)| path.clone()).collect();
        let sampled = sample_coherent(&p, &g, 200, seed).unwrap();
        prop_assert!(sampled.paths.is_subset(&coherent));
    }

    #[test]
    fn shadow_path_is_upper_hull(points in point_cloud(3), c in direction(3), w in direction(3)) {
        let Some((p, c)) = instance(&points, &c) else { return Ok(()) };
        let g = orient(&p, &c).unwrap();
        let omega: Vec<Rational> = w.iter().map(|&x| q(x)).collect();
        let Ok(proj) = project2d(&p, &c, &omega) else { return Ok(()) };
        match (shadow_path(&p, &g, &omega), upper_path(&proj, 0.0)) {
            (Ok(path), Ok(upper)) => prop_assert_eq!(path.vertices, upper),
            (Err(_), _) | (_, Err(_)) => {}
        }
    }

    #[test]
    fn verdicts_invariant_under_translation_and_scaling(
        points in point_cloud(3), c in direction(3), shift in direction(3), num in 1i64..=7, den in 1i64..=5,
    ) {
        let Some((p, c)) = instance(&points, &c) else { return Ok(()) };
        let offset: Vec<Rational> = shift.iter().map(|&x| q(x)).collect();
        let moved = p.translate(&offset).unwrap().scale(&Rational::new(num, den)).unwrap();
        let g = orient(&p, &c).unwrap();
        let h = orient(&moved, &c).unwrap();
        let a = coherence_report(&p, &g).unwrap();
        let b = coherence_report(&moved, &h).unwrap();
        prop_assert_eq!(a.monotone(), b.monotone());
        let va: Vec<_> = a.paths.iter().map(|(path, cert)| (path.clone(), cert.is_some())).collect();
        let vb: Vec<_> = b.paths.iter().map(|(path, cert)| (path.clone(), cert.is_some())).collect();
        prop_assert_eq!(va, vb);
    }

    #[test]
    fn float_backend_agrees(points in point_cloud(3), c in direction(3)) {
        let Some((p, c)) = instance(&points, &c) else { return Ok(()) };
        let g = orient(&p, &c).unwrap();
        let exact = coherence_report(&p, &g).unwrap();
        let pf = p.to_float(1e-9);
        let cf: Vec<f64> = c.iter().map(Rational::to_f64).collect();
        let gf = orient(&pf, &cf).unwrap();
        let float = coherence_report(&pf, &gf).unwrap();
        prop_assert_eq!(exact.monotone(), float.monotone());
        prop_assert_eq!(exact.coherent(), float.coherent());
    }

    #[test]
    fn four_dimensional_dp_matches_enumeration(points in point_cloud(4), c in direction(4)) {
        let Some((p, c)) = instance(&points, &c) else { return Ok(()) };
        let g = orient(&p, &c).unwrap();
        prop_assert_eq!(count_paths_by_length(&g).unwrap(), histogram(&enumerate_paths(&g).collect::<Vec<_>>()));
    }
}

proptest! {
    #[test]
    fn implication_chain(seq in prop::collection::vec(0u64..40, 1..9)) {
        let s = spectrum_of(&seq);
        for support in [Support::Contiguous, Support::PositiveOnly] {
            if s.is_ultra_log_concave(support) {
                prop_assert!(s.is_log_concave(support));
            }
            if s.is_log_concave(support) {
                prop_assert!(s.is_unimodal(support));
            }
        }
    }

    #[test]
    fn real_rooted_products_are_ultra_log_concave(roots in prop::collection::vec(1u64..6, 1..7)) {
        // Coefficients of Π (1 + a_i z).
        let mut coeffs = vec![BigUint::from(1u32)];
        for a in &roots {
            let mut next = vec![BigUint::from(0u32); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i] += c;
                next[i + 1] += c * *a;
            }
            coeffs = next;
        }
        let s = LengthSpectrum::from_sequence(1, &coeffs);
        prop_assert!(s.is_ultra_log_concave(Support::Contiguous));
        prop_assert!(s.is_log_concave(Support::Contiguous));
        for k in 1..=3 {
            prop_assert!(prism_spectrum(&s, k).is_log_concave(Support::Contiguous));
        }
    }

    #[test]
    fn palindromes_are_symmetric(half in prop::collection::vec(1u64..50, 1..6)) {
        let mut seq = half.clone();
        seq.extend(half.iter().rev());
        prop_assert!(spectrum_of(&seq).is_symmetric(Support::Contiguous));
    }

    #[test]
    fn spectrum_serialisation_round_trips(seq in prop::collection::vec(0u64..1_000_000, 1..12), start in 0usize..5) {
        let s = LengthSpectrum::from_sequence(start, &seq);
        prop_assert_eq!(&LengthSpectrum::from_csv(&s.to_csv()).unwrap(), &s);
        prop_assert_eq!(&LengthSpectrum::from_json(&s.to_json()).unwrap(), &s);
    }

    #[test]
    fn prism_total_factor(seq in prop::collection::vec(0u64..100, 1..6)) {
        // (c,1)-monotone paths on P × [0,1]: a path of length l lifts to l+1 paths.
        let s = LengthSpectrum::from_sequence(1, &seq);
        let lifted = prism_spectrum(&s, 1);
        let want: BigUint = s.iter().map(|(l, c)| c * BigUint::from(l + 1)).sum();
        prop_assert_eq!(lifted.total(), want);
    }

    #[test]
    fn rational_matches_bigrational(
        a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX,
    ) {
        let x = Rational::new(a, b);
        let y = Rational::new(c, d);
        let bx = BigRational::new(a.into(), b.into());
        let by = BigRational::new(c.into(), d.into());
        prop_assert_eq!((x.clone() + y.clone()).to_big(), &bx + &by);
        prop_assert_eq!((x.clone() - y.clone()).to_big(), &bx - &by);
        prop_assert_eq!((x.clone() * y.clone()).to_big(), &bx * &by);
        if c != 0 {
            prop_assert_eq!((x.clone() / y.clone()).to_big(), &bx / &by);
        }
        prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
    }

    #[test]
    fn lp_strong_duality(
        a in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 2..5),
        b in prop::collection::vec(0i64..=9, 4),
        c in prop::collection::vec(-5i64..=5, 3),
    ) {
        let m = a.len();
        let b = &b[..m];
        let primal: Vec<Constraint<Rational>> =
            a.iter().zip(b).map(|(row, &bi)| Constraint::le(row.iter().map(|&x| q(x)).collect(), q(bi))).collect();
        let cq: Vec<Rational> = c.iter().map(|&x| q(x)).collect();
        let p = lp_maximize(&cq, &primal, &vec![Bound::nonnegative(); 3], 0.0).unwrap();
        // min b·y s.t. Aᵀy >= c, y >= 0, written as max -b·y.
        let dual: Vec<Constraint<Rational>> =
            (0..3).map(|j| Constraint::ge(a.iter().map(|row| q(row[j])).collect(), q(c[j]))).collect();
        let nb: Vec<Rational> = b.iter().map(|&x| q(-x)).collect();
        let d = lp_maximize(&nb, &dual, &vec![Bound::nonnegative(); m], 0.0).unwrap();
        match p.status {
            LpStatus::Optimal => {
                prop_assert_eq!(d.status, LpStatus::Optimal);
                prop_assert_eq!(p.objective.unwrap(), -d.objective.unwrap());
            }
            LpStatus::Unbounded => prop_assert_eq!(d.status, LpStatus::Infeasible),
            LpStatus::Infeasible => prop_assert!(false, "x = 0 is feasible"),
        }
    }

    #[test]
    fn float_hull_matches_exact_hull(points in prop::collection::btree_set((-50i64..=50, -50i64..=50), 3..40)) {
        let pts: Vec<(i64, i64)> = points.into_iter().collect();
        let exact: Vec<(Rational, Rational)> = pts.iter().map(|&(x, y)| (q(x), q(y))).collect();
        let float: Vec<[f64; 2]> = pts.iter().map(|&(x, y)| [x as f64, y as f64]).collect();
        match (hull2d(&exact, 0.0), polygon_counts(&float)) {
            (Ok(h), Some(c)) if h.vertex_count() >= 3 => {
                prop_assert_eq!(c.f0, h.vertex_count());
                prop_assert_eq!(c.f1_up, h.upper_edges());
                prop_assert_eq!(c.f1_low, h.lower_edges());
                prop_assert_eq!(c.f0, c.f1_up + c.f1_low);
                prop_assert!(c.f0 <= pts.len());
            }
            (Ok(h), None) => prop_assert!(h.vertex_count() < 3),
            (Ok(_), Some(_)) => prop_assert!(false, "float hull found a polygon the exact hull did not"),
            (Err(_), _) => {}
        }
    }

    #[test]
    fn caps_shrink_with_radius(beta in -0.9f64..12.0, r in 0.05f64..0.98, dr in 0.001f64..0.01) {
        prop_assert!(cap_measure(beta, r).unwrap() > cap_measure(beta, (r + dr).min(0.999)).unwrap());
    }

    #[test]
    fn floating_radius_shrinks_with_eps(beta in -0.5f64..10.0, e in 1e-6f64..1e-2) {
        prop_assert!(floating_radius(beta, e).unwrap() > floating_radius(beta, 2.0 * e).unwrap());
    }
}
