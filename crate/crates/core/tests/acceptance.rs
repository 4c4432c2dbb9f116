//! One line per acceptance criterion. Exits nonzero if any criterion fails,
//! except those listed as unattainable, which still print FAIL.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use monopaths::betasim::*;
use monopaths::coherence::{coherence_report, sample_coherent, shadow_path, CoherenceReport};
use monopaths::exactgeom::orient;
use monopaths::pathcount::{count_paths_by_length, prism_spectrum, Support};
use monopaths::zoo::*;
use monopaths::{LengthSpectrum, Rational};

type Verdict = Result<String, String>;

struct Line {
    id: &'static str,
    verdict: Verdict,
    secs: f64,
}

/// Criteria that cannot pass with a faithful implementation, with the reason.
const UNATTAINABLE: &[(&str, &str)] = &[(
    "sim.clt.ks",
    "f1_up is integer valued with sd about 2.3 at n = 1e4, so its KS distance to a continuous law cannot drop below about 1/(2 sd sqrt(2 pi)) = 0.085 > 0.05 (needs sd >= 4)",
)];

fn run(lines: &mut Vec<Line>, id: &'static str, f: impl FnOnce() -> Verdict) {
    let t = Instant::now();
    let verdict = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(v) => v,
        Err(e) => Err(format!("panicked: {}", e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())),
    };
    let line = Line { id, verdict, secs: t.elapsed().as_secs_f64() };
    let (tag, text) = match &line.verdict {
        Ok(s) => ("PASS", s),
        Err(s) => ("FAIL", s),
    };
    println!("{tag}  {:<28} {text} [{:.1}s]", line.id, line.secs);
    lines.push(line);
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn seq(start: usize, v: &[u64]) -> LengthSpectrum {
    LengthSpectrum::from_sequence(start, v)
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// Exact fixture with its monotone spectrum and per-path verdicts.
struct Solved {
    name: String,
    inst: Instance<Rational>,
    monotone: LengthSpectrum,
    report: Option<CoherenceReport<Rational>>,
}

fn solve(name: &str, inst: Instance<Rational>, coherence: bool) -> Solved {
    let g = inst.graph().unwrap();
    let monotone = count_paths_by_length(&g).unwrap();
    let report = coherence.then(|| coherence_report(&inst.polytope, &g).unwrap());
    Solved { name: name.to_string(), inst, monotone, report }
}

fn expected(name: &str) -> Expectation {
    Expectations::builtin().get(name).cloned().unwrap_or_default()
}

/// Computed spectra against the literal values and the shipped data file.
fn table_match(s: &Solved, mono: Option<&LengthSpectrum>, coh: Option<&LengthSpectrum>) -> Verdict {
    let e = expected(&s.name);
    if let Some(m) = mono {
        ensure(s.monotone == *m, format!("{} monotone {} != {}", s.name, s.monotone, m))?;
        ensure(e.monotone.as_ref() == Some(m), format!("{} data file monotone row differs", s.name))?;
    }
    if let Some(c) = coh {
        let got = s.report.as_ref().ok_or("no coherence report")?.coherent();
        ensure(got == *c, format!("{} coherent {} != {}", s.name, got, c))?;
        ensure(e.coherent.as_ref() == Some(c), format!("{} data file coherent row differs", s.name))?;
    }
    Ok(format!("{} monotone {}{}", s.name, s.monotone, coh.map(|c| format!(", coherent {c}")).unwrap_or_default()))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let mut lines = Vec::new();
    let mut solved: Vec<Solved> = Vec::new();
    // Every spectrum produced along the way, for the shape implication check.
    let mut spectra: Vec<LengthSpectrum> = Vec::new();

    println!("acceptance suite");

    // Table reproduction.
    run(&mut lines, "table.p10", || {
        let s = solve("p10", p10().unwrap(), true);
        let want = seq(2, &[3, 8, 12, 11, 12, 6, 1]);
        ensure(want.total() == big(53), "total")?;
        ensure(!s.monotone.is_unimodal(Support::Contiguous), "P10 spectrum should not be unimodal")?;
        let r = table_match(&s, Some(&want), None).map(|m| format!("{m}, total 53, not unimodal"));
        solved.push(s);
        r
    });
    run(&mut lines, "table.p10_spherical", || {
        let inst = p10_spherical().unwrap();
        let got = count_paths_by_length(&inst.graph().unwrap()).unwrap();
        let want = seq(2, &[4, 8, 10, 8, 11, 6, 1]);
        ensure(got == want, format!("float backend gives {got}"))?;
        ensure(expected("p10_spherical").monotone == Some(want), "data file row differs")?;
        Ok(format!("float backend monotone {got}"))
    });
    run(&mut lines, "table.lopsided", || {
        let lop3 = solve("lopsided3", lopsided_cube(3).unwrap(), true);
        let want = LengthSpectrum::from_pairs([(2usize, 2u32), (4, 4)]);
        let first = table_match(&lop3, Some(&want), Some(&want));
        let prism_base = lop3.monotone.clone();
        solved.push(lop3);
        first?;
        let mut parts = vec!["d=3 {2:2, 4:4} all coherent".to_string()];
        for d in 4..=5usize {
            let name = format!("lopsided{d}");
            let dp = solve(&name, lopsided_cube(d).unwrap(), false).monotone;
            let fact = |k: usize| (1..=k as u64).product::<u64>();
            let want = LengthSpectrum::from_pairs([(d - 1, big(fact(d - 1))), (d + 1, big(fact(d + 1) / 6))]);
            ensure(dp == want, format!("d={d} DP gives {dp}"))?;
            let prism = prism_spectrum(&prism_base, d - 3);
            ensure(prism == want, format!("d={d} prism gives {prism}"))?;
            ensure(expected(&name).monotone == Some(want.clone()), "data file row differs")?;
            parts.push(format!("d={d} {want} by DP and prism"));
        }
        Ok(parts.join("; "))
    });
    run(&mut lines, "table.truncated_lopsided4", || {
        let s = solve("truncated_lopsided4", truncated_lopsided_4().unwrap(), true);
        let r = table_match(&s, Some(&seq(4, &[6, 22, 6, 8, 4])), None);
        solved.push(s);
        r
    });
    run(&mut lines, "table.ass5", || {
        let s = solve("ass5", loday_associahedron(5).unwrap(), true);
        let m = seq(4, &[1, 10, 22, 22, 18, 13, 12]);
        let c = seq(4, &[1, 10, 21, 21, 18, 9, 10]);
        ensure(m.total() == big(98) && c.total() == big(90), "totals")?;
        let r = table_match(&s, Some(&m), Some(&c)).map(|t| format!("{t}, totals 98/90"));
        solved.push(s);
        r
    });
    run(&mut lines, "table.ass6", || {
        let t = Instant::now();
        let s = solve("ass6", loday_associahedron(6).unwrap(), true);
        let secs = t.elapsed().as_secs_f64();
        let e = expected("ass6");
        let (m, c) = (e.monotone.clone().ok_or("no row")?, e.coherent.clone().ok_or("no row")?);
        ensure(m.total() == big(2981) && c.total() == big(2010), "data file totals")?;
        let r = table_match(&s, Some(&m), Some(&c));
        solved.push(s);
        r?;
        ensure(secs <= 3600.0, "over one hour")?;
        Ok(format!("monotone {m} total 2981, coherent {c} total 2010"))
    });
    run(&mut lines, "table.zero_one", || {
        let cx1 = solve("complex_14_1235_2345", zero_one_from_complex(5, &sets(&["14", "1235", "2345"], 5)).unwrap(), true);
        let cx2 = solve("complex_123_134_245_345", zero_one_from_complex(5, &sets(&["123", "134", "245", "345"], 5)).unwrap(), true);
        let x4 = solve("zero_one_x4", zero_one_from_sets(4, &sets(&["", "1", "2", "12", "13", "34", "124"], 4)).unwrap(), true);
        let a = seq(3, &[2, 36, 96, 76, 84, 36]);
        let want = seq(1, &[1, 4, 4, 5, 2]);
        let r = (|| {
            ensure(a.total() == big(330), "total")?;
            let s1 = table_match(&cx1, Some(&a), None)?;
            let s2 = table_match(&cx2, Some(&seq(3, &[8, 40, 67, 62, 22, 8])), None)?;
            let s3 = table_match(&x4, None, Some(&want))?;
            ensure(!want.is_log_concave(Support::Contiguous), "X4 row should not be log-concave")?;
            Ok(format!("{s1}; {s2}; {s3}"))
        })();
        solved.extend([cx1, cx2, x4]);
        r
    });
    solved.push(solve("modified_lopsided3", modified_lopsided_3().unwrap(), true));

    // Oracle equivalence.
    let mut family: Vec<Solved> = Vec::new();
    run(&mut lines, "oracle.simplex", || {
        for d in 1..=8 {
            let s = solve(&format!("simplex:{d}"), simplex(d).unwrap(), d >= 2);
            ensure(s.monotone == simplex_spectrum(d), format!("d={d}"))?;
            family.push(s);
        }
        Ok("d <= 8".into())
    });
    run(&mut lines, "oracle.cube", || {
        for d in 1..=7 {
            let s = solve(&format!("cube:{d}"), cube(d).unwrap(), (2..=4).contains(&d));
            ensure(s.monotone == cube_spectrum(d), format!("d={d}"))?;
            family.push(s);
        }
        Ok("d <= 7, 5040 paths at d = 7".into())
    });
    run(&mut lines, "oracle.cross", || {
        for d in 2..=6 {
            let s = solve(&format!("cross:{d}"), cross_polytope(d).unwrap(), d <= 5);
            ensure(s.monotone == crosspoly_monotone(d), format!("monotone d={d}"))?;
            ensure(s.monotone.total() == (big(2).pow(2 * d as u32 - 1) - 2u32) / 3u32, format!("monotone total d={d}"))?;
            if let Some(r) = &s.report {
                let c = r.coherent();
                ensure(c == crosspoly_coherent(d), format!("coherent d={d}: {c}"))?;
                ensure(c.total() == big(3).pow(d as u32 - 1) - 1u32, format!("coherent total d={d}"))?;
            }
            family.push(s);
        }
        Ok("monotone d <= 6 with (2^(2d-1)-2)/3, coherent d <= 5 with 3^(d-1)-1".into())
    });
    run(&mut lines, "oracle.cyclic", || {
        for n in 5..=8 {
            let s = solve(&format!("cyclic:4:{n}"), cyclic_standard(4, n).unwrap(), true);
            let c = s.report.as_ref().unwrap().coherent();
            ensure(c == cyclic_coherent(n, 4), format!("n={n}: {c}"))?;
            ensure(c.total() == cyclic_coherent_total(n, 4), format!("total n={n}"))?;
            family.push(s);
        }
        Ok("d = 4, n in 5..=8 against the plateau count".into())
    });
    run(&mut lines, "oracle.s_hypersimplex", || {
        let mut count = 0;
        for d in 1..=7usize {
            for mask in 0u32..1 << (d - 1) {
                let mut s: Vec<usize> = (0..d - 1).filter(|k| mask >> k & 1 == 1).map(|k| k + 1).collect();
                s.push(d);
                let sol = solve(&format!("shyp:{d}:{s:?}"), s_hypersimplex(d, &s).unwrap(), d >= 2);
                let want = s_hypersimplex_spectrum(d, &s);
                ensure(sol.monotone == want, format!("d={d} S={s:?}: {}", sol.monotone))?;
                ensure(want.min_len() == want.max_len() && want.min_len() == Some(s.len()), "single length |S|")?;
                ensure(want.total() == s_hypersimplex_total(d, &s), "multinomial")?;
                if let Some(r) = &sol.report {
                    ensure(r.coherent() == sol.monotone, format!("d={d} S={s:?} not all coherent"))?;
                }
                count += 1;
                spectra.push(sol.monotone);
            }
        }
        Ok(format!("all {count} sets S with d <= 7: single length, multinomial total, all coherent"))
    });
    run(&mut lines, "oracle.second_hypersimplex", || {
        for n in 4..=6 {
            let s = solve(&format!("hyp2:{n}"), second_hypersimplex(n).unwrap(), true);
            let c = s.report.as_ref().unwrap().coherent();
            ensure(c == second_hypersimplex_coherent(n), format!("n={n}: {c}"))?;
            ensure(c.total() == second_hypersimplex_total(n), format!("identity n={n}"))?;
            ensure(c.total() == big([8, 33, 133][n - 4]), format!("total n={n}"))?;
            family.push(s);
        }
        Ok("n in 4..=6, totals 8, 33, 133".into())
    });
    run(&mut lines, "oracle.product", || {
        for n in 2..=5 {
            for m in 2..=5 {
                let s = solve(&format!("product:{n},{m}"), product_of_simplices(&[n, m]).unwrap(), n + m <= 7);
                ensure(s.monotone == product_simplices_spectrum(n, m), format!("({n},{m}): {}", s.monotone))?;
                family.push(s);
            }
        }
        Ok("vertex counts up to (5,5)".into())
    });
    solved.extend(family);

    // Property suites.
    run(&mut lines, "prop.dominated", || {
        let mut checked = 0;
        for s in &solved {
            if let Some(r) = &s.report {
                ensure(r.monotone() == s.monotone, format!("{} enumeration differs from DP", s.name))?;
                ensure(r.coherent().dominated_by(&s.monotone), format!("{} has N^coh > N", s.name))?;
                checked += 1;
            }
        }
        Ok(format!("N^coh <= N on {checked} instances"))
    });
    run(&mut lines, "prop.sampling", || {
        let mut parts = Vec::new();
        for name in ["ass5", "modified_lopsided3", "complex_123_134_245_345"] {
            let s = solved.iter().find(|s| s.name == name).unwrap();
            let g = s.inst.graph().unwrap();
            let report = s.report.as_ref().unwrap();
            let sampled = sample_coherent(&s.inst.polytope, &g, 10_000, 20_240_601).unwrap();
            let exact: std::collections::BTreeSet<_> = report.coherent_paths().map(|(p, _)| p.clone()).collect();
            ensure(sampled.paths.is_subset(&exact), format!("{name}: sampled path outside the coherent set"))?;
            parts.push(format!("{name} {}/{}", sampled.paths.len(), exact.len()));
        }
        Ok(format!("10^4 samples each, found {}", parts.join(", ")))
    });
    run(&mut lines, "prop.certificates", || {
        let mut n = 0usize;
        for s in &solved {
            let Some(r) = &s.report else { continue };
            let g = s.inst.graph().unwrap();
            for (path, cert) in r.coherent_paths() {
                let back = shadow_path(&s.inst.polytope, &g, &cert.omega).map_err(|e| format!("{}: {e}", s.name))?;
                ensure(back == *path, format!("{}: certificate for {:?} yields {:?}", s.name, path.vertices, back.vertices))?;
                n += 1;
            }
        }
        Ok(format!("{n} of {n} certificates reproduce their path"))
    });
    run(&mut lines, "prop.shape_chain", || {
        for s in &solved {
            spectra.push(s.monotone.clone());
            if let Some(r) = &s.report {
                spectra.push(r.coherent());
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..10_000 {
            let len = rng.random_range(1..10);
            let v: Vec<u64> = (0..len).map(|_| rng.random_range(0..30)).collect();
            spectra.push(seq(0, &v));
        }
        let mut counts = [0usize; 3];
        for s in &spectra {
            for support in [Support::Contiguous, Support::PositiveOnly] {
                let (u, l, ul) = (s.is_unimodal(support), s.is_log_concave(support), s.is_ultra_log_concave(support));
                ensure(!ul || l, format!("ultra but not log-concave: {s}"))?;
                ensure(!l || u, format!("log-concave but not unimodal: {s}"))?;
                counts[0] += ul as usize;
                counts[1] += l as usize;
                counts[2] += u as usize;
            }
        }
        Ok(format!("{} spectra, {} ULC / {} LC / {} unimodal verdicts", spectra.len(), counts[0], counts[1], counts[2]))
    });
    run(&mut lines, "prop.invariance", || {
        let factor = Rational::new(7, 3);
        let mut n = 0;
        for s in solved.iter().filter(|s| s.report.is_some() && s.inst.polytope.num_vertices() <= 64) {
            let dim = s.inst.polytope.ambient_dim();
            let shift: Vec<Rational> = (0..dim).map(|i| Rational::new(3 - 2 * i as i64, 1 + i as i64)).collect();
            let moved = s.inst.polytope.translate(&shift).unwrap().scale(&factor).unwrap();
            let g = if s.inst.weak { continue } else { orient(&moved, &s.inst.direction).unwrap() };
            let r = coherence_report(&moved, &g).unwrap();
            let a: Vec<_> = s.report.as_ref().unwrap().paths.iter().map(|(p, c)| (p.clone(), c.is_some())).collect();
            let b: Vec<_> = r.paths.iter().map(|(p, c)| (p.clone(), c.is_some())).collect();
            ensure(a == b, format!("{} verdicts change", s.name))?;
            n += 1;
        }
        Ok(format!("per-path verdicts unchanged on {n} instances under x -> 7/3 (x + t)"))
    });

    // Simulation.
    let grid: Vec<usize> = (8..=14).map(|k| 1usize << k).collect();
    for (id, d) in [("sim.growth.d4", 4usize), ("sim.growth.d5", 5)] {
        run(&mut lines, id, || {
            let t = Instant::now();
            let fit = estimate_growth_exponent(d, &grid, 200, 1000 + d as u64).map_err(|e| e.to_string())?;
            let target = 1.0 / (d as f64 - 1.0);
            let msg = format!("slope {:.4} (95% CI {:.4}..{:.4}), target {target:.4} +- 0.05", fit.slope, fit.ci.0, fit.ci.1);
            ensure((fit.slope - target).abs() <= 0.05, msg.clone())?;
            ensure(t.elapsed().as_secs() <= 600, "over 10 minutes")?;
            Ok(msg)
        });
    }
    run(&mut lines, "sim.caps", || {
        let mut parts = Vec::new();
        for beta in [-0.5, 0.0, 1.0, 10.0] {
            let r = 1.0 - 1e-6;
            let ratio = cap_measure(beta, r).map_err(|e| e.to_string())? / cap_asymptotic(beta, r);
            ensure((0.95..=1.05).contains(&ratio), format!("beta={beta}: ratio {ratio}"))?;
            parts.push(format!("beta={beta}: {ratio:.6}"));
        }
        Ok(format!("ratio at 1-R = 1e-6: {}", parts.join(", ")))
    });
    run(&mut lines, "sim.m_eps", || {
        let eps: Vec<f64> = (0..12).map(|k| 10f64.powf(-3.0 - 0.75 * k as f64)).collect();
        let mut parts = Vec::new();
        for d in 4..=6usize {
            let beta = beta_for_dim(d);
            let x: Vec<f64> = eps.iter().map(|e| (1.0 / e).ln()).collect();
            let y: Vec<f64> = eps.iter().map(|&e| max_independent_caps(beta, e).map(|m| (m as f64).ln())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            let slope = ols_slope(&x, &y);
            let target = 1.0 / (d as f64 - 1.0);
            ensure((slope - target).abs() <= 0.05, format!("d={d}: slope {slope}"))?;
            parts.push(format!("d={d} {slope:.4} vs {target:.4}"));
        }
        Ok(format!("log m_eps slopes {}", parts.join(", ")))
    });
    run(&mut lines, "sim.efron_stein", || {
        let (mut runs, mut held) = (0, 0);
        for d in [4usize, 5] {
            for (k, n) in geometric_grid(16, 2.0, 8).into_iter().enumerate() {
                let cfg = SimConfig::new(d, n, 200, grid_seed(31 + d as u64, k)).unwrap();
                let m = first_diff_moment(&cfg, 2).map_err(|e| e.to_string())?;
                runs += 1;
                held += m.efron_stein_holds() as usize;
            }
        }
        let frac = held as f64 / runs as f64;
        ensure(frac >= 0.95, format!("{held}/{runs}"))?;
        Ok(format!("Var f0 <= (n+1) E[(D f0)^2] in {held}/{runs} runs (d in 4,5; n = 16..2048)"))
    });
    let clt_at = |n: usize| clt_check(&SimConfig::new(5, n, 2000, 77).unwrap()).map_err(|e| e.to_string());
    let mut clt: Vec<Result<CltReport, String>> = Vec::new();
    run(&mut lines, "sim.clt.ks", || {
        clt.push(clt_at(10_000));
        let r = clt[0].clone()?;
        let floor = 1.0 / (2.0 * r.stdev * (2.0 * std::f64::consts::PI).sqrt());
        let msg = format!(
            "d=5 n=1e4: KS {:.4} (continuity-corrected {:.4}, sd {:.3}, lattice floor {:.4}), bound 0.05",
            r.ks, r.ks_continuity, r.stdev, floor
        );
        ensure(r.ks <= 0.05, msg.clone())?;
        Ok(msg)
    });
    run(&mut lines, "sim.clt.trend", || {
        let mid = clt.pop().unwrap_or_else(|| clt_at(10_000));
        let clt = [clt_at(1_000), mid, clt_at(100_000)];
        let ks: Vec<f64> = clt.iter().map(|r| r.clone().map(|r| r.ks)).collect::<Result<_, _>>()?;
        let msg = format!("KS over n = 1e3, 1e4, 1e5: {:.4}, {:.4}, {:.4}", ks[0], ks[1], ks[2]);
        ensure(ks[0] > ks[1] && ks[1] > ks[2], msg.clone())?;
        Ok(msg)
    });

    let failed: Vec<&Line> = lines.iter().filter(|l| l.verdict.is_err()).collect();
    let unexpected: Vec<&&Line> = failed.iter().filter(|l| !UNATTAINABLE.iter().any(|(id, _)| *id == l.id)).collect();
    println!(
        "summary: {} criteria, {} pass, {} fail ({} unattainable), {:.1}s",
        lines.len(),
        lines.len() - failed.len(),
        failed.len(),
        failed.len() - unexpected.len(),
        started.elapsed().as_secs_f64()
    );
    for (id, why) in UNATTAINABLE {
        if failed.iter().any(|l| l.id == *id) {
            println!("unattainable {id}: {why}");
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn sets(v: &[&str], n: usize) -> Vec<std::collections::BTreeSet<usize>> {
    v.iter().map(|s| parse_set(s, n).unwrap()).collect()
}
