//! Named fixtures with expected spectra, and the harness that checks them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::families::*;
use super::formulas::*;
use crate::coherence::coherent_spectrum;
use crate::error::{Error, Result};
use crate::exactgeom::{Polytope, Rational, Scalar};
use crate::pathcount::{count_paths_by_length, LengthSpectrum};

const BUILTIN_EXPECTATIONS: &str = include_str!("../../data/expectations.json");

/// Named fixtures in catalog order.
pub const FIXTURE_NAMES: &[&str] = &[
    "p10",
    "p10_spherical",
    "lopsided3",
    "lopsided4",
    "lopsided5",
    "truncated_lopsided4",
    "modified_lopsided3",
    "ass5",
    "ass6",
    "complex_14_1235_2345",
    "complex_123_134_245_345",
    "zero_one_x4",
];

/// Parameterised families accepted as `family:args`.
pub const FAMILY_SYNTAX: &[&str] = &[
    "simplex:D",
    "cube:D",
    "cross:D",
    "cyclic:D:N",
    "shyp:D:S (S as digits or comma list)",
    "hyp2:D",
    "lopsided:D",
    "ass:N",
    "product:K1,K2,...",
    "complex:N:F1,F2,...",
    "sets:N:X1,X2,...",
];

/// An instance over either backend.
#[derive(Debug, Clone)]
pub enum AnyInstance {
    Exact(Instance<Rational>),
    Float(Instance<f64>),
}

impl AnyInstance {
    pub fn label(&self) -> &str {
        match self {
            AnyInstance::Exact(i) => i.polytope.label(),
            AnyInstance::Float(i) => i.polytope.label(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        match self {
            AnyInstance::Exact(i) => i.polytope.num_vertices(),
            AnyInstance::Float(i) => i.polytope.num_vertices(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, AnyInstance::Exact(_))
    }

    pub fn polytope_json(&self) -> Value {
        match self {
            AnyInstance::Exact(i) => i.polytope.to_json(),
            AnyInstance::Float(i) => i.polytope.to_json(),
        }
    }

    pub fn direction_json(&self) -> Value {
        match self {
            AnyInstance::Exact(i) => Value::Array(i.direction.iter().map(Scalar::to_json).collect()),
            AnyInstance::Float(i) => Value::Array(i.direction.iter().map(Scalar::to_json).collect()),
        }
    }

    /// Polytope JSON with the direction and the weak flag attached.
    pub fn to_json(&self) -> Value {
        let mut v = self.polytope_json();
        let weak = match self {
            AnyInstance::Exact(i) => i.weak,
            AnyInstance::Float(i) => i.weak,
        };
        if let Value::Object(map) = &mut v {
            map.insert("direction".into(), self.direction_json());
            if weak {
                map.insert("weak".into(), Value::Bool(true));
            }
        }
        v
    }

    pub fn monotone(&self) -> Result<LengthSpectrum> {
        match self {
            AnyInstance::Exact(i) => count_paths_by_length(&i.graph()?),
            AnyInstance::Float(i) => count_paths_by_length(&i.graph()?),
        }
    }

    pub fn coherent(&self) -> Result<LengthSpectrum> {
        match self {
            AnyInstance::Exact(i) => coherent_spectrum(&i.polytope, &i.graph()?),
            AnyInstance::Float(i) => coherent_spectrum(&i.polytope, &i.graph()?),
        }
    }
}

/// Expected spectra for one fixture.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Expectation {
    pub monotone: Option<LengthSpectrum>,
    pub coherent: Option<LengthSpectrum>,
    pub source: String,
}

fn spectrum_from_json(v: &Value) -> Result<LengthSpectrum> {
    let start = v.get("start").and_then(Value::as_u64).ok_or_else(|| Error::input("expectation needs an integer `start`"))?;
    let counts = v
        .get("counts")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::input("expectation needs a `counts` array"))?
        .iter()
        .map(|c| c.as_u64().ok_or_else(|| Error::input("counts must be nonnegative integers")))
        .collect::<Result<Vec<u64>>>()?;
    Ok(LengthSpectrum::from_sequence(start as usize, &counts))
}

fn spectrum_to_json(s: &LengthSpectrum) -> Value {
    json!({ "start": s.min_len().unwrap_or(0), "counts": s.contiguous().iter().map(|c| c.to_string()).collect::<Vec<_>>() })
}

/// Expectation table keyed by fixture name.
#[derive(Debug, Clone, Default)]
pub struct Expectations {
    table: BTreeMap<String, Expectation>,
}

impl Expectations {
    /// The table shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_json_str(BUILTIN_EXPECTATIONS).expect("builtin expectations parse")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::input(format!("expectations: {e}")))?;
        let obj = value.as_object().ok_or_else(|| Error::input("expectations must be a JSON object"))?;
        let mut table = BTreeMap::new();
        for (name, entry) in obj {
            let get = |key: &str| entry.get(key).map(spectrum_from_json).transpose();
            table.insert(
                name.clone(),
                Expectation {
                    monotone: get("monotone")?,
                    coherent: get("coherent")?,
                    source: entry.get("source").and_then(Value::as_str).unwrap_or_default().to_string(),
                },
            );
        }
        Ok(Expectations { table })
    }

    pub fn get(&self, name: &str) -> Option<&Expectation> {
        self.table.get(name)
    }

    /// Entries of `other` replace entries with the same name.
    pub fn merged(mut self, other: Expectations) -> Self {
        self.table.extend(other.table);
        self
    }
}

/// A polytope, its direction and the spectra it should produce.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub instance: AnyInstance,
    pub expected_monotone: Option<LengthSpectrum>,
    pub expected_coherent: Option<LengthSpectrum>,
    pub source: String,
}

fn exact(name: &str, inst: Instance<Rational>) -> (String, AnyInstance) {
    (name.to_string(), AnyInstance::Exact(inst))
}

fn num(s: &str, what: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::input(format!("{what}: expected a nonnegative integer, got {s:?}")))
}

fn parse_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

/// `S` given either as digits (`"24"`) or a comma list (`"2,4"`).
fn parse_s(s: &str) -> Result<Vec<usize>> {
    if s.contains(',') {
        parse_list(s).iter().map(|x| num(x, "S")).collect()
    } else {
        s.chars().map(|ch| ch.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::input(format!("bad element {ch:?} in S")))).collect()
    }
}

fn family(spec: &str) -> Result<(AnyInstance, Expectation)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let arity = |k: usize| {
        if parts.len() == k + 1 {
            Ok(())
        } else {
            Err(Error::input(format!("{} takes {k} argument(s): {spec}", parts[0])))
        }
    };
    let closed = |m: Option<LengthSpectrum>, c: Option<LengthSpectrum>| Expectation { monotone: m, coherent: c, source: "closed form".into() };
    let (inst, exp) = match parts[0] {
        "simplex" => {
            arity(1)?;
            let d = num(parts[1], "d")?;
            let s = simplex_spectrum(d);
            (simplex(d)?, closed(Some(s.clone()), Some(s)))
        }
        "cube" => {
            arity(1)?;
            let d = num(parts[1], "d")?;
            let s = cube_spectrum(d);
            (cube(d)?, closed(Some(s.clone()), Some(s)))
        }
        "cross" => {
            arity(1)?;
            let d = num(parts[1], "d")?;
            (cross_polytope(d)?, closed(Some(crosspoly_monotone(d)), (d >= 2).then(|| crosspoly_coherent(d))))
        }
        "cyclic" => {
            arity(2)?;
            let (d, n) = (num(parts[1], "d")?, num(parts[2], "n")?);
            let inst = cyclic_standard(d, n)?;
            let exp = if d >= 4 { closed(Some(simplex_spectrum(n - 1)), Some(cyclic_coherent(n, d))) } else { Expectation::default() };
            (inst, exp)
        }
        "shyp" => {
            arity(2)?;
            let d = num(parts[1], "d")?;
            let s = parse_s(parts[2])?;
            let inst = s_hypersimplex(d, &s)?;
            let sp = s_hypersimplex_spectrum(d, &s);
            (inst, closed(Some(sp.clone()), Some(sp)))
        }
        "hyp2" => {
            arity(1)?;
            let d = num(parts[1], "d")?;
            let inst = second_hypersimplex(d)?;
            (inst, closed(None, (d >= 4).then(|| second_hypersimplex_coherent(d))))
        }
        "lopsided" => {
            arity(1)?;
            let d = num(parts[1], "d")?;
            let inst = lopsided_cube(d)?;
            let s = lopsided_spectrum(d);
            (inst, closed(Some(s.clone()), Some(s)))
        }
        "ass" => {
            arity(1)?;
            (loday_associahedron(num(parts[1], "n")?)?, Expectation::default())
        }
        "product" => {
            arity(1)?;
            let counts = parse_list(parts[1]).iter().map(|x| num(x, "vertex count")).collect::<Result<Vec<_>>>()?;
            let inst = product_of_simplices(&counts)?;
            let exp = match counts[..] {
                [n, m] if n >= 2 && m >= 2 => closed(Some(product_simplices_spectrum(n, m)), None),
                _ => Expectation::default(),
            };
            (inst, exp)
        }
        "complex" | "sets" => {
            arity(2)?;
            let n = num(parts[1], "n")?;
            let sets = parse_list(parts[2]).iter().map(|x| parse_set(x, n)).collect::<Result<Vec<_>>>()?;
            let inst = if parts[0] == "complex" { zero_one_from_complex(n, &sets)? } else { zero_one_from_sets(n, &sets)? };
            (inst, Expectation::default())
        }
        other => return Err(Error::input(format!("unknown fixture or family {other:?}"))),
    };
    Ok((AnyInstance::Exact(inst), exp))
}

fn named(name: &str) -> Result<Option<(String, AnyInstance)>> {
    let f = |v: &[&str], n| v.iter().map(|s| parse_set(s, n)).collect::<Result<Vec<_>>>();
    Ok(Some(match name {
        "p10" => exact(name, p10()?),
        "p10_spherical" => (name.to_string(), AnyInstance::Float(p10_spherical()?)),
        "lopsided3" => exact(name, lopsided_cube(3)?),
        "lopsided4" => exact(name, lopsided_cube(4)?),
        "lopsided5" => exact(name, lopsided_cube(5)?),
        "truncated_lopsided4" => exact(name, truncated_lopsided_4()?),
        "modified_lopsided3" => exact(name, modified_lopsided_3()?),
        "ass5" => exact(name, loday_associahedron(5)?),
        "ass6" => exact(name, loday_associahedron(6)?),
        "complex_14_1235_2345" => exact(name, zero_one_from_complex(5, &f(&["14", "1235", "2345"], 5)?)?),
        "complex_123_134_245_345" => exact(name, zero_one_from_complex(5, &f(&["123", "134", "245", "345"], 5)?)?),
        "zero_one_x4" => exact(name, zero_one_from_sets(4, &f(&["", "1", "2", "12", "13", "34", "124"], 4)?)?),
        _ => return Ok(None),
    }))
}

/// Resolve a catalog name or a `family:args` spec against `expectations`.
pub fn fixture(name: &str, expectations: &Expectations) -> Result<Fixture> {
    let (instance, mut exp) = match named(name)? {
        Some((_, inst)) => (inst, Expectation::default()),
        None => family(name)?,
    };
    if let Some(e) = expectations.get(name) {
        exp = e.clone();
    }
    Ok(Fixture {
        name: name.to_string(),
        instance,
        expected_monotone: exp.monotone,
        expected_coherent: exp.coherent,
        source: exp.source,
    })
}

/// Resolve with the builtin expectations.
pub fn by_name(name: &str) -> Result<Fixture> {
    fixture(name, &Expectations::builtin())
}

/// Build an instance from polytope JSON carrying an optional `direction`
/// array and `weak` flag; `fallback` supplies the direction otherwise.
pub fn instance_from_json<T: Scalar>(value: &Value, fallback: Option<Vec<T>>) -> Result<Instance<T>> {
    let polytope = Polytope::<T>::from_json(value, crate::exactgeom::NonVertexPolicy::Reject)?;
    let direction = match value.get("direction") {
        Some(Value::Array(items)) => items
            .iter()
            .map(|x| T::from_json(x).ok_or_else(|| Error::input(format!("bad direction entry {x}"))))
            .collect::<Result<Vec<T>>>()?,
        Some(_) => return Err(Error::input("`direction` must be an array")),
        None => fallback.ok_or_else(|| Error::input("no direction given"))?,
    };
    let mut inst = Instance::new(polytope, direction);
    inst.weak = value.get("weak").and_then(Value::as_bool).unwrap_or(false);
    Ok(inst)
}

/// Outcome of one spectrum comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub kind: &'static str,
    pub expected: LengthSpectrum,
    pub computed: std::result::Result<LengthSpectrum, String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(&self.computed, Ok(s) if *s == self.expected)
    }

    /// Lengths where the two spectra differ, as `(length, expected, computed)`.
    pub fn diff(&self) -> Vec<(usize, String, String)> {
        let Ok(got) = &self.computed else { return Vec::new() };
        let lo = self.expected.min_len().into_iter().chain(got.min_len()).min().unwrap_or(0);
        let hi = self.expected.max_len().into_iter().chain(got.max_len()).max().unwrap_or(0);
        (lo..=hi)
            .filter(|&l| self.expected.get(l) != got.get(l))
            .map(|l| (l, self.expected.get(l).to_string(), got.get(l).to_string()))
            .collect()
    }

    pub fn status(&self) -> &'static str {
        match (&self.computed, self.passed()) {
            (Err(_), _) => "error",
            (_, true) => "pass",
            _ => "fail",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FixtureReport {
    pub name: String,
    pub source: String,
    pub checks: Vec<Check>,
}

impl FixtureReport {
    /// True when every check passed. A fixture without expectations passes vacuously.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// CSV rows `fixture,kind,expected,computed,status`.
    pub fn csv_rows(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let computed = match &c.computed {
                    Ok(s) => s.to_string(),
                    Err(e) => e.clone(),
                };
                format!("{},{},\"{}\",\"{}\",{}", self.name, c.kind, c.expected, computed.replace('"', "'"), c.status())
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "fixture": self.name,
            "source": self.source,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "kind": c.kind,
                "expected": spectrum_to_json(&c.expected),
                "computed": match &c.computed { Ok(s) => spectrum_to_json(s), Err(e) => Value::String(e.clone()) },
                "status": c.status(),
                "diff": c.diff().iter().map(|(l, e, g)| json!({"length": l, "expected": e, "computed": g})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Compute the expected spectra of `f` and compare. Mismatches and errors
/// are recorded, never corrected.
pub fn verify_fixture(f: &Fixture) -> FixtureReport {
    let mut checks = Vec::new();
    if let Some(exp) = &f.expected_monotone {
        checks.push(Check { kind: "monotone", expected: exp.clone(), computed: f.instance.monotone().map_err(|e| e.to_string()) });
    }
    if let Some(exp) = &f.expected_coherent {
        checks.push(Check { kind: "coherent", expected: exp.clone(), computed: f.instance.coherent().map_err(|e| e.to_string()) });
    }
    FixtureReport { name: f.name.clone(), source: f.source.clone(), checks }
}

/// Verify several fixtures in parallel; reports keep the input order.
pub fn verify_all(fixtures: &[Fixture]) -> Vec<FixtureReport> {
    fixtures.par_iter().map(verify_fixture).collect()
}
