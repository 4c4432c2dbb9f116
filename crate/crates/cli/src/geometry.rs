//! `count`, `coherent`, `zoo` and `verify`.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use serde_json::{json, Value};

use monopaths::coherence::{coherence_report, sample_coherent};
use monopaths::exactgeom::DEFAULT_TOLERANCE;
use monopaths::zoo::{
    fixture, instance_from_json, verify_all, AnyInstance, Expectations, Instance, FAMILY_SYNTAX, FIXTURE_NAMES,
};
use monopaths::{LengthSpectrum, Rational, Scalar};

use crate::manifest::{Manifest, Sink};
use crate::{BackendArg, Failure, Global};

#[derive(Args)]
pub struct CountArgs {
    /// Polytope JSON file, fixture name, or family spec such as `cube:3`.
    pub input: String,
    /// Direction as comma-separated rationals (`1,0,0`, `1/2,1,3`).
    /// Overrides any direction stored with the input.
    #[arg(long, short)]
    pub c: Option<String>,
}

#[derive(Args)]
pub struct CoherentArgs {
    #[command(flatten)]
    pub target: CountArgs,
    /// Also sample this many random capture vectors and check that every
    /// shadow path they produce is certified coherent.
    #[arg(long)]
    pub sample: Option<usize>,
    /// Write the coherence certificates to this JSON file.
    #[arg(long)]
    pub certificates: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum ZooCommand {
    /// Named fixtures with their sources, and the family spec syntax.
    List,
    /// Print a fixture or family member as polytope JSON with its direction.
    Emit { name: String },
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Verify every named fixture.
    #[arg(long)]
    pub all: bool,
    /// Fixture names or family specs.
    pub names: Vec<String>,
    /// JSON file whose entries replace the built-in expectations.
    #[arg(long)]
    pub expectations: Option<PathBuf>,
}

fn parse_direction<T: Scalar>(s: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|x| T::parse_literal(x.trim()).ok_or_else(|| Failure::Input(format!("bad direction entry {x:?}"))))
        .collect()
}

fn to_float(inst: Instance<Rational>) -> Instance<f64> {
    let mut f = Instance::new(inst.polytope.to_float(DEFAULT_TOLERANCE), inst.direction.iter().map(Rational::to_f64).collect());
    f.weak = inst.weak;
    f
}

/// Apply the backend flag; fixtures that only exist in floating point
/// cannot be made exact.
fn with_backend(inst: AnyInstance, backend: Option<BackendArg>, manifest: &mut Manifest) -> Result<AnyInstance, Failure> {
    let inst = match (inst, backend) {
        (AnyInstance::Exact(i), Some(BackendArg::Float)) => AnyInstance::Float(to_float(i)),
        (AnyInstance::Float(i), Some(BackendArg::Rational)) => {
            return Err(Failure::Input(format!("{} is only defined in floating point; use --backend float", i.polytope.label())))
        }
        (inst, _) => inst,
    };
    manifest.backend = if inst.is_exact() { "rational" } else { "float" }.into();
    Ok(inst)
}

fn looks_like_file(input: &str) -> bool {
    input.ends_with(".json") || input.contains('/') || Path::new(input).is_file()
}

fn load(args: &CountArgs, g: &Global, manifest: &mut Manifest) -> Result<AnyInstance, Failure> {
    let inst = if looks_like_file(&args.input) {
        let text = manifest.read_input(Path::new(&args.input))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", args.input)))?;
        if g.backend == Some(BackendArg::Float) {
            let c = args.c.as_deref().map(parse_direction::<f64>).transpose()?;
            AnyInstance::Float(instance_from_json(&v, c)?)
        } else {
            let c = args.c.as_deref().map(parse_direction::<Rational>).transpose()?;
            AnyInstance::Exact(instance_from_json(&v, c)?)
        }
    } else {
        fixture(&args.input, &Expectations::default())?.instance
    };
    let mut inst = with_backend(inst, g.backend, manifest)?;
    if let Some(c) = &args.c {
        match &mut inst {
            AnyInstance::Exact(i) => i.direction = parse_direction(c)?,
            AnyInstance::Float(i) => i.direction = parse_direction(c)?,
        }
    }
    Ok(inst)
}

fn analytics_json(s: &LengthSpectrum) -> Value {
    let a = s.analytics();
    json!({
        "unimodal": a.unimodal,
        "log_concave": a.log_concave,
        "ultra_log_concave": a.ultra_log_concave,
        "symmetric": a.symmetric,
        "modes": a.modes,
    })
}

pub fn count(args: &CountArgs, g: &Global, mut sink: Sink) -> Result<(), Failure> {
    let inst = load(args, g, &mut sink.manifest)?;
    let s = inst.monotone()?;
    let csv = format!("{}# total: {}\n# analytics: {}\n", s.to_csv(), s.total(), s.analytics());
    let json = json!({
        "instance": inst.label(),
        "direction": inst.direction_json(),
        "spectrum": s.to_json(),
        "total": s.total().to_string(),
        "analytics": analytics_json(&s),
    });
    sink.emit(&csv, json)
}

struct CoherentRun {
    monotone: LengthSpectrum,
    coherent: LengthSpectrum,
    certificates: Vec<Value>,
    sample: Option<SampleCheck>,
}

struct SampleCheck {
    samples: usize,
    found: usize,
    outside: usize,
    skipped: usize,
}

fn run_coherent<T: Scalar>(inst: &Instance<T>, sample: Option<usize>, seed: u64) -> Result<CoherentRun, Failure> {
    let g = inst.graph()?;
    let report = coherence_report(&inst.polytope, &g)?;
    let certificates = report
        .coherent_paths()
        .map(|(p, c)| {
            let mut v = c.to_json();
            v["path"] = json!(p.vertices);
            v["length"] = json!(p.len());
            v
        })
        .collect();
    let sample = match sample {
        Some(n) => {
            let r = sample_coherent(&inst.polytope, &g, n, seed)?;
            let exact: BTreeSet<_> = report.coherent_paths().map(|(p, _)| p.clone()).collect();
            Some(SampleCheck { samples: n, found: r.paths.len(), outside: r.paths.difference(&exact).count(), skipped: r.skipped })
        }
        None => None,
    };
    Ok(CoherentRun { monotone: report.monotone(), coherent: report.coherent(), certificates, sample })
}

pub fn coherent(args: &CoherentArgs, g: &Global, mut sink: Sink) -> Result<(), Failure> {
    let inst = load(&args.target, g, &mut sink.manifest)?;
    let run = match &inst {
        AnyInstance::Exact(i) => run_coherent(i, args.sample, g.seed)?,
        AnyInstance::Float(i) => run_coherent(i, args.sample, g.seed)?,
    };
    let mut csv = String::from("length,monotone,coherent\n");
    if let (Some(lo), Some(hi)) = (run.monotone.min_len(), run.monotone.max_len()) {
        for l in lo..=hi {
            csv += &format!("{l},{},{}\n", run.monotone.get(l), run.coherent.get(l));
        }
    }
    csv += &format!("# totals: monotone {}, coherent {}\n", run.monotone.total(), run.coherent.total());
    csv += &format!("# coherent analytics: {}\n", run.coherent.analytics());
    let mut json = json!({
        "instance": inst.label(),
        "direction": inst.direction_json(),
        "monotone": run.monotone.to_json(),
        "coherent": run.coherent.to_json(),
        "totals": {"monotone": run.monotone.total().to_string(), "coherent": run.coherent.total().to_string()},
        "analytics": analytics_json(&run.coherent),
        "certificates": run.certificates,
    });
    if let Some(s) = &run.sample {
        csv += &format!(
            "# sample: {} capture vectors, {} distinct paths, {} outside the coherent set, {} ties skipped\n",
            s.samples, s.found, s.outside, s.skipped
        );
        json["sample"] = json!({"samples": s.samples, "distinct": s.found, "outside": s.outside, "skipped": s.skipped});
    }
    if let Some(path) = &args.certificates {
        sink.emit_json_to(path, json!({"instance": inst.label(), "certificates": json["certificates"].clone()}))?;
    }
    sink.emit(&csv, json)?;
    match run.sample {
        Some(s) if s.outside > 0 => Err(Failure::Mismatch(format!("{} sampled paths are not certified coherent", s.outside))),
        _ => Ok(()),
    }
}

pub fn zoo(cmd: &ZooCommand, g: &Global, mut sink: Sink) -> Result<(), Failure> {
    match cmd {
        ZooCommand::List => {
            let e = Expectations::builtin();
            let mut csv = String::from("name,kind,monotone,coherent,source\n");
            let mut fixtures = Vec::new();
            for name in FIXTURE_NAMES {
                let x = e.get(name).cloned().unwrap_or_default();
                let show = |s: &Option<LengthSpectrum>| s.as_ref().map(|s| s.to_string()).unwrap_or_default();
                csv += &format!("{name},fixture,\"{}\",\"{}\",\"{}\"\n", show(&x.monotone), show(&x.coherent), x.source);
                fixtures.push(json!({"name": name, "source": x.source,
                    "monotone": x.monotone.as_ref().map(LengthSpectrum::to_json),
                    "coherent": x.coherent.as_ref().map(LengthSpectrum::to_json)}));
            }
            for syntax in FAMILY_SYNTAX {
                csv += &format!("\"{syntax}\",family,,,closed forms where known\n");
            }
            sink.emit(&csv, json!({"fixtures": fixtures, "families": FAMILY_SYNTAX}))
        }
        ZooCommand::Emit { name } => {
            let inst = fixture(name, &Expectations::default())?.instance;
            let inst = with_backend(inst, g.backend, &mut sink.manifest)?;
            // Always JSON: the output is an input file for `count`.
            sink.format = crate::Format::Json;
            sink.emit("", inst.to_json())
        }
    }
}

pub fn verify(args: &VerifyArgs, g: &Global, mut sink: Sink) -> Result<(), Failure> {
    let mut expectations = Expectations::builtin();
    if let Some(path) = &args.expectations {
        let text = sink.manifest.read_input(path)?;
        expectations = expectations.merged(Expectations::from_json_str(&text)?);
    }
    let mut names: Vec<String> = if args.all { FIXTURE_NAMES.iter().map(|s| s.to_string()).collect() } else { Vec::new() };
    names.extend(args.names.iter().cloned());
    if names.is_empty() {
        return Err(Failure::Input("name at least one fixture, or pass --all".into()));
    }
    let mut fixtures = Vec::new();
    for name in &names {
        let mut f = fixture(name, &expectations)?;
        f.instance = with_backend(f.instance, g.backend, &mut sink.manifest)?;
        fixtures.push(f);
    }
    if g.backend.is_none() {
        sink.manifest.backend = "per fixture".into();
    }
    let reports = verify_all(&fixtures);
    let mut csv = String::from("fixture,kind,expected,computed,status\n");
    let mut failed = Vec::new();
    for r in &reports {
        if r.checks.is_empty() {
            csv += &format!("{},none,\"\",\"\",no expectation\n", r.name);
        }
        for row in r.csv_rows() {
            csv += &row;
            csv.push('\n');
        }
        for c in r.checks.iter().filter(|c| !c.passed()) {
            failed.push(format!("{} {}", r.name, c.kind));
            match &c.computed {
                Err(e) => eprintln!("{} {}: {e}", r.name, c.kind),
                Ok(_) => {
                    for (l, want, got) in c.diff() {
                        eprintln!("{} {} length {l}: expected {want}, computed {got}", r.name, c.kind);
                    }
                }
            }
        }
    }
    let json = json!({"reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(), "passed": failed.is_empty()});
    sink.emit(&csv, json)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("{} check(s) failed: {}", failed.len(), failed.join(", "))))
    }
}
