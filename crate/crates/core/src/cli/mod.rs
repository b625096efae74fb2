//! The `goodset` command line: one subcommand per library operation, each
//! reading a JSON instance file and printing a canonical JSON report.
//!
//! Exit codes: 0 when a result was computed (whatever the verdict), 2 when a
//! precondition fails (bad arguments, unreadable file, set not good, ...),
//! 3 when the instance file is malformed, 1 on an internal invariant failure.

pub mod instance;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::catalog::{self, Instance};
use crate::error::{Error, Result};
use crate::goodness::{
    extend_to_maximal, full_closure, is_full, is_full_definitional, is_good, full_split,
};
use crate::measures::{is_simplicial, marginals, FiniteMeasure};
use crate::model::{FunctionTable, PinSet, PointSet};
use crate::solver::{self, Method, SolveReport};
use crate::structure::{self, geodesic, related_components};

pub use instance::InstanceFile;

#[derive(Debug, Parser)]
#[command(name = "goodset", version, about = "Good sets, loops, geodesics, boundaries and exact additive decompositions")]
pub struct Cli {
    /// Write the JSON report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add wall-clock timing to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Print `key: value` lines instead of JSON.
    #[arg(long, global = true)]
    pub human: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide goodness; a loop is reported when the set is not good.
    CheckGood { instance: PathBuf },
    /// Report a loop of the set, if any.
    FindLoop { instance: PathBuf },
    /// Decide fullness by the deficiency test and by span membership.
    IsFull { instance: PathBuf },
    /// Smallest-lexicographic full closure with the same projections.
    Fullify { instance: PathBuf },
    /// Full F ⊇ S with F∖S full and equal projections.
    Split { instance: PathBuf },
    /// Extend to a maximal good subset of the whole product.
    Maximalize { instance: PathBuf },
    /// Related components.
    Components { instance: PathBuf },
    /// The geodesic joining two points, given by index.
    Geodesic {
        instance: PathBuf,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Boundary set via E_i classes and the component relations.
    Boundary {
        instance: PathBuf,
        /// Skip the solver check of the constructed boundary.
        #[arg(long)]
        no_verify: bool,
    },
    /// Solve u_1 + ... + u_n = f exactly.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "direct", value_parser = parse_method)]
        method: Method,
        /// Pins such as `x:0=0,y:0=1/2`, overriding the file's pins.
        #[arg(long)]
        pins: Option<String>,
        /// Base point index for the geodesic method.
        #[arg(long)]
        base: Option<usize>,
    },
    /// Extremality of a measure among those with its marginals.
    Simplicial { instance: PathBuf },
    /// Sizes, deficiency, components and boundedness diagnostics.
    Stats { instance: PathBuf },
    /// Write the bundled example instances into a directory.
    EmitExamples { dir: PathBuf },
}

fn parse_method(s: &str) -> Result<Method> {
    s.parse()
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 3,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

struct Loaded {
    instance: Instance,
    digest: String,
}

fn load(path: &Path) -> Result<Loaded> {
    let bytes = fs::read(path)?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Error::Parse(format!("{} is not UTF-8", path.display())))?;
    let instance = InstanceFile::parse(&text)?.to_instance()?;
    Ok(Loaded {
        instance,
        digest: format!("sha256:{}", hex::encode(Sha256::digest(&bytes))),
    })
}

fn point_arg(s: &PointSet, index: usize) -> Result<crate::model::Point> {
    s.get(index).cloned().ok_or_else(|| {
        Error::InvalidPoint(format!("point index {index} out of range for {} points", s.len()))
    })
}

fn rhs(inst: &Instance) -> FunctionTable {
    inst.f.clone().unwrap_or_else(|| FunctionTable::zero(&inst.set))
}

fn check_good(inst: &Instance) -> Result<Value> {
    let s = &inst.set;
    let verdict = is_good(s)?;
    if let Some(l) = &verdict.certificate {
        if !l.verify() || l.indices_in(s).is_none() {
            return Err(Error::Internal("loop certificate failed to verify".into()));
        }
    }
    Ok(json!({
        "good": verdict.good,
        "loop": verdict.certificate.as_ref().map(|l| report::cycle(s, l)),
    }))
}

fn fullness(inst: &Instance) -> Result<Value> {
    let s = &inst.set;
    let fast = is_full(s)?;
    let definitional = is_full_definitional(s)?;
    if fast != definitional {
        return Err(Error::Internal("fullness tests disagree".into()));
    }
    Ok(json!({
        "good": is_good(s)?.good,
        "full": fast,
        "deficiency": s.deficiency()?,
        "target_deficiency": s.n() - 1,
    }))
}

fn grown(s: &PointSet, grown: &PointSet) -> Result<Value> {
    let added = grown.difference(s)?;
    Ok(json!({
        "points": report::points(grown),
        "added": report::points(&added),
        "full": is_full(grown)?,
        "deficiency": grown.deficiency()?,
    }))
}

fn split(inst: &Instance) -> Result<Value> {
    let s = &inst.set;
    let f = full_split(s)?;
    let rest = f.difference(s)?;
    if !is_full(&f)? || !is_full(&rest)? {
        return Err(Error::Internal("split output is not full".into()));
    }
    Ok(json!({
        "full_set": report::points(&f),
        "complement": report::points(&rest),
        "complement_size": rest.len(),
        "deficiency": s.deficiency()?,
    }))
}

fn components(inst: &Instance) -> Result<Value> {
    let s = &inst.set;
    let p = related_components(s)?;
    let comps: Vec<Value> = p.components.iter().map(|c| report::indices(s, c.iter())).collect();
    Ok(json!({
        "count": p.len(),
        "components": comps,
        "assignment": p.assignment,
    }))
}

fn geodesic_cmd(inst: &Instance, from: usize, to: usize) -> Result<Value> {
    let s = &inst.set;
    let (x, y) = (point_arg(s, from)?, point_arg(s, to)?);
    Ok(match geodesic(s, &x, &y)? {
        Some(g) => json!({
            "related": true,
            "length": g.length(),
            "points": report::indices(s, g.points.iter()),
        }),
        None => json!({"related": false, "length": null, "points": null}),
    })
}

fn boundary_cmd(inst: &Instance, verify: bool) -> Result<Value> {
    let s = &inst.set;
    let b = structure::boundary_with(s, verify)?;
    if verify && !structure::is_boundary(s, &b.boundary)? {
        return Err(Error::Internal("boundary failed to verify".into()));
    }
    let space = s.space();
    let classes: serde_json::Map<String, Value> = b
        .classes
        .classes
        .iter()
        .enumerate()
        .map(|(i, cls)| {
            let axis = &space.axes()[i];
            let v: Vec<Vec<&str>> = cls
                .iter()
                .map(|c| c.iter().map(|&v| axis.label(v)).collect())
                .collect();
            (axis.name().to_string(), json!(v))
        })
        .collect();
    let generators: Vec<Value> = b
        .generators
        .iter()
        .map(|&(axis, k)| {
            let a = &space.axes()[axis];
            let values: Vec<&str> = b.classes.classes[axis][k].iter().map(|&v| a.label(v)).collect();
            json!({"axis": a.name(), "values": values})
        })
        .collect();
    let relations: Vec<Vec<String>> = (0..b.relations.n_rows())
        .map(|r| b.relations.row(r).iter().map(|x| x.to_string()).collect())
        .collect();
    Ok(json!({
        "boundary": b.boundary.iter().map(|&c| report::coordinate(space, c)).collect::<Vec<_>>(),
        "size": b.boundary.len(),
        "components": b.components.components.iter().map(|c| report::indices(s, c.iter())).collect::<Vec<_>>(),
        "cross_section": report::indices(s, &b.cross_section),
        "classes": classes,
        "generators": generators,
        "relations": relations,
        "pivots": b.pivots,
        "basis": b.basis,
        "verified": verify,
    }))
}

fn solve_cmd(inst: &Instance, method: Method, pins: Option<&str>, base: Option<usize>) -> Result<Value> {
    let s = &inst.set;
    let f = rhs(inst);
    let mut pins = match pins {
        Some(text) => instance::parse_pins(s.space(), text)?,
        None => inst.pins.clone(),
    };
    let report: SolveReport = match method {
        Method::Direct => solver::solve_direct(s, &f, &pins)?,
        Method::Geodesic => {
            let base = point_arg(s, base.unwrap_or(0))?;
            pins = PinSet::base(&base);
            solver::solve_via_geodesics(s, &f, &base)?
        }
        Method::Componentwise => {
            let r = solver::solve_componentwise(s, &f, None)?;
            pins = related_components(s)?
                .cross_section()
                .iter()
                .flat_map(|b| PinSet::base(b).iter().map(|(c, v)| (c, v.clone())).collect::<Vec<_>>())
                .collect();
            r
        }
        Method::Boundary => {
            if pins.is_empty() {
                pins = PinSet::zeros(structure::boundary(s)?.boundary);
            }
            solver::solve_with_boundary(s, &f, &pins)?
        }
    };
    if let Some(d) = &report.decomposition {
        if !solver::verifies(s, &f, &pins, d) {
            return Err(Error::Internal("solution failed to verify".into()));
        }
    }
    let space = s.space();
    Ok(json!({
        "method": report.method.as_str(),
        "verdict": report.verdict.as_str(),
        "pins": report::pins(space, &pins),
        "decomposition": report.decomposition.as_ref().map(|d| report::decomposition(space, d)),
        "kernel": report.kernel.as_ref().map(|k| json!({
            "dim": k.dim(),
            "basis": k.decompositions(s.n()).iter().map(|d| report::decomposition(space, d)).collect::<Vec<_>>(),
        })),
        "witness": report.witness.as_ref().map(|w| report::witness(s, w)),
        "diagnostics": {
            "max_geodesic_length": report.diagnostics.max_geodesic_length,
            "max_abs_value": report::rational(&report.diagnostics.max_abs_value),
            "route": report.diagnostics.route,
        },
    }))
}

fn simplicial_cmd(inst: &Instance) -> Result<Value> {
    let m = match &inst.measure {
        Some(m) => m.clone(),
        None => FiniteMeasure::uniform(inst.set.clone())?,
    };
    let s = &inst.set;
    let verdict = is_simplicial(&m)?;
    let certificate = verdict.certificate.as_ref().map(|c| {
        let side = |sign| -> Vec<Value> {
            c.apply(&m, sign)
                .iter()
                .map(|(p, w)| json!({"point": s.index_of(p), "weight": report::rational(w)}))
                .collect()
        };
        json!({
            "loop": report::cycle(s, &c.cycle),
            "epsilon": report::rational(&c.epsilon),
            "plus": side(1),
            "minus": side(-1),
        })
    });
    Ok(json!({
        "simplicial": verdict.simplicial,
        "support": report::indices(s, m.support().iter()),
        "marginals": report::marginals(s.space(), &marginals(&m)),
        "certificate": certificate,
    }))
}

fn stats(inst: &Instance) -> Result<Value> {
    let s = &inst.set;
    s.require_nonempty()?;
    let good = is_good(s)?.good;
    let space = s.space();
    let (components, diagnostics) = if good {
        let p = related_components(s)?;
        let diag = if p.len() == 1 {
            let d = solver::bound_diagnostics(s)?;
            json!({
                "base": s.index_of(&d.base),
                "max_geodesic_length": d.max_geodesic_length,
                "mean_geodesic_length": report::rational(&d.mean_geodesic_length),
                "max_abs_value": report::rational(&d.max_abs_value),
                "argmax": s.index_of(&d.argmax),
            })
        } else {
            Value::Null
        };
        (json!(p.len()), diag)
    } else {
        (Value::Null, Value::Null)
    };
    Ok(json!({
        "n": s.n(),
        "points": s.len(),
        "axis_sizes": space.axes().iter().map(|a| a.len()).collect::<Vec<_>>(),
        "projection_sizes": (0..s.n()).map(|i| s.projection_values(i).len()).collect::<Vec<_>>(),
        "deficiency": s.deficiency()?,
        "good": good,
        "full": is_full(s)?,
        "components": components,
        "diagnostics": diagnostics,
    }))
}

/// Writes every bundled instance as `<name>.json`.
pub fn emit_examples(dir: &Path) -> Result<Vec<String>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for inst in catalog::all() {
        let name = format!("{}.json", inst.name);
        fs::write(dir.join(&name), InstanceFile::from_instance(&inst).to_json())?;
        written.push(name);
    }
    Ok(written)
}

fn execute(command: &Command) -> Result<(Value, Value)> {
    let (name, options, path) = match command {
        Command::CheckGood { instance } => ("check-good", json!({}), Some(instance)),
        Command::FindLoop { instance } => ("find-loop", json!({}), Some(instance)),
        Command::IsFull { instance } => ("is-full", json!({}), Some(instance)),
        Command::Fullify { instance } => ("fullify", json!({}), Some(instance)),
        Command::Split { instance } => ("split", json!({}), Some(instance)),
        Command::Maximalize { instance } => ("maximalize", json!({}), Some(instance)),
        Command::Components { instance } => ("components", json!({}), Some(instance)),
        Command::Geodesic { instance, from, to } => {
            ("geodesic", json!({"from": from, "to": to}), Some(instance))
        }
        Command::Boundary { instance, no_verify } => {
            ("boundary", json!({"verify": !no_verify}), Some(instance))
        }
        Command::Solve {
            instance,
            method,
            pins,
            base,
        } => (
            "solve",
            json!({"method": method.as_str(), "pins": pins, "base": base}),
            Some(instance),
        ),
        Command::Simplicial { instance } => ("simplicial", json!({}), Some(instance)),
        Command::Stats { instance } => ("stats", json!({}), Some(instance)),
        Command::EmitExamples { .. } => ("emit-examples", json!({}), None),
    };

    let loaded = path.map(|p| load(p)).transpose()?;
    let result = match (command, loaded.as_ref().map(|l| &l.instance)) {
        (Command::EmitExamples { dir }, _) => json!({"written": emit_examples(dir)?}),
        (Command::CheckGood { .. }, Some(i)) => check_good(i)?,
        (Command::FindLoop { .. }, Some(i)) => {
            let v = check_good(i)?;
            json!({"found": !v["good"].as_bool().unwrap_or(true), "loop": v["loop"]})
        }
        (Command::IsFull { .. }, Some(i)) => fullness(i)?,
        (Command::Fullify { .. }, Some(i)) => grown(&i.set, &full_closure(&i.set)?)?,
        (Command::Split { .. }, Some(i)) => split(i)?,
        (Command::Maximalize { .. }, Some(i)) => grown(&i.set, &extend_to_maximal(&i.set)?)?,
        (Command::Components { .. }, Some(i)) => components(i)?,
        (Command::Geodesic { from, to, .. }, Some(i)) => geodesic_cmd(i, *from, *to)?,
        (Command::Boundary { no_verify, .. }, Some(i)) => boundary_cmd(i, !no_verify)?,
        (Command::Solve { method, pins, base, .. }, Some(i)) => {
            solve_cmd(i, *method, pins.as_deref(), *base)?
        }
        (Command::Simplicial { .. }, Some(i)) => simplicial_cmd(i)?,
        (Command::Stats { .. }, Some(i)) => stats(i)?,
        _ => unreachable!("every instance command loads its file"),
    };
    let instance = loaded
        .as_ref()
        .map(|l| json!({"digest": l.digest, "points": l.instance.set.len()}))
        .unwrap_or(Value::Null);
    Ok((
        json!({"command": name, "options": options, "instance": instance}),
        result,
    ))
}

/// Runs the command line given as `args` (program name first) and returns
/// what would be printed and the exit code.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };

    let start = Instant::now();
    let (mut report, result) = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                code: exit_code(&e),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    report["result"] = result;
    if cli.timing {
        report["timing"] = json!({"elapsed_ms": start.elapsed().as_secs_f64() * 1e3});
    }
    let text = if cli.human {
        report::human(&report)
    } else {
        let mut t = serde_json::to_string_pretty(&report).expect("serializable");
        t.push('\n');
        t
    };
    match &cli.out {
        Some(path) => match fs::write(path, &text) {
            Ok(()) => Outcome {
                code: 0,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => Outcome {
            code: 0,
            stdout: text,
            stderr: String::new(),
        },
    }
}
