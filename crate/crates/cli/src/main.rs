mod report;

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use dgcat_core::cyclic::{hc_dims, hc_dims_with_bound, tower, tower_with_bound, CyclicTowers, TowerKind};
use dgcat_core::dgcore::{attach_object, pushout_attach, Presentation};
use dgcat_core::hochschild::{auto_bar_bound, hh_dims_with_bound};
use dgcat_core::io::{emit_category, load_document, Document, DEFAULT_DEGREE_BOUND};
use dgcat_core::saturation::{euler_report, saturation_report, DEFAULT_SMOOTHNESS_BOUND};
use dgcat_core::suites::{run_suites, CheckResult, SuiteParams, Verdict};
use dgcat_core::{corpus, DgCategory, Error, FieldSpec, Finiteness};

use report::Format;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "dgcat", version, about = "Exact homological invariants of finite dg categories")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Coefficient field (`q` or `fp:<p>`); overrides the field declared in input files
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<FieldSpec>,
    /// Write the report or category file here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check the dg category axioms
    Validate { input: PathBuf },
    /// Hochschild homology dimensions HH_0 … HH_n
    Hh {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long)]
        bar_bound: Option<usize>,
    },
    /// Cyclic homology dimensions HC_0 … HC_n
    Hc {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long)]
        bar_bound: Option<usize>,
    },
    /// Negative and periodic cyclic homology on a window of homological degrees
    Hp {
        input: PathBuf,
        #[arg(long, value_parser = parse_window, default_value = "0..1", allow_hyphen_values = true)]
        window: RangeInclusive<i64>,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..))]
        levels: u64,
        #[arg(long)]
        bar_bound: Option<usize>,
    },
    /// Tensor product of two categories
    Tensor { left: PathBuf, right: PathBuf },
    /// Build a category by attaching objects and cells
    Cell {
        /// Quiver file to start from; the empty category when omitted
        base: Option<PathBuf>,
        /// Attach a new object (repeatable, applied before cells)
        #[arg(long = "object")]
        objects: Vec<String>,
        /// Attach a cell along ι(N) with attaching map POLY: `N:SOURCE:TARGET:POLY[:LABEL]`
        #[arg(long = "attach", allow_hyphen_values = true)]
        cells: Vec<String>,
        #[arg(long, default_value_t = 4)]
        wordlength_bound: usize,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: i64,
    },
    /// Opposite category
    Op { input: PathBuf },
    /// Properness, smoothness and saturation
    Saturate {
        input: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SMOOTHNESS_BOUND)]
        bar_bound: usize,
    },
    /// Euler characteristic from Hochschild homology and from the duality composite
    Euler {
        input: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Run the property suites on files, a corpus directory, or the built-in corpus
    Check {
        inputs: Vec<PathBuf>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Cohomological window for the triangle identities
        #[arg(long, value_parser = parse_window, default_value = "-3..3", allow_hyphen_values = true)]
        window: RangeInclusive<i64>,
        #[arg(long, default_value_t = 4)]
        bar_bound: usize,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_window(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: i64 = a.trim().parse().map_err(|_| format!("bad window start `{a}`"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad window end `{b}`"))?;
    if a > b {
        return Err(format!("empty window {a}..{b}"));
    }
    Ok(a..=b)
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) => EXIT_CHECK_FAILED,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

fn with_path(path: &Path) -> impl FnOnce(Error) -> Failure + '_ {
    move |e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    }
}

fn load(path: &Path, field: Option<FieldSpec>) -> Result<DgCategory, Failure> {
    load_document(path, field).and_then(Document::into_category).map_err(with_path(path))
}

/// Loads a category for a homological computation, which needs a closed realization.
fn load_closed(path: &Path, field: Option<FieldSpec>) -> Result<DgCategory, Failure> {
    let c = load(path, field)?;
    if c.finiteness() == Finiteness::Truncated {
        return Err(with_path(path)(Error::Truncated));
    }
    Ok(c)
}

fn item_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

/// The `.toml` files of a corpus directory, sorted by name.
fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries = std::fs::read_dir(dir).map_err(|e| input_error(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    Ok(files)
}

/// The corpus directory's files first, then the explicit inputs.
fn named_inputs(
    inputs: Vec<PathBuf>,
    corpus: Option<PathBuf>,
    field: Option<FieldSpec>,
) -> Result<Vec<(String, DgCategory)>, Failure> {
    let mut paths = match corpus {
        Some(dir) => corpus_files(&dir)?,
        None => Vec::new(),
    };
    paths.extend(inputs);
    paths.iter().map(|p| Ok((item_name(p), load(p, field)?))).collect()
}

struct Output<'a> {
    common: &'a Common,
}

impl Output<'_> {
    /// Writes a report to `--out` with a one-line notice, or to standard output.
    fn report(&self, command: &str, value: &Value) -> Result<(), Failure> {
        let text = match self.common.format {
            Format::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
            Format::Tsv => report::tsv(value),
        };
        self.emit(command, &text)
    }

    fn emit(&self, command: &str, text: &str) -> Result<(), Failure> {
        match &self.common.out {
            Some(path) => {
                std::fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
                println!("{command}: wrote {}", path.display());
            }
            None => print!("{text}"),
        }
        Ok(())
    }

    fn category(&self, command: &str, c: &DgCategory) -> Result<(), Failure> {
        if c.finiteness() == Finiteness::Truncated {
            eprintln!("warning: {command}: the realization is truncated");
        }
        self.emit(command, &emit_category(c))
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let common = &cli.common;
    let field = common.field;
    let out = Output { common };
    match cli.command {
        Command::Validate { input } => {
            let c = load(&input, field)?;
            let v = c.validate();
            let violations: Vec<String> = v.violations.iter().map(ToString::to_string).collect();
            for line in &violations {
                println!("violation: {line}");
            }
            println!("{}: {}", input.display(), if v.is_valid() { "valid" } else { "invalid" });
            if common.out.is_some() {
                let value = json!({
                    "command": "validate",
                    "input": input.display().to_string(),
                    "field": c.field().to_string(),
                    "finiteness": c.finiteness(),
                    "valid": v.is_valid(),
                    "violations": violations,
                });
                out.report("validate", &value)?;
            }
            Ok(if v.is_valid() { 0 } else { EXIT_CHECK_FAILED })
        }
        Command::Hh { input, n_max, bar_bound } => {
            let c = load_closed(&input, field)?;
            let bound = bar_bound.unwrap_or_else(|| auto_bar_bound(&c, n_max));
            let r = hh_dims_with_bound(&c, n_max, bound)?;
            let value = json!({
                "command": "hh",
                "input": input.display().to_string(),
                "field": c.field().to_string(),
                "n_max": n_max,
                "bar_bound": r.bar_bound,
                "degrees": r.degrees,
            });
            out.report("hh", &value)?;
            Ok(0)
        }
        Command::Hc { input, n_max, bar_bound } => {
            let c = load_closed(&input, field)?;
            let r = match bar_bound {
                Some(b) => hc_dims_with_bound(&c, n_max, b)?,
                None => hc_dims(&c, n_max)?,
            };
            let value = json!({
                "command": "hc",
                "input": input.display().to_string(),
                "field": c.field().to_string(),
                "n_max": n_max,
                "bar_bound": r.bar_bound,
                "degrees": r.degrees,
            });
            out.report("hc", &value)?;
            Ok(0)
        }
        Command::Hp { input, window, levels, bar_bound } => {
            let c = load_closed(&input, field)?;
            let levels = levels as usize;
            let build = |kind| match bar_bound {
                Some(b) => tower_with_bound(&c, kind, window.clone(), levels, b),
                None => tower(&c, kind, window.clone(), levels),
            };
            let towers = CyclicTowers { negative: build(TowerKind::Negative)?, periodic: build(TowerKind::Periodic)? };
            let value = json!({
                "command": "hp",
                "input": input.display().to_string(),
                "field": c.field().to_string(),
                "window": [window.start(), window.end()],
                "levels": levels,
                "negative": towers.negative,
                "periodic": towers.periodic,
            });
            out.report("hp", &value)?;
            Ok(0)
        }
        Command::Tensor { left, right } => {
            let t = load(&left, field)?.tensor(&load(&right, field)?)?;
            out.category("tensor", &t)?;
            Ok(0)
        }
        Command::Op { input } => {
            out.category("op", &load(&input, field)?.opposite())?;
            Ok(0)
        }
        Command::Cell { base, objects, cells, wordlength_bound, degree_bound } => {
            let c = build_cells(base, &objects, &cells, wordlength_bound, degree_bound, field)?;
            out.category("cell", &c)?;
            Ok(0)
        }
        Command::Saturate { input, corpus, bar_bound } => {
            let items = named_inputs(input.into_iter().collect(), corpus, field)?;
            if items.is_empty() {
                eprintln!("saturate: no inputs");
            }
            let mut reports = serde_json::Map::new();
            for (name, c) in &items {
                let r = saturation_report(c, bar_bound);
                if common.out.is_some() {
                    println!("{name}: {}", if r.saturated { "saturated" } else { "not certified saturated" });
                }
                reports.insert(name.clone(), serde_json::to_value(&r).expect("reports serialize"));
            }
            let value = json!({ "command": "saturate", "bar_bound": bar_bound, "items": reports });
            out.report("saturate", &value)?;
            Ok(0)
        }
        Command::Euler { input, corpus } => {
            let items = named_inputs(input.into_iter().collect(), corpus, field)?;
            if items.is_empty() {
                eprintln!("euler: no inputs");
            }
            let mut reports = serde_json::Map::new();
            for (name, c) in &items {
                reports.insert(name.clone(), serde_json::to_value(euler_report(c)?).expect("reports serialize"));
            }
            out.report("euler", &json!({ "command": "euler", "items": reports }))?;
            Ok(0)
        }
        Command::Check { inputs, corpus: dir, window, bar_bound } => {
            let params = SuiteParams { window, bar_bound, ..SuiteParams::default() };
            let items: Vec<(String, DgCategory)> = if inputs.is_empty() && dir.is_none() {
                corpus::named(field.unwrap_or(FieldSpec::Rationals))
                    .into_iter()
                    .map(|(n, c)| (n.to_string(), c))
                    .collect()
            } else {
                named_inputs(inputs, dir, field)?
            };
            if items.is_empty() {
                println!("check: no inputs; 0 checks run");
            }
            let results: Vec<CheckResult> = items.iter().flat_map(|(name, c)| run_suites(name, c, &params)).collect();
            for r in &results {
                println!("{:<12} {:<13} {:<14} {}", r.verdict, r.check, r.item, r.detail);
            }
            let count = |v: Verdict| results.iter().filter(|r| r.verdict == v).count();
            let summary = json!({
                "pass": count(Verdict::Pass),
                "fail": count(Verdict::Fail),
                "inconclusive": count(Verdict::Inconclusive),
                "skipped": count(Verdict::Skipped),
            });
            println!(
                "check: {} items, {} checks: {} pass, {} fail, {} inconclusive, {} skipped",
                items.len(),
                results.len(),
                summary["pass"],
                summary["fail"],
                summary["inconclusive"],
                summary["skipped"]
            );
            if common.out.is_some() {
                let value = json!({ "command": "check", "params": params, "summary": summary, "results": results });
                out.report("check", &value)?;
            }
            Ok(if count(Verdict::Fail) > 0 { EXIT_CHECK_FAILED } else { 0 })
        }
    }
}

fn build_cells(
    base: Option<PathBuf>,
    objects: &[String],
    cells: &[String],
    wordlength_bound: usize,
    degree_bound: i64,
    field: Option<FieldSpec>,
) -> Result<DgCategory, Failure> {
    let mut p = match &base {
        Some(path) => match load_document(path, field).map_err(with_path(path))? {
            Document::Quiver(q) => q.presentation,
            Document::Category(_) => {
                return Err(input_error(format!("{}: cells attach to a quiver file", path.display())))
            }
        },
        None => Presentation::new(field.unwrap_or(FieldSpec::Rationals)),
    };
    for name in objects {
        p = attach_object(&p, name)?;
    }
    for spec in cells {
        let parts: Vec<&str> = spec.splitn(5, ':').collect();
        if parts.len() < 4 {
            return Err(input_error(format!("cell `{spec}`: expected N:SOURCE:TARGET:POLY[:LABEL]")));
        }
        let n: i64 = parts[0].parse().map_err(|_| input_error(format!("cell `{spec}`: bad dimension")))?;
        let (s, t) = (p.object_index(parts[1])?, p.object_index(parts[2])?);
        let f = p.parse_poly(parts[3], Some((s, t)))?;
        p = pushout_attach(&p, n, &f)?;
        if let Some(label) = parts.get(4) {
            let last = p.generators().len() - 1;
            p.rename_generator(last, label)?;
        }
    }
    Ok(p.realize(degree_bound, wordlength_bound)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
