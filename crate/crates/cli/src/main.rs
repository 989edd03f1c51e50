//! `phl`: build hyperkähler cohomology models, compute perverse-Hodge cubes,
//! render them and run the check suite.
//!
//! Exit codes: 0 success, 1 a check failed, 2 unreadable or malformed
//! input, 3 the model spec is rejected or inconsistent.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use phl_core::cube::{diamond_and_betti, CubeError, PerverseHodgeCube};
use phl_core::models::{validate, GradedAlgebraModel, ModelKind, ModelSpec};
use phl_core::perverse::cube;
use phl_core::render::{render_ascii, render_tex};
use phl_core::suite::run_suite;

#[derive(Parser)]
#[command(name = "phl", version, about = "Perverse-Hodge cubes of hyperkähler cohomology models")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Build the model and print its graded dimensions and Hodge numbers.
    Model(Common),
    /// Compute the perverse-Hodge cube.
    Cube(Common),
    /// Render a cube JSON file (given with --spec or --cube).
    Render(Common),
    /// Run the full check suite and write the JSON report.
    Check(Common),
}

#[derive(clap::Args)]
struct Common {
    /// Model spec JSON (cube JSON for `render`).
    #[arg(long, alias = "cube", value_name = "PATH")]
    spec: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Ascii,
    Tex,
}

enum Failure {
    Input(String),
    Model(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Model(_) => 3,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn json_error(path: &Path, e: &serde_json::Error) -> Failure {
    // the message already ends with "at line L column C"
    Failure::Input(format!("{}: {e}", path.display()))
}

fn load_model(path: &Path) -> Result<GradedAlgebraModel, Failure> {
    let text = read(path)?;
    let spec = ModelSpec::from_json(&text).map_err(|e| json_error(path, &e))?;
    spec.build().map_err(|e| Failure::Model(e.to_string()))
}

fn load_cube(path: &Path) -> Result<PerverseHodgeCube, Failure> {
    let text = read(path)?;
    PerverseHodgeCube::from_json(&text).map_err(|e| match e {
        CubeError::Json(j) => json_error(path, &j),
        other => Failure::Input(format!("{}: {other}", path.display())),
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Input(e.to_string())),
    }
}

fn render(c: &PerverseHodgeCube, format: Format) -> String {
    match format {
        Format::Json => c.to_json(),
        Format::Ascii => render_ascii(c),
        Format::Tex => render_tex(c),
    }
}

#[derive(Serialize)]
struct ModelSummary {
    kind: ModelKind,
    n: usize,
    b2: usize,
    total_dim: usize,
    graded_dims: Vec<usize>,
    betti: Vec<usize>,
    hodge: Vec<HodgeEntry>,
}

#[derive(Serialize)]
struct HodgeEntry {
    p: usize,
    q: usize,
    h: usize,
}

fn model_summary(model: &GradedAlgebraModel) -> ModelSummary {
    let top = 2 * model.n();
    let hodge = (0..=top)
        .flat_map(|p| (0..=top).map(move |q| (p, q)))
        .filter(|&(p, q)| model.hodge_number(p, q) > 0)
        .map(|(p, q)| HodgeEntry { p, q, h: model.hodge_number(p, q) })
        .collect();
    ModelSummary {
        kind: model.kind(),
        n: model.n(),
        b2: model.b2(),
        total_dim: model.total_dim(),
        graded_dims: model.graded_dims(),
        betti: model.betti_numbers(),
        hodge,
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.verb {
        Verb::Model(a) => {
            let model = load_model(&a.spec)?;
            let failures: Vec<_> = validate(&model).into_iter().filter(|c| !c.passed()).map(|c| c.name).collect();
            if !failures.is_empty() {
                return Err(Failure::Model(format!("model fails validation: {}", failures.join(", "))));
            }
            let text = serde_json::to_string_pretty(&model_summary(&model)).expect("summary serializes") + "\n";
            emit(a.out.as_deref(), &text)?;
            Ok(0)
        }
        Verb::Cube(a) => {
            let model = load_model(&a.spec)?;
            let c = cube(&model).map_err(|e| Failure::Model(e.to_string()))?;
            emit(a.out.as_deref(), &render(&c, a.format.unwrap_or(Format::Json)))?;
            Ok(0)
        }
        Verb::Render(a) => {
            let c = load_cube(&a.spec)?;
            emit(a.out.as_deref(), &render(&c, a.format.unwrap_or(Format::Ascii)))?;
            Ok(0)
        }
        Verb::Check(a) => {
            if a.format.is_some_and(|f| f != Format::Json) {
                return Err(Failure::Input("check only writes JSON reports".into()));
            }
            let model = load_model(&a.spec)?;
            let outcome = run_suite(&model);
            let mut summary = outcome.report.summary();
            if let Some(c) = &outcome.cube {
                let betti = diamond_and_betti(c).betti;
                summary.push_str(&format!("cube total {}, betti {:?}\n", c.total(), betti));
            }
            emit(a.out.as_deref(), &(outcome.report.to_json() + "\n"))?;
            // the summary goes to whichever stream the report does not use
            if a.out.is_some() {
                print!("{summary}");
            } else {
                eprint!("{summary}");
            }
            Ok(if outcome.report.all_passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let msg = match &f {
                Failure::Input(m) | Failure::Model(m) => m,
            };
            eprintln!("phl: {msg}");
            ExitCode::from(f.code())
        }
    }
}
