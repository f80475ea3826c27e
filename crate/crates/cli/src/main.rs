mod parse;
mod portrait;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use whvf::catalog::{FamilyKind, FamilyTag};
use whvf::classifier::{
    analyze, canonical_form_check, corroborate, Analysis, ClassifyOptions, CorroborationOptions, Outcome,
};
use whvf::parallel::Execution;
use whvf::sampling::all_kinds;
use whvf::sweep::{sweep, SweepReport};
use whvf::weights::WeightSignature;

use crate::parse::{parse_system, SystemSource};
use crate::portrait::PortraitOptions;
use crate::report::{Report, Timings};

#[derive(Parser, Debug)]
#[command(name = "whvf", version, about = "Center and focus classification for weight-homogeneous planar polynomial systems")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit the JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Zero tolerance for the circle integral of homogeneous cubics.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Truncation order of the implicit branch in the nilpotent criterion.
    #[arg(long, global = true)]
    max_order: Option<usize>,
    /// Worker threads for sweeps and portraits.
    #[arg(long, global = true, env = "WHVF_THREADS")]
    threads: Option<usize>,
    /// Exit with status 2 on an inconclusive verdict.
    #[arg(long, global = true)]
    strict: bool,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact verdict.
    Classify { file: PathBuf },
    /// Exact verdict plus numeric corroboration.
    Verify { file: PathBuf },
    /// Orbits from rings of initial conditions, written as CSV.
    Portrait {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write an SVG rendering.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,1")]
        radii: Vec<f64>,
        /// Orbits per ring.
        #[arg(long, default_value_t = 8)]
        count: usize,
        #[arg(long, default_value_t = 100.0)]
        t_max: f64,
        /// Stop each orbit after this many turns about the origin.
        #[arg(long, default_value_t = 1.0)]
        revolutions: f64,
    },
    /// Random-parameter agreement between the classifier and the condition table.
    Sweep {
        /// A family id such as s12-d2, a canonical form such as cubic-nf7, or `all`.
        family: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

enum Status {
    Done,
    Inconclusive,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Done) => ExitCode::SUCCESS,
        Ok(Status::Inconclusive) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn execution(global: &Global) -> Result<Execution> {
    match global.threads {
        Some(0) => Err(anyhow!("--threads must be at least 1")),
        Some(1) => Ok(Execution::Sequential),
        Some(n) => {
            configure_pool(n)?;
            Ok(Execution::Parallel)
        }
        None => Ok(Execution::Parallel),
    }
}

#[cfg(feature = "parallel")]
fn configure_pool(n: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("thread pool")
}

#[cfg(not(feature = "parallel"))]
fn configure_pool(_: usize) -> Result<()> {
    Ok(())
}

fn load(path: &Path) -> Result<SystemSource> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut source = parse_system(&text).with_context(|| format!("{}", path.display()))?;
    source.origin.file = Some(path.display().to_string());
    Ok(source)
}

fn classify_source(source: &SystemSource, opts: &ClassifyOptions) -> Result<Analysis> {
    Ok(match &source.canonical {
        Some(tag) => canonical_analysis(tag)?,
        None => analyze(&source.p, &source.q, opts)?,
    })
}

fn canonical_analysis(tag: &FamilyTag) -> Result<Analysis> {
    let verdict = canonical_form_check(tag)?;
    Ok(Analysis { signatures: vec![WeightSignature::new(1, 1, 3)], matched: Some((WeightSignature::new(1, 1, 3), tag.clone())), verdict })
}

fn run(cli: &Cli) -> Result<Status> {
    let g = &cli.global;
    if !(g.tol > 0.0) {
        return Err(anyhow!("--tol must be positive"));
    }
    let opts = ClassifyOptions { zero_tol: g.tol, max_order: g.max_order, ..ClassifyOptions::default() };
    match &cli.command {
        Command::Classify { file } | Command::Verify { file } => {
            let numeric = matches!(cli.command, Command::Verify { .. });
            let exec = execution(g)?;
            let source = load(file)?;
            let start = Instant::now();
            let mut analysis = classify_source(&source, &opts)?;
            let classify_ms = start.elapsed().as_secs_f64() * 1e3;
            let mut numeric_ms = None;
            if numeric {
                let start = Instant::now();
                let c = corroborate(&analysis, &source.p, &source.q, &CorroborationOptions { exec, ..Default::default() });
                analysis.verdict.numeric = Some(c);
                numeric_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            let timings = g.timings.then_some(Timings { classify_ms, numeric_ms });
            let report = Report::new(&source, &analysis, timings);
            if g.json {
                emit(&format!("{}\n", report.to_json()))?;
            } else {
                emit(&report.to_text())?;
            }
            let inconclusive = matches!(analysis.verdict.outcome, Outcome::Inconclusive { .. });
            Ok(if inconclusive && g.strict { Status::Inconclusive } else { Status::Done })
        }
        Command::Portrait { file, out, svg, radii, count, t_max, revolutions } => {
            let exec = execution(g)?;
            let source = load(file)?;
            if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0)) || *count == 0 {
                return Err(anyhow!("portrait needs positive radii and a positive count"));
            }
            let popts = PortraitOptions { radii: radii.clone(), count: *count, t_max: *t_max, revolutions: *revolutions };
            let portrait = portrait::compute(&source.p, &source.q, &popts, exec)?;
            portrait.write_csv(out)?;
            if let Some(path) = svg {
                let extent = 1.2 * radii.iter().cloned().fold(0.0, f64::max);
                std::fs::write(path, portrait.to_svg(extent)).with_context(|| format!("cannot write {}", path.display()))?;
            }
            let points: usize = portrait.orbits.iter().map(|o| o.points.len()).sum();
            if g.json {
                let summary = serde_json::json!({
                    "schema": report::SCHEMA,
                    "orbits": portrait.orbits.len(),
                    "points": points,
                    "ends": portrait.orbits.iter().map(|o| o.end).collect::<Vec<_>>(),
                    "final_winding": portrait.orbits.iter().map(|o| o.final_winding()).collect::<Vec<_>>(),
                });
                emit(&format!("{}\n", serde_json::to_string_pretty(&summary)?))?;
            } else {
                emit(&format!("{} orbits, {points} points written to {}\n", portrait.orbits.len(), out.display()))?;
            }
            Ok(Status::Done)
        }
        Command::Sweep { family, samples, seed } => {
            let exec = execution(g)?;
            let kinds: Vec<FamilyKind> = if family == "all" {
                all_kinds()
            } else {
                vec![parse_kind(family)?]
            };
            let reports: Vec<SweepReport> =
                kinds.iter().map(|k| sweep(*k, *samples, *seed, &opts, exec)).collect::<whvf::error::Result<_>>()?;
            if g.json {
                let out = serde_json::json!({ "schema": report::SCHEMA, "sweeps": reports });
                emit(&format!("{}\n", serde_json::to_string_pretty(&out)?))?;
            } else {
                let mut text = String::new();
                for r in &reports {
                    text += &format!("{}: {}/{} agree (seed {})\n", r.family, r.agreements, r.records.len(), r.seed);
                    for m in r.records.iter().filter(|m| !m.agrees) {
                        let got = m.outcome.as_ref().map(ToString::to_string).or(m.error.clone()).unwrap_or_default();
                        text += &format!("  #{}: dx/dt = {}, dy/dt = {}: expected {:?}, got {got}\n", m.index, m.p, m.q, m.expected);
                    }
                }
                emit(&text)?;
            }
            let mismatches: usize = reports.iter().map(|r| r.mismatches).sum();
            Ok(if mismatches > 0 && g.strict { Status::Inconclusive } else { Status::Done })
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn parse_kind(s: &str) -> Result<FamilyKind> {
    if let Ok(f) = s.parse() {
        return Ok(FamilyKind::Catalog(f));
    }
    if let Ok(c) = s.parse() {
        return Ok(FamilyKind::Canonical(c));
    }
    Err(anyhow!("unknown family '{s}'; expected a catalog id such as s12-d2, a form such as cubic-nf7, or all"))
}
