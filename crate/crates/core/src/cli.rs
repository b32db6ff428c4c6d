//! The `hpq` command line.
//!
//! Exit codes: 0 on success, 1 when the input is well formed but rejected by
//! the analysis (not a simplex, capacity exceeded, ...), 2 on I/O, format or
//! usage errors.

use crate::census;
use crate::cohomology::GaugeWitness;
use crate::estimate::{self, Sampler, VolumeEstimate};
use crate::forms::Signature;
use crate::graph::GraphJson;
use crate::named::NamedExample;
use crate::rational::{format as fmt_rational, JsonRational};
use crate::simplex::{self, MarkedPointSet, MarkedSimplex, SimplexJson};
use crate::volume::{self, VerdictJson};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::io::{self, Read, Write};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "hpq", version, about = "Simplices of pseudo-hyperbolic space: Gram graphs, cohomology and volume finiteness")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Skip Monte Carlo estimates.
    #[arg(long, global = true)]
    pub exact_only: bool,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SamplerArg {
    Radial,
    Box,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(long, default_value_t = 8.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0xC0FFEE)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graph, signature, positive lift and volume verdict of a simplex (`-` reads stdin).
    Analyze {
        input: PathBuf,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Truncated-volume Monte Carlo estimate.
    Estimate {
        input: PathBuf,
        #[command(flatten)]
        mc: McArgs,
        /// Estimate the region Δ instead of the hull.
        #[arg(long)]
        delta: bool,
        #[arg(long, value_enum, default_value = "radial")]
        sampler: SamplerArg,
    },
    /// Marked isometry between two simplices.
    Isometric {
        a: PathBuf,
        b: PathBuf,
        /// Also search over relabelings (n <= 7).
        #[arg(long)]
        unmarked: bool,
    },
    /// Emit a named simplex: ideal-hp:P, crown:P, pentagon, h22-nonideal, nonideal-infinite:P:Q, ideal-infinite:P:Q.
    Example { name: String },
    /// Census of labeled graphs on n vertices, one JSON row per line.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Ideal H^{2,2} census over loopless graphs on 5 vertices.
    H22Census,
    /// Classes of H^1(C_n) and their signatures.
    Cycles {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Input accepted but rejected by the analysis.
    Rejected(String),
    /// I/O, parse or usage problem.
    Input(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Rejected(_) => 1,
            CliError::Input(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Rejected(m) | CliError::Input(m) => m,
        }
    }
}

fn rejected(e: impl std::fmt::Display) -> CliError {
    CliError::Rejected(e.to_string())
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let mut text = String::new();
    let result = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut text)).map(|_| ())
    };
    result.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn load(path: &PathBuf) -> Result<(SimplexJson, MarkedSimplex), CliError> {
    let text = read_input(path)?;
    let j: SimplexJson =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let s = MarkedSimplex::with_signature(j.gram.clone(), j.p, j.q).map_err(rejected)?;
    Ok((j, s))
}

fn sig_pair(s: &Signature) -> [usize; 2] {
    [s.pos, s.neg]
}

fn emit(out: &mut (dyn Write + Send), v: &impl Serialize) -> Result<(), CliError> {
    let line = serde_json::to_string(v).map_err(|e| CliError::Input(e.to_string()))?;
    writeln!(out, "{line}").map_err(|e| CliError::Input(e.to_string()))
}

fn text(out: &mut (dyn Write + Send), s: impl AsRef<str>) -> Result<(), CliError> {
    writeln!(out, "{}", s.as_ref()).map_err(|e| CliError::Input(e.to_string()))
}

fn one_based(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(|x| (x + 1).to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn witness_json(w: &GaugeWitness) -> Value {
    json!({
        "coefficient": w.coefficient.iter().map(|c| JsonRational(c.clone())).collect::<Vec<_>>(),
        "exponent": w.exponent,
        "component": w.component.iter().map(|c| c + 1).collect::<Vec<_>>(),
        "t_squared": w.t_squared.iter().map(|t| JsonRational(t.clone())).collect::<Vec<_>>(),
    })
}

fn analyze(cli: &Cli, input: &PathBuf, mc: &McArgs, out: &mut (dyn Write + Send)) -> Result<(), CliError> {
    let (j, s) = load(input)?;
    let lift = simplex::find_positive_lift(&MarkedPointSet::from_gram(j.gram.clone())).map_err(rejected)?;
    let graph = s.graph();
    let verdict = volume::decide_finiteness(&s).map_err(rejected)?;
    let hulls = simplex::convex_hull_count(s.points()).map_err(rejected)?;
    let estimate = if cli.exact_only {
        None
    } else {
        Some(estimate::mc_volume_estimate(&s, mc.radius, mc.samples, mc.seed).map_err(rejected)?)
    };
    if cli.json {
        return emit(
            out,
            &json!({
                "n": s.n(),
                "p": s.p(),
                "q": s.q(),
                "signature": sig_pair(&s.gram().signature()),
                "graph": GraphJson::from(&graph),
                "ideal": s.is_ideal(),
                "positive_lift": lift,
                "convex_hulls": hulls,
                "verdict": VerdictJson::from(&verdict),
                "estimate": estimate,
            }),
        );
    }
    let edges: Vec<String> = graph.edges().map(|e| e.to_string()).collect();
    text(out, format!("simplex of H^{{{},{}}} with {} vertices", s.p(), s.q(), s.n()))?;
    text(out, format!("signature: {}", s.gram().signature()))?;
    text(out, format!("graph: {}", edges.join(" ")))?;
    text(out, format!("ideal: {}", s.is_ideal()))?;
    text(out, format!("positive lift signs: {lift:?}"))?;
    text(out, format!("convex hulls: {hulls}"))?;
    match (&verdict.stable, &verdict.weights) {
        (Some(c), Some(w)) => {
            text(out, "volume: infinite")?;
            text(out, format!("  stable set I = {}, boundary = {}", one_based(&c.inner), one_based(&c.boundary)))?;
            text(out, format!("  weights = {:?}", w.weights))?;
        }
        _ => text(out, "volume: finite")?,
    }
    if let Some(e) = estimate {
        text(out, format!("truncated volume at R = {}: {:.6} ± {:.6} ({} samples)", e.radius, e.estimate, e.std_error, e.samples))?;
    }
    Ok(())
}

fn print_estimate(cli: &Cli, e: &VolumeEstimate, out: &mut (dyn Write + Send)) -> Result<(), CliError> {
    if cli.json {
        emit(out, e)
    } else {
        text(out, format!("R = {}: {:.6} ± {:.6} ({} samples, seed {})", e.radius, e.estimate, e.std_error, e.samples, e.seed))
    }
}

fn run_command(cli: &Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<(), CliError> {
    match &cli.command {
        Command::Analyze { input, mc } => analyze(cli, input, mc, out),
        Command::Estimate { input, mc, delta, sampler } => {
            let (_, s) = load(input)?;
            if cli.exact_only {
                return Err(CliError::Input("estimate is a Monte Carlo command; drop --exact-only".into()));
            }
            let sampler = match sampler {
                SamplerArg::Radial => Sampler::Radial,
                SamplerArg::Box => Sampler::Box,
            };
            let e = if *delta {
                estimate::delta_graph_estimate(&s.graph(), mc.radius, mc.samples, mc.seed, sampler)
            } else {
                estimate::mc_volume_estimate_with(&s, mc.radius, mc.samples, mc.seed, sampler)
            }
            .map_err(rejected)?;
            print_estimate(cli, &e, out)
        }
        Command::Isometric { a, b, unmarked } => {
            let (_, sa) = load(a)?;
            let (_, sb) = load(b)?;
            let (relabeling, witness) = if *unmarked {
                match census::unmarked_isometric(&sa, &sb).map_err(rejected)? {
                    Some((iota, w)) => (Some(iota), Some(w)),
                    None => (None, None),
                }
            } else {
                (None, simplex::isometric(&sa, &sb))
            };
            if cli.json {
                emit(
                    out,
                    &json!({
                        "isometric": witness.is_some(),
                        "relabeling": relabeling.map(|r| r.iter().map(|v| v + 1).collect::<Vec<_>>()),
                        "witness": witness.as_ref().map(witness_json),
                    }),
                )
            } else {
                match (&witness, &relabeling) {
                    (Some(_), Some(r)) => text(out, format!("isometric via relabeling {}", one_based(r))),
                    (Some(w), None) => {
                        let g: Option<Vec<String>> = w.rational_gauge().map(|g| g.iter().map(fmt_rational).collect());
                        match g {
                            Some(g) => text(out, format!("isometric, gauge g = ({})", g.join(", "))),
                            None => text(out, "isometric (gauge involves an irrational square root)"),
                        }
                    }
                    _ => text(out, "not isometric"),
                }
            }
        }
        Command::Example { name } => {
            let named: NamedExample = name.parse().map_err(|e| CliError::Input(format!("{e}")))?;
            let s = named.build().map_err(rejected)?;
            if cli.json {
                emit(out, &SimplexJson::from(&s))
            } else {
                let line = serde_json::to_string_pretty(&SimplexJson::from(&s)).map_err(|e| CliError::Input(e.to_string()))?;
                text(out, line)
            }
        }
        Command::Census { n, seed } => {
            let rows = census::census(*n, *seed).map_err(rejected)?;
            for row in &rows {
                emit(out, row)?;
            }
            let infinite = rows.iter().filter(|r| !r.verdict.finite).count();
            let consistent = rows.iter().filter(|r| census::row_consistent(r)).count();
            writeln!(err, "{} graphs on {n} vertices: {infinite} with infinite verdict, {consistent} parity-consistent", rows.len())
                .map_err(|e| CliError::Input(e.to_string()))?;
            Ok(())
        }
        Command::H22Census => {
            let (report, _) = census::h22_ideal_census();
            if cli.json {
                emit(out, &report)?;
            } else {
                text(out, format!("{} loopless graphs on 5 vertices", report.graphs))?;
                text(out, format!("{} admit an even fixed-point-free permutation along edges", report.passing_filter))?;
                text(out, format!("{} of those have all stable sets with |∂I| > |I|", report.strict_boundary))?;
                text(out, format!("{} counterexamples (filter passed, infinite verdict)", report.counterexamples.len()))?;
            }
            if report.counterexamples.is_empty() {
                Ok(())
            } else {
                Err(CliError::Rejected("census found counterexamples".into()))
            }
        }
        Command::Cycles { n } => {
            if *n == 0 {
                return Err(CliError::Input("--n must be positive".into()));
            }
            let table = census::cycle_class_table(*n);
            if cli.json {
                emit(out, &table)
            } else {
                text(out, format!("C_{n}: dim H^1 = {}", table.h1_dimension))?;
                for s in &table.strata {
                    let check = if s.verified { "verified" } else { "MISMATCH" };
                    text(out, format!("  {:?} class: signature {} ({check})", s.kind, s.signature))?;
                }
                Ok(())
            }
        }
    }
}

/// Runs the CLI with explicit arguments and streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| run_command(&cli, out, err)),
            Err(e) => Err(CliError::Input(e.to_string())),
        },
        None => run_command(&cli, out, err),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}
