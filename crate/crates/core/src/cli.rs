//! Command-line front end. Every verb prints one document on standard
//! output (JSON, or the edge-list text for `gen`) and maps its outcome to
//! an exit status.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::chordal::{
    chordless_cycle, maximal_cliques, maximum_cardinality_search, perfect_clique_ordering,
};
use crate::error::{Error, Result};
use crate::graph::{generate, io, FamilySpec, Graph, DEFAULT_VERTEX_CAP};
use crate::hset::hset_with_cap;
use crate::matrix::{PowerKind, PowerMap};
use crate::verifier::{
    cross_check_with, default_grid, falsify, probe_kinds, replay, SampleConfig, SearchLimits,
    Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "critexp", version, about = "Entrywise powers that preserve positivity on sparsity cones")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

/// Exactly one of `--family` or `--graph`.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Inline family, e.g. `band:8,3`, `cycle:5`, `split:4,2,3`.
    #[arg(long)]
    pub family: Option<String>,
    /// Edge-list file (`p <n> <m>` header, `e <i> <j>` lines, 1-based).
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph> {
        match (&self.family, &self.graph) {
            (Some(spec), None) => generate(&spec.parse::<FamilySpec>()?),
            (None, Some(path)) => io::read_edge_list(path),
            _ => Err(Error::Argument("give exactly one of --family or --graph".into())),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Vertex cap for exponential-time searches.
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    pub cap: usize,
}

#[derive(Debug, Clone, Args)]
pub struct Sampling {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Absolute PSD tolerance; default is 1e-9 times the largest entry (at least 1).
    #[arg(long)]
    pub tol: Option<f64>,
}

impl Sampling {
    fn config(&self) -> SampleConfig {
        SampleConfig {
            seed: self.seed,
            trials: self.trials,
            ..SampleConfig::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Print a family graph in the edge-list format.
    Gen {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        common: Common,
    },
    /// Chordality test with a perfect elimination ordering or a chordless cycle.
    Chordal {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        common: Common,
    },
    /// Maximal cliques, and the perfect ordering with separators for chordal graphs.
    Cliques {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        common: Common,
    },
    /// Critical exponents (with the full exponent-set report).
    Ce {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        common: Common,
    },
    /// Exponent sets, exact or bounded, for all three power families.
    Hset {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        common: Common,
    },
    /// Search for violations over a grid of exponents and compare with the closed form.
    Probe {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sampling: Sampling,
        /// Comma-separated exponents; default is a 0.25 grid on (0, n-2].
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
        /// Restrict to one family: plain, psi or phi.
        #[arg(long)]
        kind: Option<PowerKind>,
    },
    /// Look for a matrix of the cone whose power is not PSD.
    Falsify {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = PowerKind::Plain)]
        kind: PowerKind,
    },
    /// Check the closed-form sets against the verifier.
    Crosscheck {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Re-check a counterexample saved by `falsify`.
    Replay {
        /// Verdict JSON file.
        file: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

/// What a verb produced.
#[derive(Debug)]
pub struct Outcome {
    pub document: String,
    pub status: i32,
    pub output: Option<PathBuf>,
}

/// Exit status for an error.
pub fn error_status(e: &Error) -> i32 {
    match e {
        Error::Capacity { .. } => EXIT_CAPACITY,
        _ => EXIT_USAGE,
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

fn outcome(document: String, status: i32, common: &Common) -> Outcome {
    Outcome {
        document,
        status,
        output: common.output.clone(),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.verb {
        Verb::Gen { source, common } => Ok(outcome(io::write_edge_list(&source.load()?), EXIT_OK, common)),
        Verb::Chordal { source, common } => {
            let g = source.load()?;
            let mcs = maximum_cardinality_search(&g);
            let doc = if mcs.chordal {
                let peo: Vec<usize> = mcs.order.iter().rev().map(|v| v + 1).collect();
                json!({ "chordal": true, "elimination_order": peo })
            } else {
                let cycle = chordless_cycle(&g).expect("non-chordal graph has a chordless cycle");
                json!({ "chordal": false, "chordless_cycle": one_based(&cycle) })
            };
            Ok(outcome(json(&doc)?, EXIT_OK, common))
        }
        Verb::Cliques { source, common } => {
            let g = source.load()?;
            let cliques: Vec<Vec<usize>> = maximal_cliques(&g, common.cap)?.iter().map(|c| one_based(c)).collect();
            let mut doc = json!({ "cliques": cliques });
            if let Ok(ord) = perfect_clique_ordering(&g) {
                let lift = |sets: &[Vec<usize>]| -> Vec<Vec<usize>> { sets.iter().map(|c| one_based(c)).collect() };
                doc["perfect_ordering"] = json!({
                    "cliques": lift(&ord.cliques),
                    "separators": lift(&ord.separators),
                    "max_separator": ord.max_separator(),
                });
            }
            Ok(outcome(json(&doc)?, EXIT_OK, common))
        }
        Verb::Ce { source, common } | Verb::Hset { source, common } => {
            let rep = hset_with_cap(&source.load()?, common.cap)?;
            Ok(outcome(rep.to_json()?, EXIT_OK, common))
        }
        Verb::Probe {
            source,
            common,
            sampling,
            grid,
            kind,
        } => {
            let g = source.load()?;
            let limits = SearchLimits {
                cap: common.cap,
                ..SearchLimits::default()
            };
            let alphas = match grid {
                Some(a) => a.clone(),
                None => default_grid(&g, hset_with_cap(&g, common.cap).ok().as_ref()),
            };
            if alphas.iter().any(|a| !(a.is_finite() && *a >= 0.0)) {
                return Err(Error::Argument("grid exponents must be finite and nonnegative".into()));
            }
            let kinds: Vec<PowerKind> = kind.map_or(PowerKind::ALL.to_vec(), |k| vec![k]);
            let rep = probe_kinds(&g, &alphas, &kinds, &sampling.config(), &limits)?;
            let status = if rep.disagreements > 0 { EXIT_FOUND } else { EXIT_OK };
            Ok(outcome(rep.to_json()?, status, common))
        }
        Verb::Falsify {
            source,
            common,
            sampling,
            alpha,
            kind,
        } => {
            if !(alpha.is_finite() && *alpha >= 0.0) {
                return Err(Error::Argument("alpha must be finite and nonnegative".into()));
            }
            let limits = SearchLimits {
                cap: common.cap,
                ..SearchLimits::default()
            };
            let v = falsify(
                &source.load()?,
                PowerMap::new(*kind, *alpha),
                &sampling.config(),
                sampling.tol,
                &limits,
            )?;
            let status = if v.preserved { EXIT_OK } else { EXIT_FOUND };
            Ok(outcome(v.to_json()?, status, common))
        }
        Verb::Crosscheck {
            source,
            common,
            sampling,
        } => {
            let limits = SearchLimits {
                cap: common.cap,
                ..SearchLimits::default()
            };
            let rep = cross_check_with(&source.load()?, &sampling.config(), &limits)?;
            let status = if rep.consistent { EXIT_OK } else { EXIT_FOUND };
            Ok(outcome(rep.to_json()?, status, common))
        }
        Verb::Replay { file, output } => {
            let v = Verdict::from_json(&std::fs::read_to_string(file)?)?;
            let r = replay(&v)?;
            let status = if r.confirmed { EXIT_FOUND } else { EXIT_OK };
            Ok(Outcome {
                document: json(&r)?,
                status,
                output: output.clone(),
            })
        }
    }
}

/// Runs the verb and writes its document; returns the exit status.
pub fn main_with(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(out) => {
            let mut doc = out.document;
            if !doc.ends_with('\n') {
                doc.push('\n');
            }
            match &out.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, doc) {
                        eprintln!("error: {e}");
                        return EXIT_USAGE;
                    }
                }
                None => print!("{doc}"),
            }
            out.status
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_status(&e)
        }
    }
}
