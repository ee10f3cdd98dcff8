//! `netinfl`: centrality and influence indices for weighted directed graphs.

mod commands;
mod output;
mod scores_file;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

/// Malformed or inconsistent input data (exit code 3).
#[derive(Debug)]
pub struct DataError(pub String);

impl std::fmt::Display for DataError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for DataError {}

/// Bad flag values that clap cannot check on its own (exit code 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser, Debug)]
#[command(
    name = "netinfl",
    version,
    about = "Centrality and influence indices for weighted directed graphs"
)]
pub struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, env = "NETINFL_THREADS", global = true)]
    threads: Option<usize>,

    /// Replay a saved run manifest instead of giving a subcommand.
    #[arg(long, value_name = "FILE")]
    manifest: Option<PathBuf>,

    /// Record this invocation as a manifest.
    #[arg(long, value_name = "FILE", global = true)]
    save_manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Graph file (CSV edge list, JSON).
    #[arg(short, long)]
    pub input: PathBuf,
    /// Input format; guessed from the extension when omitted.
    #[arg(long, value_name = "csv|json")]
    pub format: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Full-precision JSON instead of CSV.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct QuotaArg {
    /// `frac:<share>`, `abs:<value>` or `@config.json` (with per-node overrides).
    #[arg(short, long, default_value = "frac:0.5")]
    pub quota: String,
}

#[derive(Args, Debug, Clone)]
pub struct LimitArgs {
    /// Largest in-neighbourhood whose coalitions are enumerated.
    #[arg(long, default_value_t = netinfl_core::coalitions::DEFAULT_ENUMERATION_CAP)]
    pub max_in_degree: usize,
    /// Largest coalition considered.
    #[arg(long)]
    pub max_group_size: Option<usize>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Classical centrality measures.
    Centrality {
        #[command(flatten)]
        input: Input,
        /// in-degree, out-degree, degree, diff-degree, weighted-in-degree,
        /// weighted-out-degree, weighted-degree, weighted-diff-degree,
        /// closeness, betweenness, relative-betweenness, flow-betweenness,
        /// eigenvector, katz, bonacich, pagerank, myerson
        #[arg(short, long)]
        measure: String,
        /// Comma-separated `name=value` pairs, e.g. `alpha=0.1,beta=1`.
        #[arg(long)]
        params: Option<String>,
        /// Edge length for closeness and betweenness.
        #[arg(
            long,
            default_value = "inverse-weight",
            value_name = "hop|inverse-weight"
        )]
        distance: String,
        #[command(flatten)]
        output: Output,
    },
    /// Short-range interaction centrality.
    Sric {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        quota: QuotaArg,
        /// Node attribute weighting the targets (uniform when omitted).
        #[arg(long)]
        target_weights: Option<String>,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Long-range interaction centrality.
    Lric {
        #[command(subcommand)]
        command: LricCommand,
    },
    /// Critical groups, pivotal members and minimal groups per node (JSON).
    Groups {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        quota: QuotaArg,
        /// Only this node label.
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        limits: LimitArgs,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rank correlation of two `node,score` files.
    Compare {
        #[arg(long, default_value = "kendall", value_name = "kendall|gamma")]
        coef: String,
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Coefficient matrix over every `node,score` file in a directory.
    CompareAll {
        dir: PathBuf,
        #[arg(long, default_value = "kendall", value_name = "kendall|gamma")]
        coef: String,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert a graph to CSV, JSON or DOT.
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "csv|json|dot")]
        to: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum LricCommand {
    /// Path-based variants.
    Path {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        quota: QuotaArg,
        /// SumPaths, MaxPath, MaxMin, MultT or MaxT.
        #[arg(long)]
        variant: String,
        /// Longest path in edges, or `unbounded`.
        #[arg(long, default_value = "3")]
        max_len: String,
        /// Grade boundaries for MultT/MaxT.
        #[arg(long, default_value = "0.2,0.5,0.7")]
        grades: String,
        /// Maximum number of simple paths enumerated per source.
        #[arg(long, default_value_t = netinfl_core::lric::paths::DEFAULT_PATH_CAP)]
        path_cap: usize,
        /// Node weights for the vector: out-share, uniform or attr:<name>.
        #[arg(long, default_value = "out-share")]
        weights: String,
        /// Print the node-to-node matrix instead of the vector.
        #[arg(long)]
        emit_matrix: bool,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Threshold-cascade simulation.
    Sim {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        quota: QuotaArg,
        /// Cascade rounds, or `unbounded`.
        #[arg(long, default_value = "unbounded")]
        max_steps: String,
        /// Enumerate every seed set (the default without `--samples`).
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Monte-Carlo seed sets.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        /// Largest seed set.
        #[arg(long)]
        max_seed_size: Option<usize>,
        /// Largest graph enumerated exhaustively.
        #[arg(long, default_value_t = netinfl_core::lric::sim::EXHAUSTIVE_CAP)]
        exhaustive_cap: usize,
        /// Node weights for the vector: out-share, uniform or attr:<name>.
        #[arg(long, default_value = "out-share")]
        weights: String,
        /// Print the node-to-node matrix instead of the vector.
        #[arg(long)]
        emit_matrix: bool,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        output: Output,
    },
}

/// Everything needed to reproduce a run.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub argv: Vec<String>,
    pub command: String,
    pub input: Option<PathBuf>,
    pub quota: Option<String>,
    pub measure: Option<String>,
    pub params: Option<String>,
    pub output: Option<PathBuf>,
    pub rng_seed: Option<u64>,
    pub threads: Option<usize>,
}

impl RunManifest {
    fn new(argv: Vec<String>, cli: &Cli, command: &Command) -> Self {
        let mut m = RunManifest {
            argv,
            command: String::new(),
            input: None,
            quota: None,
            measure: None,
            params: None,
            output: None,
            rng_seed: None,
            threads: cli.threads,
        };
        match command {
            Command::Centrality {
                input,
                measure,
                params,
                output,
                ..
            } => {
                m.command = "centrality".into();
                m.input = Some(input.input.clone());
                m.measure = Some(measure.clone());
                m.params = params.clone();
                m.output = output.output.clone();
            }
            Command::Sric {
                input,
                quota,
                output,
                ..
            } => {
                m.command = "sric".into();
                m.input = Some(input.input.clone());
                m.quota = Some(quota.quota.clone());
                m.output = output.output.clone();
            }
            Command::Lric {
                command:
                    LricCommand::Path {
                        input,
                        quota,
                        variant,
                        max_len,
                        output,
                        ..
                    },
            } => {
                m.command = "lric path".into();
                m.input = Some(input.input.clone());
                m.quota = Some(quota.quota.clone());
                m.measure = Some(variant.clone());
                m.params = Some(format!("max_len={max_len}"));
                m.output = output.output.clone();
            }
            Command::Lric {
                command:
                    LricCommand::Sim {
                        input,
                        quota,
                        max_steps,
                        rng_seed,
                        samples,
                        output,
                        ..
                    },
            } => {
                m.command = "lric sim".into();
                m.input = Some(input.input.clone());
                m.quota = Some(quota.quota.clone());
                m.params = Some(match samples {
                    Some(k) => format!("max_steps={max_steps},samples={k}"),
                    None => format!("max_steps={max_steps}"),
                });
                m.rng_seed = Some(*rng_seed);
                m.output = output.output.clone();
            }
            Command::Groups {
                input,
                quota,
                output,
                ..
            } => {
                m.command = "groups".into();
                m.input = Some(input.input.clone());
                m.quota = Some(quota.quota.clone());
                m.output = output.clone();
            }
            Command::Compare { coef, output, .. } => {
                m.command = "compare".into();
                m.measure = Some(coef.clone());
                m.output = output.output.clone();
            }
            Command::CompareAll { dir, coef, output } => {
                m.command = "compare-all".into();
                m.input = Some(dir.clone());
                m.measure = Some(coef.clone());
                m.output = output.clone();
            }
            Command::Export { input, output, .. } => {
                m.command = "export".into();
                m.input = Some(input.input.clone());
                m.output = output.clone();
            }
        }
        m
    }
}

/// Drops `--save-manifest`/`--manifest` (and their values) from an argument list.
fn strip_manifest_flags(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in argv {
        if skip {
            skip = false;
            continue;
        }
        if a == "--save-manifest" || a == "--manifest" {
            skip = true;
        } else if !(a.starts_with("--save-manifest=") || a.starts_with("--manifest=")) {
            out.push(a.clone());
        }
    }
    out
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use netinfl_core::Error as E;
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::InvalidArgument(_) => 2,
                E::Parse { .. }
                | E::InvalidGraph(_)
                | E::Io { .. }
                | E::Json(_)
                | E::Undefined(_) => 3,
                E::Capacity(_) => 4,
                E::NoConvergence { .. } | E::Numerical(_) => 5,
            };
        }
        if cause.is::<UsageError>() {
            return 2;
        }
        if cause.is::<DataError>()
            || cause.is::<std::io::Error>()
            || cause.is::<serde_json::Error>()
        {
            return 3;
        }
    }
    3
}

fn load_manifest(path: &PathBuf) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read manifest {}", path.display()))?;
    let m: RunManifest =
        serde_json::from_str(&text).map_err(|e| DataError(format!("{}: {e}", path.display())))?;
    if m.argv.is_empty() {
        bail!(DataError(format!(
            "{}: empty argument list",
            path.display()
        )));
    }
    Ok(m.argv)
}

fn run(argv: Vec<String>) -> Result<()> {
    let mut cli = Cli::try_parse_from(&argv).unwrap_or_else(|e| e.exit());
    let mut argv = argv;
    if let Some(path) = &cli.manifest {
        if cli.command.is_some() {
            bail!(UsageError(
                "--manifest replaces the subcommand; give one or the other".into()
            ));
        }
        let mut replay = load_manifest(path)?;
        // command-line thread count wins over the recorded one
        if let Some(t) = cli.threads {
            replay.push(format!("--threads={t}"));
        }
        let save = cli.save_manifest.clone();
        cli = Cli::try_parse_from(&replay).map_err(|e| UsageError(format!("manifest: {e}")))?;
        if cli.manifest.is_some() || cli.command.is_none() {
            bail!(UsageError("manifest must record a subcommand".into()));
        }
        cli.save_manifest = save;
        argv = replay;
    }
    let Some(command) = cli.command.clone() else {
        bail!(UsageError("no subcommand given (see --help)".into()));
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            bail!(UsageError("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("thread pool")?;
    }
    commands::execute(&command)?;
    if let Some(path) = &cli.save_manifest {
        let manifest = RunManifest::new(strip_manifest_flags(&argv), &cli, &command);
        output::emit(
            Some(path),
            &(serde_json::to_string_pretty(&manifest)? + "\n"),
        )?;
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(std::env::args().collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let mut msg = e.to_string();
            for cause in e.chain().skip(1) {
                let c = cause.to_string();
                if !msg.contains(&c) {
                    msg = format!("{msg}: {c}");
                }
            }
            let msg = msg.replace('\n', " ");
            eprintln!("netinfl: {msg}");
            ExitCode::from(exit_code(&e))
        }
    }
}
