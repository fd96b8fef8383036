//! Command-line front end for `whc`.
//!
//! Exit status: 0 on success, 1 on usage, input or runtime errors, 2 when a
//! soundness violation is found (the counterexample is part of the report).

pub mod format;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use whc_core::conditions::{condition_report, CheckError, DEFAULT_BAND};
use whc_core::oracle::{is_weakly_hc_with, OracleOptions};
use whc_core::spectral::{spectral_bounds_report, spectral_summary, DEFAULT_TOL};
use whc_core::{
    b_closure, verify_implication, BipartiteGraph, CheckerGroup, FamilySpec, SpectralConfig,
    SweepConfig, SweepMode,
};

use report::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "whc", version, about = "Check sufficient conditions for weakly Hamilton-connected balanced bipartite graphs")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Absolute tolerance for the eigenvalue solver.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Relative decision band for spectral comparisons.
    #[arg(long, global = true, default_value_t = DEFAULT_BAND)]
    pub band: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the condition checkers on a graph file.
    Check {
        file: PathBuf,
        /// Also decide weak Hamilton-connectedness by brute force.
        #[arg(long)]
        oracle: bool,
        /// Checker group: pair_sum, gamma, degree_count, closure_complete,
        /// degree_sequence, edge_count_t, edge_count_k, spectral,
        /// spectral_closed, sandwich or all.
        #[arg(long, default_value = "all")]
        condition: CheckerGroup,
    },
    /// Write a family member as a graph file.
    Construct {
        #[arg(value_enum)]
        family: Family,
        /// Part size (for K, the second part).
        #[arg(long)]
        n: usize,
        /// Block parameter (Q, R, S).
        #[arg(long)]
        t: Option<usize>,
        /// First part size for K (defaults to n).
        #[arg(long)]
        m: Option<usize>,
        /// Output file (standard output if omitted).
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Decide weak Hamilton-connectedness by brute force.
    Oracle {
        file: PathBuf,
        /// List one Hamilton path per cross pair.
        #[arg(long)]
        witnesses: bool,
    },
    /// Compute the n+2 degree-sum closure.
    Closure { file: PathBuf },
    /// Spectral radii and the edge/degree bounds on them.
    Spectrum { file: PathBuf },
    /// Sweep graphs and confirm every certificate with the oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["exhaustive", "random"])))]
pub struct VerifyArgs {
    /// Checker group (see `check --help`).
    #[arg(long)]
    pub condition: CheckerGroup,
    #[arg(long)]
    pub n: usize,
    /// Every graph on n + n vertices (n <= 4 unless --allow-large).
    #[arg(long)]
    pub exhaustive: bool,
    /// Allow exhaustive sweeps beyond n = 4 (n = 5 takes hours).
    #[arg(long, requires = "exhaustive")]
    pub allow_large: bool,
    /// Keep one graph per isomorphism class (exhaustive, n <= 5).
    #[arg(long, requires = "exhaustive")]
    pub dedup: bool,
    /// Number of random graphs to examine.
    #[arg(long, value_name = "S")]
    pub random: Option<usize>,
    /// Seed for random mode.
    #[arg(long, value_name = "V", default_value_t = 0, requires = "random")]
    pub seed: u64,
    /// Skip graphs with smaller minimum degree.
    #[arg(long, default_value_t = 0)]
    pub min_degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "Q", alias = "q")]
    Q,
    #[value(name = "R", alias = "r")]
    R,
    #[value(name = "S", alias = "s")]
    S,
}

fn read_graph(path: &Path) -> Result<BipartiteGraph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    format::parse_graph_file(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn family_spec(family: Family, n: usize, t: Option<usize>, m: Option<usize>) -> Result<FamilySpec, String> {
    let need_t = || t.ok_or_else(|| format!("family {family:?} needs --t"));
    Ok(match family {
        Family::K => {
            if t.is_some() {
                return Err("family K takes --n and optionally --m, not --t".into());
            }
            FamilySpec::Complete { m: m.unwrap_or(n), n }
        }
        Family::Q => FamilySpec::Q { n, t: need_t()? },
        Family::R => FamilySpec::R { n, t: need_t()? },
        Family::S => FamilySpec::S { n, t: need_t()? },
    })
    .and_then(|spec| match (family, m) {
        (Family::K, _) | (_, None) => Ok(spec),
        _ => Err("--m only applies to family K".into()),
    })
}

/// Outcome of one command: the document for standard output, plus an optional
/// message for standard error and the exit status.
struct Outcome {
    stdout: String,
    stderr: Option<String>,
    code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: None, code: EXIT_OK }
    }
}

fn execute(cli: &Cli) -> Result<Outcome, String> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(format!("--tol must be positive, got {}", cli.tol));
    }
    if !(cli.band >= 0.0 && cli.band.is_finite()) {
        return Err(format!("--band must be non-negative, got {}", cli.band));
    }
    let spectral = SpectralConfig { tol: cli.tol, band: cli.band };
    let structured = cli.format == Format::Structured;
    match &cli.command {
        Command::Check { file, oracle, condition } => {
            let g = read_graph(file)?;
            let render = |r| if structured { report::check_structured(r) } else { report::check_text(r) };
            match condition_report(&g, *condition, *oracle, &spectral) {
                Ok(r) => Ok(Outcome::ok(render(&r))),
                Err(CheckError::SoundnessViolation { ids, report }) => {
                    let ids: Vec<&str> = ids.iter().map(|i| i.as_str()).collect();
                    Ok(Outcome {
                        stdout: render(&report),
                        stderr: Some(format!(
                            "soundness violation: {} certified a graph the oracle rejects\n{}",
                            ids.join(", "),
                            format::write_graph_file(&g)
                        )),
                        code: EXIT_VIOLATION,
                    })
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Construct { family, n, t, m, output } => {
            let spec = family_spec(*family, *n, *t, *m)?;
            let g = spec.build().map_err(|e| e.to_string())?;
            let text = format!("c {spec}\n{}", format::write_graph_file(&g));
            match output {
                Some(path) => {
                    std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Oracle { file, witnesses } => {
            let g = read_graph(file)?;
            let opts = OracleOptions { witnesses: *witnesses, ..Default::default() };
            let r = is_weakly_hc_with(&g, opts).map_err(|e| e.to_string())?;
            let n = g.x_count();
            Ok(Outcome::ok(if structured { report::oracle_structured(n, &r) } else { report::oracle_text(n, &r) }))
        }
        Command::Closure { file } => {
            let g = read_graph(file)?;
            let trace = b_closure(&g).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(if structured { report::closure_structured(&trace) } else { report::closure_text(&trace) }))
        }
        Command::Spectrum { file } => {
            let g = read_graph(file)?;
            let summary = spectral_summary(&g, cli.tol).map_err(|e| e.to_string())?;
            let bounds = spectral_bounds_report(&g, cli.tol).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(if structured {
                report::spectrum_structured(&summary, &bounds)
            } else {
                report::spectrum_text(&summary, &bounds)
            }))
        }
        Command::Verify(args) => {
            let mode = match args.random {
                Some(samples) => SweepMode::random(samples, args.seed),
                None => SweepMode::Exhaustive { allow_large: args.allow_large },
            };
            let mut cfg = SweepConfig::new(args.condition, args.n, mode).min_degree(args.min_degree).dedup(args.dedup);
            cfg.spectral = spectral;
            let r = verify_implication(&cfg).map_err(|e| e.to_string())?;
            let stdout = if structured { report::sweep_structured(&r) } else { report::sweep_text(&r) };
            if r.passed() {
                Ok(Outcome::ok(stdout))
            } else {
                Ok(Outcome { stdout, stderr: Some("soundness check failed; counterexamples are listed in the report\n".into()), code: EXIT_VIOLATION })
            }
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.stdout.as_bytes());
            if let Some(msg) = outcome.stderr {
                let _ = err.write_all(msg.as_bytes());
            }
            outcome.code
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}
