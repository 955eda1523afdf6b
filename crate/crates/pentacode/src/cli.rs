//! Command-line front end: compute logical channels, iterate concatenation,
//! sweep noise parameters, scan basin circles, evaluate metrics, and run
//! the verification suite. Emits CSV or JSON for offline plotting.
//!
//! Every flag can also be supplied through an environment variable with the
//! `PENTACODE_` prefix (e.g. `PENTACODE_TOL` for `--tol`); flags win over
//! the environment. Outputs are deterministic: the same resolved
//! [`RunConfig`] (seed included) produces byte-identical files.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{rotation_bitflip_channel, NoiseParams, ReducedChannel, UnitalBlock};
use crate::code::{derive_alpha_beta, CodeSpec};
use crate::coding_map::{apply_reduced, process_matrix_explicit, process_matrix_oracle};
use crate::dynamics::{iterate, scan_circle, Limit};
use crate::error::Error;
use crate::metrics::{avg_infidelity, diamond_distance, post_correction_metrics};
use crate::verify::{run_all, CheckReport, VerifyConfig};

const CSV_SCHEMA: &str = "pentacode-csv v1";

/// Exit status contract: 0 success, 1 verification failure, 2 usage error.
pub const EXIT_VERIFY_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "pentacode",
    version,
    about = "Exact five-qubit-code analysis: logical channels, concatenation thresholds, error metrics",
    after_help = "Environment: every flag has a PENTACODE_* override, e.g. PENTACODE_TOL, \
                  PENTACODE_SEED, PENTACODE_FORMAT. Flags take precedence."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Compute the logical process matrix of a physical channel.
    Logical {
        #[command(flatten)]
        noise: NoiseArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Also run the symbolic-sum route and report the max discrepancy.
        #[arg(long, env = "PENTACODE_ORACLE")]
        oracle: bool,
    },
    /// Iterate the coding map and report the orbit and its limit.
    Iterate {
        #[command(flatten)]
        noise: NoiseArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        iteration: IterationArgs,
    },
    /// Sweep a (q, ε) grid: physical and logical metrics plus convergence.
    Sweep {
        /// q grid as lo:hi:step.
        #[arg(long = "grid-q", env = "PENTACODE_GRID_Q", value_parser = parse_grid,
              default_value = "0:0.05:0.005")]
        grid_q: GridSpec,
        /// ε grid as lo:hi:step.
        #[arg(long = "grid-eps", env = "PENTACODE_GRID_EPS", value_parser = parse_grid,
              default_value = "0:0.45:0.045")]
        grid_eps: GridSpec,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        iteration: IterationArgs,
    },
    /// Scan circles around the fixed point and report ‖Df‖ extremes.
    Basin {
        /// Circle radii (repeatable or comma-separated).
        #[arg(long, env = "PENTACODE_RADII", num_args = 1.., value_delimiter = ',',
              default_values_t = [0.02, 0.04, 0.06, 0.07, 0.072, 0.073, 0.08])]
        radii: Vec<f64>,
        /// Circle sample count (≥ 360).
        #[arg(long, env = "PENTACODE_SAMPLES", default_value_t = 3600)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Physical and logical error metrics of one channel.
    Metrics {
        #[command(flatten)]
        noise: NoiseArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the full verification suite; nonzero exit on any failure.
    Verify {
        /// Reduced sample counts (same tolerances, still deterministic).
        #[arg(long, env = "PENTACODE_QUICK")]
        quick: bool,
        /// Seed for the randomized checks.
        #[arg(long, env = "PENTACODE_SEED", default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct NoiseArgs {
    /// Bit-flip probability of the noise family.
    #[arg(
        long,
        env = "PENTACODE_Q",
        default_value_t = 0.0,
        conflicts_with = "channel"
    )]
    pub q: f64,
    /// Rotation angle (radians) of the noise family.
    #[arg(
        long,
        env = "PENTACODE_EPSILON",
        default_value_t = 0.0,
        conflicts_with = "channel"
    )]
    pub epsilon: f64,
    /// Explicit reduced channel instead: x=..,y=..,z=..,u=..,v=..
    #[arg(long, env = "PENTACODE_CHANNEL", value_parser = parse_channel)]
    pub channel: Option<ReducedChannel>,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output file (stdout when omitted).
    #[arg(long, env = "PENTACODE_OUT")]
    pub out: Option<PathBuf>,
    /// Output format.
    #[arg(long, env = "PENTACODE_FORMAT", value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Args, Debug)]
pub struct IterationArgs {
    /// Convergence tolerance (sup norm).
    #[arg(long, env = "PENTACODE_TOL", default_value_t = 1e-9)]
    pub tol: f64,
    /// Iteration cap.
    #[arg(long = "max-iters", env = "PENTACODE_MAX_ITERS", default_value_t = 60)]
    pub max_iters: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// An inclusive arithmetic progression `lo, lo+step, …, ≤ hi`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut k = 0usize;
        loop {
            let v = self.lo + self.step * k as f64;
            if v > self.hi + self.step * 1e-9 {
                break;
            }
            out.push(v);
            k += 1;
        }
        out
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.step)
    }
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected lo:hi:step, got {s:?}"));
    }
    let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.parse::<f64>()).collect();
    let nums = nums.map_err(|e| format!("bad number in grid {s:?}: {e}"))?;
    let spec = GridSpec {
        lo: nums[0],
        hi: nums[1],
        step: nums[2],
    };
    if !spec.step.is_finite() || spec.step <= 0.0 || spec.hi < spec.lo {
        return Err(format!("grid {s:?} must have step > 0 and hi ≥ lo"));
    }
    Ok(spec)
}

fn parse_channel(s: &str) -> Result<ReducedChannel, String> {
    let mut fields = std::collections::HashMap::new();
    for pair in s.split(',') {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| format!("expected k=v, got {pair:?}"))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|e| format!("bad value for {key:?}: {e}"))?;
        if fields.insert(key.trim().to_string(), value).is_some() {
            return Err(format!("duplicate key {key:?}"));
        }
    }
    let mut get = |k: &str| {
        fields
            .remove(k)
            .ok_or_else(|| format!("missing channel coordinate {k:?}"))
    };
    let c = ReducedChannel::new(get("x")?, get("y")?, get("z")?, get("u")?, get("v")?);
    if let Some(extra) = fields.keys().next() {
        return Err(format!("unknown channel coordinate {extra:?}"));
    }
    Ok(c)
}

impl NoiseArgs {
    fn resolve(&self) -> NoiseInput {
        match self.channel {
            Some(c) => NoiseInput::Channel(c),
            None => NoiseInput::Params(NoiseParams::new(self.q, self.epsilon)),
        }
    }
}

/// The channel under study: family parameters or an explicit pattern.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum NoiseInput {
    Params(NoiseParams),
    Channel(ReducedChannel),
}

impl NoiseInput {
    pub fn physical(&self) -> ReducedChannel {
        match self {
            NoiseInput::Params(p) => rotation_bitflip_channel(*p),
            NoiseInput::Channel(c) => *c,
        }
    }

    fn echo(&self) -> String {
        match self {
            NoiseInput::Params(p) => format!("q={} epsilon={}", p.q, p.epsilon),
            NoiseInput::Channel(c) => {
                format!("channel=x={},y={},z={},u={},v={}", c.x, c.y, c.z, c.u, c.v)
            }
        }
    }
}

/// A fully resolved run: what to compute and how to emit it. Equal configs
/// produce byte-identical output.
#[derive(Debug)]
pub struct RunConfig {
    pub command: CommandSpec,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

#[derive(Debug)]
pub enum CommandSpec {
    Logical {
        noise: NoiseInput,
        oracle: bool,
    },
    Iterate {
        noise: NoiseInput,
        tol: f64,
        max_iters: usize,
    },
    Sweep {
        grid_q: GridSpec,
        grid_eps: GridSpec,
        tol: f64,
        max_iters: usize,
    },
    Basin {
        radii: Vec<f64>,
        samples: usize,
    },
    Metrics {
        noise: NoiseInput,
    },
    Verify {
        quick: bool,
        seed: u64,
    },
}

impl Cli {
    /// Flatten the parsed arguments into a [`RunConfig`], validating
    /// cross-flag invariants clap cannot express.
    pub fn into_config(self) -> Result<RunConfig, Error> {
        let (command, out, format) = match self.command {
            CliCommand::Logical {
                noise,
                output,
                oracle,
            } => (
                CommandSpec::Logical {
                    noise: noise.resolve(),
                    oracle,
                },
                output.out,
                output.format,
            ),
            CliCommand::Iterate {
                noise,
                output,
                iteration,
            } => {
                validate_iteration(&iteration)?;
                (
                    CommandSpec::Iterate {
                        noise: noise.resolve(),
                        tol: iteration.tol,
                        max_iters: iteration.max_iters,
                    },
                    output.out,
                    output.format,
                )
            }
            CliCommand::Sweep {
                grid_q,
                grid_eps,
                output,
                iteration,
            } => {
                validate_iteration(&iteration)?;
                (
                    CommandSpec::Sweep {
                        grid_q,
                        grid_eps,
                        tol: iteration.tol,
                        max_iters: iteration.max_iters,
                    },
                    output.out,
                    output.format,
                )
            }
            CliCommand::Basin {
                radii,
                samples,
                output,
            } => {
                if radii.is_empty() {
                    return Err(Error::Parse("at least one radius is required".into()));
                }
                if samples < 360 {
                    return Err(Error::Parse(format!(
                        "--samples must be at least 360, got {samples}"
                    )));
                }
                if radii.iter().any(|r| !r.is_finite() || *r < 0.0) {
                    return Err(Error::Parse("radii must be finite and nonnegative".into()));
                }
                (
                    CommandSpec::Basin { radii, samples },
                    output.out,
                    output.format,
                )
            }
            CliCommand::Metrics { noise, output } => (
                CommandSpec::Metrics {
                    noise: noise.resolve(),
                },
                output.out,
                output.format,
            ),
            CliCommand::Verify { quick, seed } => {
                (CommandSpec::Verify { quick, seed }, None, OutputFormat::Csv)
            }
        };
        Ok(RunConfig {
            command,
            out,
            format,
        })
    }
}

fn validate_iteration(args: &IterationArgs) -> Result<(), Error> {
    if !args.tol.is_finite() || args.tol <= 0.0 {
        return Err(Error::Parse(format!(
            "--tol must be positive, got {}",
            args.tol
        )));
    }
    if args.max_iters == 0 {
        return Err(Error::Parse("--max-iters must be at least 1".into()));
    }
    Ok(())
}

/// One row of a sweep dataset.
#[derive(Copy, Clone, Debug, Serialize)]
pub struct SweepRow {
    pub q: f64,
    pub epsilon: f64,
    pub r_physical: f64,
    pub d_physical: f64,
    pub r_logical: f64,
    pub d_logical: f64,
    pub converged: bool,
}

/// Render the output of a non-verify command as bytes (UTF-8, LF endings).
pub fn render(cfg: &RunConfig) -> Result<Vec<u8>, Error> {
    let mut out = String::new();
    match &cfg.command {
        CommandSpec::Logical { noise, oracle } => {
            render_logical(&mut out, cfg.format, noise, *oracle)?;
        }
        CommandSpec::Iterate {
            noise,
            tol,
            max_iters,
        } => {
            render_iterate(&mut out, cfg.format, noise, *tol, *max_iters);
        }
        CommandSpec::Sweep {
            grid_q,
            grid_eps,
            tol,
            max_iters,
        } => {
            render_sweep(&mut out, cfg.format, grid_q, grid_eps, *tol, *max_iters)?;
        }
        CommandSpec::Basin { radii, samples } => {
            render_basin(&mut out, cfg.format, radii, *samples);
        }
        CommandSpec::Metrics { noise } => {
            render_metrics(&mut out, cfg.format, noise)?;
        }
        CommandSpec::Verify { .. } => {
            return Err(Error::Parse("verify renders its own report".into()));
        }
    }
    Ok(out.into_bytes())
}

fn render_logical(
    out: &mut String,
    format: OutputFormat,
    noise: &NoiseInput,
    oracle: bool,
) -> Result<(), Error> {
    let physical = noise.physical();
    let logical = process_matrix_explicit(&physical.to_block());
    let discrepancy = if oracle {
        let tables = derive_alpha_beta(&CodeSpec::five_qubit())?;
        Some(logical.max_abs_diff(&process_matrix_oracle(&tables, &physical.to_block())))
    } else {
        None
    };
    match format {
        OutputFormat::Csv => {
            writeln!(out, "# {CSV_SCHEMA} command=logical {}", noise.echo()).unwrap();
            if let Some(d) = discrepancy {
                writeln!(out, "# oracle_max_abs_diff={d:e}").unwrap();
            }
            writeln!(out, "{}", UnitalBlock::ENTRY_LABELS.join(",")).unwrap();
            writeln!(out, "{}", join_floats(&logical.row_major())).unwrap();
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct LogicalOut {
                physical: ReducedChannel,
                logical_block: UnitalBlock,
                #[serde(skip_serializing_if = "Option::is_none")]
                oracle_max_abs_diff: Option<f64>,
            }
            let doc = LogicalOut {
                physical,
                logical_block: logical,
                oracle_max_abs_diff: discrepancy,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
        }
    }
    Ok(())
}

fn render_iterate(
    out: &mut String,
    format: OutputFormat,
    noise: &NoiseInput,
    tol: f64,
    max_iters: usize,
) {
    let trace = iterate(noise.physical(), max_iters, tol);
    match format {
        OutputFormat::Csv => {
            writeln!(
                out,
                "# {CSV_SCHEMA} command=iterate {} tol={tol:e} max_iters={max_iters}",
                noise.echo()
            )
            .unwrap();
            writeln!(
                out,
                "# converged={} limit={}",
                trace.converged,
                limit_name(trace.limit)
            )
            .unwrap();
            writeln!(out, "step,x,y,z,u,v").unwrap();
            for (k, s) in trace.states.iter().enumerate() {
                writeln!(out, "{k},{}", join_floats(&s.as_array())).unwrap();
            }
        }
        OutputFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&trace).unwrap()).unwrap();
        }
    }
}

fn render_sweep(
    out: &mut String,
    format: OutputFormat,
    grid_q: &GridSpec,
    grid_eps: &GridSpec,
    tol: f64,
    max_iters: usize,
) -> Result<(), Error> {
    let rows = sweep_rows(grid_q, grid_eps, tol, max_iters)?;
    match format {
        OutputFormat::Csv => {
            writeln!(
                out,
                "# {CSV_SCHEMA} command=sweep grid_q={grid_q} grid_eps={grid_eps} \
                 tol={tol:e} max_iters={max_iters}"
            )
            .unwrap();
            writeln!(
                out,
                "q,epsilon,r_physical,d_physical,r_logical,d_logical,converged"
            )
            .unwrap();
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.q,
                    r.epsilon,
                    r.r_physical,
                    r.d_physical,
                    r.r_logical,
                    r.d_logical,
                    r.converged
                )
                .unwrap();
            }
        }
        OutputFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&rows).unwrap()).unwrap();
        }
    }
    Ok(())
}

/// Compute the sweep dataset. Grid points are evaluated in parallel and
/// assembled in grid order, so the output is deterministic.
pub fn sweep_rows(
    grid_q: &GridSpec,
    grid_eps: &GridSpec,
    tol: f64,
    max_iters: usize,
) -> Result<Vec<SweepRow>, Error> {
    let qs = grid_q.values();
    let epss = grid_eps.values();
    if qs.is_empty() || epss.is_empty() {
        return Err(Error::Parse("sweep grids must be nonempty".into()));
    }
    let pairs: Vec<(f64, f64)> = qs
        .iter()
        .flat_map(|&q| epss.iter().map(move |&e| (q, e)))
        .collect();
    pairs
        .into_par_iter()
        .map(|(q, epsilon)| {
            let params = NoiseParams::new(q, epsilon);
            let physical = rotation_bitflip_channel(params);
            let logical = post_correction_metrics(params);
            let trace = iterate(physical, max_iters, tol);
            Ok(SweepRow {
                q,
                epsilon,
                r_physical: avg_infidelity(&physical),
                d_physical: diamond_distance(&physical)?,
                r_logical: logical.infidelity,
                d_logical: logical.diamond_distance,
                converged: trace.limit == Limit::IdentityChannel,
            })
        })
        .collect()
}

fn render_basin(out: &mut String, format: OutputFormat, radii: &[f64], samples: usize) {
    let estimates: Vec<_> = radii.iter().map(|&r| scan_circle(r, samples)).collect();
    match format {
        OutputFormat::Csv => {
            writeln!(
                out,
                "# {CSV_SCHEMA} command=basin radii={} samples={samples}",
                join_floats(radii)
            )
            .unwrap();
            writeln!(out, "radius,max_norm,min_norm,samples").unwrap();
            for e in estimates {
                writeln!(
                    out,
                    "{},{},{},{}",
                    e.radius, e.max_norm_on_circle, e.min_norm_on_circle, e.samples
                )
                .unwrap();
            }
        }
        OutputFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&estimates).unwrap()).unwrap();
        }
    }
}

fn render_metrics(out: &mut String, format: OutputFormat, noise: &NoiseInput) -> Result<(), Error> {
    let physical = noise.physical();
    let r_physical = avg_infidelity(&physical);
    let d_physical = diamond_distance(&physical)?;
    let (q, epsilon, r_logical, d_logical) = match noise {
        NoiseInput::Params(p) => {
            let logical = post_correction_metrics(*p);
            (
                Some(p.q),
                Some(p.epsilon),
                logical.infidelity,
                logical.diamond_distance,
            )
        }
        NoiseInput::Channel(c) => {
            let logical = apply_reduced(c);
            (
                None,
                None,
                avg_infidelity(&logical),
                diamond_distance(&logical)?,
            )
        }
    };
    match format {
        OutputFormat::Csv => {
            writeln!(out, "# {CSV_SCHEMA} command=metrics {}", noise.echo()).unwrap();
            writeln!(out, "q,epsilon,r_physical,d_physical,r_logical,d_logical").unwrap();
            writeln!(
                out,
                "{},{},{},{},{},{}",
                opt_float(q),
                opt_float(epsilon),
                r_physical,
                d_physical,
                r_logical,
                d_logical
            )
            .unwrap();
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct MetricsOut {
                q: Option<f64>,
                epsilon: Option<f64>,
                channel: ReducedChannel,
                r_physical: f64,
                d_physical: f64,
                r_logical: f64,
                d_logical: f64,
            }
            let doc = MetricsOut {
                q,
                epsilon,
                channel: physical,
                r_physical,
                d_physical,
                r_logical,
                d_logical,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
        }
    }
    Ok(())
}

/// Run the verification suite, append the CLI-determinism check, and print
/// one line per check. Returns the process exit code.
pub fn run_verify(quick: bool, seed: u64) -> u8 {
    let cfg = VerifyConfig { quick, seed };
    let started = std::time::Instant::now();
    let mut reports = run_all(&cfg);
    reports.push(cli_determinism_check());
    let mut failed = 0usize;
    for r in &reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("{status}  {:<28} {}", r.name, r.detail);
        if !r.passed {
            failed += 1;
        }
    }
    println!(
        "{} checks, {} failed, {:.1}s",
        reports.len(),
        failed,
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        0
    } else {
        EXIT_VERIFY_FAILURE
    }
}

/// Render a small representative output of every emitting command twice
/// and require byte-identical results.
pub fn cli_determinism_check() -> CheckReport {
    let configs = [
        RunConfig {
            command: CommandSpec::Logical {
                noise: NoiseInput::Params(NoiseParams::new(0.01, 0.1)),
                oracle: true,
            },
            out: None,
            format: OutputFormat::Csv,
        },
        RunConfig {
            command: CommandSpec::Sweep {
                grid_q: GridSpec {
                    lo: 0.0,
                    hi: 0.02,
                    step: 0.01,
                },
                grid_eps: GridSpec {
                    lo: 0.0,
                    hi: 0.2,
                    step: 0.1,
                },
                tol: 1e-9,
                max_iters: 60,
            },
            out: None,
            format: OutputFormat::Csv,
        },
        RunConfig {
            command: CommandSpec::Basin {
                radii: vec![0.072],
                samples: 360,
            },
            out: None,
            format: OutputFormat::Json,
        },
        RunConfig {
            command: CommandSpec::Iterate {
                noise: NoiseInput::Params(NoiseParams::new(0.0, 0.3)),
                tol: 1e-9,
                max_iters: 60,
            },
            out: None,
            format: OutputFormat::Json,
        },
    ];
    for cfg in &configs {
        let first = render(cfg);
        let second = render(cfg);
        match (first, second) {
            (Ok(a), Ok(b)) => {
                if a != b {
                    return CheckReport {
                        name: "cli-determinism".into(),
                        passed: false,
                        detail: format!("non-identical bytes for {:?}", cfg.command),
                    };
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                return CheckReport {
                    name: "cli-determinism".into(),
                    passed: false,
                    detail: format!("render failed: {e}"),
                };
            }
        }
    }
    CheckReport {
        name: "cli-determinism".into(),
        passed: true,
        detail: "repeated renders of logical/sweep/basin/iterate are byte-identical".into(),
    }
}

fn limit_name(limit: Limit) -> &'static str {
    match limit {
        Limit::IdentityChannel => "identity_channel",
        Limit::OtherFixedPoint => "other_fixed_point",
        Limit::Diverged => "diverged",
        Limit::MaxIters => "max_iters",
    }
}

fn join_floats(vals: &[f64]) -> String {
    vals.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn opt_float(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0:0.05:0.01").unwrap();
        assert_eq!(g.values().len(), 6);
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("0:1").is_err());
    }

    #[test]
    fn channel_parsing() {
        let c = parse_channel("x=1,y=.9,z=.9,u=.1,v=-.1").unwrap();
        assert_eq!(c, ReducedChannel::new(1.0, 0.9, 0.9, 0.1, -0.1));
        assert!(parse_channel("x=1,y=.9,z=.9,u=.1").is_err());
        assert!(parse_channel("x=1,y=.9,z=.9,u=.1,v=-.1,w=0").is_err());
        assert!(parse_channel("x=one,y=.9,z=.9,u=.1,v=-.1").is_err());
    }

    #[test]
    fn logical_csv_has_schema_and_labels() {
        let cfg = RunConfig {
            command: CommandSpec::Logical {
                noise: NoiseInput::Params(NoiseParams::new(0.0, 0.0)),
                oracle: false,
            },
            out: None,
            format: OutputFormat::Csv,
        };
        let bytes = render(&cfg).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        let mut lines = text.lines();
        assert!(lines
            .next()
            .unwrap()
            .starts_with("# pentacode-csv v1 command=logical"));
        assert_eq!(
            lines.next().unwrap(),
            "N_XX,N_XY,N_XZ,N_YX,N_YY,N_YZ,N_ZX,N_ZY,N_ZZ"
        );
        assert_eq!(lines.next().unwrap(), "1,0,0,0,1,0,0,0,1");
    }

    #[test]
    fn explicit_channel_matches_library_route() {
        let c = ReducedChannel::new(1.0, 0.9, 0.9, 0.1, -0.1);
        let cfg = RunConfig {
            command: CommandSpec::Logical {
                noise: NoiseInput::Channel(c),
                oracle: false,
            },
            out: None,
            format: OutputFormat::Csv,
        };
        let text = String::from_utf8(render(&cfg).unwrap()).unwrap();
        let last = text.lines().last().unwrap();
        let got: Vec<f64> = last.split(',').map(|v| v.parse().unwrap()).collect();
        let expected = apply_reduced(&c).to_block().row_major();
        for (g, e) in got.iter().zip(expected.iter()) {
            assert!((g - e).abs() < 1e-13, "{got:?} vs {expected:?}");
        }
    }

    #[test]
    fn oracle_flag_reports_discrepancy() {
        let cfg = RunConfig {
            command: CommandSpec::Logical {
                noise: NoiseInput::Params(NoiseParams::new(0.0, 0.1)),
                oracle: true,
            },
            out: None,
            format: OutputFormat::Csv,
        };
        let text = String::from_utf8(render(&cfg).unwrap()).unwrap();
        let line = text
            .lines()
            .find(|l| l.starts_with("# oracle_max_abs_diff="))
            .expect("discrepancy line missing");
        let value: f64 = line
            .trim_start_matches("# oracle_max_abs_diff=")
            .parse()
            .unwrap();
        assert!(value < 1e-12, "oracle discrepancy {value}");
    }

    #[test]
    fn sweep_rows_cover_grid_in_order() {
        let rows = sweep_rows(
            &GridSpec {
                lo: 0.0,
                hi: 0.01,
                step: 0.01,
            },
            &GridSpec {
                lo: 0.0,
                hi: 0.379,
                step: 0.379,
            },
            1e-9,
            60,
        )
        .unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!((rows[0].q, rows[0].epsilon), (0.0, 0.0));
        assert!(rows[1].converged, "(0, 0.379) must converge");
        assert_eq!(rows[0].r_physical, 0.0);
        assert_eq!(rows[0].d_logical, 0.0);
    }

    #[test]
    fn determinism_check_passes() {
        let report = cli_determinism_check();
        assert!(report.passed, "{}", report.detail);
    }
}
