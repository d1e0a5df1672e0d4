use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use mertens_lab::{
    classify_census, eval_progression, eval_series, mertens_prefix, partial_sum_trace, registry,
    run_claim, ClaimVerdict, ComplexPoint, EvalMode, Family, RegisteredClaim, SeriesSample,
    SeriesSpec, SieveOpts,
};
use mertens_lab_cli::config::{EngineConfig, Format};
use mertens_lab_cli::output::{deliver, fmt_f64, pretty_json};
use mertens_lab_cli::report::{self, ZetaTraceJson};

#[derive(Parser)]
#[command(
    name = "mertens-lab",
    version,
    about = "Mertens function laboratory: census scans, root series, claim verdicts, zeta partial sums"
)]
struct Cli {
    /// Config file with key = value lines (segment_size, workers).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Sieve worker threads (default 1, or MERTENS_LAB_WORKERS).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Sieve segment length; at least 65536.
    #[arg(long, global = true)]
    segment_size: Option<usize>,

    /// Write here instead of stdout (atomic: temp file plus rename).
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Output shape; defaults to csv for tables, json for claims and audit.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify [1, n] into the five census classes and report the counts.
    Census {
        #[arg(long)]
        n: u64,
    },
    /// Mobius prefix sums M at checkpoints up to n.
    Mertens {
        #[arg(long)]
        n: u64,
        /// Comma-separated ascending checkpoints; default: powers of ten.
        #[arg(long, value_delimiter = ',')]
        checkpoints: Vec<u64>,
    },
    /// Root series (f1, f2, f4) and progressions (phi1, phi2, phi4).
    Series {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Real)]
        mode: ModeArg,
        /// Comma-separated arguments to evaluate at.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
    },
    /// Verdicts for registered bound claims.
    Claims {
        /// Registry id, for example mertens-half-sqrt-c1.3.
        #[arg(long, conflicts_with = "all")]
        id: Option<String>,
        /// Run the whole registry.
        #[arg(long)]
        all: bool,
        /// lo:hi window; lo must equal the claim's declared start.
        #[arg(long, conflicts_with_all = ["all", "hi"])]
        range: Option<String>,
        /// Upper end of each scan; the start comes from the claim itself.
        #[arg(long)]
        hi: Option<u64>,
    },
    /// Partial sums of the Mobius Dirichlet series at s = sigma + it.
    Zeta {
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        #[arg(long)]
        n_max: u64,
        /// Comma-separated ascending checkpoints; default: powers of ten.
        #[arg(long, value_delimiter = ',')]
        checkpoints: Vec<u64>,
    },
    /// Full claim registry plus summary statistics as one JSON report.
    Audit {
        #[arg(long, default_value_t = 1_000_000)]
        n_max: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    F1,
    F2,
    F4,
    Phi1,
    Phi2,
    Phi4,
}

impl FamilyArg {
    fn core(self) -> Family {
        match self {
            FamilyArg::F1 => Family::F1,
            FamilyArg::F2 => Family::F2,
            FamilyArg::F4 => Family::F4,
            FamilyArg::Phi1 => Family::Phi1,
            FamilyArg::Phi2 => Family::Phi2,
            FamilyArg::Phi4 => Family::Phi4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            FamilyArg::F1 => "f1",
            FamilyArg::F2 => "f2",
            FamilyArg::F4 => "f4",
            FamilyArg::Phi1 => "phi1",
            FamilyArg::Phi2 => "phi2",
            FamilyArg::Phi4 => "phi4",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Real,
    Floored,
}

impl ModeArg {
    fn core(self) -> EvalMode {
        match self {
            ModeArg::Real => EvalMode::Real,
            ModeArg::Floored => EvalMode::Floored,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ModeArg::Real => "real",
            ModeArg::Floored => "floored",
        }
    }
}

/// A failed run: exit 2 for configuration problems, 3 when the computation
/// itself rejected its inputs or hit capacity. Claim verdicts are data and
/// never drive the exit code.
enum Failure {
    Config(anyhow::Error),
    Compute(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Compute(_) => 3,
        }
    }

    fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Config(err) | Failure::Compute(err) => err,
        }
    }
}

fn config_step<T>(result: anyhow::Result<T>) -> Result<T, Failure> {
    result.map_err(Failure::Config)
}

fn compute_step<T, E>(result: Result<T, E>) -> Result<T, Failure>
where
    E: std::error::Error + Send + Sync + 'static,
{
    result.map_err(|err| Failure::Compute(anyhow::Error::new(err)))
}

fn json_step<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    pretty_json(value).map_err(Failure::Compute)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error());
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let engine = config_step(EngineConfig::resolve(
        cli.config.as_deref(),
        cli.segment_size,
        cli.workers,
    ))?;
    let opts = engine.sieve_opts();
    let format = cli.format.unwrap_or_else(|| default_format(&cli.command));
    config_step(check_format(&cli.command, format))?;

    let text = match cli.command {
        Cmd::Census { n } => render_census(n, format, &opts)?,
        Cmd::Mertens { n, checkpoints } => render_mertens(n, checkpoints, format, &opts)?,
        Cmd::Series { family, mode, n } => render_series(family, mode, &n, format)?,
        Cmd::Claims { id, all, range, hi } => render_claims(id, all, range, hi, format, &opts)?,
        Cmd::Zeta { sigma, t, n_max, checkpoints } => {
            render_zeta(sigma, t, n_max, checkpoints, format, &opts)?
        }
        Cmd::Audit { n_max } => render_audit(n_max, &engine)?,
    };
    config_step(deliver(cli.output.as_deref(), &text))
}

fn default_format(cmd: &Cmd) -> Format {
    match cmd {
        Cmd::Claims { .. } | Cmd::Audit { .. } => Format::Json,
        _ => Format::Csv,
    }
}

fn check_format(cmd: &Cmd, format: Format) -> anyhow::Result<()> {
    let (name, allowed): (&str, &[Format]) = match cmd {
        Cmd::Census { .. } => ("census", &[Format::Csv, Format::Json]),
        Cmd::Mertens { .. } => ("mertens", &[Format::Csv, Format::Json, Format::Plotdata]),
        Cmd::Series { .. } => ("series", &[Format::Csv, Format::Json, Format::Plotdata]),
        Cmd::Claims { .. } => ("claims", &[Format::Csv, Format::Json]),
        Cmd::Zeta { .. } => ("zeta", &[Format::Csv, Format::Json, Format::Plotdata]),
        Cmd::Audit { .. } => ("audit", &[Format::Json]),
    };
    if !allowed.contains(&format) {
        let names: Vec<String> = allowed.iter().map(|f| f.to_string()).collect();
        bail!("format {format} does not fit the {name} schema (expected {})", names.join(" or "));
    }
    Ok(())
}

/// Validates user checkpoints, or falls back to powers of ten.
fn checked_grid(checkpoints: Vec<u64>, n: u64) -> anyhow::Result<Vec<u64>> {
    let grid =
        if checkpoints.is_empty() { report::decade_grid(n) } else { checkpoints };
    if !grid.windows(2).all(|w| w[0] < w[1]) || grid.iter().any(|&c| c == 0 || c > n) {
        bail!("checkpoints must be strictly increasing and within [1, {n}]");
    }
    Ok(grid)
}

fn render_census(n: u64, format: Format, opts: &SieveOpts) -> Result<String, Failure> {
    let census = compute_step(classify_census(n, opts))?;
    match format {
        Format::Csv => {
            let mut out =
                String::from("n,ones,primes,nonsquarefree,squarefree_even,squarefree_odd,mertens\n");
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                census.n,
                census.ones,
                census.primes,
                census.nonsquarefree,
                census.squarefree_even,
                census.squarefree_odd,
                census.mertens
            ));
            Ok(out)
        }
        Format::Json => json_step(&census),
        Format::Plotdata => unreachable!("format already validated"),
    }
}

fn render_mertens(
    n: u64,
    checkpoints: Vec<u64>,
    format: Format,
    opts: &SieveOpts,
) -> Result<String, Failure> {
    let grid = config_step(checked_grid(checkpoints, n))?;
    let trace = compute_step(mertens_prefix(n, &grid, opts))?;
    match format {
        Format::Csv => {
            let mut out = String::from("n,mertens\n");
            for (k, v) in trace.grid.iter().zip(&trace.values) {
                out.push_str(&format!("{k},{v}\n"));
            }
            Ok(out)
        }
        Format::Json => json_step(&trace),
        Format::Plotdata => {
            let mut out = String::from("# n mertens\n");
            for (k, v) in trace.grid.iter().zip(&trace.values) {
                out.push_str(&format!("{k} {v}\n"));
            }
            Ok(out)
        }
    }
}

fn render_series(
    family: FamilyArg,
    mode: ModeArg,
    ns: &[u64],
    format: Format,
) -> Result<String, Failure> {
    let mut samples: Vec<SeriesSample> = Vec::with_capacity(ns.len());
    for &n in ns {
        let spec = SeriesSpec { family: family.core(), mode: mode.core(), n };
        let sample = match family {
            FamilyArg::F1 | FamilyArg::F2 | FamilyArg::F4 => eval_series(spec),
            _ => eval_progression(spec),
        };
        samples.push(compute_step(sample)?);
    }
    match format {
        Format::Csv => {
            let mut out = String::from("family,mode,n,value,terms\n");
            for s in &samples {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    family.name(),
                    mode.name(),
                    s.spec.n,
                    fmt_f64(s.value),
                    s.term_count
                ));
            }
            Ok(out)
        }
        Format::Json => json_step(&samples),
        Format::Plotdata => {
            let mut out = String::from("# n value\n");
            for s in &samples {
                out.push_str(&format!("{} {}\n", s.spec.n, fmt_f64(s.value)));
            }
            Ok(out)
        }
    }
}

fn render_claims(
    id: Option<String>,
    all: bool,
    range: Option<String>,
    hi: Option<u64>,
    format: Format,
    opts: &SieveOpts,
) -> Result<String, Failure> {
    let claims = registry();
    let selected: Vec<RegisteredClaim> = if all {
        claims
    } else {
        let id = config_step(
            id.ok_or_else(|| anyhow!("pass --id <claim> or --all; see --help for the registry")),
        )?;
        let claim = config_step(claims.into_iter().find(|c| c.id == id).ok_or_else(|| {
            let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
            anyhow!("unknown claim id {id:?}; registered: {}", ids.join(", "))
        }))?;
        vec![claim]
    };

    let hi = match range {
        Some(text) => {
            let (lo, hi) = config_step(parse_range(&text))?;
            let claim = &selected[0];
            if lo != claim.lo {
                return Err(Failure::Config(anyhow!(
                    "claim {} is declared from {}; pass --range {}:{hi} or use --hi {hi}",
                    claim.id,
                    claim.lo,
                    claim.lo
                )));
            }
            hi
        }
        None => hi.unwrap_or(1_000_000),
    };

    let mut verdicts: Vec<ClaimVerdict> = Vec::with_capacity(selected.len());
    for claim in &selected {
        verdicts.push(compute_step(run_claim(claim, hi, opts))?);
    }

    match format {
        Format::Json if !all => json_step(&verdicts[0]),
        Format::Json => json_step(&verdicts),
        Format::Csv => {
            let mut out =
                String::from("claim_id,lo,hi,holds,first_violation,worst_margin,argmax_n\n");
            for v in &verdicts {
                let first = v.first_violation.map_or(String::new(), |n| n.to_string());
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    v.claim_id,
                    v.n_range.0,
                    v.n_range.1,
                    v.holds_everywhere,
                    first,
                    fmt_f64(v.worst_margin),
                    v.argmax_n
                ));
            }
            Ok(out)
        }
        Format::Plotdata => unreachable!("format already validated"),
    }
}

fn parse_range(text: &str) -> anyhow::Result<(u64, u64)> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| anyhow!("range must look like lo:hi, got {text:?}"))?;
    let lo: u64 = lo.trim().parse().with_context(|| format!("range start {lo:?}"))?;
    let hi: u64 = hi.trim().parse().with_context(|| format!("range end {hi:?}"))?;
    if lo > hi {
        bail!("range start {lo} exceeds range end {hi}");
    }
    Ok((lo, hi))
}

fn render_zeta(
    sigma: f64,
    t: f64,
    n_max: u64,
    checkpoints: Vec<u64>,
    format: Format,
    opts: &SieveOpts,
) -> Result<String, Failure> {
    let grid = config_step(checked_grid(checkpoints, n_max))?;
    let trace = compute_step(partial_sum_trace(ComplexPoint::new(sigma, t), n_max, &grid, opts))?;
    match format {
        Format::Csv => {
            let mut out =
                String::from("n,direct_re,direct_im,abel_re,abel_im,boundary_re,boundary_im\n");
            for (i, n) in trace.grid.iter().enumerate() {
                let d = trace.direct_values[i];
                let a = trace.abel_values[i];
                let b = trace.boundary_values[i];
                out.push_str(&format!(
                    "{n},{},{},{},{},{},{}\n",
                    fmt_f64(d.re),
                    fmt_f64(d.im),
                    fmt_f64(a.re),
                    fmt_f64(a.im),
                    fmt_f64(b.re),
                    fmt_f64(b.im)
                ));
            }
            Ok(out)
        }
        Format::Json => json_step(&ZetaTraceJson::new(&trace, None)),
        Format::Plotdata => {
            let mut out = String::from("# n abs_direct\n");
            for (i, n) in trace.grid.iter().enumerate() {
                out.push_str(&format!("{n} {}\n", fmt_f64(trace.direct_values[i].norm())));
            }
            Ok(out)
        }
    }
}

fn render_audit(n_max: u64, engine: &EngineConfig) -> Result<String, Failure> {
    if n_max < 10 {
        return Err(Failure::Config(anyhow!("audit requires --n-max of at least 10")));
    }
    let report = report::build_audit(n_max, engine).map_err(Failure::Compute)?;
    pretty_json(&report).map_err(Failure::Compute)
}
