//! The `homeuler` command line.
//!
//! Exit codes: `0` success, `2` no solution (including a `none`
//! classification), `3` domain, validation or usage error, `4` tolerance or
//! closure failure, `1` I/O failure.

mod config;
mod serialize;

use std::ffi::OsString;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

pub use config::{Format, RunConfig, Tolerances};
use serialize::{classification_cells, classification_status, emit, to_value, Cell, Record, Table};

use crate::classify::{self, Classification, ProfileOptions, ScanOptions, Sign};
use crate::dynamics::{self, Params};
use crate::error::{Error, Result};
use crate::field::{self, GridSpec};
use crate::period::{self, Level, Method, Region, Spacing};
use crate::profile::SolutionProfile;

#[derive(Parser, Debug)]
#[command(name = "homeuler", version, about = "Homogeneous steady Euler flows: periods, periodic orbits and classification")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[command(next_help_heading = "Global options")]
struct GlobalArgs {
    /// Integration and quadrature tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Quadrature (period accuracy) tolerance; overrides --tol
    #[arg(long, global = true)]
    quad_tol: Option<f64>,
    /// Relative closure tolerance for profiles
    #[arg(long, global = true)]
    closure_tol: Option<f64>,
    /// Accuracy of located periods |T - 2pi/n|
    #[arg(long, global = true)]
    root_tol: Option<f64>,
    /// key = value configuration file; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write data here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Use the opposite rotation convention (negates the velocity)
    #[arg(long, global = true)]
    flip_orientation: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count elliptic 2pi-periodic solutions for B = +1 or -1
    #[command(allow_negative_numbers = true)]
    Classify(ClassifyArgs),
    /// Period of the closed orbit at one pressure level
    #[command(allow_negative_numbers = true)]
    Period(PeriodArgs),
    /// Period function sampled over the elliptic range
    #[command(allow_negative_numbers = true)]
    PeriodTable(PeriodTableArgs),
    /// Locate the orbit of period 2pi/n and reconstruct its profile
    #[command(allow_negative_numbers = true)]
    Find(FindArgs),
    /// Integrate and dump the profile at one pressure level
    #[command(allow_negative_numbers = true)]
    Reconstruct(ReconstructArgs),
    /// Map a profile to the conjugate exponent 1/lambda
    Dual(DualArgs),
    /// Solution count of det D^2 u = |x|^alpha
    #[command(allow_negative_numbers = true)]
    MaCount(MaArgs),
    /// Velocity and pressure on a polar grid
    Field(FieldArgs),
    /// Classification over a range of lambda
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct Branch {
    /// Homogeneity exponent
    #[arg(long)]
    lambda: f64,
    /// Bernoulli constant B
    #[arg(long)]
    bernoulli: f64,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct LevelArgs {
    /// Pressure constant P
    #[arg(long)]
    pressure: Option<f64>,
    /// Normalized level s in (0, 1]; s = 1 is the center
    #[arg(long)]
    pressure_frac: Option<f64>,
}

impl LevelArgs {
    fn level(&self) -> Level {
        match (self.pressure, self.pressure_frac) {
            (Some(p), _) => Level::Pressure(p),
            (None, Some(s)) => Level::Fraction(s),
            (None, None) => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
enum ModeArg {
    #[default]
    Table,
    Scan,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
enum MethodArg {
    #[default]
    Quadrature,
    Flight,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
enum SpacingArg {
    #[default]
    Logit,
    Uniform,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    branch: Branch,
    #[arg(long, value_enum, default_value_t)]
    mode: ModeArg,
    /// Scan resolution
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args, Debug)]
struct PeriodArgs {
    #[command(flatten)]
    branch: Branch,
    #[command(flatten)]
    level: LevelArgs,
    #[arg(long, value_enum, default_value_t)]
    method: MethodArg,
}

#[derive(Args, Debug)]
struct PeriodTableArgs {
    #[command(flatten)]
    branch: Branch,
    /// Number of levels
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 1e-3)]
    s_min: f64,
    #[arg(long, default_value_t = 1.0 - 1e-3)]
    s_max: f64,
    #[arg(long, value_enum, default_value_t)]
    spacing: SpacingArg,
}

#[derive(Args, Debug)]
struct FindArgs {
    #[command(flatten)]
    branch: Branch,
    /// Number of loops over [0, 2pi]
    #[arg(short = 'n')]
    n: u32,
    /// Profile intervals
    #[arg(long)]
    samples: Option<usize>,
    /// Also write the profile JSON to this file
    #[arg(long)]
    profile_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReconstructArgs {
    #[command(flatten)]
    branch: Branch,
    #[command(flatten)]
    level: LevelArgs,
    /// Profile intervals
    #[arg(long)]
    samples: Option<usize>,
    /// Required number of maxima
    #[arg(short = 'n')]
    n: Option<u32>,
}

#[derive(Args, Debug)]
struct DualArgs {
    /// Profile JSON
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct MaArgs {
    #[arg(long)]
    alpha: f64,
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Profile JSON
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    r_min: f64,
    #[arg(long)]
    r_max: f64,
    #[arg(long)]
    nr: usize,
    #[arg(long)]
    ntheta: usize,
    /// Report discrete Euler residuals
    #[arg(long)]
    check_residual: bool,
    /// Exit with status 4 when a residual exceeds this value
    #[arg(long, requires = "check_residual")]
    max_residual: Option<f64>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    lambda_min: f64,
    #[arg(long)]
    lambda_max: f64,
    #[arg(long)]
    step: f64,
    #[arg(long)]
    bernoulli: f64,
    #[arg(long, value_enum, default_value_t)]
    mode: ModeArg,
}

const MAX_SWEEP_POINTS: usize = 100_000;

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoSolution(_) => 2,
        Error::ToleranceNotMet(_) | Error::ClosureFailure { .. } => 4,
        Error::Io { .. } | Error::Csv(_) => 1,
        Error::Json { source, .. } if source.is_io() => 1,
        _ => 3,
    }
}

/// The reader of the data stream went away (e.g. `| head`).
fn broken_pipe(e: &Error) -> bool {
    let mut cause: Option<&(dyn std::error::Error + 'static)> = Some(e);
    while let Some(c) = cause {
        if c.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) {
            return true;
        }
        cause = c.source();
    }
    false
}

/// clap only recognizes plain decimals as negative values; `--b -1e-3`
/// becomes `--b=-1e-3`.
fn join_negative_values(args: Vec<OsString>) -> Vec<OsString> {
    let mut out: Vec<OsString> = Vec::with_capacity(args.len());
    let mut iter = args.into_iter().peekable();
    while let Some(arg) = iter.next() {
        let is_long = arg.to_str().is_some_and(|a| a.starts_with("--") && a.len() > 2 && !a.contains('='));
        let negative_next = iter
            .peek()
            .and_then(|n| n.to_str())
            .is_some_and(|n| n.starts_with('-') && n.parse::<f64>().is_ok());
        if is_long && negative_next {
            let mut joined = arg;
            joined.push("=");
            joined.push(iter.next().unwrap_or_default());
            out.push(joined);
        } else {
            out.push(arg);
        }
    }
    out
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit status. Data goes to `stdout` (or `--out`), diagnostics to `stderr`.
pub fn dispatch<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = join_negative_values(args.into_iter().map(Into::into).collect());
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    3
                }
            };
        }
    };
    let outcome = catch_unwind(AssertUnwindSafe(|| run(&cli, &mut *stdout, &mut *stderr)));
    let code = match outcome {
        Ok(Ok(code)) => code,
        Ok(Err(e)) if broken_pipe(&e) => 0,
        Ok(Err(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
        Err(_) => {
            let _ = writeln!(stderr, "error: internal failure");
            1
        }
    };
    let _ = stdout.flush();
    code
}

fn resolve_config(g: &GlobalArgs) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &g.config {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.clone(), source })?;
        cfg.apply_text(&text)?;
    }
    let t = &mut cfg.tolerances;
    if let Some(v) = g.tol {
        t.integration = v;
        t.quadrature = v;
    }
    if let Some(v) = g.quad_tol {
        t.quadrature = v;
    }
    if let Some(v) = g.closure_tol {
        t.closure = v;
    }
    if let Some(v) = g.root_tol {
        t.root = v;
    }
    if let Some(f) = g.format {
        cfg.format = f;
    }
    if g.out.is_some() {
        cfg.out = g.out.clone();
    }
    if g.jobs.is_some() {
        cfg.jobs = g.jobs;
    }
    if g.flip_orientation {
        cfg.orientation = field::Orientation::Flipped;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let cfg = resolve_config(&cli.global)?;
    let record = match cfg.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?
            .install(|| execute(&cli.command, &cfg))?,
        None => execute(&cli.command, &cfg)?,
    };
    let status = record.status;
    match &cfg.out {
        Some(path) => {
            let io = |source| Error::Io { path: path.clone(), source };
            let mut file = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
            emit(record, cfg.format, &cfg.tolerances, &mut file, stderr)?;
            file.flush().map_err(io)?;
        }
        None => emit(record, cfg.format, &cfg.tolerances, stdout, stderr)?,
    }
    Ok(status)
}

fn execute(command: &Command, cfg: &RunConfig) -> Result<Record> {
    match command {
        Command::Classify(a) => classify_cmd(a, cfg),
        Command::Period(a) => period_cmd(a, cfg),
        Command::PeriodTable(a) => period_table_cmd(a, cfg),
        Command::Find(a) => find_cmd(a, cfg),
        Command::Reconstruct(a) => reconstruct_cmd(a, cfg),
        Command::Dual(a) => dual_cmd(a),
        Command::MaCount(a) => ma_cmd(a),
        Command::Field(a) => field_cmd(a, cfg),
        Command::Sweep(a) => sweep_cmd(a, cfg),
    }
}

fn merge(base: Value, extra: Value) -> Value {
    match (base, extra) {
        (Value::Object(mut a), Value::Object(b)) => {
            a.extend(b);
            Value::Object(a)
        }
        (a, _) => a,
    }
}

fn samples(requested: Option<usize>, cfg: &RunConfig, default: usize, min: usize) -> Result<usize> {
    let n = requested.or(cfg.samples).unwrap_or(default);
    if n < min {
        return Err(Error::Invalid(format!("need at least {min} samples, got {n}")));
    }
    Ok(n)
}

fn classify_one(lambda: f64, sign: Sign, mode: ModeArg, opts: &ScanOptions) -> Result<(Classification, Option<classify::ScanReport>)> {
    match mode {
        ModeArg::Table => Ok((classify::count_elliptic_table(lambda, sign)?, None)),
        ModeArg::Scan => {
            let report = classify::scan_classification(lambda, sign, opts)?;
            Ok((report.classification.clone(), Some(report)))
        }
    }
}

fn scan_options(requested: Option<usize>, cfg: &RunConfig) -> Result<ScanOptions> {
    Ok(ScanOptions {
        samples: samples(requested, cfg, 400, 2)?,
        tol: cfg.tolerances.quadrature,
        ..ScanOptions::default()
    })
}

fn mode_name(mode: ModeArg) -> &'static str {
    match mode {
        ModeArg::Table => "table",
        ModeArg::Scan => "scan",
    }
}

fn classify_cmd(a: &ClassifyArgs, cfg: &RunConfig) -> Result<Record> {
    let sign = Sign::try_from(a.branch.bernoulli)?;
    let opts = scan_options(a.samples, cfg)?;
    let (c, report) = classify_one(a.branch.lambda, sign, a.mode, &opts)?;
    let mut extra = json!({ "lambda": a.branch.lambda, "bernoulli": a.branch.bernoulli, "mode": mode_name(a.mode) });
    let mut notes = Vec::new();
    if let Some(r) = &report {
        extra = merge(
            extra,
            json!({
                "crossings": to_value(&r.crossings)?,
                "period_range": [r.period_range.0, r.period_range.1],
                "isochronous": r.isochronous,
                "diagnostics": r.diagnostics,
            }),
        );
        notes.extend(r.diagnostics.iter().cloned());
    }
    let [kind, count, windings] = classification_cells(&c);
    let table = Table {
        header: vec!["lambda", "bernoulli", "kind", "count", "windings"],
        rows: vec![vec![Cell::Num(a.branch.lambda), Cell::Num(a.branch.bernoulli), kind, count, windings]],
    };
    let mut rec = Record::new(merge(to_value(&c)?, extra), table);
    rec.status = classification_status(&c);
    rec.notes = notes;
    Ok(rec)
}

fn level_point(region: &Region, level: Level) -> Result<(f64, f64)> {
    let s = region.resolve(level)?;
    let pressure = match level {
        Level::Pressure(p) => p,
        Level::Fraction(_) => region.pressure_of(s),
    };
    Ok((s, pressure))
}

fn period_cmd(a: &PeriodArgs, cfg: &RunConfig) -> Result<Record> {
    let params = Params::new(a.branch.lambda, a.branch.bernoulli)?;
    let level = a.level.level();
    let method = match a.method {
        MethodArg::Quadrature => Method::Quadrature,
        MethodArg::Flight => Method::Flight,
    };
    let t = period::period(&params, level, method, cfg.tolerances.quadrature)?;
    let (s, pressure) = level_point(&Region::new(&params)?, level)?;
    let (center, boundary) = period::period_limits(&params)?;
    let value = json!({
        "T": t,
        "lambda": params.lambda(),
        "bernoulli": params.bernoulli(),
        "s": s,
        "pressure": pressure,
        "method": to_value(&method)?,
        "limits": { "center": center, "boundary": boundary },
    });
    let table = Table {
        header: vec!["lambda", "bernoulli", "s", "pressure", "period"],
        rows: vec![vec![
            Cell::Num(params.lambda()),
            Cell::Num(params.bernoulli()),
            Cell::Num(s),
            Cell::Num(pressure),
            Cell::Num(t),
        ]],
    };
    Ok(Record::new(value, table))
}

fn period_table_cmd(a: &PeriodTableArgs, cfg: &RunConfig) -> Result<Record> {
    let params = Params::new(a.branch.lambda, a.branch.bernoulli)?;
    let n = samples(a.samples, cfg, 400, 2)?;
    let spacing = match a.spacing {
        SpacingArg::Logit => Spacing::Logit,
        SpacingArg::Uniform => Spacing::Uniform,
    };
    let table = period::period_table(&params, n, a.s_min, a.s_max, spacing, cfg.tolerances.quadrature)?;
    let (center, boundary) = period::period_limits(&params)?;
    let rows = table
        .rows
        .iter()
        .map(|r| vec![Cell::Num(r.s), Cell::Num(r.pressure), Cell::Num(r.period)])
        .collect();
    let value = merge(
        to_value(&table)?,
        json!({
            "lambda": params.lambda(),
            "bernoulli": params.bernoulli(),
            "spacing": to_value(&spacing)?,
            "limits": { "center": center, "boundary": boundary },
        }),
    );
    Ok(Record::new(value, Table { header: vec!["s", "pressure", "period"], rows }))
}

fn read_profile(path: &Path) -> Result<SolutionProfile> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let profile: SolutionProfile = serde_json::from_str(&text)
        .map_err(|source| Error::Json { context: format!("reading profile {}", path.display()), source })?;
    profile.validate()?;
    Ok(profile)
}

fn write_profile(path: &Path, profile: &SolutionProfile, tol: &Tolerances) -> Result<()> {
    let value = merge(to_value(profile)?, json!({ "meta": serialize::meta(tol) }));
    let text = serde_json::to_string(&value).map_err(|source| Error::Json { context: "encoding profile".into(), source })?;
    std::fs::write(path, text + "\n").map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn profile_record(profile: &SolutionProfile) -> Result<Record> {
    let rows = profile
        .theta
        .iter()
        .zip(&profile.psi)
        .zip(&profile.psi_prime)
        .map(|((t, p), d)| vec![Cell::Num(*t), Cell::Num(*p), Cell::Num(*d)])
        .collect();
    Ok(Record::new(to_value(profile)?, Table { header: vec!["theta", "psi", "psi_prime"], rows }))
}

fn find_cmd(a: &FindArgs, cfg: &RunConfig) -> Result<Record> {
    let sign = Sign::try_from(a.branch.bernoulli)?;
    let tol = &cfg.tolerances;
    let orbit = classify::find_periodic(a.branch.lambda, sign, a.n, tol.root)?;
    let m = samples(a.samples, cfg, 512, 8)?;
    let opts = ProfileOptions { tol: tol.ode(), closure_tol: tol.closure };
    let profile = classify::reconstruct_profile(&orbit.params, orbit.pressure, a.n, m, &opts)?;
    if let Some(path) = &a.profile_out {
        write_profile(path, &profile, tol)?;
    }
    let s = Region::new(&orbit.params)?.fraction_of(orbit.pressure);
    let target = classify::closing_period(a.n);
    let value = json!({
        "lambda": a.branch.lambda,
        "bernoulli": a.branch.bernoulli,
        "n": a.n,
        "s": s,
        "pressure": orbit.pressure,
        "period": orbit.period,
        "period_error": (orbit.period - target).abs(),
        "x_minus": orbit.x_minus,
        "x_plus": orbit.x_plus,
        "profile": {
            "type": to_value(&profile.type_tag)?,
            "winding": profile.winding,
            "maxima": profile.count_maxima(),
            "closure_defect": profile.closure_defect(),
            "min_psi": profile.min_psi(),
            "max_psi": profile.max_abs_psi(),
            "samples": profile.psi.len(),
        },
    });
    let table = Table {
        header: vec!["lambda", "bernoulli", "n", "s", "pressure", "period"],
        rows: vec![vec![
            Cell::Num(a.branch.lambda),
            Cell::Num(a.branch.bernoulli),
            Cell::Int(a.n.into()),
            Cell::Num(s),
            Cell::Num(orbit.pressure),
            Cell::Num(orbit.period),
        ]],
    };
    Ok(Record::new(value, table))
}

fn reconstruct_cmd(a: &ReconstructArgs, cfg: &RunConfig) -> Result<Record> {
    let params = Params::new(a.branch.lambda, a.branch.bernoulli)?;
    let (_, pressure) = level_point(&Region::new(&params)?, a.level.level())?;
    let m = samples(a.samples, cfg, 512, 8)?;
    let tol = &cfg.tolerances;
    let profile = match a.n {
        Some(n) => {
            let opts = ProfileOptions { tol: tol.ode(), closure_tol: tol.closure };
            classify::reconstruct_profile(&params, pressure, n, m, &opts)?
        }
        None => {
            let profile = classify::integrate_profile(&params, pressure, m, tol.ode())?;
            let defect = profile.closure_defect();
            if defect > tol.closure {
                return Err(Error::ClosureFailure { defect, tol: tol.closure });
            }
            profile
        }
    };
    profile_record(&profile)
}

fn dual_cmd(a: &DualArgs) -> Result<Record> {
    let source = read_profile(&a.input)?;
    let dual = classify::conjugate_dual(&source)?;
    let residual = dynamics::pressure_residual_profile(dual.lambda, &dual)?;
    let spread = residual.iter().fold(0.0f64, |m, r| m.max((r - dual.pressure).abs()));
    let mut rec = profile_record(&dual)?;
    rec.notes.push(format!("dual pressure residual: max deviation {spread:e} from P = {}", dual.pressure));
    Ok(rec)
}

fn ma_cmd(a: &MaArgs) -> Result<Record> {
    let (lambda, c) = classify::ma_count(a.alpha)?;
    let [kind, count, windings] = classification_cells(&c);
    let table = Table {
        header: vec!["alpha", "lambda", "kind", "count", "windings"],
        rows: vec![vec![Cell::Num(a.alpha), Cell::Num(lambda), kind, count, windings]],
    };
    let mut rec = Record::new(merge(to_value(&c)?, json!({ "alpha": a.alpha, "lambda": lambda })), table);
    rec.status = classification_status(&c);
    Ok(rec)
}

fn field_cmd(a: &FieldArgs, cfg: &RunConfig) -> Result<Record> {
    let profile = read_profile(&a.input)?;
    let defect = profile.closure_defect();
    if defect > cfg.tolerances.closure {
        return Err(Error::ClosureFailure { defect, tol: cfg.tolerances.closure });
    }
    let spec = GridSpec { orientation: cfg.orientation, ..GridSpec::new(a.r_min, a.r_max, a.nr, a.ntheta) };
    let grid = field::velocity_field(&profile, &spec)?;
    let mut rows = Vec::with_capacity(grid.values.len());
    for i in 0..grid.nr {
        for j in 0..grid.ntheta {
            let v = grid.at(i, j);
            rows.push(vec![Cell::Num(grid.r(i)), Cell::Num(grid.theta(j)), Cell::Num(v.u_r), Cell::Num(v.u_theta), Cell::Num(v.p)]);
        }
    }
    let mut extra = json!({
        "lambda": profile.lambda,
        "pressure": profile.pressure,
        "orientation": to_value(&cfg.orientation)?,
    });
    let mut notes = Vec::new();
    let mut status = 0;
    if a.check_residual {
        let r = field::euler_residual(&grid, profile.lambda)?;
        notes.push(format!("residual: divergence {:e}, momentum {:e}", r.div_norm, r.momentum_norm));
        if let Some(limit) = a.max_residual {
            if r.div_norm > limit || r.momentum_norm > limit {
                notes.push(format!("residual exceeds {limit:e}"));
                status = 4;
            }
        }
        extra = merge(extra, json!({ "residual": to_value(&r)? }));
    }
    let mut rec = Record::new(merge(to_value(&grid)?, extra), Table { header: vec!["r", "theta", "u_r", "u_theta", "p"], rows });
    rec.notes = notes;
    rec.status = status;
    Ok(rec)
}

/// `λ_k = λ_min + k·step`, rounded to 12 decimals so that grid points such
/// as 4.5 land exactly on the decimal value.
fn sweep_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite() && step.is_finite() && step > 0.0 && min <= max) {
        return Err(Error::Invalid(format!("bad sweep range [{min}, {max}] with step {step}")));
    }
    let count = ((max - min) / step + 1e-9).floor() + 1.0;
    if count > MAX_SWEEP_POINTS as f64 {
        return Err(Error::Invalid(format!("sweep has {count} points, limit is {MAX_SWEEP_POINTS}")));
    }
    (0..count as usize)
        .map(|k| {
            let raw = min + k as f64 * step;
            format!("{raw:.12}").parse().map_err(|_| Error::Invalid(format!("bad sweep point {raw}")))
        })
        .collect()
}

fn sweep_cmd(a: &SweepArgs, cfg: &RunConfig) -> Result<Record> {
    let sign = Sign::try_from(a.bernoulli)?;
    let lambdas = sweep_grid(a.lambda_min, a.lambda_max, a.step)?;
    let opts = scan_options(None, cfg)?;
    let results: Vec<Classification> = lambdas
        .par_iter()
        .map(|&l| classify_one(l, sign, a.mode, &opts).map(|(c, _)| c))
        .collect::<Result<_>>()?;
    let mut json_rows = Vec::with_capacity(results.len());
    let mut rows = Vec::with_capacity(results.len());
    for (&l, c) in lambdas.iter().zip(&results) {
        json_rows.push(merge(json!({ "lambda": l }), to_value(c)?));
        let [kind, count, windings] = classification_cells(c);
        rows.push(vec![Cell::Num(l), kind, count, windings]);
    }
    let value = json!({ "bernoulli": a.bernoulli, "mode": mode_name(a.mode), "rows": json_rows });
    Ok(Record::new(value, Table { header: vec!["lambda", "kind", "count", "windings"], rows }))
}
