//! Command-line front end behind the `casimir` binary.
//!
//! ```text
//! casimir energy --alpha 2 --delta 0.3 --method exact --json
//! casimir figure 4 --alphas 1.5,2 --points 5
//! casimir converge --alpha 1.5 --delta 0.2
//! ```
//!
//! Exit codes: 0 success, 2 invalid input, 3 non-convergence, 4 some sweep
//! points failed.

mod config;
mod output;

pub use config::{parse_list, Config};
pub use output::{format_float, Metadata, Row, SweepResult, CSV_HEADER};

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use crate::energy::{self, Diagnostics, NumericsPolicy, PolarizedEnergy};
use crate::error::{Error, Result};
use crate::geometry::{self, Channel, Geometry, ReducedEnergy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;
pub const EXIT_PARTIAL_FAILURE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "casimir",
    version,
    about = "Casimir interaction energies of eccentric cylinders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one configuration.
    Energy(EnergyArgs),
    /// Emit the data behind one of the standard plots as CSV.
    Figure(FigureArgs),
    /// Energy against order cut and against tolerance.
    Converge(ConvergeArgs),
}

/// Numerics and output options shared by all subcommands.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Flat key = value file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Target relative accuracy.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Largest order cut tried.
    #[arg(long)]
    pub max_modes: Option<usize>,
    /// Starting order cut.
    #[arg(long)]
    pub initial_modes: Option<usize>,
    #[arg(long)]
    pub beta_max_factor: Option<f64>,
    #[arg(long)]
    pub max_panels: Option<usize>,
    #[arg(long)]
    pub quad_order: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Line-delimited JSON instead of text or CSV.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct EnergyArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// exact, perturbative, pfa, asymptotic or concentric.
    #[arg(long)]
    pub method: Option<Method>,
    /// tm, te or em.
    #[arg(long)]
    pub pol: Option<Channel>,
    /// Inner radius in metres, for output in joules.
    #[arg(long)]
    pub radius_a: Option<f64>,
    /// Cylinder length in metres, for output in joules.
    #[arg(long)]
    pub length: Option<f64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    /// 2, 3 or 4.
    pub id: u8,
    /// Explicit alpha values.
    #[arg(long)]
    pub alphas: Option<FloatList>,
    /// Explicit delta values.
    #[arg(long)]
    pub deltas: Option<FloatList>,
    #[arg(long)]
    pub alpha_min: Option<f64>,
    #[arg(long)]
    pub alpha_max: Option<f64>,
    #[arg(long)]
    pub delta_max: Option<f64>,
    /// Grid points along the swept axis.
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Explicit order cuts; otherwise doubling from --min-cut to --max-cut.
    #[arg(long)]
    pub cuts: Option<FloatList>,
    #[arg(long)]
    pub min_cut: Option<usize>,
    #[arg(long)]
    pub max_cut: Option<usize>,
    /// Tolerances for the refinement rows.
    #[arg(long)]
    pub tols: Option<FloatList>,
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Comma-separated numbers on the command line.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatList(pub Vec<f64>);

impl FromStr for FloatList {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<FloatList, String> {
        parse_list(s).map(FloatList)
    }
}

fn list(flag: &Option<FloatList>) -> Option<Vec<f64>> {
    flag.as_ref().map(|l| l.0.clone())
}

/// Evaluation route for `casimir energy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Perturbative,
    Pfa,
    Asymptotic,
    Concentric,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Perturbative => "perturbative",
            Method::Pfa => "pfa",
            Method::Asymptotic => "asymptotic",
            Method::Concentric => "concentric",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Method, String> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Method::Exact),
            "perturbative" => Ok(Method::Perturbative),
            "pfa" => Ok(Method::Pfa),
            "asymptotic" => Ok(Method::Asymptotic),
            "concentric" => Ok(Method::Concentric),
            other => Err(format!(
                "unknown method '{other}' (expected exact, perturbative, pfa, asymptotic or concentric)"
            )),
        }
    }
}

/// What a method's number measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// `E12(α, δ)`.
    Energy,
    /// `E12(α, δ) - E12(α, 0)`.
    DeltaEnergy,
}

impl Quantity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Quantity::Energy => "energy",
            Quantity::DeltaEnergy => "delta_energy",
        }
    }
}

/// Closed-form results with an even TM/TE split.
fn closed_form(em: f64, tm_share: f64) -> PolarizedEnergy {
    let tm = tm_share * em;
    let te = em - tm;
    PolarizedEnergy {
        tm,
        te,
        em: tm + te,
        err_estimate: 0.0,
        diagnostics: Diagnostics::default(),
    }
}

/// Evaluates `method` at `g`.
///
/// `exact`, `concentric` and `pfa` at `δ = 0` give the interaction energy;
/// `perturbative`, `asymptotic` and `pfa` at `δ > 0` give the shift
/// `E(δ) - E(0)`.
pub fn evaluate(
    method: Method,
    g: &Geometry,
    policy: &NumericsPolicy,
) -> Result<(Quantity, PolarizedEnergy)> {
    let g = g.validate()?;
    policy.check()?;
    let d2 = g.delta * g.delta;
    Ok(match method {
        Method::Exact => (Quantity::Energy, energy::exact_energy(&g, policy)?),
        Method::Concentric => {
            if g.delta != 0.0 {
                return Err(Error::InvalidArgument(
                    "the concentric method needs delta = 0".to_string(),
                ));
            }
            (
                Quantity::Energy,
                energy::concentric_energy(g.alpha, policy)?,
            )
        }
        Method::Perturbative => {
            let mut e = energy::perturbative_delta_e(g.alpha, policy)?;
            e.tm *= d2;
            e.te *= d2;
            e.em = e.tm + e.te;
            e.err_estimate *= d2;
            (Quantity::DeltaEnergy, e)
        }
        Method::Pfa if g.delta == 0.0 => (
            Quantity::Energy,
            closed_form(geometry::pfa_concentric_energy(&g), 0.5),
        ),
        Method::Pfa => (
            Quantity::DeltaEnergy,
            closed_form(geometry::pfa_eccentric_delta_e(&g, Channel::Em), 0.5),
        ),
        Method::Asymptotic => (
            Quantity::DeltaEnergy,
            closed_form(geometry::asymptotic_delta_e(&g)?, 1.0),
        ),
    })
}

fn policy_from(common: &CommonArgs, cfg: &Config) -> Result<NumericsPolicy> {
    let d = NumericsPolicy::default();
    let policy = NumericsPolicy {
        rel_tol: cfg.pick(common.tol, "tol")?.unwrap_or(d.rel_tol),
        initial_order_cut: cfg.pick(common.initial_modes, "initial_modes")?,
        max_order_cut: cfg
            .pick(common.max_modes, "max_modes")?
            .unwrap_or(d.max_order_cut),
        beta_max_factor: cfg
            .pick(common.beta_max_factor, "beta_max_factor")?
            .unwrap_or(d.beta_max_factor),
        max_panels: cfg
            .pick(common.max_panels, "max_panels")?
            .unwrap_or(d.max_panels),
        quad_order: cfg
            .pick(common.quad_order, "quad_order")?
            .unwrap_or(d.quad_order),
    };
    policy.check()?;
    Ok(policy)
}

fn load_config(common: &CommonArgs) -> Result<Config> {
    match &common.config {
        Some(path) => Config::load(path),
        None => Ok(Config::default()),
    }
}

/// Runs `f` on a pool of `threads` workers, or on the global pool.
fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::InvalidArgument(
            "--threads must be positive".to_string(),
        )),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_input_error() {
        EXIT_INVALID_INPUT
    } else {
        EXIT_NOT_CONVERGED
    }
}

fn report_error(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {}: {e}", e.name());
    exit_code(e)
}

fn cmd_energy(args: &EnergyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cfg = load_config(&args.common)?;
    let policy = policy_from(&args.common, &cfg)?;
    let alpha = cfg
        .pick(args.alpha, "alpha")?
        .ok_or_else(|| Error::InvalidArgument("--alpha is required".to_string()))?;
    let delta = cfg.pick(args.delta, "delta")?.unwrap_or(0.0);
    let method = cfg.pick(args.method, "method")?.unwrap_or(Method::Exact);
    let pol = cfg.pick(args.pol, "pol")?.unwrap_or(Channel::Em);
    let radius = cfg.pick(args.radius_a, "radius_a")?;
    let length = cfg.pick(args.length, "length")?;
    let json = cfg.flag(args.common.json, "json")?;
    let threads = cfg.pick(args.common.threads, "threads")?;

    let mut g = Geometry::new(alpha, delta)?;
    let physical = match (radius, length) {
        (None, None) => false,
        (Some(a), Some(l)) if a > 0.0 && l > 0.0 => {
            g = g.with_scales(a, l);
            true
        }
        (Some(_), Some(_)) => {
            return Err(Error::InvalidArgument(
                "--radius-a and --length must be positive".to_string(),
            ))
        }
        _ => return Err(Error::MissingPhysicalScale),
    };

    let (quantity, e) = match with_threads(threads, || evaluate(method, &g, &policy))? {
        Ok(v) => v,
        Err(e) => return Ok(report_error(err, &e)),
    };
    let joules = |x: f64| geometry::to_physical(ReducedEnergy(x), &g).ok();
    let d = &e.diagnostics;

    if json {
        let mut rec = json!({
            "alpha": alpha,
            "delta": delta,
            "method": method.as_str(),
            "quantity": quantity.as_str(),
            "pol": pol,
            "energy": e.channel(pol),
            "tm": e.tm,
            "te": e.te,
            "em": e.em,
            "err": e.err_estimate,
            "order_cut": d.order_cut,
            "inner_cut": d.inner_cut,
            "panels": d.panels,
            "flag": d.flag_label(),
            "policy": policy,
        });
        if physical {
            rec["energy_joules"] = json!(joules(e.channel(pol)));
            rec["tm_joules"] = json!(joules(e.tm));
            rec["te_joules"] = json!(joules(e.te));
            rec["em_joules"] = json!(joules(e.em));
        }
        let _ = writeln!(out, "{rec}");
    } else {
        let _ = writeln!(
            out,
            "{} {} at alpha = {}, delta = {}",
            method,
            quantity.as_str().replace('_', " "),
            format_float(alpha),
            format_float(delta)
        );
        let _ = writeln!(out, "  {pol} = {:.12e} E0", e.channel(pol));
        if physical {
            let _ = writeln!(
                out,
                "  {pol} = {:.12e} J",
                joules(e.channel(pol)).unwrap_or(f64::NAN)
            );
        }
        let _ = writeln!(
            out,
            "  tm = {:.12e}  te = {:.12e}  em = {:.12e}",
            e.tm, e.te, e.em
        );
        let _ = writeln!(
            out,
            "  err = {:.3e}  order_cut = {}  inner_cut = {}  panels = {}  flag = {}",
            e.err_estimate,
            d.order_cut,
            d.inner_cut,
            d.panels,
            d.flag_label()
        );
    }
    Ok(EXIT_OK)
}

/// `n` values from `lo` to `hi` with `x - 1` spaced logarithmically.
pub fn log_alpha_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = ((lo - 1.0).ln(), (hi - 1.0).ln());
    (0..n)
        .map(|k| match k {
            0 => lo,
            k if k == n - 1 => hi,
            k => 1.0 + (a + (b - a) * k as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

/// `n` values evenly spaced on `[0, hi]`.
pub fn linear_grid(hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.0];
    }
    // rounded so that e.g. 0.3 does not come out as 0.30000000000000004
    (0..n)
        .map(|k| (hi * k as f64 / (n - 1) as f64 * 1e12).round() / 1e12)
        .collect()
}

/// Sweep points: `(alpha, delta)` in emission order.
type Points = Vec<(f64, f64)>;

fn check_grid(values: &[f64], name: &str) -> Result<()> {
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "{name} must be a non-empty list of finite numbers"
        )));
    }
    Ok(())
}

/// Builds a figure sweep. Rows come out in ascending order of the swept
/// parameter, then the fixed one, then polarization.
pub fn figure_sweep(
    args: &FigureArgs,
    cfg: &Config,
    policy: &NumericsPolicy,
) -> Result<SweepResult> {
    let alphas = cfg.pick_list(list(&args.alphas), "alphas")?;
    let deltas = cfg.pick_list(list(&args.deltas), "deltas")?;
    let alpha_min: Option<f64> = cfg.pick(args.alpha_min, "alpha_min")?;
    let alpha_max: Option<f64> = cfg.pick(args.alpha_max, "alpha_max")?;
    let delta_max: Option<f64> = cfg.pick(args.delta_max, "delta_max")?;
    let points: Option<usize> = cfg.pick(args.points, "points")?;
    if points == Some(0) {
        return Err(Error::InvalidArgument(
            "--points must be positive".to_string(),
        ));
    }
    let pols = Channel::ALL;

    let rows: Vec<Row> = match args.id {
        2 => {
            let alphas = alphas.unwrap_or_else(|| {
                log_alpha_grid(
                    alpha_min.unwrap_or(1.01),
                    alpha_max.unwrap_or(11.0),
                    points.unwrap_or(16),
                )
            });
            check_grid(&alphas, "alphas")?;
            let mut alphas = alphas;
            alphas.sort_by(f64::total_cmp);
            alphas
                .par_iter()
                .map(|&alpha| {
                    let method = "perturbative/pfa";
                    let res = Geometry::new(alpha, 0.0)
                        .and_then(|_| energy::perturbative_delta_e(alpha, policy));
                    match res {
                        Ok(e) => {
                            let pfa_em =
                                -(std::f64::consts::PI.powi(4) / 30.0) / (alpha - 1.0).powi(5);
                            Row::from_energy(alpha, None, method, &e, &pols, |pol| {
                                1.0 / if pol == Channel::Em {
                                    pfa_em
                                } else {
                                    0.5 * pfa_em
                                }
                            })
                        }
                        Err(err) => Row::failed(alpha, None, method, &pols, &err),
                    }
                })
                .flatten()
                .collect()
        }
        3 | 4 => {
            let points_vec: Points = if args.id == 3 {
                let alphas = alphas.unwrap_or_else(|| {
                    log_alpha_grid(
                        alpha_min.unwrap_or(1.2),
                        alpha_max.unwrap_or(10.0),
                        points.unwrap_or(12),
                    )
                });
                let deltas = deltas.unwrap_or_else(|| vec![0.05, 0.1]);
                check_grid(&alphas, "alphas")?;
                check_grid(&deltas, "deltas")?;
                let mut p: Points = alphas
                    .iter()
                    .flat_map(|&a| deltas.iter().map(move |&d| (a, d)))
                    .filter(|&(a, d)| d < a - 1.0)
                    .collect();
                p.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
                p
            } else {
                let alphas = alphas.unwrap_or_else(|| vec![1.5, 2.0, 3.0]);
                let deltas = deltas
                    .unwrap_or_else(|| linear_grid(delta_max.unwrap_or(0.4), points.unwrap_or(9)));
                check_grid(&alphas, "alphas")?;
                check_grid(&deltas, "deltas")?;
                let mut p: Points = alphas
                    .iter()
                    .flat_map(|&a| deltas.iter().map(move |&d| (a, d)))
                    .filter(|&(a, d)| d < a - 1.0)
                    .collect();
                p.sort_by(|x, y| x.1.total_cmp(&y.1).then(x.0.total_cmp(&y.0)));
                p
            };
            let absolute = args.id == 3;
            points_vec
                .par_iter()
                .map(|&(alpha, delta)| {
                    let res =
                        Geometry::new(alpha, delta).and_then(|g| energy::exact_delta_e(&g, policy));
                    match res {
                        Ok(e) => {
                            let mut rows =
                                Row::from_energy(alpha, Some(delta), "exact", &e, &pols, |_| 1.0);
                            if absolute {
                                for r in &mut rows {
                                    r.energy = r.energy.map(f64::abs);
                                }
                            }
                            rows
                        }
                        Err(err) => Row::failed(alpha, Some(delta), "exact", &pols, &err),
                    }
                })
                .flatten()
                .collect()
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown figure {other} (expected 2, 3 or 4)"
            )))
        }
    };
    Ok(SweepResult {
        rows,
        metadata: Metadata::now(*policy),
    })
}

/// Energy at each order cut, then escalated energies at each tolerance.
pub fn converge_sweep(
    args: &ConvergeArgs,
    cfg: &Config,
    policy: &NumericsPolicy,
) -> Result<SweepResult> {
    let alpha = cfg
        .pick(args.alpha, "alpha")?
        .ok_or_else(|| Error::InvalidArgument("--alpha is required".to_string()))?;
    let delta = cfg.pick(args.delta, "delta")?.unwrap_or(0.0);
    let g = Geometry::new(alpha, delta)?;
    let cuts: Vec<usize> = match cfg.pick_list(list(&args.cuts), "cuts")? {
        Some(list) => {
            if list.iter().any(|c| !(*c >= 0.0 && c.fract() == 0.0)) {
                return Err(Error::InvalidArgument(
                    "cuts must be non-negative integers".to_string(),
                ));
            }
            list.into_iter().map(|c| c as usize).collect()
        }
        None => {
            let lo: usize = cfg.pick(args.min_cut, "min_cut")?.unwrap_or(4).max(1);
            let hi: usize = cfg.pick(args.max_cut, "max_cut")?.unwrap_or(128);
            std::iter::successors(Some(lo), |c| Some(c * 2))
                .take_while(|&c| c <= hi)
                .collect()
        }
    };
    let tols = cfg
        .pick_list(list(&args.tols), "tols")?
        .unwrap_or_else(|| vec![1e-4, 1e-6, 1e-8]);
    let pols = Channel::ALL;

    let mut rows: Vec<Row> = cuts
        .par_iter()
        .map(|&n| match energy::exact_energy_at_cut(&g, policy, n) {
            Ok(e) => Row::from_energy(alpha, Some(delta), "fixed_cut", &e, &pols, |_| 1.0),
            Err(err) => Row::failed(alpha, Some(delta), "fixed_cut", &pols, &err),
        })
        .flatten()
        .collect();
    let refined: Vec<Row> = tols
        .par_iter()
        .map(|&tol| {
            let p = NumericsPolicy {
                rel_tol: tol,
                ..*policy
            };
            match energy::exact_energy(&g, &p) {
                Ok(e) => Row::from_energy(alpha, Some(delta), "exact", &e, &pols, |_| 1.0),
                Err(err) => Row::failed(alpha, Some(delta), "exact", &pols, &err),
            }
        })
        .flatten()
        .collect();
    rows.extend(refined);
    Ok(SweepResult {
        rows,
        metadata: Metadata::now(*policy),
    })
}

fn emit(sweep: &SweepResult, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "{}", sweep.metadata_line());
    let text = if json {
        sweep.to_json_lines()
    } else {
        sweep.to_csv()
    };
    let _ = out.write_all(text.as_bytes());
    for r in sweep.rows.iter().filter(|r| r.is_failure()) {
        let _ = writeln!(
            err,
            "failed: alpha = {} delta = {} pol = {}: {}",
            format_float(r.alpha),
            r.delta.map(format_float).unwrap_or_default(),
            r.pol,
            r.flag
        );
    }
    if sweep.has_failures() {
        EXIT_PARTIAL_FAILURE
    } else {
        EXIT_OK
    }
}

fn cmd_figure(args: &FigureArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cfg = load_config(&args.common)?;
    let policy = policy_from(&args.common, &cfg)?;
    let json = cfg.flag(args.common.json, "json")?;
    let threads = cfg.pick(args.common.threads, "threads")?;
    let sweep = with_threads(threads, || figure_sweep(args, &cfg, &policy))??;
    Ok(emit(&sweep, json, out, err))
}

fn cmd_converge(args: &ConvergeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cfg = load_config(&args.common)?;
    let policy = policy_from(&args.common, &cfg)?;
    let json = cfg.flag(args.common.json, "json")?;
    let threads = cfg.pick(args.common.threads, "threads")?;
    let sweep = with_threads(threads, || converge_sweep(args, &cfg, &policy))??;
    Ok(emit(&sweep, json, out, err))
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_INVALID_INPUT
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Energy(a) => cmd_energy(a, out, err),
        Command::Figure(a) => cmd_figure(a, out, err),
        Command::Converge(a) => cmd_converge(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => report_error(err, &e),
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    code
}
