//! Command-line front end: `diag`, `evolve` and `conformance`.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a numerical check exceeded
//! its tolerance. Configuration comes from flags, optionally layered over a
//! JSON file given with `--config`; flags win.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::conformance;
use crate::multivector::Multivector;
use crate::oracle::{self, StateVector2};
use crate::spinor::{AlgebraicSpinor, CenterScalar};
use crate::tss::{self, FieldConfig, Hamiltonian};

/// Default residual tolerance for `diag` and `evolve --check`.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

pub const CSV_HEADER: &str = "t,p_plus,p_minus,s1,s2,s3,u1,u2,u3";

#[derive(Parser, Debug)]
#[command(name = "ga-tss", version, about = "Two-state quantum systems in the geometric algebra of 3D space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Diagonalize a Hamiltonian by rotating its vector part onto e3.
    Diag(RunArgs),
    /// Evolve a spin in a static field and emit a trajectory.
    Evolve(RunArgs),
    /// Run the seeded invariant suites against the matrix oracle.
    Conformance(ConformanceArgs),
}

#[derive(Args, Debug, Default)]
struct RunArgs {
    /// Hamiltonian coefficients h0,h1,h2,h3.
    #[arg(long = "h", value_name = "H0,H1,H2,H3", allow_hyphen_values = true)]
    h: Option<String>,
    /// Magnetic field b1,b2,b3.
    #[arg(long = "B", value_name = "B1,B2,B3", allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    hbar: Option<f64>,
    /// Tilt of the initial state towards e1 about e2, in radians.
    #[arg(long, allow_hyphen_values = true)]
    theta0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_end: Option<f64>,
    /// Number of grid points.
    #[arg(long)]
    steps: Option<usize>,
    /// Initial state before the tilt: plus, minus, or re+,ps+,re-,ps-.
    #[arg(long, allow_hyphen_values = true)]
    init: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Recompute with the matrix oracle and report deviations.
    #[arg(long, alias = "check-rabi")]
    check: bool,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
struct ConformanceArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Initial state given by name or by amplitudes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialState {
    Named(NamedState),
    Amplitudes { c_plus: CenterScalar, c_minus: CenterScalar },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedState {
    Plus,
    Minus,
}

impl InitialState {
    pub fn spinor(&self) -> AlgebraicSpinor {
        match self {
            Self::Named(NamedState::Plus) => AlgebraicSpinor::plus(),
            Self::Named(NamedState::Minus) => AlgebraicSpinor::minus(),
            Self::Amplitudes { c_plus, c_minus } => AlgebraicSpinor::from_amplitudes(*c_plus, *c_minus),
        }
    }
}

/// Run configuration as read from a `--config` JSON file. Every field is optional.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// `[h0, h1, h2, h3]`.
    pub h: Option<[f64; 4]>,
    #[serde(alias = "B")]
    pub b: Option<[f64; 3]>,
    pub q: Option<f64>,
    pub m: Option<f64>,
    pub hbar: Option<f64>,
    pub theta0: Option<f64>,
    pub t_start: Option<f64>,
    pub t_end: Option<f64>,
    pub steps: Option<usize>,
    pub initial: Option<InitialState>,
    pub format: Option<Format>,
    pub check: Option<bool>,
    pub tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Source {
    Hamiltonian(Hamiltonian),
    Field(FieldConfig),
}

/// Validated configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct Resolved {
    pub source: Source,
    pub theta0: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub steps: usize,
    pub initial: InitialState,
    pub format: Format,
    pub check: bool,
    pub tol: f64,
}

/// Failure of a command, mapped onto the exit-code contract.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("tolerance exceeded: {0}")]
    Tolerance(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Tolerance(_) => 2,
        }
    }
}

type CmdResult = Result<(), CliError>;

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let result = match cli.command {
        Command::Diag(a) => resolve(a).and_then(|c| cmd_diag(&c, out)),
        Command::Evolve(a) => resolve(a).and_then(|c| cmd_evolve(&c, out, err)),
        Command::Conformance(a) => cmd_conformance(&a, out),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            match &f {
                CliError::Usage(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                }
                CliError::Tolerance(msg) => {
                    let _ = writeln!(err, "tolerance exceeded: {msg}");
                }
            }
            f.code()
        }
    }
}

fn parse_list<const N: usize>(s: &str, flag: &str) -> Result<[f64; N], CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("--{flag}: {e}")))?;
    parts
        .try_into()
        .map_err(|v: Vec<f64>| CliError::Usage(format!("--{flag} expects {N} numbers, got {}", v.len())))
}

fn parse_initial(s: &str) -> Result<InitialState, CliError> {
    match s {
        "plus" => Ok(InitialState::Named(NamedState::Plus)),
        "minus" => Ok(InitialState::Named(NamedState::Minus)),
        _ => {
            let [a, b, c, d] = parse_list::<4>(s, "init")?;
            Ok(InitialState::Amplitudes {
                c_plus: CenterScalar::new(a, b),
                c_minus: CenterScalar::new(c, d),
            })
        }
    }
}

fn resolve(args: RunArgs) -> Result<Resolved, CliError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<RunConfig>(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if let Some(h) = &args.h {
        cfg.h = Some(parse_list::<4>(h, "h")?);
    }
    if let Some(b) = &args.b {
        cfg.b = Some(parse_list::<3>(b, "B")?);
    }
    if let Some(init) = &args.init {
        cfg.initial = Some(parse_initial(init)?);
    }
    macro_rules! overlay {
        ($($field:ident),*) => { $( if args.$field.is_some() { cfg.$field = args.$field; } )* };
    }
    overlay!(q, m, hbar, theta0, t_start, t_end, steps, format, tol);
    if args.check {
        cfg.check = Some(true);
    }
    resolve_config(cfg)
}

/// Applies defaults and checks the invariants of a run configuration.
pub fn resolve_config(cfg: RunConfig) -> Result<Resolved, CliError> {
    let source = match (cfg.h, cfg.b) {
        (Some(_), Some(_)) => {
            return Err(usage("give either a Hamiltonian (--h) or a field (--B), not both"))
        }
        (None, None) => return Err(usage("a Hamiltonian (--h) or a field (--B) is required")),
        (Some([h0, h1, h2, h3]), None) => {
            Source::Hamiltonian(Hamiltonian::new(h0, [h1, h2, h3]).map_err(usage)?)
        }
        (None, Some(b)) => Source::Field(
            FieldConfig::new(b, cfg.q.unwrap_or(1.0), cfg.m.unwrap_or(1.0), cfg.hbar.unwrap_or(1.0))
                .map_err(usage)?,
        ),
    };
    let t_start = cfg.t_start.unwrap_or(0.0);
    let t_end = cfg.t_end.unwrap_or(t_start);
    let steps = cfg.steps.unwrap_or(1);
    let theta0 = cfg.theta0.unwrap_or(0.0);
    let tol = cfg.tol.unwrap_or(DEFAULT_TOLERANCE);
    if !(t_start.is_finite() && t_end.is_finite() && theta0.is_finite()) {
        return Err(usage("times and theta0 must be finite"));
    }
    if steps < 1 {
        return Err(usage("--steps must be at least 1"));
    }
    if t_end < t_start {
        return Err(usage(format!("--t-end ({t_end}) is before --t-start ({t_start})")));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    let initial = cfg.initial.unwrap_or(InitialState::Named(NamedState::Plus));
    initial.spinor().check_normalized().map_err(usage)?;
    Ok(Resolved {
        source,
        theta0,
        t_start,
        t_end,
        steps,
        initial,
        format: cfg.format.unwrap_or_default(),
        check: cfg.check.unwrap_or(false),
        tol,
    })
}

impl Resolved {
    /// `steps` evenly spaced points from `t_start` to `t_end` inclusive.
    pub fn time_grid(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.t_start];
        }
        let dt = (self.t_end - self.t_start) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.t_end } else { self.t_start + dt * i as f64 })
            .collect()
    }

    /// `exp(-i e2 theta0/2)` applied to the named or given initial state.
    pub fn initial_spinor(&self) -> AlgebraicSpinor {
        let tilt = crate::Rotor::axis_angle([0.0, 1.0, 0.0], self.theta0).expect("unit axis");
        self.initial.spinor().left_mul(&tilt.as_multivector())
    }
}

/// 17 significant digits, locale independent.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize)]
struct DiagReport {
    h0: f64,
    h: [f64; 3],
    e_plus: f64,
    e_minus: f64,
    degenerate: bool,
    theta: f64,
    phi: f64,
    rotor: Multivector,
    psi_plus: AlgebraicSpinor,
    psi_minus: AlgebraicSpinor,
    residuals: DiagResiduals,
}

#[derive(Serialize)]
struct DiagResiduals {
    eigenvalue: f64,
    eigenvector_overlap: f64,
    eigen_relation: f64,
    diagonalization: f64,
}

impl DiagResiduals {
    fn worst(&self) -> f64 {
        self.eigenvalue
            .max(self.eigenvector_overlap)
            .max(self.eigen_relation)
            .max(self.diagonalization)
    }
}

fn cmd_diag(cfg: &Resolved, out: &mut dyn Write) -> CmdResult {
    let h = match cfg.source {
        Source::Hamiltonian(h) => h,
        Source::Field(f) => tss::hamiltonian_from_field(&f),
    };
    let es = tss::eigensystem(&h);
    let diag = tss::diagonalize(&h);
    let hm = h.to_multivector();

    let reference = oracle::eigen_hermitian(&oracle::rep(&hm)).map_err(usage)?;
    let eigenvalue = (reference.values[0] - es.e_plus)
        .abs()
        .max((reference.values[1] - es.e_minus).abs());
    let overlap = |v: &StateVector2, psi: &AlgebraicSpinor| (1.0 - v.dot(&oracle::spinor_rep(psi)).norm()).abs();
    let eigenvector_overlap = if es.degenerate {
        0.0
    } else {
        overlap(&reference.vectors[0], &es.psi_plus).max(overlap(&reference.vectors[1], &es.psi_minus))
    };
    let relation = |psi: &AlgebraicSpinor, e: f64| (psi.left_mul(&hm) - e * *psi).as_multivector().norm();
    let residuals = DiagResiduals {
        eigenvalue,
        eigenvector_overlap,
        eigen_relation: relation(&es.psi_plus, es.e_plus).max(relation(&es.psi_minus, es.e_minus)),
        diagonalization: diag.route_mismatch(),
    };
    let scale = 1.0f64.max(h.h0.abs() + h.r_norm());
    let worst = residuals.worst();

    let report = DiagReport {
        h0: h.h0,
        h: h.h,
        e_plus: es.e_plus,
        e_minus: es.e_minus,
        degenerate: es.degenerate,
        theta: es.theta,
        phi: es.phi,
        rotor: es.rotor.as_multivector(),
        psi_plus: es.psi_plus,
        psi_minus: es.psi_minus,
        residuals,
    };
    match cfg.format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&report).map_err(usage)?;
            writeln!(out, "{text}").map_err(usage)?;
        }
        Format::Csv => write_diag_text(&report, out).map_err(usage)?,
    }
    if worst > cfg.tol * scale {
        return Err(CliError::Tolerance(format!("diag residual {worst:e} > {:e}", cfg.tol * scale)));
    }
    Ok(())
}

fn write_diag_text(r: &DiagReport, out: &mut dyn Write) -> std::io::Result<()> {
    let amp = |psi: &AlgebraicSpinor| {
        let (p, m) = psi.to_amplitudes();
        format!("c_plus = {} + {} i, c_minus = {} + {} i", fmt17(p.re), fmt17(p.ps), fmt17(m.re), fmt17(m.ps))
    };
    writeln!(out, "hamiltonian: {}", Multivector::scalar(r.h0) + Multivector::vector(r.h))?;
    writeln!(out, "e_plus: {}", fmt17(r.e_plus))?;
    writeln!(out, "e_minus: {}", fmt17(r.e_minus))?;
    writeln!(out, "degenerate: {}", r.degenerate)?;
    writeln!(out, "theta: {}", fmt17(r.theta))?;
    writeln!(out, "phi: {}", fmt17(r.phi))?;
    let coeffs: Vec<String> = r.rotor.coeffs().iter().map(|x| fmt17(*x)).collect();
    writeln!(out, "rotor: [{}]", coeffs.join(", "))?;
    writeln!(out, "rotor (blades): {}", r.rotor)?;
    writeln!(out, "psi_plus: {}", amp(&r.psi_plus))?;
    writeln!(out, "psi_minus: {}", amp(&r.psi_minus))?;
    let res = &r.residuals;
    writeln!(out, "residual eigenvalue: {:e}", res.eigenvalue)?;
    writeln!(out, "residual eigenvector_overlap: {:e}", res.eigenvector_overlap)?;
    writeln!(out, "residual eigen_relation: {:e}", res.eigen_relation)?;
    writeln!(out, "residual diagonalization: {:e}", res.diagonalization)?;
    Ok(())
}

/// One output row of `evolve`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub p_plus: f64,
    pub p_minus: f64,
    pub s: [f64; 3],
    pub u: [f64; 3],
}

impl TrajectoryRow {
    fn columns(&self) -> [f64; 9] {
        [self.t, self.p_plus, self.p_minus, self.s[0], self.s[1], self.s[2], self.u[0], self.u[1], self.u[2]]
    }
}

/// GA pipeline for a single grid point.
pub fn trajectory_row(cfg: &FieldConfig, psi0: &AlgebraicSpinor, t: f64) -> TrajectoryRow {
    let u = tss::field_evolution_rotor(cfg, t);
    let psi = tss::evolve(psi0, &u);
    TrajectoryRow {
        t,
        p_plus: tss::probability(&AlgebraicSpinor::plus(), &psi),
        p_minus: tss::probability(&AlgebraicSpinor::minus(), &psi),
        s: [1, 2, 3].map(|i| tss::expectation(&Hamiltonian::spin(i, cfg.hbar), &psi)),
        u: u.rotate_vector([0.0, 0.0, 1.0]),
    }
}

/// Matrix-oracle pipeline for a single grid point.
pub fn oracle_row(cfg: &FieldConfig, psi0: &StateVector2, t: f64) -> TrajectoryRow {
    let k = -cfg.q * cfg.hbar / (2.0 * cfg.m);
    let h = oracle::hermitian_from_coeffs(0.0, cfg.b.map(|x| k * x));
    let psi = oracle::evolve_matrix(psi0, &h, t, cfg.hbar);
    let spin = |i: usize| oracle::hermitian_from_coeffs(0.0, std::array::from_fn(|j| if j + 1 == i { 0.5 * cfg.hbar } else { 0.0 }));
    TrajectoryRow {
        t,
        p_plus: oracle::probability_matrix(&StateVector2::PLUS, &psi),
        p_minus: oracle::probability_matrix(&StateVector2::MINUS, &psi),
        s: [1, 2, 3].map(|i| oracle::expectation_matrix(&spin(i), &psi)),
        u: oracle::evolve_matrix(&StateVector2::PLUS, &h, t, cfg.hbar).bloch_vector(),
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

fn cmd_evolve(cfg: &Resolved, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let field = match cfg.source {
        Source::Field(f) => f,
        Source::Hamiltonian(_) => return Err(usage("evolve needs a field (--B), not a Hamiltonian")),
    };
    if cfg.check && field.b_norm() == 0.0 {
        return Err(usage("--check needs a nonzero field"));
    }
    let psi0 = cfg.initial_spinor();
    let rabi_applies = psi0 == AlgebraicSpinor::plus();
    let grid = cfg.time_grid();

    let mut names: Vec<&str> = CSV_HEADER.split(',').collect();
    let mut columns: Vec<Vec<f64>> = vec![Vec::with_capacity(grid.len()); names.len()];
    if cfg.check {
        names.extend(["dev_p", "dev_s", "dev_u"]);
        if rabi_applies {
            names.push("dev_rabi");
        }
        columns.resize(names.len(), Vec::with_capacity(grid.len()));
    }

    let psi0_matrix = oracle::spinor_rep(&psi0);
    let mut worst = 0.0f64;
    for &t in &grid {
        let row = trajectory_row(&field, &psi0, t);
        let mut values = row.columns().to_vec();
        if cfg.check {
            let reference = oracle_row(&field, &psi0_matrix, t);
            let dev_p = max_abs_diff(&[row.p_plus, row.p_minus], &[reference.p_plus, reference.p_minus]);
            let dev_s = max_abs_diff(&row.s, &reference.s);
            let dev_u = max_abs_diff(&row.u, &reference.u);
            values.extend([dev_p, dev_s, dev_u]);
            worst = worst.max(dev_p).max(dev_s).max(dev_u);
            if rabi_applies {
                let closed = tss::rabi_probability(&field, t);
                let dev_rabi = (closed - row.p_minus).abs().max((closed - reference.p_minus).abs());
                values.push(dev_rabi);
                worst = worst.max(dev_rabi);
            }
        }
        for (col, v) in columns.iter_mut().zip(values) {
            col.push(v);
        }
    }

    match cfg.format {
        Format::Csv => write_csv(&names, &columns, out).map_err(usage)?,
        Format::Json => write_json(&names, &columns, out).map_err(usage)?,
    }
    if cfg.check {
        let _ = writeln!(err, "max deviation: {worst:e} (tolerance {:e})", cfg.tol);
        if !(worst <= cfg.tol) {
            return Err(CliError::Tolerance(format!("evolve deviation {worst:e} > {:e}", cfg.tol)));
        }
    }
    Ok(())
}

fn write_csv(names: &[&str], columns: &[Vec<f64>], out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{}", names.join(","))?;
    let rows = columns.first().map_or(0, Vec::len);
    for i in 0..rows {
        let line: Vec<String> = columns.iter().map(|c| fmt17(c[i])).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

fn write_json(names: &[&str], columns: &[Vec<f64>], out: &mut dyn Write) -> std::io::Result<()> {
    write!(out, "{{")?;
    for (i, (name, col)) in names.iter().zip(columns).enumerate() {
        if i > 0 {
            write!(out, ",")?;
        }
        write!(out, "{}:{}", serde_json::to_string(name)?, serde_json::to_string(col)?)?;
    }
    writeln!(out, "}}")
}

fn cmd_conformance(args: &ConformanceArgs, out: &mut dyn Write) -> CmdResult {
    if args.count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let report = conformance::run(args.seed, args.count);
    match args.format.unwrap_or_default() {
        Format::Json => {
            let text = serde_json::to_string_pretty(&report).map_err(usage)?;
            writeln!(out, "{text}").map_err(usage)?;
        }
        Format::Csv => {
            writeln!(out, "seed {}", report.seed).map_err(usage)?;
            for suite in &report.suites {
                writeln!(out, "{suite}").map_err(usage)?;
            }
        }
    }
    if report.all_passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = report.suites.iter().filter(|s| !s.passed()).map(|s| s.name).collect();
        Err(CliError::Tolerance(format!("failed suites: {}", failed.join(", "))))
    }
}
