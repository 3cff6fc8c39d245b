//! One function per subcommand. Each writes its artifacts and reports whether
//! every internal verification passed.

use std::collections::BTreeMap;
use std::path::PathBuf;

use gk_core::conslaw::ConservationReport;
use gk_core::diffalg::{Param, ParamPoly};
use gk_core::numerics::{integrate, Grid, GridState, PdeParams, StepperConfig};
use gk_core::poly::{rational_to_f64, RatFunc};
use gk_core::series::{generate, SeriesParams, SeriesSolution, SymbolicScalar};
use gk_core::symmetry::{invariance_residual, AnsatzDegrees, SymmetryReport};
use gk_core::tanhsolve::{standard_figures, FamilyId, FigureKind, TanhReport, TanhSymbol};
use num_rational::BigRational;
use serde::Serialize;

use crate::config::{ParamValue, RunConfig};
use crate::error::CliError;
use crate::output::{fmt_f64, Output};

/// Result of one subcommand.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub verified: bool,
    pub files: Vec<PathBuf>,
    pub summary: String,
}

#[derive(Serialize)]
struct Parameters(BTreeMap<&'static str, String>);

fn parameters(cfg: &RunConfig) -> Parameters {
    Parameters(
        Param::ALL
            .iter()
            .map(|&p| (p.name(), cfg.params.get(p).to_string()))
            .collect(),
    )
}

#[derive(Serialize)]
struct SymmetryOut<'a> {
    parameters: Parameters,
    #[serde(flatten)]
    report: &'a SymmetryReport,
    invariance_verified: Vec<bool>,
}

pub fn cmd_symmetries(cfg: &RunConfig, out: &Output) -> Result<Outcome, CliError> {
    let pde = cfg.params.pde();
    let report = SymmetryReport::compute(&pde, AnsatzDegrees::from(cfg.degrees))?;
    let checks = report
        .fields
        .iter()
        .map(|v| invariance_residual(v, &pde).map(|r| r.is_zero()))
        .collect::<Result<Vec<_>, _>>()?;
    let verified = checks.iter().all(|&b| b);
    let body = SymmetryOut {
        parameters: parameters(cfg),
        report: &report,
        invariance_verified: checks,
    };
    let path = out.report("symmetries", "symmetries", verified, &body)?;
    Ok(Outcome {
        verified,
        files: vec![path],
        summary: report.to_text(),
    })
}

#[derive(Serialize)]
struct ConservationOut<'a> {
    parameters: Parameters,
    #[serde(flatten)]
    report: &'a ConservationReport,
}

pub fn cmd_conslaws(cfg: &RunConfig, out: &Output) -> Result<Outcome, CliError> {
    let report = ConservationReport::compute(&cfg.params.pde(), AnsatzDegrees::from(cfg.degrees))?;
    let verified = report.currents.iter().all(|c| c.verified && c.nontrivial);
    let body = ConservationOut {
        parameters: parameters(cfg),
        report: &report,
    };
    let path = out.report("conslaws", "conslaws", verified, &body)?;
    Ok(Outcome {
        verified,
        files: vec![path],
        summary: report.to_text(),
    })
}

#[derive(Serialize)]
struct SeriesOut {
    parameters: Parameters,
    seeds: Vec<String>,
    order: usize,
    symbolic: bool,
    residual_order: Option<usize>,
    required_residual_order: usize,
}

fn series_seeds(cfg: &RunConfig) -> Result<Vec<BigRational>, CliError> {
    cfg.series
        .seeds
        .iter()
        .map(|s| match s {
            ParamValue::Rational(r) => Ok(r.clone()),
            ParamValue::Generic => Err(CliError::Config("series seeds must be numbers".into())),
        })
        .collect()
}

fn all_bound(cfg: &RunConfig) -> Option<SeriesParams<BigRational>> {
    let v = |p| match cfg.params.get(p) {
        ParamValue::Rational(r) => Some(r.clone()),
        ParamValue::Generic => None,
    };
    Some(SeriesParams {
        a: v(Param::A)?,
        lambda: v(Param::Lambda)?,
        alpha: v(Param::Alpha)?,
        mu: v(Param::Mu)?,
        beta: v(Param::Beta)?,
        c: v(Param::C)?,
    })
}

fn partially_bound(cfg: &RunConfig) -> SeriesParams<SymbolicScalar> {
    let v = |p| match cfg.params.get(p) {
        ParamValue::Rational(r) => RatFunc::from_rational(r.clone()),
        ParamValue::Generic => RatFunc::from_poly(ParamPoly::var(p.index())),
    };
    SeriesParams {
        a: v(Param::A),
        lambda: v(Param::Lambda),
        alpha: v(Param::Alpha),
        mu: v(Param::Mu),
        beta: v(Param::Beta),
        c: v(Param::C),
    }
}

pub fn cmd_series(cfg: &RunConfig, out: &Output) -> Result<Outcome, CliError> {
    let seeds = series_seeds(cfg)?;
    let order = cfg.series.order;
    // Residual terms through z^(N-5) involve only c_0..c_N.
    let required = order.saturating_sub(4);
    let (rows, residual_order, symbolic) = match all_bound(cfg) {
        Some(params) => {
            let sol: SeriesSolution<BigRational> = generate(&seeds, &params, order)?;
            let rows = sol
                .coefficients()
                .iter()
                .enumerate()
                .map(|(n, c)| vec![n.to_string(), c.to_string(), fmt_f64(rational_to_f64(c))])
                .collect::<Vec<_>>();
            (rows, sol.residual_order(), false)
        }
        None => {
            let seeds: Vec<SymbolicScalar> = seeds.into_iter().map(RatFunc::from_rational).collect();
            let sol = generate(&seeds, &partially_bound(cfg), order)?;
            let rows = sol
                .coefficients()
                .iter()
                .enumerate()
                .map(|(n, c)| vec![n.to_string(), c.to_string(), String::new()])
                .collect::<Vec<_>>();
            (rows, sol.residual_order(), true)
        }
    };
    let verified = residual_order.is_none_or(|k| k >= required);
    let table = out.table("series_coefficients", &["n", "coefficient", "value"], &rows)?;
    let body = SeriesOut {
        parameters: parameters(cfg),
        seeds: cfg.series.seeds.iter().map(ToString::to_string).collect(),
        order,
        symbolic,
        residual_order,
        required_residual_order: required,
    };
    let report = out.report("series", "series", verified, &body)?;
    let mut summary = format!("U(z) = sum c_n z^n, n = 0..{order}\n");
    for r in &rows {
        summary.push_str(&format!("c_{} = {}\n", r[0], r[1]));
    }
    summary.push_str(&match residual_order {
        Some(k) => format!("first nonzero residual at z^{k}\n"),
        None => "truncated series solves the ODE exactly\n".into(),
    });
    Ok(Outcome {
        verified,
        files: vec![table, report],
        summary,
    })
}

pub fn cmd_tanh(_cfg: &RunConfig, out: &Output) -> Result<Outcome, CliError> {
    let report = TanhReport::compute()?;
    let verified = report.all_verified();
    let path = out.report("tanh", "tanh", verified, &report)?;
    let mut summary = format!("balance M = {}\nODE: {} = 0\n", report.balance, report.ode);
    for f in &report.families {
        summary.push_str(&format!(
            "{}: verified {} (against the uncorrected ODE: {})\n",
            f.id, f.verified, f.verified_against_uncorrected
        ));
    }
    Ok(Outcome {
        verified,
        files: vec![path],
        summary,
    })
}

#[derive(Serialize)]
struct FigureEntry {
    number: u8,
    family: FamilyId,
    file: String,
    binding: BTreeMap<String, String>,
    speed: String,
    /// `u` on the line `x = c t`, which must equal `expected` exactly.
    crest_value: f64,
    expected: f64,
}

fn crest_expectation(sol: &gk_core::tanhsolve::BoundSolution) -> f64 {
    match sol.id {
        FamilyId::Set1 => 0.0,
        FamilyId::Set2 | FamilyId::Set3 => sol.value_f64(TanhSymbol::Coef(0)),
    }
}

pub fn cmd_figures(_cfg: &RunConfig, out: &Output) -> Result<Outcome, CliError> {
    let mut files = Vec::new();
    let mut entries = Vec::new();
    for fig in standard_figures() {
        let sol = fig.solution()?;
        let data = fig.sample()?;
        let rows: Vec<Vec<String>> = data
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| fmt_f64(v)).collect())
            .collect();
        let path = out.table(&fig.file_stem(), &data.columns, &rows)?;
        let t = match &fig.kind {
            FigureKind::Slice { t, .. } => t.clone(),
            FigureKind::Surface { .. } => BigRational::from_integer(1.into()),
        };
        let x = sol.speed() * &t;
        entries.push(FigureEntry {
            number: fig.number,
            family: fig.family,
            file: path
                .file_name()
                .map(|f| f.to_string_lossy().into_owned())
                .unwrap_or_default(),
            binding: fig
                .binding
                .iter()
                .map(|(k, v)| (k.name().to_string(), v.to_string()))
                .collect(),
            speed: sol.speed().to_string(),
            crest_value: sol.u_exact_z(&x, &t),
            expected: crest_expectation(&sol),
        });
        files.push(path);
    }
    let verified = entries.iter().all(|e| e.crest_value == e.expected);
    files.push(out.report("figures", "figures", verified, &entries)?);
    let summary = entries
        .iter()
        .map(|e| format!("fig {} ({}, c = {}): {}\n", e.number, e.family, e.speed, e.file))
        .collect();
    Ok(Outcome {
        verified,
        files,
        summary,
    })
}

#[derive(Serialize)]
struct SimulationOut {
    family: FamilyId,
    binding: BTreeMap<String, String>,
    pde: BTreeMap<&'static str, String>,
    speed: String,
    half_width: f64,
    points: usize,
    stepper: StepperConfig,
    t_end: f64,
    max_error: f64,
    mass_drift: f64,
    quadratic_drift: f64,
    error_tolerance: f64,
    drift_tolerance: f64,
}

pub fn cmd_simulate(cfg: &RunConfig, out: &Output) -> Result<Outcome, CliError> {
    let s = &cfg.simulate;
    let sol = s.family.family().bind(&s.binding()?)?;
    let f = |p| sol.value_f64(TanhSymbol::Param(p));
    let params = PdeParams {
        a: f(Param::A),
        lambda: f(Param::Lambda),
        alpha: f(Param::Alpha),
        mu: f(Param::Mu),
        beta: f(Param::Beta),
    };
    let grid = Grid::new(s.half_width, s.points)?;
    let stepper = StepperConfig {
        dt: s.dt,
        scheme: s.scheme,
        stencil_order: s.stencil_order,
    };
    let u0 = GridState::from_fn(&grid, 0.0, |x| sol.u(x, 0.0))?;
    let traj = integrate(&u0, &grid, &params, &stepper, s.t_end, s.snapshots)?;
    let last = traj.last();
    let exact: Vec<f64> = grid.xs().iter().map(|&x| sol.u(x, last.t)).collect();
    let max_error = last
        .u
        .iter()
        .zip(&exact)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let (mass_drift, quadratic_drift) = traj.max_relative_drift();

    let (_, m0, q0) = traj.diagnostics[0];
    let rel = |v: f64, v0: f64| if v0 == 0.0 { v.abs() } else { ((v - v0) / v0).abs() };
    let drift_rows: Vec<Vec<String>> = traj
        .diagnostics
        .iter()
        .map(|&(t, m, q)| {
            vec![fmt_f64(t), fmt_f64(m), fmt_f64(q), fmt_f64(rel(m, m0)), fmt_f64(rel(q, q0))]
        })
        .collect();
    let final_rows: Vec<Vec<String>> = grid
        .xs()
        .iter()
        .zip(&last.u)
        .zip(&exact)
        .map(|((&x, &u), &e)| vec![fmt_f64(x), fmt_f64(u), fmt_f64(e), fmt_f64((u - e).abs())])
        .collect();
    let mut files = vec![
        out.table(
            "simulate_drift",
            &["t", "mass", "quadratic", "mass_drift", "quadratic_drift"],
            &drift_rows,
        )?,
        out.table("simulate_final", &["x", "u", "exact", "error"], &final_rows)?,
    ];
    let verified = max_error < s.error_tolerance
        && mass_drift < s.drift_tolerance
        && quadratic_drift < s.drift_tolerance;
    let body = SimulationOut {
        family: s.family,
        binding: s.binding.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        pde: [Param::A, Param::Lambda, Param::Alpha, Param::Mu, Param::Beta]
            .iter()
            .map(|&p| (p.name(), sol.param(p).to_string()))
            .collect(),
        speed: sol.speed().to_string(),
        half_width: s.half_width,
        points: s.points,
        stepper,
        t_end: s.t_end,
        max_error,
        mass_drift,
        quadratic_drift,
        error_tolerance: s.error_tolerance,
        drift_tolerance: s.drift_tolerance,
    };
    files.push(out.report("simulate", "simulate", verified, &body)?);
    let summary = format!(
        "{} on [-{}, {}) with {} points to t = {}: max error {:.3e}, drift (mass {:.3e}, quadratic {:.3e})\n",
        s.family, s.half_width, s.half_width, s.points, s.t_end, max_error, mass_drift, quadratic_drift
    );
    Ok(Outcome {
        verified,
        files,
        summary,
    })
}
