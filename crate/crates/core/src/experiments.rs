//! Numerical experiments behind the command-line tools: fixed-step
//! convergence tables, tolerance sweeps, the pendulum run and stability scans.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use thiserror::Error;

use crate::conditions::{r_infinity, stability_function};
use crate::dae::MassMatrixForm;
use crate::linalg::LinalgError;
use crate::problems::{
    error_metrics, Benchmark, BenchmarkProblem, Hyperbolic, MetricsError, Parabolic, Pendulum,
    PendulumError, Prob1, ProtheroRobinson,
};
use crate::stepper::{
    integrate_adaptive, integrate_fixed, AdaptiveOptions, HalfExplicitStepper, IntegrationStats,
    RowStepper, StepError, Trajectory,
};
use crate::tableau::{RowTableau, TableauKind};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Step(#[from] StepError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Pendulum(#[from] PendulumError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{0}")]
    Invalid(String),
}

/// A benchmark and its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProblemSpec {
    Prob1,
    ProtheroRobinson { lambda: f64 },
    Parabolic { nx: usize },
    Hyperbolic { nx: usize },
    Pendulum { n: usize },
}

impl ProblemSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ProblemSpec::Prob1 => "prob1",
            ProblemSpec::ProtheroRobinson { .. } => "prothero-robinson",
            ProblemSpec::Parabolic { .. } => "parabolic",
            ProblemSpec::Hyperbolic { .. } => "hyperbolic",
            ProblemSpec::Pendulum { .. } => "pendulum",
        }
    }

    /// Semi-discretized PDEs are stiff; explicit-stage methods need `--force`.
    pub fn is_stiff_pde(&self) -> bool {
        matches!(
            self,
            ProblemSpec::Parabolic { .. } | ProblemSpec::Hyperbolic { .. }
        )
    }

    pub fn build(&self) -> Result<Box<dyn BenchmarkProblem>, ExperimentError> {
        Ok(match *self {
            ProblemSpec::Prob1 => Box::new(Prob1),
            ProblemSpec::ProtheroRobinson { lambda } => {
                if lambda.is_nan() || lambda <= 0.0 {
                    return Err(ExperimentError::Invalid(format!(
                        "lambda must be positive, got {lambda}"
                    )));
                }
                Box::new(ProtheroRobinson::new(lambda))
            }
            ProblemSpec::Parabolic { nx } => {
                check_nodes(nx, 3)?;
                Box::new(Parabolic::new(nx))
            }
            ProblemSpec::Hyperbolic { nx } => {
                check_nodes(nx, 2)?;
                Box::new(Hyperbolic::new(nx))
            }
            ProblemSpec::Pendulum { n } => Box::new(Pendulum::new(n)?),
        })
    }
}

fn check_nodes(nx: usize, min: usize) -> Result<(), ExperimentError> {
    if nx < min {
        return Err(ExperimentError::Invalid(format!(
            "need at least {min} grid nodes, got {nx}"
        )));
    }
    Ok(())
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemSpec::Prob1 => write!(f, "prob1"),
            ProblemSpec::ProtheroRobinson { lambda } => {
                write!(f, "prothero-robinson(lambda={lambda})")
            }
            ProblemSpec::Parabolic { nx } => write!(f, "parabolic(nx={nx})"),
            ProblemSpec::Hyperbolic { nx } => write!(f, "hyperbolic(nx={nx})"),
            ProblemSpec::Pendulum { n } => write!(f, "pendulum(n={n})"),
        }
    }
}

impl FromStr for ProblemSpec {
    type Err = String;

    /// Parses a bare problem name with default parameters.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prob1" => Ok(ProblemSpec::Prob1),
            "prothero-robinson" | "pr" => Ok(ProblemSpec::ProtheroRobinson { lambda: 10.0 }),
            "parabolic" => Ok(ProblemSpec::Parabolic { nx: 250 }),
            "hyperbolic" => Ok(ProblemSpec::Hyperbolic { nx: 250 }),
            "pendulum" => Ok(ProblemSpec::Pendulum { n: 5 }),
            other => Err(format!(
                "unknown problem `{other}` (expected prob1, prothero-robinson, parabolic, hyperbolic or pendulum)"
            )),
        }
    }
}

/// Fixed-step integration with whichever stepper matches the tableau.
pub fn run_fixed(
    problem: &dyn BenchmarkProblem,
    tab: &RowTableau,
    h: f64,
    t_end: f64,
    keep_dense: bool,
) -> Result<Trajectory, StepError> {
    let (t0, u0) = (problem.t0(), problem.initial_state());
    match tab.kind() {
        TableauKind::HalfExplicit => {
            let mut s = HalfExplicitStepper::new(problem, tab)?;
            integrate_fixed(&mut s, t0, &u0, h, t_end, keep_dense)
        }
        TableauKind::Row => {
            let form = MassMatrixForm(problem);
            let mut s = RowStepper::new(&form, tab)?;
            integrate_fixed(&mut s, t0, &u0, h, t_end, keep_dense)
        }
    }
}

/// Adaptive integration with whichever stepper matches the tableau.
pub fn run_adaptive(
    problem: &dyn BenchmarkProblem,
    tab: &RowTableau,
    t_end: f64,
    opts: &AdaptiveOptions,
) -> Result<Trajectory, StepError> {
    let (t0, u0) = (problem.t0(), problem.initial_state());
    match tab.kind() {
        TableauKind::HalfExplicit => {
            let mut s = HalfExplicitStepper::new(problem, tab)?;
            integrate_adaptive(&mut s, t0, &u0, t_end, opts)
        }
        TableauKind::Row => {
            let form = MassMatrixForm(problem);
            let mut s = RowStepper::new(&form, tab)?;
            integrate_adaptive(&mut s, t0, &u0, t_end, opts)
        }
    }
}

/// `log2(e_coarse / e_fine)`, undefined unless both errors are positive.
pub fn observed_order(e_coarse: f64, e_fine: f64) -> Option<f64> {
    (e_coarse > 0.0 && e_fine > 0.0).then(|| (e_coarse / e_fine).log2())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderRow {
    pub h: f64,
    pub err_main: f64,
    pub order_main: Option<f64>,
    pub err_embedded: Option<f64>,
    pub order_embedded: Option<f64>,
}

fn endpoint_error(
    problem: &dyn BenchmarkProblem,
    tab: &RowTableau,
    h: f64,
    t_end: f64,
) -> Result<f64, ExperimentError> {
    let traj = run_fixed(problem, tab, h, t_end, false)?;
    error_metrics(&traj, problem)?.endpoint.ok_or_else(|| {
        ExperimentError::Invalid(format!("{} has no exact solution", problem.label()))
    })
}

/// Endpoint errors at `h0, h0/2, ..` for the main weights and, separately
/// integrated, the embedded weights.
pub fn order_test(
    tab: &RowTableau,
    problem: &dyn BenchmarkProblem,
    h0: f64,
    levels: usize,
    t_end: Option<f64>,
) -> Result<Vec<OrderRow>, ExperimentError> {
    if levels == 0 || h0.is_nan() || h0 <= 0.0 {
        return Err(ExperimentError::Invalid(
            "need h0 > 0 and at least one level".into(),
        ));
    }
    let t_end = t_end.unwrap_or_else(|| problem.t_end());
    let embedded = tab.embedded_as_main();
    let mut rows: Vec<OrderRow> = Vec::with_capacity(levels);
    for level in 0..levels {
        let h = h0 / f64::from(1u32 << level.min(31));
        let err_main = endpoint_error(problem, tab, h, t_end)?;
        // The embedded weights alone need not define a convergent method
        // (e.g. a first-stage estimate on a DAE); a failed run leaves the
        // column empty instead of aborting the table.
        let err_embedded = embedded
            .as_ref()
            .and_then(|e| endpoint_error(problem, e, h, t_end).ok());
        let prev = rows.last();
        rows.push(OrderRow {
            h,
            err_main,
            order_main: prev.and_then(|p| observed_order(p.err_main, err_main)),
            err_embedded,
            order_embedded: prev
                .and_then(|p| Some((p.err_embedded?, err_embedded?)))
                .and_then(|(a, b)| observed_order(a, b)),
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorkData {
    pub err_l2: f64,
    pub err_l2_interp: Option<f64>,
    pub err_endpoint: f64,
    pub stats: IntegrationStats,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorkRow {
    pub rtol: f64,
    pub atol: f64,
    /// A failed integration is reported per row, the sweep continues.
    pub outcome: Result<WorkData, String>,
}

/// Adaptive runs for each tolerance (`atol = rtol * atol_ratio`), in the
/// order given.
pub fn work_precision(
    tab: &RowTableau,
    problem: &dyn BenchmarkProblem,
    tols: &[f64],
    atol_ratio: f64,
    t_end: Option<f64>,
) -> Result<Vec<WorkRow>, ExperimentError> {
    if tols.is_empty() {
        return Err(ExperimentError::Invalid("tolerance list is empty".into()));
    }
    let keep_dense = tab.dense().is_some();
    let t_end = t_end.unwrap_or_else(|| problem.t_end());
    Ok(tols
        .iter()
        .map(|&rtol| {
            let atol = rtol * atol_ratio;
            let opts = AdaptiveOptions::new(rtol, atol).with_dense(keep_dense);
            let start = Instant::now();
            let outcome = run_adaptive(problem, tab, t_end, &opts)
                .map_err(|e| e.to_string())
                .and_then(|traj| {
                    let wall_seconds = start.elapsed().as_secs_f64();
                    let m = error_metrics(&traj, problem).map_err(|e| e.to_string())?;
                    Ok(WorkData {
                        err_l2: m.l2_steps.unwrap_or(f64::NAN),
                        err_l2_interp: m.l2_interp,
                        err_endpoint: m.endpoint.unwrap_or(f64::NAN),
                        stats: traj.stats,
                        wall_seconds,
                    })
                });
            WorkRow {
                rtol,
                atol,
                outcome,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PendulumRow {
    pub method: String,
    pub rtol: f64,
    pub atol: f64,
    pub stats: IntegrationStats,
    pub err_length: f64,
    /// Max-norm of the algebraic equations at the initial point.
    pub initial_residual: f64,
    pub wall_seconds: f64,
}

/// Adaptive run on the pendulum; the error is the largest drift of the total
/// rod length over the accepted steps.
pub fn pendulum_run(
    tab: &RowTableau,
    pendulum: &Pendulum,
    rtol: f64,
    atol: f64,
) -> Result<PendulumRow, ExperimentError> {
    use crate::dae::SemiExplicitDae;

    let u0 = pendulum.initial_state();
    let (y0, z0) = u0.split_at(pendulum.n_diff());
    let mut g0 = vec![0.0; pendulum.n_alg()];
    pendulum.g(0.0, y0, z0, &mut g0);
    let initial_residual = g0.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let start = Instant::now();
    let traj = run_adaptive(
        pendulum,
        tab,
        pendulum.t_end(),
        &AdaptiveOptions::new(rtol, atol),
    )?;
    let wall_seconds = start.elapsed().as_secs_f64();
    let m = error_metrics(&traj, pendulum)?;
    Ok(PendulumRow {
        method: tab.name().to_string(),
        rtol,
        atol,
        stats: traj.stats,
        err_length: m.custom.unwrap_or(f64::NAN),
        initial_residual,
        wall_seconds,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityRow {
    pub y: f64,
    /// `|R(iy)|`, or `None` where `I - iy B` is singular.
    pub abs_r: Option<f64>,
}

/// `|R(iy)|` on `points` logarithmically spaced `y` in `[y_min, y_max]`.
pub fn stability_scan(
    tab: &RowTableau,
    y_min: f64,
    y_max: f64,
    points: usize,
) -> Result<(Vec<StabilityRow>, f64), ExperimentError> {
    if !(y_min > 0.0 && y_max > y_min) || points < 2 {
        return Err(ExperimentError::Invalid(
            "need 0 < y_min < y_max and at least two points".into(),
        ));
    }
    let (l0, l1) = (y_min.log10(), y_max.log10());
    let rows = (0..points)
        .map(|k| {
            let y = 10f64.powf(l0 + (l1 - l0) * k as f64 / (points - 1) as f64);
            let abs_r = stability_function(tab, Complex64::new(0.0, y))
                .ok()
                .map(|r| r.norm());
            StabilityRow { y, abs_r }
        })
        .collect();
    Ok((rows, r_infinity(tab)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::{linearly_implicit_euler, ros2, tsit5da};

    #[test]
    fn problem_names_round_trip() {
        for name in [
            "prob1",
            "prothero-robinson",
            "parabolic",
            "hyperbolic",
            "pendulum",
        ] {
            let p: ProblemSpec = name.parse().unwrap();
            assert_eq!(p.name(), name);
        }
        assert!("heat".parse::<ProblemSpec>().is_err());
    }

    #[test]
    fn single_level_has_no_order() {
        let p = Prob1;
        let rows = order_test(&tsit5da(), &p, 0.125, 1, None).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].order_main.is_none());
        assert!(rows[0].err_embedded.is_some());
    }

    #[test]
    fn euler_scan_matches_closed_form() {
        let (rows, rinf) = stability_scan(&linearly_implicit_euler(), 1e-2, 1e6, 41).unwrap();
        for r in rows {
            let expect = 1.0 / (1.0 + r.y * r.y).sqrt();
            assert!((r.abs_r.unwrap() - expect).abs() < 1e-14);
        }
        assert_eq!(rinf, 0.0);
        let (rows, _) = stability_scan(&ros2(), 1e-2, 1e6, 81).unwrap();
        assert!(rows.iter().all(|r| r.abs_r.unwrap() <= 1.0 + 1e-14));
    }

    #[test]
    fn empty_tolerance_list_is_rejected() {
        assert!(work_precision(&ros2(), &Prob1, &[], 1.0, None).is_err());
    }
}
