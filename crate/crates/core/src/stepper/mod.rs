//! One-step integrators, fixed and adaptive drivers, dense output.
//!
//! Both steppers work on a single state vector. For semi-explicit problems it
//! is the stack `u = (y, z)`, and the stage vectors are the stacks `(l_i, k_i)`,
//! so the update, the embedded solution and the interpolant are the same
//! weighted sums in both cases.

mod half_explicit;
mod row;

use std::ops::AddAssign;
use std::sync::Arc;

use thiserror::Error;

use crate::linalg::axpy;
use crate::tableau::{DenseCoefficients, RowTableau, TableauKind};

pub use half_explicit::{half_explicit_step, HalfExplicitStepper};
pub use row::{row_step, RowStepper};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StepError {
    #[error("singular iteration matrix at t = {t} (h = {h:e})")]
    SingularIterationMatrix { t: f64, h: f64 },
    #[error("non-finite values in the state or right-hand side near t = {t}")]
    NonFiniteState { t: f64 },
    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepUnderflow { t: f64, h: f64 },
    #[error("tableau `{0}` has no dense-output coefficients")]
    MissingDenseCoefficients(String),
    #[error("tableau `{0}` has no embedded weights, adaptive stepping is impossible")]
    MissingEmbeddedWeights(String),
    #[error("expected a {expected} tableau, got {found}")]
    WrongKind {
        expected: TableauKind,
        found: TableauKind,
    },
    #[error("interval length {span} is not a whole number of steps of size {h}")]
    InvalidStepSize { h: f64, span: f64 },
    #[error("tolerances must be positive (rtol = {rtol}, atol = {atol})")]
    InvalidTolerance { rtol: f64, atol: f64 },
    #[error("gave up after {max} steps at t = {t}")]
    TooManySteps { t: f64, max: usize },
    #[error("state has {got} entries, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("t = {t} lies outside the integrated interval")]
    OutOfRange { t: f64 },
}

/// Work counters of one integration.
///
/// `nf` and `ng` count stage evaluations of `f` and `g` (for mass-matrix
/// problems every right-hand side call counts as `nf`). Calls made only to
/// build finite-difference derivatives are counted in `nfd` instead.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntegrationStats {
    pub nsucc: usize,
    pub nfail: usize,
    pub nf: usize,
    pub ng: usize,
    pub njac: usize,
    pub nlu: usize,
    pub nfd: usize,
}

impl AddAssign for IntegrationStats {
    fn add_assign(&mut self, o: Self) {
        self.nsucc += o.nsucc;
        self.nfail += o.nfail;
        self.nf += o.nf;
        self.ng += o.ng;
        self.njac += o.njac;
        self.nlu += o.nlu;
        self.nfd += o.nfd;
    }
}

/// `u0 + sum_i w_i stage_i`, summed in stage order and skipping zero weights.
///
/// The step update and the interpolant both go through here so that the
/// interpolant at `tau = 1` reproduces the step result bit for bit.
pub fn weighted_sum(u0: &[f64], stages: &[Vec<f64>], weights: &[f64]) -> Vec<f64> {
    let mut out = u0.to_vec();
    for (w, k) in weights.iter().zip(stages) {
        if *w != 0.0 {
            axpy(*w, k, &mut out);
        }
    }
    out
}

/// One attempted step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub t0: f64,
    pub h: f64,
    pub u1: Vec<f64>,
    /// Embedded solution, if the tableau has embedded weights.
    pub u1_hat: Option<Vec<f64>>,
    /// Stage increments `k_i`, or the stacks `(l_i, k_i)` for semi-explicit problems.
    pub stages: Vec<Vec<f64>>,
}

/// Weights shared by all segments of a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseWeights {
    pub name: String,
    pub b: Vec<f64>,
    pub dense: Option<DenseCoefficients>,
}

impl DenseWeights {
    pub fn from_tableau(t: &RowTableau) -> Self {
        Self {
            name: t.name().to_string(),
            b: t.b().to_vec(),
            dense: t.dense().cloned(),
        }
    }
}

/// Continuous extension over one accepted step.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSegment {
    pub t0: f64,
    pub h: f64,
    pub u0: Vec<f64>,
    pub stages: Vec<Vec<f64>>,
    pub weights: Arc<DenseWeights>,
}

impl DenseSegment {
    /// State at `t0 + tau h`.
    pub fn interpolate(&self, tau: f64) -> Result<Vec<f64>, StepError> {
        let dense = self
            .weights
            .dense
            .as_ref()
            .ok_or_else(|| StepError::MissingDenseCoefficients(self.weights.name.clone()))?;
        let w = dense.weights(&self.weights.b, tau);
        Ok(weighted_sum(&self.u0, &self.stages, &w))
    }
}

pub fn interpolate(seg: &DenseSegment, tau: f64) -> Result<Vec<f64>, StepError> {
    seg.interpolate(tau)
}

/// Accepted steps of one integration.
#[derive(Debug, Clone, Default)]
pub struct Trajectory {
    /// `times[0]` is the initial time; `states[k]` belongs to `times[k]`.
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    /// `segments[k]` spans `times[k]..times[k+1]`; kept only on request.
    pub segments: Option<Vec<DenseSegment>>,
    pub stats: IntegrationStats,
}

impl Trajectory {
    fn start(t0: f64, u0: &[f64], keep_dense: bool) -> Self {
        Self {
            times: vec![t0],
            states: vec![u0.to_vec()],
            segments: keep_dense.then(Vec::new),
            stats: IntegrationStats::default(),
        }
    }

    fn accept(&mut self, out: StepOutcome, u0: &[f64], weights: &Option<Arc<DenseWeights>>) {
        self.times.push(out.t0 + out.h);
        if let (Some(segs), Some(w)) = (self.segments.as_mut(), weights) {
            segs.push(DenseSegment {
                t0: out.t0,
                h: out.h,
                u0: u0.to_vec(),
                stages: out.stages,
                weights: Arc::clone(w),
            });
        }
        self.states.push(out.u1);
    }

    pub fn final_time(&self) -> f64 {
        *self
            .times
            .last()
            .expect("trajectory holds the initial point")
    }

    pub fn final_state(&self) -> &[f64] {
        self.states
            .last()
            .expect("trajectory holds the initial point")
    }

    pub fn steps(&self) -> usize {
        self.times.len() - 1
    }

    /// Dense-output value at time `t`.
    pub fn interpolate(&self, t: f64) -> Result<Vec<f64>, StepError> {
        let segs = self
            .segments
            .as_ref()
            .ok_or_else(|| StepError::MissingDenseCoefficients("trajectory".into()))?;
        let (first, last) = (self.times[0], self.final_time());
        if segs.is_empty() || !(t >= first.min(last) && t <= first.max(last)) {
            return Err(StepError::OutOfRange { t });
        }
        let forward = last >= first;
        // Index of the first step end at or beyond t.
        let k = self.times[1..].partition_point(|&tk| if forward { tk < t } else { tk > t });
        let seg = &segs[k.min(segs.len() - 1)];
        seg.interpolate((t - seg.t0) / seg.h)
    }
}

/// A method bound to a problem.
pub trait Stepper {
    fn dim(&self) -> usize;
    fn tableau(&self) -> &RowTableau;
    fn step(
        &mut self,
        t0: f64,
        u0: &[f64],
        h: f64,
        stats: &mut IntegrationStats,
    ) -> Result<StepOutcome, StepError>;
}

fn dense_weights(t: &RowTableau, keep_dense: bool) -> Option<Arc<DenseWeights>> {
    keep_dense.then(|| Arc::new(DenseWeights::from_tableau(t)))
}

/// Constant step size `h` from `t0` to `t_end`. Every step is accepted.
pub fn integrate_fixed<S: Stepper + ?Sized>(
    stepper: &mut S,
    t0: f64,
    u0: &[f64],
    h: f64,
    t_end: f64,
    keep_dense: bool,
) -> Result<Trajectory, StepError> {
    if u0.len() != stepper.dim() {
        return Err(StepError::DimensionMismatch {
            expected: stepper.dim(),
            got: u0.len(),
        });
    }
    let span = t_end - t0;
    let n = (span / h).round();
    if !(h.is_finite() && h != 0.0 && n >= 1.0 && ((n * h - span) / span).abs() <= 1e-12) {
        return Err(StepError::InvalidStepSize { h, span });
    }
    let n = n as usize;
    let weights = dense_weights(stepper.tableau(), keep_dense);
    let mut traj = Trajectory::start(t0, u0, keep_dense);
    let mut u = u0.to_vec();
    for k in 0..n {
        let tk = t0 + k as f64 * h;
        let hk = if k + 1 == n { t_end - tk } else { h };
        let out = stepper.step(tk, &u, hk, &mut traj.stats)?;
        traj.stats.nsucc += 1;
        let next = out.u1.clone();
        traj.accept(out, &u, &weights);
        u = next;
    }
    if let Some(t) = traj.times.last_mut() {
        *t = t_end;
    }
    Ok(traj)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step; `min(|t_end - t0| / 10, rtol^(1/(q+1)))` when `None`.
    pub h0: Option<f64>,
    pub max_steps: usize,
    pub keep_dense: bool,
}

impl AdaptiveOptions {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Self {
            rtol,
            atol,
            h0: None,
            max_steps: 10_000_000,
            keep_dense: false,
        }
    }

    pub fn with_dense(mut self, keep: bool) -> Self {
        self.keep_dense = keep;
        self
    }
}

/// Scaled RMS norm of `u1 - u1_hat` with weights `atol + rtol max(|u0|, |u1|)`.
pub fn error_norm(u0: &[f64], u1: &[f64], u1_hat: &[f64], rtol: f64, atol: f64) -> f64 {
    let n = u1.len().max(1) as f64;
    let sum: f64 = u0
        .iter()
        .zip(u1)
        .zip(u1_hat)
        .map(|((a, b), c)| {
            let sc = atol + rtol * a.abs().max(b.abs());
            ((b - c) / sc).powi(2)
        })
        .sum();
    (sum / n).sqrt()
}

const MAX_GROWTH: f64 = 5.0;
const MIN_SHRINK: f64 = 0.2;
const SAFETY: f64 = 0.9;

/// Embedded error control with an elementary controller.
pub fn integrate_adaptive<S: Stepper + ?Sized>(
    stepper: &mut S,
    t0: f64,
    u0: &[f64],
    t_end: f64,
    opts: &AdaptiveOptions,
) -> Result<Trajectory, StepError> {
    if u0.len() != stepper.dim() {
        return Err(StepError::DimensionMismatch {
            expected: stepper.dim(),
            got: u0.len(),
        });
    }
    if !(opts.rtol > 0.0 && opts.atol > 0.0) {
        return Err(StepError::InvalidTolerance {
            rtol: opts.rtol,
            atol: opts.atol,
        });
    }
    let tab = stepper.tableau();
    let embedded = tab
        .embedded_order()
        .ok_or_else(|| StepError::MissingEmbeddedWeights(tab.name().to_string()))?;
    let q = f64::from(tab.order().min(embedded));
    let weights = dense_weights(tab, opts.keep_dense);

    let span = t_end - t0;
    let dir = span.signum();
    let min_h = 1e-14 * span.abs();
    let mut h = opts
        .h0
        .unwrap_or_else(|| (span.abs() / 10.0).min(opts.rtol.powf(1.0 / (q + 1.0))))
        .abs();

    let mut traj = Trajectory::start(t0, u0, opts.keep_dense);
    let mut t = t0;
    let mut u = u0.to_vec();
    while (t_end - t) * dir > 0.0 {
        if traj.steps() >= opts.max_steps {
            return Err(StepError::TooManySteps {
                t,
                max: opts.max_steps,
            });
        }
        if h < min_h {
            return Err(StepError::StepUnderflow { t, h });
        }
        let last = h >= (t_end - t).abs() * (1.0 - 1e-12);
        let h_try = if last { t_end - t } else { dir * h };
        let out = match stepper.step(t, &u, h_try, &mut traj.stats) {
            Ok(out) => out,
            Err(StepError::SingularIterationMatrix { .. } | StepError::NonFiniteState { .. }) => {
                traj.stats.nfail += 1;
                h *= 0.5;
                continue;
            }
            Err(e) => return Err(e),
        };
        let u1_hat = out.u1_hat.as_ref().expect("embedded weights checked above");
        let err = error_norm(&u, &out.u1, u1_hat, opts.rtol, opts.atol);
        if !err.is_finite() {
            traj.stats.nfail += 1;
            h *= 0.5;
            continue;
        }
        let factor = if err == 0.0 {
            MAX_GROWTH
        } else {
            (SAFETY * err.powf(-1.0 / (q + 1.0))).clamp(MIN_SHRINK, MAX_GROWTH)
        };
        if err <= 1.0 {
            traj.stats.nsucc += 1;
            t = if last { t_end } else { t + h_try };
            let next = out.u1.clone();
            traj.accept(out, &u, &weights);
            if let Some(tl) = traj.times.last_mut() {
                *tl = t;
            }
            u = next;
            h = h_try.abs() * factor;
        } else {
            traj.stats.nfail += 1;
            h = h_try.abs() * factor;
        }
    }
    Ok(traj)
}
