//! Benchmark problems and error metrics.

mod pde;
mod pendulum;
mod prob1;
mod prothero_robinson;

use thiserror::Error;

use crate::dae::SemiExplicitDae;
use crate::stepper::{StepError, Trajectory};

pub use pde::{Hyperbolic, Parabolic};
pub use pendulum::{Pendulum, PendulumError};
pub use prob1::Prob1;
pub use prothero_robinson::ProtheroRobinson;

/// Number of evenly spaced output times for the interpolated error.
pub const INTERPOLATION_POINTS: usize = 100;

/// Initial data, interval and (where known) exact solution of a test problem.
///
/// States are stacked: differential variables first, then algebraic ones.
pub trait Benchmark {
    fn label(&self) -> String;
    fn t0(&self) -> f64;
    fn t_end(&self) -> f64;
    fn initial_state(&self) -> Vec<f64>;

    fn exact(&self, _t: f64) -> Option<Vec<f64>> {
        None
    }

    /// Problem-specific error of a single state, e.g. a constraint drift.
    fn custom_error(&self, _t: f64, _u: &[f64]) -> Option<f64> {
        None
    }
}

/// A benchmark that can be integrated by both steppers.
pub trait BenchmarkProblem: SemiExplicitDae + Benchmark + Send + Sync {}

impl<T: SemiExplicitDae + Benchmark + Send + Sync> BenchmarkProblem for T {}

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("benchmark `{0}` has no exact solution or custom metric")]
    MissingExactSolution(String),
    #[error(transparent)]
    Interpolation(#[from] StepError),
}

/// Errors of one trajectory against a benchmark.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ErrorMetrics {
    /// Max-norm error at the final time.
    pub endpoint: Option<f64>,
    /// RMS error over all accepted steps, initial point included.
    pub l2_steps: Option<f64>,
    /// RMS error over evenly spaced dense-output times.
    pub l2_interp: Option<f64>,
    /// Maximum of the custom metric over accepted steps.
    pub custom: Option<f64>,
}

fn rms<'a>(pairs: impl Iterator<Item = (&'a [f64], Vec<f64>)>) -> f64 {
    let (mut sum, mut count) = (0.0, 0usize);
    for (u, exact) in pairs {
        for (a, b) in u.iter().zip(&exact) {
            sum += (a - b).powi(2);
            count += 1;
        }
    }
    if count == 0 {
        0.0
    } else {
        (sum / count as f64).sqrt()
    }
}

/// `n` evenly spaced times from `t0` to `t_end`, both included.
pub fn output_times(t0: f64, t_end: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![t_end];
    }
    let dt = (t_end - t0) / (n - 1) as f64;
    (0..n)
        .map(|k| {
            if k + 1 == n {
                t_end
            } else {
                t0 + k as f64 * dt
            }
        })
        .collect()
}

pub fn error_metrics<B: Benchmark + ?Sized>(
    traj: &Trajectory,
    bench: &B,
) -> Result<ErrorMetrics, MetricsError> {
    let mut m = ErrorMetrics::default();
    let t_end = traj.final_time();
    if let Some(exact) = bench.exact(t_end) {
        m.endpoint = Some(
            traj.final_state()
                .iter()
                .zip(&exact)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        );
        m.l2_steps =
            Some(rms(traj.times.iter().zip(&traj.states).map(|(&t, u)| {
                (u.as_slice(), bench.exact(t).unwrap_or_default())
            })));
        if traj.segments.is_some() {
            let times = output_times(traj.times[0], t_end, INTERPOLATION_POINTS);
            let mut values = Vec::with_capacity(times.len());
            for &t in &times {
                values.push((traj.interpolate(t)?, bench.exact(t).unwrap_or_default()));
            }
            m.l2_interp = Some(rms(values.iter().map(|(u, e)| (u.as_slice(), e.clone()))));
        }
    }
    if bench.custom_error(traj.times[0], &traj.states[0]).is_some() {
        m.custom = Some(
            traj.times
                .iter()
                .zip(&traj.states)
                .filter_map(|(&t, u)| bench.custom_error(t, u))
                .fold(0.0, f64::max),
        );
    }
    if m.endpoint.is_none() && m.custom.is_none() {
        return Err(MetricsError::MissingExactSolution(bench.label()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn output_times_cover_interval() {
        let t = output_times(0.0, 1.0, 100);
        assert_eq!(t.len(), 100);
        assert_eq!(t[0], 0.0);
        assert_eq!(t[99], 1.0);
    }

    #[test]
    fn exact_trajectory_has_zero_error() {
        let b = Prob1;
        let times = [2.0, 2.5, 3.0, 4.0];
        let traj = Trajectory {
            times: times.to_vec(),
            states: times.iter().map(|&t| b.exact(t).unwrap()).collect(),
            segments: None,
            stats: Default::default(),
        };
        let m = error_metrics(&traj, &b).unwrap();
        assert_eq!(m.endpoint, Some(0.0));
        assert_eq!(m.l2_steps, Some(0.0));
        assert!(m.l2_interp.is_none());
    }
}
