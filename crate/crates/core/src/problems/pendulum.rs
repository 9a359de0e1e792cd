//! Planar chain of `n` point masses joined by massless rods, the first rod
//! attached to a fixed pivot at the origin.
//!
//! With `d_i = p_i - p_{i-1}` (and `p_0 = 0`) the equations of motion are
//!
//! ```text
//! m_i p_i'' = lambda_i d_i - lambda_{i+1} d_{i+1} - m_i g e_y,   lambda_{n+1} = 0
//! ```
//!
//! The rod constraints `|d_i|^2 = L_i^2` are differentiated twice, which gives
//! the index-1 algebraic equations
//!
//! ```text
//! 0 = |v_i - v_{i-1}|^2 + d_i . (a_i - a_{i-1}),   a_0 = 0,
//! ```
//!
//! linear in the multipliers `lambda`. State layout:
//! `y = (x_1, y_1, .., x_n, y_n, vx_1, vy_1, .., vx_n, vy_n)`, `z = lambda`.

use thiserror::Error;

use super::Benchmark;
use crate::dae::SemiExplicitDae;
use crate::linalg::{lu_factor, DenseMatrix, LinalgError};

/// Largest rod-length defect accepted for an initial configuration.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PendulumError {
    #[error("rod {rod} has length {actual}, expected {expected}")]
    InconsistentInitialState {
        rod: usize,
        actual: f64,
        expected: f64,
    },
    #[error("{0}")]
    InvalidParameters(String),
    #[error("multiplier system is singular: {0}")]
    Singular(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pendulum {
    masses: Vec<f64>,
    lengths: Vec<f64>,
    gravity: f64,
    t_end: f64,
    /// Positions and velocities at `t = 0`.
    y0: Vec<f64>,
    lambda0: Vec<f64>,
}

type Vec2 = [f64; 2];

fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn dot2(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

impl Pendulum {
    /// `n` unit masses on unit rods, `g = 9.81`, released at rest from a
    /// horizontal line, integrated over `[0, 100]`.
    pub fn new(n: usize) -> Result<Self, PendulumError> {
        let angles = vec![std::f64::consts::FRAC_PI_2; n];
        Self::from_angles(vec![1.0; n], vec![1.0; n], 9.81, &angles, &vec![0.0; n])
    }

    /// Configuration given by rod angles from the downward vertical and
    /// their angular velocities.
    pub fn from_angles(
        masses: Vec<f64>,
        lengths: Vec<f64>,
        gravity: f64,
        angles: &[f64],
        angular_velocities: &[f64],
    ) -> Result<Self, PendulumError> {
        let n = masses.len();
        if angles.len() != n || angular_velocities.len() != n {
            return Err(PendulumError::InvalidParameters(format!(
                "{n} masses but {} angles and {} angular velocities",
                angles.len(),
                angular_velocities.len()
            )));
        }
        if lengths.len() != n {
            return Err(PendulumError::InvalidParameters(format!(
                "{n} masses but {} rod lengths",
                lengths.len()
            )));
        }
        let mut pos = vec![0.0; 2 * n];
        let mut vel = vec![0.0; 2 * n];
        let (mut p, mut v) = ([0.0, 0.0], [0.0, 0.0]);
        for i in 0..n {
            let (s, c) = angles[i].sin_cos();
            let l = lengths[i];
            p = [p[0] + l * s, p[1] - l * c];
            let w = angular_velocities[i] * l;
            v = [v[0] + w * c, v[1] + w * s];
            pos[2 * i..2 * i + 2].copy_from_slice(&p);
            vel[2 * i..2 * i + 2].copy_from_slice(&v);
        }
        pos.extend(vel);
        Self::from_state(masses, lengths, gravity, pos)
    }

    /// Configuration given directly by positions and velocities. The
    /// multipliers are computed so that the algebraic equations hold.
    pub fn from_state(
        masses: Vec<f64>,
        lengths: Vec<f64>,
        gravity: f64,
        y0: Vec<f64>,
    ) -> Result<Self, PendulumError> {
        let n = masses.len();
        if n == 0 {
            return Err(PendulumError::InvalidParameters(
                "need at least one mass".into(),
            ));
        }
        if lengths.len() != n || y0.len() != 4 * n {
            return Err(PendulumError::InvalidParameters(format!(
                "{n} masses need {n} lengths and {} state entries",
                4 * n
            )));
        }
        if masses
            .iter()
            .chain(&lengths)
            .any(|v| !(*v > 0.0 && v.is_finite()))
        {
            return Err(PendulumError::InvalidParameters(
                "masses and lengths must be positive".into(),
            ));
        }
        let mut pendulum = Self {
            masses,
            lengths,
            gravity,
            t_end: 100.0,
            y0,
            lambda0: vec![0.0; n],
        };
        for i in 0..n {
            let actual = dot2(pendulum.rod(&pendulum.y0, i), pendulum.rod(&pendulum.y0, i)).sqrt();
            if (actual - pendulum.lengths[i]).abs() > CONSISTENCY_TOLERANCE {
                return Err(PendulumError::InconsistentInitialState {
                    rod: i + 1,
                    actual,
                    expected: pendulum.lengths[i],
                });
            }
        }
        pendulum.lambda0 = pendulum.consistent_multipliers(&pendulum.y0.clone())?;
        Ok(pendulum)
    }

    pub fn with_t_end(mut self, t_end: f64) -> Self {
        self.t_end = t_end;
        self
    }

    pub fn masses(&self) -> usize {
        self.masses.len()
    }

    pub fn gravity(&self) -> f64 {
        self.gravity
    }

    pub fn total_length(&self) -> f64 {
        self.lengths.iter().sum()
    }

    fn position(y: &[f64], i: usize) -> Vec2 {
        [y[2 * i], y[2 * i + 1]]
    }

    fn velocity(&self, y: &[f64], i: usize) -> Vec2 {
        let off = 2 * self.masses();
        [y[off + 2 * i], y[off + 2 * i + 1]]
    }

    /// `d_i = p_i - p_{i-1}` (0-based `i`).
    fn rod(&self, y: &[f64], i: usize) -> Vec2 {
        let prev = if i == 0 {
            [0.0, 0.0]
        } else {
            Self::position(y, i - 1)
        };
        sub(Self::position(y, i), prev)
    }

    fn rel_velocity(&self, y: &[f64], i: usize) -> Vec2 {
        let prev = if i == 0 {
            [0.0, 0.0]
        } else {
            self.velocity(y, i - 1)
        };
        sub(self.velocity(y, i), prev)
    }

    fn accelerations(&self, y: &[f64], lambda: &[f64]) -> Vec<Vec2> {
        let n = self.masses();
        (0..n)
            .map(|i| {
                let d = self.rod(y, i);
                let mut a = [lambda[i] * d[0], lambda[i] * d[1]];
                if i + 1 < n {
                    let dn = self.rod(y, i + 1);
                    a[0] -= lambda[i + 1] * dn[0];
                    a[1] -= lambda[i + 1] * dn[1];
                }
                let m = self.masses[i];
                [a[0] / m, a[1] / m - self.gravity]
            })
            .collect()
    }

    /// Sum of the current rod lengths minus the nominal total length.
    pub fn length_defect(&self, y: &[f64]) -> f64 {
        let actual: f64 = (0..self.masses())
            .map(|i| dot2(self.rod(y, i), self.rod(y, i)).sqrt())
            .sum();
        (actual - self.total_length()).abs()
    }

    /// `dG_i / dlambda_k`; constant in `lambda` because `G` is affine in it.
    fn multiplier_matrix(&self, y: &[f64]) -> DenseMatrix {
        let n = self.masses();
        // da_j/dlambda_k = (delta_kj d_j - delta_{k,j+1} d_{j+1}) / m_j
        let da = |j: usize, k: usize| -> Vec2 {
            let m = self.masses[j];
            if k == j {
                let d = self.rod(y, j);
                [d[0] / m, d[1] / m]
            } else if k == j + 1 {
                let d = self.rod(y, j + 1);
                [-d[0] / m, -d[1] / m]
            } else {
                [0.0, 0.0]
            }
        };
        let mut gz = DenseMatrix::zeros(n, n);
        for i in 0..n {
            let d = self.rod(y, i);
            for k in i.saturating_sub(1)..(i + 2).min(n) {
                let mut dd = da(i, k);
                if i > 0 {
                    dd = sub(dd, da(i - 1, k));
                }
                gz[(i, k)] = dot2(d, dd);
            }
        }
        gz
    }

    fn consistent_multipliers(&self, y: &[f64]) -> Result<Vec<f64>, PendulumError> {
        let n = self.masses();
        let mut g0 = vec![0.0; n];
        self.g(0.0, y, &vec![0.0; n], &mut g0);
        let lu = lu_factor(&self.multiplier_matrix(y))?;
        let mut lambda: Vec<f64> = g0.iter().map(|v| -v).collect();
        lu.solve_in_place(&mut lambda)?;
        Ok(lambda)
    }

    pub fn initial_multipliers(&self) -> &[f64] {
        &self.lambda0
    }
}

impl SemiExplicitDae for Pendulum {
    fn n_diff(&self) -> usize {
        4 * self.masses()
    }

    fn n_alg(&self) -> usize {
        self.masses()
    }

    fn f(&self, _t: f64, y: &[f64], z: &[f64], out: &mut [f64]) {
        let n2 = 2 * self.masses();
        out[..n2].copy_from_slice(&y[n2..]);
        for (i, a) in self.accelerations(y, z).into_iter().enumerate() {
            out[n2 + 2 * i] = a[0];
            out[n2 + 2 * i + 1] = a[1];
        }
    }

    fn g(&self, _t: f64, y: &[f64], z: &[f64], out: &mut [f64]) {
        let acc = self.accelerations(y, z);
        for i in 0..self.masses() {
            let u = self.rel_velocity(y, i);
            let da = if i == 0 {
                acc[0]
            } else {
                sub(acc[i], acc[i - 1])
            };
            out[i] = dot2(u, u) + dot2(self.rod(y, i), da);
        }
    }

    fn g_y(&self, _t: f64, y: &[f64], z: &[f64]) -> Option<DenseMatrix> {
        let n = self.masses();
        let acc = self.accelerations(y, z);
        // da_j/dp_k = c(j, k) I with
        // c(j, k) = (lambda_j [k=j] - lambda_j [k=j-1] - lambda_{j+1} [k=j+1] + lambda_{j+1} [k=j]) / m_j
        let c = |j: usize, k: usize| -> f64 {
            let lj = z[j];
            let lj1 = if j + 1 < n { z[j + 1] } else { 0.0 };
            let mut v = 0.0;
            if k == j {
                v += lj + lj1;
            }
            if k + 1 == j {
                v -= lj;
            }
            if k == j + 1 {
                v -= lj1;
            }
            v / self.masses[j]
        };
        let mut gy = DenseMatrix::zeros(n, 4 * n);
        for i in 0..n {
            let d = self.rod(y, i);
            let da = if i == 0 {
                acc[0]
            } else {
                sub(acc[i], acc[i - 1])
            };
            for k in i.saturating_sub(2)..(i + 2).min(n) {
                let mut coef = c(i, k);
                if i > 0 {
                    coef -= c(i - 1, k);
                }
                let mut grad = [coef * d[0], coef * d[1]];
                if k == i {
                    grad = [grad[0] + da[0], grad[1] + da[1]];
                } else if k + 1 == i {
                    grad = [grad[0] - da[0], grad[1] - da[1]];
                }
                gy[(i, 2 * k)] = grad[0];
                gy[(i, 2 * k + 1)] = grad[1];
            }
            let u = self.rel_velocity(y, i);
            let off = 2 * n;
            gy[(i, off + 2 * i)] = 2.0 * u[0];
            gy[(i, off + 2 * i + 1)] = 2.0 * u[1];
            if i > 0 {
                gy[(i, off + 2 * (i - 1))] = -2.0 * u[0];
                gy[(i, off + 2 * (i - 1) + 1)] = -2.0 * u[1];
            }
        }
        Some(gy)
    }

    fn g_z(&self, _t: f64, y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        Some(self.multiplier_matrix(y))
    }

    fn g_t(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<Vec<f64>> {
        Some(vec![0.0; self.masses()])
    }
}

impl Benchmark for Pendulum {
    fn label(&self) -> String {
        format!("pendulum(n={})", self.masses())
    }
    fn t0(&self) -> f64 {
        0.0
    }
    fn t_end(&self) -> f64 {
        self.t_end
    }
    fn initial_state(&self) -> Vec<f64> {
        let mut u = self.y0.clone();
        u.extend_from_slice(&self.lambda0);
        u
    }
    fn custom_error(&self, _t: f64, u: &[f64]) -> Option<f64> {
        Some(self.length_defect(&u[..self.n_diff()]))
    }
}
