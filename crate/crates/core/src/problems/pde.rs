//! Method-of-lines discretizations of a parabolic and a hyperbolic equation.
//!
//! Both exact solutions are polynomial in `x` of low degree, so the spatial
//! discretizations below reproduce them at the nodes up to round-off and the
//! observed error is the time-integration error.

use super::Benchmark;
use crate::dae::SemiExplicitDae;
use crate::linalg::DenseMatrix;

/// `u_t = u_xx + u^2 + h(x, t)` on `x in [-1, 1]`, `t in [0, 1]`, with
/// `u = x^3 e^t` and Dirichlet data from it. Central differences on `n_x`
/// interior nodes.
#[derive(Debug, Clone, Copy)]
pub struct Parabolic {
    pub nx: usize,
}

impl Default for Parabolic {
    fn default() -> Self {
        Self { nx: 250 }
    }
}

impl Parabolic {
    pub fn new(nx: usize) -> Self {
        assert!(nx >= 3, "parabolic problem needs at least 3 nodes");
        Self { nx }
    }

    pub fn dx(&self) -> f64 {
        2.0 / (self.nx + 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        -1.0 + (i + 1) as f64 * self.dx()
    }

    pub fn exact_value(x: f64, t: f64) -> f64 {
        x.powi(3) * t.exp()
    }

    pub fn forcing(x: f64, t: f64) -> f64 {
        let et = t.exp();
        x.powi(3) * et - 6.0 * x * et - x.powi(6) * et * et
    }

    fn forcing_t(x: f64, t: f64) -> f64 {
        let et = t.exp();
        x.powi(3) * et - 6.0 * x * et - 2.0 * x.powi(6) * et * et
    }
}

impl SemiExplicitDae for Parabolic {
    fn n_diff(&self) -> usize {
        self.nx
    }
    fn n_alg(&self) -> usize {
        0
    }
    fn f(&self, t: f64, u: &[f64], _z: &[f64], out: &mut [f64]) {
        let n = self.nx;
        let inv = 1.0 / (self.dx() * self.dx());
        let et = t.exp();
        for i in 0..n {
            let left = if i == 0 { -et } else { u[i - 1] };
            let right = if i + 1 == n { et } else { u[i + 1] };
            out[i] =
                (left - 2.0 * u[i] + right) * inv + u[i] * u[i] + Self::forcing(self.node(i), t);
        }
    }
    fn g(&self, _t: f64, _y: &[f64], _z: &[f64], _out: &mut [f64]) {}
    fn f_y(&self, _t: f64, u: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        let n = self.nx;
        let inv = 1.0 / (self.dx() * self.dx());
        let mut j = DenseMatrix::zeros(n, n);
        for i in 0..n {
            j[(i, i)] = -2.0 * inv + 2.0 * u[i];
            if i > 0 {
                j[(i, i - 1)] = inv;
            }
            if i + 1 < n {
                j[(i, i + 1)] = inv;
            }
        }
        Some(j)
    }
    fn f_z(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        Some(DenseMatrix::zeros(self.nx, 0))
    }
    fn f_t(&self, t: f64, _u: &[f64], _z: &[f64]) -> Option<Vec<f64>> {
        let n = self.nx;
        let inv = 1.0 / (self.dx() * self.dx());
        let et = t.exp();
        Some(
            (0..n)
                .map(|i| {
                    let mut v = Self::forcing_t(self.node(i), t);
                    if i == 0 {
                        v -= et * inv;
                    }
                    if i + 1 == n {
                        v += et * inv;
                    }
                    v
                })
                .collect(),
        )
    }
    fn g_y(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        Some(DenseMatrix::zeros(0, self.nx))
    }
    fn g_z(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        Some(DenseMatrix::zeros(0, 0))
    }
    fn g_t(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<Vec<f64>> {
        Some(Vec::new())
    }
}

impl Benchmark for Parabolic {
    fn label(&self) -> String {
        format!("parabolic(nx={})", self.nx)
    }
    fn t0(&self) -> f64 {
        0.0
    }
    fn t_end(&self) -> f64 {
        1.0
    }
    fn initial_state(&self) -> Vec<f64> {
        self.exact(0.0).expect("exact solution known")
    }
    fn exact(&self, t: f64) -> Option<Vec<f64>> {
        Some(
            (0..self.nx)
                .map(|i| Self::exact_value(self.node(i), t))
                .collect(),
        )
    }
}

/// `u_t = -u_x + g(x, t)` on `x in [0, 1]`, `t in [0, 1]`, with
/// `u = (1 + x) / (1 + t)` and inflow `u(0, t) = 1 / (1 + t)`. First-order
/// upwind differences on the nodes `x_i = i / n_x`, `i = 1..n_x`.
#[derive(Debug, Clone, Copy)]
pub struct Hyperbolic {
    pub nx: usize,
}

impl Default for Hyperbolic {
    fn default() -> Self {
        Self { nx: 250 }
    }
}

impl Hyperbolic {
    pub fn new(nx: usize) -> Self {
        assert!(nx >= 2, "hyperbolic problem needs at least 2 nodes");
        Self { nx }
    }

    pub fn dx(&self) -> f64 {
        1.0 / self.nx as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        (i + 1) as f64 * self.dx()
    }

    pub fn exact_value(x: f64, t: f64) -> f64 {
        (1.0 + x) / (1.0 + t)
    }

    pub fn source(x: f64, t: f64) -> f64 {
        let s = 1.0 + t;
        1.0 / s - (1.0 + x) / (s * s)
    }

    fn source_t(x: f64, t: f64) -> f64 {
        let s = 1.0 + t;
        -1.0 / (s * s) + 2.0 * (1.0 + x) / (s * s * s)
    }
}

impl SemiExplicitDae for Hyperbolic {
    fn n_diff(&self) -> usize {
        self.nx
    }
    fn n_alg(&self) -> usize {
        0
    }
    fn f(&self, t: f64, u: &[f64], _z: &[f64], out: &mut [f64]) {
        let inv = 1.0 / self.dx();
        let inflow = 1.0 / (1.0 + t);
        for i in 0..self.nx {
            let left = if i == 0 { inflow } else { u[i - 1] };
            out[i] = -(u[i] - left) * inv + Self::source(self.node(i), t);
        }
    }
    fn g(&self, _t: f64, _y: &[f64], _z: &[f64], _out: &mut [f64]) {}
    fn f_y(&self, _t: f64, _u: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        let n = self.nx;
        let inv = 1.0 / self.dx();
        let mut j = DenseMatrix::zeros(n, n);
        for i in 0..n {
            j[(i, i)] = -inv;
            if i > 0 {
                j[(i, i - 1)] = inv;
            }
        }
        Some(j)
    }
    fn f_z(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        Some(DenseMatrix::zeros(self.nx, 0))
    }
    fn f_t(&self, t: f64, _u: &[f64], _z: &[f64]) -> Option<Vec<f64>> {
        let inv = 1.0 / self.dx();
        let s = 1.0 + t;
        Some(
            (0..self.nx)
                .map(|i| {
                    let v = Self::source_t(self.node(i), t);
                    if i == 0 {
                        v - inv / (s * s)
                    } else {
                        v
                    }
                })
                .collect(),
        )
    }
    fn g_y(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        Some(DenseMatrix::zeros(0, self.nx))
    }
    fn g_z(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        Some(DenseMatrix::zeros(0, 0))
    }
    fn g_t(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<Vec<f64>> {
        Some(Vec::new())
    }
}

impl Benchmark for Hyperbolic {
    fn label(&self) -> String {
        format!("hyperbolic(nx={})", self.nx)
    }
    fn t0(&self) -> f64 {
        0.0
    }
    fn t_end(&self) -> f64 {
        1.0
    }
    fn initial_state(&self) -> Vec<f64> {
        self.exact(0.0).expect("exact solution known")
    }
    fn exact(&self, t: f64) -> Option<Vec<f64>> {
        Some(
            (0..self.nx)
                .map(|i| Self::exact_value(self.node(i), t))
                .collect(),
        )
    }
}
