//! Prothero-Robinson equation `y' = -lambda (y - g(t)) + g'(t)` with
//! `g(t) = 10 - (10 + t) e^-t`, on `[0, 2]`. The exact solution is `g`.

use super::Benchmark;
use crate::dae::SemiExplicitDae;
use crate::linalg::DenseMatrix;

#[derive(Debug, Clone, Copy)]
pub struct ProtheroRobinson {
    pub lambda: f64,
}

impl Default for ProtheroRobinson {
    fn default() -> Self {
        Self { lambda: 10.0 }
    }
}

impl ProtheroRobinson {
    pub fn new(lambda: f64) -> Self {
        Self { lambda }
    }

    pub fn g(t: f64) -> f64 {
        10.0 - (10.0 + t) * (-t).exp()
    }

    pub fn g_prime(t: f64) -> f64 {
        (9.0 + t) * (-t).exp()
    }

    fn g_second(t: f64) -> f64 {
        -(8.0 + t) * (-t).exp()
    }
}

impl SemiExplicitDae for ProtheroRobinson {
    fn n_diff(&self) -> usize {
        1
    }
    fn n_alg(&self) -> usize {
        0
    }
    fn f(&self, t: f64, y: &[f64], _z: &[f64], out: &mut [f64]) {
        out[0] = -self.lambda * (y[0] - Self::g(t)) + Self::g_prime(t);
    }
    fn g(&self, _t: f64, _y: &[f64], _z: &[f64], _out: &mut [f64]) {}
    fn f_y(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        Some(DenseMatrix::from_rows(&[vec![-self.lambda]]))
    }
    fn f_z(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        Some(DenseMatrix::zeros(1, 0))
    }
    fn f_t(&self, t: f64, _y: &[f64], _z: &[f64]) -> Option<Vec<f64>> {
        Some(vec![self.lambda * Self::g_prime(t) + Self::g_second(t)])
    }
    fn g_y(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        Some(DenseMatrix::zeros(0, 1))
    }
    fn g_z(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        Some(DenseMatrix::zeros(0, 0))
    }
    fn g_t(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<Vec<f64>> {
        Some(Vec::new())
    }
}

impl Benchmark for ProtheroRobinson {
    fn label(&self) -> String {
        "prothero-robinson".into()
    }
    fn t0(&self) -> f64 {
        0.0
    }
    fn t_end(&self) -> f64 {
        2.0
    }
    fn initial_state(&self) -> Vec<f64> {
        vec![Self::g(0.0)]
    }
    fn exact(&self, t: f64) -> Option<Vec<f64>> {
        Some(vec![Self::g(t)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_values() {
        assert_eq!(ProtheroRobinson::g(0.0), 0.0);
        assert_eq!(ProtheroRobinson::g_prime(0.0), 9.0);
        let y2 = 10.0 - 12.0 * (-2f64).exp();
        assert!((ProtheroRobinson::g(2.0) - y2).abs() < 1e-14);
        assert!((y2 - 8.3759).abs() < 1e-4);
    }

    #[test]
    fn derivatives_match_differences() {
        let h = 1e-6;
        for t in [0.0, 0.7, 1.9] {
            let d = (ProtheroRobinson::g(t + h) - ProtheroRobinson::g(t - h)) / (2.0 * h);
            assert!((d - ProtheroRobinson::g_prime(t)).abs() < 1e-8);
            let d2 =
                (ProtheroRobinson::g_prime(t + h) - ProtheroRobinson::g_prime(t - h)) / (2.0 * h);
            assert!((d2 - ProtheroRobinson::g_second(t)).abs() < 1e-8);
        }
    }
}
