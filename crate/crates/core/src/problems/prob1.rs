//! A small index-1 test problem with logarithmic solution:
//! `y1' = y2 / y1`, `0 = y1 / y2 - t` on `[2, 4]`, solved by
//! `y1 = ln t`, `y2 = ln t / t`.

use super::Benchmark;
use crate::dae::SemiExplicitDae;
use crate::linalg::DenseMatrix;

#[derive(Debug, Clone, Copy, Default)]
pub struct Prob1;

impl SemiExplicitDae for Prob1 {
    fn n_diff(&self) -> usize {
        1
    }
    fn n_alg(&self) -> usize {
        1
    }
    fn f(&self, _t: f64, y: &[f64], z: &[f64], out: &mut [f64]) {
        out[0] = z[0] / y[0];
    }
    fn g(&self, t: f64, y: &[f64], z: &[f64], out: &mut [f64]) {
        out[0] = y[0] / z[0] - t;
    }
    fn f_y(&self, _t: f64, y: &[f64], z: &[f64]) -> Option<DenseMatrix> {
        Some(DenseMatrix::from_rows(&[vec![-z[0] / (y[0] * y[0])]]))
    }
    fn f_z(&self, _t: f64, y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        Some(DenseMatrix::from_rows(&[vec![1.0 / y[0]]]))
    }
    fn f_t(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<Vec<f64>> {
        Some(vec![0.0])
    }
    fn g_y(&self, _t: f64, _y: &[f64], z: &[f64]) -> Option<DenseMatrix> {
        Some(DenseMatrix::from_rows(&[vec![1.0 / z[0]]]))
    }
    fn g_z(&self, _t: f64, y: &[f64], z: &[f64]) -> Option<DenseMatrix> {
        Some(DenseMatrix::from_rows(&[vec![-y[0] / (z[0] * z[0])]]))
    }
    fn g_t(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<Vec<f64>> {
        Some(vec![-1.0])
    }
}

impl Benchmark for Prob1 {
    fn label(&self) -> String {
        "prob1".into()
    }
    fn t0(&self) -> f64 {
        2.0
    }
    fn t_end(&self) -> f64 {
        4.0
    }
    fn initial_state(&self) -> Vec<f64> {
        let l = 2f64.ln();
        vec![l, l / 2.0]
    }
    fn exact(&self, t: f64) -> Option<Vec<f64>> {
        Some(vec![t.ln(), t.ln() / t])
    }
}
