//! Problem interfaces and finite-difference derivatives.
//!
//! Two shapes of problem are supported: the semi-explicit index-1 system
//! `y' = f(t, y, z)`, `0 = g(t, y, z)` and the mass-matrix form
//! `M y' = f(t, y)`. [`MassMatrixForm`] views the former as the latter with
//! `M = diag(I, 0)`.

use crate::linalg::DenseMatrix;

/// `y' = f(t, y, z)`, `0 = g(t, y, z)` with `g_z` regular.
///
/// Analytic partial derivatives are optional; any that return `None` are
/// approximated by forward differences.
pub trait SemiExplicitDae {
    fn n_diff(&self) -> usize;
    fn n_alg(&self) -> usize;
    fn f(&self, t: f64, y: &[f64], z: &[f64], out: &mut [f64]);
    fn g(&self, t: f64, y: &[f64], z: &[f64], out: &mut [f64]);

    fn f_y(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        None
    }
    fn f_z(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        None
    }
    fn f_t(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<Vec<f64>> {
        None
    }
    fn g_y(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        None
    }
    fn g_z(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
        None
    }
    fn g_t(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<Vec<f64>> {
        None
    }
}

/// `M y' = f(t, y)` with a constant, possibly singular, mass matrix.
pub trait MassMatrixProblem {
    fn dim(&self) -> usize;
    fn mass_matrix(&self) -> DenseMatrix;
    fn rhs(&self, t: f64, y: &[f64], out: &mut [f64]);

    fn jacobian(&self, _t: f64, _y: &[f64]) -> Option<DenseMatrix> {
        None
    }
    fn time_derivative(&self, _t: f64, _y: &[f64]) -> Option<Vec<f64>> {
        None
    }
}

/// A semi-explicit system seen as `diag(I, 0) u' = (f, g)` with `u = (y, z)`.
pub struct MassMatrixForm<'a, P: ?Sized>(pub &'a P);

impl<P: ?Sized> Clone for MassMatrixForm<'_, P> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<P: ?Sized> Copy for MassMatrixForm<'_, P> {}

impl<P: SemiExplicitDae + ?Sized> MassMatrixForm<'_, P> {
    fn split<'u>(&self, u: &'u [f64]) -> (&'u [f64], &'u [f64]) {
        u.split_at(self.0.n_diff())
    }
}

impl<P: SemiExplicitDae + ?Sized> MassMatrixProblem for MassMatrixForm<'_, P> {
    fn dim(&self) -> usize {
        self.0.n_diff() + self.0.n_alg()
    }

    fn mass_matrix(&self) -> DenseMatrix {
        let nf = self.0.n_diff();
        let diag: Vec<f64> = (0..self.dim())
            .map(|i| if i < nf { 1.0 } else { 0.0 })
            .collect();
        DenseMatrix::from_diagonal(&diag)
    }

    fn rhs(&self, t: f64, u: &[f64], out: &mut [f64]) {
        let (y, z) = self.split(u);
        let (fo, go) = out.split_at_mut(self.0.n_diff());
        self.0.f(t, y, z, fo);
        self.0.g(t, y, z, go);
    }

    fn jacobian(&self, t: f64, u: &[f64]) -> Option<DenseMatrix> {
        let (y, z) = self.split(u);
        let p = &self.0;
        let blocks = [
            p.f_y(t, y, z)?,
            p.f_z(t, y, z)?,
            p.g_y(t, y, z)?,
            p.g_z(t, y, z)?,
        ];
        let nf = p.n_diff();
        let mut j = DenseMatrix::zeros(self.dim(), self.dim());
        for (b, (r0, c0)) in blocks.iter().zip([(0, 0), (0, nf), (nf, 0), (nf, nf)]) {
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    j[(r0 + r, c0 + c)] = b[(r, c)];
                }
            }
        }
        Some(j)
    }

    fn time_derivative(&self, t: f64, u: &[f64]) -> Option<Vec<f64>> {
        let (y, z) = self.split(u);
        let mut ft = self.0.f_t(t, y, z)?;
        ft.extend(self.0.g_t(t, y, z)?);
        Some(ft)
    }
}

/// Forward-difference increment for a coordinate of size `u`.
pub fn fd_increment(u: f64) -> f64 {
    f64::EPSILON.sqrt() * u.abs().max(1.0)
}

/// Forward-difference Jacobian of `fun` at `u`, given `f0 = fun(u)`.
///
/// Returns a `f0.len() x u.len()` matrix; `fun` is called once per column.
pub fn fd_jacobian(mut fun: impl FnMut(&[f64], &mut [f64]), u: &[f64], f0: &[f64]) -> DenseMatrix {
    let m = f0.len();
    let mut jac = DenseMatrix::zeros(m, u.len());
    let mut up = u.to_vec();
    let mut fp = vec![0.0; m];
    for j in 0..u.len() {
        let delta = fd_increment(u[j]);
        up[j] = u[j] + delta;
        // Use the representable increment to reduce rounding in the quotient.
        let delta = up[j] - u[j];
        fun(&up, &mut fp);
        for i in 0..m {
            jac[(i, j)] = (fp[i] - f0[i]) / delta;
        }
        up[j] = u[j];
    }
    jac
}

/// Forward-difference derivative in `t` of `fun(t)`, given `f0 = fun(t)`.
pub fn fd_time_derivative(mut fun: impl FnMut(f64, &mut [f64]), t: f64, f0: &[f64]) -> Vec<f64> {
    let tp = t + fd_increment(t);
    let delta = tp - t;
    let mut fp = vec![0.0; f0.len()];
    fun(tp, &mut fp);
    fp.iter().zip(f0).map(|(a, b)| (a - b) / delta).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fd_jacobian_of_linear_map() {
        let a = DenseMatrix::from_rows(&[vec![1.0, -2.0, 0.5], vec![3.0, 0.0, 4.0]]);
        let u = [0.3, -1.2, 2.0];
        let f0 = a.mat_vec(&u);
        let j = fd_jacobian(|x, out| a.mat_vec_into(x, out), &u, &f0);
        assert!(j.add_scaled(-1.0, &a).max_abs() < 1e-7);
    }

    #[test]
    fn fd_time_derivative_of_autonomous_map() {
        let f = |_t: f64, out: &mut [f64]| out.copy_from_slice(&[2.0, -1.0]);
        let ft = fd_time_derivative(f, 0.7, &[2.0, -1.0]);
        assert!(ft.iter().all(|v| v.abs() < 1e-7));
    }

    struct Circle;

    impl SemiExplicitDae for Circle {
        fn n_diff(&self) -> usize {
            1
        }
        fn n_alg(&self) -> usize {
            1
        }
        fn f(&self, _t: f64, _y: &[f64], z: &[f64], out: &mut [f64]) {
            out[0] = z[0];
        }
        fn g(&self, t: f64, y: &[f64], z: &[f64], out: &mut [f64]) {
            out[0] = z[0] - y[0] * t;
        }
        fn f_y(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
            Some(DenseMatrix::zeros(1, 1))
        }
        fn f_z(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
            Some(DenseMatrix::identity(1))
        }
        fn g_y(&self, t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
            Some(DenseMatrix::from_rows(&[vec![-t]]))
        }
        fn g_z(&self, _t: f64, _y: &[f64], _z: &[f64]) -> Option<DenseMatrix> {
            Some(DenseMatrix::identity(1))
        }
    }

    #[test]
    fn mass_matrix_form_blocks() {
        let p = MassMatrixForm(&Circle);
        assert_eq!(p.mass_matrix().as_slice(), &[1.0, 0.0, 0.0, 0.0]);
        let j = p.jacobian(2.0, &[1.0, 2.0]).unwrap();
        assert_eq!(j.as_slice(), &[0.0, 1.0, -2.0, 1.0]);
        let mut out = [0.0; 2];
        p.rhs(2.0, &[1.0, 3.0], &mut out);
        assert_eq!(out, [3.0, 1.0]);
        assert!(p.time_derivative(2.0, &[1.0, 3.0]).is_none());
    }
}
