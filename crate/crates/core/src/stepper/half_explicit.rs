//! Half-explicit Rosenbrock step: explicit stages for the differential part,
//! linearly implicit stages for the algebraic part.
//!
//! Per stage `i`, with `Y_i = y0 + sum_j alpha_ij l_j`, `Z_i = z0 + sum_j alpha_ij k_j`:
//!
//! ```text
//! l_i = h f(t0 + alpha_i h, Y_i, Z_i)
//! -gamma g_z k_i = g(t0 + alpha_i h, Y_i, Z_i) + g_y sum_{j<=i} gamma_ij l_j
//!                  + h gamma_i g_t + g_z sum_{j<i} gamma_ij k_j
//! ```
//!
//! All derivatives are taken at `(t0, y0, z0)`; only `g_z` is factored.

use super::{weighted_sum, IntegrationStats, StepError, StepOutcome, Stepper};
use crate::dae::{fd_jacobian, fd_time_derivative, SemiExplicitDae};
use crate::linalg::{lu_factor, DenseMatrix, LinalgError};
use crate::tableau::{RowTableau, TableauKind};

/// A half-explicit tableau bound to a semi-explicit problem.
pub struct HalfExplicitStepper<'a, P: ?Sized> {
    problem: &'a P,
    tableau: &'a RowTableau,
}

impl<'a, P: SemiExplicitDae + ?Sized> HalfExplicitStepper<'a, P> {
    pub fn new(problem: &'a P, tableau: &'a RowTableau) -> Result<Self, StepError> {
        if tableau.kind() != TableauKind::HalfExplicit {
            return Err(StepError::WrongKind {
                expected: TableauKind::HalfExplicit,
                found: tableau.kind(),
            });
        }
        Ok(Self { problem, tableau })
    }
}

impl<P: SemiExplicitDae + ?Sized> Stepper for HalfExplicitStepper<'_, P> {
    fn dim(&self) -> usize {
        self.problem.n_diff() + self.problem.n_alg()
    }

    fn tableau(&self) -> &RowTableau {
        self.tableau
    }

    fn step(
        &mut self,
        t0: f64,
        u0: &[f64],
        h: f64,
        stats: &mut IntegrationStats,
    ) -> Result<StepOutcome, StepError> {
        let nf = self.problem.n_diff();
        if u0.len() != self.dim() {
            return Err(StepError::DimensionMismatch {
                expected: self.dim(),
                got: u0.len(),
            });
        }
        let (y0, z0) = u0.split_at(nf);
        half_explicit_step(self.problem, self.tableau, t0, y0, z0, h, stats)
    }
}

fn all_finite(v: &[f64]) -> bool {
    v.iter().all(|x| x.is_finite())
}

/// `base + sum_j coef[j] * stages[j][offset..]`.
fn combine(base: &[f64], stages: &[Vec<f64>], coef: &[f64], offset: usize) -> Vec<f64> {
    let mut out = base.to_vec();
    for (c, st) in coef.iter().zip(stages) {
        if *c != 0.0 {
            for (o, v) in out.iter_mut().zip(&st[offset..]) {
                *o += c * v;
            }
        }
    }
    out
}

struct AlgebraicJacobians {
    g_y: DenseMatrix,
    g_z: DenseMatrix,
    g_t: Vec<f64>,
}

fn algebraic_jacobians<P: SemiExplicitDae + ?Sized>(
    p: &P,
    t0: f64,
    y0: &[f64],
    z0: &[f64],
    g0: &[f64],
    stats: &mut IntegrationStats,
) -> AlgebraicJacobians {
    let g_y = p.g_y(t0, y0, z0).unwrap_or_else(|| {
        stats.nfd += y0.len();
        fd_jacobian(|y, out| p.g(t0, y, z0, out), y0, g0)
    });
    let g_z = p.g_z(t0, y0, z0).unwrap_or_else(|| {
        stats.nfd += z0.len();
        fd_jacobian(|z, out| p.g(t0, y0, z, out), z0, g0)
    });
    let g_t = p.g_t(t0, y0, z0).unwrap_or_else(|| {
        stats.nfd += 1;
        fd_time_derivative(|t, out| p.g(t, y0, z0, out), t0, g0)
    });
    stats.njac += 1;
    AlgebraicJacobians { g_y, g_z, g_t }
}

/// One half-explicit step of size `h` from `(t0, y0, z0)`.
///
/// The returned stages are the stacks `(l_i, k_i)` and `u1 = (y1, z1)`. With
/// no algebraic variables nothing is factored and the step is the explicit
/// Runge-Kutta step with coefficients `(alpha, b)`.
pub fn half_explicit_step<P: SemiExplicitDae + ?Sized>(
    p: &P,
    tab: &RowTableau,
    t0: f64,
    y0: &[f64],
    z0: &[f64],
    h: f64,
    stats: &mut IntegrationStats,
) -> Result<StepOutcome, StepError> {
    let (nf, ng) = (p.n_diff(), p.n_alg());
    if y0.len() != nf || z0.len() != ng {
        return Err(StepError::DimensionMismatch {
            expected: nf + ng,
            got: y0.len() + z0.len(),
        });
    }
    if !all_finite(y0) || !all_finite(z0) {
        return Err(StepError::NonFiniteState { t: t0 });
    }
    let s = tab.stages();
    let gamma = tab.gamma();
    let alpha = tab.alpha();
    let gm = tab.gamma_matrix();

    let mut g0 = vec![0.0; ng];
    let mut algebraic = None;
    if ng > 0 {
        p.g(t0, y0, z0, &mut g0);
        stats.ng += 1;
        if !all_finite(&g0) {
            return Err(StepError::NonFiniteState { t: t0 });
        }
        let jac = algebraic_jacobians(p, t0, y0, z0, &g0, stats);
        stats.nlu += 1;
        let lu = lu_factor(&jac.g_z).map_err(|e| match e {
            LinalgError::NonFinite => StepError::NonFiniteState { t: t0 },
            _ => StepError::SingularIterationMatrix { t: t0, h },
        })?;
        algebraic = Some((jac, lu));
    }

    let mut stages: Vec<Vec<f64>> = Vec::with_capacity(s);
    let mut fvals: Vec<Vec<f64>> = Vec::with_capacity(s);
    let mut gvals: Vec<Vec<f64>> = Vec::with_capacity(s);
    for i in 0..s {
        let arow = &alpha.row(i)[..i];
        let ti = t0 + tab.alpha_sums()[i] * h;
        let (fi, gi) = match tab.stage_alias(i) {
            Some(j) => (fvals[j].clone(), gvals[j].clone()),
            None => {
                let yi = combine(y0, &stages, arow, 0);
                let zi = combine(z0, &stages, arow, nf);
                let mut fi = vec![0.0; nf];
                p.f(ti, &yi, &zi, &mut fi);
                stats.nf += 1;
                let gi = if i == 0 {
                    g0.clone()
                } else if ng > 0 {
                    let mut gi = vec![0.0; ng];
                    p.g(ti, &yi, &zi, &mut gi);
                    stats.ng += 1;
                    gi
                } else {
                    Vec::new()
                };
                if !all_finite(&fi) || !all_finite(&gi) {
                    return Err(StepError::NonFiniteState { t: t0 });
                }
                (fi, gi)
            }
        };

        let mut stage: Vec<f64> = fi.iter().map(|v| h * v).collect();
        if let Some((jac, lu)) = &algebraic {
            // g_y sum_{j<=i} gamma_ij l_j, with gamma_ii = gamma on the new l_i.
            let mut lsum = combine(&vec![0.0; nf], &stages, &gm.row(i)[..i], 0);
            for (a, l) in lsum.iter_mut().zip(&stage) {
                *a += gamma * l;
            }
            let ksum = combine(&vec![0.0; ng], &stages, &gm.row(i)[..i], nf);
            let gyl = jac.g_y.mat_vec(&lsum);
            let gzk = jac.g_z.mat_vec(&ksum);
            let hgi = h * tab.gamma_sums()[i];
            let mut rhs: Vec<f64> = (0..ng)
                .map(|r| gi[r] + gyl[r] + hgi * jac.g_t[r] + gzk[r])
                .collect();
            lu.solve_in_place(&mut rhs)
                .map_err(|_| StepError::SingularIterationMatrix { t: t0, h })?;
            let scale = -1.0 / gamma;
            stage.extend(rhs.iter().map(|v| v * scale));
            if !all_finite(&stage) {
                return Err(StepError::NonFiniteState { t: t0 });
            }
        }
        stages.push(stage);
        fvals.push(fi);
        gvals.push(gi);
    }

    let u0: Vec<f64> = y0.iter().chain(z0).copied().collect();
    let u1 = weighted_sum(&u0, &stages, tab.b());
    let u1_hat = tab.bhat().map(|bh| weighted_sum(&u0, &stages, bh));
    Ok(StepOutcome {
        t0,
        h,
        u1,
        u1_hat,
        stages,
    })
}
