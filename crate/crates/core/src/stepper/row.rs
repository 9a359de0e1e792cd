//! Linearly implicit ROW step for `M y' = f(t, y)`.

use super::{weighted_sum, IntegrationStats, StepError, StepOutcome, Stepper};
use crate::dae::{fd_jacobian, fd_time_derivative, MassMatrixProblem};
use crate::linalg::{lu_factor, DenseMatrix, LinalgError};
use crate::tableau::{RowTableau, TableauKind};

/// A ROW tableau bound to a mass-matrix problem; caches `M`.
pub struct RowStepper<'a, P: ?Sized> {
    problem: &'a P,
    tableau: &'a RowTableau,
    mass: DenseMatrix,
}

impl<'a, P: MassMatrixProblem + ?Sized> RowStepper<'a, P> {
    pub fn new(problem: &'a P, tableau: &'a RowTableau) -> Result<Self, StepError> {
        if tableau.kind() != TableauKind::Row {
            return Err(StepError::WrongKind {
                expected: TableauKind::Row,
                found: tableau.kind(),
            });
        }
        Ok(Self {
            problem,
            tableau,
            mass: problem.mass_matrix(),
        })
    }
}

impl<P: MassMatrixProblem + ?Sized> Stepper for RowStepper<'_, P> {
    fn dim(&self) -> usize {
        self.problem.dim()
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
        step_with_mass(self.problem, self.tableau, &self.mass, t0, u0, h, stats)
    }
}

/// One ROW step of size `h` from `(t0, y0)`.
pub fn row_step<P: MassMatrixProblem + ?Sized>(
    problem: &P,
    tableau: &RowTableau,
    t0: f64,
    y0: &[f64],
    h: f64,
    stats: &mut IntegrationStats,
) -> Result<StepOutcome, StepError> {
    RowStepper::new(problem, tableau)?.step(t0, y0, h, stats)
}

fn all_finite(v: &[f64]) -> bool {
    v.iter().all(|x| x.is_finite())
}

fn step_with_mass<P: MassMatrixProblem + ?Sized>(
    p: &P,
    tab: &RowTableau,
    mass: &DenseMatrix,
    t0: f64,
    y0: &[f64],
    h: f64,
    stats: &mut IntegrationStats,
) -> Result<StepOutcome, StepError> {
    let n = p.dim();
    if y0.len() != n {
        return Err(StepError::DimensionMismatch {
            expected: n,
            got: y0.len(),
        });
    }
    if !all_finite(y0) {
        return Err(StepError::NonFiniteState { t: t0 });
    }
    let s = tab.stages();
    let gamma = tab.gamma();
    let alpha = tab.alpha();
    let gm = tab.gamma_matrix();

    // Stage 1 is evaluated at (t0, y0) since alpha is strictly lower triangular,
    // so f(t0, y0) doubles as the base point of the difference quotients.
    let mut f0 = vec![0.0; n];
    p.rhs(t0, y0, &mut f0);
    stats.nf += 1;
    if !all_finite(&f0) {
        return Err(StepError::NonFiniteState { t: t0 });
    }
    let jac = match p.jacobian(t0, y0) {
        Some(j) => j,
        None => {
            stats.nfd += n;
            fd_jacobian(|u, out| p.rhs(t0, u, out), y0, &f0)
        }
    };
    let ft = match p.time_derivative(t0, y0) {
        Some(v) => v,
        None => {
            stats.nfd += 1;
            fd_time_derivative(|t, out| p.rhs(t, y0, out), t0, &f0)
        }
    };
    stats.njac += 1;

    let e = mass.add_scaled(-h * gamma, &jac);
    stats.nlu += 1;
    let lu = lu_factor(&e).map_err(|err| match err {
        LinalgError::NonFinite => StepError::NonFiniteState { t: t0 },
        _ => StepError::SingularIterationMatrix { t: t0, h },
    })?;

    let mut stages: Vec<Vec<f64>> = Vec::with_capacity(s);
    let mut fvals: Vec<Vec<f64>> = Vec::with_capacity(s);
    let mut arg = vec![0.0; n];
    let mut gsum = vec![0.0; n];
    for i in 0..s {
        let fi = if i == 0 {
            f0.clone()
        } else if let Some(j) = tab.stage_alias(i) {
            fvals[j].clone()
        } else {
            arg.copy_from_slice(y0);
            for (j, k) in stages.iter().enumerate() {
                let a = alpha[(i, j)];
                if a != 0.0 {
                    for (x, kv) in arg.iter_mut().zip(k) {
                        *x += a * kv;
                    }
                }
            }
            let mut fi = vec![0.0; n];
            p.rhs(t0 + tab.alpha_sums()[i] * h, &arg, &mut fi);
            stats.nf += 1;
            if !all_finite(&fi) {
                return Err(StepError::NonFiniteState { t: t0 });
            }
            fi
        };

        gsum.iter_mut().for_each(|x| *x = 0.0);
        let mut any = false;
        for (j, k) in stages.iter().enumerate() {
            let g = gm[(i, j)];
            if g != 0.0 {
                any = true;
                for (x, kv) in gsum.iter_mut().zip(k) {
                    *x += g * kv;
                }
            }
        }
        let jg = if any { Some(jac.mat_vec(&gsum)) } else { None };
        let gi = tab.gamma_sums()[i];
        let mut rhs: Vec<f64> = (0..n)
            .map(|r| {
                let mut v = h * fi[r] + h * h * gi * ft[r];
                if let Some(jg) = &jg {
                    v += h * jg[r];
                }
                v
            })
            .collect();
        lu.solve_in_place(&mut rhs)
            .map_err(|_| StepError::SingularIterationMatrix { t: t0, h })?;
        if !all_finite(&rhs) {
            return Err(StepError::NonFiniteState { t: t0 });
        }
        stages.push(rhs);
        fvals.push(fi);
    }

    let u1 = weighted_sum(y0, &stages, tab.b());
    let u1_hat = tab.bhat().map(|bh| weighted_sum(y0, &stages, bh));
    Ok(StepOutcome {
        t0,
        h,
        u1,
        u1_hat,
        stages,
    })
}
