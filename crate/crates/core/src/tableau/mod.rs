//! Coefficient sets for ROW and half-explicit Rosenbrock schemes.
//!
//! A [`RowTableau`] is built from a raw [`TableauSpec`] and validated once:
//! `alpha` strictly lower triangular, `gamma_matrix` lower triangular with
//! `gamma` on the diagonal. The β matrix (`beta_ij = alpha_ij + gamma_ij`,
//! `beta_ii = gamma`), the nodes `alpha_i` and the sums `gamma_i` are always
//! derived here and never read from input.

mod builtin;
mod format;
mod tsit5da_data;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::linalg::{invert, DenseMatrix, LinalgError};

pub use builtin::{builtin, linearly_implicit_euler, ros2, tsit5da, BUILTIN_NAMES};
pub use format::{load_tableau, parse_tableau, save_tableau, write_tableau};

/// Tolerance used by [`check_stiffly_accurate`].
pub const STIFFLY_ACCURATE_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum TableauError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("unknown built-in tableau `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableauKind {
    /// Classical ROW scheme for `M y' = f(t, y)`.
    Row,
    /// Explicit stages for `f`, linearly implicit stages for `g`.
    HalfExplicit,
}

impl TableauKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TableauKind::Row => "row",
            TableauKind::HalfExplicit => "half_explicit",
        }
    }
}

impl fmt::Display for TableauKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TableauKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "row" => Ok(TableauKind::Row),
            "half_explicit" => Ok(TableauKind::HalfExplicit),
            other => Err(format!("unknown tableau kind `{other}`")),
        }
    }
}

/// Dense-output coefficient sets. The weight polynomial is
/// `b_i(τ) = τ(b_i−c_i) + τ²(c_i−d_i) + τ³(d_i−e_i) + τ⁴(e_i−f_i) + τ⁵f_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseCoefficients {
    pub c: Vec<f64>,
    pub d: Vec<f64>,
    pub e: Vec<f64>,
    /// `None` means all zeros (quartic interpolant).
    pub f: Option<Vec<f64>>,
}

impl DenseCoefficients {
    /// Evaluates every `b_i(τ)`.
    ///
    /// Written as `τ b_i + (τ²−τ) c_i + (τ³−τ²) d_i + (τ⁴−τ³) e_i + (τ⁵−τ⁴) f_i`,
    /// which is algebraically the same polynomial but gives `b_i(0) = 0` and
    /// `b_i(1) = b_i` without rounding.
    pub fn weights(&self, b: &[f64], tau: f64) -> Vec<f64> {
        let t2 = tau * tau;
        let t3 = t2 * tau;
        let t4 = t3 * tau;
        let t5 = t4 * tau;
        let (p1, p2, p3, p4) = (t2 - tau, t3 - t2, t4 - t3, t5 - t4);
        (0..b.len())
            .map(|i| {
                let f = self.f.as_ref().map_or(0.0, |f| f[i]);
                tau * b[i] + p1 * self.c[i] + p2 * self.d[i] + p3 * self.e[i] + p4 * f
            })
            .collect()
    }
}

/// Raw, unvalidated coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct TableauSpec {
    pub name: String,
    pub kind: TableauKind,
    pub gamma: f64,
    pub alpha: DenseMatrix,
    pub gamma_matrix: DenseMatrix,
    pub b: Vec<f64>,
    pub bhat: Option<Vec<f64>>,
    pub dense: Option<DenseCoefficients>,
    /// Declared order of the main and embedded weights; derived from the
    /// order conditions when absent.
    pub order: Option<u32>,
    pub embedded_order: Option<u32>,
}

/// A validated coefficient set with derived quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct RowTableau {
    spec: TableauSpec,
    beta: DenseMatrix,
    alpha_sums: Vec<f64>,
    gamma_sums: Vec<f64>,
    stage_alias: Vec<Option<usize>>,
}

impl RowTableau {
    pub fn new(spec: TableauSpec) -> Result<Self, TableauError> {
        let s = spec.b.len();
        if s == 0 {
            return Err(TableauError::Shape("tableau has no stages".into()));
        }
        for (label, m) in [("alpha", &spec.alpha), ("gammaM", &spec.gamma_matrix)] {
            if m.rows() != s || m.cols() != s {
                return Err(TableauError::Shape(format!(
                    "{label} is {}x{}, expected {s}x{s}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let check_len = |label: &str, v: &[f64]| {
            if v.len() == s {
                Ok(())
            } else {
                Err(TableauError::Shape(format!(
                    "{label} has {} entries, expected {s}",
                    v.len()
                )))
            }
        };
        if let Some(bhat) = &spec.bhat {
            check_len("bhat", bhat)?;
        }
        if let Some(dense) = &spec.dense {
            check_len("c", &dense.c)?;
            check_len("d", &dense.d)?;
            check_len("e", &dense.e)?;
            if let Some(f) = &dense.f {
                check_len("f", f)?;
            }
        }
        if !spec.alpha.is_strictly_lower_triangular() {
            return Err(TableauError::Shape(
                "alpha must be strictly lower triangular".into(),
            ));
        }
        if !spec.gamma_matrix.is_lower_triangular() {
            return Err(TableauError::Shape(
                "gammaM must be lower triangular".into(),
            ));
        }
        if let Some(i) = (0..s).find(|&i| spec.gamma_matrix[(i, i)] != spec.gamma) {
            return Err(TableauError::Invariant(format!(
                "gammaM[{},{}] = {} differs from gamma = {}",
                i + 1,
                i + 1,
                spec.gamma_matrix[(i, i)],
                spec.gamma
            )));
        }
        let all_finite = spec.gamma.is_finite()
            && spec.alpha.all_finite()
            && spec.gamma_matrix.all_finite()
            && spec
                .b
                .iter()
                .chain(spec.bhat.iter().flatten())
                .all(|v| v.is_finite());
        if !all_finite {
            return Err(TableauError::Invariant("non-finite coefficient".into()));
        }

        let mut beta = spec.alpha.add_scaled(1.0, &spec.gamma_matrix);
        for i in 0..s {
            beta[(i, i)] = spec.gamma;
        }
        let alpha_sums: Vec<f64> = (0..s).map(|i| spec.alpha.row(i).iter().sum()).collect();
        let gamma_sums: Vec<f64> = (0..s)
            .map(|i| spec.gamma + spec.gamma_matrix.row(i)[..i].iter().sum::<f64>())
            .collect();
        // A stage whose alpha row equals an earlier one has identical
        // arguments, so its right-hand side value can be reused.
        let stage_alias = (0..s)
            .map(|i| (0..i).find(|&j| spec.alpha.row(j) == spec.alpha.row(i)))
            .collect();

        Ok(Self {
            spec,
            beta,
            alpha_sums,
            gamma_sums,
            stage_alias,
        })
    }

    pub fn spec(&self) -> &TableauSpec {
        &self.spec
    }

    pub fn into_spec(self) -> TableauSpec {
        self.spec
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn kind(&self) -> TableauKind {
        self.spec.kind
    }

    pub fn stages(&self) -> usize {
        self.spec.b.len()
    }

    pub fn gamma(&self) -> f64 {
        self.spec.gamma
    }

    pub fn alpha(&self) -> &DenseMatrix {
        &self.spec.alpha
    }

    pub fn gamma_matrix(&self) -> &DenseMatrix {
        &self.spec.gamma_matrix
    }

    pub fn beta(&self) -> &DenseMatrix {
        &self.beta
    }

    pub fn b(&self) -> &[f64] {
        &self.spec.b
    }

    pub fn bhat(&self) -> Option<&[f64]> {
        self.spec.bhat.as_deref()
    }

    pub fn dense(&self) -> Option<&DenseCoefficients> {
        self.spec.dense.as_ref()
    }

    /// `alpha_i = Σ_j alpha_ij`
    pub fn alpha_sums(&self) -> &[f64] {
        &self.alpha_sums
    }

    /// `gamma_i = gamma + Σ_{j<i} gamma_ij`
    pub fn gamma_sums(&self) -> &[f64] {
        &self.gamma_sums
    }

    /// Earliest stage with an identical alpha row, if any.
    pub fn stage_alias(&self, stage: usize) -> Option<usize> {
        self.stage_alias[stage]
    }

    /// `W = B⁻¹`.
    pub fn w_matrix(&self) -> Result<DenseMatrix, LinalgError> {
        invert(&self.beta)
    }

    pub fn declared_order(&self) -> Option<u32> {
        self.spec.order
    }

    pub fn declared_embedded_order(&self) -> Option<u32> {
        self.spec.embedded_order
    }

    /// Order of the main weights: declared, or attained on the condition table.
    pub fn order(&self) -> u32 {
        self.spec.order.unwrap_or_else(|| {
            crate::conditions::condition_residuals_for(self, self.b())
                .map(|r| r.attained_order(crate::conditions::DEFAULT_TOLERANCE))
                .unwrap_or(0)
        })
    }

    /// Order of the embedded weights, if there are any.
    pub fn embedded_order(&self) -> Option<u32> {
        let bhat = self.bhat()?;
        Some(self.spec.embedded_order.unwrap_or_else(|| {
            crate::conditions::condition_residuals_for(self, bhat)
                .map(|r| r.attained_order(crate::conditions::DEFAULT_TOLERANCE))
                .unwrap_or(0)
        }))
    }

    /// The same stages propagated with the embedded weights. Used to measure
    /// the embedded scheme's own convergence.
    pub fn embedded_as_main(&self) -> Option<RowTableau> {
        let bhat = self.spec.bhat.clone()?;
        let spec = TableauSpec {
            name: format!("{}-embedded", self.spec.name),
            b: bhat,
            bhat: None,
            dense: None,
            order: self.spec.embedded_order,
            embedded_order: None,
            ..self.spec.clone()
        };
        Self::new(spec).ok()
    }

    /// Copy with different main weights; everything else unchanged.
    pub fn with_weights(&self, b: Vec<f64>) -> Result<RowTableau, TableauError> {
        Self::new(TableauSpec {
            b,
            order: None,
            ..self.spec.clone()
        })
    }
}

pub fn beta_matrix(t: &RowTableau) -> DenseMatrix {
    t.beta().clone()
}

pub fn w_matrix(t: &RowTableau) -> Result<DenseMatrix, LinalgError> {
    t.w_matrix()
}

/// Result of the stiffly-accurate structure check.
#[derive(Debug, Clone, PartialEq)]
pub struct StifflyAccurateCheck {
    pub holds: bool,
    /// `max(|b_i − β_{s,i}|, |b_s − γ|, |α_s − 1|)`
    pub main_residual: f64,
    /// Same for `bhat` against row `s−1`, when embedded weights exist.
    pub embedded_residual: Option<f64>,
}

/// Checks `b_i = β_{s,i}`, `b_s = γ`, `α_s = 1`, and for the embedded weights
/// `b̂_i = β_{s−1,i}`, `b̂_{s−1} = γ`, `α_{s−1} = 1`, `b̂_s = 0`.
///
/// A single-stage tableau passes vacuously.
pub fn check_stiffly_accurate(t: &RowTableau) -> StifflyAccurateCheck {
    let s = t.stages();
    if s < 2 {
        return StifflyAccurateCheck {
            holds: true,
            main_residual: 0.0,
            embedded_residual: None,
        };
    }
    let row_residual = |weights: &[f64], row: usize| {
        let beta = t.beta().row(row);
        let mut r = (t.alpha_sums()[row] - 1.0).abs();
        for (i, w) in weights.iter().enumerate() {
            let target = if i <= row { beta[i] } else { 0.0 };
            r = r.max((w - target).abs());
        }
        r
    };
    let main_residual = row_residual(t.b(), s - 1);
    let embedded_residual = t.bhat().map(|bhat| row_residual(bhat, s - 2));
    let holds = main_residual <= STIFFLY_ACCURATE_TOL
        && embedded_residual.is_none_or(|r| r <= STIFFLY_ACCURATE_TOL);
    StifflyAccurateCheck {
        holds,
        main_residual,
        embedded_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(gamma: f64) -> RowTableau {
        RowTableau::new(TableauSpec {
            name: "scalar".into(),
            kind: TableauKind::Row,
            gamma,
            alpha: DenseMatrix::zeros(1, 1),
            gamma_matrix: DenseMatrix::from_rows(&[vec![gamma]]),
            b: vec![1.0],
            bhat: None,
            dense: None,
            order: None,
            embedded_order: None,
        })
        .unwrap()
    }

    #[test]
    fn single_stage_beta_and_w() {
        let t = scalar(1.0);
        assert_eq!(t.beta().as_slice(), &[1.0]);
        assert_eq!(t.w_matrix().unwrap().as_slice(), &[1.0]);
        let t = scalar(0.15);
        assert!((t.w_matrix().unwrap()[(0, 0)] - 6.666_666_666_666_667).abs() < 1e-12);
    }

    #[test]
    fn zero_gamma_is_singular() {
        let t = scalar(0.0);
        assert!(matches!(
            t.w_matrix(),
            Err(LinalgError::SingularMatrix { .. })
        ));
    }

    #[test]
    fn rejects_bad_diagonal() {
        let mut spec = scalar(0.5).into_spec();
        spec.gamma_matrix[(0, 0)] = 0.4;
        assert!(matches!(
            RowTableau::new(spec),
            Err(TableauError::Invariant(_))
        ));
    }

    #[test]
    fn rejects_nonzero_alpha_diagonal() {
        let mut spec = scalar(0.5).into_spec();
        spec.alpha[(0, 0)] = 0.1;
        assert!(matches!(RowTableau::new(spec), Err(TableauError::Shape(_))));
    }

    #[test]
    fn dense_weights_are_exact_at_endpoints() {
        let t = tsit5da();
        let dense = t.dense().unwrap();
        assert!(dense.weights(t.b(), 0.0).iter().all(|&w| w == 0.0));
        assert_eq!(dense.weights(t.b(), 1.0), t.b());
    }

    #[test]
    fn embedded_as_main_swaps_weights() {
        let t = tsit5da();
        let e = t.embedded_as_main().unwrap();
        assert_eq!(e.b(), t.bhat().unwrap());
        assert!(e.bhat().is_none());
        assert!(linearly_implicit_euler().embedded_as_main().is_none());
    }

    #[test]
    fn stage_aliases_follow_identical_rows() {
        let t = tsit5da();
        assert_eq!(t.stage_alias(10), Some(8));
        assert_eq!(t.stage_alias(11), None);
        assert_eq!(t.stage_alias(0), None);
    }
}
