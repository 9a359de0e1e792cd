//! Order conditions, simplifying assumptions and the linear stability function.
//!
//! Each condition is a sum over a rooted tree of indices: the root carries the
//! weight `b_i`, every edge carries one of `alpha`, `beta` or `w` (the inverse
//! of beta). Evaluation walks the tree bottom-up: a node's vector is the
//! elementwise product over its children of `M * child`, a leaf is the ones
//! vector, and the left-hand side is `b . root`. That is a handful of
//! matrix-vector products per condition regardless of how many indices the
//! summand has.
//!
//! The order of a condition is the number of tree nodes minus two for each
//! `w` factor: `w` undoes one power of `h` and marks an algebraic vertex.

mod tables;

use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::linalg::{dot, DenseMatrix, LinalgError};
use crate::tableau::{RowTableau, TableauKind};

/// Residual tolerance used to decide the attained order.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Alpha,
    Beta,
    W,
}

impl Coefficient {
    fn parse(name: &str) -> Option<Self> {
        match name {
            "alpha" => Some(Coefficient::Alpha),
            "beta" => Some(Coefficient::Beta),
            "w" => Some(Coefficient::W),
            _ => None,
        }
    }
}

/// One edge of a condition tree: `parent -> child` weighted by a coefficient matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub coefficient: Coefficient,
    pub parent: usize,
    pub child: usize,
}

/// Index tree of a condition. Node 0 is the root `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionTree {
    pub nodes: usize,
    pub edges: Vec<Edge>,
}

impl ConditionTree {
    /// Parses `b_i X_pq Y_qr ...`.
    ///
    /// The second index of a factor always introduces a new summation index,
    /// attached to the most recent index carrying the first letter. Letters
    /// that reappear on a disjoint branch therefore denote fresh indices.
    pub fn parse(expression: &str) -> Result<Self, String> {
        let mut tokens = expression.split_whitespace();
        let root = tokens.next().ok_or("empty expression")?;
        let root_letter = match root.strip_prefix("b_") {
            Some(l) if l.chars().count() == 1 => l.chars().next().unwrap(),
            _ => {
                return Err(format!(
                    "expression must start with b_<index>, found `{root}`"
                ))
            }
        };
        let mut latest = vec![(root_letter, 0usize)];
        let mut edges = Vec::new();
        let mut nodes = 1;
        for tok in tokens {
            let (name, idx) = tok
                .split_once('_')
                .ok_or_else(|| format!("malformed factor `{tok}`"))?;
            let coefficient =
                Coefficient::parse(name).ok_or_else(|| format!("unknown coefficient `{name}`"))?;
            let mut chars = idx.chars();
            let (p, q) = match (chars.next(), chars.next(), chars.next()) {
                (Some(p), Some(q), None) => (p, q),
                _ => return Err(format!("factor `{tok}` needs two index letters")),
            };
            let parent = latest
                .iter()
                .rev()
                .find(|(l, _)| *l == p)
                .map(|&(_, n)| n)
                .ok_or_else(|| format!("index `{p}` in `{tok}` is not bound yet"))?;
            let child = nodes;
            nodes += 1;
            latest.push((q, child));
            edges.push(Edge {
                coefficient,
                parent,
                child,
            });
        }
        Ok(Self { nodes, edges })
    }

    pub fn w_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| e.coefficient == Coefficient::W)
            .count()
    }

    pub fn order(&self) -> u32 {
        (self.nodes - 2 * self.w_count()) as u32
    }

    fn children(&self, node: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.parent == node)
    }
}

/// One row of a condition table.
#[derive(Debug, Clone)]
pub struct ConditionSpec {
    /// 1-based row number.
    pub index: usize,
    pub order: u32,
    pub expression: &'static str,
    /// The right-hand side is `1 / denominator`.
    pub denominator: u32,
    pub tree: ConditionTree,
}

impl ConditionSpec {
    pub fn rhs(&self) -> f64 {
        1.0 / f64::from(self.denominator)
    }

    pub fn has_w(&self) -> bool {
        self.tree.w_count() > 0
    }

    /// Left-hand side for the given coefficient matrices and weights.
    pub fn evaluate(&self, m: &ConditionMatrices, weights: &[f64]) -> f64 {
        dot(weights, &node_vector(&self.tree, 0, m))
    }
}

fn node_vector(tree: &ConditionTree, node: usize, m: &ConditionMatrices) -> Vec<f64> {
    let mut acc = vec![1.0; m.stages()];
    for edge in tree.children(node) {
        let child = node_vector(tree, edge.child, m);
        let mapped = m.matrix(edge.coefficient).mat_vec(&child);
        for (a, v) in acc.iter_mut().zip(&mapped) {
            *a *= v;
        }
    }
    acc
}

/// The three coefficient matrices conditions are written in.
#[derive(Debug, Clone)]
pub struct ConditionMatrices {
    pub alpha: DenseMatrix,
    pub beta: DenseMatrix,
    pub w: DenseMatrix,
}

impl ConditionMatrices {
    pub fn from_tableau(t: &RowTableau) -> Result<Self, LinalgError> {
        Ok(Self {
            alpha: t.alpha().clone(),
            beta: t.beta().clone(),
            w: t.w_matrix()?,
        })
    }

    pub fn stages(&self) -> usize {
        self.alpha.rows()
    }

    pub fn matrix(&self, c: Coefficient) -> &DenseMatrix {
        match c {
            Coefficient::Alpha => &self.alpha,
            Coefficient::Beta => &self.beta,
            Coefficient::W => &self.w,
        }
    }
}

fn build_table(rows: &'static [(&'static str, u32)]) -> Vec<ConditionSpec> {
    rows.iter()
        .enumerate()
        .map(|(i, &(expression, denominator))| {
            let tree = ConditionTree::parse(expression)
                .unwrap_or_else(|e| panic!("condition {}: {e}", i + 1));
            ConditionSpec {
                index: i + 1,
                order: tree.order(),
                expression,
                denominator,
                tree,
            }
        })
        .collect()
}

/// The 130 conditions for ROW schemes on index-1 problems, up to order 6.
pub fn row_conditions() -> &'static [ConditionSpec] {
    static TABLE: OnceLock<Vec<ConditionSpec>> = OnceLock::new();
    TABLE.get_or_init(|| build_table(&tables::ROW_TABLE))
}

/// The 63 conditions for half-explicit schemes, up to order 5.
pub fn half_explicit_conditions() -> &'static [ConditionSpec] {
    static TABLE: OnceLock<Vec<ConditionSpec>> = OnceLock::new();
    TABLE.get_or_init(|| build_table(&tables::HALF_EXPLICIT_TABLE))
}

pub fn conditions_for(kind: TableauKind) -> &'static [ConditionSpec] {
    match kind {
        TableauKind::Row => row_conditions(),
        TableauKind::HalfExplicit => half_explicit_conditions(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionResidual {
    pub index: usize,
    pub order: u32,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub kind: TableauKind,
    pub entries: Vec<ConditionResidual>,
}

impl ConditionReport {
    pub fn max_order(&self) -> u32 {
        self.entries.iter().map(|e| e.order).max().unwrap_or(0)
    }

    /// Largest residual among conditions of exactly this order.
    pub fn max_residual(&self, order: u32) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.order == order)
            .map(|e| e.residual)
            .fold(0.0, f64::max)
    }

    /// Largest `p` such that every condition of order `<= p` has residual `<= tol`.
    pub fn attained_order(&self, tol: f64) -> u32 {
        let mut attained = 0;
        for p in 1..=self.max_order() {
            let ok = self
                .entries
                .iter()
                .filter(|e| e.order == p)
                .all(|e| e.residual <= tol);
            if !ok {
                break;
            }
            attained = p;
        }
        attained
    }

    /// The conditions free of `W` factors, i.e. the classical conditions for
    /// the explicit (pure ODE) part of a half-explicit method.
    pub fn explicit_subset(&self) -> ConditionReport {
        let specs = conditions_for(self.kind);
        ConditionReport {
            kind: self.kind,
            entries: self
                .entries
                .iter()
                .filter(|e| !specs[e.index - 1].has_w())
                .cloned()
                .collect(),
        }
    }

    /// Conditions that fail the tolerance, in table order.
    pub fn failures(&self, tol: f64) -> impl Iterator<Item = &ConditionResidual> {
        self.entries
            .iter()
            .filter(move |e| e.residual.is_nan() || e.residual > tol)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 1..=self.max_order() {
            let count = self.entries.iter().filter(|e| e.order == p).count();
            writeln!(
                f,
                "order {p}: {count:3} conditions, max residual {:.3e}",
                self.max_residual(p)
            )?;
        }
        Ok(())
    }
}

/// Evaluates a condition table with the given weights.
pub fn evaluate_conditions(
    specs: &[ConditionSpec],
    kind: TableauKind,
    matrices: &ConditionMatrices,
    weights: &[f64],
) -> ConditionReport {
    let entries = specs
        .iter()
        .map(|spec| {
            let lhs = spec.evaluate(matrices, weights);
            let rhs = spec.rhs();
            ConditionResidual {
                index: spec.index,
                order: spec.order,
                lhs,
                rhs,
                residual: (lhs - rhs).abs(),
            }
        })
        .collect();
    ConditionReport { kind, entries }
}

fn report(
    t: &RowTableau,
    kind: TableauKind,
    weights: &[f64],
) -> Result<ConditionReport, LinalgError> {
    let m = ConditionMatrices::from_tableau(t)?;
    Ok(evaluate_conditions(conditions_for(kind), kind, &m, weights))
}

pub fn row_condition_residuals(t: &RowTableau) -> Result<ConditionReport, LinalgError> {
    report(t, TableauKind::Row, t.b())
}

pub fn half_explicit_condition_residuals(t: &RowTableau) -> Result<ConditionReport, LinalgError> {
    report(t, TableauKind::HalfExplicit, t.b())
}

/// The table matching the tableau's kind, evaluated with arbitrary weights
/// (typically `b` or `bhat`).
pub fn condition_residuals_for(
    t: &RowTableau,
    weights: &[f64],
) -> Result<ConditionReport, LinalgError> {
    report(t, t.kind(), weights)
}

/// `|sum_j w_ij alpha_j^2 - 2 alpha_i|` for stages `i = 2..s`.
pub fn simplifying_residuals(t: &RowTableau) -> Result<Vec<f64>, LinalgError> {
    let w = t.w_matrix()?;
    let a = t.alpha_sums();
    let a2: Vec<f64> = a.iter().map(|x| x * x).collect();
    let wa2 = w.mat_vec(&a2);
    Ok((1..t.stages())
        .map(|i| (wa2[i] - 2.0 * a[i]).abs())
        .collect())
}

/// `R(z) = 1 + z b^T (I - z B)^{-1} 1`, by forward substitution on the lower
/// triangular `I - z B`.
pub fn stability_function(t: &RowTableau, z: Complex64) -> Result<Complex64, LinalgError> {
    let beta = t.beta();
    let s = t.stages();
    let mut x = vec![Complex64::new(0.0, 0.0); s];
    for i in 0..s {
        let mut acc = Complex64::new(1.0, 0.0);
        for j in 0..i {
            acc += z * beta[(i, j)] * x[j];
        }
        let pivot = Complex64::new(1.0, 0.0) - z * beta[(i, i)];
        let scale = 1.0 + z.norm() * beta[(i, i)].abs();
        if pivot.norm() <= 1e-14 * scale {
            return Err(LinalgError::SingularMatrix {
                column: i,
                pivot: pivot.norm(),
            });
        }
        x[i] = acc / pivot;
    }
    let sum: Complex64 = t.b().iter().zip(&x).map(|(b, xi)| *b * xi).sum();
    Ok(Complex64::new(1.0, 0.0) + z * sum)
}

/// `|R(inf)| = |1 - b^T W 1|`.
pub fn r_infinity(t: &RowTableau) -> Result<f64, LinalgError> {
    let w = t.w_matrix()?;
    let w1 = w.mat_vec(&vec![1.0; t.stages()]);
    Ok((1.0 - dot(t.b(), &w1)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::{linearly_implicit_euler, ros2, tsit5da};

    #[test]
    fn table_sizes_and_order_bands() {
        let row = row_conditions();
        assert_eq!(row.len(), 130);
        let he = half_explicit_conditions();
        assert_eq!(he.len(), 63);
        let bands = |specs: &[ConditionSpec]| {
            let mut b = Vec::new();
            for s in specs {
                if b.last().is_none_or(|&(o, _)| o != s.order) {
                    b.push((s.order, s.index));
                }
            }
            b
        };
        assert_eq!(bands(he), vec![(1, 1), (2, 2), (3, 4), (4, 10), (5, 31)]);
        assert_eq!(
            bands(row),
            vec![(1, 1), (2, 2), (3, 4), (4, 9), (5, 25), (6, 78)]
        );
    }

    #[test]
    fn reused_letters_open_new_branches() {
        let t = ConditionTree::parse("b_i alpha_ij alpha_jk alpha_ik alpha_kl").unwrap();
        assert_eq!(t.nodes, 5);
        assert_eq!(t.edges[2].parent, 0);
        assert_eq!(t.edges[3].parent, 3);
    }

    #[test]
    fn parse_errors() {
        assert!(ConditionTree::parse("").is_err());
        assert!(ConditionTree::parse("a_i").is_err());
        assert!(ConditionTree::parse("b_i gamma_ij").is_err());
        assert!(ConditionTree::parse("b_i alpha_jk").is_err());
    }

    #[test]
    fn euler_is_order_one() {
        let r = row_condition_residuals(&linearly_implicit_euler()).unwrap();
        assert_eq!(r.entries[0].residual, 0.0);
        assert_eq!(r.entries[1].residual, 0.5);
        assert_eq!(r.attained_order(DEFAULT_TOLERANCE), 1);
    }

    #[test]
    fn ros2_is_order_two() {
        let t = ros2();
        let r = row_condition_residuals(&t).unwrap();
        assert!(r.entries[0].residual < 1e-14);
        assert!(r.entries[1].residual < 1e-14);
        assert_eq!(r.attained_order(DEFAULT_TOLERANCE), 2);
        assert!(r_infinity(&t).unwrap() < 1e-15);
        let embedded = condition_residuals_for(&t, t.bhat().unwrap()).unwrap();
        assert_eq!(embedded.attained_order(DEFAULT_TOLERANCE), 1);
    }

    #[test]
    fn tsit5da_main_weights_satisfy_all_conditions() {
        let r = half_explicit_condition_residuals(&tsit5da()).unwrap();
        let worst = r.entries.iter().map(|e| e.residual).fold(0.0, f64::max);
        assert!(worst <= 1e-8, "{worst}");
        assert_eq!(r.attained_order(DEFAULT_TOLERANCE), 5);
    }

    #[test]
    fn tsit5da_pure_rk_subset_for_embedded() {
        let t = tsit5da();
        let r = condition_residuals_for(&t, t.bhat().unwrap()).unwrap();
        let specs = half_explicit_conditions();
        for e in &r.entries {
            if e.order <= 4 && !specs[e.index - 1].has_w() {
                assert!(e.residual <= 1e-8, "condition {}: {}", e.index, e.residual);
            }
        }
        assert_eq!(r.explicit_subset().attained_order(DEFAULT_TOLERANCE), 4);
        let failing: Vec<usize> = r
            .failures(DEFAULT_TOLERANCE)
            .filter(|e| e.order <= 4)
            .map(|e| e.index)
            .collect();
        assert_eq!(failing, [23, 25, 27]);
    }

    #[test]
    fn simplifying_assumptions() {
        let r = simplifying_residuals(&tsit5da()).unwrap();
        assert_eq!(r.len(), 11);
        assert!(r.iter().all(|&x| x <= 1e-8), "{r:?}");
        assert!(simplifying_residuals(&linearly_implicit_euler())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn stability_function_values() {
        let euler = linearly_implicit_euler();
        let r0 = stability_function(&euler, Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(r0, Complex64::new(1.0, 0.0));
        let r = stability_function(&euler, Complex64::new(-1.0, 0.0)).unwrap();
        assert!((r - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!(stability_function(&euler, Complex64::new(1.0, 0.0)).is_err());
        assert!(r_infinity(&tsit5da()).unwrap() <= 1e-12);
        assert!(
            stability_function(&tsit5da(), Complex64::new(0.0, 0.0)).unwrap()
                == Complex64::new(1.0, 0.0)
        );
    }
}
