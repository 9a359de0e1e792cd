//! Independent reference implementations used as test oracles.

#![allow(dead_code, clippy::needless_range_loop)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rowdae::linalg::DenseMatrix;
use rowdae::tableau::{RowTableau, TableauKind, TableauSpec};

/// Plain explicit Runge-Kutta step `y1 = y0 + h sum b_i k_i`,
/// `k_i = f(t0 + c_i h, y0 + h sum_j a_ij k_j)`.
pub fn explicit_rk_step(
    a: &[Vec<f64>],
    b: &[f64],
    f: impl Fn(f64, &[f64]) -> Vec<f64>,
    t0: f64,
    y0: &[f64],
    h: f64,
) -> Vec<f64> {
    let s = b.len();
    let mut k: Vec<Vec<f64>> = Vec::with_capacity(s);
    for i in 0..s {
        let c: f64 = a[i][..i].iter().sum();
        let mut y = y0.to_vec();
        for j in 0..i {
            for (yy, kk) in y.iter_mut().zip(&k[j]) {
                *yy += h * a[i][j] * kk;
            }
        }
        k.push(f(t0 + c * h, &y));
    }
    let mut y1 = y0.to_vec();
    for i in 0..s {
        for (yy, kk) in y1.iter_mut().zip(&k[i]) {
            *yy += h * b[i] * kk;
        }
    }
    y1
}

fn rows(m: &DenseMatrix) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// `beta = alpha + gammaM`, recomputed from the raw coefficients.
pub fn beta_of(t: &RowTableau) -> Vec<Vec<f64>> {
    let mut b = rows(t.alpha());
    let g = rows(t.gamma_matrix());
    for (br, gr) in b.iter_mut().zip(&g) {
        for (x, y) in br.iter_mut().zip(gr) {
            *x += y;
        }
    }
    b
}

/// Inverse of a lower-triangular matrix by column-wise forward substitution.
pub fn lower_inverse(l: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = l.len();
    let mut inv = vec![vec![0.0; n]; n];
    for col in 0..n {
        for i in col..n {
            let mut v = if i == col { 1.0 } else { 0.0 };
            for j in col..i {
                v -= l[i][j] * inv[j][col];
            }
            inv[i][col] = v / l[i][i];
        }
    }
    inv
}

/// Scalar stability function `R(z) = 1 + z b^T (I - z B)^{-1} 1` for real `z`.
pub fn stability_real(t: &RowTableau, z: f64) -> f64 {
    let beta = beta_of(t);
    let s = beta.len();
    let mut x = vec![0.0; s];
    for i in 0..s {
        let mut v = 1.0;
        for j in 0..i {
            v += z * beta[i][j] * x[j];
        }
        x[i] = v / (1.0 - z * beta[i][i]);
    }
    1.0 + z * t.b().iter().zip(&x).map(|(b, v)| b * v).sum::<f64>()
}

/// Brute-force left-hand side of an order condition written as
/// `b_i alpha_ij beta_jk w_kl ...`.
///
/// Every factor `X_pq` introduces a fresh summation index for `q`, hanging
/// below the most recent index named `p`; the sum then runs over all index
/// values in nested loops, skipping zero coefficients.
pub fn brute_force_lhs(
    expression: &str,
    weights: &[f64],
    alpha: &[Vec<f64>],
    beta: &[Vec<f64>],
    w: &[Vec<f64>],
) -> f64 {
    let mut tokens = expression.split_whitespace();
    let root = tokens.next().expect("weight factor");
    let root_letter = root
        .strip_prefix("b_")
        .expect("starts with b_")
        .chars()
        .next()
        .unwrap();
    let mut current: Vec<(char, usize)> = vec![(root_letter, 0)];
    let mut factors: Vec<(&[Vec<f64>], usize, usize)> = Vec::new();
    let mut vars = 1;
    for tok in tokens {
        let (name, idx) = tok.split_once('_').expect("name_pq");
        let mut letters = idx.chars();
        let (p, q) = (letters.next().unwrap(), letters.next().unwrap());
        let matrix = match name {
            "alpha" => alpha,
            "beta" => beta,
            "w" => w,
            other => panic!("unknown coefficient {other}"),
        };
        let parent = current
            .iter()
            .rev()
            .find(|(l, _)| *l == p)
            .expect("parent index")
            .1;
        factors.push((matrix, parent, vars));
        current.push((q, vars));
        vars += 1;
    }

    fn sum(factors: &[(&[Vec<f64>], usize, usize)], values: &mut Vec<usize>, s: usize) -> f64 {
        let Some(&(m, parent, child)) = factors.first() else {
            return 1.0;
        };
        let mut total = 0.0;
        for v in 0..s {
            let c = m[values[parent]][v];
            if c == 0.0 {
                continue;
            }
            values[child] = v;
            total += c * sum(&factors[1..], values, s);
        }
        total
    }

    let s = weights.len();
    let mut values = vec![0; vars];
    let mut total = 0.0;
    for i in 0..s {
        if weights[i] == 0.0 {
            continue;
        }
        values[0] = i;
        total += weights[i] * sum(&factors, &mut values, s);
    }
    total
}

/// A random tableau with bounded coefficients and `gamma` in `[0.25, 0.5]`.
pub fn random_tableau(kind: TableauKind, s: usize, seed: u64) -> RowTableau {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gamma = rng.gen_range(0.25..0.5);
    let mut alpha = DenseMatrix::zeros(s, s);
    let mut gm = DenseMatrix::zeros(s, s);
    for i in 0..s {
        for j in 0..i {
            alpha[(i, j)] = rng.gen_range(-0.5..0.5);
            gm[(i, j)] = rng.gen_range(-0.5..0.5);
        }
        gm[(i, i)] = gamma;
    }
    let b = (0..s).map(|_| rng.gen_range(-0.5..0.5)).collect();
    RowTableau::new(TableauSpec {
        name: format!("random-{s}-{seed}"),
        kind,
        gamma,
        alpha,
        gamma_matrix: gm,
        b,
        bhat: None,
        dense: None,
        order: None,
        embedded_order: None,
    })
    .unwrap()
}

/// Dense matrix as a vector of rows.
pub type Rows = Vec<Vec<f64>>;

/// `(alpha, beta, w)` as nested vectors, `w` inverted independently.
pub fn oracle_matrices(t: &RowTableau) -> (Rows, Rows, Rows) {
    let beta = beta_of(t);
    let w = lower_inverse(&beta);
    (rows(t.alpha()), beta, w)
}
