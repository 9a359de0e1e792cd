//! Built-in tableaus: Tsit5DA and two small ROW fixtures.

use super::{
    tsit5da_data as data, DenseCoefficients, RowTableau, TableauError, TableauKind, TableauSpec,
};
use crate::linalg::DenseMatrix;

pub const BUILTIN_NAMES: [&str; 3] = ["tsit5da", "li-euler", "ros2"];

/// Looks up a built-in tableau by its command-line name.
pub fn builtin(name: &str) -> Result<RowTableau, TableauError> {
    match name {
        "tsit5da" => Ok(tsit5da()),
        "li-euler" => Ok(linearly_implicit_euler()),
        "ros2" => Ok(ros2()),
        other => Err(TableauError::UnknownName(other.to_string())),
    }
}

fn matrix<const N: usize>(rows: &[[f64; N]; N]) -> DenseMatrix {
    let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
    DenseMatrix::from_row_major(N, N, data)
}

/// The 12-stage half-explicit method of order 5(4) with quartic dense output.
pub fn tsit5da() -> RowTableau {
    RowTableau::new(TableauSpec {
        name: "tsit5da".into(),
        kind: TableauKind::HalfExplicit,
        gamma: 0.15,
        alpha: matrix(&data::ALPHA),
        gamma_matrix: matrix(&data::GAMMA),
        b: data::B.to_vec(),
        bhat: Some(data::BHAT.to_vec()),
        dense: Some(DenseCoefficients {
            c: data::C.to_vec(),
            d: data::D.to_vec(),
            e: data::E.to_vec(),
            f: None,
        }),
        order: Some(5),
        embedded_order: Some(4),
    })
    .expect("built-in tsit5da coefficients are valid")
}

/// Linearly implicit Euler: one stage, `gamma = 1`, `R(z) = 1/(1-z)`.
pub fn linearly_implicit_euler() -> RowTableau {
    RowTableau::new(TableauSpec {
        name: "li-euler".into(),
        kind: TableauKind::Row,
        gamma: 1.0,
        alpha: DenseMatrix::zeros(1, 1),
        gamma_matrix: DenseMatrix::identity(1),
        b: vec![1.0],
        bhat: None,
        dense: None,
        order: Some(1),
        embedded_order: None,
    })
    .expect("built-in li-euler coefficients are valid")
}

/// Two-stage L-stable ROW method of order 2 with an order-1 embedded solution.
///
/// `gamma = 1 - 1/sqrt(2)` makes `R(z)` vanish at infinity; `alpha_21 = 1`,
/// `gamma_21 = -gamma` and `b = [1-gamma, gamma]` make the scheme stiffly
/// accurate (b is the last row of beta), which also gives the index-1
/// condition `b W alpha^2 = 1`. The embedded weights `[1, 0]` are the first
/// stage alone.
pub fn ros2() -> RowTableau {
    let gamma = 1.0 - std::f64::consts::FRAC_1_SQRT_2;
    RowTableau::new(TableauSpec {
        name: "ros2".into(),
        kind: TableauKind::Row,
        gamma,
        alpha: DenseMatrix::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]),
        gamma_matrix: DenseMatrix::from_rows(&[vec![gamma, 0.0], vec![-gamma, gamma]]),
        b: vec![1.0 - gamma, gamma],
        bhat: Some(vec![1.0, 0.0]),
        dense: None,
        order: Some(2),
        embedded_order: Some(1),
    })
    .expect("built-in ros2 coefficients are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::check_stiffly_accurate;

    #[test]
    fn tsit5da_shape() {
        let t = tsit5da();
        assert_eq!(t.stages(), 12);
        assert_eq!(t.kind(), TableauKind::HalfExplicit);
        assert_eq!(t.gamma(), 0.15);
        assert_eq!(t.alpha()[(1, 0)], 0.3);
        assert_eq!(t.alpha()[(2, 0)], 0.4);
        assert_eq!(&t.b()[9..], &[-0.15, 0.0, 0.15]);
        assert!(t.dense().unwrap().f.is_none());
    }

    #[test]
    fn tsit5da_alpha_template() {
        let t = tsit5da();
        let a = t.alpha();
        assert_eq!(a.row(8), a.row(10));
        for j in 0..12 {
            let diff = a[(11, j)] - a[(9, j)];
            match j {
                8 => assert!((diff + 0.15).abs() < 1e-15, "column 9: {diff}"),
                10 => assert!((diff - 0.15).abs() < 1e-15, "column 11: {diff}"),
                _ => assert_eq!(diff, 0.0, "column {}", j + 1),
            }
        }
    }

    #[test]
    fn tsit5da_sums() {
        let t = tsit5da();
        let sum_b: f64 = t.b().iter().sum();
        assert!((sum_b - 1.0).abs() < 1e-14);
        let dense = t.dense().unwrap();
        for set in [&dense.c, &dense.d, &dense.e] {
            assert!(set.iter().sum::<f64>().abs() < 1e-9);
        }
    }

    #[test]
    fn tsit5da_w_inverts_beta() {
        let t = tsit5da();
        let w = t.w_matrix().unwrap();
        let prod = t.beta().mat_mul(&w);
        let err = prod.add_scaled(-1.0, &DenseMatrix::identity(12)).max_abs();
        assert!(err < 1e-9, "{err}");
    }

    #[test]
    fn stiffly_accurate_builtins() {
        let check = check_stiffly_accurate(&tsit5da());
        assert!(check.holds, "{check:?}");
        let beta = tsit5da().beta()[(11, 0)];
        assert!((beta - tsit5da().b()[0]).abs() < 1e-12);
        // ros2's first-stage embedded solution is not of the stiffly accurate
        // form, only its main weights are.
        let ros2_check = check_stiffly_accurate(&ros2());
        assert!(ros2_check.main_residual < 1e-15);
        assert!(!ros2_check.holds);
        assert!(check_stiffly_accurate(&linearly_implicit_euler()).holds);
    }

    #[test]
    fn lookup_by_name() {
        for name in BUILTIN_NAMES {
            assert_eq!(builtin(name).unwrap().name(), name);
        }
        assert!(matches!(builtin("rk4"), Err(TableauError::UnknownName(_))));
    }
}
