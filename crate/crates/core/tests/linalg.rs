use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rowdae::linalg::{invert, lu_factor, lu_solve, norm_inf, DenseMatrix};

fn random_matrix(n: usize, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = rng.gen_range(-1.0..1.0);
        }
        // Diagonal dominance keeps the condition number modest.
        a[(i, i)] += 4.0;
    }
    a
}

#[test]
fn random_system_recovers_known_solution() {
    let a = random_matrix(10, 7);
    let x_star: Vec<f64> = (0..10).map(|i| (i as f64 - 4.5) / 3.0).collect();
    let b = a.mat_vec(&x_star);
    let x = lu_solve(&lu_factor(&a).unwrap(), &b).unwrap();
    let err = x
        .iter()
        .zip(&x_star)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    assert!(err <= 1e-9, "{err}");
}

proptest! {
    #[test]
    fn factorization_reconstructs_permuted_matrix(seed in 0u64..10_000, n in 1usize..12) {
        let a = random_matrix(n, seed);
        let lu = lu_factor(&a).unwrap();
        let diff = lu.permute_rows(&a).add_scaled(-1.0, &lu.lower().mat_mul(&lu.upper()));
        prop_assert!(diff.max_abs() <= 1e-12 * a.max_abs());
    }

    #[test]
    fn solve_has_small_residual(seed in 0u64..10_000, n in 1usize..12) {
        let a = random_matrix(n, seed);
        let b: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
        let x = lu_solve(&lu_factor(&a).unwrap(), &b).unwrap();
        let r: Vec<f64> = a.mat_vec(&x).iter().zip(&b).map(|(p, q)| p - q).collect();
        prop_assert!(norm_inf(&r) <= 1e-10 * norm_inf(&b).max(1.0));
    }

    #[test]
    fn inverse_of_lower_triangular_is_lower(seed in 0u64..10_000, n in 1usize..8) {
        let mut a = random_matrix(n, seed);
        for i in 0..n {
            for j in i + 1..n {
                a[(i, j)] = 0.0;
            }
        }
        let inv = invert(&a).unwrap();
        prop_assert!(inv.is_lower_triangular());
        let prod = a.mat_mul(&inv).add_scaled(-1.0, &DenseMatrix::identity(n));
        prop_assert!(prod.max_abs() <= 1e-10);
    }
}
