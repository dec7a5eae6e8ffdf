mod common;

use gph_core::matrix::Matrix;
use gph_core::poly::Polynomial;
use gph_core::spectral::{adjacency_matrix, adjacency_matrix_in, char_poly, cycle_counts, zeta_series};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Faddeev-LeVerrier over the rationals: `M_k = A M_{k-1} + c_{n-k+1} I`,
/// `c_{n-k} = -tr(A M_k) / k`.
fn faddeev_leverrier(a: &Matrix<BigRational>) -> Polynomial<BigRational> {
    let n = a.order();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = Matrix::<BigRational>::zeros(n);
    for k in 1..=n {
        let mut next = a.mul(&m);
        for i in 0..n {
            let v = next.get(i, i).clone() + coeffs[n - k + 1].clone();
            next.set(i, i, v);
        }
        m = next;
        coeffs[n - k] = -a.mul(&m).trace() / BigRational::from_integer(BigInt::from(k));
    }
    Polynomial::new(coeffs)
}

#[test]
fn berkowitz_matches_faddeev_leverrier_on_random_graphs() {
    for g in common::random_graphs(0x5eed_1001, 150, 6, 14) {
        let exact = char_poly(&adjacency_matrix(&g));
        let oracle = faddeev_leverrier(&adjacency_matrix_in::<BigRational>(&g));
        assert_eq!(exact.map(|c| BigRational::from_integer(c.clone())), oracle, "{g:?}");
    }
}

#[test]
fn invariants_ignore_labels() {
    for g in common::random_graphs(0x5eed_1002, 50, 5, 9) {
        let relabeled = g.relabel(|n| format!("node-{n}"), |a| format!("z{a}")).unwrap();
        assert_eq!(char_poly(&adjacency_matrix(&g)), char_poly(&adjacency_matrix(&relabeled)));
        assert_eq!(cycle_counts(&g, 7), cycle_counts(&relabeled, 7));
    }
}

#[test]
fn zeta_is_integral_on_the_small_corpus() {
    for g in common::iso_corpus(3, 4) {
        let z = zeta_series(&g, 10).unwrap();
        assert!(z.satisfies_denominator_identity(), "{g:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zeta_coefficients_count_nonnegatively(seed in any::<u64>()) {
        let g = common::random_graphs(seed, 1, 4, 8).pop().unwrap();
        let z = zeta_series(&g, 8).unwrap();
        prop_assert!(z.coefficients.iter().all(|c| *c >= BigInt::zero()));
        prop_assert!(z.satisfies_denominator_identity());
    }
}
