//! Exact spectral invariants of a graph: adjacency matrix, characteristic
//! polynomials, the closed-walk census `c_n = tr(A^n)` and the zeta series
//! `Z(u) = exp(sum c_n u^n / n) = 1 / det(I - uA)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::scalar::{rational_to_integer, Ring};
use crate::series::PowerSeries;
use crate::{AdjacencyMatrix, IntPolynomial};

/// Entry `(i, j)` counts the arcs from node `i` to node `j`, in the graph's
/// node order.
pub fn adjacency_matrix_in<T: Ring>(x: &Graph) -> Matrix<T> {
    let n = x.node_count();
    let mut counts = vec![0usize; n * n];
    for a in x.arcs() {
        counts[a.src * n + a.tgt] += 1;
    }
    Matrix::from_rows(
        counts
            .chunks(n.max(1))
            .take(n)
            .map(|row| row.iter().map(|&c| T::from_usize_exact(c)).collect())
            .collect(),
    )
}

pub fn adjacency_matrix(x: &Graph) -> AdjacencyMatrix {
    adjacency_matrix_in(x)
}

/// `det(xI - A)`: monic of degree equal to the node count.
pub fn char_poly(a: &AdjacencyMatrix) -> IntPolynomial {
    a.char_poly()
}

/// `det(I - uA) = u^n a(1/u)`; constant term 1.
pub fn reversed_char_poly(a: &AdjacencyMatrix) -> IntPolynomial {
    a.reversed_char_poly()
}

/// Number of closed walks of length `n`, i.e. of morphisms `C_n -> X`.
pub fn cycle_count(x: &Graph, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("cycle_count needs n >= 1".into()));
    }
    Ok(cycle_counts(x, n).pop().expect("n >= 1"))
}

/// `[c_1, ..., c_upto]`.
pub fn cycle_counts(x: &Graph, upto: usize) -> Vec<BigInt> {
    adjacency_matrix(x).trace_powers(upto)
}

/// Zeta series of a finite graph, truncated at `u^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaSeries {
    /// `det(I - uA)`; the series is its reciprocal.
    pub denominator: IntPolynomial,
    pub order: usize,
    /// `z_0, ..., z_order`
    pub coefficients: Vec<BigInt>,
}

impl ZetaSeries {
    /// `denominator * series == 1 + O(u^{order+1})`.
    pub fn satisfies_denominator_identity(&self) -> bool {
        let d = PowerSeries::from_polynomial(&self.denominator, self.order);
        let z = PowerSeries::new(self.coefficients.clone(), self.order);
        d.mul(&z) == PowerSeries::one(self.order)
    }

    /// `1 + 4*u^2 + ... + O(u^9)`
    pub fn series_text(&self) -> String {
        let body = Polynomial::new(self.coefficients.clone());
        format!("{} + O(u^{})", body.display("u"), self.order + 1)
    }

    pub fn rational_text(&self) -> String {
        format!("1/({})", self.denominator.display("u"))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "rational": self.rational_text(),
            "denominator": self.denominator.to_json_coeffs(),
            "order": self.order,
            "coefficients": crate::json::bigints(&self.coefficients),
        })
    }
}

/// Zeta series `exp(sum_{n>=1} c_n u^n / n)` truncated at `u^order`.
///
/// The logarithm is formed over the rationals and exponentiated exactly; the
/// resulting coefficients are integers by the necklace structure of the
/// census, and a non-integral value is reported as an error.
pub fn zeta_series(x: &Graph, order: usize) -> Result<ZetaSeries> {
    let a = adjacency_matrix(x);
    let census = a.trace_powers(order);
    let mut log = vec![BigRational::zero()];
    log.extend(
        census
            .iter()
            .enumerate()
            .map(|(k, c)| BigRational::new(c.clone(), BigInt::from(k + 1))),
    );
    let exp = PowerSeries::new(log, order).exp().expect("log series has zero constant term");
    let coefficients = exp
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, q)| {
            rational_to_integer(q).ok_or_else(|| Error::IntegralityViolation {
                index: k,
                value: q.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(coefficients[0].is_one());
    Ok(ZetaSeries {
        denominator: a.reversed_char_poly(),
        order,
        coefficients,
    })
}
