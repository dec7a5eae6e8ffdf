//! Truncated formal power series.

use crate::poly::Polynomial;
use crate::scalar::{Field, Ring};

/// `a_0 + a_1 u + ... + a_N u^N + O(u^{N+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> PowerSeries<T> {
    /// Pads or truncates `coeffs` to exactly `order + 1` terms.
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        PowerSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![T::one()], order)
    }

    pub fn from_polynomial(p: &Polynomial<T>, order: usize) -> Self {
        Self::new(p.coeffs().to_vec(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = vec![T::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Multiplicative inverse of a series whose constant term is one.
    pub fn inverse_unit(&self) -> Option<Self> {
        if !self.coeffs[0].is_one() {
            return None;
        }
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        out[0] = T::one();
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * out[k - j].clone();
            }
            out[k] = -acc;
        }
        Some(PowerSeries { coeffs: out })
    }
}

impl<T: Field> PowerSeries<T> {
    /// `exp(f)` for a series with zero constant term.
    ///
    /// Uses `g' = f' g`, i.e. `n g_n = sum_{k=1}^n k f_k g_{n-k}`.
    pub fn exp(&self) -> Option<Self> {
        if !self.coeffs[0].is_zero() {
            return None;
        }
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        out[0] = T::one();
        for m in 1..=n {
            let mut acc = T::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc
                    + T::from_usize_exact(k) * self.coeffs[k].clone() * out[m - k].clone();
            }
            out[m] = acc / T::from_usize_exact(m);
        }
        Some(PowerSeries { coeffs: out })
    }

    /// `log(g)` for a series with constant term one.
    pub fn log(&self) -> Option<Self> {
        if !self.coeffs[0].is_one() {
            return None;
        }
        let n = self.order();
        // log(g)' = g'/g
        let inv = self.inverse_unit()?;
        let deriv: Vec<T> = (1..=n)
            .map(|k| T::from_usize_exact(k) * self.coeffs[k].clone())
            .collect();
        let mut out = vec![T::zero(); n + 1];
        for (m, slot) in out.iter_mut().enumerate().skip(1) {
            // coefficient of u^{m-1} in g' * (1/g)
            let mut acc = T::zero();
            for (j, d) in deriv.iter().take(m).enumerate() {
                acc = acc + d.clone() * inv.coeffs[m - 1 - j].clone();
            }
            *slot = acc / T::from_usize_exact(m);
        }
        Some(PowerSeries { coeffs: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn exp_of_u_is_factorial_reciprocals() {
        let f = PowerSeries::new(vec![q(0), q(1)], 5);
        let e = f.exp().unwrap();
        let expected: Vec<BigRational> = [1, 1, 2, 6, 24, 120]
            .iter()
            .map(|&d| BigRational::new(BigInt::from(1), BigInt::from(d)))
            .collect();
        assert_eq!(e.coeffs(), expected.as_slice());
    }

    #[test]
    fn geometric_inverse() {
        let p = PowerSeries::new(vec![1i64, -1], 4);
        assert_eq!(p.inverse_unit().unwrap().coeffs(), &[1, 1, 1, 1, 1]);
        assert!(PowerSeries::new(vec![2i64], 3).inverse_unit().is_none());
        assert!(PowerSeries::new(vec![q(1), q(1)], 3).exp().is_none());
    }

    proptest! {
        #[test]
        fn log_inverts_exp(c in proptest::collection::vec(-5i64..6, 1..7)) {
            let mut coeffs = vec![q(0)];
            coeffs.extend(c.iter().map(|&v| q(v)));
            let order = c.len();
            let f = PowerSeries::new(coeffs, order);
            let g = f.exp().unwrap();
            prop_assert_eq!(g.log().unwrap(), f);
        }

        #[test]
        fn inverse_is_inverse(c in proptest::collection::vec(-5i64..6, 0..7)) {
            let mut coeffs = vec![1i64];
            coeffs.extend(c.iter().copied());
            let order = c.len();
            let f = PowerSeries::new(coeffs, order);
            let g = f.inverse_unit().unwrap();
            prop_assert_eq!(f.mul(&g), PowerSeries::one(order));
        }
    }
}
