//! Ghost components and Witt coordinates of almost-finite Z-sets.
//!
//! A Z-set `S` with finitely many `n`-periodic points for every `n` has ghost
//! components `c_n = |Fix(sigma^n)|` and Witt coordinates `s_n` = number of
//! orbits of size `n`, related by `c_n = sum_{d | n} d * s_d`. For a graph
//! `X` the relevant Z-set is the set of bi-infinite walks, whose ghost
//! components are the closed-walk counts `tr(A^n)`.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dynamics::FinZSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::adjacency_matrix;
use crate::AdjacencyMatrix;

/// Möbius function by trial division.
pub fn mobius(n: usize) -> i64 {
    assert!(n >= 1, "mobius needs n >= 1");
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|&d| n.is_multiple_of(d)).collect()
}

fn check_index(len: usize, n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(format!("{what} index must be >= 1")));
    }
    if len < n {
        return Err(Error::InvalidArgument(format!(
            "{what} needs values at 1..={n}, got {len}"
        )));
    }
    Ok(())
}

/// `s_n = (1/n) sum_{d | n} mu(n/d) c_d`, where `c[k - 1]` is `c_k`.
///
/// Fails with `NotRealizable` if the sum is not divisible by `n` or the
/// quotient is negative.
pub fn ghost_to_witt(c: &[BigInt], n: usize) -> Result<BigInt> {
    check_index(c.len(), n, "ghost")?;
    let mut sum = BigInt::zero();
    for d in divisors(n) {
        match mobius(n / d) {
            0 => {}
            1 => sum += &c[d - 1],
            _ => sum -= &c[d - 1],
        }
    }
    let (q, r) = sum.div_rem(&BigInt::from(n));
    if !r.is_zero() {
        return Err(Error::NotRealizable {
            n,
            reason: format!("divisor sum {sum} is not divisible by {n}"),
        });
    }
    if q.is_negative() {
        return Err(Error::NotRealizable {
            n,
            reason: format!("orbit count {q} is negative"),
        });
    }
    Ok(q)
}

/// `c_n = sum_{d | n} d s_d`, where `s[k - 1]` is `s_k`.
pub fn witt_to_ghost(s: &[BigInt], n: usize) -> Result<BigInt> {
    check_index(s.len(), n, "witt")?;
    Ok(divisors(n)
        .into_iter()
        .map(|d| BigInt::from(d) * &s[d - 1])
        .sum())
}

#[derive(Debug)]
enum Source {
    Graph(AdjacencyMatrix),
    /// `s_1, s_2, ...`; zero beyond the end.
    Finite(Vec<BigInt>),
    Sum(AlmostFiniteZSet, AlmostFiniteZSet),
    Product(AlmostFiniteZSet, AlmostFiniteZSet),
}

#[derive(Debug, Default)]
struct Memo {
    ghost: Vec<BigInt>,
    witt: Vec<BigInt>,
}

#[derive(Debug)]
struct Inner {
    source: Source,
    memo: Mutex<Memo>,
}

/// A Z-set given by its ghost components, evaluated on demand.
///
/// Cloning shares the memo tables, which are synchronized, so a value may be
/// read from several threads.
#[derive(Clone, Debug)]
pub struct AlmostFiniteZSet(Arc<Inner>);

impl AlmostFiniteZSet {
    fn wrap(source: Source) -> Self {
        AlmostFiniteZSet(Arc::new(Inner {
            source,
            memo: Mutex::new(Memo::default()),
        }))
    }

    /// The Z-set of bi-infinite walks in `x`: `c_n = tr(A^n)`.
    pub fn from_graph(x: &Graph) -> Self {
        Self::wrap(Source::Graph(adjacency_matrix(x)))
    }

    /// Finitely many orbits: `witt[k - 1]` orbits of size `k`.
    ///
    /// Fails if a count is negative.
    pub fn from_witt(witt: Vec<BigInt>) -> Result<Self> {
        if let Some(k) = witt.iter().position(|s| s.is_negative()) {
            return Err(Error::NotRealizable {
                n: k + 1,
                reason: "orbit counts must be nonnegative".into(),
            });
        }
        Ok(Self::wrap(Source::Finite(witt)))
    }

    pub fn zero() -> Self {
        Self::wrap(Source::Finite(Vec::new()))
    }

    /// A single orbit `Z/n`.
    pub fn orbit(n: usize) -> Self {
        assert!(n >= 1, "orbit size must be >= 1");
        let mut witt = vec![BigInt::zero(); n];
        witt[n - 1] = BigInt::one();
        Self::wrap(Source::Finite(witt))
    }

    pub fn from_zset(z: &FinZSet) -> Self {
        let mut witt: Vec<BigInt> = Vec::new();
        for len in z.orbit_lengths() {
            if witt.len() < len {
                witt.resize(len, BigInt::zero());
            }
            witt[len - 1] += 1;
        }
        Self::wrap(Source::Finite(witt))
    }

    /// Disjoint union; ghost components add.
    pub fn burnside_add(&self, other: &Self) -> Self {
        Self::wrap(Source::Sum(self.clone(), other.clone()))
    }

    /// Cartesian product with the diagonal action; ghost components multiply.
    pub fn burnside_mul(&self, other: &Self) -> Self {
        Self::wrap(Source::Product(self.clone(), other.clone()))
    }

    /// `[c_1, ..., c_upto]`.
    pub fn ghosts(&self, upto: usize) -> Vec<BigInt> {
        let mut memo = self.0.memo.lock().expect("memo lock");
        if memo.ghost.len() < upto {
            memo.ghost = self.compute_ghosts(upto.max(2 * memo.ghost.len()));
        }
        memo.ghost[..upto].to_vec()
    }

    fn compute_ghosts(&self, upto: usize) -> Vec<BigInt> {
        match &self.0.source {
            Source::Graph(a) => a.trace_powers(upto),
            Source::Finite(s) => {
                let mut padded = s.clone();
                if padded.len() < upto {
                    padded.resize(upto, BigInt::zero());
                }
                (1..=upto)
                    .map(|n| witt_to_ghost(&padded, n).expect("padded to length"))
                    .collect()
            }
            Source::Sum(x, y) => x.ghosts(upto).into_iter().zip(y.ghosts(upto)).map(|(a, b)| a + b).collect(),
            Source::Product(x, y) => x.ghosts(upto).into_iter().zip(y.ghosts(upto)).map(|(a, b)| a * b).collect(),
        }
    }

    /// `c_n` for `n >= 1`.
    pub fn ghost(&self, n: usize) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::InvalidArgument("ghost index must be >= 1".into()));
        }
        Ok(self.ghosts(n).pop().expect("n >= 1"))
    }

    /// `[s_1, ..., s_upto]`, each certified integral and nonnegative.
    pub fn witts(&self, upto: usize) -> Result<Vec<BigInt>> {
        {
            let memo = self.0.memo.lock().expect("memo lock");
            if memo.witt.len() >= upto {
                return Ok(memo.witt[..upto].to_vec());
            }
        }
        let c = self.ghosts(upto);
        let mut memo = self.0.memo.lock().expect("memo lock");
        for n in memo.witt.len() + 1..=upto {
            let s = ghost_to_witt(&c, n)?;
            memo.witt.push(s);
        }
        Ok(memo.witt[..upto].to_vec())
    }

    /// `s_n` for `n >= 1`.
    pub fn witt(&self, n: usize) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::InvalidArgument("witt index must be >= 1".into()));
        }
        Ok(self.witts(n)?.pop().expect("n >= 1"))
    }

    pub fn table(&self, upto: usize) -> Result<WittTable> {
        Ok(WittTable {
            upto,
            ghost: self.ghosts(upto),
            witt: self.witts(upto)?,
        })
    }
}

/// Coefficients `z_0..=z_order` of `prod_{n >= 1} (1 - u^n)^{-s_n}`.
///
/// `(1 - u^n)^{-s}` expands as `sum_j C(s + j - 1, j) u^{nj}`.
pub fn zeta_product_form(s: &AlmostFiniteZSet, order: usize) -> Result<Vec<BigInt>> {
    let witt = s.witts(order)?;
    let mut acc = vec![BigInt::zero(); order + 1];
    acc[0] = BigInt::one();
    for (k, sn) in witt.iter().enumerate() {
        let n = k + 1;
        if sn.is_zero() {
            continue;
        }
        let mut factor = vec![BigInt::zero(); order + 1];
        let mut binom = BigInt::one();
        for j in 0..=order / n {
            if j > 0 {
                binom = binom * (sn + BigInt::from(j - 1)) / BigInt::from(j);
            }
            factor[n * j] = binom.clone();
        }
        let mut next = vec![BigInt::zero(); order + 1];
        for (i, a) in acc.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in factor.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    next[i + j] += a * b;
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Ghost and Witt columns for `n = 1..=upto`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittTable {
    pub upto: usize,
    pub ghost: Vec<BigInt>,
    pub witt: Vec<BigInt>,
}

impl WittTable {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "ghost": crate::json::bigints(&self.ghost),
            "witt": crate::json::bigints(&self.witt),
            "upto": self.upto,
        })
    }
}

impl fmt::Display for WittTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = |label: &str, col: &mut dyn Iterator<Item = String>| {
            std::iter::once(label.to_string()).chain(col).collect::<Vec<_>>()
        };
        let rows = [
            cells("n", &mut (1..=self.upto).map(|n| n.to_string())),
            cells("c_n", &mut self.ghost.iter().map(|c| c.to_string())),
            cells("s_n", &mut self.witt.iter().map(|s| s.to_string())),
        ];
        let widths: Vec<usize> = (0..=self.upto)
            .map(|i| rows.iter().map(|r| r[i].len()).max().unwrap_or(0))
            .collect();
        for row in &rows {
            let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            writeln!(f, "{}", line.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::FinNSet;
    use crate::graph::cycle_graph;
    use crate::named::{cross, figure_eight};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn mobius_values() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (k, &m) in expect.iter().enumerate() {
            assert_eq!(mobius(k + 1), m, "mu({})", k + 1);
        }
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(49), 0);
    }

    #[test]
    fn inversion_examples() {
        let pow2: Vec<BigInt> = (1..=8).map(|n| BigInt::from(1) << n).collect();
        assert_eq!(ghost_to_witt(&pow2, 4).unwrap(), BigInt::from(3));
        let ones = ints(&[1; 6]);
        for n in 2..=6 {
            assert!(ghost_to_witt(&ones, n).unwrap().is_zero());
        }
        assert_eq!(ghost_to_witt(&ints(&[1, 3]), 2).unwrap(), BigInt::from(1));
        assert_eq!(witt_to_ghost(&ints(&[0, 4, 0, 6]), 4).unwrap(), BigInt::from(32));
        let k = ints(&[5, 0, 0, 0, 0, 0, 0]);
        for n in 1..=7 {
            assert_eq!(witt_to_ghost(&k, n).unwrap(), BigInt::from(5));
        }
    }

    #[test]
    fn not_realizable() {
        assert!(matches!(ghost_to_witt(&ints(&[1, 2]), 2), Err(Error::NotRealizable { n: 2, .. })));
        assert!(matches!(ghost_to_witt(&ints(&[3, 1]), 2), Err(Error::NotRealizable { n: 2, .. })));
        assert!(matches!(ghost_to_witt(&ints(&[-1]), 1), Err(Error::NotRealizable { n: 1, .. })));
        assert!(ghost_to_witt(&ints(&[1]), 2).is_err());
        assert!(ghost_to_witt(&ints(&[1]), 0).is_err());
    }

    #[test]
    fn graph_examples() {
        let c1 = AlmostFiniteZSet::from_graph(&cycle_graph(1).unwrap());
        assert_eq!(c1.ghosts(5), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(c1.witts(5).unwrap(), ints(&[1, 0, 0, 0, 0]));

        let e = AlmostFiniteZSet::from_graph(&figure_eight());
        assert_eq!(e.ghost(6).unwrap(), BigInt::from(64));
        assert_eq!(e.witts(6).unwrap(), ints(&[2, 1, 2, 3, 6, 9]));

        let x = AlmostFiniteZSet::from_graph(&cross());
        assert_eq!(x.ghosts(6), ints(&[0, 8, 0, 32, 0, 128]));
        assert_eq!(x.witts(6).unwrap(), ints(&[0, 4, 0, 6, 0, 20]));
    }

    #[test]
    fn memo_extends_consistently() {
        let e = AlmostFiniteZSet::from_graph(&figure_eight());
        assert_eq!(e.witt(3).unwrap(), BigInt::from(2));
        assert_eq!(e.witts(10).unwrap()[9], BigInt::from(99));
        assert_eq!(e.ghost(2).unwrap(), BigInt::from(4));
    }

    #[test]
    fn burnside_orbit_law() {
        let z6 = AlmostFiniteZSet::orbit(2).burnside_mul(&AlmostFiniteZSet::orbit(3));
        assert_eq!(z6.ghost(6).unwrap(), BigInt::from(6));
        assert_eq!(z6.witts(12).unwrap(), ints(&[0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0]));
        let z2z2 = AlmostFiniteZSet::orbit(2).burnside_mul(&AlmostFiniteZSet::orbit(2));
        assert_eq!(z2z2.witts(4).unwrap(), ints(&[0, 2, 0, 0]));
        let sum = z6.burnside_add(&AlmostFiniteZSet::zero());
        assert_eq!(sum.witts(8).unwrap(), z6.witts(8).unwrap());
    }

    #[test]
    fn from_zset_counts_orbits() {
        let z = FinZSet::new(FinNSet::cyclic(3)).unwrap();
        assert_eq!(AlmostFiniteZSet::from_zset(&z).witts(4).unwrap(), ints(&[0, 0, 1, 0]));
    }

    #[test]
    fn product_form_examples() {
        let c1 = AlmostFiniteZSet::orbit(1);
        assert_eq!(zeta_product_form(&c1, 5).unwrap(), ints(&[1, 1, 1, 1, 1, 1]));
        let e = AlmostFiniteZSet::from_graph(&figure_eight());
        assert_eq!(zeta_product_form(&e, 6).unwrap(), ints(&[1, 2, 4, 8, 16, 32, 64]));
        let x = AlmostFiniteZSet::from_witt(ints(&[0, 4, 0, 6, 0, 20])).unwrap();
        assert_eq!(zeta_product_form(&x, 6).unwrap(), ints(&[1, 0, 4, 0, 16, 0, 64]));
        assert_eq!(zeta_product_form(&AlmostFiniteZSet::zero(), 0).unwrap(), ints(&[1]));
    }

    #[test]
    fn table_json() {
        let t = AlmostFiniteZSet::from_graph(&figure_eight()).table(3).unwrap();
        assert_eq!(
            t.to_json_value().to_string(),
            r#"{"ghost":[2,4,8],"upto":3,"witt":[2,1,2]}"#
        );
        assert!(t.to_string().starts_with("  n"));
    }

    proptest! {
        #[test]
        fn round_trip(s in proptest::collection::vec(0i64..50, 12)) {
            let s = ints(&s);
            let c: Vec<BigInt> = (1..=12).map(|n| witt_to_ghost(&s, n).unwrap()).collect();
            let back: Vec<BigInt> = (1..=12).map(|n| ghost_to_witt(&c, n).unwrap()).collect();
            prop_assert_eq!(back, s);
        }
    }
}
