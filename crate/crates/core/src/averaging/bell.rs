//! Partial Bell polynomials `B_{ℓ,m}(x_1, …, x_{ℓ-m+1})`.

use num_traits::{One, Zero};

use crate::error::{EngineError, Result};
use crate::symcore::{Rational, Scalar, TrigSeries};

/// The operations the Bell sums need from their argument ring.
pub trait BellRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
}

impl BellRing for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

impl<T: Scalar> BellRing for TrigSeries<T> {
    fn zero() -> Self {
        TrigSeries::zero()
    }
    fn one() -> Self {
        TrigSeries::one()
    }
    fn add_assign(&mut self, other: &Self) {
        self.add_assign_ref(other);
    }
    fn mul(&self, other: &Self) -> Self {
        TrigSeries::mul(self, other)
    }
    fn scale(&self, q: &Rational) -> Self {
        TrigSeries::scale(self, &T::from_rational(q))
    }
}

pub fn factorial(n: u32) -> Rational {
    (1..=n as i64).map(Rational::from_integer).product()
}

pub fn binomial(n: u32, k: u32) -> Rational {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// All `(b_1, …, b_n)` with `Σ b_j = m` and `Σ j·b_j = l`, where `n = l - m + 1`,
/// in lexicographic order of `b_1, b_2, …` ascending.
pub fn bell_tuples(l: u32, m: u32) -> Vec<Vec<u32>> {
    let n = (l + 1).saturating_sub(m) as usize;
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(j: usize, left_m: u32, left_l: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if j == cur.len() {
            if left_m == 0 && left_l == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = j as u32 + 1;
        for b in 0..=left_m.min(left_l / w) {
            cur[j] = b;
            rec(j + 1, left_m - b, left_l - b * w, cur, out);
        }
        cur[j] = 0;
    }
    if n > 0 {
        rec(0, m, l, &mut cur, &mut out);
    }
    out
}

/// Coefficient `l! / Π (b_j! (j!)^{b_j})` of the tuple in `B_{l,m}`.
pub fn bell_coefficient(l: u32, b: &[u32]) -> Rational {
    let mut den = <Rational as num_traits::One>::one();
    for (j, &bj) in b.iter().enumerate() {
        den *= factorial(bj) * factorial(j as u32 + 1).pow(bj);
    }
    factorial(l) / den
}

/// Direct evaluation over the index set of tuples.
pub fn bell<R: BellRing>(l: u32, m: u32, args: &[R]) -> Result<R> {
    let expected = (l + 1).saturating_sub(m) as usize;
    if m == 0 || m > l {
        return Err(EngineError::Arity { expected, got: args.len() });
    }
    if args.len() != expected {
        return Err(EngineError::Arity { expected, got: args.len() });
    }
    let mut acc = R::zero();
    for b in bell_tuples(l, m) {
        let mut t = R::one();
        for (j, &bj) in b.iter().enumerate() {
            for _ in 0..bj {
                t = t.mul(&args[j]);
            }
        }
        acc.add_assign(&t.scale(&bell_coefficient(l, &b)));
    }
    Ok(acc)
}

/// Table of `B_{l,m}(x_1, …)` for `1 ≤ m ≤ l ≤ max_l` built by the
/// recurrence `B_{l,m} = Σ_j C(l-1, j-1) x_j B_{l-j,m-1}`, extendable as
/// more arguments become available.
#[derive(Clone, Debug, Default)]
pub struct BellTable<R> {
    /// `rows[l][m]`, with `rows[0][0] = 1`.
    rows: Vec<Vec<R>>,
}

impl<R: BellRing> BellTable<R> {
    pub fn new() -> Self {
        BellTable { rows: vec![vec![R::one()]] }
    }

    /// Largest `l` currently tabulated.
    pub fn max_l(&self) -> usize {
        self.rows.len() - 1
    }

    /// Adds row `l = max_l + 1`; requires `xs[0..l]`.
    pub fn extend(&mut self, xs: &[R]) {
        let l = self.rows.len();
        assert!(xs.len() >= l, "bell table needs x_1..x_{l}");
        let mut row = vec![R::zero(); l + 1];
        row[1] = xs[l - 1].clone();
        for m in 2..=l {
            let mut acc = R::zero();
            for j in 1..=(l + 1 - m) {
                let prev = &self.rows[l - j][m - 1];
                let t = xs[j - 1].mul(prev).scale(&binomial(l as u32 - 1, j as u32 - 1));
                acc.add_assign(&t);
            }
            row[m] = acc;
        }
        self.rows.push(row);
    }

    pub fn get(&self, l: usize, m: usize) -> &R {
        &self.rows[l][m]
    }

    pub fn map_in_place<F: Fn(&R) -> R>(&mut self, f: F) {
        for row in self.rows.iter_mut().skip(1) {
            for v in row.iter_mut().skip(1) {
                *v = f(v);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn small_bell_values() {
        let x = [q(2), q(3), q(5)];
        assert_eq!(bell(1, 1, &x[..1]).unwrap(), q(2));
        assert_eq!(bell(2, 1, &x[..2]).unwrap(), q(3));
        assert_eq!(bell(2, 2, &x[..1]).unwrap(), q(4));
        assert_eq!(bell(3, 2, &x[..2]).unwrap(), q(18));
        assert!(matches!(bell(3, 2, &x[..1]), Err(EngineError::Arity { expected: 2, got: 1 })));
    }

    #[test]
    fn recurrence_matches_direct_sum() {
        let xs: Vec<Rational> = (1..=7).map(|i| Rational::new(i * i - 3, i + 1)).collect();
        let mut t = BellTable::new();
        for _ in 0..7 {
            t.extend(&xs);
        }
        for l in 1..=7u32 {
            for m in 1..=l {
                let direct = bell(l, m, &xs[..(l - m + 1) as usize]).unwrap();
                assert_eq!(&direct, t.get(l as usize, m as usize), "B_{l},{m}");
            }
        }
    }
}
