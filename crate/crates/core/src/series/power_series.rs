//! Truncated power series with exact coefficients.
//!
//! A series of order `N` stores `c_0 .. c_{N-1}`; every operation returns a
//! series of the same order as its inputs. Mixing orders is a caller bug
//! and panics.

use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;

use super::coeff::Coeff;
use crate::error::{Error, Result};

/// Products with more than this many coefficient pairs are split across
/// threads. Each output coefficient is still a single serial sum, so the
/// result does not depend on the thread count.
const PARALLEL_PAIRS: usize = 1 << 16;

#[derive(Clone, PartialEq, Debug)]
pub struct PowerSeries<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> PowerSeries<C> {
    /// Builds a series of order `order` from leading coefficients, padding
    /// with zeros or dropping terms at or above `order`.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order, C::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, C::one(), order)
    }

    /// `c z^k`
    pub fn monomial(k: usize, c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Polynomial with small integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| C::from_i64(c)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `[z^n]`, zero for `n >= order`.
    pub fn coeff(&self, n: usize) -> C {
        self.coeffs.get(n).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Index of the first nonzero coefficient, `order` for the zero series.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.order())
    }

    /// Keeps only the terms of degree `<= m`.
    pub fn truncate_degree(&self, m: usize) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut().skip(m + 1) {
            *c = C::zero();
        }
        out
    }

    /// Same coefficients at a smaller order.
    pub fn truncate_order(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise series order {} to {order}", self.order());
        Self { coeffs: self.coeffs[..order].to_vec() }
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![C::zero(); n];
        for i in k..n {
            coeffs[i] = self.coeffs[i - k].clone();
        }
        Self { coeffs }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x.times(c)).collect() }
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series orders differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.plus_assign(b);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_order(other);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.minus_assign(b);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(C::negated).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        let n = self.order();
        let (va, vb) = (self.valuation(), other.valuation());
        let term = |k: usize| -> C {
            let mut acc = C::zero();
            if k >= va + vb {
                for i in va..=k - vb {
                    acc.fma_assign(&self.coeffs[i], &other.coeffs[k - i]);
                }
            }
            acc
        };
        let coeffs = if n * n / 2 > PARALLEL_PAIRS {
            (0..n).into_par_iter().map(term).collect()
        } else {
            (0..n).map(term).collect()
        };
        Self { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `1 / self`; the constant term must be a unit.
    pub fn reciprocal(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let inv0 = self.coeffs[0]
            .unit_inverse()
            .ok_or_else(|| Error::Consistency(format!("constant term {:?} is not invertible", self.coeffs[0])))?;
        let mut out: Vec<C> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = C::zero();
            for i in 1..=k {
                acc.fma_assign(&self.coeffs[i], &out[k - i]);
            }
            out.push(acc.times(&inv0).negated());
        }
        Ok(Self { coeffs: out })
    }

    /// `self(inner)` where `self` is read as a polynomial of degree
    /// `< order`; `inner` must have positive valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner);
        if !inner.coeffs.first().map_or(true, C::is_zero) {
            return Err(Error::Consistency("composition needs an inner series without constant term".into()));
        }
        let n = self.order();
        let top = self.coeffs.iter().rposition(|c| !c.is_zero());
        let Some(top) = top else { return Ok(Self::zero(n)) };
        // Horner
        let mut acc = Self::monomial(0, self.coeffs[top].clone(), n);
        for d in (0..top).rev() {
            acc = acc.mul(inner);
            acc.coeffs[0].plus_assign(&self.coeffs[d]);
        }
        Ok(acc)
    }
}

impl<C: Coeff> Add for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn add(self, rhs: Self) -> PowerSeries<C> {
        PowerSeries::add(self, rhs)
    }
}

impl<C: Coeff> Sub for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn sub(self, rhs: Self) -> PowerSeries<C> {
        PowerSeries::sub(self, rhs)
    }
}

impl<C: Coeff> Mul for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn mul(self, rhs: Self) -> PowerSeries<C> {
        PowerSeries::mul(self, rhs)
    }
}

impl<C: Coeff> Neg for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn neg(self) -> PowerSeries<C> {
        PowerSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type S = PowerSeries<BigInt>;

    fn ints(s: &S) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn geometric_series() {
        let one_minus_z = S::from_ints(&[1, -1], 6);
        assert_eq!(ints(&one_minus_z.reciprocal().unwrap()), vec![1; 6]);
    }

    #[test]
    fn catalan_by_composition() {
        // C = 1 + z C^2: iterate C <- 1 + z C^2
        let n = 10;
        let mut c = S::one(n);
        for _ in 0..n {
            c = &S::one(n) + &(&c * &c).shift(1);
        }
        assert_eq!(ints(&c), vec![1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862]);
    }

    #[test]
    fn non_unit_constant_is_rejected() {
        assert!(S::from_ints(&[2, 1], 4).reciprocal().is_err());
        let r = PowerSeries::<BigRational>::from_ints(&[2, 1], 4).reciprocal().unwrap();
        assert_eq!(r.coeff(0), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn compose_requires_positive_valuation() {
        let p = S::from_ints(&[0, 1, 1], 5);
        assert!(p.compose(&S::from_ints(&[1, 1], 5)).is_err());
        // (z + z^2) at z -> z + z^2
        let q = p.compose(&S::from_ints(&[0, 1, 1], 5)).unwrap();
        assert_eq!(ints(&q), vec![0, 1, 2, 2, 1]);
    }

    #[test]
    fn truncations() {
        let s = S::from_ints(&[1, 2, 3, 4], 4);
        assert_eq!(ints(&s.truncate_degree(1)), vec![1, 2, 0, 0]);
        assert_eq!(ints(&s.truncate_order(2)), vec![1, 2]);
        assert_eq!(ints(&s.shift(2)), vec![0, 0, 1, 2]);
        assert_eq!(s.valuation(), 0);
        assert_eq!(S::zero(3).valuation(), 3);
    }

    #[test]
    fn parallel_product_matches_serial() {
        let n = 400;
        let a = S::new((0..n as i64).map(|i| BigInt::from(i * i + 1)).collect(), n);
        let b = S::new((0..n as i64).map(|i| BigInt::from(3 * i - 7)).collect(), n);
        let big = &a * &b;
        let mut serial = vec![BigInt::from(0); n];
        for i in 0..n {
            for j in 0..n - i {
                serial[i + j] += &a.coeffs()[i] * &b.coeffs()[j];
            }
        }
        assert_eq!(big.coeffs(), &serial[..]);
    }

    proptest! {
        #[test]
        fn reciprocal_is_inverse(tail in proptest::collection::vec(-50i64..50, 0..12), neg in any::<bool>()) {
            let mut c = vec![if neg { -1 } else { 1 }];
            c.extend(tail);
            let n = c.len() + 3;
            let s = S::from_ints(&c, n);
            let inv = s.reciprocal().unwrap();
            prop_assert_eq!(&s * &inv, S::one(n));
        }

        #[test]
        fn product_is_commutative_and_distributive(
            a in proptest::collection::vec(-20i64..20, 1..10),
            b in proptest::collection::vec(-20i64..20, 1..10),
            c in proptest::collection::vec(-20i64..20, 1..10),
        ) {
            let n = 10;
            let (a, b, c) = (S::from_ints(&a, n), S::from_ints(&b, n), S::from_ints(&c, n));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
