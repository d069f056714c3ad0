use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::real::Real;
use crate::error::{Error, Result};
use crate::params::StructureParams;
use crate::series::{shadow_sum, IntSeries, SeriesBundle};

/// Polynomial in `z` and `X` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    // rows[b][a] is the coefficient of z^a X^b
    rows: Vec<Vec<BigInt>>,
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_z_poly(&[1])
    }

    /// A polynomial in `z` alone.
    pub fn from_z_poly(c: &[i64]) -> Self {
        let mut p = Self { rows: vec![c.iter().map(|&x| BigInt::from(x)).collect()] };
        p.normalize();
        p
    }

    /// `c z^a X^b`
    pub fn monomial(c: i64, a: usize, b: usize) -> Self {
        let mut rows = vec![Vec::new(); b + 1];
        rows[b] = vec![BigInt::zero(); a + 1];
        rows[b][a] = BigInt::from(c);
        let mut p = Self { rows };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        for r in &mut self.rows {
            trim(r);
        }
        while self.rows.last().is_some_and(Vec::is_empty) {
            self.rows.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Degree in `X`; zero for the zero polynomial.
    pub fn degree_x(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn degree_z(&self) -> usize {
        self.rows.iter().map(|r| r.len().saturating_sub(1)).max().unwrap_or(0)
    }

    /// Coefficient of `z^a X^b`.
    pub fn coeff(&self, a: usize, b: usize) -> BigInt {
        self.rows.get(b).and_then(|r| r.get(a)).cloned().unwrap_or_default()
    }

    /// Nonzero terms as `(a, b, q_ab)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(b, r)| r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(a, c)| (a, b, c)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative_z(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().enumerate().skip(1).map(|(a, c)| c * BigInt::from(a)).collect())
            .collect();
        let mut p = Self { rows };
        p.normalize();
        p
    }

    pub fn derivative_x(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .skip(1)
            .map(|(b, r)| r.iter().map(|c| c * BigInt::from(b)).collect())
            .collect();
        let mut p = Self { rows };
        p.normalize();
        p
    }

    /// Value at a point, by Horner in both variables.
    pub fn eval(&self, z: &Real, x: &Real) -> Real {
        let p = z.precision().max(x.precision());
        let mut acc = Real::zero(p);
        for row in self.rows.iter().rev() {
            let mut inner = Real::zero(p);
            for c in row.iter().rev() {
                inner = &inner * z + Real::from_bigint(c, p);
            }
            acc = &acc * x + inner;
        }
        acc
    }

    /// `Q(z, X(z))` as a truncated series, `X` of the same order.
    pub fn eval_series(&self, x: &IntSeries) -> IntSeries {
        let n = x.order();
        let mut acc = IntSeries::zero(n);
        for row in self.rows.iter().rev() {
            acc = &(&acc * x) + &IntSeries::new(row.iter().take(n).cloned().collect(), n);
        }
        acc
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut rows = vec![Vec::new(); self.rows.len().max(rhs.rows.len())];
        for (b, row) in rows.iter_mut().enumerate() {
            let l = self.rows.get(b).map_or(&[][..], |r| &r[..]);
            let r = rhs.rows.get(b).map_or(&[][..], |r| &r[..]);
            *row = (0..l.len().max(r.len()))
                .map(|a| l.get(a).cloned().unwrap_or_default() + r.get(a).cloned().unwrap_or_default())
                .collect();
        }
        let mut p = BivariatePolynomial { rows };
        p.normalize();
        p
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let neg = BivariatePolynomial {
            rows: rhs.rows.iter().map(|r| r.iter().map(|c| -c).collect()).collect(),
        };
        self + &neg
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return BivariatePolynomial::zero();
        }
        let mut rows = vec![vec![BigInt::zero(); self.degree_z() + rhs.degree_z() + 1]; self.rows.len() + rhs.rows.len() - 1];
        for (b1, r1) in self.rows.iter().enumerate() {
            for (b2, r2) in rhs.rows.iter().enumerate() {
                let out = &mut rows[b1 + b2];
                for (a1, c1) in r1.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (a2, c2) in r2.iter().enumerate() {
                        out[a1 + a2] += c1 * c2;
                    }
                }
            }
        }
        let mut p = BivariatePolynomial { rows };
        p.normalize();
        p
    }
}

/// Order through which [`build_q`] checks `Q(z, G) = 0`.
pub const Q_CHECK_ORDER: usize = 200;

/// The polynomial `Q` with `Q(z, G(z)) = 0`, built by clearing denominators
/// from the block equations, before the series check.
///
/// With `E = D - z^(2r) X^2` and `d = deg P`:
///
/// ```text
/// Q = D (1 - X + z X) E^d + z^(2r) (X - S) X E^d + D sum_m p_m z^(2rm) X^(2m) E^(d-m)
/// ```
pub fn q_polynomial(p: StructureParams) -> Result<BivariatePolynomial> {
    let r2 = 2 * p.stack() as usize;
    let mut dc = vec![0i64; r2 + 1];
    dc[0] = 1;
    dc[2] -= 1;
    dc[r2] += 1;
    let d = BivariatePolynomial::from_z_poly(&dc);
    let s = BivariatePolynomial::from_z_poly(&vec![1; p.arc_len().saturating_sub(1) as usize]);
    let x = BivariatePolynomial::monomial(1, 0, 1);
    let zr2x2 = BivariatePolynomial::monomial(1, r2, 2);
    let e = &d - &zr2x2;

    let shadows = shadow_sum(p.gamma())?;
    let deg = shadows.len().saturating_sub(1) as u32;
    let e_pows: Vec<BivariatePolynomial> = {
        let mut v = vec![BivariatePolynomial::one()];
        for m in 1..=deg as usize {
            v.push(&v[m - 1] * &e);
        }
        v
    };
    let top = &e_pows[deg as usize];

    let linear = &(&BivariatePolynomial::one() - &x) + &BivariatePolynomial::monomial(1, 1, 1);
    let mut q = &(&d * &linear) * top;
    let stem = &(&BivariatePolynomial::monomial(1, r2, 0) * &(&x - &s)) * &x;
    q = &q + &(&stem * top);
    let mut w_pow = BivariatePolynomial::one();
    for (m, &pm) in shadows.iter().enumerate() {
        if m > 0 {
            w_pow = &w_pow * &zr2x2;
        }
        if pm != 0 {
            let term = &(&w_pow * &e_pows[deg as usize - m]) * &BivariatePolynomial::from_z_poly(&[pm]);
            q = &q + &(&d * &term);
        }
    }
    Ok(q)
}

/// [`q_polynomial`] checked against the counting series: `Q(z, G)` must
/// vanish through order [`Q_CHECK_ORDER`] and `Q(0, 1) = 0`.
pub fn build_q(p: StructureParams) -> Result<BivariatePolynomial> {
    let q = q_polynomial(p)?;
    let bundle = SeriesBundle::solve(p, Q_CHECK_ORDER)?;
    check_q(&q, &bundle)?;
    Ok(q)
}

pub(crate) fn check_q(q: &BivariatePolynomial, bundle: &SeriesBundle) -> Result<()> {
    let residual = q.eval_series(bundle.g());
    if let Some(n) = residual.coeffs().iter().position(|c| !c.is_zero()) {
        return Err(Error::Consistency(format!(
            "Q(z, G) has nonzero coefficient at z^{n} ({})",
            bundle.params()
        )));
    }
    let at_origin: BigInt = (0..=q.degree_x()).map(|b| q.coeff(0, b)).sum();
    if !at_origin.is_zero() {
        return Err(Error::Consistency(format!("Q(0, 1) = {at_origin} ({})", bundle.params())));
    }
    let expected = match p_degree(bundle.params()) {
        0 => 2,
        d => 2 * d + 2,
    };
    if q.degree_x() != expected {
        return Err(Error::Consistency(format!("deg_X Q = {} (expected {expected})", q.degree_x())));
    }
    Ok(())
}

fn p_degree(p: StructureParams) -> usize {
    shadow_sum(p.gamma()).map(|s| s.len().saturating_sub(1)).unwrap_or(0)
}

impl BivariatePolynomial {
    /// gcd of all coefficients.
    #[cfg(test)]
    fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.terms().fold(BigInt::zero(), |g, (_, _, c)| g.gcd(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(g: u32, r: u32, l: u32) -> StructureParams {
        StructureParams::new(g, r, l).unwrap()
    }

    #[test]
    fn secondary_quadratic() {
        let q = build_q(p(0, 1, 2)).unwrap();
        // z^2 X^2 - (1 - z + z^2) X + 1
        let want = &(&BivariatePolynomial::monomial(1, 2, 2) - &BivariatePolynomial::monomial(1, 0, 1))
            + &(&(&BivariatePolynomial::monomial(1, 1, 1) - &BivariatePolynomial::monomial(1, 2, 1))
                + &BivariatePolynomial::one());
        assert_eq!(q, want);
    }

    #[test]
    fn degrees_in_x() {
        assert_eq!(build_q(p(1, 2, 2)).unwrap().degree_x(), 10);
        assert_eq!(build_q(p(2, 1, 1)).unwrap().degree_x(), 22);
    }

    #[test]
    fn every_triple_validates() {
        for g in 0..=2 {
            for pp in StructureParams::all_with_gamma(g) {
                let q = build_q(pp).unwrap();
                assert!(q.content().is_one() || q.content() == BigInt::from(-1), "{pp}");
            }
        }
    }

    #[test]
    fn wrong_polynomial_is_rejected() {
        let pp = p(1, 1, 2);
        let bad = &q_polynomial(pp).unwrap() + &BivariatePolynomial::monomial(1, 7, 3);
        let bundle = SeriesBundle::solve(pp, 30).unwrap();
        assert!(matches!(check_q(&bad, &bundle), Err(Error::Consistency(_))));
    }

    #[test]
    fn derivatives() {
        // 3 z^2 X^3
        let m = BivariatePolynomial::monomial(3, 2, 3);
        assert_eq!(m.derivative_x(), BivariatePolynomial::monomial(9, 2, 2));
        assert_eq!(m.derivative_z(), BivariatePolynomial::monomial(6, 1, 3));
        let pr = 128;
        let v = m.eval(&Real::from_i64(2, pr), &Real::from_i64(-1, pr));
        assert_eq!(v, Real::from_i64(-12, pr));
    }
}
