//! Fixed-precision binary floats with plain decimal output.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;

const RM: RoundingMode = RoundingMode::ToEven;

/// Bits carried beyond the requested decimal digits.
const GUARD_BITS: usize = 128;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

/// Binary precision that carries `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS
}

#[derive(Clone, Debug)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

impl Real {
    pub fn precision(&self) -> usize {
        self.p
    }

    pub fn from_i64(i: i64, p: usize) -> Self {
        Self { v: BigFloat::from_i64(i, p), p }
    }

    pub fn from_f64(x: f64, p: usize) -> Self {
        Self { v: BigFloat::from_f64(x, p), p }
    }

    pub fn from_bigint(i: &BigInt, p: usize) -> Self {
        if let Ok(small) = i64::try_from(i) {
            return Self::from_i64(small, p);
        }
        Self::parse(&i.to_string(), p).expect("integer literal")
    }

    /// Parses a decimal literal such as `-12.5e-3`.
    pub fn parse(s: &str, p: usize) -> Option<Self> {
        let v = CONSTS.with(|cc| BigFloat::parse(s, Radix::Dec, p, RM, &mut cc.borrow_mut()));
        (!v.is_nan()).then_some(Self { v, p })
    }

    pub fn pi(p: usize) -> Self {
        let v = CONSTS.with(|cc| cc.borrow_mut().pi(p, RM));
        Self { v, p }
    }

    pub fn zero(p: usize) -> Self {
        Self::from_i64(0, p)
    }

    pub fn one(p: usize) -> Self {
        Self::from_i64(1, p)
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.v.is_positive() && !self.v.is_zero()
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn sqrt(&self) -> Self {
        Self { v: self.v.sqrt(self.p, RM), p: self.p }
    }

    pub fn powi(&self, n: usize) -> Self {
        Self { v: self.v.powi(n, self.p, RM), p: self.p }
    }

    pub fn recip(&self) -> Self {
        Self { v: self.v.reciprocal(self.p, RM), p: self.p }
    }

    pub fn ln(&self) -> Self {
        let v = CONSTS.with(|cc| self.v.ln(self.p, RM, &mut cc.borrow_mut()));
        Self { v, p: self.p }
    }

    pub fn exp(&self) -> Self {
        let v = CONSTS.with(|cc| self.v.exp(self.p, RM, &mut cc.borrow_mut()));
        Self { v, p: self.p }
    }

    /// Nearest `f64`.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        match self.sci_digits() {
            Some((neg, digits, exp)) => {
                let s = format!("{}0.{}e{}", if neg { "-" } else { "" }, digits, exp);
                s.parse().unwrap_or(f64::NAN)
            }
            None => f64::NAN,
        }
    }

    /// `(negative, digits, e)` with value `0.digits * 10^e`.
    fn sci_digits(&self) -> Option<(bool, String, i64)> {
        let s = CONSTS.with(|cc| self.v.format(Radix::Dec, RM, &mut cc.borrow_mut())).ok()?;
        let (mant, exp) = s.split_once(['e', 'E'])?;
        let exp: i64 = exp.parse().ok()?;
        let (neg, mant) = match mant.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, mant),
        };
        let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
        let digits = format!("{int}{frac}");
        let lead = digits.len() - digits.trim_start_matches('0').len();
        let digits = digits.trim_start_matches('0').to_string();
        if digits.is_empty() {
            return Some((false, "0".into(), 1));
        }
        Some((neg, digits, exp + int.len() as i64 - lead as i64))
    }

    /// Plain decimal string rounded to `sig` significant digits, with no
    /// exponent and trailing zeros after the point removed.
    pub fn to_decimal(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let Some((neg, digits, mut exp)) = self.sci_digits() else {
            return "NaN".into();
        };
        let sig = sig.max(1);
        let mut d: Vec<u8> = digits.bytes().map(|b| b - b'0').collect();
        if d.len() > sig {
            let round_up = d[sig] >= 5;
            d.truncate(sig);
            if round_up {
                let mut i = sig;
                loop {
                    if i == 0 {
                        d.insert(0, 1);
                        d.pop();
                        exp += 1;
                        break;
                    }
                    i -= 1;
                    if d[i] == 9 {
                        d[i] = 0;
                    } else {
                        d[i] += 1;
                        break;
                    }
                }
            }
        }
        let digits: String = d.iter().map(|x| (x + b'0') as char).collect();
        let body = if exp <= 0 {
            format!("0.{}{}", "0".repeat((-exp) as usize), digits)
        } else if exp as usize >= digits.len() {
            format!("{}{}", digits, "0".repeat(exp as usize - digits.len()))
        } else {
            let (a, b) = digits.split_at(exp as usize);
            format!("{a}.{b}")
        };
        let body = if body.contains('.') {
            body.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            body
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.p.saturating_sub(GUARD_BITS)) as f64 / std::f64::consts::LOG2_10) as usize);
        f.write_str(&self.to_decimal(digits.max(1)))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! bin_op {
    ($tr:ident, $f:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $f(self, rhs: &Real) -> Real {
                let p = self.p.max(rhs.p);
                Real { v: self.v.$f(&rhs.v, p, RM), p }
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $f(self, rhs: Real) -> Real {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $f(self, rhs: &Real) -> Real {
                (&self).$f(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $f(self, rhs: Real) -> Real {
                self.$f(&rhs)
            }
        }
    };
}

bin_op!(Add, add);
bin_op!(Sub, sub);
bin_op!(Mul, mul);
bin_op!(Div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { v: BigFloat::neg(&self.v), p: self.p }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: usize = 256;

    #[test]
    fn decimal_output() {
        let x = Real::from_i64(1, P) / Real::from_i64(3, P);
        assert_eq!(x.to_decimal(5), "0.33333");
        assert_eq!(Real::from_i64(-1234, P).to_decimal(10), "-1234");
        assert_eq!(Real::from_i64(1234, P).to_decimal(2), "1200");
        assert_eq!(Real::parse("0.000999996", P).unwrap().to_decimal(4), "0.001");
        assert_eq!(Real::parse("9.96", P).unwrap().to_decimal(2), "10");
        assert_eq!(Real::zero(P).to_decimal(3), "0");
        assert!(!Real::pi(P).to_decimal(40).contains('e'));
        assert_eq!(Real::pi(P).to_decimal(32), "3.1415926535897932384626433832795");
    }

    #[test]
    fn arithmetic_and_roots() {
        let two = Real::from_i64(2, P);
        let s = two.sqrt();
        let err = (&s * &s - &two).abs();
        assert!(err < Real::parse("1e-70", P).unwrap());
        assert_eq!(Real::from_i64(3, P).powi(4), Real::from_i64(81, P));
        assert!((Real::from_f64(0.25, P).to_f64() - 0.25).abs() < 1e-16);
        assert!((Real::from_i64(7, P).ln().exp().to_f64() - 7.0).abs() < 1e-12);
    }

    #[test]
    fn big_integers() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let x = Real::from_bigint(&big, P);
        assert_eq!(x.to_decimal(40), "123456789012345678901234567890");
        assert!(x.is_positive());
        assert!((-x).is_negative());
    }
}
