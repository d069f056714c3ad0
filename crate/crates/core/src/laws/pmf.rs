use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::singularity::Real;

/// A probability mass function on a finite set of nonnegative integers.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf<T> {
    entries: Vec<(usize, T)>,
}

pub type ExactPmf = Pmf<BigRational>;

impl<T> Pmf<T> {
    /// Entries are sorted by support point.
    pub fn new(mut entries: Vec<(usize, T)>) -> Self {
        entries.sort_by_key(|e| e.0);
        Self { entries }
    }

    pub fn entries(&self) -> &[(usize, T)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<&T> {
        self.entries.binary_search_by_key(&k, |e| e.0).ok().map(|i| &self.entries[i].1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.0)
    }

    /// The law of `f(X)`, for an injective `f`.
    pub fn relabel(self, f: impl Fn(usize) -> usize) -> Self {
        Self::new(self.entries.into_iter().map(|(k, p)| (f(k), p)).collect())
    }
}

impl ExactPmf {
    /// `count_i / total` for each entry.
    pub fn from_counts(counts: impl IntoIterator<Item = (usize, BigInt)>, total: &BigInt) -> Self {
        Self::new(
            counts
                .into_iter()
                .map(|(k, c)| (k, BigRational::new(c, total.clone())))
                .collect(),
        )
    }

    pub fn total(&self) -> BigRational {
        self.entries.iter().fold(BigRational::zero(), |acc, e| acc + &e.1)
    }

    pub fn is_normalized(&self) -> bool {
        self.total().is_one() && self.entries.iter().all(|e| !e.1.is_negative())
    }

    pub fn to_f64(&self) -> BTreeMap<usize, f64> {
        self.entries.iter().map(|(k, p)| (*k, p.to_f64().unwrap_or(f64::NAN))).collect()
    }
}

impl Pmf<Real> {
    pub fn to_f64(&self) -> BTreeMap<usize, f64> {
        self.entries.iter().map(|(k, p)| (*k, p.to_f64())).collect()
    }
}

impl Pmf<f64> {
    pub fn to_f64(&self) -> BTreeMap<usize, f64> {
        self.entries.iter().copied().collect()
    }
}

/// A limit law tabulated on `0..=kmax`, with the mass it leaves out.
#[derive(Debug, Clone)]
pub struct LimitPmf {
    pub pmf: Pmf<Real>,
    /// `1 - sum of the tabulated probabilities`
    pub truncation_error: Real,
}

/// Decimal expansion of `r` rounded half away from zero to `frac_digits`
/// places; trailing zeros are kept so columns line up.
pub fn rational_to_decimal(r: &BigRational, frac_digits: usize) -> String {
    let neg = r.is_negative();
    let (num, den) = (r.numer().abs(), r.denom().clone());
    let scale = BigInt::from(10u32).pow(frac_digits as u32);
    let (mut q, rem) = (&num * &scale).div_rem(&den);
    if rem * 2u32 >= den {
        q += 1u32;
    }
    let s = q.to_string();
    let s = if s.len() <= frac_digits { format!("{}{}", "0".repeat(frac_digits + 1 - s.len()), s) } else { s };
    let (int, frac) = s.split_at(s.len() - frac_digits);
    let body = if frac_digits == 0 { int.to_string() } else { format!("{int}.{frac}") };
    if neg && !q.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

fn aligned(a: &BTreeMap<usize, f64>, b: &BTreeMap<usize, f64>) -> Vec<(f64, f64)> {
    let keys: std::collections::BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
    keys.into_iter()
        .map(|k| (a.get(&k).copied().unwrap_or(0.0), b.get(&k).copied().unwrap_or(0.0)))
        .collect()
}

/// `sup_x |F_a(x) - F_b(x)|` for laws given as point masses.
pub fn kolmogorov_distance(a: &BTreeMap<usize, f64>, b: &BTreeMap<usize, f64>) -> f64 {
    let (mut fa, mut fb, mut d) = (0.0, 0.0, 0.0f64);
    for (pa, pb) in aligned(a, b) {
        fa += pa;
        fb += pb;
        d = d.max((fa - fb).abs());
    }
    d
}

/// `(1/2) sum_x |a(x) - b(x)|` plus half the mass missing from either side.
pub fn total_variation_distance(a: &BTreeMap<usize, f64>, b: &BTreeMap<usize, f64>) -> f64 {
    let pairs = aligned(a, b);
    let diff: f64 = pairs.iter().map(|(x, y)| (x - y).abs()).sum();
    let missing_a = (1.0 - pairs.iter().map(|p| p.0).sum::<f64>()).max(0.0);
    let missing_b = (1.0 - pairs.iter().map(|p| p.1).sum::<f64>()).max(0.0);
    0.5 * (diff + missing_a + missing_b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn exact_pmf_basics() {
        let p = ExactPmf::from_counts([(3, 1.into()), (1, 2.into())], &BigInt::from(3));
        assert!(p.is_normalized());
        assert_eq!(p.support().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(p.get(3), Some(&q(1, 3)));
        assert_eq!(p.get(2), None);
        let shifted = p.relabel(|k| 10 - k);
        assert_eq!(shifted.get(7), Some(&q(1, 3)));
    }

    #[test]
    fn decimals() {
        assert_eq!(rational_to_decimal(&q(1, 3), 5), "0.33333");
        assert_eq!(rational_to_decimal(&q(2, 3), 3), "0.667");
        assert_eq!(rational_to_decimal(&q(-7, 2), 0), "-4");
        assert_eq!(rational_to_decimal(&q(1, 1000), 2), "0.00");
        assert_eq!(rational_to_decimal(&q(123, 10), 2), "12.30");
    }

    #[test]
    fn distances() {
        let a: BTreeMap<_, _> = [(0, 0.5), (1, 0.5)].into();
        let b: BTreeMap<_, _> = [(0, 0.25), (1, 0.25), (2, 0.5)].into();
        assert!((kolmogorov_distance(&a, &b) - 0.5).abs() < 1e-15);
        assert!((total_variation_distance(&a, &b) - 0.5).abs() < 1e-15);
        assert_eq!(kolmogorov_distance(&a, &a), 0.0);
        let c: BTreeMap<_, _> = [(0, 0.5)].into();
        assert!((total_variation_distance(&a, &c) - 0.5).abs() < 1e-15);
    }
}
