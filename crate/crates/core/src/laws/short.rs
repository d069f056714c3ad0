//! Number of blocks of a fixed short length.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::longest::check_exact_n;
use super::pmf::ExactPmf;
use crate::error::{Error, Result};
use crate::params::BlockType;
use crate::series::{IntSeries, SeriesBundle};
use crate::singularity::{Real, SingularityData};

/// `NB(2, t)`: `P(b) = (b+1) t^b (1-t)^2`.
#[derive(Debug, Clone)]
pub struct NegBinomial {
    pub t: Real,
}

impl NegBinomial {
    pub fn pmf(&self, b: usize) -> Real {
        let bits = self.t.precision();
        let s = Real::one(bits) - &self.t;
        Real::from_i64(b as i64 + 1, bits) * self.t.powi(b) * &s * &s
    }

    /// `2t / (1-t)`
    pub fn mean(&self) -> Real {
        let bits = self.t.precision();
        Real::from_i64(2, bits) * &self.t / (Real::one(bits) - &self.t)
    }
}

#[derive(Debug, Clone)]
pub struct ShortBlockLimit {
    pub k: usize,
    pub block_type: Option<BlockType>,
    /// `f(k)`, or the number of type-`I` blocks of length `k`
    pub a_k: BigInt,
    pub law: NegBinomial,
    /// `2 a_k rho^k / (1 - tau')`
    pub expectation: Real,
}

/// Limit law of the number of (type-`I`) blocks of length `k`:
/// `NB(2, t)` with `t = a_k rho^k / (1 - tau' + a_k rho^k)`.
pub fn short_block_limit_law(
    bundle: &SeriesBundle,
    data: &SingularityData,
    k: usize,
    t: Option<BlockType>,
) -> Result<ShortBlockLimit> {
    if k == 0 {
        return Err(Error::InvalidParams("block length k must be at least 1".into()));
    }
    let a_k = bundle.marked_block_count(k, t)?;
    let bits = data.bits();
    let mass = Real::from_bigint(&a_k, bits) * data.rho.powi(k);
    let gap = Real::one(bits) - &data.tau_prime;
    let tt = &mass / (&gap + &mass);
    let expectation = Real::from_i64(2, bits) * &mass / &gap;
    Ok(ShortBlockLimit { k, block_type: t, a_k, law: NegBinomial { t: tt }, expectation })
}

/// Structures of length `n` by their number `b` of (type-`I`) blocks of
/// length `k`, for `b = 0..=n/k`.
pub fn short_block_counts(bundle: &SeriesBundle, k: usize, t: Option<BlockType>, n: usize) -> Result<Vec<BigInt>> {
    if k == 0 {
        return Err(Error::InvalidParams("block length k must be at least 1".into()));
    }
    if bundle.order() <= n {
        return Err(Error::InsufficientOrder { have: bundle.order(), need: n + 1 });
    }
    let a = if k <= n { bundle.marked_block_count(k, t)? } else { BigInt::zero() };
    // A = 1 - F + a z^k; the b-th count is a^b [z^(n-kb)] A^-(b+1)
    let order = n + 1;
    let f = bundle.f().truncate_order(order);
    let mut base = &IntSeries::one(order) - &f;
    if k < order {
        base = &base + &IntSeries::monomial(k, a.clone(), order);
    }
    let inv = base.reciprocal()?;
    let bmax = if a.is_zero() { 0 } else { n / k };
    let mut counts = Vec::with_capacity(bmax + 1);
    let mut cur = inv.clone();
    let mut a_pow = BigInt::one();
    for b in 0..=bmax {
        let rest = n - k * b;
        counts.push(&a_pow * cur.coeff(rest));
        if b < bmax {
            let next_order = rest - k + 1;
            cur = &cur.truncate_order(next_order) * &inv.truncate_order(next_order);
            a_pow *= &a;
        }
    }
    let total: BigInt = counts.iter().sum();
    if total != bundle.g().coeff(n) {
        return Err(Error::Consistency(format!(
            "block counts for k={k} at n={n} sum to {total}, not g(n) = {}",
            bundle.g().coeff(n)
        )));
    }
    Ok(counts)
}

/// Exact law of the number of (type-`I`) blocks of length `k` in a uniform
/// structure of length `n`.
pub fn short_block_exact_dist(
    bundle: &SeriesBundle,
    k: usize,
    t: Option<BlockType>,
    n: usize,
    bound: usize,
) -> Result<ExactPmf> {
    check_exact_n(bundle, n, bound)?;
    let counts = short_block_counts(bundle, k, t, n)?;
    Ok(ExactPmf::from_counts(counts.into_iter().enumerate(), &bundle.g().coeff(n)))
}
