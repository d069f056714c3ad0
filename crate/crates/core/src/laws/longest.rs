//! Law of the longest block.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::pmf::{ExactPmf, LimitPmf, Pmf};
use crate::error::{Error, Result};
use crate::series::{solve_scaled, SeriesBundle};
use crate::singularity::{Real, SingularityData};

/// Largest `n` accepted by the exact laws unless a caller raises it.
pub const DEFAULT_EXACT_BOUND: usize = 800;

pub(crate) fn check_exact_n(bundle: &SeriesBundle, n: usize, bound: usize) -> Result<()> {
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    if bundle.order() <= n {
        return Err(Error::InsufficientOrder { have: bundle.order(), need: n + 1 });
    }
    Ok(())
}

/// `[z^n] 1/(1 - F_{<=m})`: structures of length `n` whose blocks all have
/// length at most `m`.
pub fn structures_with_blocks_at_most(bundle: &SeriesBundle, n: usize, m: usize) -> Result<BigInt> {
    if bundle.order() <= n {
        return Err(Error::InsufficientOrder { have: bundle.order(), need: n + 1 });
    }
    let f = bundle.f().coeffs();
    let mut h: Vec<BigInt> = Vec::with_capacity(n + 1);
    h.push(BigInt::from(1));
    for j in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..=m.min(j) {
            if !f[i].is_zero() {
                acc += &f[i] * &h[j - i];
            }
        }
        h.push(acc);
    }
    Ok(h.pop().expect("nonempty"))
}

/// Structures of length `n` whose longest block has length `n - k`, for
/// `k < n/2`: the long block is unique, so the count is `[z^k]G^2 f(n-k)`.
pub fn longest_block_count_fast(bundle: &SeriesBundle, n: usize, k: usize) -> Result<BigInt> {
    if 2 * k >= n {
        return Err(Error::InvalidParams(format!("fast path needs k < n/2 (k={k}, n={n})")));
    }
    if bundle.order() <= n {
        return Err(Error::InsufficientOrder { have: bundle.order(), need: n + 1 });
    }
    let g = bundle.g().coeffs();
    let b_k: BigInt = (0..=k).map(|i| &g[i] * &g[k - i]).sum();
    Ok(b_k * bundle.f().coeff(n - k))
}

/// Counts by longest block length `m = 0..=n` from differences of
/// truncated structure series only.
pub fn longest_block_counts_by_truncation(bundle: &SeriesBundle, n: usize) -> Result<Vec<BigInt>> {
    let cdf: Vec<BigInt> = (0..=n)
        .into_par_iter()
        .map(|m| structures_with_blocks_at_most(bundle, n, m))
        .collect::<Result<_>>()?;
    Ok(differences(&cdf))
}

fn differences(cdf: &[BigInt]) -> Vec<BigInt> {
    (0..cdf.len())
        .map(|m| if m == 0 { cdf[0].clone() } else { &cdf[m] - &cdf[m - 1] })
        .collect()
}

/// Counts by longest block length `m = 0..=n`: the fast path for `m > n/2`
/// and truncation differences below.
pub fn longest_block_counts(bundle: &SeriesBundle, n: usize) -> Result<Vec<BigInt>> {
    if bundle.order() <= n {
        return Err(Error::InsufficientOrder { have: bundle.order(), need: n + 1 });
    }
    let half = n / 2;
    let cdf: Vec<BigInt> = (0..=half)
        .into_par_iter()
        .map(|m| structures_with_blocks_at_most(bundle, n, m))
        .collect::<Result<_>>()?;
    let mut counts = differences(&cdf);
    for m in half + 1..=n {
        counts.push(longest_block_count_fast(bundle, n, n - m)?);
    }
    let total: BigInt = counts.iter().sum();
    if total != bundle.g().coeff(n) {
        return Err(Error::Consistency(format!(
            "longest-block counts at n={n} sum to {total}, not g(n) = {}",
            bundle.g().coeff(n)
        )));
    }
    Ok(counts)
}

fn pmf_from_counts(counts: Vec<BigInt>, total: &BigInt) -> ExactPmf {
    ExactPmf::from_counts(counts.into_iter().enumerate().filter(|(_, c)| !c.is_zero()), total)
}

/// Exact law of the longest block length of a uniform structure of length
/// `n`, over the lengths that occur.
pub fn longest_block_exact_dist(bundle: &SeriesBundle, n: usize, bound: usize) -> Result<ExactPmf> {
    check_exact_n(bundle, n, bound)?;
    let counts = longest_block_counts(bundle, n)?;
    Ok(pmf_from_counts(counts, &bundle.g().coeff(n)))
}

/// Same law as [`longest_block_exact_dist`], from truncation differences
/// alone.
pub fn longest_block_exact_dist_by_truncation(bundle: &SeriesBundle, n: usize, bound: usize) -> Result<ExactPmf> {
    check_exact_n(bundle, n, bound)?;
    let counts = longest_block_counts_by_truncation(bundle, n)?;
    Ok(pmf_from_counts(counts, &bundle.g().coeff(n)))
}

/// `P(B_n <= m)`
pub fn longest_block_cdf(bundle: &SeriesBundle, n: usize, m: usize) -> Result<BigRational> {
    let c = structures_with_blocks_at_most(bundle, n, m)?;
    Ok(BigRational::new(c, bundle.g().coeff(n)))
}

/// `b_k = [z^k]G^2`
pub fn g_squared_coeff(bundle: &SeriesBundle, k: usize) -> Result<BigInt> {
    if bundle.order() <= k {
        return Err(Error::InsufficientOrder { have: bundle.order(), need: k + 1 });
    }
    let g = bundle.g().coeffs();
    Ok((0..=k).map(|i| &g[i] * &g[k - i]).sum())
}

/// `lim P(n - B_n = k) = tau^-2 b_k rho^k`
pub fn longest_block_limit_pmf(bundle: &SeriesBundle, data: &SingularityData, k: usize) -> Result<Real> {
    let bits = data.bits();
    let b = Real::from_bigint(&g_squared_coeff(bundle, k)?, bits);
    Ok(b * data.rho.powi(k) / (&data.tau * &data.tau))
}

/// The limit law of `n - B_n` tabulated on `0..=kmax`.
pub fn longest_block_limit_law(bundle: &SeriesBundle, data: &SingularityData, kmax: usize) -> Result<LimitPmf> {
    if bundle.order() <= kmax {
        return Err(Error::InsufficientOrder { have: bundle.order(), need: kmax + 1 });
    }
    let g2 = bundle.g_squared();
    let bits = data.bits();
    let scale = (&data.tau * &data.tau).recip();
    let mut rho_k = Real::one(bits);
    let mut entries = Vec::with_capacity(kmax + 1);
    let mut total = Real::zero(bits);
    for k in 0..=kmax {
        let p = Real::from_bigint(&g2.coeff(k), bits) * &rho_k * &scale;
        total = &total + &p;
        entries.push((k, p));
        rho_k = &rho_k * &data.rho;
    }
    Ok(LimitPmf { pmf: Pmf::new(entries), truncation_error: Real::one(bits) - total })
}

/// `lim P(B_n >= n - t) = sum_{k<=t} tau^-2 b_k rho^k`
pub fn tail_probability(bundle: &SeriesBundle, data: &SingularityData, t: usize) -> Result<Real> {
    let law = longest_block_limit_law(bundle, data, t)?;
    Ok(Real::one(data.bits()) - law.truncation_error)
}

/// Partial sums `sum_{k<K}` of the limit law for each `K` in `ks`.
///
/// These run on the rescaled series `G(rho y)` in double precision, whose
/// coefficients stay bounded, so `K` can reach the tens of thousands.
pub fn limit_partial_sums_scaled(data: &SingularityData, ks: &[usize]) -> Result<Vec<f64>> {
    let kmax = ks.iter().copied().max().unwrap_or(0);
    let raw = solve_scaled::<f64>(data.params, kmax.max(1), &data.rho.to_f64())?;
    let g = &raw.g;
    let tau = data.tau.to_f64();
    let mut sums = Vec::with_capacity(kmax + 1);
    let mut acc = 0.0;
    sums.push(0.0);
    for k in 0..kmax {
        let b: f64 = (0..=k).map(|i| g[i] * g[k - i]).sum();
        acc += b / (tau * tau);
        sums.push(acc);
    }
    Ok(ks.iter().map(|&k| sums[k]).collect())
}

#[derive(Debug, Clone)]
pub struct Moments {
    /// `n - alpha n^(1/2)`
    pub expectation: Real,
    /// `beta n^(3/2)`
    pub variance: Real,
}

pub fn longest_block_moments(data: &SingularityData, n: usize) -> Moments {
    let nn = Real::from_i64(n as i64, data.bits());
    let root = nn.sqrt();
    Moments { expectation: &nn - &data.alpha * &root, variance: &data.beta * &nn * root }
}

/// `2 c tau^-1 (1 - k/n)^(-3/2) k^(-3/2)`, the large-`k` form of
/// `P(B_n = n - k)` for `k < n/2`.
pub fn longest_block_asymptotic_pmf(data: &SingularityData, n: usize, k: usize) -> Real {
    let bits = data.bits();
    let kk = Real::from_i64(k as i64, bits);
    let x = Real::one(bits) - &kk / Real::from_i64(n as i64, bits);
    let two = Real::from_i64(2, bits);
    two * &data.c / &data.tau / (&x * x.sqrt()) / (&kk * kk.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate_structures;
    use crate::params::StructureParams;
    use num_traits::One;

    fn p(g: u32, r: u32, l: u32) -> StructureParams {
        StructureParams::new(g, r, l).unwrap()
    }

    #[test]
    fn matches_oracle_histogram() {
        let pp = p(1, 1, 2);
        let b = SeriesBundle::solve(pp, 11).unwrap();
        let stats = enumerate_structures(10, pp).unwrap();
        let counts = longest_block_counts(&b, 10).unwrap();
        for (m, c) in counts.iter().enumerate() {
            assert_eq!(*c, BigInt::from(stats.longest_block.get(&m).copied().unwrap_or(0)), "m={m}");
        }
        assert_eq!(counts, longest_block_counts_by_truncation(&b, 10).unwrap());
    }

    #[test]
    fn top_probability_is_f_over_g() {
        let b = SeriesBundle::solve(p(1, 2, 2), 51).unwrap();
        let pmf = longest_block_exact_dist(&b, 50, DEFAULT_EXACT_BOUND).unwrap();
        assert_eq!(pmf.get(50).unwrap(), &BigRational::new(b.f().coeff(50), b.g().coeff(50)));
        assert!(pmf.is_normalized());
    }

    #[test]
    fn bounds_and_orders() {
        let b = SeriesBundle::solve(p(1, 2, 2), 20).unwrap();
        assert!(matches!(longest_block_exact_dist(&b, 20, 800), Err(Error::InsufficientOrder { .. })));
        assert!(matches!(longest_block_exact_dist(&b, 15, 10), Err(Error::BoundExceeded { .. })));
        assert!(longest_block_count_fast(&b, 10, 5).is_err());
    }

    #[test]
    fn cdf_endpoints() {
        let b = SeriesBundle::solve(p(2, 1, 1), 31).unwrap();
        assert!(longest_block_cdf(&b, 30, 30).unwrap().is_one());
        assert!(longest_block_cdf(&b, 30, 0).unwrap().is_zero());
    }
}
