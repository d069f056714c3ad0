use gstruct::laws::*;
use gstruct::series::SeriesBundle;
use gstruct::singularity::{singularity_data, Real, SingularityConfig};
use gstruct::{BlockType, StructureParams};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

fn p(g: u32, r: u32, l: u32) -> StructureParams {
    StructureParams::new(g, r, l).unwrap()
}

#[test]
fn fast_path_equals_truncation() {
    let b = SeriesBundle::solve(p(1, 2, 2), 401).unwrap();
    for n in [100, 200, 400] {
        let trunc = longest_block_counts_by_truncation(&b, n).unwrap();
        let hybrid = longest_block_counts(&b, n).unwrap();
        assert_eq!(trunc, hybrid, "n={n}");
        for k in 0..n.div_ceil(2) {
            assert_eq!(longest_block_count_fast(&b, n, k).unwrap(), trunc[n - k], "n={n} k={k}");
        }
    }
}

#[test]
fn exact_laws_sum_to_one() {
    for pp in [p(0, 1, 2), p(1, 2, 2), p(2, 1, 1)] {
        let b = SeriesBundle::solve(pp, 201).unwrap();
        for n in [10, 50, 200] {
            assert!(longest_block_exact_dist(&b, n, DEFAULT_EXACT_BOUND).unwrap().is_normalized());
            for t in [None, Some(BlockType::T)] {
                assert!(short_block_exact_dist(&b, 3, t, n, DEFAULT_EXACT_BOUND).unwrap().is_normalized());
            }
        }
    }
}

#[test]
fn limit_partial_sums_within_tail_bound() {
    for pp in [p(1, 2, 2), p(2, 1, 2)] {
        let d = singularity_data(pp, &SingularityConfig::default()).unwrap();
        let alpha = d.alpha.to_f64();
        let ks = [100, 1_000, 10_000];
        let sums = limit_partial_sums_scaled(&d, &ks).unwrap();
        for (k, s) in ks.iter().zip(&sums) {
            let floor = 1.0 - 2.0 * alpha / (*k as f64).sqrt();
            assert!(*s <= 1.0 && *s >= floor, "{pp} K={k}: {s} vs {floor}");
        }
        assert!(sums.windows(2).all(|w| w[0] < w[1]));
        // the double-precision sums agree with the exact coefficients
        let b = SeriesBundle::solve(pp, 100).unwrap();
        let exact = tail_probability(&b, &d, 99).unwrap().to_f64();
        assert!((exact - sums[0]).abs() < 1e-12, "{exact} {}", sums[0]);
    }
}

#[test]
fn large_deviations_vanish() {
    let b = SeriesBundle::solve(p(1, 2, 2), 801).unwrap();
    let tails: Vec<f64> = [100usize, 200, 400, 800]
        .iter()
        .map(|&n| {
            // P(n - B >= n^0.8) = P(B <= n - ceil(n^0.8))
            let gap = (n as f64).powf(0.8).ceil() as usize;
            longest_block_cdf(&b, n, n - gap).unwrap().to_f64().unwrap()
        })
        .collect();
    assert!(tails.windows(2).all(|w| w[1] < w[0]), "{tails:?}");
}

#[test]
fn asymptotic_pmf_improves_with_n() {
    let pp = p(1, 2, 2);
    let b = SeriesBundle::solve(pp, 401).unwrap();
    let d = singularity_data(pp, &SingularityConfig::default()).unwrap();
    let err = |n: usize| {
        let k = n / 4;
        let exact = longest_block_exact_dist(&b, n, DEFAULT_EXACT_BOUND).unwrap().get(n - k).unwrap().to_f64().unwrap();
        let approx = longest_block_asymptotic_pmf(&d, n, k).to_f64();
        (approx / exact - 1.0).abs()
    };
    assert!(err(400) < err(100));
}

#[test]
fn limit_law_at_zero() {
    let pp = p(0, 1, 2);
    let b = SeriesBundle::solve(pp, 10).unwrap();
    let d = singularity_data(pp, &SingularityConfig::default()).unwrap();
    let v = longest_block_limit_pmf(&b, &d, 0).unwrap();
    assert!((&v - &d.rho * &d.rho).abs() < Real::parse("1e-50", d.bits()).unwrap());
    assert!((v.to_f64() - 0.145898).abs() < 1e-6);
}

#[test]
fn moments_follow_alpha_and_beta() {
    let d = singularity_data(p(1, 2, 2), &SingularityConfig::default()).unwrap();
    let m = longest_block_moments(&d, 10_000);
    assert!((m.expectation.to_f64() - (10_000.0 - 100.0 * 1.196)).abs() < 0.1);
    assert!((m.variance.to_f64() / 1e6 - d.beta.to_f64()).abs() < 1e-9);
}

#[test]
fn type_limits_do_not_depend_on_stack_or_arc_length() {
    for g in 1..=2 {
        let base = block_type_limit_prob(&singularity_data(p(g, 1, 1), &SingularityConfig::default()).unwrap()).unwrap();
        for (r, l) in [(1, 2), (2, 2), (2, 3), (3, 4), (4, 4)] {
            let other = block_type_limit_prob(&singularity_data(p(g, r, l), &SingularityConfig::default()).unwrap()).unwrap();
            for t in BlockType::NAMED {
                assert!((other.get(t) - base.get(t)).abs().to_f64() < 1e-8);
            }
        }
    }
}

#[test]
fn exact_type_frequencies_approach_limits() {
    let pp = p(1, 1, 2);
    let b = SeriesBundle::solve(pp, 301).unwrap();
    let d = singularity_data(pp, &SingularityConfig::default()).unwrap();
    let lim = block_type_limit_prob(&d).unwrap();
    let gap = |n: usize| {
        let exact = block_type_exact_prob(&b, n).unwrap();
        (exact[&BlockType::H].to_f64().unwrap() - lim.get(BlockType::H).to_f64()).abs()
    };
    assert!(gap(300) < gap(100));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn small_exact_laws_are_normalized(g in 0u32..=2, n in 1usize..60, k in 1usize..6) {
        let b = SeriesBundle::solve(p(g, 1, 2), n + 1).unwrap();
        prop_assert!(longest_block_exact_dist(&b, n, DEFAULT_EXACT_BOUND).unwrap().is_normalized());
        let s = short_block_exact_dist(&b, k, None, n, DEFAULT_EXACT_BOUND).unwrap();
        prop_assert!(s.total().is_one());
        let mean = s.entries().iter().fold(BigRational::from_integer(0.into()), |acc, (bb, q)| acc + q * BigRational::from_integer((*bb).into()));
        prop_assert!(mean <= BigRational::from_integer((n / k).into()));
    }

    #[test]
    fn negative_binomial_is_a_law(t in 0.0f64..0.9) {
        let nb = NegBinomial { t: Real::from_f64(t, 256) };
        let mut s = 0.0;
        let mut m = 0.0;
        for b in 0..2000 {
            let q = nb.pmf(b).to_f64();
            s += q;
            m += b as f64 * q;
        }
        prop_assert!((s - 1.0).abs() < 1e-9);
        prop_assert!((m - nb.mean().to_f64()).abs() < 1e-6);
    }
}
