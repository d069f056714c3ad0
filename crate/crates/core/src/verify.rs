//! The acceptance checks, shared by the command line and the test suite.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::Result;
use crate::laws::{
    block_type_limit_prob, kolmogorov_distance, longest_arc_bound, longest_block_count_fast,
    longest_block_counts_by_truncation, longest_block_exact_dist, longest_block_limit_law, short_block_exact_dist,
    short_block_limit_law, tail_probability, total_variation_distance, KlConvention, DEFAULT_EXACT_BOUND,
};
use crate::oracle::{enumerate_structures, structure_counts};
use crate::params::{BlockType, StructureParams};
use crate::sampler::{chi_square_gof, probabilities_f64, Sampler, SamplerTables};
use crate::series::{IntSeries, SeriesBundle};
use crate::singularity::{build_q, coefficient_asymptotics, singularity_data, Real, SingularityConfig};

/// Reference `alpha` values: `(gamma, r, lambda, alpha)`.
pub const ALPHA_REFERENCE: &[(u32, u32, u32, f64)] = &[
    (0, 1, 1, 1.954),
    (0, 2, 1, 2.804),
    (0, 3, 1, 3.431),
    (0, 1, 2, 1.687),
    (0, 2, 2, 2.483),
    (0, 3, 2, 3.096),
    (0, 2, 3, 2.201),
    (0, 3, 3, 2.797),
    (0, 3, 4, 2.529),
    (1, 1, 1, 0.868),
    (1, 2, 1, 1.271),
    (1, 3, 1, 1.566),
    (1, 1, 2, 0.804),
    (1, 2, 2, 1.196),
    (1, 3, 2, 1.488),
    (1, 2, 3, 1.149),
    (1, 3, 3, 1.434),
    (1, 3, 4, 1.399),
    (2, 1, 1, 0.640),
    (2, 2, 1, 0.941),
    (2, 3, 1, 1.162),
    (2, 1, 2, 0.601),
    (2, 2, 2, 0.896),
    (2, 3, 2, 1.115),
    (2, 2, 3, 0.871),
    (2, 3, 3, 1.085),
];

/// Reference limits of `P(B_n >= n - 100)`: `(gamma, r, lambda, value)`.
pub const TAIL_REFERENCE: &[(u32, u32, u32, f64)] =
    &[(1, 2, 2, 0.883), (2, 2, 2, 0.912), (1, 3, 4, 0.865), (2, 3, 4, 0.897)];

/// Reference limit type probabilities for gamma = 1.
pub const GENUS_ONE_TYPES: [(BlockType, f64); 5] = [
    (BlockType::T, 0.227),
    (BlockType::H, 0.360),
    (BlockType::K, 0.171),
    (BlockType::L, 0.171),
    (BlockType::M, 0.070),
];

pub const GENUS_TWO_CONDITIONAL_T: f64 = 0.450;
pub const ARC_BOUND_COMBINED: f64 = 0.487;
pub const ARC_BOUND_SEPARATE: f64 = 0.544;

/// `(r, lambda)` pairs used for the invariance check.
pub const INVARIANCE_PAIRS: [(u32, u32); 5] = [(1, 1), (1, 2), (2, 2), (2, 3), (3, 4)];

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "oracle equivalence"),
    (2, "alpha grid"),
    (3, "longest-block tails"),
    (4, "block type probabilities"),
    (5, "eta invariance"),
    (6, "algebraic identities"),
    (7, "exact-law self-consistency"),
    (8, "limit-law convergence"),
    (9, "coefficient asymptotics"),
    (10, "longest-arc bound"),
    (11, "sampler fidelity"),
];

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub digits: usize,
    pub samples: usize,
    pub seed: u64,
    pub oracle_nmax: usize,
    pub sample_n: usize,
    pub significance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { digits: 60, samples: 100_000, seed: 20_240_601, oracle_nmax: 12, sample_n: 60, significance: 1e-3 }
    }
}

impl VerifyConfig {
    fn singularity(&self) -> SingularityConfig {
        SingularityConfig::with_digits(self.digits)
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} {}: {} ({:.1}s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.seconds
        )
    }
}

fn p(g: u32, r: u32, l: u32) -> StructureParams {
    StructureParams::new(g, r, l).expect("reference parameters are valid")
}

type Outcome = Result<(bool, String)>;

/// Runs one criterion; errors count as failures.
pub fn run_criterion(id: u8, cfg: &VerifyConfig) -> CriterionResult {
    let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1);
    let start = Instant::now();
    let outcome = match id {
        1 => oracle_equivalence(cfg),
        2 => alpha_grid(cfg),
        3 => longest_tails(cfg),
        4 => type_probabilities(cfg),
        5 => eta_invariance(cfg),
        6 => algebraic_identities(cfg),
        7 => exact_self_consistency(cfg),
        8 => limit_convergence(cfg),
        9 => coefficient_asymptotics_check(cfg),
        10 => arc_bound(cfg),
        11 => sampler_fidelity(cfg),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult { id, name, passed, detail, seconds: start.elapsed().as_secs_f64() }
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|c| run_criterion(c.0, cfg)).collect()
}

fn oracle_equivalence(cfg: &VerifyConfig) -> Outcome {
    let n = cfg.oracle_nmax;
    let mut triples = 0;
    let mut bad = Vec::new();
    for g in 0..=2 {
        for r in 1..=3 {
            for l in 1..=2 {
                let pp = p(g, r, l);
                triples += 1;
                let series = SeriesBundle::solve(pp, n + 1)?;
                let counts = structure_counts(n, pp)?;
                let agree = counts.iter().enumerate().all(|(i, c)| series.g().coeff(i) == BigInt::from(*c));
                if !agree {
                    bad.push(pp.to_string());
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{triples} triples through n={n}, mismatches: {bad:?}")))
}

fn alpha_grid(cfg: &VerifyConfig) -> Outcome {
    let mut worst = (0.0f64, String::new());
    for &(g, r, l, want) in ALPHA_REFERENCE {
        let d = singularity_data(p(g, r, l), &cfg.singularity())?;
        let err = (d.alpha.to_f64() - want).abs();
        if err >= worst.0 {
            worst = (err, format!("{}", p(g, r, l)));
        }
    }
    Ok((worst.0 <= 1e-3, format!("{} cells, max |error| {:.1e} at {}", ALPHA_REFERENCE.len(), worst.0, worst.1)))
}

fn longest_tails(cfg: &VerifyConfig) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for &(g, r, l, want) in TAIL_REFERENCE {
        let pp = p(g, r, l);
        let bundle = SeriesBundle::solve(pp, 101)?;
        let d = singularity_data(pp, &cfg.singularity())?;
        let v = tail_probability(&bundle, &d, 100)?.to_f64();
        ok &= (v - want).abs() <= 1e-3;
        parts.push(format!("{g}/{r}/{l}: {v:.4}"));
    }
    Ok((ok, parts.join(", ")))
}

fn type_probabilities(cfg: &VerifyConfig) -> Outcome {
    let one = block_type_limit_prob(&*singularity_data(p(1, 2, 2), &cfg.singularity())?)?;
    let mut ok = true;
    let mut parts = Vec::new();
    for (t, want) in GENUS_ONE_TYPES {
        let v = one.get(t).to_f64();
        ok &= (v - want).abs() <= 1e-3;
        parts.push(format!("{t}={v:.4}"));
    }
    let total = one.named_total().to_f64();
    ok &= (total - 1.0).abs() <= 1e-9;
    let two = block_type_limit_prob(&*singularity_data(p(2, 2, 2), &cfg.singularity())?)?;
    let cond = two.conditional[&BlockType::T].to_f64();
    ok &= (cond - GENUS_TWO_CONDITIONAL_T).abs() <= 1e-3;
    Ok((ok, format!("gamma=1 {}, sum-1 = {:.1e}; gamma=2 conditional T={cond:.4}", parts.join(" "), total - 1.0)))
}

fn eta_invariance(cfg: &VerifyConfig) -> Outcome {
    let tol = Real::parse("1e-8", 128).expect("literal");
    let mut worst = 0.0f64;
    let mut ok = true;
    for g in 1..=2 {
        let all: Vec<_> = INVARIANCE_PAIRS
            .iter()
            .map(|&(r, l)| {
                let d = singularity_data(p(g, r, l), &cfg.singularity())?;
                Ok((d.eta.clone(), block_type_limit_prob(&d)?))
            })
            .collect::<Result<_>>()?;
        for (eta, probs) in &all[1..] {
            let d = (eta - &all[0].0).abs();
            worst = worst.max(d.to_f64());
            ok &= d < tol;
            for t in BlockType::NAMED {
                let d = (probs.get(t) - all[0].1.get(t)).abs();
                worst = worst.max(d.to_f64());
                ok &= d < tol;
            }
        }
    }
    Ok((ok, format!("gamma in 1..=2 over {} (r, lambda) pairs, max deviation {worst:.1e}", INVARIANCE_PAIRS.len())))
}

fn algebraic_identities(_cfg: &VerifyConfig) -> Outcome {
    let order = 200;
    let mut checked = 0;
    for g in 0..=2 {
        for pp in StructureParams::all_with_gamma(g) {
            let b = SeriesBundle::solve(pp, order)?;
            b.check_identities()?;
            // build_q fails unless Q(z, G) vanishes through order 200
            build_q(pp)?;
            if b.block_type_series(BlockType::T)? != *b.b0() {
                return Ok((false, format!("rainbow series differs from B0 at {pp}")));
            }
            if g == 1 {
                let mut sum = IntSeries::zero(order);
                for t in [BlockType::H, BlockType::K, BlockType::L, BlockType::M] {
                    sum = &sum + &b.block_type_series(t)?;
                }
                if sum != *b.bgamma() {
                    return Ok((false, format!("genus-1 types do not add up to Bgamma at {pp}")));
                }
            }
            let one_minus_f = &IntSeries::one(order) - b.f();
            let phi_prime = (&one_minus_f * &one_minus_f).reciprocal()?;
            if phi_prime != b.g_squared() {
                return Ok((false, format!("1/(1-F)^2 differs from G^2 at {pp}")));
            }
            checked += 1;
        }
    }
    Ok((true, format!("{checked} triples at order {order}")))
}

fn exact_self_consistency(_cfg: &VerifyConfig) -> Outcome {
    let pp = p(1, 2, 2);
    let n = 200;
    let bundle = SeriesBundle::solve(pp, n + 1)?;
    let trunc = longest_block_counts_by_truncation(&bundle, n)?;
    let mut fast_checked = 0;
    for k in 0..n.div_ceil(2) {
        if longest_block_count_fast(&bundle, n, k)? != trunc[n - k] {
            return Ok((false, format!("fast path differs from truncation at k={k}")));
        }
        fast_checked += 1;
    }
    let total: BigInt = trunc.iter().sum();
    if total != bundle.g().coeff(n) {
        return Ok((false, "truncation counts do not add up to g(n)".into()));
    }
    let mut pmfs = 0;
    for m in [10, 50, 200] {
        let pmf = longest_block_exact_dist(&bundle, m, DEFAULT_EXACT_BOUND)?;
        if !pmf.total().is_one() {
            return Ok((false, format!("longest-block law at n={m} does not sum to 1")));
        }
        pmfs += 1;
        for k in [1, 4] {
            if !short_block_exact_dist(&bundle, k, None, m, DEFAULT_EXACT_BOUND)?.total().is_one() {
                return Ok((false, format!("short-block law k={k} at n={m} does not sum to 1")));
            }
            pmfs += 1;
        }
    }
    Ok((true, format!("{fast_checked} fast-path values equal at n={n}; {pmfs} exact laws sum to 1")))
}

fn limit_convergence(cfg: &VerifyConfig) -> Outcome {
    let pp = p(1, 2, 2);
    let ns = [100, 200, 400];
    let bundle = SeriesBundle::solve(pp, 401)?;
    let data = singularity_data(pp, &cfg.singularity())?;
    let mut ks = Vec::new();
    let mut tvs = Vec::new();
    let short = short_block_limit_law(&bundle, &data, 1, None)?;
    for &n in &ns {
        let exact = longest_block_exact_dist(&bundle, n, DEFAULT_EXACT_BOUND)?.relabel(|m| n - m).to_f64();
        let limit = longest_block_limit_law(&bundle, &data, n - 1)?.pmf.to_f64();
        ks.push(kolmogorov_distance(&exact, &limit));

        let counts = short_block_exact_dist(&bundle, 1, None, n, DEFAULT_EXACT_BOUND)?.to_f64();
        let nb = counts.keys().map(|&b| (b, short.law.pmf(b).to_f64())).collect();
        tvs.push(total_variation_distance(&counts, &nb));
    }
    let decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    let ok = decreasing(&ks) && ks[2] < 0.05 && decreasing(&tvs) && tvs[2] < 0.05;
    Ok((ok, format!("Kolmogorov {:.4?}, total variation (k=1) {:.4?} at n={ns:?}", ks, tvs)))
}

fn coefficient_asymptotics_check(cfg: &VerifyConfig) -> Outcome {
    let pp = p(1, 2, 2);
    let bundle = SeriesBundle::solve(pp, 401)?;
    let data = singularity_data(pp, &cfg.singularity())?;
    let errs: Vec<f64> = [100usize, 200, 400]
        .iter()
        .map(|&n| {
            let exact = Real::from_bigint(&bundle.g().coeff(n), data.bits());
            (exact / coefficient_asymptotics(&data, n as u64) - Real::one(data.bits())).to_f64().abs()
        })
        .collect();
    let ok = errs[2] < 0.02 && errs[1] < errs[0] && errs[2] < errs[1];
    Ok((ok, format!("relative errors {errs:.5?} at n=[100, 200, 400]")))
}

fn arc_bound(cfg: &VerifyConfig) -> Outcome {
    let probs = block_type_limit_prob(&*singularity_data(p(1, 2, 2), &cfg.singularity())?)?;
    let a = longest_arc_bound(&probs, KlConvention::Combined).to_f64();
    let b = longest_arc_bound(&probs, KlConvention::Separate).to_f64();
    let ok = (a - ARC_BOUND_COMBINED).abs() <= 1e-3 && (b - ARC_BOUND_SEPARATE).abs() <= 1e-3;
    Ok((ok, format!("{}: {a:.4}, {}: {b:.4}", KlConvention::Combined, KlConvention::Separate)))
}

fn sampler_fidelity(cfg: &VerifyConfig) -> Outcome {
    let pp = p(1, 1, 2);
    let n = cfg.sample_n;
    let bundle = SeriesBundle::solve(pp, n + 1)?;
    let tables = SamplerTables::new(&bundle, n)?;

    // exhaustive: the sampler's law equals the structure census
    let mut exhaustive = Vec::new();
    for q in [pp, p(2, 1, 1), p(0, 2, 2)] {
        let small = SamplerTables::new(&SeriesBundle::solve(q, 11)?, 10)?;
        for m in 0..=10 {
            let stats = enumerate_structures(m, q)?;
            let law = small.sequence_law(m)?;
            let same = law.len() == stats.sequences.len()
                && stats.sequences.iter().all(|(seq, c)| {
                    law.get(seq) == Some(&BigRational::new(BigInt::from(*c), BigInt::from(stats.count)))
                });
            if !same {
                exhaustive.push(format!("{q} n={m}"));
            }
        }
    }

    let mut sampler = Sampler::new(tables, cfg.seed);
    let k = 4;
    let mut longest = vec![0u64; n + 1];
    let mut short = vec![0u64; n / k + 1];
    for _ in 0..cfg.samples {
        let s = sampler.sample(n)?;
        longest[s.longest_block()] += 1;
        short[s.count_of_length(k, None)] += 1;
    }
    let longest_law = longest_block_exact_dist(&bundle, n, DEFAULT_EXACT_BOUND)?;
    let short_law = short_block_exact_dist(&bundle, k, None, n, DEFAULT_EXACT_BOUND)?;
    let t1 = chi_square_gof(&longest, &probabilities_f64(&longest_law, 0..=n), 5.0)?;
    let t2 = chi_square_gof(&short, &probabilities_f64(&short_law, 0..=n / k), 5.0)?;
    let ok = exhaustive.is_empty() && t1.p_value > cfg.significance && t2.p_value > cfg.significance;
    Ok((
        ok,
        format!(
            "{} samples at n={n}: longest p={:.4} (dof {}), length-{k} count p={:.4} (dof {}); census mismatches {:?}",
            cfg.samples, t1.p_value, t1.dof, t2.p_value, t2.dof, exhaustive
        ),
    ))
}
