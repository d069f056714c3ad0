//! Uniform sampling of the block sequence of a structure of given length.
//!
//! The first block has length `k` with probability `f(k) g(n-k) / g(n)`;
//! its type is drawn in proportion to the number of blocks of each type at
//! length `k`, and the rest of the backbone is sampled the same way.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::params::{BlockType, StructureParams};
use crate::series::SeriesBundle;

/// An ordered list of `(length, type)` blocks covering `total` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSequenceSample {
    pub blocks: Vec<(usize, BlockType)>,
    pub total: usize,
}

impl BlockSequenceSample {
    pub fn longest_block(&self) -> usize {
        self.blocks.iter().map(|b| b.0).max().unwrap_or(0)
    }

    /// Number of blocks of length `k`, optionally of one type.
    pub fn count_of_length(&self, k: usize, t: Option<BlockType>) -> usize {
        self.blocks.iter().filter(|b| b.0 == k && t.map_or(true, |t| b.1 == t)).count()
    }
}

impl fmt::Display for BlockSequenceSample {
    /// Semicolon-separated `length:type` tokens.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, t)) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{k}:{t}")?;
        }
        Ok(())
    }
}

/// Cumulative weight tables for sampling up to a fixed length.
#[derive(Debug, Clone)]
pub struct SamplerTables {
    params: StructureParams,
    max_n: usize,
    // first[m][k-1] = sum_{i<=k} f(i) g(m-i)
    first: Vec<Vec<BigUint>>,
    // kinds[k] = cumulative counts of blocks of length k by type
    kinds: Vec<Vec<(BlockType, BigUint)>>,
}

fn to_unsigned(x: &num_bigint::BigInt) -> Result<BigUint> {
    x.to_biguint().ok_or_else(|| Error::Consistency(format!("negative count {x}")))
}

impl SamplerTables {
    /// Tables for lengths `0..=max_n`; needs a bundle of order above `max_n`.
    pub fn new(bundle: &SeriesBundle, max_n: usize) -> Result<Self> {
        if bundle.order() <= max_n {
            return Err(Error::InsufficientOrder { have: bundle.order(), need: max_n + 1 });
        }
        let f: Vec<BigUint> = bundle.f().coeffs()[..=max_n].iter().map(to_unsigned).collect::<Result<_>>()?;
        let g: Vec<BigUint> = bundle.g().coeffs()[..=max_n].iter().map(to_unsigned).collect::<Result<_>>()?;
        let mut first = Vec::with_capacity(max_n + 1);
        for m in 0..=max_n {
            let mut acc = BigUint::zero();
            let row: Vec<BigUint> = (1..=m)
                .map(|k| {
                    acc += &f[k] * &g[m - k];
                    acc.clone()
                })
                .collect();
            if m > 0 && row[m - 1] != g[m] {
                return Err(Error::Consistency(format!("sum_k f(k) g({m}-k) != g({m})")));
            }
            first.push(row);
        }
        let typed: Vec<(BlockType, Vec<BigUint>)> = BlockType::ALL
            .iter()
            .map(|&t| {
                let s = bundle.block_type_series(t)?;
                Ok((t, s.coeffs()[..=max_n].iter().map(to_unsigned).collect::<Result<Vec<_>>>()?))
            })
            .collect::<Result<_>>()?;
        let mut kinds = Vec::with_capacity(max_n + 1);
        for k in 0..=max_n {
            let mut acc = BigUint::zero();
            let mut row = Vec::new();
            for (t, c) in &typed {
                if !c[k].is_zero() {
                    acc += &c[k];
                    row.push((*t, acc.clone()));
                }
            }
            if acc != f[k] {
                return Err(Error::Consistency(format!("block types at length {k} do not add up to f({k})")));
            }
            kinds.push(row);
        }
        Ok(Self { params: bundle.params(), max_n, first, kinds })
    }

    pub fn params(&self) -> StructureParams {
        self.params
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Exact law of the sampled block sequence at length `n`, read off the
    /// sampling tables by walking every branch. Only for small `n`.
    pub fn sequence_law(&self, n: usize) -> Result<BTreeMap<Vec<(usize, BlockType)>, BigRational>> {
        self.check(n)?;
        let mut out = BTreeMap::new();
        let mut prefix = Vec::new();
        self.walk(n, BigRational::from_integer(1.into()), &mut prefix, &mut out);
        Ok(out)
    }

    fn walk(
        &self,
        m: usize,
        prob: BigRational,
        prefix: &mut Vec<(usize, BlockType)>,
        out: &mut BTreeMap<Vec<(usize, BlockType)>, BigRational>,
    ) {
        if m == 0 {
            *out.entry(prefix.clone()).or_insert_with(BigRational::zero) += prob;
            return;
        }
        let row = &self.first[m];
        let total = row[m - 1].clone();
        for k in 1..=m {
            let w = if k == 1 { row[0].clone() } else { &row[k - 1] - &row[k - 2] };
            if w.is_zero() {
                continue;
            }
            let p_len = &prob * BigRational::new(w.into(), total.clone().into());
            let kinds = &self.kinds[k];
            let f_k = kinds.last().expect("nonempty").1.clone();
            let mut prev = BigUint::zero();
            for (t, cum) in kinds {
                let c = cum - &prev;
                prev = cum.clone();
                prefix.push((k, *t));
                let p = &p_len * BigRational::new(c.into(), f_k.clone().into());
                self.walk(m - k, p, prefix, out);
                prefix.pop();
            }
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::InsufficientOrder { have: self.max_n + 1, need: n + 1 });
        }
        Ok(())
    }
}

/// Draws `i` with `cum[i-1] <= x < cum[i]`.
fn pick(cum: &[BigUint], x: &BigUint) -> usize {
    cum.partition_point(|c| c <= x)
}

/// A seeded sampler. Identical seeds give identical streams.
#[derive(Debug, Clone)]
pub struct Sampler {
    tables: SamplerTables,
    rng: ChaCha20Rng,
}

impl Sampler {
    pub fn new(tables: SamplerTables, seed: u64) -> Self {
        Self { tables, rng: ChaCha20Rng::seed_from_u64(seed) }
    }

    pub fn tables(&self) -> &SamplerTables {
        &self.tables
    }

    pub fn sample(&mut self, n: usize) -> Result<BlockSequenceSample> {
        self.tables.check(n)?;
        let mut blocks = Vec::new();
        let mut m = n;
        while m > 0 {
            let row = &self.tables.first[m];
            let x = self.rng.gen_biguint_below(&row[m - 1]);
            let k = pick(row, &x) + 1;
            let kinds = &self.tables.kinds[k];
            let y = self.rng.gen_biguint_below(&kinds.last().expect("nonempty").1);
            let i = kinds.partition_point(|(_, c)| c <= &y);
            blocks.push((k, kinds[i].0));
            m -= k;
        }
        Ok(BlockSequenceSample { blocks, total: n })
    }
}

/// One sample from a fresh sampler seeded with `seed`.
pub fn sample_block_sequence(p: StructureParams, n: usize, seed: u64) -> Result<BlockSequenceSample> {
    let bundle = SeriesBundle::solve(p, n + 1)?;
    Sampler::new(SamplerTables::new(&bundle, n)?, seed).sample(n)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson goodness of fit. Adjacent cells are pooled, in index order,
/// until each has an expected count of at least `min_expected`.
pub fn chi_square_gof(observed: &[u64], probs: &[f64], min_expected: f64) -> Result<ChiSquareTest> {
    if observed.len() != probs.len() {
        return Err(Error::InvalidParams("observed and expected cells differ in number".into()));
    }
    let n: u64 = observed.iter().sum();
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut o, mut e) = (0.0, 0.0);
    for (&oi, &pi) in observed.iter().zip(probs) {
        o += oi as f64;
        e += pi * n as f64;
        if e >= min_expected {
            cells.push((o, e));
            o = 0.0;
            e = 0.0;
        }
    }
    if e > 0.0 || o > 0.0 {
        match cells.last_mut() {
            Some(last) => {
                last.0 += o;
                last.1 += e;
            }
            None => cells.push((o, e)),
        }
    }
    if cells.len() < 2 {
        return Ok(ChiSquareTest { statistic: 0.0, dof: 0, p_value: 1.0 });
    }
    let statistic: f64 = cells.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let dof = cells.len() - 1;
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::InvalidParams(e.to_string()))?;
    Ok(ChiSquareTest { statistic, dof, p_value: 1.0 - dist.cdf(statistic) })
}

/// Probabilities of an exact law in support order, as `f64`.
pub fn probabilities_f64(pmf: &crate::laws::ExactPmf, support: impl Iterator<Item = usize>) -> Vec<f64> {
    support.map(|k| pmf.get(k).and_then(|p| p.to_f64()).unwrap_or(0.0)).collect()
}
