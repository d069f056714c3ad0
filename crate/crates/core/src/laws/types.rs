//! Limit probabilities of block types and the longest-arc bound.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::params::BlockType;
use crate::series::SeriesBundle;
use crate::singularity::{Real, SingularityData};

#[derive(Debug, Clone)]
pub struct TypeProbabilities {
    /// Closed forms in `eta`.
    pub eta_form: BTreeMap<BlockType, Real>,
    /// The same limits written in `rho` and `tau`.
    pub rho_tau_form: BTreeMap<BlockType, Real>,
    /// Conditioned on the type being one of T, H, K, L, M.
    pub conditional: BTreeMap<BlockType, Real>,
}

impl TypeProbabilities {
    pub fn get(&self, t: BlockType) -> &Real {
        &self.eta_form[&t]
    }

    pub fn named_total(&self) -> Real {
        let bits = self.eta_form[&BlockType::T].precision();
        BlockType::NAMED.iter().fold(Real::zero(bits), |acc, t| acc + &self.eta_form[t])
    }
}

/// Limit probability that a block (equivalently, the longest block) has
/// each named type. K and L are reported separately.
pub fn block_type_limit_prob(data: &SingularityData) -> Result<TypeProbabilities> {
    let bits = data.bits();
    let one = Real::one(bits);
    let int = |i: i64| Real::from_i64(i, bits);
    let mut eta_form = BTreeMap::new();
    let mut rho_tau_form = BTreeMap::new();
    if data.params.gamma() == 0 {
        // every nontrivial block is a rainbow
        for t in BlockType::NAMED {
            let v = if t == BlockType::T { one.clone() } else { Real::zero(bits) };
            eta_form.insert(t, v.clone());
            rho_tau_form.insert(t, v);
        }
    } else {
        let eta = &data.eta;
        let s = &one - eta;
        // a shadow with m arcs: eta^m (2m - 1 + eta) / (1 - eta)^(m+1)
        let genus_one = |m: usize| eta.powi(m) * (int(2 * m as i64 - 1) + eta) / s.powi(m + 1);
        eta_form.insert(BlockType::T, eta.clone());
        eta_form.insert(BlockType::H, genus_one(2));
        eta_form.insert(BlockType::K, genus_one(3));
        eta_form.insert(BlockType::L, genus_one(3));
        eta_form.insert(BlockType::M, genus_one(4));

        let r2 = 2 * data.params.stack() as usize;
        let rr = data.rho.powi(r2);
        let d = &one - &data.rho * &data.rho + &rr;
        let rt2 = &rr * &data.tau * &data.tau;
        let gap = &d - &rt2;
        let form = |m: usize| rt2.powi(m) * (int(2 * m as i64 - 1) * &d + &rt2) / gap.powi(m + 1);
        rho_tau_form.insert(BlockType::T, &rt2 / &d);
        rho_tau_form.insert(BlockType::H, form(2));
        rho_tau_form.insert(BlockType::K, form(3));
        rho_tau_form.insert(BlockType::L, form(3));
        rho_tau_form.insert(BlockType::M, form(4));
    }
    let tol = Real::parse("1e-10", bits).expect("literal");
    for t in BlockType::NAMED {
        if (&eta_form[&t] - &rho_tau_form[&t]).abs() > tol {
            return Err(Error::Consistency(format!(
                "type {t}: eta form {} differs from rho-tau form {}",
                eta_form[&t].to_decimal(15),
                rho_tau_form[&t].to_decimal(15)
            )));
        }
    }
    let total = BlockType::NAMED.iter().fold(Real::zero(bits), |acc, t| acc + &eta_form[t]);
    let conditional = BlockType::NAMED.iter().map(|t| (*t, &eta_form[t] / &total)).collect();
    Ok(TypeProbabilities { eta_form, rho_tau_form, conditional })
}

/// `P(Y_n = I) = [z^n]B^I / [z^n]F` for every type, at one finite `n`.
pub fn block_type_exact_prob(bundle: &SeriesBundle, n: usize) -> Result<BTreeMap<BlockType, BigRational>> {
    if bundle.order() <= n {
        return Err(Error::InsufficientOrder { have: bundle.order(), need: n + 1 });
    }
    let f = bundle.f().coeff(n);
    BlockType::ALL
        .iter()
        .map(|&t| Ok((t, BigRational::new(bundle.block_type_series(t)?.coeff(n), f.clone()))))
        .collect()
}

/// How the K and L masses enter the longest-arc bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KlConvention {
    /// K and L share one mass, the value of either alone.
    Combined,
    /// K and L contribute one mass each.
    Separate,
}

impl fmt::Display for KlConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KlConvention::Combined => "combined-KL",
            KlConvention::Separate => "separate-KL",
        })
    }
}

/// Weight of each type in the longest-arc bound: a T block is spanned by
/// its rainbow, an H block has an arc of at least half its length, the
/// others at least a third.
pub fn longest_arc_weight(t: BlockType) -> (i64, i64) {
    match t {
        BlockType::T => (1, 1),
        BlockType::H => (1, 2),
        _ => (1, 3),
    }
}

/// `sum_I d_I P(Y = I)`: the expected longest arc is at least this
/// constant times `n`, to first order.
pub fn longest_arc_bound(probs: &TypeProbabilities, convention: KlConvention) -> Real {
    let bits = probs.get(BlockType::T).precision();
    let types: &[BlockType] = match convention {
        KlConvention::Combined => &[BlockType::T, BlockType::H, BlockType::K, BlockType::M],
        KlConvention::Separate => &BlockType::NAMED,
    };
    types.iter().fold(Real::zero(bits), |acc, &t| {
        let (a, b) = longest_arc_weight(t);
        acc + Real::from_i64(a, bits) * probs.get(t) / Real::from_i64(b, bits)
    })
}
