use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::power_series::PowerSeries;
use super::shadow_poly::shadow_sum;
use super::solver::solve_scaled;
use crate::error::{Error, Result};
use crate::params::{BlockType, StructureParams};

pub type IntSeries = PowerSeries<BigInt>;

/// The counting series of structures (`G`), blocks (`F`), 0-blocks (`B0`)
/// and gamma-blocks (`Bg`), all at one truncation order.
#[derive(Debug, Clone)]
pub struct SeriesBundle {
    params: StructureParams,
    g: IntSeries,
    f: IntSeries,
    b0: IntSeries,
    bgamma: IntSeries,
}

impl SeriesBundle {
    /// Solves the block equations to `order` coefficients and checks that
    /// every counting coefficient is a nonnegative integer.
    pub fn solve(params: StructureParams, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParams("series order must be at least 1".into()));
        }
        let raw = solve_scaled::<BigInt>(params, order, &BigInt::one())?;
        let bundle = Self {
            params,
            g: IntSeries::new(raw.g, order),
            f: IntSeries::new(raw.f, order),
            b0: IntSeries::new(raw.b0, order),
            bgamma: IntSeries::new(raw.bgamma, order),
        };
        for (name, s) in [("G", &bundle.g), ("F", &bundle.f), ("B0", &bundle.b0), ("Bgamma", &bundle.bgamma)] {
            if let Some(n) = s.coeffs().iter().position(|c| c.is_negative()) {
                return Err(Error::Consistency(format!("[z^{n}]{name} = {} is negative ({params})", s.coeffs()[n])));
            }
        }
        Ok(bundle)
    }

    pub fn params(&self) -> StructureParams {
        self.params
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// Structures: `g(n)`.
    pub fn g(&self) -> &IntSeries {
        &self.g
    }

    /// Blocks: `f(n)`.
    pub fn f(&self) -> &IntSeries {
        &self.f
    }

    pub fn b0(&self) -> &IntSeries {
        &self.b0
    }

    pub fn bgamma(&self) -> &IntSeries {
        &self.bgamma
    }

    fn r2(&self) -> usize {
        2 * self.params.stack() as usize
    }

    /// `1 - z^2 + z^(2r)`
    pub fn stack_denominator(&self) -> IntSeries {
        let mut c = vec![0i64; self.r2() + 1];
        c[0] = 1;
        c[2] -= 1;
        c[self.r2()] += 1;
        IntSeries::from_ints(&c, self.order())
    }

    /// `sum_{i=0}^{lambda-2} z^i`
    pub fn short_segment(&self) -> IntSeries {
        let terms = self.params.arc_len().saturating_sub(1) as usize;
        IntSeries::from_ints(&vec![1; terms], self.order())
    }

    /// `W = z^(2r) G^2 / (1 - z^2 + z^(2r) - z^(2r) G^2)`
    pub fn shadow_argument(&self) -> Result<IntSeries> {
        let num = (&self.g * &self.g).shift(self.r2());
        let den = &self.stack_denominator() - &num;
        Ok(&num * &den.reciprocal()?)
    }

    /// `b_k = [z^k] G^2`, the derivative of `1/(1-x)` at `F`.
    pub fn g_squared(&self) -> IntSeries {
        &self.g * &self.g
    }

    /// Series of blocks of one type.
    ///
    /// `T` is the rainbow closed form `z^(2r) (G - S) / D`; the genus-1 types
    /// are `G^(-1) W^m` with `m` shadow arcs; `Other` is whatever part of
    /// `Bg` the genus-1 types leave over; `Trivial` is `z`.
    pub fn block_type_series(&self, t: BlockType) -> Result<IntSeries> {
        let n = self.order();
        match t {
            BlockType::Trivial => Ok(IntSeries::monomial(1, BigInt::one(), n)),
            BlockType::T => {
                let inner = &self.g - &self.short_segment();
                Ok(&inner.shift(self.r2()) * &self.stack_denominator().reciprocal()?)
            }
            BlockType::H | BlockType::K | BlockType::L | BlockType::M => {
                if self.params.gamma() == 0 {
                    return Ok(IntSeries::zero(n));
                }
                let m = t.shadow_arcs().expect("genus-1 type");
                let w = self.shadow_argument()?;
                Ok(&self.g.reciprocal()? * &w.pow(m))
            }
            BlockType::Other => {
                let mut rest = self.bgamma.clone();
                for s in [BlockType::H, BlockType::K, BlockType::L, BlockType::M] {
                    rest = &rest - &self.block_type_series(s)?;
                }
                Ok(rest)
            }
        }
    }

    /// `G_{<= m} = 1 / (1 - F_{<= m})`: structures whose blocks all have
    /// length at most `m`.
    pub fn truncated_structure_series(&self, m: usize) -> Result<IntSeries> {
        let one = IntSeries::one(self.order());
        (&one - &self.f.truncate_degree(m)).reciprocal()
    }

    /// Count of blocks of length `k` (optionally of one type) used to mark
    /// blocks in the bivariate series.
    pub fn marked_block_count(&self, k: usize, t: Option<BlockType>) -> Result<BigInt> {
        if k >= self.order() {
            return Err(Error::InsufficientOrder { have: self.order(), need: k + 1 });
        }
        Ok(match t {
            None => self.f.coeff(k),
            Some(t) => self.block_type_series(t)?.coeff(k),
        })
    }

    /// For `b = 0..=bmax`, the series whose `n`-th coefficient counts
    /// structures with exactly `b` (typed) blocks of length `k`.
    ///
    /// This is `[u^b] 1 / (1 - F - (u - 1) a z^k)`, which equals
    /// `a^b z^(kb) / A^(b+1)` with `A = 1 - F + a z^k`.
    pub fn block_count_series(&self, k: usize, t: Option<BlockType>, bmax: usize) -> Result<Vec<IntSeries>> {
        if k == 0 {
            return Err(Error::InvalidParams("block length k must be at least 1".into()));
        }
        let n = self.order();
        let a = self.marked_block_count(k, t)?;
        let mut base = &IntSeries::one(n) - &self.f;
        let bumped = base.coeff(k) + &a;
        base = &base + &IntSeries::monomial(k, bumped - base.coeff(k), n);
        let inv = base.reciprocal()?;
        let step = inv.shift(k).scale(&a);
        let mut out = Vec::with_capacity(bmax + 1);
        let mut cur = inv;
        for b in 0..=bmax {
            if b > 0 {
                cur = if cur.valuation() >= n { IntSeries::zero(n) } else { &cur * &step };
            }
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// Verifies the four defining identities with series arithmetic that is
    /// independent of the solver.
    pub fn check_identities(&self) -> Result<()> {
        let n = self.order();
        let one = IntSeries::one(n);
        let fail = |what: &str| Err(Error::Consistency(format!("{what} fails at order {n} ({})", self.params)));

        if &self.g * &(&one - &self.f) != one {
            return fail("G (1 - F) = 1");
        }
        let z = IntSeries::monomial(1, BigInt::one(), n);
        if self.f != &(&z + &self.b0) + &self.bgamma {
            return fail("F = z + B0 + Bgamma");
        }
        let gs = &self.g - &self.short_segment();
        if &self.b0 * &self.stack_denominator() != gs.shift(self.r2()) {
            return fail("B0 (1 - z^2 + z^2r) = z^2r (G - S)");
        }
        let one_minus_z2 = IntSeries::from_ints(&[1, 0, -1], n);
        if &self.b0 * &one_minus_z2 != (&gs - &self.b0).shift(self.r2()) {
            return fail("B0 (1 - z^2) = z^2r (G - B0 - S)");
        }
        let shadows = shadow_sum(self.params.gamma())?;
        let rhs = if shadows.is_empty() {
            IntSeries::zero(n)
        } else {
            IntSeries::from_ints(&shadows, n).compose(&self.shadow_argument()?)?
        };
        if &self.bgamma * &self.g != rhs {
            return fail("Bgamma G = sum I_g(W)");
        }
        if self.g.coeffs().iter().chain(self.f.coeffs()).any(|c| c.is_negative()) {
            return fail("nonnegativity");
        }
        Ok(())
    }
}

/// Convenience wrapper around [`SeriesBundle::solve`].
pub fn solve_system(params: StructureParams, order: usize) -> Result<SeriesBundle> {
    SeriesBundle::solve(params, order)
}

/// Convenience wrapper around [`SeriesBundle::block_type_series`].
pub fn block_type_series(params: StructureParams, t: BlockType, order: usize) -> Result<IntSeries> {
    SeriesBundle::solve(params, order)?.block_type_series(t)
}

#[cfg(test)]
pub(crate) fn is_zero_series(s: &IntSeries) -> bool {
    s.coeffs().iter().all(num_traits::Zero::is_zero)
}
