//! Coefficient-by-coefficient solution of the block functional equations.
//!
//! With `D = 1 - z^2 + z^(2r)`, `S = sum_{i <= lambda-2} z^i`,
//! `W = z^(2r) G^2 / (D - z^(2r) G^2)` and `P = sum_{g <= gamma} I_g`:
//!
//! ```text
//! G  = 1 / (1 - F)
//! F  = z + B0 + Bg
//! B0 = z^(2r) (G - S) / D
//! Bg = (1 - F) P(W)
//! ```
//!
//! `[z^n]F` only involves `[z^j]G` for `j < n`, so each pass fixes one new
//! coefficient and never revisits it. Every auxiliary series is kept as a
//! growing coefficient vector and extended by one term per pass.
//!
//! The solver also runs on a rescaled variable `z = s y`, which keeps the
//! coefficients of `G(s y)` of moderate size when `s` is the dominant
//! singularity.

use super::coeff::Coeff;
use super::shadow_poly::shadow_sum;
use crate::error::Result;
use crate::params::StructureParams;

/// Raw coefficient vectors of `G(sy), F(sy), B0(sy), Bg(sy)`.
#[derive(Debug, Clone)]
pub struct RawSolution<C> {
    pub g: Vec<C>,
    pub f: Vec<C>,
    pub b0: Vec<C>,
    pub bgamma: Vec<C>,
}

/// `sum_{j=lo}^{hi} a[j] b[n-j]`
fn conv<C: Coeff>(a: &[C], b: &[C], n: usize, lo: usize, hi: usize) -> C {
    let mut acc = C::zero();
    for j in lo..=hi.min(n) {
        if n - j < b.len() && j < a.len() {
            acc.fma_assign(&a[j], &b[n - j]);
        }
    }
    acc
}

pub fn solve_scaled<C: Coeff>(p: StructureParams, order: usize, scale: &C) -> Result<RawSolution<C>> {
    let r2 = 2 * p.stack() as usize;
    let shadows: Vec<C> = shadow_sum(p.gamma())?.into_iter().map(C::from_i64).collect();
    let deg = shadows.len().saturating_sub(1);

    let spow: Vec<C> = {
        let mut v = vec![C::one()];
        for k in 1..=order + r2 {
            let next = v[k - 1].times(scale);
            v.push(next);
        }
        v
    };
    let s_r2 = spow[r2].clone();

    // D(sy)
    let mut dpoly = vec![C::zero(); r2 + 1];
    dpoly[0] = C::one();
    dpoly[2].minus_assign(&spow[2]);
    dpoly[r2].plus_assign(&spow[r2]);
    let d_at = |n: usize| -> C { dpoly.get(n).cloned().unwrap_or_else(C::zero) };

    // U = z^(2r) / D, constant term of D is 1
    let mut dinv: Vec<C> = Vec::with_capacity(order);
    for n in 0..order {
        if n == 0 {
            dinv.push(C::one());
            continue;
        }
        let mut acc = C::zero();
        for k in 1..=n.min(r2) {
            acc.fma_assign(&dpoly[k], &dinv[n - k]);
        }
        dinv.push(acc.negated());
    }
    let u_at = |n: usize| -> C {
        if n < r2 {
            C::zero()
        } else {
            dinv[n - r2].times(&s_r2)
        }
    };
    let u: Vec<C> = (0..order).map(u_at).collect();

    let smax = p.arc_len() as usize; // S has terms 0..=lambda-2
    let mut g: Vec<C> = Vec::with_capacity(order);
    let mut g_minus_s: Vec<C> = Vec::with_capacity(order);
    let mut g2: Vec<C> = Vec::with_capacity(order);
    let mut e: Vec<C> = Vec::with_capacity(order);
    let mut v: Vec<C> = Vec::with_capacity(order);
    let mut h: Vec<C> = Vec::with_capacity(order);
    // wp[m] = W^m for m = 1..=deg
    let mut wp: Vec<Vec<C>> = vec![Vec::with_capacity(order); deg + 1];
    let mut pw: Vec<C> = Vec::with_capacity(order);
    let mut f: Vec<C> = Vec::with_capacity(order);
    let mut b0: Vec<C> = Vec::with_capacity(order);
    let mut bg: Vec<C> = Vec::with_capacity(order);

    for n in 0..order {
        if deg > 0 {
            let wn = if n >= r2 { h[n - r2].times(&s_r2) } else { C::zero() };
            wp[1].push(wn);
            for m in 2..=deg {
                let val = if n >= r2 * m {
                    let (lo, hi) = (r2, n - r2 * (m - 1));
                    conv(&wp[1], &wp[m - 1], n, lo, hi)
                } else {
                    C::zero()
                };
                wp[m].push(val);
            }
            let mut pn = C::zero();
            for m in 2..=deg {
                if !shadows[m].is_zero() {
                    pn.fma_assign(&shadows[m], &wp[m][n]);
                }
            }
            pw.push(pn);
            // (1 - F) P(W), P(W) has valuation >= 2 r2
            let mut bn = pw[n].clone();
            if n > 0 {
                let corr = conv(&f, &pw, n, 1, n - 1);
                bn.minus_assign(&corr);
            }
            bg.push(bn);
        } else {
            bg.push(C::zero());
        }

        let b0n = if n >= r2 { conv(&u, &g_minus_s, n, r2, n) } else { C::zero() };
        b0.push(b0n);

        let mut fn_ = b0[n].clone();
        fn_.plus_assign(&bg[n]);
        if n == 1 {
            fn_.plus_assign(scale);
        }
        f.push(fn_);

        let gn = if n == 0 { C::one() } else { conv(&f, &g, n, 1, n) };
        let mut gs = gn.clone();
        if n + 1 < smax {
            gs.minus_assign(&spow[n]);
        }
        g.push(gn);
        g_minus_s.push(gs);

        if deg > 0 {
            g2.push(conv(&g, &g, n, 0, n));
            let mut en = d_at(n);
            if n >= r2 {
                en.minus_assign(&g2[n - r2].times(&s_r2));
            }
            e.push(en);
            let vn = if n == 0 { C::one() } else { conv(&e, &v, n, 1, n).negated() };
            v.push(vn);
            h.push(conv(&g2, &v, n, 0, n));
        }
    }
    Ok(RawSolution { g, f, b0, bgamma: bg })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    fn params(g: u32, r: u32, l: u32) -> StructureParams {
        StructureParams::new(g, r, l).unwrap()
    }

    fn counts(p: StructureParams, n: usize) -> Vec<i64> {
        solve_scaled::<BigInt>(p, n, &BigInt::from(1)).unwrap().g.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn secondary_structures() {
        assert_eq!(counts(params(0, 1, 2), 9), vec![1, 1, 1, 2, 4, 8, 17, 37, 82]);
    }

    #[test]
    fn motzkin_numbers_at_lambda_one() {
        // 1-arcs allowed, no stack restriction: Motzkin numbers
        assert_eq!(counts(params(0, 1, 1), 9), vec![1, 1, 2, 4, 9, 21, 51, 127, 323]);
    }

    #[test]
    fn genus_one_small() {
        let c = counts(params(1, 1, 2), 6);
        assert_eq!(c[..5], [1, 1, 1, 2, 5]);
    }

    #[test]
    fn rational_run_is_integral_and_agrees() {
        for p in [params(1, 1, 2), params(2, 2, 1), params(2, 3, 4)] {
            let exact = solve_scaled::<BigInt>(p, 40, &BigInt::from(1)).unwrap();
            let rat = solve_scaled::<BigRational>(p, 40, &BigRational::from_integer(1.into())).unwrap();
            for (a, b) in exact.g.iter().zip(&rat.g) {
                assert!(b.is_integer());
                assert_eq!(&b.to_integer(), a);
            }
        }
    }

    #[test]
    fn scaled_run_matches_rescaled_exact() {
        let p = params(1, 2, 2);
        let s = 0.5f64;
        let exact = solve_scaled::<BigInt>(p, 30, &BigInt::from(1)).unwrap();
        let scaled = solve_scaled::<f64>(p, 30, &s).unwrap();
        for (n, (a, b)) in exact.g.iter().zip(&scaled.g).enumerate() {
            let want = a.to_f64().unwrap() * s.powi(n as i32);
            assert!((want - b).abs() <= 1e-12 * want.max(1.0), "n={n}: {want} vs {b}");
        }
    }
}
