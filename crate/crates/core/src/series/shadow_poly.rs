//! Generating polynomials of irreducible shadows by arc count.

use crate::error::{Error, Result};

/// `I_g(z) = sum_m i_g(m) z^m`, where `i_g(m)` counts irreducible shadows of
/// genus `g` with `m` arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowPolynomial {
    genus: u32,
    /// indexed by arc count
    coeffs: Vec<i64>,
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl ShadowPolynomial {
    /// Available for genus 1 and 2.
    pub fn new(genus: u32) -> Result<Self> {
        // z^(2g) (1+z)^(2g) times a genus-specific factor
        let factor: &[i64] = match genus {
            1 => &[1],
            2 => &[17, 92, 96],
            _ => {
                return Err(Error::InvalidParams(format!(
                    "irreducible shadow polynomial for genus {genus} is not available"
                )))
            }
        };
        let mut coeffs = vec![0; 2 * genus as usize];
        coeffs.push(1);
        for _ in 0..2 * genus {
            coeffs = poly_mul(&coeffs, &[1, 1]);
        }
        let coeffs = poly_mul(&coeffs, factor);
        Ok(Self { genus, coeffs })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Number of shadows with `m` arcs.
    pub fn count(&self, m: usize) -> i64 {
        self.coeffs.get(m).copied().unwrap_or(0)
    }

    /// `I_g(1)`, the total number of irreducible shadows of genus g.
    pub fn total(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

/// `sum_{1 <= g <= gamma} I_g(z)` as a coefficient vector (empty for
/// gamma = 0).
pub fn shadow_sum(gamma: u32) -> Result<Vec<i64>> {
    let mut out: Vec<i64> = Vec::new();
    for g in 1..=gamma {
        let p = ShadowPolynomial::new(g)?;
        if out.len() < p.coeffs.len() {
            out.resize(p.coeffs.len(), 0);
        }
        for (o, c) in out.iter_mut().zip(&p.coeffs) {
            *o += c;
        }
    }
    Ok(out)
}
