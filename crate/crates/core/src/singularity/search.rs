//! Newton search for the branch point of `Q(z, X) = 0` and the constants of
//! the square-root singularity there.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use super::bipoly::{build_q, BivariatePolynomial};
use super::real::{bits_for_digits, Real};
use crate::error::{Error, Result};
use crate::params::StructureParams;
use crate::series::SeriesBundle;

pub const DEFAULT_DIGITS: usize = 60;
pub const DEFAULT_HINT_ORDER: usize = 200;
pub const DEFAULT_RATIO_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularityConfig {
    /// Working precision in decimal digits.
    pub digits: usize,
    /// Relative agreement required between `rho` and the coefficient-ratio
    /// estimate.
    pub ratio_tolerance: f64,
    /// Order of the series used for seeding and certification.
    pub hint_order: usize,
    pub max_iterations: usize,
}

impl Default for SingularityConfig {
    fn default() -> Self {
        Self {
            digits: DEFAULT_DIGITS,
            ratio_tolerance: DEFAULT_RATIO_TOLERANCE,
            hint_order: DEFAULT_HINT_ORDER,
            max_iterations: 200,
        }
    }
}

impl SingularityConfig {
    pub fn with_digits(digits: usize) -> Self {
        Self { digits, ..Self::default() }
    }

    fn bits(&self) -> usize {
        bits_for_digits(self.digits)
    }

    /// `10^-(digits - 10)`
    fn residual_bound(&self) -> Real {
        let e = self.digits.saturating_sub(10);
        Real::parse(&format!("1e-{e}"), self.bits()).expect("literal")
    }
}

/// A solution of `Q = Q_X = 0` with its certificate.
#[derive(Debug, Clone)]
pub struct SingularPoint {
    pub rho: Real,
    pub tau: Real,
    pub residual_q: Real,
    pub residual_qx: Real,
    /// `g(n)/g(n+1) (n/(n+1))^(3/2)` at the top of the hint series.
    pub ratio_estimate: f64,
    pub iterations: usize,
}

/// Constants of the dominant singularity of `G`.
#[derive(Debug, Clone)]
pub struct SingularityData {
    pub params: StructureParams,
    pub rho: Real,
    pub tau: Real,
    pub tau_prime: Real,
    pub delta: Real,
    pub delta_prime: Real,
    pub c: Real,
    pub c_prime: Real,
    pub eta: Real,
    pub alpha: Real,
    pub beta: Real,
    pub digits: usize,
    pub residual_q: Real,
    pub residual_qx: Real,
    pub ratio_estimate: f64,
}

impl SingularityData {
    pub fn bits(&self) -> usize {
        bits_for_digits(self.digits)
    }
}

/// A polynomial with coefficients converted once to a fixed precision.
struct Prepared {
    rows: Vec<Vec<Real>>,
}

impl Prepared {
    fn new(q: &BivariatePolynomial, bits: usize) -> Self {
        let mut rows = vec![vec![Real::zero(bits); q.degree_z() + 1]; q.degree_x() + 1];
        for (a, b, c) in q.terms() {
            rows[b][a] = Real::from_bigint(c, bits);
        }
        Self { rows }
    }

    fn eval(&self, z: &Real, x: &Real) -> Real {
        let mut acc = Real::zero(z.precision());
        for row in self.rows.iter().rev() {
            let mut inner = Real::zero(z.precision());
            for c in row.iter().rev() {
                inner = &inner * z + c;
            }
            acc = &acc * x + inner;
        }
        acc
    }
}

struct Jets {
    q: Prepared,
    qz: Prepared,
    qx: Prepared,
    qxz: Prepared,
    qxx: Prepared,
}

impl Jets {
    fn new(q: &BivariatePolynomial, bits: usize) -> Self {
        let qx = q.derivative_x();
        Self {
            q: Prepared::new(q, bits),
            qz: Prepared::new(&q.derivative_z(), bits),
            qxz: Prepared::new(&qx.derivative_z(), bits),
            qxx: Prepared::new(&qx.derivative_x(), bits),
            qx: Prepared::new(&qx, bits),
        }
    }
}

fn ratio_estimate(bundle: &SeriesBundle, bits: usize) -> Result<(Real, usize)> {
    let n = bundle.order().checked_sub(2).filter(|&n| n >= 20).ok_or(Error::InsufficientOrder {
        have: bundle.order(),
        need: 22,
    })?;
    let g = bundle.g();
    if g.coeff(n + 1).is_zero() {
        return Err(Error::Singularity("vanishing coefficients in the hint series".into()));
    }
    let nn = Real::from_i64(n as i64, bits);
    let n1 = Real::from_i64(n as i64 + 1, bits);
    let shrink = &nn / &n1;
    let est = Real::from_bigint(&g.coeff(n), bits) / Real::from_bigint(&g.coeff(n + 1), bits) * &shrink * shrink.sqrt();
    Ok((est, n))
}

/// `sum_{n<N} g(n) z^n`
fn truncated_value(bundle: &SeriesBundle, z: &Real) -> Real {
    let mut acc = Real::zero(z.precision());
    for c in bundle.g().coeffs().iter().rev() {
        acc = &acc * z + Real::from_bigint(c, z.precision());
    }
    acc
}

fn abs_f64(x: &Real) -> f64 {
    x.to_f64().abs()
}

/// Locates `(rho, tau)` with `Q = Q_X = 0` by two-dimensional Newton
/// iteration seeded from the series `hint`, and certifies it against the
/// coefficient-ratio estimate of the radius of convergence.
pub fn find_dominant_singularity(
    q: &BivariatePolynomial,
    hint: &SeriesBundle,
    cfg: &SingularityConfig,
) -> Result<SingularPoint> {
    let bits = cfg.bits();
    let jets = Jets::new(q, bits);
    let (rho0, n) = ratio_estimate(hint, bits)?;

    // tail of sum g(n) rho^n is about 2 c N^(-1/2) with c = g(N) N^(3/2) rho^N
    let big_n = Real::from_i64(hint.order() as i64, bits);
    let c_hat = Real::from_bigint(&hint.g().coeff(n), bits) * Real::from_i64(n as i64, bits).powi(3).sqrt() * rho0.powi(n);
    let mut x = truncated_value(hint, &rho0) + Real::from_i64(2, bits) * c_hat / big_n.sqrt();
    let mut z = rho0.clone();

    let tiny = Real::parse(&format!("1e-{}", cfg.digits + 8), bits).expect("literal");
    for _ in 0..cfg.max_iterations / 2 {
        let step = jets.qx.eval(&z, &x) / jets.qxx.eval(&z, &x);
        x = &x - &step;
        if !x.is_finite() {
            return Err(Error::Singularity("seed iteration diverged".into()));
        }
        if step.abs() < tiny {
            break;
        }
    }

    let mut iterations = 0;
    let mut settled = 0;
    while settled < 2 {
        iterations += 1;
        if iterations > cfg.max_iterations {
            return Err(Error::Singularity(format!(
                "Newton iteration did not converge ({}): |Q| = {:e}, |Q_X| = {:e}",
                hint.params(),
                abs_f64(&jets.q.eval(&z, &x)),
                abs_f64(&jets.qx.eval(&z, &x)),
            )));
        }
        let f1 = jets.q.eval(&z, &x);
        let f2 = jets.qx.eval(&z, &x);
        let (a, b) = (jets.qz.eval(&z, &x), f2.clone());
        let (c, d) = (jets.qxz.eval(&z, &x), jets.qxx.eval(&z, &x));
        let det = &a * &d - &b * &c;
        if det.is_zero() || !det.is_finite() {
            return Err(Error::Singularity("singular Jacobian in Newton iteration".into()));
        }
        let dz = (&b * &f2 - &d * &f1) / &det;
        let dx = (&c * &f1 - &a * &f2) / &det;
        z = &z + &dz;
        x = &x + &dx;
        if !z.is_finite() || !x.is_finite() {
            return Err(Error::Singularity("Newton iteration diverged".into()));
        }
        if dz.abs() + dx.abs() < tiny {
            settled += 1;
        }
    }

    let residual_q = jets.q.eval(&z, &x).abs();
    let residual_qx = jets.qx.eval(&z, &x).abs();
    let bound = cfg.residual_bound();
    let describe = |why: &str| {
        Error::Singularity(format!(
            "{why} ({}): rho = {}, tau = {}, |Q| = {:e}, |Q_X| = {:e}",
            hint.params(),
            z.to_decimal(12),
            x.to_decimal(12),
            abs_f64(&residual_q),
            abs_f64(&residual_qx)
        ))
    };
    if residual_q > bound || residual_qx > bound {
        return Err(describe("residuals above tolerance"));
    }
    let one = Real::one(bits);
    if !z.is_positive() || z >= one || x <= one {
        return Err(describe("branch point outside 0 < rho < 1, tau > 1"));
    }
    let est = rho0.to_f64();
    let rel = (z.to_f64() - est).abs() / est;
    if rel > cfg.ratio_tolerance {
        return Err(describe(&format!("rho disagrees with the coefficient ratio {est:.8} (relative {rel:.2e})")));
    }
    // positive coefficients: the partial sum at rho stays below tau
    if truncated_value(hint, &z) >= x {
        return Err(describe("partial sum of G at rho exceeds tau"));
    }
    Ok(SingularPoint { rho: z, tau: x, residual_q, residual_qx, ratio_estimate: est, iterations })
}

/// Square-root singular constants at a certified branch point.
pub fn singular_constants(
    q: &BivariatePolynomial,
    point: &SingularPoint,
    params: StructureParams,
    cfg: &SingularityConfig,
) -> Result<SingularityData> {
    let bits = cfg.bits();
    let (rho, tau) = (&point.rho, &point.tau);
    let qz = Prepared::new(&q.derivative_z(), bits).eval(rho, tau);
    let qxx = Prepared::new(&q.derivative_x().derivative_x(), bits).eval(rho, tau);
    if qxx.abs() <= cfg.residual_bound() {
        return Err(Error::Schema(format!("Q_XX vanishes at the branch point ({params})")));
    }
    let ratio = Real::from_i64(2, bits) * &qz / &qxx;
    if !ratio.is_positive() {
        return Err(Error::Schema(format!(
            "2 Q_z / Q_XX = {} is not positive ({params})",
            ratio.to_decimal(12)
        )));
    }
    let one = Real::one(bits);
    let delta = -ratio.sqrt();
    // Gamma(-1/2) = -2 sqrt(pi)
    let gamma_half = -(Real::from_i64(2, bits) * Real::pi(bits).sqrt());
    let c = &delta * rho.sqrt() / &gamma_half;
    let tau2 = tau * tau;
    let alpha = Real::from_i64(4, bits) * &c / tau;
    let beta = (&one - Real::pi(bits) / Real::from_i64(4, bits)) * &alpha;
    let r2 = 2 * params.stack() as usize;
    let rho_r2 = rho.powi(r2);
    let eta = &rho_r2 * &tau2 / (&one - rho * rho + &rho_r2);
    Ok(SingularityData {
        params,
        rho: rho.clone(),
        tau: tau.clone(),
        tau_prime: &one - tau.recip(),
        delta_prime: &delta / &tau2,
        c_prime: &c / &tau2,
        delta,
        c,
        eta,
        alpha,
        beta,
        digits: cfg.digits,
        residual_q: point.residual_q.clone(),
        residual_qx: point.residual_qx.clone(),
        ratio_estimate: point.ratio_estimate,
    })
}

type Cache = Mutex<HashMap<(StructureParams, usize, usize), Arc<SingularityData>>>;

/// Builds and checks `Q`, locates the singularity and returns its constants.
/// Results are memoised per parameter triple and configuration.
pub fn singularity_data(p: StructureParams, cfg: &SingularityConfig) -> Result<Arc<SingularityData>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let key = (p, cfg.digits, cfg.hint_order);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().expect("cache lock").get(&key) {
        return Ok(Arc::clone(d));
    }
    let q = build_q(p)?;
    let hint = SeriesBundle::solve(p, cfg.hint_order)?;
    let point = find_dominant_singularity(&q, &hint, cfg)?;
    let data = Arc::new(singular_constants(&q, &point, p, cfg)?);
    cache.lock().expect("cache lock").insert(key, Arc::clone(&data));
    Ok(data)
}

/// `c n^(-3/2) rho^(-n)`, the leading term of `[z^n]G`.
pub fn coefficient_asymptotics(data: &SingularityData, n: u64) -> Real {
    leading_term(&data.c, data, n)
}

/// `c' n^(-3/2) rho^(-n)`, the leading term of `[z^n]F`.
pub fn block_coefficient_asymptotics(data: &SingularityData, n: u64) -> Real {
    leading_term(&data.c_prime, data, n)
}

fn leading_term(c: &Real, data: &SingularityData, n: u64) -> Real {
    let bits = data.bits();
    let nn = Real::from_i64(n as i64, bits);
    c / (&nn * nn.sqrt()) / data.rho.powi(n as usize)
}
