use super::*;
use crate::params::StructureParams;
use crate::series::SeriesBundle;

fn p(g: u32, r: u32, l: u32) -> StructureParams {
    StructureParams::new(g, r, l).unwrap()
}

fn data(g: u32, r: u32, l: u32) -> std::sync::Arc<SingularityData> {
    singularity_data(p(g, r, l), &SingularityConfig::default()).unwrap()
}

fn close(x: &Real, want: f64, tol: f64) -> bool {
    (x.to_f64() - want).abs() <= tol
}

#[test]
fn secondary_structures_closed_form() {
    let d = data(0, 1, 2);
    let bits = d.bits();
    let five = Real::from_i64(5, bits).sqrt();
    let rho = (Real::from_i64(3, bits) - &five) / Real::from_i64(2, bits);
    let tol = Real::parse("1e-50", bits).unwrap();
    assert!((&d.rho - &rho).abs() < tol);
    assert!((&d.tau - d.rho.recip()).abs() < tol);
    assert!(d.rho.to_decimal(8) == "0.38196601");
    assert!(close(&d.alpha, 1.687, 1e-3));
}

#[test]
fn motzkin_case() {
    let d = data(0, 1, 1);
    assert!(close(&d.rho, 1.0 / 3.0, 1e-12));
    assert!(close(&d.tau, 3.0, 1e-12));
    assert!(close(&d.alpha, 1.954, 1e-3));
}

#[test]
fn sample_alpha_values() {
    assert!(close(&data(1, 2, 2).alpha, 1.196, 1e-3));
    assert!(close(&data(2, 2, 2).alpha, 0.896, 1e-3));
}

#[test]
fn structural_invariants() {
    let bits = bits_for_digits(DEFAULT_DIGITS);
    let one = Real::one(bits);
    let tol = Real::parse("1e-50", bits).unwrap();
    for g in 0..=2 {
        for pp in StructureParams::all_with_gamma(g) {
            let d = singularity_data(pp, &SingularityConfig::default()).unwrap();
            assert!(d.rho.is_positive() && d.rho < one, "{pp}");
            assert!(d.tau > one && d.delta.is_negative() && d.c.is_positive(), "{pp}");
            assert!(d.alpha.is_positive(), "{pp}");
            if g == 0 {
                // every nontrivial block is a rainbow
                assert!((&d.eta - &one).abs() < tol, "{pp}");
            } else {
                assert!(d.eta.is_positive() && d.eta < one, "{pp}");
            }
            assert!((&d.tau - (&one - &d.tau_prime).recip()).abs() < tol, "{pp}");
            assert!(d.residual_q < tol && d.residual_qx < tol, "{pp}");
        }
    }
}

#[test]
fn beta_over_alpha() {
    let d = data(1, 1, 2);
    let bits = d.bits();
    let want = Real::one(bits) - Real::pi(bits) / Real::from_i64(4, bits);
    assert!((&d.beta / &d.alpha - want).abs() < Real::parse("1e-55", bits).unwrap());
}

#[test]
fn eta_independent_of_stack_and_arc_length() {
    for g in 1..=2 {
        let etas: Vec<f64> = [(1, 1), (1, 2), (2, 2), (2, 3), (3, 4)]
            .iter()
            .map(|&(r, l)| data(g, r, l).eta.to_f64())
            .collect();
        for e in &etas {
            assert!((e - etas[0]).abs() < 1e-8, "{etas:?}");
        }
    }
    assert!(close(&data(1, 2, 2).eta, 0.227, 1e-3));
}

#[test]
fn asymptotics_approach_exact_counts() {
    let d = data(1, 2, 2);
    let b = SeriesBundle::solve(p(1, 2, 2), 401).unwrap();
    let err = |n: usize| {
        let exact = Real::from_bigint(&b.g().coeff(n), d.bits());
        (exact / coefficient_asymptotics(&d, n as u64) - Real::one(d.bits())).to_f64().abs()
    };
    let (e1, e2, e4) = (err(100), err(200), err(400));
    assert!(e4 < 0.02 && e4 < e2 && e2 < e1, "{e1} {e2} {e4}");
    assert!(coefficient_asymptotics(&d, 1).is_positive());
    assert!(block_coefficient_asymptotics(&d, 50) < coefficient_asymptotics(&d, 50));
}

#[test]
fn bad_seed_is_reported() {
    let pp = p(1, 1, 2);
    let q = build_q(pp).unwrap();
    let hint = SeriesBundle::solve(pp, 100).unwrap();
    let cfg = SingularityConfig { ratio_tolerance: 1e-12, ..SingularityConfig::default() };
    assert!(matches!(find_dominant_singularity(&q, &hint, &cfg), Err(crate::Error::Singularity(_))));
    let short = SeriesBundle::solve(pp, 10).unwrap();
    assert!(find_dominant_singularity(&q, &short, &SingularityConfig::default()).is_err());
}
