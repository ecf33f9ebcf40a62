use givens::harness::trial_inputs;
use givens::oracle::{default_working_bits, reference_givens_with_bits, reference_p};
use givens::{reference_givens, ulp_distance, Dyadic, GivensFloat, OracleError, F16};

#[test]
fn pythagorean_triple() {
    let r = reference_givens(3.0f64, 4.0).unwrap();
    assert_eq!((r.c, r.s, r.r), (0.6, 0.8, 5.0));
    let r = reference_givens(F16::from_f64(3.0), F16::from_f64(4.0)).unwrap();
    assert_eq!(r.c.to_bits(), F16::from_f64(0.6).to_bits());
    assert_eq!(r.s.to_bits(), F16::from_f64(0.8).to_bits());
}

#[test]
fn axis_and_diagonal() {
    let r = reference_givens(1.0f64, 0.0).unwrap();
    assert_eq!((r.c, r.s, r.r), (1.0, 0.0, 1.0));
    let r = reference_givens(1.0f64, 1.0).unwrap();
    assert_eq!(r.c, std::f64::consts::FRAC_1_SQRT_2);
    assert_eq!(r.s, std::f64::consts::FRAC_1_SQRT_2);
    assert_eq!(r.r, std::f64::consts::SQRT_2);
}

#[test]
fn rejects_degenerate_inputs() {
    assert!(reference_givens(0.0f64, 0.0).is_err());
    assert!(reference_givens(f64::NAN, 1.0).is_err());
    assert!(reference_givens(1.0, f64::INFINITY).is_err());
    assert!(matches!(ulp_distance(f64::NAN, 1.0), Err(OracleError::Nan)));
}

#[test]
fn signs_follow_the_inputs() {
    for (f, g) in [(-3.0f64, 4.0), (3.0, -4.0), (-3.0, -4.0), (-0.0, 2.0), (2.0, -0.0)] {
        let r = reference_givens(f, g).unwrap();
        assert_eq!(r.c.is_sign_negative(), f.is_sign_negative(), "{f} {g}");
        assert_eq!(r.s.is_sign_negative(), g.is_sign_negative(), "{f} {g}");
    }
}

#[test]
fn reference_p_examples() {
    assert_eq!(reference_p(0.0f64).unwrap(), Dyadic::from_int(2));
    let p1 = reference_p(1.0f64).unwrap().to_float::<f64>();
    assert_eq!(p1, 1.0 + std::f64::consts::FRAC_1_SQRT_2);
    let p_half = reference_p(0.5f64).unwrap().to_float::<f64>();
    assert!((p_half - (1.0 + 1.0 / 1.25f64.sqrt())).abs() <= f64::EPSILON);
    assert!(reference_p(1.5f64).is_err());
    assert!(reference_p(-0.25f64).is_err());
}

#[test]
fn ulp_distance_examples() {
    let x = 0.3f64;
    assert_eq!(ulp_distance(x, x).unwrap(), 0);
    assert_eq!(ulp_distance(x.next_up(), x).unwrap(), 1);
    assert_eq!(ulp_distance(1.0, 1.0 + 2.0 * f64::EPSILON).unwrap(), 2);
    assert_eq!(ulp_distance(0.0f64, -0.0).unwrap(), 0);
    assert_eq!(ulp_distance(f64::from_bits(1), -f64::from_bits(1)).unwrap(), 2);
}

fn doubling_precision_changes_nothing<T: GivensFloat>(trials: u64) {
    let bits = default_working_bits::<T>();
    for i in 0..trials {
        let (f, g, _) = trial_inputs::<T>(2024, i);
        let a = reference_givens_with_bits(f, g, bits).unwrap();
        let b = reference_givens_with_bits(f, g, 2 * bits).unwrap();
        assert_eq!(
            (a.c.to_bits(), a.s.to_bits(), a.r.to_bits()),
            (b.c.to_bits(), b.s.to_bits(), b.r.to_bits()),
            "trial {i}: {f:?} {g:?}"
        );
    }
}

#[test]
fn working_precision_is_sufficient_f64() {
    assert!(default_working_bits::<f64>() >= 212);
    doubling_precision_changes_nothing::<f64>(100_000);
}

#[test]
fn working_precision_is_sufficient_f32() {
    doubling_precision_changes_nothing::<f32>(100_000);
}

#[test]
fn working_precision_is_sufficient_f16() {
    doubling_precision_changes_nothing::<F16>(100_000);
}
