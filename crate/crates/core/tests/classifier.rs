use proptest::prelude::*;
use sasakian_curves::bitension::system_residuals;
use sasakian_curves::classifier::{
    admissible_constant_angle, admissible_par, admissible_perp, classify_c1, mode_data, par_circle_data, par_kappa2,
    AngleParams, CurveKind, Sign, PERP_CIRCLE_NOTE,
};

#[test]
fn c_one_circle() {
    let r = classify_c1(1.0, None);
    assert_eq!(r.kind, CurveKind::Circle);
    assert!(r.is_admissible());
    assert!(!classify_c1(0.5, None).is_admissible());
}

#[test]
fn par_circle_at_minus_three() {
    let (cos2, k1sq) = par_circle_data(-3.0);
    assert!((cos2 - (1.0 + 5f64.sqrt()) / 4.0).abs() < 1e-14);
    assert!((k1sq - (5f64.sqrt() - 2.0)).abs() < 1e-14);
    let r = admissible_par(-3.0, &AngleParams::from_cos2(cos2).unwrap()).unwrap();
    assert!(r.solutions.iter().any(|s| s.kind == CurveKind::Circle));
}

#[test]
fn perp_flags_the_unrealized_circle() {
    let r = admissible_perp(-3.0, &AngleParams::with_beta0(std::f64::consts::PI / 3.0)).unwrap();
    assert!((r.kappa1.unwrap() - 0.5).abs() < 1e-12);
    assert!(r.notes.iter().any(|n| n == PERP_CIRCLE_NOTE));
}

#[test]
fn angles_on_the_excluded_set_are_rejected() {
    assert!(admissible_par(-3.0, &AngleParams::with_beta0(std::f64::consts::FRAC_PI_2)).is_err());
    assert!(admissible_par(1.0, &AngleParams::with_beta0(0.3)).is_err());
}

#[test]
fn constant_angle_without_beta2_uses_cases_a_and_b() {
    let r = admissible_constant_angle(-3.0, 0.4, None).unwrap();
    assert!(!r.notes.is_empty() || !r.solutions.is_empty());
}

proptest! {
    /// Each closed-form root satisfies the biharmonic system with the
    /// structure scalars of its mode.
    #[test]
    fn par_roots_satisfy_the_system(c in -5.0f64..5.0, b0 in 0.05f64..3.09) {
        prop_assume!((c - 1.0).abs() > 1e-3 && (b0 - std::f64::consts::FRAC_PI_2).abs() > 1e-3);
        let r = admissible_par(c, &AngleParams::with_beta0(b0)).unwrap();
        let (s, co) = b0.sin_cos();
        for sol in &r.solutions {
            let (Some(k1), Some(sign)) = (sol.kappa1, sol.sign) else { continue };
            let k2 = par_kappa2(k1, b0, sign);
            prop_assert!((k1 * k1 + k2 * k2 - (c - (c - 1.0) * co * co)).abs() < 1e-9);
            let (fd, ss) = mode_data(k1, k2, co, sign.value() * s);
            prop_assert!(system_residuals(&fd, &ss, c).unwrap().max_abs() < 1e-9);
        }
    }

    #[test]
    fn perp_kappa_follows_the_right_side(c in -5.0f64..5.0, b0 in 0.05f64..3.09) {
        prop_assume!((c - 1.0).abs() > 1e-3 && (b0 - std::f64::consts::FRAC_PI_2).abs() > 1e-3);
        let r = admissible_perp(c, &AngleParams::with_beta0(b0)).unwrap();
        let rhs = (c + 3.0) / 4.0 - (c - 1.0) / 4.0 * b0.cos().powi(2);
        match r.kappa1 {
            Some(k) => prop_assert!((k * k - rhs).abs() < 1e-12),
            None => prop_assert!(rhs <= 1e-12),
        }
    }

    #[test]
    fn sign_filter_keeps_one_branch(b0 in 0.05f64..0.4) {
        for sign in Sign::BOTH {
            let r = admissible_par(-3.0, &AngleParams::with_beta0(b0).signed(sign)).unwrap();
            prop_assert!(r.solutions.iter().all(|s| s.sign == Some(sign) || s.sign.is_none()));
        }
    }
}
