use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use reinhardt::geometry::{
    annulus_distance, deck_min_adaptive, disc_distance, poincare_distance, punctured_disc_distance,
    punctured_disc_lift_distance, strip_distance,
};

fn disc_point(max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max, -PI..PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn annulus_point(r_in: f64, r_out: f64) -> impl Strategy<Value = Complex64> {
    (0.01f64..0.99, -PI..PI).prop_map(move |(s, t)| Complex64::from_polar(r_in * (r_out / r_in).powf(s), t))
}

proptest! {
    #[test]
    fn poincare_metric_axioms(a in disc_point(0.99), b in disc_point(0.99), c in disc_point(0.99)) {
        let ab = poincare_distance(a, b).unwrap();
        prop_assert!(ab >= 0.0);
        prop_assert!((ab - poincare_distance(b, a).unwrap()).abs() <= 1e-12 * (1.0 + ab));
        prop_assert!(poincare_distance(a, c).unwrap() <= ab + poincare_distance(b, c).unwrap() + 1e-12);
        prop_assert_eq!(poincare_distance(a, a).unwrap(), 0.0);
    }

    #[test]
    fn poincare_mobius_invariance(a in disc_point(0.99), b in disc_point(0.99), p in disc_point(0.9), t in -PI..PI) {
        let phi = |z: Complex64| Complex64::from_polar(1.0, t) * (z - p) / (Complex64::new(1.0, 0.0) - p.conj() * z);
        let before = poincare_distance(a, b).unwrap();
        let after = poincare_distance(phi(a), phi(b)).unwrap();
        prop_assert!((before - after).abs() <= 1e-10 * (1.0 + before));
    }

    #[test]
    fn strip_reflection_and_translation(
        lo in -3.0f64..1.0, w in 0.3f64..3.0, sa in 0.01f64..0.99, sb in 0.01f64..0.99,
        ya in -5.0f64..5.0, yb in -5.0f64..5.0, shift in -4.0f64..4.0,
    ) {
        let hi = lo + w;
        let a = Complex64::new(lo + sa * w, ya);
        let b = Complex64::new(lo + sb * w, yb);
        let d = strip_distance(a, b, lo, hi).unwrap();
        // x ↦ lo + hi - x is an isometry, as is a vertical shift
        let mirror = |z: Complex64| Complex64::new(lo + hi - z.re, z.im);
        prop_assert!((strip_distance(mirror(a), mirror(b), lo, hi).unwrap() - d).abs() <= 1e-10 * (1.0 + d));
        let up = Complex64::new(0.0, shift);
        prop_assert!((strip_distance(a + up, b + up, lo, hi).unwrap() - d).abs() <= 1e-10 * (1.0 + d));
    }

    #[test]
    fn inclusion_monotonicity(a in annulus_point(0.2, 0.9), b in annulus_point(0.2, 0.9), grow in 1.0f64..3.0) {
        // annulus ⊂ punctured disc ⊂ disc ⊂ larger disc
        let zero = Complex64::new(0.0, 0.0);
        let ann = annulus_distance(a, b, 0.2, 1.0).unwrap();
        let punct = punctured_disc_distance(a, b, 1.0).unwrap();
        let disc = disc_distance(a, b, zero, 1.0).unwrap();
        let big = disc_distance(a, b, zero, grow).unwrap();
        prop_assert!(ann >= punct - 1e-12);
        prop_assert!(punct >= disc - 1e-12);
        prop_assert!(disc >= big - 1e-12);
    }

    #[test]
    fn deck_objective_is_unimodal(a in disc_point(0.95), b in disc_point(0.95)) {
        prop_assume!(a.norm() > 1e-3 && b.norm() > 1e-3);
        let f = |m| punctured_disc_lift_distance(a, b, 1.0, m).unwrap();
        let (m_star, v) = deck_min_adaptive(|m| Ok(f(m))).unwrap();
        prop_assert_eq!(v, f(m_star));
        for m in m_star..m_star + 6 {
            prop_assert!(f(m + 1) >= f(m) - 1e-12);
        }
        for m in (m_star - 6..m_star).rev() {
            prop_assert!(f(m) >= f(m + 1) - 1e-12);
        }
    }
}
