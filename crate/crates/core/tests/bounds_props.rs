use proptest::prelude::*;
use reinhardt::bounds::{
    interval_upper, monomial_lower, parallelepiped_upper, raw_inset, torus_correction,
};
use reinhardt::catalog;
use reinhardt::domain::{d_abs, rescale, ModuliPoint};

fn pair() -> impl Strategy<Value = ([f64; 2], [f64; 2])> {
    ((0.05f64..0.95, 0.05f64..0.95), (0.05f64..0.95, 0.05f64..0.95)).prop_map(|(a, b)| ([a.0, a.1], [b.0, b.1]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lower_never_exceeds_upper((z0, z) in pair()) {
        let spec = catalog::bidisc();
        let lower = monomial_lower(&spec, &[1, 0], 0.0, &z0, &z).unwrap().value
            .max(monomial_lower(&spec, &[0, 1], 0.0, &z0, &z).unwrap().value);
        let upper = interval_upper(&spec, &z0, &z).unwrap().value;
        prop_assert!(lower <= upper + 1e-9);
    }

    #[test]
    fn interval_symmetries((z0, z) in pair(), a in (0.3f64..3.0, 0.3f64..3.0)) {
        let spec = catalog::bidisc();
        let v = interval_upper(&spec, &z0, &z).unwrap().value;
        prop_assert!((interval_upper(&spec, &z, &z0).unwrap().value - v).abs() <= 1e-9 * (1.0 + v));
        // the bidisc is symmetric in its coordinates
        let swap = |p: [f64; 2]| [p[1], p[0]];
        prop_assert!((interval_upper(&spec, &swap(z0), &swap(z)).unwrap().value - v).abs() <= 1e-9 * (1.0 + v));
        // rescaling is a biholomorphism onto the image
        let scaled = rescale(&spec, &[a.0, a.1]).unwrap();
        let s = |p: [f64; 2]| [a.0 * p[0], a.1 * p[1]];
        prop_assert!((interval_upper(&scaled, &s(z0), &s(z)).unwrap().value - v).abs() <= 1e-8 * (1.0 + v));
    }

    #[test]
    fn parallelepiped_inset_is_clamped(z in (0.1f64..0.9, 0.1f64..0.9)) {
        let spec = rescale(&catalog::d_beta(), &[10.0, 10.0]).unwrap();
        let z = [10.0 * z.0 * 0.25, 10.0 * z.1 * 0.25];
        prop_assume!(z.iter().all(|v| (v - 1.0).abs() > 1e-3));
        let witness = d_abs(&spec, &ModuliPoint::new(z.to_vec()).unwrap()).unwrap().witness;
        let b = parallelepiped_upper(&spec, &witness, &z).unwrap();
        let tilde = b.tilde_d.unwrap();
        prop_assert!(tilde > 0.0 && tilde <= raw_inset(&spec, &witness, &z).unwrap());
        prop_assert!(b.certification.iter().all(|c| c.violations == 0));
    }

    #[test]
    fn torus_correction_grows_with_angle(t in 0.01f64..3.0, dt in 0.0f64..0.1) {
        let spec = catalog::bidisc();
        let z0 = [0.5, 0.4];
        let small = torus_correction(&spec, &z0, &[t, 0.0]).unwrap().value;
        let large = torus_correction(&spec, &z0, &[(t + dt).min(std::f64::consts::PI), 0.0]).unwrap().value;
        prop_assert!(large >= small - 1e-12);
    }
}

#[test]
fn torus_correction_vanishes_at_zero_angle() {
    assert_eq!(torus_correction(&catalog::bidisc(), &[0.5, 0.4], &[0.0, 0.0]).unwrap().value, 0.0);
}
