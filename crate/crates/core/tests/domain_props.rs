use proptest::prelude::*;
use reinhardt::catalog;
use reinhardt::domain::{
    d_abs, d_log, is_interior, log_membership, membership, moduli_margin, rescale, restrict_to_axes, Classification,
    ModuliPoint,
};

fn unit_direction() -> impl Strategy<Value = [f64; 2]> {
    (0.0..std::f64::consts::TAU).prop_map(|t| [t.cos(), t.sin()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_log_ball_lies_in_log_image(x in (-3.0f64..-0.01, -3.0f64..-0.01), u in unit_direction(), s in 0.0f64..0.999) {
        for spec in [catalog::bidisc(), catalog::d_beta(), catalog::r_domain()] {
            let x = [x.0, x.1];
            if log_membership(&spec, &x) >= 0.0 {
                continue;
            }
            let d = d_log(&spec, &x).unwrap();
            prop_assert!(d.converged);
            let y = [x[0] + s * d.distance * u[0], x[1] + s * d.distance * u[1]];
            prop_assert!(log_membership(&spec, &y) < 1e-9, "{} at {:?}", spec.name(), y);
            prop_assert!(log_membership(&spec, &d.witness).abs() <= 1e-7);
        }
    }

    #[test]
    fn restrict_matches_slice_membership(r in 0.0f64..1.5) {
        let spec = catalog::bidisc();
        let slice = restrict_to_axes(&spec, &[0]).unwrap();
        prop_assert_eq!(is_interior(&slice, &[r]), is_interior(&spec, &[r, 0.0]));
        let dbeta = catalog::d_beta();
        let slice = restrict_to_axes(&dbeta, &[1]).unwrap();
        prop_assert_eq!(is_interior(&slice, &[r]), is_interior(&dbeta, &[0.0, r]));
    }

    #[test]
    fn rescale_round_trip(r in (0.01f64..2.0, 0.01f64..2.0), a in (0.2f64..5.0, 0.2f64..5.0)) {
        let spec = catalog::r_domain();
        let (r, a) = ([r.0, r.1], [a.0, a.1]);
        prop_assume!(moduli_margin(&spec, &r).abs() > 1e-9);
        let scaled = rescale(&spec, &a).unwrap();
        let image = [a[0] * r[0], a[1] * r[1]];
        prop_assert_eq!(is_interior(&scaled, &image), is_interior(&spec, &r));
        let back = rescale(&scaled, &[1.0 / a[0], 1.0 / a[1]]).unwrap();
        for (c, d) in back.constraints().iter().zip(spec.constraints()) {
            for (t, u) in c.terms.iter().zip(&d.terms) {
                prop_assert!((t.b - u.b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn d_abs_is_reproducible_and_inside(r in (0.05f64..0.95, 0.05f64..0.95)) {
        let spec = catalog::d_beta();
        let r = vec![r.0, r.1];
        prop_assume!(is_interior(&spec, &r));
        let p = ModuliPoint::new(r.clone()).unwrap();
        let first = d_abs(&spec, &p).unwrap();
        let second = d_abs(&spec, &p).unwrap();
        prop_assert_eq!(&first, &second);
        prop_assert!(first.distance > 0.0);
        let gap = ((first.witness[0] - r[0]).powi(2) + (first.witness[1] - r[1]).powi(2)).sqrt();
        prop_assert!((gap - first.distance).abs() <= 1e-9);
        prop_assert_eq!(membership(&spec, &first.witness, 1e-6), Classification::Boundary);
    }
}
