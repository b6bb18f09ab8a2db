mod support;

use std::f64::consts::PI;

use invsq2d::dispersion::{self, DispParams};
use invsq2d::model::{sigma_closed_form, Angle, Coupling};
use invsq2d::partial_waves::{self, phase_shift, PwParams};
use invsq2d::validation::{run_full_suite, SuiteConfig};
use proptest::prelude::*;
use support::{abel_amplitude, bessel_series};

fn cpl(x: f64) -> Coupling {
    Coupling::new(x).unwrap()
}

#[test]
fn tail_orders_converge_to_brute_force() {
    let x = 1.0;
    for theta in [PI / 2.0, 2.0, 0.7] {
        let reference = abel_amplitude(x, theta, 10_000_000, 1.0 - 1e-5);
        let errors: Vec<f64> = (0..=3)
            .map(|order| {
                let p = PwParams {
                    l_max: 4,
                    tail_order: order,
                };
                let f = partial_waves::reduced_amplitude(cpl(x), Angle::new(theta).unwrap(), &p)
                    .unwrap();
                (f.value.0 - reference).norm()
            })
            .collect();
        for w in errors.windows(2) {
            assert!(w[1] < w[0], "theta = {theta}: {errors:?}");
        }
        let full = partial_waves::reduced_amplitude(
            cpl(x),
            Angle::new(theta).unwrap(),
            &PwParams::for_coupling(cpl(x)),
        )
        .unwrap();
        assert!((full.value.0 - reference).norm() < 1e-4, "theta = {theta}");
    }
}

#[test]
fn imaginary_part_matches_bessel_oracle() {
    for x in [0.5, 1.0, 2.0, 4.0] {
        for i in 0..25 {
            let theta = 0.05 + (PI - 0.06) * i as f64 / 24.0;
            let u = x * (theta * (2.0 * PI - theta)).sqrt();
            let expect = PI * x * x * bessel_series(1, u) / u;
            let f = partial_waves::reduced_amplitude(
                cpl(x),
                Angle::new(theta).unwrap(),
                &PwParams::for_coupling(cpl(x)),
            )
            .unwrap();
            assert!(
                (f.value.im() - expect).abs() < 1e-6,
                "x = {x}, theta = {theta}"
            );
            assert!(
                (dispersion::im_reduced_amplitude(cpl(x), Angle::new(theta).unwrap()) - expect)
                    .abs()
                    < 1e-13
            );
        }
        let back = partial_waves::reduced_amplitude(
            cpl(x),
            Angle::new(PI).unwrap(),
            &PwParams::for_coupling(cpl(x)),
        )
        .unwrap();
        assert!((back.value.im() - x * bessel_series(1, PI * x)).abs() < 1e-8);
    }
}

#[test]
fn representations_agree() {
    let disp = DispParams::default();
    for x in [0.5, 1.0, 2.0, 3.0] {
        for i in 0..25 {
            let t = Angle::new(0.05 + (PI - 0.06) * i as f64 / 24.0).unwrap();
            let a = partial_waves::reduced_amplitude(cpl(x), t, &PwParams::for_coupling(cpl(x)))
                .unwrap();
            let b = dispersion::reduced_amplitude(cpl(x), t, &disp).unwrap();
            assert!(
                (a.value.0 - b.value.0).norm() < 1e-6,
                "x = {x}, theta = {}",
                t.radians()
            );
        }
    }
}

#[test]
fn validation_reports_are_deterministic() {
    let config = SuiteConfig::default();
    let a = serde_json::to_string(&run_full_suite(&[0.5, 1.0], &config)).unwrap();
    let b = serde_json::to_string(&run_full_suite(&[0.5, 1.0], &config)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn unreachable_tolerance_fails_with_entries() {
    let report = run_full_suite(&[1.0], &SuiteConfig::default().with_tolerance(1e-15));
    assert!(!report.all_passed());
    assert!(report
        .failures()
        .any(|c| c.name.starts_with("method_agreement")));
}

#[test]
fn suite_orders_groups_by_input() {
    let report = run_full_suite(&[2.0, 0.5, 1.0], &SuiteConfig::default());
    let order: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| c.name.starts_with("sigma_consistency"))
        .map(|c| c.name.as_str())
        .collect();
    assert_eq!(
        order,
        [
            "sigma_consistency[x=2]",
            "sigma_consistency[x=0.5]",
            "sigma_consistency[x=1]"
        ]
    );
    assert!(report.all_passed());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn amplitude_is_even(x in 0.05f64..4.0, theta in 0.02f64..3.1) {
        let p = PwParams::for_coupling(cpl(x));
        let a = partial_waves::reduced_amplitude(cpl(x), Angle::new(theta).unwrap(), &p).unwrap();
        let b = partial_waves::reduced_amplitude(cpl(x), Angle::new(-theta).unwrap(), &p).unwrap();
        prop_assert_eq!(a.value, b.value);
        let d = DispParams::default();
        let a = dispersion::reduced_amplitude(cpl(x), Angle::new(theta).unwrap(), &d).unwrap();
        let b = dispersion::reduced_amplitude(cpl(x), Angle::new(-theta).unwrap(), &d).unwrap();
        prop_assert_eq!(a.value, b.value);
    }

    #[test]
    fn partial_waves_are_unitary(x in 0.0f64..100.0, l in -100_000i64..100_000) {
        let d = phase_shift(cpl(x), l);
        prop_assert!(d.sin().abs() <= 1.0);
        prop_assert!((-PI * x / 2.0..=0.0).contains(&d));
        prop_assert_eq!(d, phase_shift(cpl(x), -l));
    }

    #[test]
    fn sigma_times_k_is_scale_free(x in 0.0f64..20.0) {
        let reference = sigma_closed_form(cpl(x), 1.0);
        for k in [0.1, 1.0, 10.0] {
            let sk = sigma_closed_form(cpl(x), k) * k;
            prop_assert!((sk - reference).abs() <= 1e-14 * reference.max(f64::MIN_POSITIVE));
        }
    }

    #[test]
    fn imaginary_part_positive_before_first_zero(x in 0.1f64..3.0, theta in 0.01f64..3.1) {
        let u = x * (theta * (2.0 * PI - theta)).sqrt();
        prop_assume!(u < 3.8);
        prop_assert!(dispersion::im_reduced_amplitude(cpl(x), Angle::new(theta).unwrap()) > 0.0);
    }
}
