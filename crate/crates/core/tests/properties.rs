use dirac_soliton::{
    band_edges, basis_spinors, dispersion, floquet_multipliers, lyapunov, lyapunov_regularized, wronskian, Kinematics,
    ModelParams, Params,
};
use num_complex::Complex;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = Params> {
    (0.5f64..4.0, 0.1f64..0.95, 0.3f64..2.5).prop_map(|(m, frac, a)| ModelParams::new(m, frac * m, a).unwrap())
}

fn regular(p: &Params, e: f64) -> bool {
    [0.0, p.lambda(), p.mass()].iter().all(|s| (e.abs() - s).abs() > 1e-2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wronskian_is_one_everywhere(p in params(), e in -10.0f64..10.0, x in -3.0f64..3.0) {
        prop_assume!(regular(&p, e));
        let (psi, phi) = basis_spinors(&p, &Kinematics::new(&p, e), x).unwrap();
        // W is a difference of two products that grow like e^{2κ|x|} when
        // evanescent, and each component is itself a difference of such terms
        let scale = (psi.c1 * phi.c2).norm() + (psi.c2 * phi.c1).norm();
        let err = (wronskian(&psi, &phi) - Complex::new(1.0, 0.0)).norm();
        prop_assert!(err < 1e-11 * scale.max(1.0), "err {} scale {}", err, scale);
    }

    #[test]
    fn lyapunov_is_even(p in params(), e in 0.0f64..10.0) {
        let plus = lyapunov_regularized(&p, e).unwrap().value;
        let minus = lyapunov_regularized(&p, -e).unwrap().value;
        prop_assert!((plus - minus).abs() <= 1e-10 * plus.abs().max(1.0));
    }

    #[test]
    fn floquet_pair_multiplies_to_one(d in -50.0f64..50.0) {
        let f = floquet_multipliers(d);
        prop_assert!((f.product() - Complex::new(1.0, 0.0)).norm() < 1e-10);
        prop_assert!((f.sum() - Complex::new(d, 0.0)).norm() < 1e-9 * d.abs().max(1.0));
        prop_assert_eq!(f.is_bounded(1e-12), d.abs() <= 2.0);
    }

    #[test]
    fn edges_bracket_allowed_bands(p in params()) {
        let table = band_edges(&p, 2.0 * p.mass() + 2.0, 1e-10).unwrap();
        for band in table.bands.iter().filter(|b| b.closed) {
            let mid = 0.5 * (band.lo + band.hi);
            let d = lyapunov_regularized(&p, mid).unwrap().value;
            let allowed = band.kind == dirac_soliton::BandKind::Allowed;
            prop_assert_eq!(d.abs() <= 2.0, allowed);
        }
        // narrow bands next to E = ±λ make D very steep, so test in energy
        for e in &table.edges {
            let below = lyapunov_regularized(&p, e - 1e-7).unwrap().value.abs() - 2.0;
            let above = lyapunov_regularized(&p, e + 1e-7).unwrap().value.abs() - 2.0;
            prop_assert!(below * above <= 0.0, "no crossing at {}: {} {}", e, below, above);
        }
    }
}

#[test]
fn dispersion_round_trips() {
    let p = Params::reference();
    let table = band_edges(&p, 7.0, 1e-13).unwrap();
    for index in [0, 1, 2, -1] {
        let band = table.allowed_band(index).unwrap();
        for pt in dispersion(&p, (band.lo, band.hi), 101).unwrap() {
            let d = lyapunov_regularized(&p, pt.energy).unwrap().value;
            assert!(((2.0 * pt.wavenumber * p.half_period()).cos() - d / 2.0).abs() < 1e-12);
        }
    }
}

#[test]
fn single_precision_agrees() {
    let p32 = ModelParams::<f32>::reference();
    let p64 = Params::reference();
    for e in [0.5f32, 1.2, 3.0, 5.5] {
        let a = lyapunov(&p32, e).unwrap() as f64;
        let b = lyapunov(&p64, e as f64).unwrap();
        assert!((a - b).abs() < 1e-3 * b.abs().max(1.0), "E = {e}: {a} vs {b}");
    }
    let t = band_edges(&p32, 3.0, 1e-5).unwrap();
    assert!((t.positive_edges()[0] - 0.738_418).abs() < 1e-3);
}
