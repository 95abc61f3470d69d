use dirac_soliton::{
    integrate_monodromy, lyapunov, lyapunov_numeric, Error, Params, Periodized, SolitonPotential, TabulatedPotential,
};
use proptest::prelude::*;

fn periodic(p: Params) -> Periodized<SolitonPotential<f64>, f64> {
    Periodized::new(SolitonPotential::new(p), p.half_period())
}

#[test]
fn rk4_is_fourth_order() {
    let p = Params::reference();
    let s = periodic(p);
    for e in [3.7, 0.9] {
        let exact = lyapunov_numeric(&s, 2.0, e, 1.0, 1 << 20).unwrap();
        let e200 = (lyapunov_numeric(&s, 2.0, e, 1.0, 200).unwrap() - exact).abs();
        let e400 = (lyapunov_numeric(&s, 2.0, e, 1.0, 400).unwrap() - exact).abs();
        let ratio = e200 / e400;
        assert!((12.0..=20.0).contains(&ratio), "E = {e}: ratio {ratio}");
    }
}

#[test]
fn tabulated_soliton_reproduces_closed_form() {
    let p = Params::reference();
    let xs: Vec<f64> = (0..=4000).map(|i| -1.0 + i as f64 / 2000.0).collect();
    let values = xs.iter().map(|&x| dirac_soliton::potential_s1(&p, x)).collect();
    let table = TabulatedPotential::new(xs, values, "s1").unwrap();
    for e in [1.1, 2.9, -4.4] {
        let numeric = lyapunov_numeric(&table, 2.0, e, 1.0, 20_000).unwrap();
        let closed = lyapunov(&p, e).unwrap();
        // linear interpolation error is O(Δx²)
        assert!((numeric - closed).abs() < 1e-5, "E = {e}: {numeric} vs {closed}");
    }
}

#[test]
fn coarse_steps_are_rejected() {
    let s = periodic(Params::reference());
    assert!(matches!(
        integrate_monodromy(&s, 2.0, 3.0, -1.0, 2.0, 99),
        Err(Error::StepCountTooSmall { steps: 99, .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_form_matches_oracle(e in 0.1f64..7.5) {
        let p = Params::reference();
        prop_assume!((e - 2.0).abs() > 0.05 && (e - 1.0).abs() > 1e-3);
        let numeric = lyapunov_numeric(&periodic(p), 2.0, e, 1.0, 20_000).unwrap();
        prop_assert!((numeric - lyapunov(&p, e).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn monodromy_is_unimodular(e in -8.0f64..8.0, x0 in -1.0f64..1.0) {
        let s = periodic(Params::reference());
        let m = integrate_monodromy(&s, 2.0, e, x0, 2.0, 4000).unwrap();
        prop_assert!((m.det() - 1.0).abs() < 1e-8);
    }
}
