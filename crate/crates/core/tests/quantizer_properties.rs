use std::f64::consts::PI;

use approx::assert_relative_eq;
use proptest::prelude::*;
use wkb_core::spectra::{coulomb_energy, oscillator_energy};
use wkb_core::*;

const U: UnitsContext = UnitsContext::NATURAL;

fn builtins() -> Vec<PotentialSpec> {
    vec![
        PotentialSpec::coulomb(1.0).unwrap(),
        PotentialSpec::oscillator(1.0).unwrap(),
        PotentialSpec::hulthen(10.0, 1.0).unwrap(),
        PotentialSpec::morse(1.0, 1.0, 1.0).unwrap(),
        PotentialSpec::linear_plus_oscillator(1.0, 1.0).unwrap(),
    ]
}

#[test]
fn coulomb_and_oscillator_match_closed_forms() {
    let q = Quantizer::new(U);
    let coul = PotentialSpec::coulomb(1.0).unwrap();
    let osc = PotentialSpec::oscillator(1.0).unwrap();
    for l in 0..=3 {
        for n_r in 0..=5 {
            let qn = QuantumNumbers::radial(n_r, l);
            let e = q.quantize_2tp(&coul, qn).unwrap();
            assert_relative_eq!(e.energy, coulomb_energy(1.0, &U, n_r, l), max_relative = 1e-8);
            assert!(e.residual.abs() < 1e-9);
            let e = q.quantize_2tp(&osc, qn).unwrap();
            assert_relative_eq!(e.energy, oscillator_energy(1.0, &U, n_r, l), max_relative = 1e-8);
        }
    }
}

#[test]
fn coulomb_degeneracy_in_n_r_plus_l() {
    let q = Quantizer::new(U);
    let coul = PotentialSpec::coulomb(1.0).unwrap();
    let e = |n_r, l| q.quantize_2tp(&coul, QuantumNumbers::radial(n_r, l)).unwrap().energy;
    assert_relative_eq!(e(1, 0), e(0, 1), max_relative = 1e-8);
    assert_relative_eq!(e(2, 0), e(1, 1), max_relative = 1e-8);
    assert_relative_eq!(e(1, 1), e(0, 2), max_relative = 1e-8);
}

#[test]
fn multiwell_agrees_with_single_interval_for_the_oscillator() {
    let q = Quantizer::new(U);
    let osc = PotentialSpec::oscillator(1.0).unwrap();
    for n_r in 0..=3 {
        for l in 0..=2 {
            let qn = QuantumNumbers::radial(n_r, l);
            let single = q.quantize_2tp(&osc, qn).unwrap().energy;
            let multi = q.quantize_multiwell(&osc, qn, 2, SearchDomain::Signed(-20.0, 20.0)).unwrap();
            assert_relative_eq!(multi.energy, single, max_relative = 1e-8);
            assert_eq!(multi.method, Method::QuadratureMultiWell);
        }
    }
}

#[test]
fn solved_levels_satisfy_their_condition() {
    let q = Quantizer::new(U);
    for spec in builtins() {
        let Ok(lvl) = q.quantize_2tp(&spec, QuantumNumbers::radial(1, 1)) else {
            continue;
        };
        let m2 = langer_m2(1, &U);
        let s = q.find_turning_structure(&spec, m2, lvl.energy, SearchDomain::Radial).unwrap();
        let phase = q.phase_integral(&spec, m2, &s).unwrap().value;
        assert!((phase / PI - 1.5).abs() < 1e-9, "{spec:?}: {phase}");
    }
}

#[test]
fn hulthen_quadrature_approaches_coulomb_for_long_range() {
    let q = Quantizer::new(U);
    let r0 = 1e3;
    let h = PotentialSpec::hulthen(1.0 / r0, r0).unwrap();
    for n_r in 0..3 {
        let e = q.quantize_2tp(&h, QuantumNumbers::radial(n_r, 0)).unwrap().energy;
        let c = coulomb_energy(1.0, &U, n_r, 0);
        assert!(((e - c) / c).abs() < 1e-2, "{n_r}: {e} vs {c}");
    }
}

#[test]
fn levels_increase_with_n_r() {
    let q = Quantizer::new(U);
    for spec in builtins() {
        let levels: Vec<f64> = (0..4)
            .map_while(|n_r| q.quantize_2tp(&spec, QuantumNumbers::radial(n_r, 0)).ok())
            .map(|l| l.energy)
            .collect();
        assert!(!levels.is_empty(), "{spec:?}");
        assert!(levels.windows(2).all(|w| w[1] > w[0]), "{spec:?}: {levels:?}");
    }
}

fn energy_range(spec: &PotentialSpec, q: &Quantizer, m2: f64) -> (f64, f64) {
    let lo = q.effective_minimum(spec, m2, SearchDomain::Radial).unwrap();
    let hi = spec.asymptote().unwrap_or(lo + 20.0);
    (lo, hi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn phase_integral_increases_with_energy(which in 0usize..5, a in 0.01f64..0.99, b in 0.01f64..0.99, l in 0u32..3) {
        prop_assume!((a - b).abs() > 1e-3);
        let spec = &builtins()[which];
        let q = Quantizer::new(U);
        let m2 = langer_m2(l, &U);
        let (lo, hi) = energy_range(spec, &q, m2);
        let (e1, e2) = (lo + a.min(b) * (hi - lo), lo + a.max(b) * (hi - lo));
        let s1 = q.find_turning_structure(spec, m2, e1, SearchDomain::Radial);
        let s2 = q.find_turning_structure(spec, m2, e2, SearchDomain::Radial);
        if let (Ok(s1), Ok(s2)) = (s1, s2) {
            prop_assume!(s1.k() == s2.k());
            let p1 = q.phase_integral(spec, m2, &s1).unwrap().value;
            let p2 = q.phase_integral(spec, m2, &s2).unwrap().value;
            prop_assert!(p2 > p1, "{e1} {p1} {e2} {p2}");
        }
    }

    #[test]
    fn effective_p2_is_negative_at_both_ends(which in 0usize..5, m2 in 0.01f64..20.0, frac in 0.0f64..1.0) {
        let spec = &builtins()[which];
        let e = match spec.asymptote() {
            Some(v) => v - 1e-3 - frac * 5.0,
            None => -50.0 + frac * 100.0,
        };
        prop_assert!(effective_p2(spec, m2, e, &U, 1e-6).unwrap() < 0.0);
        prop_assert!(effective_p2(spec, m2, e, &U, 1e6).unwrap() < 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn coulomb_scales_with_units(alpha in 0.2f64..5.0, hbar in 0.3f64..3.0, mass in 0.3f64..3.0, n_r in 0u32..4, l in 0u32..3) {
        let units = UnitsContext::new(hbar, mass).unwrap();
        let spec = PotentialSpec::coulomb(alpha).unwrap();
        let e = Quantizer::new(units).quantize_2tp(&spec, QuantumNumbers::radial(n_r, l)).unwrap().energy;
        let want = coulomb_energy(alpha, &units, n_r, l);
        prop_assert!(((e - want) / want).abs() < 1e-8, "{e} {want}");
    }

    #[test]
    fn oscillator_scales_with_units(omega in 0.2f64..5.0, hbar in 0.3f64..3.0, mass in 0.3f64..3.0, n_r in 0u32..4, l in 0u32..3) {
        let units = UnitsContext::new(hbar, mass).unwrap();
        let spec = PotentialSpec::oscillator(omega).unwrap();
        let e = Quantizer::new(units).quantize_2tp(&spec, QuantumNumbers::radial(n_r, l)).unwrap().energy;
        let want = oscillator_energy(omega, &units, n_r, l);
        prop_assert!(((e - want) / want).abs() < 1e-8, "{e} {want}");
    }
}
