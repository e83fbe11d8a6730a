//! Property-based checks of the calculus layer: inequalities and
//! identities that must hold for whole parameter families.

use proptest::prelude::*;

use orlisob::functions::{
    decreasing_rearrangement, luxemburg_norm, luxemburg_norm_rearranged, Domain, SampledFunction,
};
use orlisob::gallery::{sample_on_grid, tent, young_gallery};
use orlisob::hardy::hardy_operator;
use orlisob::seminorm::{gagliardo_modular, ModularConfig};
use orlisob::space::SpaceParams;
use orlisob::young::YoungFunction;

proptest! {
    /// Young's inequality s·t ≤ A(s) + Ã(t) for pure powers.
    #[test]
    fn youngs_inequality_pure_powers(
        q in 1.05f64..4.0,
        ls in -4.0f64..4.0,
        lt in -4.0f64..4.0,
    ) {
        let a = YoungFunction::pure_power(1.0, q).unwrap();
        let conj = a.conjugate().unwrap();
        let (s, t) = (10f64.powf(ls), 10f64.powf(lt));
        let lhs = s * t;
        let rhs = a.eval(s).unwrap().value() + conj.eval(t).unwrap().value();
        prop_assert!(lhs <= rhs * (1.0 + 1e-9) + 1e-9);
    }

    /// Convexity with A(0) = 0 implies superadditive scaling:
    /// k·A(t) ≤ A(k·t) for k ≥ 1.
    #[test]
    fn scaling_superadditivity(idx in 0usize..12, k in 1.0f64..50.0, lt in -6.0f64..2.0) {
        let entry = &young_gallery()[idx];
        let t = 10f64.powf(lt);
        let v = entry.young.eval(t).unwrap();
        let w = entry.young.eval(k * t).unwrap();
        if v.is_finite() && w.is_finite() {
            prop_assert!(k * v.value() <= w.value() * (1.0 + 1e-9) + 1e-12);
        }
    }

    /// Biconjugation is the identity for pure powers.
    #[test]
    fn biconjugation_roundtrip(q in 1.1f64..4.0, lt in -4.0f64..4.0) {
        let a = YoungFunction::pure_power(1.0, q).unwrap();
        let back = a.conjugate().unwrap().conjugate().unwrap();
        let t = 10f64.powf(lt);
        let v = a.eval(t).unwrap().value();
        let w = back.eval(t).unwrap().value();
        prop_assert!((v - w).abs() <= 1e-6 * v.max(1e-300));
    }

    /// The generalized inverse of the density is a left inverse up to the
    /// flat parts: a⁻¹(a(t)) ≤ t.
    #[test]
    fn density_inverse_left(idx in 0usize..12, lt in -6.0f64..2.0) {
        let entry = &young_gallery()[idx];
        let t = 10f64.powf(lt);
        if let orlisob::extreal::LnValue::Finite(ld) = entry.young.ln_density(t.ln()) {
            let x = entry.young.density_map().generalized_inverse(ld.exp());
            prop_assert!(x <= t * (1.0 + 1e-6));
        }
    }

    /// Luxemburg norm is positively homogeneous.
    #[test]
    fn luxemburg_homogeneity(c in 0.01f64..100.0, amp in 0.1f64..10.0) {
        let a = YoungFunction::pure_power(1.0, 2.0).unwrap();
        let u = sample_on_grid(tent(0.0, 1.0, amp), -2.0, 2.0, 32);
        let n1 = luxemburg_norm(&a, &u.scaled(c)).value();
        let n0 = luxemburg_norm(&a, &u).value();
        prop_assert!((n1 - c * n0).abs() <= 1e-6 * (c * n0));
    }

    /// The decreasing rearrangement is equimeasurable: it preserves the
    /// Luxemburg norm.
    #[test]
    fn rearrangement_preserves_norm(amp in 0.1f64..10.0, w in 0.5f64..2.0) {
        let a = YoungFunction::pure_power(1.0, 1.5).unwrap();
        let u = sample_on_grid(tent(0.3, w, amp), -3.0, 3.0, 48);
        let direct = luxemburg_norm(&a, &u).value();
        let re = decreasing_rearrangement(&u).unwrap();
        let viare = luxemburg_norm_rearranged(&a, &re).value();
        prop_assert!((direct - viare).abs() <= 1e-6 * direct.max(1e-12));
    }

    /// Hardy operator is linear in the trial and nonincreasing in r.
    #[test]
    fn hardy_linear_and_monotone(b in 0.2f64..4.0, v in 0.1f64..10.0, r in 0.0f64..2.0) {
        let p = SpaceParams::new(1, 0.5).unwrap();
        let f = SampledFunction::new(Domain::HalfLine, vec![0.0, b, 2.0 * b], vec![v, 0.0]).unwrap();
        let f2 = SampledFunction::new(Domain::HalfLine, vec![0.0, b, 2.0 * b], vec![2.0 * v, 0.0]).unwrap();
        let h1 = hardy_operator(&f, &p, r).unwrap();
        let h2 = hardy_operator(&f2, &p, r).unwrap();
        prop_assert!((h2 - 2.0 * h1).abs() <= 1e-10 * h1.abs().max(1.0));
        let hr = hardy_operator(&f, &p, r + 0.1).unwrap();
        prop_assert!(hr <= h1 + 1e-12);
    }
}

proptest! {
    // Modular evaluations are comparatively expensive; a few cases suffice
    // to exercise the λ-monotonicity across random profiles.
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// The Gagliardo modular is nonincreasing in λ.
    #[test]
    fn modular_monotone_in_lambda(amp in 0.05f64..2.0, lam in 0.5f64..4.0) {
        let a = YoungFunction::pure_power(1.0, 2.0).unwrap();
        let u = sample_on_grid(tent(0.0, 1.0, amp), -2.0, 2.0, 48);
        let cfg = ModularConfig::default();
        let j1 = gagliardo_modular(&u, 0.5, &a, lam, &cfg).unwrap().value();
        let j2 = gagliardo_modular(&u, 0.5, &a, 2.0 * lam, &cfg).unwrap().value();
        prop_assert!(j2 <= j1 * (1.0 + 1e-9));
    }
}
