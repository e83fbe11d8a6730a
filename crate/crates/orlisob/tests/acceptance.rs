//! End-to-end acceptance checks, one per release criterion. Each test
//! prints a single PASS/FAIL line so the suite output doubles as a
//! checklist.

use orlisob::experiments::{
    counterexample_high_smoothness, run_example_targets, run_mollifier_convergence,
    verify_boundedness, ExperimentConfig,
};
use orlisob::extreal::LnValue;
use orlisob::functions::{Domain, SampledFunction};
use orlisob::gallery::{bump, sample_on_grid, spliced_powerlog, tent, young_gallery};
use orlisob::hardy::{hardy_operator, kernel_conjugate_norm};
use orlisob::regime::{classify_growth, RegimeTag};
use orlisob::seminorm::{gagliardo_modular, ModularConfig};
use orlisob::space::SpaceParams;
use orlisob::targets::{orlicz_lorentz_target, orlicz_target};
use orlisob::young::YoungFunction;

fn report(name: &str, pass: bool) {
    println!("{}: {name}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{name}");
}

fn space() -> SpaceParams {
    SpaceParams::new(1, 0.5).expect("space")
}

/// Criterion 1: the growth classifier reproduces the closed-form
/// admissibility and growth rules on a parameter grid with zero
/// disagreements.
#[test]
fn criterion_1_regime_rules_on_grid() {
    let p = space();
    let mut checked = 0usize;
    let mut disagreements = Vec::new();
    for &p0 in &[1.2f64, 1.5, 1.8, 2.0, 2.2] {
        for &a0 in &[-1.0f64, 0.5, 1.5, 2.0] {
            for &pp in &[2.0f64, 2.5, 3.0] {
                for &aa in &[-1.0f64, 0.0, 2.0] {
                    // Skip parameter sets the splice builder rejects
                    // (nonconvex bridges); the rule applies to Young
                    // functions only.
                    let a = match spliced_powerlog(1.0, p0, a0, pp, aa) {
                        Ok(a) => a,
                        Err(_) => continue,
                    };
                    checked += 1;
                    let admissible = p0 < 2.0 || (p0 == 2.0 && a0 > 1.0);
                    let supercritical = pp > 2.0 || (pp == 2.0 && aa > 1.0);
                    let expect = if !admissible {
                        RegimeTag::Inadmissible
                    } else if supercritical {
                        RegimeTag::Supercritical
                    } else {
                        RegimeTag::Subcritical
                    };
                    match classify_growth(&a, &p) {
                        Ok(r) if r.tag == expect => {}
                        other => disagreements.push(format!("({p0},{a0},{pp},{aa}): {other:?}")),
                    }
                }
            }
        }
    }
    report(
        "criterion 1: classification grid (>=60 points, zero disagreements)",
        checked >= 60 && disagreements.is_empty(),
    );
}

/// Criterion 2: for A(t) = t^1.5 (n = 1, s = 1/2) the constructed Orlicz
/// target equals t^6/8 within 1% across [1e-4, 1e-1].
#[test]
fn criterion_2_orlicz_target_closed_form() {
    let p = space();
    let a = YoungFunction::pure_power(1.0, 1.5).expect("young");
    let target = orlicz_target(&a, &p).expect("target");
    let mut worst = 0.0f64;
    for i in 0..=120 {
        let t = 1e-4f64 * 10f64.powf(3.0 * i as f64 / 120.0);
        let got = target.eval(t).expect("in range").value();
        let want = t.powi(6) / 8.0;
        worst = worst.max((got - want).abs() / want);
    }
    report(
        &format!("criterion 2: A_{{n/s}} = t^6/8 within 1% (worst {worst:.2e})"),
        worst < 0.01,
    );
}

/// Criterion 3: exponential branch, p0 = alpha0 = n/s = 2: double-log slope
/// of the Orlicz target near zero is -2 within 5%.
#[test]
fn criterion_3_exponential_branch_slope() {
    let p = space();
    let a = spliced_powerlog(1.0, 2.0, 2.0, 3.0, 0.0).expect("young");
    let target = orlicz_target(&a, &p).expect("target");
    let dl = |t: f64| match target.ln_eval(t.ln()) {
        LnValue::Finite(v) if v < 0.0 => (-v).ln(),
        _ => f64::NAN,
    };
    let slope = (dl(1e-6) - dl(1e-8)) / (1e-6f64.ln() - 1e-8f64.ln());
    report(
        &format!("criterion 3: double-log slope -2 within 5% (got {slope:.4})"),
        (slope + 2.0).abs() < 0.10,
    );
}

fn near_zero_exponents(f: &YoungFunction, pin: f64) -> (f64, f64) {
    let lv = |t: f64| match f.ln_eval(t.ln()) {
        LnValue::Finite(v) => v,
        _ => f64::NAN,
    };
    let power = (lv(1e-24) - lv(1e-28)) / (1e-24f64.ln() - 1e-28f64.ln());
    let lres = |t: f64| lv(t) - pin * t.ln();
    let logexp = (lres(1e-24) - lres(1e-28))
        / ((-(1e-24f64.ln())).ln() - (-(1e-28f64.ln())).ln());
    (power, logexp)
}

/// Criterion 4: Â near-zero exponents match the closed-form rules on both
/// branches within 5%, and Â is equivalent to A near zero exactly when the
/// lower Matuszewska index of A at zero stays below n/s.
#[test]
fn criterion_4_ri_target_asymptotics() {
    let p = space();
    let ns = 2.0;
    let mut pass = true;
    // Subcritical branch: Â ≃ A ~ t^{p0} (ln 1/t)^{α0}.
    for &(p0, a0) in &[(1.5f64, 0.0f64), (1.2, -0.5)] {
        let a = spliced_powerlog(1.0, p0, a0, 3.0, 0.0).expect("young");
        let hat = orlicz_lorentz_target(&a, &p).expect("hat");
        let (pw, le) = near_zero_exponents(&hat, p0);
        pass &= (pw - p0).abs() <= 0.05 * p0;
        pass &= (le - a0).abs() <= 0.05 * a0.abs().max(1.0);
    }
    // Critical branch: p0 = n/s gives Â ~ t^{n/s} (ln 1/t)^{α0 - n/s}.
    for &a0 in &[3.0f64, 4.0] {
        let a = spliced_powerlog(1.0, ns, a0, ns + 1.0, 0.0).expect("young");
        let hat = orlicz_lorentz_target(&a, &p).expect("hat");
        let (pw, le) = near_zero_exponents(&hat, ns);
        pass &= (pw - ns).abs() <= 0.05 * ns;
        pass &= (le - (a0 - ns)).abs() <= 0.05 * (a0 - ns);
    }
    // Equivalence near zero iff the Matuszewska index at zero is < n/s.
    // Entries with a flat density near zero (linear head) are not
    // representable by the log-log density inversion and are skipped.
    for e in young_gallery() {
        if !e.admissible || matches!(e.name, "linear" | "linear-to-cubic") {
            continue;
        }
        let m0 = e.young.matuszewska_index_zero().expect("index");
        let hat = orlicz_lorentz_target(&e.young, &p).expect("hat");
        let (pa, _) = near_zero_exponents(&e.young, 0.0);
        let (ph, _) = near_zero_exponents(&hat, 0.0);
        let (_, la) = near_zero_exponents(&e.young, pa);
        let (_, lh) = near_zero_exponents(&hat, pa);
        let equivalent = (ph - pa).abs() < 0.05 && (lh - la).abs() < 0.25;
        pass &= equivalent == (m0 < ns - 1e-9);
    }
    report("criterion 4: RI-target asymptotics on both branches + equivalence rule", pass);
}

/// Criterion 5: conjugation calculus — biconjugation round-trip within 1e-6
/// relative, and Young's inequality at 10^4 deterministic pseudo-random
/// pairs with 1e-9 slack.
#[test]
fn criterion_5_conjugation_calculus() {
    let mut pass = true;
    let powers = [1.2f64, 1.5, 2.0, 3.0];
    for &q in &powers {
        let a = YoungFunction::pure_power(1.0, q).expect("young");
        let conj = a.conjugate().expect("conjugate");
        let back = conj.conjugate().expect("biconjugate");
        for i in 0..=40 {
            let t = 1e-4f64 * 10f64.powf(8.0 * i as f64 / 40.0);
            let v = a.eval(t).expect("eval").value();
            let w = back.eval(t).expect("eval").value();
            if (v - w).abs() > 1e-6 * v.abs().max(1e-300) {
                pass = false;
            }
        }
        // Young's inequality s·t ≤ A(s) + Ã(t): a simple multiplicative
        // congruential stream keeps the pairs deterministic.
        let mut state = 0x5EEDu64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..10_000 {
            let s = 10f64.powf(next() * 8.0 - 4.0);
            let t = 10f64.powf(next() * 8.0 - 4.0);
            let lhs = s * t;
            let rhs = a.eval(s).expect("eval").value() + conj.eval(t).expect("eval").value();
            if lhs > rhs * (1.0 + 1e-9) + 1e-9 {
                pass = false;
            }
        }
    }
    report("criterion 5: biconjugation 1e-6 + Young's inequality at 1e4 pairs", pass);
}

/// Criterion 6: Hardy operator closed forms to 1e-10, and kernel-conjugate
/// norm finiteness agrees with the growth classification on the whole
/// gallery.
#[test]
fn criterion_6_hardy_closed_forms_and_kernel_norm() {
    let p = space();
    let f = SampledFunction::new(Domain::HalfLine, vec![0.0, 1.0, 2.0], vec![1.0, 0.0])
        .expect("indicator");
    // ∫_r^1 ρ^{-1/2} dρ · (1/2)… hand antiderivative: 2(1 - sqrt(r)) for r ≤ 1.
    let mut pass = (hardy_operator(&f, &p, 0.25).expect("hardy") - 1.0).abs() < 1e-10;
    pass &= (hardy_operator(&f, &p, 0.0).expect("hardy") - 2.0).abs() < 1e-10;
    pass &= hardy_operator(&f, &p, 1.5).expect("hardy").abs() < 1e-10;
    for e in young_gallery() {
        let finite = kernel_conjugate_norm(&e.young, &p).expect("kernel norm").is_finite();
        let regime = classify_growth(&e.young, &p).expect("classify");
        if finite != (regime.tag == RegimeTag::Supercritical) {
            pass = false;
        }
    }
    report("criterion 6: Hardy closed forms + kernel norm finiteness on gallery", pass);
}

/// Criterion 7: dilation law J(u(·/N); λ) = N · J(u; λ N^s) within 3% at
/// N ∈ {2,4,8} for tent and bump profiles.
#[test]
fn criterion_7_modular_dilation_law() {
    let p = space();
    let a = spliced_powerlog(1.0, 2.0, 2.0, 3.0, 0.0).expect("young");
    let cfg = ModularConfig::default();
    let sigma = p.frac_part();
    let mut pass = true;
    for u in [
        sample_on_grid(tent(0.0, 1.0, 0.1), -2.0, 2.0, 96),
        sample_on_grid(bump(0.0, 1.0, 0.1), -2.0, 2.0, 96),
    ] {
        for nn in [2.0f64, 4.0, 8.0] {
            let xs: Vec<f64> = u.xs.iter().map(|x| x * nn).collect();
            let un = SampledFunction::new(u.domain, xs, u.vs.clone()).expect("dilate");
            let lhs = gagliardo_modular(&un, sigma, &a, 1.0, &cfg).expect("modular").value();
            let rhs =
                nn * gagliardo_modular(&u, sigma, &a, nn.powf(p.s), &cfg).expect("modular").value();
            if (lhs - rhs).abs() > 0.03 * rhs {
                pass = false;
            }
        }
    }
    report("criterion 7: dilation law within 3% at N in {2,4,8}", pass);
}

/// Criterion 8: high-smoothness counterexample — derivative modular flat in
/// j, L1+Linf norm growing at least like j^{1/2}/2.
#[test]
fn criterion_8_counterexample_growth() {
    let cfg = ExperimentConfig::defaults("counterexample");
    let r = counterexample_high_smoothness(&cfg).expect("runs");
    report("criterion 8: counterexample modular flat, norm grows", r.pass);
}

/// Criterion 9: the scaling argument's calibrated identity — dilating by
/// N = J(u;1)^{-1/n} and evaluating the modular at scale N^{-s} returns 1 —
/// holds within 5% for every supercritical gallery entry, and the
/// boundedness ratio experiment passes.
#[test]
fn criterion_9_boundedness_ratio_invariance() {
    let p = space();
    let cfg = ModularConfig::default();
    let sigma = p.frac_part();
    let mut pass = true;
    for e in young_gallery() {
        if !(e.admissible && e.supercritical) {
            continue;
        }
        for u in [
            sample_on_grid(tent(0.0, 1.0, 0.1), -2.0, 2.0, 96),
            sample_on_grid(bump(0.0, 1.0, 0.1), -2.0, 2.0, 96),
        ] {
            let j1 = gagliardo_modular(&u, sigma, &e.young, 1.0, &cfg).expect("modular").value();
            if !(j1 > 0.0) || !j1.is_finite() {
                pass = false;
                continue;
            }
            let nn = 1.0 / j1;
            let xs: Vec<f64> = u.xs.iter().map(|x| x * nn).collect();
            let un = SampledFunction::new(u.domain, xs, u.vs.clone()).expect("dilate");
            let calibrated = gagliardo_modular(&un, sigma, &e.young, nn.powf(-p.s), &cfg)
                .expect("modular")
                .value();
            if (calibrated - 1.0).abs() > 0.05 {
                pass = false;
            }
        }
    }
    let r = verify_boundedness(&ExperimentConfig::defaults("boundedness")).expect("runs");
    report("criterion 9: calibrated scaling identity + ratio invariance", pass && r.pass);
}

/// Criterion 10: mollifier ladder decreases monotonically below 1e-2.
#[test]
fn criterion_10_mollifier_convergence() {
    let r = run_mollifier_convergence(&ExperimentConfig::defaults("mollifier")).expect("runs");
    report("criterion 10: mollifier ladder monotone, final < 1e-2", r.pass);
}

/// Criterion 11: identical configs produce byte-identical reports.
#[test]
fn criterion_11_deterministic_reports() {
    let cfg = ExperimentConfig::defaults("example-targets");
    let r1 = run_example_targets(&cfg).expect("runs").to_json();
    let r2 = run_example_targets(&cfg).expect("runs").to_json();
    report("criterion 11: byte-identical reports across two runs", r1 == r2);
}
