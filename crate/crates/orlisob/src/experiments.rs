//! Desk-scale experiment runner: each experiment re-derives a verifiable
//! claim of the embedding theory numerically and emits a deterministic
//! report (JSON plus plot-ready CSV).

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::l1_plus_linf_norm;
use crate::gallery::{bump, sample_on_grid, tent, truncated_gaussian};
use crate::regime::{classify_growth, RegimeTag};
use crate::seminorm::{
    fractional_seminorm, gagliardo_modular, mollify, derivative_samples, ModularConfig,
};
use crate::space::SpaceParams;
use crate::targets::{orlicz_target, orlicz_lorentz_target, TargetBundle};
use crate::functions::{intersection_norm, luxemburg_norm, SampledFunction};
use crate::young::YoungFunction;
use crate::gallery::spliced_powerlog;

/// Configuration shared by all experiments. Fields not used by a given
/// experiment are ignored.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Experiment id: one of `example-targets`, `boundedness`,
    /// `counterexample`, `embedding-norms`, `mollifier`.
    pub experiment: String,
    pub n: u32,
    pub s: f64,
    /// Optional Young function as inline JSON; experiments fall back to
    /// their default when absent.
    #[serde(default)]
    pub young: Option<serde_json::Value>,
    /// Gallery selection by profile name; empty means the default set.
    #[serde(default)]
    pub gallery: Vec<String>,
    /// Relative tolerance applied to fitted-constant assertions.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_tolerance() -> f64 {
    0.05
}

impl ExperimentConfig {
    pub fn defaults(experiment: &str) -> ExperimentConfig {
        ExperimentConfig {
            experiment: experiment.to_string(),
            n: 1,
            s: if experiment == "counterexample" { 1.5 } else { 0.5 },
            young: None,
            gallery: Vec::new(),
            tolerance: default_tolerance(),
            seed: 0x5EED,
        }
    }

    pub fn from_json(s: &str) -> Result<ExperimentConfig> {
        Ok(serde_json::from_str(s)?)
    }

    fn young_function(&self, fallback: impl FnOnce() -> Result<YoungFunction>) -> Result<YoungFunction> {
        match &self.young {
            Some(v) => YoungFunction::from_json(&v.to_string()),
            None => fallback(),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::Precondition("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// One checked claim: expected vs measured with a tolerance and the source
/// of the expected value (`analytic`, `oracle`, or `definition`).
#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub name: String,
    pub expected: f64,
    pub measured: f64,
    pub tolerance: f64,
    pub provenance: &'static str,
    pub pass: bool,
}

impl Assertion {
    fn relative(
        name: impl Into<String>,
        expected: f64,
        measured: f64,
        tolerance: f64,
        provenance: &'static str,
    ) -> Assertion {
        // Relative band, with an absolute floor so expected values near
        // zero stay checkable.
        let scale = expected.abs().max(1.0);
        let pass = measured.is_finite() && (measured - expected).abs() <= tolerance * scale;
        Assertion { name: name.into(), expected, measured, tolerance, provenance, pass }
    }

    fn boolean(name: impl Into<String>, holds: bool, provenance: &'static str) -> Assertion {
        Assertion {
            name: name.into(),
            expected: 1.0,
            measured: if holds { 1.0 } else { 0.0 },
            tolerance: 0.0,
            provenance,
            pass: holds,
        }
    }

    fn at_least(
        name: impl Into<String>,
        bound: f64,
        measured: f64,
        provenance: &'static str,
    ) -> Assertion {
        Assertion {
            name: name.into(),
            expected: bound,
            measured,
            tolerance: 0.0,
            provenance,
            pass: measured >= bound,
        }
    }
}

/// A plot-ready data table: one CSV file per curve.
#[derive(Debug, Clone, Serialize)]
pub struct Curve {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Experiment outcome. Field order is fixed and maps (BTreeMap) are
/// ordered, so serializing the same report twice is byte-identical.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub experiment: String,
    pub seed: u64,
    pub pass: bool,
    pub fitted_constants: BTreeMap<String, f64>,
    pub assertions: Vec<Assertion>,
    pub curves: Vec<Curve>,
}

impl Report {
    fn finish(mut self) -> Report {
        self.pass = self.assertions.iter().all(|a| a.pass);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Writes `<experiment>.json` plus one `<experiment>-<curve>.csv` per
    /// curve into `dir`.
    pub fn write_files(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let json_path = dir.join(format!("{}.json", self.experiment));
        std::fs::write(&json_path, self.to_json())?;
        for c in &self.curves {
            let path = dir.join(format!("{}-{}.csv", self.experiment, c.name));
            let mut f = std::fs::File::create(&path)?;
            writeln!(f, "{}", c.columns.join(","))?;
            for row in &c.rows {
                let line: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
                writeln!(f, "{}", line.join(","))?;
            }
        }
        Ok(())
    }
}

fn new_report(experiment: &str, seed: u64) -> Report {
    Report {
        experiment: experiment.to_string(),
        seed,
        pass: false,
        fitted_constants: BTreeMap::new(),
        assertions: Vec::new(),
        curves: Vec::new(),
    }
}

/// Local log-log slope of a Young function over `[t_lo, t_hi]`.
fn fitted_exponent(a: &YoungFunction, t_lo: f64, t_hi: f64) -> f64 {
    let v_lo = a.eval(t_lo).expect("in range").value().ln();
    let v_hi = a.eval(t_hi).expect("in range").value().ln();
    (v_hi - v_lo) / (t_hi.ln() - t_lo.ln())
}

/// Slope of `ln ln (1/A(t))` in `ln t` — the signature of exponential
/// decay `A(t) ≈ exp(-c t^{-γ})` near zero, which this fit recovers as -γ.
fn fitted_double_log_slope(a: &YoungFunction, t_lo: f64, t_hi: f64) -> f64 {
    // Work on the log scale: the values themselves underflow f64.
    let dl = |t: f64| match a.ln_eval(t.ln()) {
        crate::extreal::LnValue::Finite(lv) if lv < 0.0 => (-lv).ln(),
        _ => f64::NAN,
    };
    (dl(t_hi) - dl(t_lo)) / (t_hi.ln() - t_lo.ln())
}

/// Near-zero power and log-exponent of A via deep log-scale probes:
/// the power is the log-log slope, and with that power pinned the
/// log-exponent is the residual slope against `ln ln(1/t)`.
///
/// The window must sit deep inside the function's reliable range: the
/// finite-depth correction to both exponents decays only like
/// `1/ln(1/t)`.
fn fitted_power_and_log(a: &YoungFunction, pinned_power: f64, t1: f64, t2: f64) -> (f64, f64) {
    let lv = |t: f64| match a.ln_eval(t.ln()) {
        crate::extreal::LnValue::Finite(v) => v,
        _ => f64::NAN,
    };
    let power = (lv(t2) - lv(t1)) / (t2.ln() - t1.ln());
    let lres = |t: f64| lv(t) - pinned_power * t.ln();
    let alpha = (lres(t2) - lres(t1)) / ((-(t2.ln())).ln() - (-(t1.ln())).ln());
    (power, alpha)
}

/// Example-table rows: near-zero exponents of the optimal targets for
/// power-log Young functions, against the closed-form rules.
pub fn run_example_targets(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let p = SpaceParams::new(cfg.n, cfg.s)?;
    let ns = f64::from(cfg.n) / cfg.s;
    let mut report = new_report("example-targets", cfg.seed);
    let tol = cfg.tolerance;

    // Deep probe window for Â exponent fits: well inside the tabulated
    // range, deep enough that the 1/ln(1/t) finite-depth correction is
    // below the tolerance.
    let (w_lo, w_hi) = (1e-28f64, 1e-24f64);

    // Subcritical-at-zero rows: A ~ t^{p0}(ln 1/t)^{α0} near zero with a
    // supercritical tail gives an optimal Orlicz target with near-zero
    // exponent n p0 / (n - s p0), and Â ≃ A near zero.
    for &(p0, a0) in &[(1.5f64, 0.0f64), (1.2, -0.5), (1.8, 0.0)] {
        let a = spliced_powerlog(1.0, p0, a0, 3.0, 0.0)?;
        if a0 == 0.0 {
            let target = orlicz_target(&a, &p)?;
            let expected = f64::from(cfg.n) * p0 / (f64::from(cfg.n) - cfg.s * p0);
            let measured = fitted_exponent(&target, 1e-4, 1e-1);
            report.assertions.push(Assertion::relative(
                format!("orlicz-target-exponent-p0-{p0}"),
                expected,
                measured,
                tol,
                "analytic",
            ));
        }
        let hat = orlicz_lorentz_target(&a, &p)?;
        let (hp, hl) = fitted_power_and_log(&hat, p0, w_lo, w_hi);
        report.assertions.push(Assertion::relative(
            format!("ri-target-power-p0-{p0}-a0-{a0}"),
            p0,
            hp,
            tol,
            "analytic",
        ));
        report.assertions.push(Assertion::relative(
            format!("ri-target-log-exponent-p0-{p0}-a0-{a0}"),
            a0,
            hl,
            tol,
            "analytic",
        ));
    }

    // Critical rows p0 = n/s: the Orlicz target decays exponentially near
    // zero with double-log slope -n/(s(α0+1)-n), and Â keeps the power n/s
    // with log-exponent α0 - n/s.
    for &a0 in &[ns, ns + 1.0, ns + 2.0] {
        let a = spliced_powerlog(1.0, ns, a0, ns + 1.0, 0.0)?;
        let target = orlicz_target(&a, &p)?;
        let expected = -f64::from(cfg.n) / (cfg.s * (a0 + 1.0) - f64::from(cfg.n));
        let measured = fitted_double_log_slope(&target, 1e-8, 1e-6);
        report.curves.push(Curve {
            name: format!("orlicz-target-a0-{a0}"),
            columns: vec!["t".into(), "neg-ln-value".into()],
            rows: crate::young::logspace(1e-4f64.ln(), 1e-1f64.ln(), 25)
                .into_iter()
                .map(|lt| {
                    let v = match target.ln_eval(lt) {
                        crate::extreal::LnValue::Finite(lv) => -lv,
                        _ => f64::NAN,
                    };
                    vec![lt.exp(), v]
                })
                .collect(),
        });
        report.assertions.push(Assertion::relative(
            format!("orlicz-target-double-log-slope-a0-{a0}"),
            expected,
            measured,
            tol,
            "analytic",
        ));
        if a0 > ns {
            // The log-exponent fit needs a nonzero expected value; the
            // a0 = n/s row (expected exponent zero) is covered by the
            // double-log slope above.
            let hat = orlicz_lorentz_target(&a, &p)?;
            let (hp, hl) = fitted_power_and_log(&hat, ns, w_lo, w_hi);
            report.assertions.push(Assertion::relative(
                format!("ri-target-power-a0-{a0}"),
                ns,
                hp,
                tol,
                "analytic",
            ));
            report.assertions.push(Assertion::relative(
                format!("ri-target-log-exponent-a0-{a0}"),
                a0 - ns,
                hl,
                tol,
                "analytic",
            ));
        }
    }

    // Strict admissibility boundary: p0 = n/s with α0 = n/s - 1 exactly is
    // inadmissible.
    let boundary = spliced_powerlog(1.0, ns, ns - 1.0, ns + 1.0, 0.0)?;
    let regime = classify_growth(&boundary, &p)?;
    report.assertions.push(Assertion::boolean(
        "admissibility-boundary-strict",
        regime.tag == RegimeTag::Inadmissible,
        "definition",
    ));

    Ok(report.finish())
}

fn default_profiles(selection: &[String], amp: f64) -> Vec<(String, SampledFunction)> {
    let all: Vec<(&str, SampledFunction)> = vec![
        ("tent", sample_on_grid(tent(0.0, 1.0, amp), -2.0, 2.0, 96)),
        ("bump", sample_on_grid(bump(0.0, 1.0, amp), -2.0, 2.0, 96)),
        (
            "gaussian",
            sample_on_grid(truncated_gaussian(0.0, 0.4, amp), -2.5, 2.5, 96),
        ),
    ];
    all.into_iter()
        .filter(|(n, _)| selection.is_empty() || selection.iter().any(|s| s == n))
        .map(|(n, u)| (n.to_string(), u))
        .collect()
}

fn dilate_sample(u: &SampledFunction, name_scale: f64) -> SampledFunction {
    let n = name_scale;
    let xs: Vec<f64> = u.xs.iter().map(|x| x * n).collect();
    SampledFunction::new(u.domain, xs, u.vs.clone()).expect("dilated grid valid")
}

/// Boundedness ratio `R(u) = ess-sup|u| / J_{s,A}(u)^{s/n}` is invariant
/// under dilation in the supercritical regime.
pub fn verify_boundedness(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let p = SpaceParams::new(cfg.n, cfg.s)?;
    let a = cfg.young_function(|| spliced_powerlog(1.0, 1.95, 0.0, 3.0, 0.0))?;
    let regime = classify_growth(&a, &p)?;
    if regime.tag != RegimeTag::Supercritical {
        return Err(Error::Precondition(format!(
            "boundedness needs a supercritical configuration; classify reports {:?}",
            regime.tag
        )));
    }
    let mut report = new_report("boundedness", cfg.seed);
    let mcfg = ModularConfig::default();
    let sigma = p.frac_part();
    let exponent = cfg.s / f64::from(cfg.n);
    let mut max_r = 0.0f64;
    let mut curve = Curve {
        name: "dilation-ratio".into(),
        columns: vec!["dilation".into(), "profile".into(), "ratio".into()],
        rows: Vec::new(),
    };
    // Small amplitude keeps the modular arguments inside the near-zero
    // branch of A, where the scaling argument's homogeneity is clean.
    for (pi, (name, u)) in default_profiles(&cfg.gallery, 0.003).into_iter().enumerate() {
        if u.is_zero() {
            continue; // 0/0 is skipped by the degenerate rule
        }
        let r_of = |v: &SampledFunction| -> Result<f64> {
            let j = gagliardo_modular(v, sigma, &a, 1.0, &mcfg)?;
            if !j.is_finite() || j.value() == 0.0 {
                return Err(Error::Precondition("degenerate modular".into()));
            }
            Ok(v.ess_sup() / j.value().powf(exponent))
        };
        let base = r_of(&u)?;
        max_r = max_r.max(base);
        curve.rows.push(vec![1.0, pi as f64, base]);
        for nn in [2.0f64, 4.0] {
            let ratio = r_of(&dilate_sample(&u, nn))? / base;
            curve.rows.push(vec![nn, pi as f64, ratio * base]);
            report.assertions.push(Assertion::relative(
                format!("ratio-invariance-{name}-N{nn}"),
                1.0,
                ratio,
                0.05,
                "analytic",
            ));
        }
        // Amplitude homogeneity: c stable when the amplitude scales by 10.
        let r_amp = r_of(&u.scaled(10.0))?;
        report.assertions.push(Assertion::relative(
            format!("amplitude-stability-{name}"),
            1.0,
            r_amp / base,
            0.10,
            "oracle",
        ));
    }
    report.fitted_constants.insert("max_ratio".into(), max_r);
    report.curves.push(curve);
    Ok(report.finish())
}

/// Smooth cutoff equal to 1 on [-1, 1] and 0 outside [-2, 2].
fn smooth_cutoff(x: f64) -> f64 {
    let r = x.abs();
    if r <= 1.0 {
        return 1.0;
    }
    if r >= 2.0 {
        return 0.0;
    }
    let eta = |t: f64| if t > 0.0 { (-1.0 / t).exp() } else { 0.0 };
    eta(2.0 - r) / (eta(2.0 - r) + eta(r - 1.0))
}

/// The s > n counterexample: `u_j(x) = j^{s-n} ξ(x/j)` has a j-independent
/// order-{s} modular of its derivative while `‖u_j‖_{L¹+L∞}` grows like
/// `j^{s-n}`, so no rearrangement-invariant space can receive the
/// embedding.
pub fn counterexample_high_smoothness(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    if cfg.s <= f64::from(cfg.n) {
        return Err(Error::Precondition(format!(
            "counterexample needs s > n, got s = {}, n = {}",
            cfg.s, cfg.n
        )));
    }
    let p = SpaceParams::new(cfg.n, cfg.s)?;
    let a = cfg.young_function(|| YoungFunction::pure_power(1.0, 1.0))?;
    let mut report = new_report("counterexample", cfg.seed);
    let mcfg = ModularConfig::default();
    let sigma = p.frac_part();
    let grow = cfg.s - f64::from(cfg.n);
    let mut base_modular = None;
    let mut curve = Curve {
        name: "growth".into(),
        columns: vec!["j".into(), "modular".into(), "l1-linf-norm".into()],
        rows: Vec::new(),
    };
    for j in [1u32, 2, 4, 8, 16, 32] {
        let jf = f64::from(j);
        let uj = sample_on_grid(
            |x: f64| jf.powf(grow) * smooth_cutoff(x / jf),
            -2.5 * jf,
            2.5 * jf,
            160,
        );
        let du = derivative_samples(&uj)?;
        let modular = gagliardo_modular(&du, sigma, &a, 1.0, &mcfg)?.value();
        let norm = l1_plus_linf_norm(&uj)?;
        curve.rows.push(vec![jf, modular, norm]);
        match base_modular {
            None => {
                base_modular = Some(modular);
                report.assertions.push(Assertion::at_least(
                    "base-norm-positive",
                    1e-12,
                    norm,
                    "definition",
                ));
            }
            Some(m1) => {
                report.assertions.push(Assertion::relative(
                    format!("modular-j-independent-j{j}"),
                    1.0,
                    modular / m1,
                    0.20,
                    "analytic",
                ));
            }
        }
        if j >= 4 {
            report.assertions.push(Assertion::at_least(
                format!("norm-growth-j{j}"),
                0.5,
                norm / jf.powf(grow),
                "analytic",
            ));
        }
    }
    if let Some(m1) = base_modular {
        report.fitted_constants.insert("base_modular".into(), m1);
    }
    report.curves.push(curve);
    Ok(report.finish())
}

/// Embedding-norm ratios: target norms divided by the fractional seminorm
/// stay bounded across the profile gallery, its dilates, and amplitudes.
pub fn verify_embedding_norms(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let p = SpaceParams::new(cfg.n, cfg.s)?;
    let a = cfg.young_function(|| spliced_powerlog(1.0, 1.5, 0.0, 3.0, 0.0))?;
    let regime = classify_growth(&a, &p)?;
    if regime.tag == RegimeTag::Inadmissible {
        return Err(Error::Precondition(
            "embedding norms need an admissible configuration".into(),
        ));
    }
    let bundle = TargetBundle::build(&a, &p)?;
    let mut report = new_report("embedding-norms", cfg.seed);
    let mcfg = ModularConfig::default();
    let mut orlicz_ratios: Vec<(String, f64)> = Vec::new();
    let mut inter_ratios: Vec<(String, f64)> = Vec::new();
    for (name, u0) in default_profiles(&cfg.gallery, 0.1) {
        for amp in [1.0f64, 5.0] {
            for dil in [1.0f64, 2.0] {
                if u0.is_zero() {
                    continue;
                }
                let u = dilate_sample(&u0.scaled(amp), dil);
                let sem = fractional_seminorm(&u, &p, &a, &mcfg)?;
                if !sem.is_finite() || sem.value() == 0.0 {
                    continue;
                }
                let orlicz = luxemburg_norm(&bundle.a_ns, &u).value();
                let inter = intersection_norm(&bundle.a_hat, &p, &u)?.sum_form;
                let tag = format!("{name}-a{amp}-d{dil}");
                orlicz_ratios.push((tag.clone(), orlicz / sem.value()));
                inter_ratios.push((tag, inter / sem.value()));
            }
        }
    }
    if orlicz_ratios.is_empty() {
        return Err(Error::Precondition("no usable gallery members".into()));
    }
    // Ratio stability: amplitude/dilation variants of the same profile move
    // the ratio by at most ±15% around the profile's own mean.
    for ratios in [&orlicz_ratios, &inter_ratios] {
        for (name, _) in default_profiles(&cfg.gallery, 0.1) {
            let vals: Vec<f64> = ratios
                .iter()
                .filter(|(t, _)| t.starts_with(&format!("{name}-")))
                .map(|(_, v)| *v)
                .collect();
            if vals.is_empty() {
                continue;
            }
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            for (i, v) in vals.iter().enumerate() {
                report.assertions.push(Assertion::relative(
                    format!(
                        "{}-ratio-stable-{name}-{i}",
                        if std::ptr::eq(ratios, &orlicz_ratios) { "orlicz" } else { "intersection" }
                    ),
                    1.0,
                    v / mean,
                    0.15,
                    "oracle",
                ));
            }
        }
    }
    // Doubling stability of the fitted constant: the max ratio over the
    // first half of the gallery is within tolerance of the max over all.
    let max_of = |rs: &[(String, f64)]| rs.iter().map(|(_, v)| *v).fold(0.0f64, f64::max);
    let half: Vec<(String, f64)> = orlicz_ratios[..orlicz_ratios.len() / 2].to_vec();
    let c_half = max_of(&half);
    let c_full = max_of(&orlicz_ratios);
    report.fitted_constants.insert("orlicz_constant".into(), c_full);
    report
        .fitted_constants
        .insert("intersection_constant".into(), max_of(&inter_ratios));
    report.assertions.push(Assertion::relative(
        "constant-stable-under-doubling",
        1.0,
        c_half / c_full,
        0.15,
        "oracle",
    ));
    // Target comparison: the intersection norm is dominated by a constant
    // multiple (depending only on n/s) of the Orlicz-target norm.
    let c_ns = 8.0f64.max(2.0 * f64::from(cfg.n) / cfg.s);
    for ((tag, o), (_, i)) in orlicz_ratios.iter().zip(inter_ratios.iter()) {
        report.assertions.push(Assertion::boolean(
            format!("intersection-dominated-{tag}"),
            *i <= c_ns * *o,
            "oracle",
        ));
    }
    Ok(report.finish())
}

/// Mollifier modular convergence: along the ε ladder the Gagliardo modular
/// of `(u_ε - u)/λ` decreases monotonically below the threshold for some λ
/// found by doubling.
pub fn run_mollifier_convergence(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let p = SpaceParams::new(cfg.n, cfg.s)?;
    let a = cfg.young_function(|| YoungFunction::pure_power(1.0, 2.0))?;
    let mut report = new_report("mollifier", cfg.seed);
    let mcfg = ModularConfig::default();
    let sigma = p.frac_part();
    let ladder = [0.3f64, 0.1, 0.03, 0.01, 0.003, 0.001];
    let threshold = 1e-2;
    let u = sample_on_grid(tent(0.0, 1.0, 1.0), -2.0, 2.0, 256);
    let sem = fractional_seminorm(&u, &p, &a, &mcfg)?.value();

    let run_ladder = |lambda: f64| -> Result<Option<Vec<f64>>> {
        let mut values = Vec::with_capacity(ladder.len());
        let mut prev = f64::INFINITY;
        for &eps in &ladder {
            let ue = mollify(&u, eps)?;
            let mut diff = ue.clone();
            for (d, orig) in diff.vs.iter_mut().zip(&u.vs) {
                *d -= *orig;
            }
            let m = gagliardo_modular(&diff, sigma, &a, lambda, &mcfg)?.value();
            if m > prev * 1.0001 {
                return Ok(None); // not monotone at this λ
            }
            prev = m;
            values.push(m);
        }
        if *values.last().expect("nonempty ladder") < threshold {
            Ok(Some(values))
        } else {
            Ok(None)
        }
    };

    let mut lambda = sem.max(1e-6);
    let mut found = None;
    for _ in 0..20 {
        if let Some(values) = run_ladder(lambda)? {
            found = Some((lambda, values));
            break;
        }
        lambda *= 2.0;
    }
    match found {
        None => {
            report.assertions.push(Assertion::boolean(
                "lambda-found-within-20-doublings",
                false,
                "oracle",
            ));
        }
        Some((lam, values)) => {
            report.fitted_constants.insert("lambda".into(), lam);
            report.assertions.push(Assertion::boolean(
                "lambda-found-within-20-doublings",
                true,
                "oracle",
            ));
            report.assertions.push(Assertion::boolean(
                "trend-monotone-decreasing",
                values.windows(2).all(|w| w[1] <= w[0] * 1.0001),
                "definition",
            ));
            let last = *values.last().expect("nonempty");
            report.assertions.push(Assertion::boolean(
                "final-modular-below-threshold",
                last < threshold,
                "oracle",
            ));
            report.curves.push(Curve {
                name: "ladder".into(),
                columns: vec!["epsilon".into(), "modular".into()],
                rows: ladder.iter().zip(values.iter()).map(|(e, m)| vec![*e, *m]).collect(),
            });
        }
    }
    // Constant functions mollify to themselves: modular exactly 0.
    let k = sample_on_grid(|_| 1.0, -2.0, 2.0, 64);
    let kk = mollify(&k, 0.1)?;
    let mut dk = kk.clone();
    for (d, orig) in dk.vs.iter_mut().zip(&k.vs) {
        *d -= *orig;
    }
    // Boundary cells see the zero extension; check the interior only.
    let interior_max = dk.vs[8..56].iter().cloned().fold(0.0f64, |m, v| m.max(v.abs()));
    report.assertions.push(Assertion::boolean(
        "constant-function-unchanged",
        interior_max < 1e-8,
        "definition",
    ));
    Ok(report.finish())
}

/// Dispatch by experiment id.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report> {
    match cfg.experiment.as_str() {
        "example-targets" => run_example_targets(cfg),
        "boundedness" => verify_boundedness(cfg),
        "counterexample" => counterexample_high_smoothness(cfg),
        "embedding-norms" => verify_embedding_norms(cfg),
        "mollifier" => run_mollifier_convergence(cfg),
        other => Err(Error::Precondition(format!("unknown experiment {other:?}"))),
    }
}
