//! The Hardy-type operator of the one-dimensional reduction principle and
//! its kernel-norm and constant-estimation checks.
//!
//! The reduction principle trades the n-dimensional embedding question for
//! boundedness of
//!
//! ```text
//! (H f)(r) = ∫_r^∞ f(ρ) ρ^{-1 + s/n} dρ
//! ```
//!
//! from an Orlicz space on the half-line into the candidate target space.
//! Step-function trials keep the Hardy integral exact (power-function
//! antiderivatives), so the constant estimates carry no quadrature error.

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, LnValue};
use crate::functions::{intersection_norm, luxemburg_norm, SampledFunction};
use crate::functions::Domain;
use crate::quad::{fit_power_log, integrate_log};
use crate::space::SpaceParams;
use crate::young::YoungFunction;

/// The kernel `ρ^{-1 + s/n}` of the reduction operator.
#[derive(Debug, Clone, Copy)]
pub struct HardyKernel {
    pub p: SpaceParams,
}

impl HardyKernel {
    pub fn new(p: SpaceParams) -> Result<HardyKernel> {
        if !p.in_dimension_range() {
            return Err(Error::Precondition(format!(
                "kernel exponent needs s in (0, n); got s = {}, n = {}",
                p.s, p.n
            )));
        }
        Ok(HardyKernel { p })
    }

    /// The kernel exponent `-1 + s/n`, in (-1, 0).
    pub fn exponent(&self) -> f64 {
        self.p.s / f64::from(self.p.n) - 1.0
    }
}

/// `(H f)(r) = ∫_r^∞ f(ρ) ρ^{-1+s/n} dρ` for a step function f, evaluated
/// exactly with the antiderivative `ρ^{s/n} · n/s` on each cell.
pub fn hardy_operator(f: &SampledFunction, p: &SpaceParams, r: f64) -> Result<f64> {
    if !matches!(f.domain, Domain::HalfLine) {
        return Err(Error::Precondition(
            "Hardy operator expects a half-line sample".into(),
        ));
    }
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("radius must be nonnegative, got {r}")));
    }
    if f.vs.iter().any(|&v| v < 0.0) {
        return Err(Error::Precondition("trial must be nonnegative".into()));
    }
    let e = p.s / f64::from(p.n); // antiderivative exponent, > 0
    let mut acc = 0.0;
    for (i, &v) in f.vs.iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        let a = f.xs[i].max(r);
        let b = f.xs[i + 1];
        if b > a {
            acc += v * (b.powf(e) - a.powf(e)) / e;
        }
    }
    Ok(acc)
}

/// Luxemburg norm of the kernel `r ↦ r^{-1+s/n}` on (0, ∞) with respect to
/// the conjugate of A.
///
/// Both endpoints of the modular integral are improper: near zero the
/// argument blows up, near infinity it vanishes. The integral is closed
/// with local power fits at both ends; if either end diverges for every
/// scaling the norm is +∞ — which, per the reduction principle, happens
/// exactly when `∫₀^∞ (t/A(t))^{s/(n-s)} dt` diverges.
pub fn kernel_conjugate_norm(a: &YoungFunction, p: &SpaceParams) -> Result<ExtReal> {
    let kernel = HardyKernel::new(*p)?;
    let q = kernel.exponent();
    let conj = a.conjugate()?;
    // The kernel argument r^q/λ grows without bound as r → 0, so any
    // infinite ray of the conjugate makes the modular +∞ for every λ.
    if conj.inf_threshold().is_some() {
        return Ok(ExtReal::INFINITY);
    }

    // Substituting t = r^q/λ collapses the modular to a λ-free integral:
    //   ∫₀^∞ Ã(r^q/λ) dr = (1/|q|) λ^{1/q} ∫₀^∞ Ã(t) t^{1/q - 1} dt,
    // so with I = ∫ Ã(t) t^{1/q-1} dt the Luxemburg norm is (I/|q|)^{-q},
    // finite exactly when I is.
    let w = 1.0 / q - 1.0; // 1/q < 0 for s in (0, n)
    let g_ln = |ln_t: f64| match conj.ln_eval(ln_t) {
        LnValue::Zero => LnValue::Zero,
        LnValue::Finite(lv) => LnValue::Finite(lv + w * ln_t),
        LnValue::Infinite => LnValue::Infinite,
    };
    let probe = |t: f64| -> f64 {
        match g_ln(t.ln()) {
            LnValue::Zero => 0.0,
            LnValue::Finite(lv) => lv.exp(),
            LnValue::Infinite => f64::NAN,
        }
    };
    let (t_lo, t_hi) = (1e-12f64, 1e12f64);
    // Head on (0, t_lo]: g ~ c t^e (ln 1/t)^b; the head integral converges
    // iff e > -1, or e = -1 with b < -1.
    let head = if probe(t_lo) == 0.0 && probe(t_lo * 1e4) == 0.0 {
        0.0
    } else {
        match fit_power_log(g_ln, t_lo.ln(), (t_lo * 1e4).ln(), 33) {
            None => return Ok(ExtReal::INFINITY),
            Some((_, e, b)) => {
                if e > -1.0 + 0.02 {
                    probe(t_lo) * t_lo / (e + 1.0)
                } else if e > -1.0 - 0.02 && b < -1.0 {
                    probe(t_lo) * t_lo * (-t_lo.ln()) / (-b - 1.0)
                } else {
                    return Ok(ExtReal::INFINITY);
                }
            }
        }
    };
    // Tail on [t_hi, ∞): converges iff e < -1, or e = -1 with b < -1.
    let tail = if probe(t_hi) == 0.0 && probe(t_hi * 1e-4) == 0.0 {
        0.0
    } else {
        match fit_power_log(g_ln, (t_hi * 1e-4).ln(), t_hi.ln(), 33) {
            None => return Ok(ExtReal::INFINITY),
            Some((_, e, b)) => {
                if e < -1.0 - 0.02 {
                    probe(t_hi) * t_hi / (-e - 1.0)
                } else if e < -1.0 + 0.02 && b < -1.0 {
                    probe(t_hi) * t_hi * t_hi.ln() / (-b - 1.0)
                } else {
                    return Ok(ExtReal::INFINITY);
                }
            }
        }
    };
    let core = integrate_log(|t| probe(t), t_lo, t_hi, 16);
    let total = head + core + tail;
    if total.is_nan() || total.is_infinite() {
        return Ok(ExtReal::INFINITY);
    }
    Ok(ExtReal::new((total / q.abs()).powf(-q)))
}

/// The three target functionals of the reduction principle.
pub enum TargetNorm {
    /// Essential supremum.
    LInf,
    /// Luxemburg norm of the supplied Young function.
    Orlicz(YoungFunction),
    /// Intersection-space norm built from Â (sum form).
    Intersection { a_hat: YoungFunction },
}

/// Samples `H f` on a half-line grid refined toward the origin, where the
/// Hardy output varies fastest.
fn sample_hardy_output(
    f: &SampledFunction,
    p: &SpaceParams,
    cells: usize,
) -> Result<SampledFunction> {
    let x_max = *f.xs.last().expect("nonempty grid");
    // Geometric edges from x_max·1e-8 up to x_max, with a leading cell
    // touching the origin.
    let lo = x_max * 1e-8;
    let mut xs = vec![0.0, lo];
    for i in 1..=cells {
        xs.push(lo * (x_max / lo).powf(i as f64 / cells as f64));
    }
    let mut vs = Vec::with_capacity(xs.len() - 1);
    for w in xs.windows(2) {
        let mid = if w[0] == 0.0 { 0.5 * w[1] } else { (w[0] * w[1]).sqrt() };
        vs.push(hardy_operator(f, p, mid)?);
    }
    SampledFunction::new(Domain::HalfLine, xs, vs)
}

fn apply_target(target: &TargetNorm, p: &SpaceParams, hf: &SampledFunction) -> Result<ExtReal> {
    match target {
        TargetNorm::LInf => Ok(ExtReal::new(hf.ess_sup())),
        TargetNorm::Orlicz(b) => Ok(luxemburg_norm(b, hf)),
        TargetNorm::Intersection { a_hat } => {
            Ok(ExtReal::new(intersection_norm(a_hat, p, hf)?.sum_form))
        }
    }
}

/// Max over trials of `target_norm(H f) / ‖f‖_{L^A}` — a lower bound on the
/// best constant of the reduction inequality. Trials with a zero or
/// infinite denominator are skipped.
pub fn reduction_constant_estimate(
    a: &YoungFunction,
    p: &SpaceParams,
    target: &TargetNorm,
    trials: &[SampledFunction],
) -> Result<f64> {
    let mut best = 0.0f64;
    for f in trials {
        let denom = luxemburg_norm(a, f);
        if denom.value() == 0.0 || denom.is_infinite() {
            continue;
        }
        let hf = match target {
            // ess-sup of H f is its value at 0; no resampling needed.
            TargetNorm::LInf => {
                let v = hardy_operator(f, p, 0.0)?;
                best = best.max(v / denom.value());
                continue;
            }
            _ => sample_hardy_output(f, p, 256)?,
        };
        let num = apply_target(target, p, &hf)?;
        if num.is_infinite() {
            return Ok(f64::INFINITY);
        }
        best = best.max(num.value() / denom.value());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{spliced_powerlog, young_gallery};
    use crate::regime::{classify_growth, RegimeTag};

    fn chi01() -> SampledFunction {
        SampledFunction::new(Domain::HalfLine, vec![0.0, 1.0, 2.0], vec![1.0, 0.0]).expect("valid")
    }

    fn params() -> SpaceParams {
        SpaceParams::new(1, 0.5).expect("valid")
    }

    #[test]
    fn hardy_closed_forms_on_indicator() {
        let p = params();
        let f = chi01();
        // ∫_r^1 ρ^{-1/2} dρ = 2(1 - √r)
        assert!((hardy_operator(&f, &p, 0.25).expect("ok") - 1.0).abs() < 1e-12);
        assert!((hardy_operator(&f, &p, 0.0).expect("ok") - 2.0).abs() < 1e-12);
        assert_eq!(hardy_operator(&f, &p, 1.5).expect("ok"), 0.0);
    }

    #[test]
    fn hardy_linear_and_monotone_in_r() {
        let p = params();
        let f = SampledFunction::new(
            Domain::HalfLine,
            vec![0.0, 0.5, 1.0, 3.0],
            vec![2.0, 0.5, 1.0],
        )
        .expect("valid");
        let g = SampledFunction::new(
            Domain::HalfLine,
            vec![0.0, 0.5, 1.0, 3.0],
            vec![1.0, 3.0, 0.0],
        )
        .expect("valid");
        let combo = SampledFunction::new(
            Domain::HalfLine,
            vec![0.0, 0.5, 1.0, 3.0],
            vec![2.0 * 2.0 + 3.0 * 1.0, 2.0 * 0.5 + 3.0 * 3.0, 2.0],
        )
        .expect("valid");
        let mut prev = f64::INFINITY;
        for r in [0.0, 0.1, 0.4, 0.9, 2.0, 5.0] {
            let hf = hardy_operator(&f, &p, r).expect("ok");
            let hg = hardy_operator(&g, &p, r).expect("ok");
            let hc = hardy_operator(&combo, &p, r).expect("ok");
            assert!((hc - (2.0 * hf + 3.0 * hg)).abs() < 1e-10, "linearity at r={r}");
            assert!(hf <= prev + 1e-14, "monotone at r={r}");
            prev = hf;
        }
    }

    #[test]
    fn kernel_norm_finite_exactly_on_full_line_convergence() {
        let p = params();
        // Globally supercritical and admissible: finite.
        let good = spliced_powerlog(1.0, 1.5, 0.0, 3.0, 0.0).expect("valid");
        let norm = kernel_conjugate_norm(&good, &p).expect("ok");
        assert!(norm.is_finite(), "spliced t^1.5 → t^3 should give a finite norm");
        // Globally subcritical: the tail of the full-line integral diverges.
        let sub = YoungFunction::pure_power(1.0, 1.5).expect("valid");
        assert!(kernel_conjugate_norm(&sub, &p).expect("ok").is_infinite());
        // Inadmissible near zero: the head diverges.
        let inadm = YoungFunction::pure_power(1.0, 3.0).expect("valid");
        assert!(kernel_conjugate_norm(&inadm, &p).expect("ok").is_infinite());
    }

    #[test]
    fn kernel_norm_agrees_with_regime_classification_on_gallery() {
        let p = params();
        for entry in young_gallery() {
            let regime = classify_growth(&entry.young, &p).expect("classify");
            // The full-line integral converges exactly when both the head
            // (admissibility) and the tail (supercriticality) converge.
            let full_line_converges = regime.tag == RegimeTag::Supercritical;
            let norm = kernel_conjugate_norm(&entry.young, &p).expect("norm");
            assert_eq!(
                norm.is_finite(),
                full_line_converges,
                "{}: norm {} vs regime {:?}",
                entry.name,
                norm,
                regime.tag
            );
        }
    }

    #[test]
    fn linf_estimate_bounded_by_twice_kernel_norm() {
        let p = params();
        let a = spliced_powerlog(1.0, 1.5, 0.0, 3.0, 0.0).expect("valid");
        let kn = kernel_conjugate_norm(&a, &p).expect("ok").value();
        let trials: Vec<SampledFunction> = (1..=6)
            .map(|k| {
                let w = 1.0 / k as f64;
                SampledFunction::new(
                    Domain::HalfLine,
                    vec![0.0, w, w + 1.0],
                    vec![k as f64, 0.0],
                )
                .expect("valid")
            })
            .collect();
        let est =
            reduction_constant_estimate(&a, &p, &TargetNorm::LInf, &trials).expect("ok");
        assert!(est > 0.0);
        assert!(
            est <= 2.0 * kn + 1e-9,
            "estimate {est} exceeds Hölder bound {}",
            2.0 * kn
        );
    }

    #[test]
    fn single_indicator_trial_matches_hand_ratio() {
        let p = params();
        let a = YoungFunction::pure_power(1.0, 2.0).expect("valid");
        // ‖χ_(0,1)‖_{L^A} with A(t)=t²: modular (1/λ)² ≤ 1 ⇒ λ = 1.
        let est = reduction_constant_estimate(&a, &p, &TargetNorm::LInf, &[chi01()])
            .expect("ok");
        assert!((est - 2.0).abs() < 1e-10, "H χ(0) = n/s = 2, denom 1: {est}");
    }

    #[test]
    fn subcritical_spike_family_grows() {
        // For a subcritical A the L∞ estimate grows without bound along
        // spikes f_k = χ_(0,1/k) · A⁻¹(k).
        let p = params();
        let a = YoungFunction::pure_power(1.0, 1.5).expect("valid");
        let spike = |k: f64| {
            let amp = k.powf(1.0 / 1.5); // A⁻¹(k) for A(t)=t^1.5
            SampledFunction::new(
                Domain::HalfLine,
                vec![0.0, 1.0 / k, 1.0 / k + 1.0],
                vec![amp, 0.0],
            )
            .expect("valid")
        };
        let e1 = reduction_constant_estimate(&a, &p, &TargetNorm::LInf, &[spike(4.0)])
            .expect("ok");
        let e2 = reduction_constant_estimate(&a, &p, &TargetNorm::LInf, &[spike(64.0)])
            .expect("ok");
        let e3 = reduction_constant_estimate(&a, &p, &TargetNorm::LInf, &[spike(1024.0)])
            .expect("ok");
        assert!(e2 > 1.5 * e1, "{e1} → {e2}");
        assert!(e3 > 1.5 * e2, "{e2} → {e3}");
    }
}
