//! Growth-regime classification: decide convergence of the improper
//! integrals `∫₀ (t/A(t))^{s/(n−s)} dt` (admissibility near zero) and
//! `∫^∞ (t/A(t))^{s/(n−s)} dt` (supercritical growth near infinity).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, LnValue};
use crate::quad::{fit_power_log, integrate_log, HeadModel};
use crate::space::SpaceParams;
use crate::young::{Form, LogEnd, YoungFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RegimeTag {
    Inadmissible,
    Subcritical,
    Supercritical,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Diagnostics {
    pub indisp_value: ExtReal,
    pub tail_value: ExtReal,
    pub local_exponent_zero: f64,
    pub local_exponent_inf: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Regime {
    pub tag: RegimeTag,
    pub diagnostics: Diagnostics,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    ExponentRule,
    AdaptiveTail,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConvergenceReport {
    pub converges: bool,
    pub value: ExtReal,
    pub method: Method,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Zero,
    Infinity,
}

const MARGIN: f64 = 0.05;

/// Decide convergence of `∫₀¹ g` (zero endpoint) or `∫₁^∞ g` (infinity),
/// given a log-scale evaluator of a nonnegative, eventually monotone `g`.
pub fn classify_endpoint_ln(
    g_ln: impl Fn(f64) -> LnValue,
    endpoint: Endpoint,
) -> Result<ConvergenceReport> {
    let (w_lo, w_hi) = match endpoint {
        Endpoint::Zero => ((1e-12f64).ln(), (1e-8f64).ln()),
        Endpoint::Infinity => ((1e8f64).ln(), (1e12f64).ln()),
    };
    // Sample the 4-decade window adjacent to the endpoint.
    let n = 64;
    let mut samples = Vec::with_capacity(n);
    let mut all_zero = true;
    for i in 0..n {
        let lt = w_lo + (w_hi - w_lo) * i as f64 / (n - 1) as f64;
        match g_ln(lt) {
            LnValue::Infinite => {
                return Ok(ConvergenceReport {
                    converges: false,
                    value: ExtReal::INFINITY,
                    method: Method::ExponentRule,
                })
            }
            LnValue::Zero => samples.push((lt, f64::NEG_INFINITY)),
            LnValue::Finite(v) => {
                all_zero = false;
                samples.push((lt, v));
            }
        }
    }
    if all_zero {
        // g vanishes near the endpoint: trivially integrable there.
        let value = integrate_core(&g_ln, endpoint, None);
        return Ok(ConvergenceReport {
            converges: true,
            value: ExtReal::new(value),
            method: Method::AdaptiveTail,
        });
    }
    if samples.iter().any(|&(_, v)| v == f64::NEG_INFINITY) {
        return Err(Error::Classification(
            "integrand vanishes on part of the endpoint window".into(),
        ));
    }
    // Eventual monotonicity: reject oscillation in the window.
    let mut flips = 0;
    let mut dir = 0i32;
    for w in samples.windows(2) {
        let d = w[1].1 - w[0].1;
        let s = if d > 1e-9 {
            1
        } else if d < -1e-9 {
            -1
        } else {
            0
        };
        if s != 0 {
            if dir != 0 && s != dir {
                flips += 1;
            }
            dir = s;
        }
    }
    if flips > 1 {
        return Err(Error::Classification(format!(
            "integrand not eventually monotone near the endpoint ({flips} direction changes)"
        )));
    }
    let (ln_c, e, b) = fit_power_log(&g_ln, w_lo, w_hi, 64)
        .ok_or_else(|| Error::Classification("local exponent fit failed".into()))?;
    let converges = match endpoint {
        Endpoint::Zero => {
            if e > -1.0 + MARGIN {
                true
            } else if e < -1.0 - MARGIN {
                false
            } else {
                dyadic_slice_verdict(&g_ln, endpoint)?
            }
        }
        Endpoint::Infinity => {
            if e < -1.0 - MARGIN {
                true
            } else if e > -1.0 + MARGIN {
                false
            } else {
                dyadic_slice_verdict(&g_ln, endpoint)?
            }
        }
    };
    if !converges {
        return Ok(ConvergenceReport {
            converges: false,
            value: ExtReal::INFINITY,
            method: Method::ExponentRule,
        });
    }
    let head = match endpoint {
        Endpoint::Zero => {
            if (e + 1.0).abs() <= MARGIN {
                Some(HeadModel::Log { ln_c, b })
            } else {
                Some(HeadModel::Power { ln_c, e, b })
            }
        }
        Endpoint::Infinity => None,
    };
    let mut value = integrate_core(&g_ln, endpoint, head);
    if endpoint == Endpoint::Infinity {
        // Extrapolated remainder beyond the upper cutoff.
        let t_hi: f64 = 1e12;
        if let LnValue::Finite(lg) = g_ln(t_hi.ln()) {
            if (e + 1.0).abs() <= MARGIN {
                // t^{-1} (ln t)^b with b < -1
                let l = t_hi.ln();
                value += ln_c.exp() * l.powf(b + 1.0) / (-b - 1.0);
            } else {
                value += (lg + t_hi.ln()).exp() / (-e - 1.0);
            }
        }
    }
    Ok(ConvergenceReport {
        converges: true,
        value: ExtReal::new(value),
        method: Method::AdaptiveTail,
    })
}

/// Plain-evaluator front end.
pub fn classify_endpoint_integral(
    g: impl Fn(f64) -> f64,
    endpoint: Endpoint,
) -> Result<ConvergenceReport> {
    classify_endpoint_ln(move |lt: f64| LnValue::from_value(g(lt.exp())), endpoint)
}

/// Core quadrature between the fixed cutoffs, plus the head mass at zero.
fn integrate_core(
    g_ln: &impl Fn(f64) -> LnValue,
    endpoint: Endpoint,
    head: Option<HeadModel>,
) -> f64 {
    let g = |t: f64| g_ln(t.ln()).to_value();
    match endpoint {
        Endpoint::Zero => {
            let core = integrate_log(g, 1e-12, 1.0, 16);
            core + head.map_or(0.0, |h| h.head(1e-12))
        }
        Endpoint::Infinity => integrate_log(g, 1.0, 1e12, 16),
    }
}

/// Borderline resolution: integrate dyadic slices toward the endpoint and
/// fit their decay in the slice index; slices behaving like `k^γ` sum
/// finitely iff γ < −1 (the harmonic benchmark is γ = −1).
fn dyadic_slice_verdict(g_ln: &impl Fn(f64) -> LnValue, endpoint: Endpoint) -> Result<bool> {
    let g = |t: f64| g_ln(t.ln()).to_value();
    let mut rows = Vec::new();
    for k in 8..40u32 {
        let (a, b) = match endpoint {
            Endpoint::Zero => (2f64.powi(-(k as i32 + 1)), 2f64.powi(-(k as i32))),
            Endpoint::Infinity => (2f64.powi(k as i32), 2f64.powi(k as i32 + 1)),
        };
        let s = integrate_log(g, a, b, 16);
        if s <= 0.0 {
            return Ok(true); // mass vanishes toward the endpoint
        }
        rows.push(((k as f64).ln(), s.ln()));
    }
    // Geometric behavior of the slices decides clearly off-harmonic powers:
    // slices of t^e shrink or grow by the fixed factor 2^{±(e+1)}.
    let m = rows.len();
    let mean_ratio = ((rows[m - 1].1 - rows[m - 17].1) / 16.0).exp();
    if mean_ratio < 0.99 {
        return Ok(true);
    }
    if mean_ratio > 1.01 {
        return Ok(false);
    }
    // least-squares slope of ln s against ln k
    let n = rows.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in &rows {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let gamma = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if gamma < -1.0 - MARGIN {
        Ok(true)
    } else if gamma > -1.0 + MARGIN {
        Ok(false)
    } else {
        Err(Error::Borderline(format!(
            "dyadic slice decay {gamma:.4} is indistinguishable from the harmonic threshold"
        )))
    }
}

/// Log-scale evaluator of the regime integrand `(t/A(t))^σ`.
pub fn regime_integrand(a: &YoungFunction, sigma: f64) -> impl Fn(f64) -> LnValue + '_ {
    move |lt: f64| match a.ln_eval(lt) {
        LnValue::Zero => LnValue::Infinite,
        LnValue::Infinite => LnValue::Zero,
        LnValue::Finite(v) => LnValue::Finite(sigma * (lt - v)),
    }
}

/// Exponent rule for a power-log piece `k t^p L^α`: the integrand is
/// `t^{σ(1−p)} L^{∓σα}`. Returns `(converges, e)` for the given endpoint,
/// or None when the rule does not apply to the piece.
fn powerlog_rule(form: &Form, sigma: f64, endpoint: Endpoint) -> Option<(bool, f64)> {
    let (p, alpha, log) = match *form {
        Form::PowerLog { p, alpha, log, .. } => (p, alpha, log),
        _ => return None,
    };
    let wrong_side = match endpoint {
        Endpoint::Zero => alpha != 0.0 && log != LogEnd::Zero,
        Endpoint::Infinity => alpha != 0.0 && log != LogEnd::Infinity,
    };
    if wrong_side {
        return None;
    }
    let e = sigma * (1.0 - p);
    let beta = -sigma * alpha;
    let conv = match endpoint {
        Endpoint::Zero => e > -1.0 || (e == -1.0 && beta < -1.0),
        Endpoint::Infinity => e < -1.0 || (e == -1.0 && beta < -1.0),
    };
    Some((conv, e))
}

/// Convergence of the admissibility integral `∫₀ (t/A(t))^σ dt`.
pub fn check_indisp(a: &YoungFunction, p: &SpaceParams) -> Result<ConvergenceReport> {
    let sigma = p.sigma()?;
    let g = regime_integrand(a, sigma);
    if let Some((conv, _)) = powerlog_rule(&a.pieces()[0].form, sigma, Endpoint::Zero) {
        if !conv {
            return Ok(ConvergenceReport {
                converges: false,
                value: ExtReal::INFINITY,
                method: Method::ClosedForm,
            });
        }
        let rep = classify_endpoint_ln(&g, Endpoint::Zero)?;
        return Ok(ConvergenceReport { converges: true, value: rep.value, method: Method::ClosedForm });
    }
    classify_endpoint_ln(&g, Endpoint::Zero)
}

/// Convergence of the growth integral `∫^∞ (t/A(t))^σ dt`.
pub fn check_tail(a: &YoungFunction, p: &SpaceParams) -> Result<ConvergenceReport> {
    let sigma = p.sigma()?;
    let g = regime_integrand(a, sigma);
    if let Some(th) = a.inf_threshold() {
        // A is +∞ on a terminal ray: the integrand vanishes there, so only
        // the finite stretch matters.
        let mid = 0.5 * (1.0 + th.max(1.0));
        if matches!(g(mid.ln()), LnValue::Infinite) {
            return Ok(ConvergenceReport {
                converges: false,
                value: ExtReal::INFINITY,
                method: Method::ClosedForm,
            });
        }
        let value = integrate_log(|t| g(t.ln()).to_value(), 1.0, th.max(1.0), 32);
        return Ok(ConvergenceReport {
            converges: true,
            value: ExtReal::new(value),
            method: Method::ClosedForm,
        });
    }
    let last = &a.pieces().last().expect("young function has pieces").form;
    if let Some((conv, _)) = powerlog_rule(last, sigma, Endpoint::Infinity) {
        if !conv {
            return Ok(ConvergenceReport {
                converges: false,
                value: ExtReal::INFINITY,
                method: Method::ClosedForm,
            });
        }
        let rep = classify_endpoint_ln(&g, Endpoint::Infinity)?;
        return Ok(ConvergenceReport { converges: true, value: rep.value, method: Method::ClosedForm });
    }
    classify_endpoint_ln(&g, Endpoint::Infinity)
}

fn local_exponent(g_ln: impl Fn(f64) -> LnValue, endpoint: Endpoint) -> f64 {
    let (w_lo, w_hi) = match endpoint {
        Endpoint::Zero => ((1e-12f64).ln(), (1e-8f64).ln()),
        Endpoint::Infinity => ((1e8f64).ln(), (1e12f64).ln()),
    };
    fit_power_log(g_ln, w_lo, w_hi, 64).map_or(f64::NAN, |(_, e, _)| e)
}

/// Full regime classification of a `(space, Young function)` pair.
pub fn classify_growth(a: &YoungFunction, p: &SpaceParams) -> Result<Regime> {
    let blank = Diagnostics {
        indisp_value: ExtReal::INFINITY,
        tail_value: ExtReal::INFINITY,
        local_exponent_zero: f64::NAN,
        local_exponent_inf: f64::NAN,
    };
    if !p.in_dimension_range() {
        return Ok(Regime { tag: RegimeTag::Inadmissible, diagnostics: blank });
    }
    let sigma = p.sigma()?;
    let g = regime_integrand(a, sigma);
    let e_zero = local_exponent(&g, Endpoint::Zero);
    let e_inf = local_exponent(&g, Endpoint::Infinity);
    let ind = check_indisp(a, p)?;
    if !ind.converges {
        return Ok(Regime {
            tag: RegimeTag::Inadmissible,
            diagnostics: Diagnostics {
                indisp_value: ExtReal::INFINITY,
                tail_value: ExtReal::INFINITY,
                local_exponent_zero: e_zero,
                local_exponent_inf: e_inf,
            },
        });
    }
    let tail = check_tail(a, p)?;
    Ok(Regime {
        tag: if tail.converges { RegimeTag::Supercritical } else { RegimeTag::Subcritical },
        diagnostics: Diagnostics {
            indisp_value: ind.value,
            tail_value: tail.value,
            local_exponent_zero: e_zero,
            local_exponent_inf: e_inf,
        },
    })
}
