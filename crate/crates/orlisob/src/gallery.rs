//! Ready-made Young functions and sample profiles used by experiments and
//! tests: a power-log splice builder and a mixed-regime gallery.

use crate::error::{Error, Result};
use crate::functions::{Domain, SampledFunction};
use crate::young::{Form, LogEnd, Piece, YoungFunction};

/// Splice a Young function from prescribed behavior near zero
/// (`k0 t^{p0} (ln 1/t)^{a0}`) and near infinity (`t^{p1} (ln t)^{a1}`),
/// joined by a pure-power bridge. The bridge exponent is the mean of the
/// local exponents at the two joints; the splice is only convex when the
/// exponent can increase across each joint, and the builder rejects
/// parameter sets where it cannot.
pub fn spliced_powerlog(k0: f64, p0: f64, a0: f64, p1: f64, a1: f64) -> Result<YoungFunction> {
    if a0 == 0.0 && a1 == 0.0 && (p0 - p1).abs() < 1e-12 {
        return YoungFunction::pure_power(k0, p0);
    }
    let l_lo = 2.0 + a0.abs();
    let l_hi = 2.0 + a1.abs();
    let t_lo = (-l_lo).exp();
    let t_hi = l_hi.exp();
    let q_lo = p0 - a0 / l_lo; // local exponent of the zero piece at t_lo
    let q_hi = p1 + a1 / l_hi; // local exponent of the infinity piece at t_hi
    let p_b = (0.5 * (q_lo + q_hi)).max(1.0);
    if p_b < q_lo - 1e-9 || p_b > q_hi + 1e-9 {
        return Err(Error::InvalidYoung(format!(
            "splice of exponents {q_lo:.3} -> {q_hi:.3} cannot stay convex"
        )));
    }
    let mut pieces = Vec::new();
    pieces.push(Piece { from: 0.0, form: Form::PowerLog { k: k0, p: p0, alpha: a0, log: LogEnd::Zero } });
    pieces.push(Piece { from: t_lo, form: Form::PowerLog { k: 1.0, p: p_b, alpha: 0.0, log: LogEnd::Zero } });
    pieces.push(Piece { from: t_hi, form: Form::PowerLog { k: 1.0, p: p1, alpha: a1, log: LogEnd::Infinity } });
    YoungFunction::new(pieces, None)
}

/// A labelled Young function with its expected classification for the
/// space with n/s = 2 (n = 1, s = 1/2).
pub struct GalleryEntry {
    pub name: &'static str,
    pub young: YoungFunction,
    pub admissible: bool,
    pub supercritical: bool,
}

/// Twelve functions mixing the three regimes for n/s = 2.
pub fn young_gallery() -> Vec<GalleryEntry> {
    let e = |name, young, admissible, supercritical| GalleryEntry {
        name,
        young,
        admissible,
        supercritical,
    };
    vec![
        e("power-1.2", YoungFunction::pure_power(1.0, 1.2).unwrap(), true, false),
        e("power-1.5", YoungFunction::pure_power(2.0, 1.5).unwrap(), true, false),
        e("power-1.9", YoungFunction::pure_power(1.0, 1.9).unwrap(), true, false),
        e("sub-to-super", spliced_powerlog(1.0, 1.5, 0.0, 3.0, 0.0).unwrap(), true, true),
        // p₀ = n/s with a strong log: admissible; cubic tail: supercritical
        e("critical-log-strong", spliced_powerlog(1.0, 2.0, 2.0, 3.0, 0.0).unwrap(), true, true),
        // p₀ = n/s with a weak log (α₀ = 0.5 < n/s − 1): inadmissible
        e("critical-log-weak", spliced_powerlog(1.0, 2.0, 0.5, 3.0, 0.0).unwrap(), false, false),
        // critical tail with a strong log: supercritical by the log rule
        e("critical-tail-log", spliced_powerlog(1.0, 1.5, 0.0, 2.0, 2.0).unwrap(), true, true),
        // critical tail with a weak log: subcritical
        e("critical-tail-log-weak", spliced_powerlog(1.0, 1.5, 0.0, 2.0, 0.5).unwrap(), true, false),
        e("power-3", YoungFunction::pure_power(1.0, 3.0).unwrap(), false, false),
        e("linear-to-cubic", spliced_powerlog(1.0, 1.0, 0.0, 3.0, 0.0).unwrap(), true, true),
        e("linear", YoungFunction::pure_power(1.0, 1.0).unwrap(), true, false),
        e("linf-type", YoungFunction::linf_type(1.0).unwrap(), false, false),
    ]
}

// ---- sample profiles -------------------------------------------------------

/// `amp · max(0, 1 − |x−c|/w)`.
pub fn tent(c: f64, w: f64, amp: f64) -> impl Fn(f64) -> f64 {
    move |x: f64| amp * (1.0 - ((x - c) / w).abs()).max(0.0)
}

/// Smooth bump `amp · exp(1 − 1/(1−((x−c)/w)²))` supported on (c−w, c+w).
pub fn bump(c: f64, w: f64, amp: f64) -> impl Fn(f64) -> f64 {
    move |x: f64| {
        let y = (x - c) / w;
        if y.abs() >= 1.0 {
            0.0
        } else {
            amp * (1.0 - 1.0 / (1.0 - y * y)).exp()
        }
    }
}

/// Gaussian truncated at |x−c| = 4w.
pub fn truncated_gaussian(c: f64, w: f64, amp: f64) -> impl Fn(f64) -> f64 {
    move |x: f64| {
        let y = (x - c) / w;
        if y.abs() >= 4.0 {
            0.0
        } else {
            amp * (-0.5 * y * y).exp()
        }
    }
}

/// Sample a profile on a uniform 1-D grid with cell-midpoint values.
pub fn sample_on_grid(f: impl Fn(f64) -> f64, lo: f64, hi: f64, m: usize) -> SampledFunction {
    let xs: Vec<f64> = (0..=m).map(|i| lo + (hi - lo) * i as f64 / m as f64).collect();
    let vs: Vec<f64> = (0..m).map(|i| f(0.5 * (xs[i] + xs[i + 1]))).collect();
    SampledFunction::new(Domain::Grid1D, xs, vs).expect("uniform grid is valid")
}

/// Sample a radial profile on a uniform radius grid.
pub fn sample_radial(f: impl Fn(f64) -> f64, n: u32, r_max: f64, m: usize) -> SampledFunction {
    let xs: Vec<f64> = (0..=m).map(|i| r_max * i as f64 / m as f64).collect();
    let vs: Vec<f64> = (0..m).map(|i| f(0.5 * (xs[i] + xs[i + 1]))).collect();
    SampledFunction::new(Domain::RadialProfile { n }, xs, vs).expect("uniform grid is valid")
}
