//! Gagliardo-type modulars, the fractional seminorm, difference-quotient
//! modulars, and mollifier smoothing for 1-D sampled functions.
//!
//! The central object is the modular
//!
//! ```text
//! J_{σ,A}(u; λ) = ∬ A(|u(x) − u(y)| / (λ |x − y|^σ)) dx dy / |x − y|
//! ```
//!
//! evaluated on the piecewise-linear interpolant of a `SampledFunction`.
//! After substituting y = x + h the double integral becomes
//! `2 ∫₀^∞ g(h) dh/h` with `g(h) = ∫ A(|u(x+h) − u(x)| / (λ h^σ)) dx`,
//! which we compute on a logarithmic h-grid whose endpoints are tied to the
//! sample's cell width and span. Keeping the grid scale-relative makes the
//! quadrature commute exactly with dilations `u(·/N)`, so the change-of-
//! variables identity `J(u(·/N); λ) = N · J(u; λ N^σ)` holds to machine
//! accuracy rather than merely to quadrature accuracy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, LnValue};
use crate::functions::{Domain, SampledFunction};
use crate::monotone::bisect_infimum;
use crate::space::SpaceParams;
use crate::young::YoungFunction;

/// Quadrature settings for the tensor evaluation of the modular.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Panels per decade on the logarithmic h-grid; must be at least 16.
    pub resolution: usize,
    /// Near-diagonal split radius in units of the grid cell width; the
    /// region `h < split_radius · cell` is covered by a power-law head fit
    /// instead of raw panels. Must be positive.
    pub split_radius: f64,
}

/// Monte-Carlo settings for the cross-check estimator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub samples: usize,
    pub seed: u64,
}

/// Combined configuration for modular evaluation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModularConfig {
    pub quadrature: QuadratureConfig,
    pub montecarlo: MonteCarloConfig,
}

impl Default for ModularConfig {
    fn default() -> ModularConfig {
        ModularConfig {
            quadrature: QuadratureConfig {
                resolution: 16,
                split_radius: 1.0,
            },
            montecarlo: MonteCarloConfig {
                samples: 200_000,
                seed: 0x5EED,
            },
        }
    }
}

impl ModularConfig {
    pub fn validate(&self) -> Result<()> {
        if self.quadrature.resolution < 16 {
            return Err(Error::Precondition(
                "quadrature resolution must be at least 16".into(),
            ));
        }
        if !(self.quadrature.split_radius > 0.0) {
            return Err(Error::Precondition(
                "split radius must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Continuous piecewise-linear interpolant of a 1-D sample.
///
/// Nodes sit at the cell midpoints (where `sample_on_grid` evaluates the
/// profile), with flat half-cells out to the boundary edges and zero
/// beyond. Samples that vanish near the boundary therefore extend by zero,
/// and tent-shaped profiles are reproduced exactly.
struct PwLinear {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PwLinear {
    fn from_sample(u: &SampledFunction) -> PwLinear {
        let edges = &u.xs;
        let vals = &u.vs;
        let m = vals.len();
        let mut xs = Vec::with_capacity(m + 2);
        let mut ys = Vec::with_capacity(m + 2);
        xs.push(edges[0]);
        ys.push(vals[0]);
        for i in 0..m {
            xs.push(0.5 * (edges[i] + edges[i + 1]));
            ys.push(vals[i]);
        }
        xs.push(edges[m]);
        ys.push(vals[m - 1]);
        PwLinear { xs, ys }
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] || x >= self.xs[n - 1] {
            // Zero extension; exact for profiles vanishing at the boundary.
            if x == self.xs[0] {
                return self.ys[0];
            }
            if x == self.xs[n - 1] {
                return self.ys[n - 1];
            }
            return 0.0;
        }
        let j = match self
            .xs
            .binary_search_by(|a| a.partial_cmp(&x).expect("no NaN grid"))
        {
            Ok(j) => return self.ys[j],
            Err(j) => j,
        };
        let (x0, x1) = (self.xs[j - 1], self.xs[j]);
        let (y0, y1) = (self.ys[j - 1], self.ys[j]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    fn span(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().expect("nonempty"))
    }

    fn min_segment(&self) -> f64 {
        self.xs
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
            .max(1e-300)
    }
}

// 4-point Gauss-Legendre rule on [-1, 1]; enough for the piecewise-smooth
// inner integrands once the breakpoints are honoured.
const GL4_X: [f64; 4] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_3,
    0.339_981_043_584_856_3,
    0.861_136_311_594_052_6,
];
const GL4_W: [f64; 4] = [
    0.347_854_845_137_453_9,
    0.652_145_154_862_546_1,
    0.652_145_154_862_546_1,
    0.347_854_845_137_453_9,
];

fn gl4(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut acc = 0.0;
    for k in 0..4 {
        acc += GL4_W[k] * f(c + r * GL4_X[k]);
    }
    acc * r
}

/// Inner integral `g(h) = ∫ A(scale · |u(x+h) − u(x)| / h^σ) dx`.
///
/// The integrand is piecewise smooth with kinks where `x` or `x + h`
/// crosses an interpolation node, so we integrate exactly between the
/// merged breakpoints. Returns `None` when the Young function hits its
/// infinite ray anywhere on the window (the modular is then +∞).
fn inner_integral(
    u: &PwLinear,
    a: &YoungFunction,
    sigma: f64,
    ln_scale: f64,
    h: f64,
) -> Option<f64> {
    let (lo, hi) = u.span();
    let ln_h = h.ln();
    let arg_ln_shift = ln_scale - sigma * ln_h;
    // Merge breakpoints from the two shifted copies of the node set.
    let mut brk: Vec<f64> = Vec::with_capacity(2 * u.xs.len() + 2);
    for &x in &u.xs {
        if x > lo - h && x < hi {
            brk.push(x);
        }
        let xm = x - h;
        if xm > lo - h && xm < hi {
            brk.push(xm);
        }
    }
    brk.push(lo - h);
    brk.push(hi);
    brk.sort_by(|p, q| p.partial_cmp(q).expect("no NaN breakpoints"));
    brk.dedup_by(|p, q| (*p - *q).abs() < 1e-15 * h.max(1.0));

    let mut infinite = false;
    let f = |x: f64| {
        let d = (u.eval(x + h) - u.eval(x)).abs();
        if d == 0.0 {
            return 0.0;
        }
        match a.ln_eval(d.ln() + arg_ln_shift) {
            LnValue::Zero => 0.0,
            LnValue::Finite(lv) => lv.exp(),
            LnValue::Infinite => f64::INFINITY,
        }
    };
    let mut total = 0.0;
    for w in brk.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let v = gl4(&f, w[0], w[1]);
        if !v.is_finite() {
            infinite = true;
            break;
        }
        total += v;
    }
    if infinite {
        None
    } else {
        Some(total)
    }
}

/// One-sided modular `∫₀^∞ g(h) dh/h` with
/// `g(h) = ∫ A(scale · |u(x+h) − u(x)| / h^σ) dx`.
///
/// The h-grid runs over `[split · cell, span · 10⁴]` with a fixed panel
/// count per decade; the head below the split and the tail above the cap
/// are closed off by local power-law fits. All grid parameters scale with
/// the sample, so dilating the sample dilates the quadrature exactly.
fn one_sided_modular(
    u: &SampledFunction,
    sigma: f64,
    a: &YoungFunction,
    scale: f64,
    cfg: &ModularConfig,
) -> Result<ExtReal> {
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::Domain(format!(
            "smoothness order must lie in (0, 1), got {sigma}"
        )));
    }
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Domain(format!(
            "modular scale must be positive and finite, got {scale}"
        )));
    }
    cfg.validate()?;
    match u.domain {
        Domain::Grid1D | Domain::HalfLine => {}
        Domain::RadialProfile { .. } => {
            return Err(Error::Precondition(
                "Gagliardo modular supports 1-D grids only; resample the radial profile".into(),
            ))
        }
    }
    let vmax = u.vs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let vmin = u.vs.iter().cloned().fold(f64::INFINITY, f64::min);
    if vmax - vmin <= 0.0 {
        return Ok(ExtReal::ZERO);
    }

    let pw = PwLinear::from_sample(u);
    let (lo, hi) = pw.span();
    let span = hi - lo;
    let ln_scale = scale.ln();
    let h_lo = cfg.quadrature.split_radius * pw.min_segment();
    let h_hi = span * 1e4;
    let g = |h: f64| inner_integral(&pw, a, sigma, ln_scale, h);

    // Core: fixed panels per decade in ln h, 4-point rule per panel.
    let decades = (h_hi / h_lo).log10();
    let panels = (decades * cfg.quadrature.resolution as f64).ceil().max(1.0) as usize;
    let (ln_lo, ln_hi) = (h_lo.ln(), h_hi.ln());
    let step = (ln_hi - ln_lo) / panels as f64;
    let mut core = 0.0;
    for i in 0..panels {
        let a0 = ln_lo + i as f64 * step;
        let b0 = a0 + step;
        let c = 0.5 * (a0 + b0);
        let r = 0.5 * (b0 - a0);
        for k in 0..4 {
            match g((c + r * GL4_X[k]).exp()) {
                Some(v) => core += GL4_W[k] * r * v,
                None => return Ok(ExtReal::INFINITY),
            }
        }
    }

    // Head below the split: the interpolant is Lipschitz, so
    // g(h) ~ c h^{(1-σ)p₀} there; fit the exponent from two probes and
    // close the integral ∫₀^{h_lo} c h^{e} dh/h = g(h_lo)/e.
    let g_lo = match g(h_lo) {
        Some(v) => v,
        None => return Ok(ExtReal::INFINITY),
    };
    let head = if g_lo > 0.0 {
        let g_lo2 = match g(h_lo / 4.0) {
            Some(v) => v,
            None => return Ok(ExtReal::INFINITY),
        };
        if g_lo2 > 0.0 {
            let e = (g_lo / g_lo2).ln() / 4f64.ln();
            if e > 1e-9 {
                g_lo / e
            } else {
                return Ok(ExtReal::INFINITY);
            }
        } else {
            0.0
        }
    } else {
        0.0
    };

    // Tail above the cap: u has bounded support, so g decays like a power
    // of h; close with ∫_{h_hi}^∞ c h^{e} dh/h = g(h_hi)/(-e).
    let g_hi = match g(h_hi) {
        Some(v) => v,
        None => return Ok(ExtReal::INFINITY),
    };
    let tail = if g_hi > 0.0 {
        let g_hi2 = match g(h_hi * 4.0) {
            Some(v) => v,
            None => return Ok(ExtReal::INFINITY),
        };
        if g_hi2 > 0.0 {
            let e = (g_hi2 / g_hi).ln() / 4f64.ln();
            if e < -1e-9 {
                g_hi / -e
            } else {
                return Ok(ExtReal::INFINITY);
            }
        } else {
            0.0
        }
    } else {
        0.0
    };

    Ok(ExtReal::new(core + head + tail))
}

/// Gagliardo modular `J_{σ,A}(u; λ)` via tensor quadrature.
pub fn gagliardo_modular(
    u: &SampledFunction,
    sigma: f64,
    a: &YoungFunction,
    lambda: f64,
    cfg: &ModularConfig,
) -> Result<ExtReal> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let one = one_sided_modular(u, sigma, a, 1.0 / lambda, cfg)?;
    Ok(if one.is_infinite() {
        ExtReal::INFINITY
    } else {
        ExtReal::new(2.0 * one.value())
    })
}

/// Monte-Carlo estimate of the Gagliardo modular with its standard error.
///
/// Importance sampling draws `ln h` uniformly (so the `dh/h` kernel cancels)
/// and `x` uniformly over the window where the integrand can be nonzero.
/// Deterministic for a fixed seed.
pub fn gagliardo_modular_montecarlo(
    u: &SampledFunction,
    sigma: f64,
    a: &YoungFunction,
    lambda: f64,
    cfg: &ModularConfig,
) -> Result<(f64, f64)> {
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::Domain(format!(
            "smoothness order must lie in (0, 1), got {sigma}"
        )));
    }
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let pw = PwLinear::from_sample(u);
    let (lo, hi) = pw.span();
    let span = hi - lo;
    let h_lo = pw.min_segment() * 1e-4;
    let h_hi = span * 1e4;
    let ln_range = (h_hi / h_lo).ln();
    let ln_scale = -lambda.ln();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.montecarlo.seed);
    let n = cfg.montecarlo.samples.max(1);
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    for _ in 0..n {
        let h = (h_lo.ln() + rng.random::<f64>() * ln_range).exp();
        let x = lo - h + rng.random::<f64>() * (span + h);
        let d = (pw.eval(x + h) - pw.eval(x)).abs();
        let val = if d == 0.0 {
            0.0
        } else {
            match a.ln_eval(d.ln() + ln_scale - sigma * h.ln()) {
                LnValue::Zero => 0.0,
                LnValue::Finite(lv) => lv.exp(),
                LnValue::Infinite => return Ok((f64::INFINITY, f64::INFINITY)),
            }
        };
        // Factor 2 for the symmetric half-plane, times the proposal volume.
        let w = 2.0 * ln_range * (span + h) * val;
        sum += w;
        sumsq += w * w;
    }
    let mean = sum / n as f64;
    let var = (sumsq / n as f64 - mean * mean).max(0.0) / n as f64;
    Ok((mean, var.sqrt()))
}

/// Difference-quotient modular
/// `∫₀^∞ ∫ A(c |u(x+h) − u(x)| / h^σ) dx dh/h` (1-D, one direction).
pub fn difference_quotient_modular(
    u: &SampledFunction,
    sigma: f64,
    a: &YoungFunction,
    c: f64,
    cfg: &ModularConfig,
) -> Result<ExtReal> {
    if !(c > 0.0) {
        return Err(Error::Domain(format!("constant must be positive, got {c}")));
    }
    one_sided_modular(u, sigma, a, c, cfg)
}

/// Centered finite-difference derivative on the sample's own grid.
pub fn derivative_samples(u: &SampledFunction) -> Result<SampledFunction> {
    let m = u.vs.len();
    if m < 3 {
        return Err(Error::Precondition(
            "need at least 3 cells for a finite-difference derivative".into(),
        ));
    }
    let mids: Vec<f64> = (0..m).map(|i| 0.5 * (u.xs[i] + u.xs[i + 1])).collect();
    let mut dv = vec![0.0; m];
    for i in 0..m {
        let (j0, j1) = if i == 0 {
            (0, 1)
        } else if i == m - 1 {
            (m - 2, m - 1)
        } else {
            (i - 1, i + 1)
        };
        dv[i] = (u.vs[j1] - u.vs[j0]) / (mids[j1] - mids[j0]);
    }
    SampledFunction::new(u.domain, u.xs.clone(), dv)
}

/// Fractional seminorm `inf{λ > 0 : J_{σ,A}(∇^{[s]}u; λ) ≤ 1}`.
///
/// Restricted to `[s] ∈ {0, 1}`; for `[s] = 1` the gradient is the
/// centered finite difference of the sample, and σ is the fractional part
/// of s.
pub fn fractional_seminorm(
    u: &SampledFunction,
    p: &SpaceParams,
    a: &YoungFunction,
    cfg: &ModularConfig,
) -> Result<ExtReal> {
    let k = p.int_part();
    if k > 1 {
        return Err(Error::Precondition(format!(
            "smoothness orders above 2 are unsupported (integer part {k})"
        )));
    }
    let sigma = p.frac_part();
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::Precondition(format!(
            "smoothness {} has no fractional part",
            p.s
        )));
    }
    let work;
    let g = if k == 1 {
        work = derivative_samples(u)?;
        &work
    } else {
        u
    };
    if g.vs.iter().all(|&v| v == 0.0) {
        return Ok(ExtReal::ZERO);
    }
    let modular_le_one = |lambda: f64| match gagliardo_modular(g, sigma, a, lambda, cfg) {
        Ok(v) => v.value() <= 1.0,
        Err(_) => false,
    };
    if !modular_le_one(1e12) {
        return Ok(ExtReal::INFINITY);
    }
    if modular_le_one(1e-12) {
        return Ok(ExtReal::new(1e-12));
    }
    Ok(ExtReal::new(bisect_infimum(
        1e-12,
        1e12,
        60,
        modular_le_one,
    )))
}

/// Normalized smooth bump `exp(-1/(1-x²))` scaled to the interval
/// `[-ε, ε]` with unit integral.
#[derive(Debug, Clone)]
pub struct MollifierFamily {
    epsilon: f64,
    norm: f64,
}

fn bump_profile(x: f64) -> f64 {
    if x.abs() < 1.0 {
        (-1.0 / (1.0 - x * x)).exp()
    } else {
        0.0
    }
}

impl MollifierFamily {
    pub fn new(epsilon: f64) -> Result<MollifierFamily> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::Domain(format!(
                "mollifier scale must be positive, got {epsilon}"
            )));
        }
        let norm = crate::quad::integrate(bump_profile, -1.0, 1.0, 256);
        Ok(MollifierFamily { epsilon, norm })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Kernel value ϱ_ε(x) = ϱ(x/ε) / (ε ∫ϱ).
    pub fn eval(&self, x: f64) -> f64 {
        bump_profile(x / self.epsilon) / (self.epsilon * self.norm)
    }

    /// Quadrature check that the kernel integrates to 1.
    pub fn integral(&self) -> f64 {
        crate::quad::integrate(|x| self.eval(x), -self.epsilon, self.epsilon, 64)
    }
}

/// Convolution `ϱ_ε * u` resampled on u's own grid.
pub fn mollify(u: &SampledFunction, eps: f64) -> Result<SampledFunction> {
    let family = MollifierFamily::new(eps)?;
    match u.domain {
        Domain::Grid1D | Domain::HalfLine => {}
        Domain::RadialProfile { .. } => {
            return Err(Error::Precondition(
                "mollification supports 1-D grids only".into(),
            ))
        }
    }
    let pw = PwLinear::from_sample(u);
    let m = u.vs.len();
    let mut vs = vec![0.0; m];
    for (i, v) in vs.iter_mut().enumerate() {
        let x = 0.5 * (u.xs[i] + u.xs[i + 1]);
        // Breakpoints where x - t crosses an interpolation node keep the
        // integrand piecewise smooth on each panel.
        let mut brk: Vec<f64> = vec![-eps, eps];
        for &nx in &pw.xs {
            let t = x - nx;
            if t > -eps && t < eps {
                brk.push(t);
            }
        }
        brk.sort_by(|p, q| p.partial_cmp(q).expect("no NaN breakpoints"));
        let f = |t: f64| family.eval(t) * pw.eval(x - t);
        let mut acc = 0.0;
        for w in brk.windows(2) {
            if w[1] > w[0] {
                // The kernel is smooth but strongly peaked; split each
                // breakpoint interval into a few panels.
                let sub = 8;
                let dw = (w[1] - w[0]) / sub as f64;
                for j in 0..sub {
                    acc += gl4(&f, w[0] + j as f64 * dw, w[0] + (j + 1) as f64 * dw);
                }
            }
        }
        *v = acc;
    }
    SampledFunction::new(u.domain, u.xs.clone(), vs)
}
