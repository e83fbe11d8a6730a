//! Quadrature on the half line with asymptotic head/tail models.
//!
//! Improper integrals of power-log type integrands are split into a core
//! region handled by Gauss-Legendre panels on a log axis and closed-form
//! asymptotic pieces at the endpoints, so that cumulative integrals stay
//! accurate (and invertible) down to double-exponentially small arguments.

use crate::extreal::LnValue;

/// 16-point Gauss-Legendre nodes (positive half) and weights on [-1, 1].
const GL_X: [f64; 8] = [
    0.095_012_509_837_637_44,
    0.281_603_550_779_258_9,
    0.458_016_777_657_227_4,
    0.617_876_244_402_643_8,
    0.755_404_408_355_003_0,
    0.865_631_202_387_831_8,
    0.944_575_023_073_232_6,
    0.989_400_934_991_649_9,
];
const GL_W: [f64; 8] = [
    0.189_450_610_455_068_5,
    0.182_603_415_044_923_6,
    0.169_156_519_395_002_5,
    0.149_595_988_816_576_7,
    0.124_628_971_255_533_9,
    0.095_158_511_682_492_8,
    0.062_253_523_938_647_9,
    0.027_152_459_411_754_1,
];

/// Gauss-Legendre quadrature of `f` over `[a, b]` with one 16-point panel.
pub fn gl_panel(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = 0.0;
    for i in 0..8 {
        acc += GL_W[i] * (f(c + h * GL_X[i]) + f(c - h * GL_X[i]));
    }
    acc * h
}

/// Composite Gauss-Legendre over `[a, b]` with `panels` equal panels.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    if !(b > a) {
        return 0.0;
    }
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for i in 0..panels {
        acc += gl_panel(&f, a + i as f64 * h, a + (i + 1) as f64 * h);
    }
    acc
}

/// Composite quadrature of `f(t) dt` over `[a, b]` with panels equally
/// spaced in `ln t` (so the resolution follows the scale of the integrand).
pub fn integrate_log(f: impl Fn(f64) -> f64, a: f64, b: f64, panels_per_decade: usize) -> f64 {
    if !(b > a) || a <= 0.0 {
        return 0.0;
    }
    let (la, lb) = (a.ln(), b.ln());
    let decades = (lb - la) / std::f64::consts::LN_10;
    let panels = ((decades * panels_per_decade as f64).ceil() as usize).max(1);
    integrate(|u: f64| f(u.exp()) * u.exp(), la, lb, panels)
}

/// Least-squares solve of the 3x3 normal equations for `y ~ r0*x0 + r1*x1 + r2*x2`.
/// Returns None when the design is rank deficient.
pub fn lstsq3(rows: &[([f64; 3], f64)]) -> Option<[f64; 3]> {
    let mut ata = [[0.0f64; 3]; 3];
    let mut atb = [0.0f64; 3];
    for (x, y) in rows {
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += x[i] * x[j];
            }
            atb[i] += x[i] * y;
        }
    }
    solve3(ata, atb)
}

fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in 0..3 {
            if row == col {
                continue;
            }
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    Some([b[0] / a[0][0], b[1] / a[1][1], b[2] / a[2][2]])
}

/// Fit `ln g(t) ~ ln_c + e ln t + b ln(ln 1/t)` from samples of a log-scale
/// evaluator over `ln t` in `[ln_lo, ln_hi]` (both must be < 0 for the zero
/// end). For the infinity end pass positive logs; the log regressor is then
/// `ln(ln t)`. Returns `(ln_c, e, b)`.
pub fn fit_power_log(
    g_ln: impl Fn(f64) -> LnValue,
    ln_lo: f64,
    ln_hi: f64,
    samples: usize,
) -> Option<(f64, f64, f64)> {
    let mut rows = Vec::with_capacity(samples);
    for i in 0..samples {
        let lt = ln_lo + (ln_hi - ln_lo) * i as f64 / (samples - 1) as f64;
        let lg = match g_ln(lt) {
            LnValue::Finite(v) => v,
            _ => return None,
        };
        let l_abs = lt.abs();
        if l_abs < 1e-9 {
            continue;
        }
        rows.push(([1.0, lt, l_abs.ln()], lg));
    }
    let sol = lstsq3(&rows)?;
    Some((sol[0], sol[1], sol[2]))
}

/// Closed-form model for `G(t) = ∫₀ᵗ g` when `g(τ) ≈ C τ^e (ln 1/τ)^b`
/// near zero.
#[derive(Clone, Copy, Debug)]
pub enum HeadModel {
    /// `e > -1`: `G(t) ≈ C t^{e+1} (ln 1/t)^b / (e+1)`, first log correction
    /// included.
    Power { ln_c: f64, e: f64, b: f64 },
    /// `e = -1`, `b < -1`: `G(t) = C (ln 1/t)^{b+1} / (-b-1)`, exact for an
    /// exact power-log integrand.
    Log { ln_c: f64, b: f64 },
    /// Integrand vanishes identically near zero.
    Vanishing,
}

impl HeadModel {
    /// Fit a head model from a log-scale integrand over `[ln_lo, ln_hi]`
    /// (zero end; logs negative). Classifies e = -1 within `margin`.
    pub fn fit(g_ln: impl Fn(f64) -> LnValue, ln_lo: f64, ln_hi: f64) -> Option<HeadModel> {
        if let LnValue::Zero = g_ln(0.5 * (ln_lo + ln_hi)) {
            return Some(HeadModel::Vanishing);
        }
        let (ln_c, e, b) = fit_power_log(g_ln, ln_lo, ln_hi, 64)?;
        if (e + 1.0).abs() < 0.02 {
            if b >= -1.0 {
                return None; // divergent head
            }
            Some(HeadModel::Log { ln_c, b })
        } else if e > -1.0 {
            Some(HeadModel::Power { ln_c, e, b })
        } else {
            None // divergent head
        }
    }

    /// `ln G(t)` for `ln t` at or below the fit window.
    pub fn ln_head(&self, ln_t: f64) -> LnValue {
        match *self {
            HeadModel::Vanishing => LnValue::Zero,
            HeadModel::Log { ln_c, b } => {
                let l = -ln_t;
                if l <= 1.0 {
                    return LnValue::Finite(ln_c - (-b - 1.0).ln());
                }
                LnValue::Finite(ln_c + (b + 1.0) * l.ln() - (-b - 1.0).ln())
            }
            HeadModel::Power { ln_c, e, b } => {
                let l = (-ln_t).max(1.0);
                let corr = 1.0 + b / ((e + 1.0) * l);
                let corr = if corr > 0.1 { corr } else { 0.1 };
                LnValue::Finite(ln_c + (e + 1.0) * ln_t + b * l.ln() - (e + 1.0).ln() + corr.ln())
            }
        }
    }

    pub fn head(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        self.ln_head(t.ln()).to_value()
    }
}

/// Cached cumulative integral `G(t) = ∫₀ᵗ g(τ) dτ` of a nonnegative
/// integrand of power-log type, valid on the whole half line: the core
/// window `[1e-12, 1e12]` is tabulated, the head uses the fitted asymptotic
/// model and the tail a local power extrapolation.
pub struct CumulativeIntegral {
    ln_grid: Vec<f64>,
    cum: Vec<f64>, // G at the grid knots (includes the head mass below the window)
    head: HeadModel,
    /// Local power exponent of g at the upper window edge.
    tail_q: f64,
    tail_g_hi: f64,
    t_hi: f64,
}

pub const WINDOW_LO: f64 = 1e-12;
pub const WINDOW_HI: f64 = 1e12;

impl CumulativeIntegral {
    /// Build from plain and log-scale evaluators of the integrand.
    /// `g_ln` is used for the head fit below the window; `g` for the core.
    pub fn build(
        g: impl Fn(f64) -> f64,
        g_ln: impl Fn(f64) -> LnValue,
        panels_per_decade: usize,
    ) -> Option<CumulativeIntegral> {
        let head = HeadModel::fit(&g_ln, WINDOW_LO.ln() - 40.0, WINDOW_LO.ln())?;
        let (la, lb) = (WINDOW_LO.ln(), WINDOW_HI.ln());
        let decades = (lb - la) / std::f64::consts::LN_10;
        let knots = ((decades * panels_per_decade as f64).ceil() as usize).max(2);
        let mut ln_grid = Vec::with_capacity(knots + 1);
        let mut cum = Vec::with_capacity(knots + 1);
        let mut acc = head.head(WINDOW_LO);
        ln_grid.push(la);
        cum.push(acc);
        for i in 0..knots {
            let u0 = la + (lb - la) * i as f64 / knots as f64;
            let u1 = la + (lb - la) * (i + 1) as f64 / knots as f64;
            acc += gl_panel(&|u: f64| g(u.exp()) * u.exp(), u0, u1);
            ln_grid.push(u1);
            cum.push(acc);
        }
        // Local power exponent at the upper edge for extrapolation.
        let g_hi = g(WINDOW_HI);
        let g_lo = g(WINDOW_HI * 0.01);
        let tail_q = if g_hi > 0.0 && g_lo > 0.0 {
            (g_hi / g_lo).ln() / (100.0f64).ln()
        } else {
            f64::NEG_INFINITY
        };
        Some(CumulativeIntegral { ln_grid, cum, head, tail_q, tail_g_hi: g_hi, t_hi: WINDOW_HI })
    }

    pub fn head_model(&self) -> HeadModel {
        self.head
    }

    /// `G(t)` as a plain double (may underflow to 0 for very small `t`).
    pub fn value(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        self.ln_value(t.ln()).to_value()
    }

    /// `ln G(t)`.
    pub fn ln_value(&self, ln_t: f64) -> LnValue {
        let la = self.ln_grid[0];
        let lb = *self.ln_grid.last().unwrap();
        if ln_t <= la {
            return self.head.ln_head(ln_t);
        }
        if ln_t >= lb {
            return LnValue::from_value(self.extrapolate_tail(ln_t.exp()));
        }
        // Log-log interpolation of G (exact on pure powers); falls back to
        // linear while the cumulative is still zero.
        let n = self.ln_grid.len();
        let frac = (ln_t - la) / (lb - la) * (n - 1) as f64;
        let i = (frac.floor() as usize).min(n - 2);
        let w = frac - i as f64;
        let (c0, c1) = (self.cum[i], self.cum[i + 1]);
        if c0 > 0.0 && c1 > 0.0 {
            LnValue::Finite(c0.ln() * (1.0 - w) + c1.ln() * w)
        } else {
            LnValue::from_value(c0 * (1.0 - w) + c1 * w)
        }
    }

    fn extrapolate_tail(&self, t: f64) -> f64 {
        let base = *self.cum.last().unwrap();
        if self.tail_g_hi <= 0.0 {
            return base;
        }
        let q1 = self.tail_q + 1.0;
        if q1.abs() < 1e-9 {
            return base + self.tail_g_hi * self.t_hi * (t / self.t_hi).ln();
        }
        base + self.tail_g_hi * self.t_hi * ((t / self.t_hi).powf(q1) - 1.0) / q1
    }

    /// `G(∞)`: finite iff the local tail exponent is below -1.
    pub fn total(&self) -> f64 {
        let base = *self.cum.last().unwrap();
        if self.tail_g_hi <= 0.0 {
            return base;
        }
        if self.tail_q < -1.0 - 1e-9 {
            base + self.tail_g_hi * self.t_hi / (-self.tail_q - 1.0)
        } else {
            f64::INFINITY
        }
    }

    /// Invert `G` at level `exp(ln_y)`: returns `ln t` with `G(t) = y`.
    /// Handles levels far below double range via the head model.
    /// Returns None when the level exceeds `G(∞)`.
    pub fn invert_ln(&self, ln_y: f64) -> Option<f64> {
        let total = self.total();
        if total.is_finite() && ln_y > total.ln() {
            return None;
        }
        let ge = |lt: f64| match self.ln_value(lt) {
            LnValue::Zero => false,
            LnValue::Finite(v) => v >= ln_y,
            LnValue::Infinite => true,
        };
        let mut hi = self.ln_grid[0];
        if !ge(hi) {
            let mut found = false;
            while hi < 800.0 {
                hi += 20.0;
                if ge(hi) {
                    found = true;
                    break;
                }
            }
            if !found {
                return None;
            }
        }
        let mut lo = (hi - 8.0).min(-8.0);
        while ge(lo) {
            lo = if lo < 0.0 { lo * 4.0 } else { lo - 32.0 };
            if lo < -1e306 {
                return Some(lo);
            }
        }
        Some(crate::monotone::bisect_infimum(lo, hi, 200, ge))
    }
}
