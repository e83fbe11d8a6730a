//! Optimal target spaces: the companion function H, the Orlicz target
//! A_{n/s} = A ∘ H⁻¹, the rearrangement-invariant building block Â, the
//! truncation E_A, and the weight φ.

use crate::error::{Error, Result};
use crate::extreal::LnValue;
use crate::monotone::MonotoneMap;
use crate::quad::{fit_power_log, integrate_log, CumulativeIntegral};
use crate::regime::{check_indisp, regime_integrand};
use crate::space::SpaceParams;
use crate::young::{Form, Piece, YoungFunction};

const GRID_POINTS: usize = 512;

/// `H(t) = (∫₀ᵗ (τ/A(τ))^{s/(n−s)} dτ)^{(n−s)/n}`, with the cumulative
/// integral cached for inversion.
pub struct CompanionH {
    cum: CumulativeIntegral,
    outer_pow: f64, // (n−s)/n
    sup: f64,       // lim_{t→∞} H(t); +∞ in the subcritical case
}

impl CompanionH {
    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        self.ln_eval(t.ln()).to_value()
    }

    pub fn ln_eval(&self, ln_t: f64) -> LnValue {
        match self.cum.ln_value(ln_t) {
            LnValue::Zero => LnValue::Zero,
            LnValue::Finite(v) => LnValue::Finite(self.outer_pow * v),
            LnValue::Infinite => LnValue::Infinite,
        }
    }

    /// `sup H`: finite exactly in the supercritical regime.
    pub fn sup(&self) -> f64 {
        self.sup
    }

    /// `ln H⁻¹(y)` from `ln y`; None when y exceeds sup H.
    pub fn invert_ln(&self, ln_y: f64) -> Option<f64> {
        self.cum.invert_ln(ln_y / self.outer_pow)
    }

    pub fn as_monotone_map(self: &std::sync::Arc<Self>) -> MonotoneMap {
        let h1 = std::sync::Arc::clone(self);
        let h2 = std::sync::Arc::clone(self);
        let m = MonotoneMap::with_ln(move |t| h1.eval(t), move |lt| h2.ln_eval(lt));
        if self.sup.is_finite() {
            m.with_sup(self.sup)
        } else {
            m
        }
    }
}

/// Build H for an admissible pair.
pub fn sobolev_companion_h(a: &YoungFunction, p: &SpaceParams) -> Result<CompanionH> {
    let ind = check_indisp(a, p)?;
    if !ind.converges {
        return Err(Error::Precondition(
            "the admissibility integral diverges near zero; H is not finite".into(),
        ));
    }
    let sigma = p.sigma()?;
    let g_ln = regime_integrand(a, sigma);
    let g = |t: f64| g_ln(t.ln()).to_value();
    let cum = CumulativeIntegral::build(g, &g_ln, 16)
        .ok_or_else(|| Error::Precondition("companion integrand head fit failed".into()))?;
    let outer_pow = (f64::from(p.n) - p.s) / f64::from(p.n);
    let total = cum.total();
    let sup = if total.is_finite() { total.powf(outer_pow) } else { f64::INFINITY };
    Ok(CompanionH { cum, outer_pow, sup })
}

/// The Sobolev conjugate `A_{n/s}(t) = A(H⁻¹(t))`, with `sup H` as the
/// infinity threshold in the supercritical regime.
pub fn orlicz_target(a: &YoungFunction, p: &SpaceParams) -> Result<YoungFunction> {
    let h = sobolev_companion_h(a, p)?;
    let t_lo: f64 = 1e-12;
    let t_hi = if h.sup.is_finite() { h.sup * (1.0 - 1e-9) } else { 1e12 };
    if t_hi <= t_lo {
        return Err(Error::Precondition("degenerate target window".into()));
    }
    let (la, lb) = (t_lo.ln(), t_hi.ln());
    let mut knots = Vec::with_capacity(GRID_POINTS);
    for i in 0..GRID_POINTS {
        let lt = la + (lb - la) * i as f64 / (GRID_POINTS - 1) as f64;
        let ln_tau = h
            .invert_ln(lt)
            .ok_or_else(|| Error::Precondition("H inversion failed inside its range".into()))?;
        match a.ln_eval(ln_tau) {
            LnValue::Finite(v) => knots.push((lt, v)),
            LnValue::Zero => continue,
            LnValue::Infinite => break,
        }
    }
    if knots.len() < 2 {
        return Err(Error::Precondition("target grid degenerate".into()));
    }
    let threshold = if h.sup.is_finite() { Some(h.sup) } else { None };
    YoungFunction::new_interpolated(vec![Piece { from: 0.0, form: Form::Tabulated { ln_knots: knots } }], threshold)
}

/// Inner cumulative `Φ(τ) = ∫₀^τ a(θ)^{−s/(n−s)} dθ` used by â⁻¹.
fn inner_phi(a: &YoungFunction, sigma: f64) -> Result<CumulativeIntegral> {
    let g_ln = move |lt: f64, a: &YoungFunction| match a.ln_density(lt) {
        LnValue::Zero => LnValue::Infinite,
        LnValue::Finite(v) => LnValue::Finite(-sigma * v),
        LnValue::Infinite => LnValue::Zero,
    };
    let a1 = a.clone();
    let a2 = a.clone();
    CumulativeIntegral::build(
        move |t| g_ln(t.ln(), &a1).to_value(),
        move |lt| g_ln(lt, &a2),
        16,
    )
    .ok_or_else(|| {
        Error::Precondition("density integrand not integrable near zero (admissibility fails)".into())
    })
}

/// `â⁻¹(t)`: the generalized inverse of the density of Â, from the nested
/// integral formula. Returns 0 below the density's limit at zero.
pub fn hat_density_inverse(a: &YoungFunction, p: &SpaceParams, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("hat density inverse at t = {t}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let sigma = p.sigma()?;
    let phi = inner_phi(a, sigma)?;
    hat_density_inverse_with(a, p, &phi, t)
}

fn hat_density_inverse_with(
    a: &YoungFunction,
    p: &SpaceParams,
    phi: &CumulativeIntegral,
    t: f64,
) -> Result<f64> {
    let n = f64::from(p.n);
    let s = p.s;
    let x = a.density_map().generalized_inverse(t);
    if x.is_infinite() {
        // t beyond sup a: the outer integral is empty, â⁻¹ is +∞ there.
        return Ok(f64::INFINITY);
    }
    // Outer integrand F(τ) = Φ(τ)^{−n/s} a(τ)^{−n/(n−s)}.
    let f_ln = |lt: f64| -> LnValue {
        let lphi = match phi.ln_value(lt) {
            LnValue::Finite(v) => v,
            LnValue::Zero => return LnValue::Infinite,
            LnValue::Infinite => return LnValue::Zero,
        };
        let la = match a.ln_density(lt) {
            LnValue::Finite(v) => v,
            LnValue::Zero => return LnValue::Infinite,
            LnValue::Infinite => return LnValue::Zero,
        };
        LnValue::Finite(-(n / s) * lphi - (n / (n - s)) * la)
    };
    let f = |tau: f64| f_ln(tau.ln()).to_value();
    if x <= 1e-280 {
        // The outer integral starts at 0 where F ~ τ^{−n/s} diverges:
        // â⁻¹ = (+∞)^{s/(s−n)} = 0.
        return Ok(0.0);
    }
    let hi: f64 = (x * 1e4).max(1e12);
    let mut outer = integrate_log(f, x, hi, 16);
    // Power-law tail beyond the cutoff.
    if let Some((_, e, _)) = fit_power_log(&f_ln, hi.ln() - 4.0 * std::f64::consts::LN_10, hi.ln(), 32)
    {
        if e < -1.0 - 1e-6 {
            outer += f(hi) * hi / (-e - 1.0);
        } else {
            return Err(Error::Precondition(
                "outer integral for â⁻¹ diverges at infinity".into(),
            ));
        }
    }
    if !(outer > 0.0) || !outer.is_finite() {
        return Ok(0.0);
    }
    Ok(outer.powf(s / (s - n)))
}

/// `Â(t) = ∫₀ᵗ â`, with `â` obtained by inverting `t ↦ â⁻¹(t)` on a log
/// grid.
pub fn orlicz_lorentz_target(a: &YoungFunction, p: &SpaceParams) -> Result<YoungFunction> {
    let sigma = p.sigma()?;
    let phi = inner_phi(a, sigma)?;
    // Sample y = â⁻¹(t) on a log grid of t; (y, t) tabulates â.
    let (la, lb) = ((1e-30f64).ln(), (1e10f64).ln());
    let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(GRID_POINTS); // (ln y, ln t)
    for i in 0..GRID_POINTS {
        let lt = la + (lb - la) * i as f64 / (GRID_POINTS - 1) as f64;
        let y = hat_density_inverse_with(a, p, &phi, lt.exp())?;
        if !(y > 0.0) || !y.is_finite() {
            continue;
        }
        let ly = y.ln();
        if let Some(&(prev, _)) = pairs.last() {
            if ly <= prev + 1e-12 {
                continue; // enforce strict monotonicity of the inverse table
            }
        }
        pairs.push((ly, lt));
    }
    if pairs.len() < 8 {
        return Err(Error::Precondition("â table degenerate".into()));
    }
    let hat_a_ln = move |ly: f64| -> LnValue {
        // â(y): log-log interpolation of the inverted table, extrapolated
        // with edge slopes.
        let i = match pairs.binary_search_by(|k| k.0.total_cmp(&ly)) {
            Ok(i) => i.clamp(1, pairs.len() - 1) - 1,
            Err(i) => i.clamp(1, pairs.len() - 1) - 1,
        };
        let (x0, y0) = pairs[i];
        let (x1, y1) = pairs[i + 1];
        LnValue::Finite(y0 + (y1 - y0) * (ly - x0) / (x1 - x0))
    };
    let hat_a_ln2 = hat_a_ln.clone();
    let cum = CumulativeIntegral::build(
        move |y| hat_a_ln(y.ln()).to_value(),
        move |ly| hat_a_ln2(ly),
        16,
    )
    .ok_or_else(|| Error::Precondition("â not integrable near zero".into()))?;
    let (ka, kb) = ((1e-30f64).ln(), (1e10f64).ln());
    let mut knots = Vec::with_capacity(GRID_POINTS);
    for i in 0..GRID_POINTS {
        let lt = ka + (kb - ka) * i as f64 / (GRID_POINTS - 1) as f64;
        if let LnValue::Finite(v) = cum.ln_value(lt) {
            knots.push((lt, v));
        }
    }
    if knots.len() < 2 {
        return Err(Error::Precondition("Â grid degenerate".into()));
    }
    YoungFunction::new_interpolated(vec![Piece { from: 0.0, form: Form::Tabulated { ln_knots: knots } }], None)
}

/// The weight `φ(r) = min{1, r^{−s/n}}`.
#[derive(Clone, Copy, Debug)]
pub struct Phi {
    exponent: f64, // s/n
}

impl Phi {
    pub fn new(p: &SpaceParams) -> Phi {
        Phi { exponent: p.s / f64::from(p.n) }
    }

    pub fn eval(&self, r: f64) -> f64 {
        if r <= 1.0 {
            1.0
        } else {
            r.powf(-self.exponent)
        }
    }

    pub fn ln_eval(&self, ln_r: f64) -> f64 {
        if ln_r <= 0.0 {
            0.0
        } else {
            -self.exponent * ln_r
        }
    }
}

/// `E_A`: equal to Â on `[0,1]`, `+∞` on `(1,∞)`.
pub fn truncate_to_ea(a_hat: &YoungFunction, p: &SpaceParams) -> Result<(YoungFunction, Phi)> {
    let pieces = a_hat
        .pieces()
        .iter()
        .filter(|pc| pc.from < 1.0)
        .cloned()
        .collect::<Vec<_>>();
    let ea = YoungFunction::new_interpolated(pieces, Some(1.0))?;
    Ok((ea, Phi::new(p)))
}

/// Everything the embedding statements need, built once per pair.
pub struct TargetBundle {
    pub h: std::sync::Arc<CompanionH>,
    pub a_ns: YoungFunction,
    pub a_hat: YoungFunction,
    pub e_a: YoungFunction,
    pub phi: Phi,
}

impl TargetBundle {
    pub fn build(a: &YoungFunction, p: &SpaceParams) -> Result<TargetBundle> {
        let h = std::sync::Arc::new(sobolev_companion_h(a, p)?);
        let a_ns = orlicz_target(a, p)?;
        let a_hat = orlicz_lorentz_target(a, p)?;
        let (e_a, phi) = truncate_to_ea(&a_hat, p)?;
        Ok(TargetBundle { h, a_ns, a_hat, e_a, phi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::young::{LogEnd, DominationRange};

    fn sp() -> SpaceParams {
        SpaceParams::new(1, 0.5).unwrap()
    }

    fn a32() -> YoungFunction {
        YoungFunction::pure_power(1.0, 1.5).unwrap()
    }

    #[test]
    fn companion_closed_form() {
        // H(t) = sqrt(2) t^{1/4}
        let h = sobolev_companion_h(&a32(), &sp()).unwrap();
        for &t in &[1e-8, 1e-2, 1.0, 1e4] {
            let got = h.eval(t);
            let want = (2.0f64).sqrt() * t.powf(0.25);
            assert!((got / want - 1.0).abs() < 1e-6, "t={t}: {got} vs {want}");
        }
        assert_eq!(h.eval(0.0), 0.0);
        assert!(h.sup().is_infinite());
    }

    #[test]
    fn companion_sup_when_supercritical() {
        let a = YoungFunction::new(
            vec![
                Piece { from: 0.0, form: Form::PowerLog { k: 1.0, p: 1.5, alpha: 0.0, log: LogEnd::Zero } },
                Piece { from: 1.0, form: Form::PowerLog { k: 1.0, p: 3.0, alpha: 0.0, log: LogEnd::Zero } },
            ],
            None,
        )
        .unwrap();
        let h = sobolev_companion_h(&a, &sp()).unwrap();
        // ∫₀¹ τ^{-1/2} + ∫₁^∞ τ^{-2} = 2 + 1 = 3, then sqrt
        assert!((h.sup() - 3f64.sqrt()).abs() < 1e-4, "sup {}", h.sup());
    }

    #[test]
    fn companion_requires_admissibility() {
        let bad = YoungFunction::pure_power(1.0, 3.0).unwrap();
        assert!(sobolev_companion_h(&bad, &sp()).is_err());
    }

    #[test]
    fn orlicz_target_closed_form() {
        // A_{n/s}(t) = t^6 / 8
        let t6 = orlicz_target(&a32(), &sp()).unwrap();
        for &t in &[1e-3, 0.1, 1.0, 10.0, 1e3] {
            let got = t6.eval(t).unwrap().value();
            let want = t.powi(6) / 8.0;
            assert!((got / want - 1.0).abs() < 1e-4, "t={t}: {got} vs {want}");
        }
    }

    #[test]
    fn orlicz_target_supercritical_threshold() {
        let a = YoungFunction::new(
            vec![
                Piece { from: 0.0, form: Form::PowerLog { k: 1.0, p: 1.5, alpha: 0.0, log: LogEnd::Zero } },
                Piece { from: 1.0, form: Form::PowerLog { k: 1.0, p: 3.0, alpha: 0.0, log: LogEnd::Zero } },
            ],
            None,
        )
        .unwrap();
        let t = orlicz_target(&a, &sp()).unwrap();
        let th = t.inf_threshold().expect("supercritical target has a threshold");
        assert!((th - 3f64.sqrt()).abs() < 1e-3);
        assert!(t.eval(th * 1.01).unwrap().is_infinite());
        assert!(t.eval(th * 0.5).unwrap().is_finite());
    }

    #[test]
    fn hat_density_inverse_power_homogeneity() {
        // For a pure power A, â⁻¹ is a pure power: ratios at doubled
        // arguments are constant.
        let p = sp();
        let mut ratios = Vec::new();
        for &t in &[1e-2, 1e-1, 1.0, 10.0, 1e2] {
            let lo = hat_density_inverse(&a32(), &p, t).unwrap();
            let hi = hat_density_inverse(&a32(), &p, 2.0 * t).unwrap();
            ratios.push(hi / lo);
        }
        for r in &ratios {
            assert!((r / ratios[0] - 1.0).abs() < 0.01, "ratios {ratios:?}");
        }
        // a(t)=1.5 t^{1/2} has slope 1/2, so â⁻¹ inherits exponent 2
        assert!((ratios[0] - 4.0).abs() < 0.05, "ratios {ratios:?}");
    }

    #[test]
    fn hat_target_matches_a_near_zero_for_low_index() {
        // I₀(A) = 1.5 < n/s = 2: Â and A are equivalent near zero.
        let p = sp();
        let a_hat = orlicz_lorentz_target(&a32(), &p).unwrap();
        assert!(a32().dominates(&a_hat, DominationRange::Zero).holds);
        assert!(a_hat.dominates(&a32(), DominationRange::Zero).holds);
        // closed form: Â(t) = t^{1.5}/2 for A = t^{1.5}
        for &t in &[1e-3, 0.1, 1.0, 100.0] {
            let got = a_hat.eval(t).unwrap().value();
            let want = 0.5 * t.powf(1.5);
            assert!((got / want - 1.0).abs() < 0.02, "t={t}: {got} vs {want}");
        }
    }

    #[test]
    fn truncation_and_weight() {
        let p = sp();
        let a_hat = orlicz_lorentz_target(&a32(), &p).unwrap();
        let (ea, phi) = truncate_to_ea(&a_hat, &p).unwrap();
        assert!(ea.eval(2.0).unwrap().is_infinite());
        let (x, y) = (ea.eval(0.5).unwrap().value(), a_hat.eval(0.5).unwrap().value());
        assert!((x - y).abs() < 1e-12 * y.max(1.0));
        assert_eq!(phi.eval(0.5), 1.0);
        assert!((phi.eval(4.0) - 0.5).abs() < 1e-12); // s/n = 1/2
    }
}
