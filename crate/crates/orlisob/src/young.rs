//! Young functions: piecewise power-log / tabulated convex maps with an
//! optional terminal ray where the value is +∞, and their calculus
//! (evaluation, density, conjugation, growth index, domination).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, LnValue};
use crate::monotone::MonotoneMap;

/// Which end the logarithmic factor refers to: `(ln 1/t)^α` near zero or
/// `(ln t)^α` near infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogEnd {
    Zero,
    Infinity,
}

/// Functional form of one piece.
#[derive(Clone, Debug)]
pub enum Form {
    /// `k t^p L^α` with `L = ln(1/t)` or `ln t` per `log`.
    PowerLog { k: f64, p: f64, alpha: f64, log: LogEnd },
    /// Knots `(ln t, ln A(t))`, interpolated linearly in log-log (exact on
    /// pure powers), extrapolated with the edge slopes.
    Tabulated { ln_knots: Vec<(f64, f64)> },
    /// Identically zero on the piece.
    Zero,
}

#[derive(Clone, Debug)]
pub struct Piece {
    /// Left endpoint of the piece's domain; the first piece starts at 0.
    pub from: f64,
    pub form: Form,
}

/// A Young function: convex, non-decreasing, `A(0) = 0`, left-continuous,
/// possibly `+∞` beyond `inf_threshold`.
#[derive(Clone, Debug)]
pub struct YoungFunction {
    pieces: Vec<Piece>,
    ln_from: Vec<f64>,
    inf_threshold: Option<f64>,
}

fn ln_powerlog(k: f64, p: f64, alpha: f64, log: LogEnd, ln_t: f64) -> f64 {
    let base = k.ln() + p * ln_t;
    if alpha == 0.0 {
        return base;
    }
    let l = match log {
        LogEnd::Zero => -ln_t,
        LogEnd::Infinity => ln_t,
    };
    base + alpha * l.max(1e-12).ln()
}

fn tab_segment(knots: &[(f64, f64)], ln_t: f64) -> usize {
    // Index of the segment used for ln_t; edge segments extrapolate.
    let n = knots.len();
    match knots.binary_search_by(|k| k.0.total_cmp(&ln_t)) {
        Ok(i) => i.clamp(1, n - 1) - 1,
        Err(i) => i.clamp(1, n - 1) - 1,
    }
}

fn ln_tabulated(knots: &[(f64, f64)], ln_t: f64) -> f64 {
    let i = tab_segment(knots, ln_t);
    let (x0, y0) = knots[i];
    let (x1, y1) = knots[i + 1];
    y0 + (y1 - y0) * (ln_t - x0) / (x1 - x0)
}

impl Form {
    fn ln_eval(&self, ln_t: f64) -> LnValue {
        match self {
            Form::Zero => LnValue::Zero,
            Form::PowerLog { k, p, alpha, log } => {
                LnValue::Finite(ln_powerlog(*k, *p, *alpha, *log, ln_t))
            }
            Form::Tabulated { ln_knots } => LnValue::Finite(ln_tabulated(ln_knots, ln_t)),
        }
    }

    /// Left density `a(t)` in log scale; `Zero` when the slope vanishes.
    fn ln_density(&self, ln_t: f64) -> LnValue {
        match self {
            Form::Zero => LnValue::Zero,
            Form::PowerLog { k, p, alpha, log } => {
                if *alpha == 0.0 {
                    return LnValue::Finite((k * p).ln() + (p - 1.0) * ln_t);
                }
                let l = match log {
                    LogEnd::Zero => (-ln_t).max(1e-12),
                    LogEnd::Infinity => ln_t.max(1e-12),
                };
                // d/dt [k t^p L^α] = k t^{p-1} L^{α-1} (pL ∓ α)
                let lead = match log {
                    LogEnd::Zero => p * l - alpha,
                    LogEnd::Infinity => p * l + alpha,
                };
                if lead <= 0.0 {
                    return LnValue::Zero;
                }
                LnValue::Finite(k.ln() + (p - 1.0) * ln_t + (alpha - 1.0) * l.ln() + lead.ln())
            }
            Form::Tabulated { ln_knots } => {
                let i = tab_segment(ln_knots, ln_t);
                let (x0, y0) = ln_knots[i];
                let (x1, y1) = ln_knots[i + 1];
                let q = (y1 - y0) / (x1 - x0);
                if q <= 0.0 {
                    return LnValue::Zero;
                }
                // a(t) = q A(t) / t under log-log interpolation
                LnValue::Finite(q.ln() + ln_tabulated(ln_knots, ln_t) - ln_t)
            }
        }
    }
}

/// `ln((x + y)/2)` given `ln x ≤ ln y` in LnValue form.
fn ln_avg(a: LnValue, b: LnValue) -> LnValue {
    match (a, b) {
        (LnValue::Zero, LnValue::Zero) => LnValue::Zero,
        (LnValue::Zero, LnValue::Finite(v)) | (LnValue::Finite(v), LnValue::Zero) => {
            LnValue::Finite(v - std::f64::consts::LN_2)
        }
        (LnValue::Finite(x), LnValue::Finite(y)) => {
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            LnValue::Finite(hi + (1.0 + (lo - hi).exp()).ln() - std::f64::consts::LN_2)
        }
        _ => LnValue::Infinite,
    }
}

fn ln_le(a: LnValue, b: LnValue, slack: f64) -> bool {
    match (a, b) {
        (LnValue::Zero, _) => true,
        (_, LnValue::Infinite) => true,
        (LnValue::Infinite, _) => false,
        (LnValue::Finite(_), LnValue::Zero) => false,
        (LnValue::Finite(x), LnValue::Finite(y)) => x <= y + slack,
    }
}

pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (la, lb) = (lo.ln(), hi.ln());
    (0..n).map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp()).collect()
}

impl YoungFunction {
    /// Build a Young function from ordered pieces, enforcing continuity at
    /// interior breakpoints by rescaling each right piece, then validating
    /// monotonicity and midpoint convexity on a sample grid.
    pub fn new(pieces: Vec<Piece>, inf_threshold: Option<f64>) -> Result<YoungFunction> {
        let yf = YoungFunction::construct(pieces, inf_threshold)?;
        yf.validate_shape(1e-6)?;
        Ok(yf)
    }

    fn construct(pieces: Vec<Piece>, inf_threshold: Option<f64>) -> Result<YoungFunction> {
        if pieces.is_empty() {
            return Err(Error::InvalidYoung("no pieces".into()));
        }
        if pieces[0].from != 0.0 {
            return Err(Error::InvalidYoung("first piece must start at 0".into()));
        }
        for w in pieces.windows(2) {
            if !(w[1].from > w[0].from) || !w[1].from.is_finite() {
                return Err(Error::InvalidYoung("breakpoints must increase".into()));
            }
        }
        if let Some(t) = inf_threshold {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::InvalidYoung("infinity threshold must be positive".into()));
            }
            if let Some(last) = pieces.last() {
                if last.from > t {
                    return Err(Error::InvalidYoung("piece beyond infinity threshold".into()));
                }
            }
        }
        let mut pieces = pieces;
        for pc in &pieces {
            match &pc.form {
                Form::PowerLog { k, p, alpha, .. } => {
                    if !(*k > 0.0) || !(*p >= 1.0) || !alpha.is_finite() || !k.is_finite() {
                        return Err(Error::InvalidYoung(format!(
                            "invalid power-log parameters k={k} p={p} alpha={alpha}"
                        )));
                    }
                }
                Form::Tabulated { ln_knots } => {
                    if ln_knots.len() < 2 {
                        return Err(Error::InvalidYoung("tabulated piece needs >= 2 knots".into()));
                    }
                    for w in ln_knots.windows(2) {
                        if !(w[1].0 > w[0].0) || !w[1].1.is_finite() || !w[0].1.is_finite() {
                            return Err(Error::InvalidYoung("tabulated knots must increase".into()));
                        }
                    }
                }
                Form::Zero => {}
            }
        }
        // Continuity splice: rescale each right piece to match the left
        // limit at the joint. A zero left limit is left alone (the function
        // may depart from its zero plateau continuously or not at all).
        for i in 1..pieces.len() {
            let bp = pieces[i].from;
            let left = pieces[i - 1].form.ln_eval(bp.ln());
            let right = pieces[i].form.ln_eval(bp.ln());
            if let (LnValue::Finite(l), LnValue::Finite(r)) = (left, right) {
                let shift = l - r;
                match &mut pieces[i].form {
                    Form::PowerLog { k, .. } => *k *= shift.exp(),
                    Form::Tabulated { ln_knots } => {
                        for kn in ln_knots.iter_mut() {
                            kn.1 += shift;
                        }
                    }
                    Form::Zero => {
                        return Err(Error::InvalidYoung(
                            "zero piece after a positive one".into(),
                        ))
                    }
                }
            }
        }
        let ln_from = pieces
            .iter()
            .map(|p| if p.from == 0.0 { f64::NEG_INFINITY } else { p.from.ln() })
            .collect();
        Ok(YoungFunction { pieces, ln_from, inf_threshold })
    }

    /// Like [`YoungFunction::new`], but with a loose convexity slack.
    ///
    /// Tabulated functions generated inside the crate (Legendre transforms,
    /// target constructions) are convex analytically, but their log-log
    /// interpolants can kink by more than the strict slack near density
    /// jumps. The loose check still rejects grossly malformed shapes.
    pub(crate) fn new_interpolated(
        pieces: Vec<Piece>,
        inf_threshold: Option<f64>,
    ) -> Result<YoungFunction> {
        let yf = YoungFunction::construct(pieces, inf_threshold)?;
        yf.validate_shape(5e-2)?;
        Ok(yf)
    }

    fn validate_shape(&self, convexity_slack: f64) -> Result<()> {
        let hi_ln = match self.inf_threshold {
            Some(t) => t.ln(),
            None => (1e10f64).ln(),
        };
        let lo_ln = (1e-10f64).ln().min(hi_ln - 1.0);
        let n = 161;
        let mut prev = LnValue::Zero;
        let mut vals = Vec::with_capacity(n);
        for i in 0..n {
            let lt = lo_ln + (hi_ln - lo_ln) * i as f64 / (n - 1) as f64;
            let v = self.ln_eval(lt);
            if !ln_le(prev, v, 1e-9) {
                return Err(Error::InvalidYoung(format!(
                    "not non-decreasing near t = {:.3e}",
                    lt.exp()
                )));
            }
            prev = v;
            vals.push((lt, v));
        }
        // Midpoint convexity on arithmetic midpoints of adjacent samples.
        for w in vals.windows(2) {
            let (la, va) = w[0];
            let (lb, vb) = w[1];
            let tm = 0.5 * (la.exp() + lb.exp());
            let vm = self.ln_eval(tm.ln());
            if !ln_le(vm, ln_avg(va, vb), convexity_slack) {
                return Err(Error::InvalidYoung(format!(
                    "midpoint convexity fails near t = {tm:.3e}"
                )));
            }
        }
        Ok(())
    }

    /// Single piece `k t^p` (no log factor).
    pub fn pure_power(k: f64, p: f64) -> Result<YoungFunction> {
        YoungFunction::new(
            vec![Piece { from: 0.0, form: Form::PowerLog { k, p, alpha: 0.0, log: LogEnd::Zero } }],
            None,
        )
    }

    /// The L∞-type Young function: 0 on `[0, threshold]`, +∞ beyond.
    pub fn linf_type(threshold: f64) -> Result<YoungFunction> {
        YoungFunction::new(vec![Piece { from: 0.0, form: Form::Zero }], Some(threshold))
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn inf_threshold(&self) -> Option<f64> {
        self.inf_threshold
    }

    fn piece_at(&self, ln_t: f64) -> &Form {
        let mut i = self.pieces.len() - 1;
        while i > 0 && self.ln_from[i] >= ln_t {
            i -= 1;
        }
        &self.pieces[i].form
    }

    /// `ln A(t)` from `ln t`; total on the whole real line of logs.
    pub fn ln_eval(&self, ln_t: f64) -> LnValue {
        if let Some(th) = self.inf_threshold {
            if ln_t > th.ln() {
                return LnValue::Infinite;
            }
        }
        self.piece_at(ln_t).ln_eval(ln_t)
    }

    /// `A(t)`, +∞ strictly beyond the infinity threshold.
    pub fn eval(&self, t: f64) -> Result<ExtReal> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::Domain(format!("eval at t = {t}")));
        }
        if t == 0.0 {
            return Ok(ExtReal::ZERO);
        }
        if t == f64::INFINITY {
            return Ok(ExtReal::INFINITY);
        }
        Ok(self.ln_eval(t.ln()).to_ext())
    }

    /// `ln a(t)`: the left-continuous density of A.
    pub fn ln_density(&self, ln_t: f64) -> LnValue {
        if let Some(th) = self.inf_threshold {
            if ln_t > th.ln() {
                return LnValue::Infinite;
            }
        }
        self.piece_at(ln_t).ln_density(ln_t)
    }

    /// `a(t)` with `A(t) = ∫₀ᵗ a`; errors beyond the finite domain.
    pub fn density(&self, t: f64) -> Result<ExtReal> {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::Domain(format!("density at t = {t}")));
        }
        if let Some(th) = self.inf_threshold {
            if t > th {
                return Err(Error::Domain(format!(
                    "density at t = {t} beyond finite domain (threshold {th})"
                )));
            }
        }
        Ok(self.ln_density(t.ln()).to_ext())
    }

    /// The density as a monotone map (for generalized inversion).
    pub fn density_map(&self) -> MonotoneMap {
        let f = self.clone();
        let g = self.clone();
        MonotoneMap::with_ln(
            move |t| {
                if t <= 0.0 {
                    0.0
                } else {
                    f.ln_density(t.ln()).to_value()
                }
            },
            move |lt| g.ln_density(lt),
        )
    }

    /// The function itself as a monotone map.
    pub fn as_monotone_map(&self) -> MonotoneMap {
        let f = self.clone();
        let g = self.clone();
        MonotoneMap::with_ln(
            move |t| {
                if t <= 0.0 {
                    0.0
                } else {
                    f.ln_eval(t.ln()).to_value()
                }
            },
            move |lt| g.ln_eval(lt),
        )
    }

    pub fn is_finite_everywhere(&self) -> bool {
        self.inf_threshold.is_none()
    }

    /// Young conjugate `Ã(t) = sup_τ (τ t − A(τ)) = ∫₀ᵗ a⁻¹`.
    pub fn conjugate(&self) -> Result<YoungFunction> {
        // Pure power: closed form.
        if self.pieces.len() == 1 && self.inf_threshold.is_none() {
            if let Form::PowerLog { k, p, alpha, .. } = self.pieces[0].form {
                if alpha == 0.0 {
                    if (p - 1.0).abs() < 1e-12 {
                        // conjugate of k t is 0 on [0, k], +∞ beyond
                        return YoungFunction::new(
                            vec![Piece { from: 0.0, form: Form::Zero }],
                            Some(k),
                        );
                    }
                    let pp = p / (p - 1.0);
                    let kk = (1.0 / (k * p)).powf(1.0 / (p - 1.0)) / pp;
                    return YoungFunction::pure_power(kk, pp);
                }
            }
        }
        // L∞ type: conjugate of (0 on [0,T], ∞ beyond) is T·t.
        if self.pieces.iter().all(|p| matches!(p.form, Form::Zero)) {
            let th = self
                .inf_threshold
                .ok_or_else(|| Error::InvalidYoung("cannot conjugate the zero function".into()))?;
            return YoungFunction::pure_power(th, 1.0);
        }
        self.conjugate_numeric()
    }

    /// Pointwise Legendre transform on a log grid of the slope variable.
    fn conjugate_numeric(&self) -> Result<YoungFunction> {
        let dens = self.density_map();
        // If the density is bounded (linear tail) and A is finite
        // everywhere, the conjugate is +∞ beyond the slope bound.
        let conj_threshold = if self.inf_threshold.is_some() {
            None
        } else {
            let a_hi = self.ln_density((1e12f64).ln());
            let a_lo = self.ln_density((1e10f64).ln());
            match (a_hi, a_lo) {
                (LnValue::Finite(h), LnValue::Finite(l)) if (h - l).abs() < 1e-6 => Some(h.exp()),
                _ => None,
            }
        };
        let ln_t_cap = self.inf_threshold.map(|t| t.ln());
        let (ls_lo, ls_hi) = ((1e-12f64).ln(), (1e12f64).ln());
        let knots_n = 240;
        let mut knots: Vec<(f64, f64)> = Vec::with_capacity(knots_n);
        let mut zero_until: Option<f64> = None;
        for i in 0..knots_n {
            let ln_s = ls_lo + (ls_hi - ls_lo) * i as f64 / (knots_n - 1) as f64;
            if let Some(c) = conj_threshold {
                if ln_s > c.ln() {
                    break;
                }
            }
            let mut ln_tau = match dens.generalized_inverse_ln(ln_s) {
                Some(lt) => lt,
                None => match ln_t_cap {
                    Some(cap) => cap,
                    None => break, // slope never attained: conjugate infinite here
                },
            };
            if let Some(cap) = ln_t_cap {
                ln_tau = ln_tau.min(cap);
            }
            if ln_tau < -600.0 {
                // the supremum is attained at τ = 0: value 0
                zero_until = Some(ln_s.exp());
                continue;
            }
            let ln_a = match self.ln_eval(ln_tau) {
                LnValue::Zero => f64::NEG_INFINITY,
                LnValue::Finite(v) => v,
                LnValue::Infinite => continue,
            };
            let ratio = (ln_a - ln_s - ln_tau).exp();
            if ratio >= 1.0 - 1e-13 {
                zero_until = Some(ln_s.exp());
                continue;
            }
            let ln_v = ln_s + ln_tau + (1.0 - ratio).ln();
            knots.push((ln_s, ln_v));
        }
        if knots.len() < 2 {
            return Err(Error::Precondition("conjugate grid degenerate".into()));
        }
        let mut pieces = Vec::new();
        let first_s = knots[0].0.exp();
        if let Some(z) = zero_until {
            pieces.push(Piece { from: 0.0, form: Form::Zero });
            pieces.push(Piece { from: z.min(first_s), form: Form::Tabulated { ln_knots: knots } });
        } else {
            pieces.push(Piece { from: 0.0, form: Form::Tabulated { ln_knots: knots } });
        }
        YoungFunction::new_interpolated(pieces, conj_threshold)
    }

    /// Growth index of A at zero: the slope of
    /// `ln sup_t A(λt)/A(t)` in `ln λ`, fitted jointly with a `1/ln(1/t)`
    /// correction term that absorbs slowly varying log factors.
    pub fn matuszewska_index_zero(&self) -> Result<f64> {
        if let LnValue::Zero = self.ln_eval((1e-6f64).ln()) {
            return Err(Error::Precondition(
                "growth index needs A positive near zero".into(),
            ));
        }
        let t_hi: f64 = 1e-3;
        let mut s = [[0.0f64; 2]; 2];
        let mut b = [0.0f64; 2];
        for j in 1..=10u32 {
            let lam = f64::from(2u32.pow(j));
            for &t in logspace(1e-10, t_hi, 40).iter() {
                if lam * t > t_hi {
                    continue;
                }
                let (va, vb) = (self.ln_eval((lam * t).ln()), self.ln_eval(t.ln()));
                let (va, vb) = match (va, vb) {
                    (LnValue::Finite(x), LnValue::Finite(y)) => (x, y),
                    _ => {
                        return Err(Error::Precondition(
                            "growth index needs A finite and positive near zero".into(),
                        ))
                    }
                };
                let y = va - vb;
                let x = [lam.ln(), lam.ln() / (1.0 / t).ln()];
                for r in 0..2 {
                    for c in 0..2 {
                        s[r][c] += x[r] * x[c];
                    }
                    b[r] += x[r] * y;
                }
            }
        }
        let det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
        if det.abs() < 1e-12 {
            return Err(Error::Precondition("growth-index fit is degenerate".into()));
        }
        Ok((b[0] * s[1][1] - b[1] * s[0][1]) / det)
    }

    /// Does A dominate B on the given range: is there `c` in a dyadic grid
    /// `[2⁻²⁰, 2²⁰]` with `B(t) ≤ A(ct)` at all samples? Returns the
    /// smallest such constant.
    pub fn dominates(&self, b: &YoungFunction, range: DominationRange) -> Domination {
        let mut ts = Vec::new();
        match range {
            DominationRange::Zero => ts.extend(logspace(1e-10, 1e-2, 65)),
            DominationRange::Infinity => ts.extend(logspace(1e2, 1e10, 65)),
            DominationRange::Global => {
                ts.extend(logspace(1e-10, 1e-2, 65));
                ts.extend(logspace(1e-2, 1e2, 33));
                ts.extend(logspace(1e2, 1e10, 65));
            }
        }
        for i in -20..=20i32 {
            let c = 2.0f64.powi(i);
            let ok = ts
                .iter()
                .all(|&t| ln_le(b.ln_eval(t.ln()), self.ln_eval((c * t).ln()), 1e-12));
            if ok {
                return Domination { holds: true, constant: c };
            }
        }
        Domination { holds: false, constant: f64::NAN }
    }

    /// Two-sided domination on the same range.
    pub fn equivalent(&self, b: &YoungFunction, range: DominationRange) -> bool {
        self.dominates(b, range).holds && b.dominates(self, range).holds
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&YoungRepr::from(self)).expect("young function serializes")
    }

    pub fn from_json(s: &str) -> Result<YoungFunction> {
        let repr: YoungRepr = serde_json::from_str(s)?;
        repr.try_into()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DominationRange {
    Zero,
    Infinity,
    Global,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Domination {
    pub holds: bool,
    pub constant: f64,
}

// ---- JSON schema -----------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct YoungRepr {
    pieces: Vec<PieceRepr>,
    inf_threshold: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct PieceRepr {
    from: f64,
    #[serde(flatten)]
    form: FormRepr,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "lowercase")]
enum FormRepr {
    Powerlog { k: f64, p: f64, alpha: f64, log: LogEnd },
    Tabulated { knots: Vec<(f64, f64)> },
    Zero,
}

impl From<&YoungFunction> for YoungRepr {
    fn from(y: &YoungFunction) -> YoungRepr {
        YoungRepr {
            pieces: y
                .pieces
                .iter()
                .map(|pc| PieceRepr {
                    from: pc.from,
                    form: match &pc.form {
                        Form::PowerLog { k, p, alpha, log } => FormRepr::Powerlog {
                            k: *k,
                            p: *p,
                            alpha: *alpha,
                            log: *log,
                        },
                        Form::Tabulated { ln_knots } => FormRepr::Tabulated {
                            knots: ln_knots.iter().map(|&(lt, lv)| (lt.exp(), lv.exp())).collect(),
                        },
                        Form::Zero => FormRepr::Zero,
                    },
                })
                .collect(),
            inf_threshold: y.inf_threshold,
        }
    }
}

impl TryFrom<YoungRepr> for YoungFunction {
    type Error = Error;
    fn try_from(r: YoungRepr) -> Result<YoungFunction> {
        let pieces = r
            .pieces
            .into_iter()
            .map(|pc| {
                let form = match pc.form {
                    FormRepr::Powerlog { k, p, alpha, log } => Form::PowerLog { k, p, alpha, log },
                    FormRepr::Tabulated { knots } => {
                        let ln_knots = knots
                            .iter()
                            .map(|&(t, v)| {
                                if t <= 0.0 || v <= 0.0 {
                                    return Err(Error::InvalidYoung(
                                        "tabulated knots must be positive".into(),
                                    ));
                                }
                                Ok((t.ln(), v.ln()))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Form::Tabulated { ln_knots }
                    }
                    FormRepr::Zero => Form::Zero,
                };
                Ok(Piece { from: pc.from, form })
            })
            .collect::<Result<Vec<_>>>()?;
        YoungFunction::new(pieces, r.inf_threshold)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq() -> YoungFunction {
        YoungFunction::pure_power(1.0, 2.0).unwrap()
    }

    #[test]
    fn eval_power() {
        assert!((sq().eval(3.0).unwrap().value() - 9.0).abs() < 1e-12);
        assert_eq!(sq().eval(0.0).unwrap().value(), 0.0);
        assert!(sq().eval(-1.0).is_err());
    }

    #[test]
    fn eval_linf_type() {
        let a = YoungFunction::linf_type(1.0).unwrap();
        assert_eq!(a.eval(0.5).unwrap().value(), 0.0);
        assert_eq!(a.eval(1.0).unwrap().value(), 0.0); // left-continuous at the threshold
        assert!(a.eval(2.0).unwrap().is_infinite());
    }

    #[test]
    fn density_power() {
        let a = sq();
        assert!((a.density(3.0).unwrap().value() - 6.0).abs() < 1e-12);
        let b = YoungFunction::pure_power(1.0, 1.5).unwrap();
        assert!((b.density(4.0).unwrap().value() - 3.0).abs() < 1e-12);
        // centered difference cross-check
        let h = 1e-6;
        let fd = (b.eval(4.0 + h).unwrap().value() - b.eval(4.0 - h).unwrap().value()) / (2.0 * h);
        assert!((fd - 3.0).abs() < 1e-6);
    }

    #[test]
    fn conjugate_of_square() {
        // conjugate of t² is t²/4
        let c = sq().conjugate().unwrap();
        for &t in &[0.01, 1.0, 7.0, 1e4] {
            let got = c.eval(t).unwrap().value();
            assert!((got / (t * t / 4.0) - 1.0).abs() < 1e-12, "t={t}: {got}");
        }
    }

    #[test]
    fn conjugate_of_linear_and_back() {
        let a = YoungFunction::pure_power(2.0, 1.0).unwrap();
        let c = a.conjugate().unwrap();
        assert_eq!(c.eval(1.5).unwrap().value(), 0.0);
        assert!(c.eval(2.5).unwrap().is_infinite());
        // conjugate of the L∞-type block is linear again
        let back = c.conjugate().unwrap();
        assert!((back.eval(3.0).unwrap().value() - 6.0).abs() < 1e-9);
    }

    #[test]
    fn numeric_conjugate_matches_closed_form() {
        // Force the numeric path with a two-piece splice p=2 then p=3;
        // compare against the sup formula on a grid.
        let a = YoungFunction::new(
            vec![
                Piece { from: 0.0, form: Form::PowerLog { k: 1.0, p: 2.0, alpha: 0.0, log: LogEnd::Zero } },
                Piece { from: 1.0, form: Form::PowerLog { k: 1.0, p: 3.0, alpha: 0.0, log: LogEnd::Zero } },
            ],
            None,
        )
        .unwrap();
        let c = a.conjugate().unwrap();
        for &s in &[0.1, 1.0, 10.0, 1e3] {
            let sup = logspace(1e-8, 1e8, 4000)
                .iter()
                .map(|&t| s * t - a.eval(t).unwrap().value())
                .fold(0.0f64, f64::max);
            let got = c.eval(s).unwrap().value();
            let tol = 1e-3 * sup.max(1e-300);
            assert!((got - sup).abs() <= tol.max(1e-9), "s={s}: {got} vs {sup}");
        }
    }

    #[test]
    fn biconjugation_round_trip() {
        for &(k, p) in &[(1.0, 2.0), (0.5, 1.5), (3.0, 4.0)] {
            let a = YoungFunction::pure_power(k, p).unwrap();
            let aa = a.conjugate().unwrap().conjugate().unwrap();
            for &t in logspace(1e-9, 1e9, 20).iter() {
                let (x, y) = (a.eval(t).unwrap().value(), aa.eval(t).unwrap().value());
                assert!((x / y - 1.0).abs() < 1e-6, "k={k} p={p} t={t}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn growth_index_pure_powers() {
        for &p in &[1.0, 1.5, 2.0, 3.7] {
            let a = YoungFunction::pure_power(1.0, p).unwrap();
            let i0 = a.matuszewska_index_zero().unwrap();
            assert!((i0 - p).abs() < 0.01 * p, "p={p}: {i0}");
        }
    }

    #[test]
    fn growth_index_with_log_factor() {
        // t² (ln 1/t)³ near zero, bridged to a pure power past 1e-3
        let t0: f64 = 1e-3;
        let l = (1.0 / t0).ln();
        let p_bridge = 2.0 - 3.0 / l;
        let a = YoungFunction::new(
            vec![
                Piece { from: 0.0, form: Form::PowerLog { k: 1.0, p: 2.0, alpha: 3.0, log: LogEnd::Zero } },
                Piece { from: t0, form: Form::PowerLog { k: 1.0, p: p_bridge, alpha: 0.0, log: LogEnd::Zero } },
            ],
            None,
        )
        .unwrap();
        let i0 = a.matuszewska_index_zero().unwrap();
        assert!((i0 - 2.0).abs() < 0.04, "got {i0}");
    }

    #[test]
    fn growth_index_rejects_zero_plateau() {
        let a = YoungFunction::linf_type(1.0).unwrap();
        assert!(a.matuszewska_index_zero().is_err());
    }

    #[test]
    fn domination_cases() {
        let a2 = sq();
        let a3 = YoungFunction::pure_power(1.0, 3.0).unwrap();
        let d = a2.dominates(&a2, DominationRange::Global);
        assert!(d.holds && (d.constant - 1.0).abs() < 1e-12);
        assert!(a3.dominates(&a2, DominationRange::Infinity).holds);
        assert!(a2.dominates(&a3, DominationRange::Zero).holds);
        // t⁴ outgrows (ct)² for every c in the dyadic grid
        let a4 = YoungFunction::pure_power(1.0, 4.0).unwrap();
        assert!(!a2.dominates(&a4, DominationRange::Infinity).holds);
    }

    #[test]
    fn json_round_trip() {
        let a = YoungFunction::new(
            vec![Piece { from: 0.0, form: Form::PowerLog { k: 1.0, p: 1.5, alpha: 0.0, log: LogEnd::Zero } }],
            None,
        )
        .unwrap();
        let s = a.to_json();
        assert!(s.contains("\"powerlog\""), "{s}");
        let b = YoungFunction::from_json(&s).unwrap();
        assert!((b.eval(2.0).unwrap().value() - a.eval(2.0).unwrap().value()).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonconvex() {
        // concave: t^0.5 has p < 1
        assert!(YoungFunction::pure_power(1.0, 0.5).is_err());
        // decreasing tabulated
        let bad = YoungFunction::new(
            vec![Piece { from: 0.0, form: Form::Tabulated { ln_knots: vec![(0.0, 1.0), (1.0, 0.0)] } }],
            None,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn youngs_inequality_sampled() {
        let a = sq();
        let c = a.conjugate().unwrap();
        for &tau in logspace(1e-2, 100.0, 25).iter() {
            for &t in logspace(1e-2, 100.0, 25).iter() {
                let lhs = tau * t;
                let rhs = a.eval(tau).unwrap().value() + c.eval(t).unwrap().value();
                assert!(lhs <= rhs + 1e-9, "tau={tau} t={t}");
            }
        }
    }
}
