//! Non-decreasing scalar maps and their generalized left-continuous inverses.

use std::sync::Arc;

use crate::extreal::LnValue;

/// Bisection for the infimum of `{ x in [lo, hi] : pred(x) }`, assuming the
/// predicate set is an up-set (false below, true above). `lo` must fail the
/// predicate and `hi` satisfy it. Returns the upper end of the final bracket.
pub fn bisect_infimum(mut lo: f64, mut hi: f64, iters: usize, pred: impl Fn(f64) -> bool) -> f64 {
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// A non-decreasing map on `[0, ∞)`, with an optional log-scale evaluator
/// so that inversion can reach arguments far below `f64` range.
#[derive(Clone)]
pub struct MonotoneMap {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    ln_eval: Option<Arc<dyn Fn(f64) -> LnValue + Send + Sync>>,
    /// Least upper bound of the range, if known (e.g. a bounded map).
    sup: Option<f64>,
}

impl MonotoneMap {
    pub fn new(eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> MonotoneMap {
        MonotoneMap { eval: Arc::new(eval), ln_eval: None, sup: None }
    }

    pub fn with_ln(
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        ln_eval: impl Fn(f64) -> LnValue + Send + Sync + 'static,
    ) -> MonotoneMap {
        MonotoneMap { eval: Arc::new(eval), ln_eval: Some(Arc::new(ln_eval)), sup: None }
    }

    pub fn with_sup(mut self, sup: f64) -> MonotoneMap {
        self.sup = Some(sup);
        self
    }

    pub fn sup(&self) -> Option<f64> {
        self.sup
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(t)
    }

    /// Log-scale evaluation; falls back to the plain evaluator.
    pub fn ln_eval(&self, ln_t: f64) -> LnValue {
        match &self.ln_eval {
            Some(f) => f(ln_t),
            None => LnValue::from_value((self.eval)(ln_t.exp())),
        }
    }

    /// Generalized left-continuous inverse: `inf { t >= 0 : f(t) >= y }`,
    /// with `inf ∅ = +∞`. At jump points this lands on the jump itself.
    pub fn generalized_inverse(&self, y: f64) -> f64 {
        if y <= 0.0 || (self.eval)(0.0) >= y {
            return 0.0;
        }
        if let Some(sup) = self.sup {
            if sup < y {
                return f64::INFINITY;
            }
        }
        // Bracket on a log axis: grow until f(hi) >= y or give up at 1e300.
        let mut lo_ln: f64 = -700.0;
        if (self.eval)(lo_ln.exp()) >= y {
            // f positive arbitrarily close to 0; the infimum is 0 for our purposes.
            return 0.0;
        }
        let mut hi_ln = lo_ln;
        let mut found = false;
        while hi_ln < 700.0 {
            hi_ln += 20.0;
            if (self.eval)(hi_ln.exp()) >= y {
                found = true;
                break;
            }
            lo_ln = hi_ln;
        }
        if !found {
            return f64::INFINITY;
        }
        bisect_infimum(lo_ln, hi_ln, 120, |lt| (self.eval)(lt.exp()) >= y).exp()
    }

    /// Log-scale inverse: returns `ln t` with `f(t) >= exp(ln_y)` minimal.
    /// The search ranges over `ln t` down to -1e306, which covers the
    /// double-exponentially small arguments of supercritical targets.
    /// Returns None when the level is never reached (inverse is +∞).
    pub fn generalized_inverse_ln(&self, ln_y: f64) -> Option<f64> {
        let ge = |lt: f64| match self.ln_eval(lt) {
            LnValue::Zero => false,
            LnValue::Finite(l) => l >= ln_y,
            LnValue::Infinite => true,
        };
        // Establish an upper bracket.
        let mut hi = 0.0;
        if !ge(hi) {
            let mut found = false;
            while hi < 710.0 {
                hi += 30.0;
                if ge(hi) {
                    found = true;
                    break;
                }
            }
            if !found {
                if let Some(sup) = self.sup {
                    if sup.ln() < ln_y {
                        return None;
                    }
                }
                return None;
            }
        }
        // Establish a lower bracket, expanding geometrically to reach
        // extremely negative logs.
        let mut lo = -8.0;
        while ge(lo) {
            lo *= 4.0;
            if lo < -1e306 {
                return Some(lo); // saturates: effectively t = 0+
            }
        }
        Some(bisect_infimum(lo, hi, 200, ge))
    }
}
