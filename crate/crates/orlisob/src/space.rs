use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ambient dimension and non-integer smoothness order.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SpaceParams {
    pub n: u32,
    pub s: f64,
}

impl SpaceParams {
    pub fn new(n: u32, s: f64) -> Result<SpaceParams> {
        if n == 0 {
            return Err(Error::Domain("dimension n must be positive".into()));
        }
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::Domain(format!("smoothness s must be positive, got {s}")));
        }
        if (s - s.round()).abs() < 1e-12 {
            return Err(Error::Domain(format!("smoothness s must be non-integer, got {s}")));
        }
        Ok(SpaceParams { n, s })
    }

    /// Integer part `[s]`.
    pub fn int_part(&self) -> u32 {
        self.s.floor() as u32
    }

    /// Fractional part `{s} = s - [s]`, always in (0,1).
    pub fn frac_part(&self) -> f64 {
        self.s - self.s.floor()
    }

    /// True when `s < n`, the range where the embedding machinery applies.
    pub fn in_dimension_range(&self) -> bool {
        self.s < self.n as f64
    }

    /// Exponent `s/(n-s)` of the regime integrals. Requires `s < n`.
    pub fn sigma(&self) -> Result<f64> {
        if !self.in_dimension_range() {
            return Err(Error::Precondition(format!(
                "s/(n-s) requires s < n, got s={} n={}",
                self.s, self.n
            )));
        }
        Ok(self.s / (self.n as f64 - self.s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parts() {
        let p = SpaceParams::new(1, 1.5).unwrap();
        assert_eq!(p.int_part(), 1);
        assert!((p.frac_part() - 0.5).abs() < 1e-15);
        assert!(!p.in_dimension_range());
        let q = SpaceParams::new(1, 0.5).unwrap();
        assert!((q.sigma().unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_integers() {
        assert!(SpaceParams::new(1, 2.0).is_err());
        assert!(SpaceParams::new(0, 0.5).is_err());
        assert!(SpaceParams::new(2, -0.5).is_err());
    }
}
