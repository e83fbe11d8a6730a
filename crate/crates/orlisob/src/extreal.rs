//! Extended nonnegative reals `[0, ∞]` and a log-scale companion type.
//!
//! Young functions take values in `[0, ∞]`, and several constructions in
//! this crate (optimal Orlicz targets with exponential decay near zero)
//! produce values far outside the range of `f64`. `ExtReal` is the public
//! face; `LnValue` carries the same information on a logarithmic scale so
//! that quantities like `exp(-1e12)` stay representable.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A nonnegative real number or positive infinity. Never NaN or negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal(0.0);
    pub const INFINITY: ExtReal = ExtReal(f64::INFINITY);

    /// Wraps a value, which must be nonnegative and not NaN.
    pub fn new(v: f64) -> ExtReal {
        assert!(v >= 0.0, "ExtReal must be nonnegative, got {v}");
        ExtReal(v)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

impl From<ExtReal> for f64 {
    fn from(x: ExtReal) -> f64 {
        x.0
    }
}

impl std::ops::Add for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: ExtReal) -> ExtReal {
        ExtReal(self.0 + rhs.0)
    }
}

impl std::ops::Mul<f64> for ExtReal {
    type Output = ExtReal;
    fn mul(self, rhs: f64) -> ExtReal {
        assert!(rhs > 0.0, "ExtReal scaling requires a positive factor");
        ExtReal(self.0 * rhs)
    }
}

impl std::fmt::Display for ExtReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

// JSON has no infinity literal; use the string "inf" for it.
impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<ExtReal, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) if v >= 0.0 => Ok(ExtReal(v)),
            Raw::Num(v) => Err(D::Error::custom(format!("negative ExtReal {v}"))),
            Raw::Str(s) if s == "inf" => Ok(ExtReal::INFINITY),
            Raw::Str(s) => Err(D::Error::custom(format!("bad ExtReal literal {s:?}"))),
        }
    }
}

/// The natural logarithm of a value in `[0, ∞]`.
///
/// `Zero` stands for `ln 0 = -∞` (the value 0), `Infinite` for `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LnValue {
    Zero,
    Finite(f64),
    Infinite,
}

impl LnValue {
    pub fn from_value(v: f64) -> LnValue {
        if v == 0.0 {
            LnValue::Zero
        } else if v.is_infinite() {
            LnValue::Infinite
        } else {
            LnValue::Finite(v.ln())
        }
    }

    /// Exponentiates back to a plain value; may under/overflow to 0 or ∞.
    pub fn to_value(self) -> f64 {
        match self {
            LnValue::Zero => 0.0,
            LnValue::Finite(l) => l.exp(),
            LnValue::Infinite => f64::INFINITY,
        }
    }

    pub fn to_ext(self) -> ExtReal {
        ExtReal::new(self.to_value())
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            LnValue::Finite(l) => Some(l),
            _ => None,
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, LnValue::Zero)
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, LnValue::Infinite)
    }

    /// Adds on the log scale, i.e. multiplies the underlying values.
    pub fn shift(self, dl: f64) -> LnValue {
        match self {
            LnValue::Finite(l) => LnValue::Finite(l + dl),
            other => other,
        }
    }
}
