//! Weight sequences `W = (W_t)`, indexed by path length `t >= 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightError {
    #[error("weight index must be >= 1, got {0}")]
    ZeroIndex(usize),
    #[error("explicit weight list has {len} terms but W_{requested} was requested")]
    LengthExceeded { requested: usize, len: usize },
    #[error("invalid weight sequence parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse weight sequence {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// `W_t` is zero, negative or not finite.
    NotPositive,
    /// `W_t > W_{t-1}`.
    Increasing,
    /// The explicit list ends before the horizon.
    TooShort,
}

/// First index at which a sequence fails to be a positive non-increasing
/// sequence on `[1, horizon]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("weight sequence invalid at t = {index}: {kind:?}")]
pub struct WeightViolation {
    pub index: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightSequence {
    /// `W_t = c`.
    Constant(f64),
    /// `W_t = 1 / t^k`.
    InversePower(f64),
    /// `W_t = values[t - 1]`.
    ExplicitList(Vec<f64>),
}

impl WeightSequence {
    pub fn constant(c: f64) -> Result<Self, WeightError> {
        if c > 0.0 && c.is_finite() {
            Ok(WeightSequence::Constant(c))
        } else {
            Err(WeightError::InvalidParameter(format!(
                "constant weight must be positive and finite, got {c}"
            )))
        }
    }

    pub fn inverse_power(k: f64) -> Result<Self, WeightError> {
        if k > 0.0 && k.is_finite() {
            Ok(WeightSequence::InversePower(k))
        } else {
            Err(WeightError::InvalidParameter(format!(
                "inverse power exponent must be positive and finite, got {k}"
            )))
        }
    }

    pub fn explicit(values: Vec<f64>) -> Result<Self, WeightError> {
        if values.is_empty() {
            return Err(WeightError::InvalidParameter(
                "explicit weight list is empty".into(),
            ));
        }
        Ok(WeightSequence::ExplicitList(values))
    }

    /// `W_t` for `t >= 1`.
    pub fn weight_at(&self, t: usize) -> Result<f64, WeightError> {
        if t == 0 {
            return Err(WeightError::ZeroIndex(t));
        }
        match self {
            WeightSequence::Constant(c) => Ok(*c),
            WeightSequence::InversePower(k) => Ok(1.0 / power(t, *k)),
            WeightSequence::ExplicitList(values) => {
                values
                    .get(t - 1)
                    .copied()
                    .ok_or(WeightError::LengthExceeded {
                        requested: t,
                        len: values.len(),
                    })
            }
        }
    }

    /// `W_len · sum`, with the empty path (`len == 0`) at distance zero.
    pub fn scaled(&self, sum: f64, len: usize) -> Result<f64, WeightError> {
        if len == 0 {
            return Ok(0.0);
        }
        Ok(self.weight_at(len)? * sum)
    }

    /// Positivity and non-increase on `[1, horizon]`, compared exactly.
    pub fn validate(&self, horizon: usize) -> Result<(), WeightViolation> {
        let mut prev = f64::INFINITY;
        for t in 1..=horizon.max(1) {
            let w = self.weight_at(t).map_err(|_| WeightViolation {
                index: t,
                kind: ViolationKind::TooShort,
            })?;
            if !(w > 0.0 && w.is_finite()) {
                return Err(WeightViolation {
                    index: t,
                    kind: ViolationKind::NotPositive,
                });
            }
            if w > prev {
                return Err(WeightViolation {
                    index: t,
                    kind: ViolationKind::Increasing,
                });
            }
            prev = w;
        }
        Ok(())
    }

    /// Exponent `k` when this is `1/t^k`.
    pub fn power_exponent(&self) -> Option<f64> {
        match self {
            WeightSequence::InversePower(k) => Some(*k),
            _ => None,
        }
    }
}

fn power(t: usize, k: f64) -> f64 {
    let t = t as f64;
    if k.fract() == 0.0 && k.abs() <= i32::MAX as f64 {
        t.powi(k as i32)
    } else {
        t.powf(k)
    }
}

impl Default for WeightSequence {
    fn default() -> Self {
        WeightSequence::InversePower(1.0)
    }
}

impl fmt::Display for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSequence::Constant(c) => write!(f, "const:{c}"),
            WeightSequence::InversePower(k) => write!(f, "invpow:{k}"),
            WeightSequence::ExplicitList(values) => {
                write!(f, "list:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for WeightSequence {
    type Err = WeightError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parse_err = |reason: String| WeightError::Parse {
            text: text.to_string(),
            reason,
        };
        let number = |s: &str| -> Result<f64, WeightError> {
            s.trim()
                .parse::<f64>()
                .map_err(|e| parse_err(format!("{s:?}: {e}")))
        };
        let (kind, rest) = text
            .split_once(':')
            .ok_or_else(|| parse_err("expected const:<c>, invpow:<k> or list:v1,v2,...".into()))?;
        match kind.trim() {
            "const" => WeightSequence::constant(number(rest)?),
            "invpow" => WeightSequence::inverse_power(number(rest)?),
            "list" => {
                let values = rest.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
                WeightSequence::explicit(values)
            }
            other => Err(parse_err(format!("unknown form {other:?}"))),
        }
    }
}

impl Serialize for WeightSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for WeightSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
