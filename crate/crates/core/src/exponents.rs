//! Integrability exponents in `[1, ∞]` with `∞` carried as its own variant.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    /// Maps `f64::INFINITY` to [`Exponent::Infinite`].
    pub fn from_f64(value: f64) -> Self {
        if value == f64::INFINITY {
            Exponent::Infinite
        } else {
            Exponent::Finite(value)
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinite => f64::INFINITY,
        }
    }

    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinite => 0.0,
        }
    }

    pub fn from_reciprocal(r: f64) -> Self {
        if r == 0.0 {
            Exponent::Infinite
        } else {
            Exponent::Finite(1.0 / r)
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Exponent::Finite(_))
    }

    fn validate(self, axis: usize) -> Result<()> {
        match self {
            Exponent::Finite(p) if !(p >= 1.0 && p.is_finite()) => {
                Err(Error::InvalidExponent { axis, value: p })
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => s.serialize_f64(*p),
            Exponent::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(p) => Ok(Exponent::from_f64(p)),
            Raw::Text(s) => match s.trim() {
                "inf" | "infinity" | "∞" => Ok(Exponent::Infinite),
                other => other
                    .parse::<f64>()
                    .map(Exponent::from_f64)
                    .map_err(|_| serde::de::Error::custom(format!("bad exponent {other:?}"))),
            },
        }
    }
}

/// Per-axis exponent vector; axis 1 first.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct MixedExponents {
    exponents: Vec<Exponent>,
}

impl<'de> Deserialize<'de> for MixedExponents {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Exponent>::deserialize(d)?;
        MixedExponents::new(raw).map_err(serde::de::Error::custom)
    }
}

impl MixedExponents {
    pub fn new(exponents: Vec<Exponent>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::InvalidParameter("empty exponent vector".into()));
        }
        for (k, e) in exponents.iter().enumerate() {
            e.validate(k)?;
        }
        Ok(Self { exponents })
    }

    /// `f64::INFINITY` entries become [`Exponent::Infinite`].
    pub fn from_f64s(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&p| Exponent::from_f64(p)).collect())
    }

    pub fn uniform(n: usize, p: Exponent) -> Result<Self> {
        Self::new(vec![p; n])
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn get(&self, axis: usize) -> Exponent {
        self.exponents[axis]
    }

    pub fn as_slice(&self) -> &[Exponent] {
        &self.exponents
    }

    pub fn reciprocals(&self) -> Vec<f64> {
        self.exponents.iter().map(|e| e.reciprocal()).collect()
    }

    /// `Σ 1/p_k`, summed in axis order.
    pub fn criticality_sum(&self) -> f64 {
        self.exponents.iter().map(|e| e.reciprocal()).sum()
    }

    /// Per-axis `p_k / s_k`; the result must stay in `[1, ∞]`.
    pub fn divide(&self, splits: &[f64]) -> Result<Self> {
        if splits.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: splits.len(),
            });
        }
        let out = self
            .exponents
            .iter()
            .zip(splits)
            .enumerate()
            .map(|(k, (e, &s))| {
                if !(s > 0.0 && s.is_finite()) {
                    return Err(Error::SplitOutOfRange {
                        axis: k,
                        reason: format!("split {s} is not positive"),
                    });
                }
                match e {
                    Exponent::Infinite => Ok(Exponent::Infinite),
                    Exponent::Finite(p) => Ok(Exponent::Finite(p / s)),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(out)
    }
}

impl fmt::Display for MixedExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.exponents.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}
