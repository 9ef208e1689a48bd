use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classifier::{check_beta0, Sign};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    PerpCircle,
    ParCircle,
    ParHelix,
    /// `T_i + iT_{n+i} = ρ_i e^{i(ωs+θ_i)}`, constant `η(T) = f`.
    Rotation,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::PerpCircle => "perp-circle",
            GeneratorKind::ParCircle => "par-circle",
            GeneratorKind::ParHelix => "par-helix",
            GeneratorKind::Rotation => "rotation",
        })
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "perp-circle" => Ok(GeneratorKind::PerpCircle),
            "par-circle" => Ok(GeneratorKind::ParCircle),
            "par-helix" => Ok(GeneratorKind::ParHelix),
            "rotation" => Ok(GeneratorKind::Rotation),
            other => Err(Error::InvalidParameter(format!("unknown generator kind {other:?}"))),
        }
    }
}

/// Parameters of a generated curve, as read from JSON.
///
/// Vectors left empty mean zero vectors of length `n`. `a`, `b`, `z0` are the
/// integration constants of the coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorParams {
    pub kind: GeneratorKind,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta0_cos2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<Sign>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa1: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub c1: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub c2: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d1: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d2: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub a: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub b: Vec<f64>,
    #[serde(default)]
    pub z0: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rho: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub theta: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<f64>,
}

impl GeneratorParams {
    pub fn new(kind: GeneratorKind, n: usize) -> Self {
        GeneratorParams {
            kind,
            n,
            beta0: None,
            beta0_cos2: None,
            sign: None,
            kappa1: None,
            c1: Vec::new(),
            c2: Vec::new(),
            d1: Vec::new(),
            d2: Vec::new(),
            a: Vec::new(),
            b: Vec::new(),
            z0: 0.0,
            rho: Vec::new(),
            theta: Vec::new(),
            omega: None,
            f: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// The vector as given, or zeros when empty.
    pub fn vector(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.is_empty() {
            return Ok(vec![0.0; self.n]);
        }
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("parameter vector"));
        }
        Ok(v.to_vec())
    }

    /// `β₀` from `beta0`, or first-quadrant from `beta0_cos2`.
    pub fn resolve_beta0(&self) -> Result<Option<f64>> {
        let b = match (self.beta0, self.beta0_cos2) {
            (Some(b), None) => b,
            (None, Some(c2)) => {
                if !(c2 > 0.0 && c2 < 1.0) {
                    return Err(Error::InadmissibleAngle(format!("beta0_cos2 = {c2} must lie in (0, 1)")));
                }
                c2.sqrt().acos()
            }
            (None, None) => return Ok(None),
            (Some(_), Some(_)) => {
                return Err(Error::InvalidParameter("give beta0 or beta0_cos2, not both".into()));
            }
        };
        check_beta0(b)?;
        Ok(Some(b))
    }

    pub fn require_beta0(&self) -> Result<f64> {
        self.resolve_beta0()?.ok_or(Error::MissingScalar("beta0"))
    }
}

pub(crate) fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}
