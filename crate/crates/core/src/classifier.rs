//! Admissible curvature data for biharmonic curves with constant contact
//! angle, in closed form and by a residual scan over `κ₁`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitension::system_residuals;
use crate::error::{Error, Result};
use crate::frenet::{FrenetData, KappaDerivatives, StructureScalars};

/// Margin around excluded angles.
pub const ANGLE_MARGIN: f64 = 1e-9;
/// Absolute tolerance for positivity and vanishing tests.
pub const POSITIVITY_TOL: f64 = 1e-12;
/// A scanned minimum counts as a root when `|r|` falls below this.
pub const SCAN_ROOT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "serde_json::Value", into = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        match s {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Sign> {
        match s.trim() {
            "+" | "+1" | "1" | "plus" => Ok(Sign::Plus),
            "-" | "-1" | "minus" => Ok(Sign::Minus),
            other => Err(Error::InvalidParameter(format!("sign must be + or -, got {other:?}"))),
        }
    }
}

impl TryFrom<serde_json::Value> for Sign {
    type Error = String;

    fn try_from(v: serde_json::Value) -> std::result::Result<Sign, String> {
        match &v {
            serde_json::Value::Number(n) => match n.as_f64() {
                Some(x) if x == 1.0 => Ok(Sign::Plus),
                Some(x) if x == -1.0 => Ok(Sign::Minus),
                _ => Err(format!("sign must be 1 or -1, got {n}")),
            },
            serde_json::Value::String(s) => s.parse().map_err(|e: Error| e.to_string()),
            _ => Err(format!("sign must be a number or string, got {v}")),
        }
    }
}

/// Contact angles and the `±` branch.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct AngleParams {
    pub beta0: Option<f64>,
    pub beta1: Option<f64>,
    pub beta2: Option<f64>,
    pub sign: Option<Sign>,
}

impl AngleParams {
    pub fn with_beta0(beta0: f64) -> Self {
        AngleParams {
            beta0: Some(beta0),
            ..Default::default()
        }
    }

    /// First-quadrant `β₀` with the given `cos²β₀`.
    pub fn from_cos2(cos2: f64) -> Result<Self> {
        if !(cos2 > 0.0 && cos2 < 1.0) {
            return Err(Error::InadmissibleAngle(format!("cos^2(beta0) = {cos2} must lie in (0, 1)")));
        }
        Ok(Self::with_beta0(cos2.sqrt().acos()))
    }

    pub fn signed(mut self, sign: Sign) -> Self {
        self.sign = Some(sign);
        self
    }

    pub fn beta0(&self) -> Result<f64> {
        let b = self.beta0.ok_or(Error::MissingScalar("beta0"))?;
        check_beta0(b)?;
        Ok(b)
    }

    pub fn beta1(&self) -> Result<f64> {
        let b = self.beta1.ok_or(Error::MissingScalar("beta1"))?;
        check_beta1(b)?;
        Ok(b)
    }

    pub fn beta2(&self) -> Result<Option<f64>> {
        match self.beta2 {
            None => Ok(None),
            Some(b) if b.is_finite() && b > 0.0 && b < 2.0 * PI => Ok(Some(b)),
            Some(b) => Err(Error::InadmissibleAngle(format!("beta2 = {b} outside (0, 2pi)"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.beta0.is_some() {
            self.beta0()?;
        }
        if self.beta1.is_some() {
            self.beta1()?;
        }
        self.beta2()?;
        Ok(())
    }
}

pub fn check_beta0(b: f64) -> Result<()> {
    if !b.is_finite() || b <= ANGLE_MARGIN || b >= 2.0 * PI - ANGLE_MARGIN {
        return Err(Error::InadmissibleAngle(format!("beta0 = {b} outside (0, 2pi)")));
    }
    for ex in [FRAC_PI_2, PI, 3.0 * FRAC_PI_2] {
        if (b - ex).abs() <= ANGLE_MARGIN {
            return Err(Error::InadmissibleAngle(format!("beta0 = {b} too close to {ex}")));
        }
    }
    Ok(())
}

pub fn check_beta1(b: f64) -> Result<()> {
    if !b.is_finite() || b <= ANGLE_MARGIN || b >= PI - ANGLE_MARGIN || (b - FRAC_PI_2).abs() <= ANGLE_MARGIN {
        return Err(Error::InadmissibleAngle(format!("beta1 = {b} must lie in (0, pi) away from pi/2")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Circle,
    Helix,
    Order4,
    Inadmissible,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveKind::Circle => "circle",
            CurveKind::Helix => "helix",
            CurveKind::Order4 => "order4",
            CurveKind::Inadmissible => "inadmissible",
        })
    }
}

/// One admissible branch. Curvatures left `None` belong to a family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub kind: CurveKind,
    pub sign: Option<Sign>,
    pub kappa1: Option<f64>,
    pub kappa2: Option<f64>,
    pub kappa3: Option<f64>,
    pub boundary: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedResidual {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub kind: CurveKind,
    pub kappa1: Option<f64>,
    pub kappa2: Option<f64>,
    pub kappa3: Option<f64>,
    pub solutions: Vec<Solution>,
    /// Residuals that vanish for an admissible answer.
    pub constraints: Vec<NamedResidual>,
    /// Evaluated quantities whose sign decides admissibility.
    pub quantities: Vec<NamedResidual>,
    pub requirements: Vec<String>,
    pub notes: Vec<String>,
    pub boundary: bool,
}

impl ClassificationResult {
    fn empty() -> Self {
        ClassificationResult {
            kind: CurveKind::Inadmissible,
            kappa1: None,
            kappa2: None,
            kappa3: None,
            solutions: Vec::new(),
            constraints: Vec::new(),
            quantities: Vec::new(),
            requirements: Vec::new(),
            notes: Vec::new(),
            boundary: false,
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.kind != CurveKind::Inadmissible
    }

    /// Largest `|value|` over the listed constraints.
    pub fn max_constraint_residual(&self) -> f64 {
        self.constraints.iter().map(|r| r.value.abs()).fold(0.0, f64::max)
    }

    /// `κ₁` of every solution that pins it, in order.
    pub fn kappa1_values(&self) -> Vec<f64> {
        self.solutions.iter().filter_map(|s| s.kappa1).collect()
    }

    fn push(&mut self, name: impl Into<String>, value: f64) {
        self.constraints.push(NamedResidual {
            name: name.into(),
            value,
        });
    }

    fn quantity(&mut self, name: impl Into<String>, value: f64) {
        self.quantities.push(NamedResidual {
            name: name.into(),
            value,
        });
    }

    /// Picks the headline kind and curvatures: a circle if one exists, else the
    /// first admissible solution.
    fn settle(mut self) -> Self {
        self.boundary = self.solutions.iter().any(|s| s.boundary);
        let head = self
            .solutions
            .iter()
            .find(|s| s.kind == CurveKind::Circle)
            .or_else(|| self.solutions.first())
            .cloned();
        if let Some(h) = head {
            self.kind = h.kind;
            self.kappa1 = h.kappa1;
            self.kappa2 = h.kappa2;
            self.kappa3 = h.kappa3;
        } else {
            self.kind = CurveKind::Inadmissible;
        }
        self
    }
}

fn require_c_not_one(c: f64) -> Result<()> {
    if !c.is_finite() {
        return Err(Error::NonFinite("c"));
    }
    if (c - 1.0).abs() <= POSITIVITY_TOL {
        return Err(Error::CIsOne);
    }
    Ok(())
}

/// Curvature and structure data of a constant-angle curve, shaped for
/// [`system_residuals`]. `alpha = g(E₂, φT)`; `φT` has no `E₃`, `E₄` part.
pub fn mode_data(kappa1: f64, kappa2: f64, f: f64, alpha: f64) -> (FrenetData, StructureScalars) {
    let helix = kappa2 > 0.0;
    let scalars = StructureScalars {
        f,
        fprime: 0.0,
        fprime_alt: 0.0,
        alpha: Some(alpha),
        g3: helix.then_some(0.0),
        g4: None,
        eta2: Some(0.0),
        eta3: helix.then_some(0.0),
        eta4: None,
    };
    let fd = FrenetData {
        e: Vec::new(),
        kappa: if helix { vec![kappa1, kappa2] } else { vec![kappa1] },
        order: if helix { 3 } else { 2 },
        dkappa: KappaDerivatives {
            kappa1_prime: 0.0,
            kappa1_second: 0.0,
            kappa2_prime: helix.then_some(0.0),
        },
        scalars: scalars.clone(),
    };
    (fd, scalars)
}

fn system_max(c: f64, kappa1: f64, kappa2: f64, f: f64, alpha: f64) -> Result<f64> {
    let (fd, ss) = mode_data(kappa1, kappa2, f, alpha);
    let r = system_residuals(&fd, &ss, c)?;
    Ok(r.max_abs().max(r.r1.abs()))
}

/// The `c = 1` case: circles with `κ₁ = 1` and helices with `κ₁² + κ₂² = 1`.
pub fn classify_c1(kappa1: f64, kappa2: Option<f64>) -> ClassificationResult {
    let mut out = ClassificationResult::empty();
    out.notes.push("c = 1: tau2 = 0 iff kappa1 = cst, kappa1^2 + kappa2^2 = 1, kappa2 kappa3 = 0".into());
    let positive = kappa1 > POSITIVITY_TOL;
    match kappa2 {
        None => {
            let r = kappa1 - 1.0;
            out.push("kappa1 - 1", r);
            if positive && r.abs() <= POSITIVITY_TOL {
                out.solutions.push(Solution {
                    kind: CurveKind::Circle,
                    sign: None,
                    kappa1: Some(kappa1),
                    kappa2: None,
                    kappa3: None,
                    boundary: false,
                    note: "circle with kappa1 = 1".into(),
                });
            }
        }
        Some(k2) => {
            let r = kappa1 * kappa1 + k2 * k2 - 1.0;
            out.push("kappa1^2 + kappa2^2 - 1", r);
            out.push("kappa2 kappa3", 0.0);
            if positive && k2 > POSITIVITY_TOL && r.abs() <= POSITIVITY_TOL {
                out.solutions.push(Solution {
                    kind: CurveKind::Helix,
                    sign: None,
                    kappa1: Some(kappa1),
                    kappa2: Some(k2),
                    kappa3: Some(0.0),
                    boundary: false,
                    note: "helix with kappa1^2 + kappa2^2 = 1, kappa3 = 0".into(),
                });
            }
        }
    }
    out.settle()
}

/// Right side of `κ₁² + κ₂² = (c+3)/4 − ((c−1)/4)cos²β₀` for `∇_T T ⊥ φT`.
pub fn perp_rhs(c: f64, cos_beta0: f64) -> f64 {
    (c + 3.0) / 4.0 - (c - 1.0) / 4.0 * cos_beta0 * cos_beta0
}

pub const PERP_CIRCLE_NOTE: &str = "circle branch is not realized by any curve: constant eta(T) = f forces \
g(nabla_T T, phi T) = -kappa1^2 f, which vanishes only for f = 0, so nabla_T T cannot be orthogonal to phi T \
on a circle with cos(beta0) != 0";

/// `∇_T T ⊥ φT` with constant contact angle `β₀`.
pub fn admissible_perp(c: f64, angles: &AngleParams) -> Result<ClassificationResult> {
    require_c_not_one(c)?;
    let b0 = angles.beta0()?;
    let cb = b0.cos();
    let rhs = perp_rhs(c, cb);
    let mut out = ClassificationResult::empty();
    out.requirements.push("n >= 2".into());
    out.quantity("(c+3)/4 - ((c-1)/4)cos^2(beta0)", rhs);
    if rhs > POSITIVITY_TOL {
        let k1 = rhs.sqrt();
        out.push("circle: system residual", system_max(c, k1, 0.0, cb, 0.0)?);
        out.push("circle: kappa1^2 - rhs", k1 * k1 - rhs);
        out.solutions.push(Solution {
            kind: CurveKind::Circle,
            sign: Some(Sign::of(cb)),
            kappa1: Some(k1),
            kappa2: None,
            kappa3: None,
            boundary: false,
            note: "kappa1^2 = (c+3)/4 - ((c-1)/4)cos^2(beta0)".into(),
        });
        out.solutions.push(Solution {
            kind: CurveKind::Helix,
            sign: None,
            kappa1: None,
            kappa2: None,
            kappa3: Some(0.0),
            boundary: false,
            note: "helix family: kappa1^2 + kappa2^2 = (c+3)/4 - ((c-1)/4)cos^2(beta0)".into(),
        });
        out.notes.push(PERP_CIRCLE_NOTE.into());
    } else {
        out.notes.push("right side is not positive".into());
    }
    Ok(out.settle())
}

/// Discriminant of `κ² + σ sin(2β₀) κ + (1−c) sin⁴β₀`, factored as
/// `4 sin²β₀ (cos²β₀ − (1−c) sin²β₀)`.
pub fn par_discriminant(c: f64, beta0: f64) -> f64 {
    let (s, co) = beta0.sin_cos();
    4.0 * s * s * (co * co - (1.0 - c) * s * s)
}

/// `κ₂ = |κ₁ cotβ₀ + σ|` for `∇_T T ∥ φT`.
pub fn par_kappa2(kappa1: f64, beta0: f64, sign: Sign) -> f64 {
    (kappa1 / beta0.tan() + sign.value()).abs()
}

/// `cos²β₀` and `κ₁²` of the circle with `∇_T T ∥ φT`.
pub fn par_circle_data(c: f64) -> (f64, f64) {
    let r = (c * c - 2.0 * c + 5.0).sqrt();
    ((c + 1.0 - r) / (2.0 * (c - 1.0)), (c - 1.0 + r) / 2.0)
}

pub const SIN_RESOLUTION_NOTE: &str = "linear coefficient resolved as sin(2beta0): kappa1^2 + sign*sin(2beta0)*kappa1 + \
(1-c)sin^4(beta0) = 0 follows from kappa1^2 + kappa2^2 = c - (c-1)cos^2(beta0) with kappa2 = |kappa1 cot(beta0) + sign|; \
the cos(2beta0) variant does not satisfy that system";

fn quadratic_roots(b: f64, c0: f64) -> Option<(f64, f64, bool)> {
    let disc = b * b - 4.0 * c0;
    let scale = (b * b).max(c0.abs()).max(1.0);
    if disc < -POSITIVITY_TOL * scale {
        return None;
    }
    let boundary = disc.abs() <= POSITIVITY_TOL * scale;
    let sq = disc.max(0.0).sqrt();
    // Stable form: avoid cancellation in the smaller root.
    let q = -0.5 * (b + b.signum() * sq);
    if q == 0.0 {
        return Some((0.0, 0.0, boundary));
    }
    let (r1, r2) = (q, c0 / q);
    Some((r1.max(r2), r1.min(r2), boundary))
}

/// `∇_T T ∥ φT` with constant contact angle `β₀`; both branches unless
/// `angles.sign` picks one.
pub fn admissible_par(c: f64, angles: &AngleParams) -> Result<ClassificationResult> {
    require_c_not_one(c)?;
    let b0 = angles.beta0()?;
    let (s, co) = b0.sin_cos();
    let s4 = s.powi(4);
    let mut out = ClassificationResult::empty();
    let disc = par_discriminant(c, b0);
    out.quantity("discriminant 4sin^2(beta0)(cos^2(beta0) - (1-c)sin^2(beta0))", disc);
    out.notes.push(SIN_RESOLUTION_NOTE.into());
    out.notes.push(format!(
        "admissible iff cos^2(beta0) >= (1-c)/(2-c) = {:.12} (for c < 1) and a root is positive",
        (1.0 - c) / (2.0 - c)
    ));

    let (circle_cos2, circle_k1sq) = par_circle_data(c);
    let signs: Vec<Sign> = angles.sign.map(|s| vec![s]).unwrap_or_else(|| Sign::BOTH.to_vec());
    let kappa_sq_sum = c - (c - 1.0) * co * co;
    let mut cos_variant_worst: f64 = 0.0;
    for &sigma in &signs {
        let b = sigma.value() * (2.0 * b0).sin();
        let Some((r_hi, r_lo, boundary)) = quadratic_roots(b, (1.0 - c) * s4) else {
            continue;
        };
        let roots: Vec<f64> = if boundary { vec![r_hi] } else { vec![r_hi, r_lo] };
        for k1 in roots.into_iter().filter(|k| *k > POSITIVITY_TOL) {
            let k2 = par_kappa2(k1, b0, sigma);
            let alpha = sigma.value() * s;
            let tag = format!("sign {sigma}, kappa1 = {k1:.12}");
            out.push(format!("{tag}: quadratic"), k1 * k1 + b * k1 + (1.0 - c) * s4);
            out.push(format!("{tag}: kappa1^2 + kappa2^2 - (c - (c-1)cos^2(beta0))"), k1 * k1 + k2 * k2 - kappa_sq_sum);
            let circle = k2 <= 1e-9;
            let k2_eff = if circle { 0.0 } else { k2 };
            out.push(format!("{tag}: system residual"), system_max(c, k1, k2_eff, co, alpha)?);
            let sol = if circle {
                out.push(format!("{tag}: kappa1 - |tan(beta0)|"), k1 - b0.tan().abs());
                Solution {
                    kind: CurveKind::Circle,
                    sign: Some(sigma),
                    kappa1: Some(k1),
                    kappa2: None,
                    kappa3: None,
                    boundary,
                    note: format!(
                        "circle: kappa1^2 = (c-1+sqrt(c^2-2c+5))/2 = {circle_k1sq:.12}, cos^2(beta0) = {circle_cos2:.12}"
                    ),
                }
            } else {
                Solution {
                    kind: CurveKind::Helix,
                    sign: Some(sigma),
                    kappa1: Some(k1),
                    kappa2: Some(k2),
                    kappa3: Some(0.0),
                    boundary,
                    note: "helix: positive root of kappa1^2 + sign*sin(2beta0)*kappa1 + (1-c)sin^4(beta0) = 0, \
                           kappa2 = |kappa1 cot(beta0) + sign|"
                        .into(),
                }
            };
            out.solutions.push(sol);
        }
        let bc = sigma.value() * (2.0 * b0).cos();
        if let Some((h, l, _)) = quadratic_roots(bc, (1.0 - c) * s4) {
            for k1 in [h, l].into_iter().filter(|k| *k > POSITIVITY_TOL) {
                let k2 = par_kappa2(k1, b0, sigma);
                cos_variant_worst = cos_variant_worst.max((k1 * k1 + k2 * k2 - kappa_sq_sum).abs());
            }
        }
    }
    if cos_variant_worst > 0.0 {
        out.notes.push(format!(
            "cos(2beta0) variant roots miss kappa1^2 + kappa2^2 = c - (c-1)cos^2(beta0) by up to {cos_variant_worst:.3e}"
        ));
    }
    if out.solutions.is_empty() {
        out.notes.push(if disc < 0.0 {
            "discriminant is negative".into()
        } else {
            "no positive root".into()
        });
    }
    Ok(out.settle())
}

/// Constant contact angle `β₁` with `φT = sinβ₁(cosβ₂E₂ + sinβ₂E₄)`.
///
/// Cases (a) circle and (b) helix share `κ₁² (+κ₂²) = 1 + (c−1)sin²β₁`.
/// Case (c) needs `β₂`; when it is given it decides the overall kind.
pub fn admissible_constant_angle(c: f64, beta1: f64, beta2: Option<f64>) -> Result<ClassificationResult> {
    require_c_not_one(c)?;
    let angles = AngleParams {
        beta1: Some(beta1),
        beta2,
        ..Default::default()
    };
    angles.validate()?;
    let s1sq = beta1.sin().powi(2);
    let ab = 1.0 + (c - 1.0) * s1sq;
    let mut out = ClassificationResult::empty();
    out.quantity("cases (a),(b): 1 + (c-1)sin^2(beta1)", ab);
    let mut ab_solutions = Vec::new();
    if ab > POSITIVITY_TOL {
        ab_solutions.push(Solution {
            kind: CurveKind::Circle,
            sign: None,
            kappa1: Some(ab.sqrt()),
            kappa2: None,
            kappa3: None,
            boundary: false,
            note: "case (a): kappa1^2 = 1 + (c-1)sin^2(beta1)".into(),
        });
        ab_solutions.push(Solution {
            kind: CurveKind::Helix,
            sign: None,
            kappa1: None,
            kappa2: None,
            kappa3: Some(0.0),
            boundary: false,
            note: "case (b): kappa1^2 + kappa2^2 = 1 + (c-1)sin^2(beta1)".into(),
        });
    } else {
        out.notes.push("cases (a),(b): 1 + (c-1)sin^2(beta1) is not positive".into());
    }
    match angles.beta2()? {
        None => {
            out.solutions = ab_solutions;
            out.notes.push("case (c) not evaluated: beta2 not given".into());
        }
        Some(b2) => {
            let sum = perp_rhs(c, beta1.cos()) + 3.0 * (c - 1.0) / 4.0 * s1sq * b2.cos().powi(2);
            let product = -3.0 * (c - 1.0) / 8.0 * s1sq * (2.0 * b2).sin();
            let sign_term = 3.0 * (c - 1.0) * (2.0 * b2).sin();
            out.quantity("case (c): kappa1^2 + kappa2^2 + kappa3^2", sum);
            out.quantity("case (c): kappa2 kappa3", product);
            out.quantity("case (c): 3(c-1)sin(2beta2)", sign_term);
            out.requirements.push("case (c): n >= 2, osculating order >= 4".into());
            for s in &ab_solutions {
                out.notes.push(format!("{} ({})", s.note, s.kind));
            }
            if sum > POSITIVITY_TOL && sign_term < -POSITIVITY_TOL {
                out.solutions.push(Solution {
                    kind: CurveKind::Order4,
                    sign: None,
                    kappa1: None,
                    kappa2: None,
                    kappa3: None,
                    boundary: false,
                    note: format!(
                        "case (c): kappa1^2 + kappa2^2 + kappa3^2 = {sum:.12}, kappa2 kappa3 = {product:.12}; no explicit curve known"
                    ),
                });
            } else {
                out.notes.push("case (c): needs a positive sum and 3(c-1)sin(2beta2) < 0".into());
            }
        }
    }
    Ok(out.settle())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Perp,
    Par,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "perp" => Ok(Mode::Perp),
            "par" => Ok(Mode::Par),
            other => Err(Error::InvalidParameter(format!("mode must be perp or par, got {other:?}"))),
        }
    }
}

/// Scan of `κ₁ ∈ (0, kappa_max]`: `steps` uniform cells plus a log-spaced
/// prefix covering ten decades below the first cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub kappa_max: f64,
    pub steps: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            kappa_max: 4.0,
            steps: 4000,
        }
    }
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn golden_min(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * b.abs().max(1.0) {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

/// Roots of `r` on the grid: sign changes refined by bisection, touching
/// minima by golden section (flagged as boundary). Also returns the smallest
/// `|r|` seen and where it sits.
const LOG_DECADES: f64 = 10.0;
const LOG_CELLS: usize = 200;

fn scan(r: &dyn Fn(f64) -> f64, grid: GridSpec) -> Result<(Vec<(f64, bool)>, f64, usize)> {
    let dk = grid.kappa_max / grid.steps as f64;
    // log-spaced cells below the first grid point catch small roots
    let mut ks: Vec<f64> = (0..LOG_CELLS).map(|k| dk * 10f64.powf(-LOG_DECADES * (1.0 - k as f64 / LOG_CELLS as f64))).collect();
    ks.extend((1..=grid.steps).map(|k| k as f64 * dk));
    let vals: Vec<f64> = ks.iter().map(|&k| r(k)).collect();
    let mut roots: Vec<(f64, bool)> = Vec::new();
    let (mut best, mut best_at) = (f64::INFINITY, 0);
    for (i, v) in vals.iter().enumerate() {
        if v.abs() < best {
            best = v.abs();
            best_at = i;
        }
    }
    for i in 0..vals.len() {
        if vals[i] == 0.0 {
            roots.push((ks[i], false));
            continue;
        }
        if i + 1 < vals.len() && vals[i + 1] != 0.0 && (vals[i] < 0.0) != (vals[i + 1] < 0.0) {
            roots.push((bisect(r, ks[i], ks[i + 1]), false));
        }
        if i > 0 && i + 1 < vals.len() {
            let (a, b, c) = (vals[i - 1], vals[i], vals[i + 1]);
            let same_sign = (a < 0.0) == (b < 0.0) && (b < 0.0) == (c < 0.0);
            if same_sign && b.abs() < a.abs() && b.abs() <= c.abs() {
                let k = golden_min(&|x| r(x).abs(), ks[i - 1], ks[i + 1]);
                if r(k).abs() <= SCAN_ROOT_TOL {
                    roots.push((k, true));
                }
            }
        }
    }
    if roots.is_empty() && best_at + 1 == vals.len() && vals.len() > 1 && vals[best_at].abs() < vals[best_at - 1].abs() {
        return Err(Error::GridTooCoarse { at: grid.kappa_max });
    }
    Ok((roots, best, best_at))
}

/// Oracle for [`admissible_perp`] (circle slice `κ₂ = 0`) and
/// [`admissible_par`] (`κ₂ = |κ₁cotβ₀ + σ|`, both `σ`): scans `κ₁` and
/// evaluates [`system_residuals`] with the mode's structure scalars.
pub fn brute_force_admissible(c: f64, mode: Mode, beta0: f64, grid: GridSpec) -> Result<ClassificationResult> {
    require_c_not_one(c)?;
    check_beta0(beta0)?;
    if !(grid.kappa_max > 0.0) || grid.steps < 3 {
        return Err(Error::InvalidParameter("grid needs kappa_max > 0 and at least 3 steps".into()));
    }
    let (s, co) = beta0.sin_cos();
    let mut out = ClassificationResult::empty();
    out.notes.push(format!(
        "scan of kappa1 in (0, {}] with {} cells, roots refined by bisection",
        grid.kappa_max, grid.steps
    ));
    let r2 = |k1: f64, k2: f64, alpha: f64| -> f64 {
        let (fd, ss) = mode_data(k1, k2, co, alpha);
        system_residuals(&fd, &ss, c).map(|r| r.r2).unwrap_or(f64::NAN)
    };
    match mode {
        Mode::Perp => {
            let f = |k: f64| r2(k, 0.0, 0.0);
            let (roots, best, _) = scan(&f, grid)?;
            out.quantity("min |r2| on grid", best);
            for (k1, boundary) in roots {
                out.push(format!("kappa1 = {k1:.12}: r2"), f(k1));
                out.solutions.push(Solution {
                    kind: CurveKind::Circle,
                    sign: Some(Sign::of(co)),
                    kappa1: Some(k1),
                    kappa2: None,
                    kappa3: None,
                    boundary,
                    note: "scanned root on the kappa2 = 0 slice".into(),
                });
            }
        }
        Mode::Par => {
            for sigma in Sign::BOTH {
                let alpha = sigma.value() * s;
                let f = |k: f64| {
                    let k2 = par_kappa2(k, beta0, sigma);
                    r2(k, k2, alpha)
                };
                let (roots, best, _) = scan(&f, grid)?;
                out.quantity(format!("sign {sigma}: min |r2| on grid"), best);
                for (k1, boundary) in roots {
                    let k2 = par_kappa2(k1, beta0, sigma);
                    out.push(format!("sign {sigma}, kappa1 = {k1:.12}: r2"), f(k1));
                    let circle = k2 <= 1e-6;
                    out.solutions.push(Solution {
                        kind: if circle { CurveKind::Circle } else { CurveKind::Helix },
                        sign: Some(sigma),
                        kappa1: Some(k1),
                        kappa2: (!circle).then_some(k2),
                        kappa3: (!circle).then_some(0.0),
                        boundary,
                        note: "scanned root with kappa2 = |kappa1 cot(beta0) + sign|".into(),
                    });
                }
            }
        }
    }
    if out.solutions.is_empty() {
        out.notes.push("no root: residual bounded away from zero".into());
    }
    Ok(out.settle())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn c1_examples() {
        assert_eq!(classify_c1(1.0, None).kind, CurveKind::Circle);
        assert_eq!(classify_c1(0.6, Some(0.8)).kind, CurveKind::Helix);
        assert_eq!(classify_c1(0.6, Some(0.6)).kind, CurveKind::Inadmissible);
    }

    #[test]
    fn perp_examples() {
        let r = admissible_perp(-3.0, &AngleParams::with_beta0(PI / 3.0)).unwrap();
        assert_eq!(r.kind, CurveKind::Circle);
        assert!(close(r.kappa1.unwrap(), 0.5, 1e-15));
        assert!(r.notes.iter().any(|n| n.contains("not realized")));
        assert!(matches!(admissible_perp(1.0, &AngleParams::with_beta0(0.3)), Err(Error::CIsOne)));
        let bad = admissible_perp(-7.0, &AngleParams::with_beta0(PI / 3.0)).unwrap();
        assert_eq!(bad.kind, CurveKind::Inadmissible);
        assert!(close(bad.quantities[0].value, -0.5, 1e-15));
    }

    #[test]
    fn par_circle_at_minus_three() {
        let (cos2, k1sq) = par_circle_data(-3.0);
        assert!(close(cos2, (1.0 + 5f64.sqrt()) / 4.0, 1e-15));
        assert!(close(k1sq.sqrt(), (5f64.sqrt() - 2.0).sqrt(), 1e-15));
        let r = admissible_par(-3.0, &AngleParams::from_cos2(cos2).unwrap()).unwrap();
        assert_eq!(r.kind, CurveKind::Circle);
        assert!(close(r.kappa1.unwrap(), 0.4858682717566457, 1e-7));
        assert!(r.max_constraint_residual() <= 1e-12, "{:?}", r.constraints);
    }

    #[test]
    fn par_helix_roots() {
        let r = admissible_par(-3.0, &AngleParams::from_cos2(0.9).unwrap().signed(Sign::Minus)).unwrap();
        let k = r.kappa1_values();
        let s5 = 5f64.sqrt();
        assert_eq!(k.len(), 2);
        assert!(close(k[0], (3.0 + s5) / 10.0, 1e-12));
        assert!(close(k[1], (3.0 - s5) / 10.0, 1e-12));
        let k2 = r.solutions[0].kappa2.unwrap();
        assert!(close(k2, 0.5708203932499369, 1e-12));
        assert!(close(k[0] * k[0] + k2 * k2, 0.6, 1e-12));
        assert!(r.max_constraint_residual() <= 1e-12);
        assert!(r.notes.iter().any(|n| n.contains("sin(2beta0)")));
    }

    #[test]
    fn par_inadmissible() {
        let r = admissible_par(-3.0, &AngleParams::from_cos2(0.5).unwrap()).unwrap();
        assert_eq!(r.kind, CurveKind::Inadmissible);
        assert!(par_discriminant(-3.0, 0.5f64.sqrt().acos()) < 0.0);
    }

    #[test]
    fn constant_angle_examples() {
        let r = admissible_constant_angle(5.0, PI / 3.0, Some(3.0 * PI / 4.0)).unwrap();
        assert_eq!(r.kind, CurveKind::Order4);
        let get = |name: &str| r.quantities.iter().find(|c| c.name.starts_with(name)).unwrap().value;
        assert!(close(get("case (c): kappa1^2"), 2.875, 1e-12));
        assert!(close(get("case (c): kappa2 kappa3"), 1.125, 1e-12));
        let r = admissible_constant_angle(5.0, PI / 3.0, Some(PI / 4.0)).unwrap();
        assert_eq!(r.kind, CurveKind::Inadmissible);
        let r = admissible_constant_angle(-3.0, PI / 3.0, None).unwrap();
        assert_eq!(r.kind, CurveKind::Inadmissible);
        assert!(close(r.quantities[0].value, -2.0, 1e-12));
    }

    #[test]
    fn angle_exclusions() {
        assert!(check_beta0(FRAC_PI_2).is_err());
        assert!(check_beta0(PI + 1e-10).is_err());
        assert!(check_beta0(PI + 1e-8).is_ok());
        assert!(check_beta1(FRAC_PI_2 + 5e-10).is_err());
        assert!(AngleParams::from_cos2(1.0).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let g = GridSpec::default();
        let r = brute_force_admissible(-3.0, Mode::Perp, PI / 3.0, g).unwrap();
        assert!(close(r.kappa1.unwrap(), 0.5, 1e-6));
        let b0 = 0.9f64.sqrt().acos();
        let r = brute_force_admissible(-3.0, Mode::Par, b0, g).unwrap();
        let mut k = r.kappa1_values();
        k.sort_by(f64::total_cmp);
        let s5 = 5f64.sqrt();
        assert_eq!(k.len(), 2);
        assert!(close(k[0], (3.0 - s5) / 10.0, 1e-6));
        assert!(close(k[1], (3.0 + s5) / 10.0, 1e-6));
        let r = brute_force_admissible(-3.0, Mode::Par, 0.5f64.sqrt().acos(), g).unwrap();
        assert_eq!(r.kind, CurveKind::Inadmissible);
        assert!(r.quantities.iter().all(|c| c.value > 1e-3));
    }

    #[test]
    fn sign_parsing() {
        assert_eq!("-".parse::<Sign>().unwrap(), Sign::Minus);
        let s: Sign = serde_json::from_str("-1").unwrap();
        assert_eq!(s, Sign::Minus);
        let s: Sign = serde_json::from_str("\"+\"").unwrap();
        assert_eq!(s, Sign::Plus);
        assert_eq!(serde_json::to_string(&Sign::Minus).unwrap(), "-1");
        assert!(serde_json::from_str::<Sign>("2").is_err());
    }
}
