//! Proper-biharmonic circles and helices of `ℝ^{2n+1}(−3)` with constant
//! contact angle, and the rotation fixtures they belong to.
//!
//! All of these have `T_i + iT_{n+i}` rotating at a constant rate `ω` with
//! constant `η(T) = f`, for which `∇_T T = (ω − 2f)φT` when `T` has no second
//! frequency. Perp circles carry a second frequency and are built from the
//! general solution of their frame system.

use super::curve::{AnalyticCurve, FramePolys};
use super::params::{dot, GeneratorKind, GeneratorParams};
use super::trigpoly::TrigPoly;
use crate::classifier::{admissible_par, AngleParams, CurveKind, Sign};
use crate::error::{Error, Result};
use crate::model::Dimension;

/// Tolerance on the quadratic constraints between the parameter vectors.
pub const PARAM_CONSTRAINT_TOL: f64 = 1e-12;
/// Tolerance when matching a requested `κ₁` or `β₀` to its closed form.
pub const MATCH_TOL: f64 = 1e-9;

pub const C_MODEL: f64 = -3.0;

fn check_kind(p: &GeneratorParams, kind: GeneratorKind) -> Result<()> {
    if p.kind != kind {
        return Err(Error::InvalidParameter(format!("expected kind {kind}, got {}", p.kind)));
    }
    Ok(())
}

fn check_constraint(name: &str, residual: f64) -> Result<()> {
    if !(residual.abs() <= PARAM_CONSTRAINT_TOL) {
        return Err(Error::constraint(name, residual));
    }
    Ok(())
}

/// Data of a curve with `∇_T T = λ φT`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParallelData {
    pub beta0: f64,
    pub sign: Sign,
    pub kappa1: f64,
    /// `λ = σκ₁ / sinβ₀`.
    pub lambda: f64,
}

impl ParallelData {
    /// Rate `ω` of `T_i + iT_{n+i} ∝ e^{iωs}`: `2cosβ₀ + λ`.
    pub fn rotation_rate(&self) -> f64 {
        2.0 * self.beta0.cos() + self.lambda
    }
}

/// `cos²β₀` of the biharmonic circle with `∇_T T ∥ φT` in `ℝ^{2n+1}(−3)`.
pub fn par_circle_cos2() -> f64 {
    (1.0 + 5f64.sqrt()) / 4.0
}

/// Contact angle, branch and `κ₁` of a par-circle or par-helix parameter set.
pub fn parallel_data(p: &GeneratorParams) -> Result<ParallelData> {
    match p.kind {
        GeneratorKind::ParCircle => {
            let eta_sign = p.sign.unwrap_or(Sign::Plus);
            let cos_b0 = eta_sign.value() * par_circle_cos2().sqrt();
            let beta0 = cos_b0.acos();
            if let Some(b) = p.resolve_beta0()? {
                let diff = b.cos() - cos_b0;
                if diff.abs() > MATCH_TOL {
                    return Err(Error::constraint("angle constraint cos(beta0) = sign*sqrt((1+sqrt5)/4)", diff));
                }
            }
            let sigma = Sign::of(-cos_b0);
            let res = admissible_par(C_MODEL, &AngleParams::with_beta0(beta0).signed(sigma))?;
            let k1 = res
                .solutions
                .iter()
                .find(|s| s.kind == CurveKind::Circle)
                .and_then(|s| s.kappa1)
                .ok_or_else(|| Error::InadmissibleAngle("no circle root at the circle angle".into()))?;
            Ok(ParallelData {
                beta0,
                sign: sigma,
                kappa1: k1,
                lambda: sigma.value() * k1 / beta0.sin(),
            })
        }
        GeneratorKind::ParHelix => {
            let beta0 = p.require_beta0()?;
            let sigma = p
                .sign
                .ok_or_else(|| Error::InvalidParameter("par-helix needs a sign".into()))?;
            let res = admissible_par(C_MODEL, &AngleParams::with_beta0(beta0).signed(sigma))?;
            let mut roots = res.kappa1_values();
            if roots.is_empty() {
                return Err(Error::InadmissibleAngle(format!(
                    "cos^2(beta0) = {:.12} has no positive kappa1 for sign {sigma}",
                    beta0.cos().powi(2)
                )));
            }
            roots.sort_by(|a, b| b.total_cmp(a));
            let k1 = match p.kappa1 {
                None => roots[0],
                Some(want) => {
                    let best = roots
                        .iter()
                        .copied()
                        .min_by(|a, b| (a - want).abs().total_cmp(&(b - want).abs()))
                        .unwrap_or(roots[0]);
                    if (best - want).abs() > MATCH_TOL * want.abs().max(1.0) {
                        return Err(Error::constraint("root constraint: kappa1 is a positive root of the quadratic", want - best));
                    }
                    best
                }
            };
            Ok(ParallelData {
                beta0,
                sign: sigma,
                kappa1: k1,
                lambda: sigma.value() * k1 / beta0.sin(),
            })
        }
        other => Err(Error::InvalidParameter(format!("{other} has no parallel data"))),
    }
}

/// `T_i = cos(ωs)c₁ + sin(ωs)c₂`, `T_{n+i} = cos(ωs)c₂ − sin(ωs)c₁`, `η(T) = f`.
fn rotating_frame(c1: &[f64], c2: &[f64], omega: f64, f: f64) -> FramePolys {
    FramePolys {
        a: c1.iter().zip(c2).map(|(&u, &v)| TrigPoly::wave(u, v, omega)).collect(),
        b: c1.iter().zip(c2).map(|(&u, &v)| TrigPoly::wave(v, -u, omega)).collect(),
        f: TrigPoly::constant(f),
    }
}

/// Circle with `∇_T T ⊥ φT`, from the general solution of its frame system:
///
/// ```text
/// T_i     = −sin(κs)c₁ ± cos(κs)c₂ + cos(2κs)d₁ + sin(2κs)d₂
/// T_{n+i} = ±cos(κs)c₁ + sin(κs)c₂ ± sin(2κs)d₁ ∓ cos(2κs)d₂
/// ```
///
/// with `κ = |cosβ₀|` and `±` the sign of `cosβ₀`.
pub fn gen_circle_perp(p: &GeneratorParams) -> Result<AnalyticCurve> {
    check_kind(p, GeneratorKind::PerpCircle)?;
    Dimension::new(p.n)?.require_at_least_two()?;
    let beta0 = p.require_beta0()?;
    let cos_b0 = beta0.cos();
    let eps = Sign::of(cos_b0);
    if let Some(s) = p.sign {
        if s != eps {
            return Err(Error::constraint("sign constraint: sign = sign of cos(beta0)", s.value() - eps.value()));
        }
    }
    let e = eps.value();
    let k = cos_b0.abs();
    let (c1, c2, d1, d2) = (p.vector(&p.c1)?, p.vector(&p.c2)?, p.vector(&p.d1)?, p.vector(&p.d2)?);
    check_constraint(
        "norm constraint |c1|^2+|c2|^2+|d1|^2+|d2|^2 = sin^2(beta0)",
        dot(&c1, &c1) + dot(&c2, &c2) + dot(&d1, &d1) + dot(&d2, &d2) - beta0.sin().powi(2),
    )?;
    check_constraint("orthogonality constraint <c1,d1> +- <c2,d2> = 0", dot(&c1, &d1) + e * dot(&c2, &d2))?;
    check_constraint("orthogonality constraint <c1,d2> -+ <c2,d1> = 0", dot(&c1, &d2) - e * dot(&c2, &d1))?;

    let mut a = Vec::with_capacity(p.n);
    let mut b = Vec::with_capacity(p.n);
    for i in 0..p.n {
        a.push(TrigPoly::wave(e * c2[i], -c1[i], k).add(&TrigPoly::wave(d1[i], d2[i], 2.0 * k)));
        b.push(TrigPoly::wave(e * c1[i], c2[i], k).add(&TrigPoly::wave(-e * d2[i], e * d1[i], 2.0 * k)));
    }
    let tframe = FramePolys {
        a,
        b,
        f: TrigPoly::constant(cos_b0),
    };
    AnalyticCurve::from_frame(tframe, p.clone())
}

/// Circle with `∇_T T ∥ φT`: `cos²β₀ = (1+√5)/4`, the sign of `cosβ₀` taken
/// from `p.sign`, and `|c₁|² + |c₂|² = (3−√5)/4`.
pub fn gen_circle_par(p: &GeneratorParams) -> Result<AnalyticCurve> {
    check_kind(p, GeneratorKind::ParCircle)?;
    Dimension::new(p.n)?;
    let data = parallel_data(p)?;
    let (c1, c2) = (p.vector(&p.c1)?, p.vector(&p.c2)?);
    check_constraint(
        "norm constraint |c1|^2+|c2|^2 = (3-sqrt5)/4",
        dot(&c1, &c1) + dot(&c2, &c2) - (3.0 - 5f64.sqrt()) / 4.0,
    )?;
    let tframe = rotating_frame(&c1, &c2, -data.rotation_rate(), data.beta0.cos());
    AnalyticCurve::from_frame(tframe, p.clone())
}

/// Helix with `∇_T T ∥ φT`: `κ₁` a positive root of
/// `κ₁² + σ sin(2β₀)κ₁ + 4sin⁴β₀ = 0` and `|c₁|² + |c₂|² = sin²β₀`.
pub fn gen_helix_par(p: &GeneratorParams) -> Result<AnalyticCurve> {
    check_kind(p, GeneratorKind::ParHelix)?;
    Dimension::new(p.n)?;
    let data = parallel_data(p)?;
    let (c1, c2) = (p.vector(&p.c1)?, p.vector(&p.c2)?);
    check_constraint(
        "norm constraint |c1|^2+|c2|^2 = sin^2(beta0)",
        dot(&c1, &c1) + dot(&c2, &c2) - data.beta0.sin().powi(2),
    )?;
    let tframe = rotating_frame(&c1, &c2, -data.rotation_rate(), data.beta0.cos());
    AnalyticCurve::from_frame(tframe, p.clone())
}

/// `T_i + iT_{n+i} = ρ_i e^{i(ωs+θ_i)}`, `η(T) = f`.
pub fn gen_rotation_fixture(rho: &[f64], omega: f64, theta: &[f64], f: f64) -> Result<AnalyticCurve> {
    let n = rho.len();
    Dimension::new(n)?;
    let theta = if theta.is_empty() { vec![0.0; n] } else { theta.to_vec() };
    if theta.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: theta.len(),
        });
    }
    if !(f.is_finite() && omega.is_finite()) || rho.iter().chain(&theta).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("rotation fixture parameters"));
    }
    if !(f.abs() > 0.0 && f.abs() < 1.0) {
        return Err(Error::InvalidParameter(format!("rotation fixture needs 0 < |f| < 1, got {f}")));
    }
    let residual = dot(rho, rho) - (1.0 - f * f);
    if residual.abs() > PARAM_CONSTRAINT_TOL {
        return Err(Error::NormViolated { residual });
    }
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for (&r, &t) in rho.iter().zip(&theta) {
        let (st, ct) = t.sin_cos();
        a.push(TrigPoly::wave(r * ct, -r * st, omega));
        b.push(TrigPoly::wave(r * st, r * ct, omega));
    }
    let mut meta = GeneratorParams::new(GeneratorKind::Rotation, n);
    meta.rho = rho.to_vec();
    meta.theta = theta;
    meta.omega = Some(omega);
    meta.f = Some(f);
    AnalyticCurve::from_frame(FramePolys { a, b, f: TrigPoly::constant(f) }, meta)
}

fn rotation_from_params(p: &GeneratorParams) -> Result<AnalyticCurve> {
    let omega = p.omega.ok_or(Error::MissingScalar("omega"))?;
    let f = p.f.ok_or(Error::MissingScalar("f"))?;
    if p.rho.len() != p.n {
        return Err(Error::DimensionMismatch {
            expected: p.n,
            found: p.rho.len(),
        });
    }
    let c = gen_rotation_fixture(&p.rho, omega, &p.theta, f)?;
    AnalyticCurve::from_frame(c.tframe, p.clone())
}

/// Dispatches on `p.kind`.
pub fn generate(p: &GeneratorParams) -> Result<AnalyticCurve> {
    match p.kind {
        GeneratorKind::PerpCircle => gen_circle_perp(p),
        GeneratorKind::ParCircle => gen_circle_par(p),
        GeneratorKind::ParHelix => gen_helix_par(p),
        GeneratorKind::Rotation => rotation_from_params(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn perp_circle_frame_is_unit() {
        let mut p = GeneratorParams::new(GeneratorKind::PerpCircle, 2);
        p.beta0 = Some(PI / 3.0);
        p.c1 = vec![0.75f64.sqrt(), 0.0];
        let c = gen_circle_perp(&p).unwrap();
        assert!(c.unit_speed_residual().unwrap() <= 1e-15);
        assert!(c.velocity_identity_residual().unwrap() <= 1e-12);
        assert_eq!(c.tframe.f, TrigPoly::constant(0.5000000000000001));
    }

    #[test]
    fn perp_circle_rejects_bad_params() {
        let mut p = GeneratorParams::new(GeneratorKind::PerpCircle, 2);
        p.beta0 = Some(PI / 3.0);
        p.c1 = vec![0.8, 0.0];
        match gen_circle_perp(&p) {
            Err(Error::ConstraintViolated { constraint, .. }) => assert!(constraint.starts_with("norm constraint")),
            other => panic!("{other:?}"),
        }
        p.n = 1;
        p.c1 = vec![0.75f64.sqrt()];
        assert!(matches!(gen_circle_perp(&p), Err(Error::BadDimension { n: 1, .. })));
    }

    #[test]
    fn par_helix_needs_admissible_angle() {
        let mut p = GeneratorParams::new(GeneratorKind::ParHelix, 2);
        p.beta0_cos2 = Some(0.5);
        p.sign = Some(Sign::Minus);
        p.c1 = vec![0.5f64.sqrt(), 0.0];
        assert!(matches!(gen_helix_par(&p), Err(Error::InadmissibleAngle(_))));
    }

    #[test]
    fn rotation_fixture_norm() {
        let c = gen_rotation_fixture(&[0.75f64.sqrt(), 0.0], 1.0, &[], 0.5).unwrap();
        assert!(c.unit_speed_residual().unwrap() <= 1e-15);
        assert!(matches!(
            gen_rotation_fixture(&[0.9, 0.0], 1.0, &[], 0.5),
            Err(Error::NormViolated { .. })
        ));
    }
}
