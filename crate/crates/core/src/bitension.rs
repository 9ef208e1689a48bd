//! Bitension field `τ₂(γ) = ∇_T³T − R(T, ∇_T T)T` of a unit-speed curve, its
//! expansion in the Frenet frame, the residuals of the biharmonic system for
//! `c ≠ 1`, and the eigenvector test `ΔH = λH` with `Δ = −∇_T²` along the curve.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frenet::{CovariantJet, FrenetData, Jet4, StructureScalars};
use crate::model::{curvature_space_form, FrameVector};

pub fn bitension_direct(j: &Jet4, cj: &CovariantJet, c: f64) -> Result<FrameVector> {
    let r = curvature_space_form(c, &j.t, &cj.h, &j.t)?;
    Ok(&cj.d3 - &r)
}

/// Frenet-frame coefficients of `τ₂` together with the two structure terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCoefficients {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub e4: f64,
    /// Coefficient of `ξ`: `−((c−1)/4) f′`.
    pub xi: f64,
    /// Coefficient of `φT`: `(3(c−1)/4) κ₁ g(E₂, φT)`.
    pub phi_t: f64,
}

pub fn expansion_coefficients(
    fd: &FrenetData,
    ss: &StructureScalars,
    derivs: &crate::frenet::KappaDerivatives,
    c: f64,
) -> Result<ExpansionCoefficients> {
    if fd.order < 2 {
        return Err(Error::MissingScalar("kappa1"));
    }
    let alpha = ss.alpha.ok_or(Error::MissingScalar("g(E2, phi T)"))?;
    let (k1, k2, k3) = (fd.kappa(1), fd.kappa(2), fd.kappa(3));
    let k2p = if fd.order >= 3 {
        derivs.kappa2_prime.ok_or(Error::MissingScalar("kappa2'"))?
    } else {
        0.0
    };
    let (k1p, k1pp) = (derivs.kappa1_prime, derivs.kappa1_second);
    let q = (c - 1.0) / 4.0;
    let f = ss.f;
    let fp = ss.fprime;
    Ok(ExpansionCoefficients {
        e1: -3.0 * k1 * k1p + q * f * fp,
        e2: k1pp - k1.powi(3) - k1 * k2 * k2 + (c + 3.0) / 4.0 * k1 - q * k1 * f * f,
        e3: 2.0 * k1p * k2 + k1 * k2p,
        e4: k1 * k2 * k3,
        xi: -q * fp,
        phi_t: 3.0 * q * k1 * alpha,
    })
}

/// Assembles `τ₂` from its Frenet expansion, mapping `ξ` and `φT` back to the
/// model frame. `phi_t` must be `φT` in the same frame as `fd.e`.
pub fn bitension_expansion(
    fd: &FrenetData,
    ss: &StructureScalars,
    derivs: &crate::frenet::KappaDerivatives,
    c: f64,
    phi_t: &FrameVector,
) -> Result<FrameVector> {
    let k = expansion_coefficients(fd, ss, derivs, c)?;
    let n = phi_t.dim();
    fd.e[0].same_dim(phi_t)?;
    let coeffs = [k.e1, k.e2, k.e3, k.e4];
    let mut tau = FrameVector::zeros(n);
    for (e, w) in fd.e.iter().zip(coeffs) {
        tau = tau.axpy(w, e);
    }
    tau = tau.axpy(k.xi, &FrameVector::xi(n));
    Ok(tau.axpy(k.phi_t, phi_t))
}

/// Pointwise residuals of the biharmonic system for `c ≠ 1`.
///
/// `r1` is the pointwise `κ₁′`; constancy over a window is measured separately
/// with [`kappa_constancy`]. `tangential` is the `E₁` coefficient of `τ₂`,
/// `−3κ₁κ₁′ + ((c−1)/4) f f′`, reported alongside `r1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemResiduals {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r4: f64,
    pub tangential: f64,
}

impl SystemResiduals {
    /// Largest of `|r2|, |r3|, |r4|`.
    pub fn max_abs(&self) -> f64 {
        self.r2.abs().max(self.r3.abs()).max(self.r4.abs())
    }
}

pub fn system_residuals(fd: &FrenetData, ss: &StructureScalars, c: f64) -> Result<SystemResiduals> {
    if (c - 1.0).abs() <= 1e-12 {
        return Err(Error::CIsOne);
    }
    if fd.order < 2 {
        return Err(Error::MissingScalar("kappa1"));
    }
    let q = (c - 1.0) / 4.0;
    let (k1, k2, k3) = (fd.kappa(1), fd.kappa(2), fd.kappa(3));
    let k2p = fd.dkappa.kappa2_prime.unwrap_or(0.0);
    let alpha = ss.alpha_or_zero();
    let (f, fp) = (ss.f, ss.fprime);
    let eta3 = ss.eta3.unwrap_or(0.0);
    let eta4 = ss.eta4.unwrap_or(0.0);
    let g3 = ss.g3.unwrap_or(0.0);
    let g4 = ss.g4.unwrap_or(0.0);

    let target = (c + 3.0) / 4.0 - q * f * f - q * fp * fp / (k1 * k1) + 3.0 * q * alpha * alpha;
    Ok(SystemResiduals {
        r1: fd.dkappa.kappa1_prime,
        r2: k1 * k1 + k2 * k2 - target,
        r3: k2p - q * fp * eta3 / k1 + 3.0 * q * alpha * g3,
        r4: k2 * k3 - q * fp * eta4 / k1 + 3.0 * q * alpha * g4,
        tangential: -3.0 * k1 * fd.dkappa.kappa1_prime + q * f * fp,
    })
}

/// Sample standard deviation of `κ₁` over a window, divided by its mean.
pub fn kappa_constancy(kappas: &[f64]) -> f64 {
    if kappas.len() < 2 {
        return 0.0;
    }
    let m = kappas.len() as f64;
    let mean = kappas.iter().sum::<f64>() / m;
    let var = kappas.iter().map(|k| (k - mean).powi(2)).sum::<f64>() / (m - 1.0);
    if mean.abs() == 0.0 {
        return var.sqrt();
    }
    var.sqrt() / mean.abs()
}

/// Max-norm of `∇_T³T + λH`, which vanishes iff `ΔH = λH` with `Δ = −∇_T²`.
pub fn laplacian_eigen_check(j: &Jet4, cj: &CovariantJet, lambda: f64) -> Result<f64> {
    cj.h.same_dim(&j.t)?;
    Ok(cj.d3.axpy(lambda, &cj.h).max_abs())
}

/// Eigenvalue for curves with `∇_T T ∥ φT`: `c − (c−1)cos²β₀`.
pub fn eigenvalue_parallel(c: f64, cos_beta0: f64) -> f64 {
    c - (c - 1.0) * cos_beta0 * cos_beta0
}

/// Eigenvalue for curves with `∇_T T ⊥ φT`: `¼(c + 3 − (c−1)cos²β₀)`.
pub fn eigenvalue_perpendicular(c: f64, cos_beta0: f64) -> f64 {
    0.25 * (c + 3.0 - (c - 1.0) * cos_beta0 * cos_beta0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frenet::{covariant_jet, frenet_apparatus, DEFAULT_RANK_TOL};

    fn geodesic() -> Jet4 {
        let n = 2;
        Jet4 {
            s: 0.0,
            t: FrameVector::x_basis(n, 1),
            dt: FrameVector::zeros(n),
            d2t: FrameVector::zeros(n),
            d3t: FrameVector::zeros(n),
        }
    }

    #[test]
    fn geodesic_is_biharmonic() {
        let j = geodesic();
        let cj = covariant_jet(&j).unwrap();
        assert_eq!(bitension_direct(&j, &cj, -3.0).unwrap().max_abs(), 0.0);
        for lambda in [-2.0, 0.0, 0.6] {
            assert_eq!(laplacian_eigen_check(&j, &cj, lambda).unwrap(), 0.0);
        }
    }

    #[test]
    fn expansion_requires_curvature() {
        let j = geodesic();
        let cj = covariant_jet(&j).unwrap();
        let fd = frenet_apparatus(&j, &cj, DEFAULT_RANK_TOL).unwrap();
        let r = bitension_expansion(&fd, &fd.scalars, &fd.dkappa, -3.0, &j.t);
        assert!(matches!(r, Err(Error::MissingScalar(_))));
        assert!(matches!(system_residuals(&fd, &fd.scalars, 1.0), Err(Error::CIsOne)));
    }

    #[test]
    fn constancy_measure() {
        assert_eq!(kappa_constancy(&[0.5; 10]), 0.0);
        let k = [1.0, 1.0 + 1e-3, 1.0 - 1e-3];
        assert!((kappa_constancy(&k) - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues() {
        assert!((eigenvalue_parallel(-3.0, 0.9f64.sqrt()) - 0.6).abs() < 1e-15);
        assert!((eigenvalue_perpendicular(-3.0, 0.5) - 0.25).abs() < 1e-15);
    }
}
