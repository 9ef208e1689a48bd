//! Covariant jets, Frenet frames and the scalar invariants of a unit-speed curve.
//!
//! Curvatures come from Gram–Schmidt on the iterated covariant derivatives
//! `∇_T T`, `∇_T² T`, `∇_T³ T` at a single point, so nothing is integrated and
//! errors do not accumulate along the curve.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{self, coord_to_frame, g_frame, phi_frame, CoordVelocity, FrameVector};
use crate::sampled::SampledCurve;

/// Default rank tolerance for analytic jets.
pub const DEFAULT_RANK_TOL: f64 = 1e-7;
/// Rank tolerance for jets obtained from finite differences.
pub const SAMPLED_RANK_TOL: f64 = 1e-3;
/// Gate on `|g(T,T) − 1|` before a frame is built.
pub const UNIT_SPEED_TOL: f64 = 1e-6;
/// Agreement required between the two routes to `f′`.
pub const FPRIME_CROSSCHECK_TOL: f64 = 1e-6;

/// `T = γ′` and its first three ordinary arc-length derivatives, in frame components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Jet4 {
    pub s: f64,
    pub t: FrameVector,
    pub dt: FrameVector,
    pub d2t: FrameVector,
    pub d3t: FrameVector,
}

impl Jet4 {
    pub fn dim(&self) -> usize {
        self.t.dim()
    }

    fn check(&self) -> Result<()> {
        self.t.same_dim(&self.dt)?;
        self.t.same_dim(&self.d2t)?;
        self.t.same_dim(&self.d3t)
    }
}

/// `H = ∇_T T`, `∇_T² T`, `∇_T³ T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovariantJet {
    pub h: FrameVector,
    pub d2: FrameVector,
    pub d3: FrameVector,
}

/// Iterates `∇_T V = V′ + Γ(T, V)`, differentiating `Γ(T, V)` by the product rule.
pub fn covariant_jet(j: &Jet4) -> Result<CovariantJet> {
    j.check()?;
    let g = model::gamma;
    let (t, dt, d2t, d3t) = (&j.t, &j.dt, &j.d2t, &j.d3t);

    let h = dt + &g(t, t)?;
    let h_p = &(d2t + &g(dt, t)?) + &g(t, dt)?;
    let d2 = &h_p + &g(t, &h)?;

    let h_pp = &(&(d3t + &g(d2t, t)?) + &g(dt, dt)?.scale(2.0)) + &g(t, d2t)?;
    let d2_p = &(&h_pp + &g(dt, &h)?) + &g(t, &h_p)?;
    let d3 = &d2_p + &g(t, &d2)?;

    Ok(CovariantJet { h, d2, d3 })
}

/// Arc-length derivatives of the curvatures, read off the jet.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct KappaDerivatives {
    pub kappa1_prime: f64,
    pub kappa1_second: f64,
    /// `None` when the claimed order has no `κ₂`.
    pub kappa2_prime: Option<f64>,
}

/// `η(T)`, `f′` and the components of `φT` and `ξ` along the Frenet frame.
/// Entries tied to a frame vector the curve does not have are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureScalars {
    pub f: f64,
    /// Derivative of the ξ-component of `T`.
    pub fprime: f64,
    /// `κ₁ η(E₂)`, the second route to `f′`.
    pub fprime_alt: f64,
    /// `g(E₂, φT)`.
    pub alpha: Option<f64>,
    pub g3: Option<f64>,
    pub g4: Option<f64>,
    pub eta2: Option<f64>,
    pub eta3: Option<f64>,
    pub eta4: Option<f64>,
}

impl StructureScalars {
    pub fn alpha_or_zero(&self) -> f64 {
        self.alpha.unwrap_or(0.0)
    }

    pub fn fprime_discrepancy(&self) -> f64 {
        (self.fprime - self.fprime_alt).abs()
    }

    /// `f² ≤ 1` and `α² + g3² + g4² ≤ 1 − f²`, both up to `tol`.
    pub fn satisfies_bounds(&self, tol: f64) -> bool {
        let phi_sq = self.alpha.unwrap_or(0.0).powi(2) + self.g3.unwrap_or(0.0).powi(2) + self.g4.unwrap_or(0.0).powi(2);
        self.f * self.f <= 1.0 + tol && phi_sq <= 1.0 - self.f * self.f + tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrenetData {
    /// `E₁ = T, E₂, ...` (at most four).
    pub e: Vec<FrameVector>,
    /// `κ₁, κ₂, κ₃` up to `order − 1` entries.
    pub kappa: Vec<f64>,
    /// Osculating order; 4 stands for "4 or more".
    pub order: usize,
    pub dkappa: KappaDerivatives,
    pub scalars: StructureScalars,
}

impl FrenetData {
    pub fn kappa(&self, index: usize) -> f64 {
        self.kappa.get(index - 1).copied().unwrap_or(0.0)
    }

    /// Largest `|g(E_i, E_j) − δ_ij|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (i, u) in self.e.iter().enumerate() {
            for (j, v) in self.e.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g_frame(u, v).unwrap_or(f64::NAN) - target).abs());
            }
        }
        worst
    }
}

enum Rank {
    Present,
    Absent,
}

fn classify_rank(index: usize, value: f64, rank_tol: f64) -> Result<Rank> {
    if value > rank_tol {
        Ok(Rank::Present)
    } else if value > rank_tol / 10.0 {
        Err(Error::DegenerateFrame {
            index,
            value,
            lower: rank_tol / 10.0,
            upper: rank_tol,
        })
    } else {
        Ok(Rank::Absent)
    }
}

/// Removes the components of `v` along the orthonormal vectors `basis`.
fn orthogonalize(v: &FrameVector, basis: &[FrameVector]) -> Result<FrameVector> {
    let mut r = v.clone();
    // two passes keep the residual orthogonal when it is small relative to v
    for _ in 0..2 {
        for e in basis {
            let k = g_frame(&r, e)?;
            r = r.axpy(-k, e);
        }
    }
    Ok(r)
}

/// Builds `E₁..E_r` and `κ₁..κ_{r−1}` from the covariant jet.
///
/// A curvature whose value falls in `(rank_tol/10, rank_tol]` is reported as
/// [`Error::DegenerateFrame`] instead of being rounded to either order.
pub fn frenet_apparatus(j: &Jet4, cj: &CovariantJet, rank_tol: f64) -> Result<FrenetData> {
    j.check()?;
    let deviation = (j.t.norm_sq() - 1.0).abs();
    if !(deviation <= UNIT_SPEED_TOL) {
        return Err(Error::NotUnitSpeed { deviation });
    }

    let mut e = vec![j.t.clone()];
    let mut kappa = Vec::new();

    let k1 = cj.h.norm();
    if let Rank::Present = classify_rank(1, k1, rank_tol)? {
        kappa.push(k1);
        e.push(cj.h.scale(1.0 / k1));

        let r2 = orthogonalize(&cj.d2, &e)?;
        let k2 = r2.norm() / k1;
        if let Rank::Present = classify_rank(2, k2, rank_tol)? {
            kappa.push(k2);
            e.push(r2.scale(1.0 / r2.norm()));

            let r3 = orthogonalize(&cj.d3, &e)?;
            let k3 = r3.norm() / (k1 * k2);
            if let Rank::Present = classify_rank(3, k3, rank_tol)? {
                kappa.push(k3);
                e.push(r3.scale(1.0 / r3.norm()));
            }
        }
    }

    let order = e.len();
    let dkappa = kappa_derivatives(cj, &e, &kappa)?;
    let mut fd = FrenetData {
        e,
        kappa,
        order,
        dkappa,
        scalars: StructureScalars {
            f: 0.0,
            fprime: 0.0,
            fprime_alt: 0.0,
            alpha: None,
            g3: None,
            g4: None,
            eta2: None,
            eta3: None,
            eta4: None,
        },
    };
    fd.scalars = structure_scalars(j, &fd)?;
    Ok(fd)
}

fn kappa_derivatives(cj: &CovariantJet, e: &[FrameVector], kappa: &[f64]) -> Result<KappaDerivatives> {
    // ∇²T = −κ₁²E₁ + κ₁′E₂ + κ₁κ₂E₃
    // ∇³T = −3κ₁κ₁′E₁ + (κ₁″ − κ₁³ − κ₁κ₂²)E₂ + (2κ₁′κ₂ + κ₁κ₂′)E₃ + κ₁κ₂κ₃E₄
    if kappa.is_empty() {
        return Ok(KappaDerivatives::default());
    }
    let k1 = kappa[0];
    let k2 = kappa.get(1).copied().unwrap_or(0.0);
    let k1p = g_frame(&cj.d2, &e[1])?;
    let k1pp = g_frame(&cj.d3, &e[1])? + k1 * k1 * k1 + k1 * k2 * k2;
    let k2p = match e.get(2) {
        Some(e3) => Some((g_frame(&cj.d3, e3)? - 2.0 * k1p * k2) / k1),
        None => None,
    };
    Ok(KappaDerivatives {
        kappa1_prime: k1p,
        kappa1_second: k1pp,
        kappa2_prime: k2p,
    })
}

/// Fills `f = η(T)`, `f′`, `g(E_j, φT)` and `η(E_j)` from the jet and frame.
pub fn structure_scalars(j: &Jet4, fd: &FrenetData) -> Result<StructureScalars> {
    j.check()?;
    if let Some(e) = fd.e.first() {
        e.same_dim(&j.t)?;
    }
    let phi_t = phi_frame(&j.t);
    let along = |k: usize| -> Result<Option<(f64, f64)>> {
        match fd.e.get(k) {
            Some(ek) => Ok(Some((g_frame(ek, &phi_t)?, ek.eta()))),
            None => Ok(None),
        }
    };
    let s2 = along(1)?;
    let s3 = along(2)?;
    let s4 = along(3)?;
    let k1 = fd.kappa(1);
    Ok(StructureScalars {
        f: j.t.eta(),
        fprime: j.dt.eta(),
        fprime_alt: k1 * s2.map(|(_, eta)| eta).unwrap_or(0.0),
        alpha: s2.map(|(g, _)| g),
        g3: s3.map(|(g, _)| g),
        g4: s4.map(|(g, _)| g),
        eta2: s2.map(|(_, eta)| eta),
        eta3: s3.map(|(_, eta)| eta),
        eta4: s4.map(|(_, eta)| eta),
    })
}

/// Finite-difference settings for [`jets_from_samples`].
///
/// The velocity is taken with the 5-point first-derivative stencil at the
/// sample spacing `h`. Derivatives of the frame components of `T` use
/// 4th-order central stencils (5, 5 and 7 points) at step `stride · h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteDifferenceSpec {
    pub stride: usize,
}

impl Default for FiniteDifferenceSpec {
    fn default() -> Self {
        FiniteDifferenceSpec { stride: 1 }
    }
}

impl FiniteDifferenceSpec {
    /// Target step for the `T` derivatives. The third derivative of `T` is a
    /// fourth derivative of the coordinates, so roundoff grows like `ε/h⁴`.
    pub const TARGET_STEP: f64 = 0.05;

    pub fn for_spacing(h: f64) -> Self {
        let stride = (Self::TARGET_STEP / h).round().max(1.0) as usize;
        FiniteDifferenceSpec { stride }
    }

    /// Sample index range whose jets can be formed.
    pub fn interior(&self, len: usize) -> std::ops::Range<usize> {
        let margin = 2 + 3 * self.stride;
        if len <= 2 * margin {
            0..0
        } else {
            margin..len - margin
        }
    }

    pub fn min_samples(&self) -> usize {
        2 * (2 + 3 * self.stride) + 1
    }
}

const D1: [(isize, f64); 4] = [(-2, 1.0 / 12.0), (-1, -8.0 / 12.0), (1, 8.0 / 12.0), (2, -1.0 / 12.0)];
const D2: [(isize, f64); 5] = [
    (-2, -1.0 / 12.0),
    (-1, 16.0 / 12.0),
    (0, -30.0 / 12.0),
    (1, 16.0 / 12.0),
    (2, -1.0 / 12.0),
];
const D3: [(isize, f64); 6] = [
    (-3, 1.0 / 8.0),
    (-2, -1.0),
    (-1, 13.0 / 8.0),
    (1, -13.0 / 8.0),
    (2, 1.0),
    (3, -1.0 / 8.0),
];

fn stencil<F: Fn(isize) -> f64>(taps: &[(isize, f64)], value: F) -> f64 {
    taps.iter().map(|&(k, w)| w * value(k)).sum()
}

/// Jets at every interior sample (see [`FiniteDifferenceSpec::interior`]).
pub fn jets_from_samples(samples: &SampledCurve, spec: FiniteDifferenceSpec) -> Result<Vec<Jet4>> {
    jets_from_samples_at(samples, spec, spec.interior(samples.len()))
}

/// Jets at the given sample indices, which must lie in the interior range.
pub fn jets_from_samples_at(
    samples: &SampledCurve,
    spec: FiniteDifferenceSpec,
    indices: impl IntoIterator<Item = usize>,
) -> Result<Vec<Jet4>> {
    if spec.stride == 0 {
        return Err(Error::InvalidParameter("finite-difference stride must be positive".into()));
    }
    let len = samples.len();
    if len < spec.min_samples() {
        return Err(Error::TooFewSamples {
            needed: spec.min_samples(),
            have: len,
        });
    }
    let h = samples.spacing()?;
    let n = samples.n;
    let big_h = h * spec.stride as f64;
    let interior = spec.interior(len);

    // T at sample k, from the 5-point velocity
    let tangent = |k: usize| -> Result<FrameVector> {
        let pt = |off: isize| &samples.points[(k as isize + off) as usize];
        let v = CoordVelocity {
            dx: (0..n).map(|i| stencil(&D1, |o| pt(o).x[i]) / h).collect(),
            dy: (0..n).map(|i| stencil(&D1, |o| pt(o).y[i]) / h).collect(),
            dz: stencil(&D1, |o| pt(o).z) / h,
        };
        coord_to_frame(&samples.points[k], &v)
    };

    let mut out = Vec::new();
    for k in indices {
        if !interior.contains(&k) {
            return Err(Error::InvalidParameter(format!(
                "sample {k} outside the finite-difference interior {}..{}",
                interior.start, interior.end
            )));
        }
        let mut window = Vec::with_capacity(7);
        for m in -3..=3isize {
            window.push(tangent((k as isize + m * spec.stride as isize) as usize)?.components());
        }
        let comp = |taps: &[(isize, f64)], scale: f64| -> Vec<f64> {
            (0..2 * n + 1)
                .map(|c| stencil(taps, |o| window[(o + 3) as usize][c]) / scale)
                .collect()
        };
        out.push(Jet4 {
            s: samples.s[k],
            t: FrameVector::from_components(n, &window[3])?,
            dt: FrameVector::from_components(n, &comp(&D1, big_h))?,
            d2t: FrameVector::from_components(n, &comp(&D2, big_h * big_h))?,
            d3t: FrameVector::from_components(n, &comp(&D3, big_h * big_h * big_h))?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CoordPoint;

    fn constant_jet(t: FrameVector) -> Jet4 {
        let n = t.dim();
        Jet4 {
            s: 0.0,
            t,
            dt: FrameVector::zeros(n),
            d2t: FrameVector::zeros(n),
            d3t: FrameVector::zeros(n),
        }
    }

    #[test]
    fn stencils_are_exact_on_polynomials() {
        // exact for degree <= 4 (first, second) and degree <= 6 (third, 4th order)
        let p = |x: f64| 1.0 + 2.0 * x - 3.0 * x * x + 0.5 * x.powi(3) + 0.25 * x.powi(4);
        let h = 0.1;
        let x0 = 0.3;
        let at = |o: isize| p(x0 + o as f64 * h);
        let d1 = stencil(&D1, at) / h;
        let d2 = stencil(&D2, at) / (h * h);
        let d3 = stencil(&D3, at) / (h * h * h);
        assert!((d1 - (2.0 - 6.0 * x0 + 1.5 * x0 * x0 + x0.powi(3))).abs() < 1e-12);
        assert!((d2 - (-6.0 + 3.0 * x0 + 3.0 * x0 * x0)).abs() < 1e-10);
        assert!((d3 - (3.0 + 6.0 * x0)).abs() < 1e-8);
        let q = |x: f64| x.powi(6);
        let d3q = stencil(&D3, |o| q(x0 + o as f64 * h)) / (h * h * h);
        // error term is -(7/120) h^4 q^(7) = 0 for a sextic
        assert!((d3q - 120.0 * x0.powi(3)).abs() < 1e-8);
    }

    #[test]
    fn geodesic_has_order_one() {
        let j = constant_jet(FrameVector::x_basis(2, 0));
        let cj = covariant_jet(&j).unwrap();
        assert_eq!(cj.h.max_abs(), 0.0);
        assert_eq!(cj.d2.max_abs(), 0.0);
        assert_eq!(cj.d3.max_abs(), 0.0);
        let fd = frenet_apparatus(&j, &cj, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(fd.order, 1);
        assert!(fd.kappa.is_empty());
        assert_eq!(fd.scalars.alpha, None);
    }

    #[test]
    fn rejects_non_unit_tangent() {
        let j = constant_jet(FrameVector::x_basis(2, 0).scale(1.1));
        let cj = covariant_jet(&j).unwrap();
        assert!(matches!(
            frenet_apparatus(&j, &cj, DEFAULT_RANK_TOL),
            Err(Error::NotUnitSpeed { .. })
        ));
    }

    #[test]
    fn ambiguous_curvature_is_reported() {
        // constant T with f: H = Γ(T,T) = 0; perturb dT to put κ₁ in the band
        let mut j = constant_jet(FrameVector::x_basis(1, 0));
        j.dt.b[0] = 5e-8;
        let cj = covariant_jet(&j).unwrap();
        assert!(matches!(
            frenet_apparatus(&j, &cj, DEFAULT_RANK_TOL),
            Err(Error::DegenerateFrame { index: 1, .. })
        ));
    }

    #[test]
    fn straight_line_samples_have_no_curvature() {
        let h = 1e-3;
        let n = 2;
        let s: Vec<f64> = (0..400).map(|k| k as f64 * h).collect();
        let points = s
            .iter()
            .map(|&s| CoordPoint {
                x: vec![0.0; n],
                y: vec![2.0 * s, 0.0],
                z: 0.0,
            })
            .collect();
        let c = SampledCurve::new(n, s, points).unwrap();
        let jets = jets_from_samples(&c, FiniteDifferenceSpec { stride: 20 }).unwrap();
        assert!(!jets.is_empty());
        for j in &jets {
            let cj = covariant_jet(j).unwrap();
            assert!(cj.h.max_abs() <= 1e-10);
        }
    }

    #[test]
    fn too_few_samples() {
        let s: Vec<f64> = (0..10).map(|k| k as f64).collect();
        let points = s.iter().map(|_| CoordPoint::origin(1)).collect();
        let c = SampledCurve::new(1, s, points).unwrap();
        assert!(matches!(
            jets_from_samples(&c, FiniteDifferenceSpec::default()),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn stride_for_spacing() {
        assert_eq!(FiniteDifferenceSpec::for_spacing(1e-3).stride, 50);
        assert_eq!(FiniteDifferenceSpec::for_spacing(0.1).stride, 1);
        assert_eq!(FiniteDifferenceSpec { stride: 2 }.interior(30), 8..22);
    }
}
