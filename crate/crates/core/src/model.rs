//! Contact metric structure of R^{2n+1}(-3) in the orthonormal frame
//! `{X_i = 2 d/dy^i, X_{n+i} = 2(d/dx^i + y^i d/dz), xi = 2 d/dz}`.
//!
//! Vectors are stored by their frame components. In this frame the
//! Levi-Civita connection has constant coefficients, so covariant
//! derivatives along a curve reduce to a constant bilinear map `Γ(T, V)`
//! added to the componentwise derivative.
//!
//! The space-form curvature tensor is evaluated for arbitrary `c`; for the
//! model itself (`c = -3`) it can be recomputed independently from the
//! connection and the bracket table, see [`curvature_from_connection`].

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Half the ambient dimension: the model is R^{2n+1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadDimension {
                n,
                reason: "n must be at least 1",
            });
        }
        Ok(Dimension(n))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Ambient dimension 2n + 1.
    pub fn ambient(self) -> usize {
        2 * self.0 + 1
    }

    pub fn require_at_least_two(self) -> Result<Self> {
        if self.0 < 2 {
            return Err(Error::BadDimension {
                n: self.0,
                reason: "this construction requires n >= 2",
            });
        }
        Ok(self)
    }
}

/// Constant φ-sectional curvature of a Sasakian space form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceFormParam(pub f64);

impl SpaceFormParam {
    /// The explicit model R^{2n+1}(-3).
    pub const MODEL: SpaceFormParam = SpaceFormParam(-3.0);

    pub fn c(self) -> f64 {
        self.0
    }

    pub fn is_degenerate(self) -> bool {
        (self.0 - 1.0).abs() <= 1e-12
    }
}

/// Point of R^{2n+1} in model coordinates `(x^1..x^n, y^1..y^n, z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordPoint {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: f64,
}

impl CoordPoint {
    pub fn origin(n: usize) -> Self {
        CoordPoint {
            x: vec![0.0; n],
            y: vec![0.0; n],
            z: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    fn check(&self) -> Result<usize> {
        if self.y.len() != self.x.len() {
            return Err(Error::DimensionMismatch {
                expected: self.x.len(),
                found: self.y.len(),
            });
        }
        Ok(self.x.len())
    }
}

/// Tangent vector in the coordinate basis `d/dx^i, d/dy^i, d/dz`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordVelocity {
    pub dx: Vec<f64>,
    pub dy: Vec<f64>,
    pub dz: f64,
}

impl CoordVelocity {
    pub fn dim(&self) -> usize {
        self.dx.len()
    }
}

/// Frame components: `a_i` along `X_i`, `b_i` along `X_{n+i}`, `f` along `xi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameVector {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub f: f64,
}

impl FrameVector {
    pub fn new(a: Vec<f64>, b: Vec<f64>, f: f64) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        if a.is_empty() {
            return Err(Error::BadDimension {
                n: 0,
                reason: "n must be at least 1",
            });
        }
        Ok(FrameVector { a, b, f })
    }

    pub fn zeros(n: usize) -> Self {
        FrameVector {
            a: vec![0.0; n],
            b: vec![0.0; n],
            f: 0.0,
        }
    }

    /// The characteristic field ξ.
    pub fn xi(n: usize) -> Self {
        FrameVector {
            f: 1.0,
            ..Self::zeros(n)
        }
    }

    /// `X_{i+1}` (zero-based index `i`).
    pub fn x_basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.a[i] = 1.0;
        v
    }

    /// `X_{n+i+1} = φ X_{i+1}` (zero-based index `i`).
    pub fn phi_x_basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.b[i] = 1.0;
        v
    }

    /// Component vector in the order `(a_1..a_n, b_1..b_n, f)`.
    pub fn from_components(n: usize, comps: &[f64]) -> Result<Self> {
        if comps.len() != 2 * n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: comps.len().saturating_sub(1) / 2,
            });
        }
        Ok(FrameVector {
            a: comps[..n].to_vec(),
            b: comps[n..2 * n].to_vec(),
            f: comps[2 * n],
        })
    }

    pub fn components(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.dim() + 1);
        out.extend_from_slice(&self.a);
        out.extend_from_slice(&self.b);
        out.push(self.f);
        out
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn eta(&self) -> f64 {
        self.f
    }

    pub fn norm_sq(&self) -> f64 {
        dot(&self.a, &self.a) + dot(&self.b, &self.b) + self.f * self.f
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.a
            .iter()
            .chain(self.b.iter())
            .chain(std::iter::once(&self.f))
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn scale(&self, k: f64) -> FrameVector {
        FrameVector {
            a: self.a.iter().map(|v| k * v).collect(),
            b: self.b.iter().map(|v| k * v).collect(),
            f: k * self.f,
        }
    }

    /// `self + k * other`; dimensions must agree.
    pub fn axpy(&self, k: f64, other: &FrameVector) -> FrameVector {
        debug_assert_eq!(self.dim(), other.dim());
        FrameVector {
            a: self.a.iter().zip(&other.a).map(|(u, v)| u + k * v).collect(),
            b: self.b.iter().zip(&other.b).map(|(u, v)| u + k * v).collect(),
            f: self.f + k * other.f,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.a.iter().chain(self.b.iter()).all(|v| v.is_finite()) && self.f.is_finite()
    }

    pub(crate) fn same_dim(&self, other: &FrameVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

impl Add for &FrameVector {
    type Output = FrameVector;
    fn add(self, rhs: &FrameVector) -> FrameVector {
        self.axpy(1.0, rhs)
    }
}

impl Add for FrameVector {
    type Output = FrameVector;
    fn add(self, rhs: FrameVector) -> FrameVector {
        &self + &rhs
    }
}

impl Sub for &FrameVector {
    type Output = FrameVector;
    fn sub(self, rhs: &FrameVector) -> FrameVector {
        self.axpy(-1.0, rhs)
    }
}

impl Sub for FrameVector {
    type Output = FrameVector;
    fn sub(self, rhs: FrameVector) -> FrameVector {
        &self - &rhs
    }
}

impl Neg for FrameVector {
    type Output = FrameVector;
    fn neg(self) -> FrameVector {
        self.scale(-1.0)
    }
}

impl Mul<&FrameVector> for f64 {
    type Output = FrameVector;
    fn mul(self, rhs: &FrameVector) -> FrameVector {
        rhs.scale(self)
    }
}

impl Mul<FrameVector> for f64 {
    type Output = FrameVector;
    fn mul(self, rhs: FrameVector) -> FrameVector {
        rhs.scale(self)
    }
}

impl AddAssign<&FrameVector> for FrameVector {
    fn add_assign(&mut self, rhs: &FrameVector) {
        for (u, v) in self.a.iter_mut().zip(&rhs.a) {
            *u += v;
        }
        for (u, v) in self.b.iter_mut().zip(&rhs.b) {
            *u += v;
        }
        self.f += rhs.f;
    }
}

/// `η(v) = ½(dz − Σ y^i dx^i)`.
pub fn eta_coord(p: &CoordPoint, v: &CoordVelocity) -> Result<f64> {
    let n = p.check()?;
    if v.dx.len() != n || v.dy.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.dx.len().max(v.dy.len()),
        });
    }
    Ok(0.5 * (v.dz - dot(&p.y, &v.dx)))
}

pub fn coord_to_frame(p: &CoordPoint, v: &CoordVelocity) -> Result<FrameVector> {
    let f = eta_coord(p, v)?;
    Ok(FrameVector {
        a: v.dy.iter().map(|d| 0.5 * d).collect(),
        b: v.dx.iter().map(|d| 0.5 * d).collect(),
        f,
    })
}

pub fn frame_to_coord(p: &CoordPoint, w: &FrameVector) -> Result<CoordVelocity> {
    let n = p.check()?;
    if w.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: w.dim(),
        });
    }
    let dx: Vec<f64> = w.b.iter().map(|b| 2.0 * b).collect();
    let dy: Vec<f64> = w.a.iter().map(|a| 2.0 * a).collect();
    let dz = 2.0 * w.f + dot(&p.y, &dx);
    Ok(CoordVelocity { dx, dy, dz })
}

pub fn g_frame(u: &FrameVector, v: &FrameVector) -> Result<f64> {
    u.same_dim(v)?;
    Ok(dot(&u.a, &v.a) + dot(&u.b, &v.b) + u.f * v.f)
}

/// `φ(a, b, f) = (−b, a, 0)`.
pub fn phi_frame(v: &FrameVector) -> FrameVector {
    FrameVector {
        a: v.b.iter().map(|b| -b).collect(),
        b: v.a.clone(),
        f: 0.0,
    }
}

/// Constant-coefficient connection in the model frame, `∇_U V = U(V) + Γ(U, V)`.
///
/// The trait exists so that diagnostics can be run against a modified table.
pub trait Connection: Sync {
    fn gamma(&self, t: &FrameVector, v: &FrameVector) -> Result<FrameVector>;

    /// `[U, V]` for constant-coefficient frame fields.
    fn bracket(&self, u: &FrameVector, v: &FrameVector) -> Result<FrameVector> {
        lie_bracket(u, v)
    }
}

/// Levi-Civita connection of R^{2n+1}(-3).
#[derive(Debug, Clone, Copy, Default)]
pub struct ModelConnection;

impl Connection for ModelConnection {
    fn gamma(&self, t: &FrameVector, v: &FrameVector) -> Result<FrameVector> {
        gamma(t, v)
    }
}

/// Bilinear part of the model connection:
///
/// ```text
/// ∇_{X_i} X_{n+j} = δ_ij ξ      ∇_{X_{n+i}} X_j = −δ_ij ξ
/// ∇_{X_i} ξ = ∇_ξ X_i = −X_{n+i}
/// ∇_{X_{n+i}} ξ = ∇_ξ X_{n+i} = X_i
/// ∇_ξ ξ = 0, all other pairs zero.
/// ```
pub fn gamma(t: &FrameVector, v: &FrameVector) -> Result<FrameVector> {
    t.same_dim(v)?;
    let n = t.dim();
    let mut out = FrameVector::zeros(n);
    for i in 0..n {
        out.a[i] = t.b[i] * v.f + t.f * v.b[i];
        out.b[i] = -t.a[i] * v.f - t.f * v.a[i];
        out.f += t.a[i] * v.b[i] - t.b[i] * v.a[i];
    }
    Ok(out)
}

/// Covariant derivative of a field `V` along a curve with tangent `T`, given the
/// componentwise arc-length derivative `V'` of its frame components.
pub fn cov_deriv_along(t: &FrameVector, v: &FrameVector, v_prime: &FrameVector) -> Result<FrameVector> {
    v.same_dim(v_prime)?;
    Ok(v_prime + &gamma(t, v)?)
}

/// Bracket of constant-coefficient frame fields: only `[X_i, X_{n+j}] = 2δ_ij ξ` survives.
pub fn lie_bracket(u: &FrameVector, v: &FrameVector) -> Result<FrameVector> {
    u.same_dim(v)?;
    let mut out = FrameVector::zeros(u.dim());
    out.f = 2.0 * (dot(&u.a, &v.b) - dot(&u.b, &v.a));
    Ok(out)
}

/// Curvature tensor `R(X, Y)Z` of a Sasakian space form with φ-sectional curvature `c`.
pub fn curvature_space_form(c: f64, x: &FrameVector, y: &FrameVector, z: &FrameVector) -> Result<FrameVector> {
    x.same_dim(y)?;
    x.same_dim(z)?;
    let n = x.dim();
    let xi = FrameVector::xi(n);
    let (phi_x, phi_y, phi_z) = (phi_frame(x), phi_frame(y), phi_frame(z));
    let (gzy, gzx) = (g_frame(z, y)?, g_frame(z, x)?);
    let (ex, ey, ez) = (x.eta(), y.eta(), z.eta());

    let p = (c + 3.0) / 4.0;
    let q = (c - 1.0) / 4.0;

    let mut r = x.scale(p * gzy);
    r = r.axpy(-p * gzx, y);
    r = r.axpy(q * ez * ex, y);
    r = r.axpy(-q * ez * ey, x);
    r = r.axpy(q * gzx * ey, &xi);
    r = r.axpy(-q * gzy * ex, &xi);
    r = r.axpy(q * g_frame(z, &phi_y)?, &phi_x);
    r = r.axpy(-q * g_frame(z, &phi_x)?, &phi_y);
    r = r.axpy(2.0 * q * g_frame(x, &phi_y)?, &phi_z);
    Ok(r)
}

/// `R(U,V)W = ∇_U∇_V W − ∇_V∇_U W − ∇_{[U,V]}W` for constant-coefficient frame
/// fields of the model (`c = -3`), built only from the connection and brackets.
pub fn curvature_from_connection(u: &FrameVector, v: &FrameVector, w: &FrameVector) -> Result<FrameVector> {
    curvature_from_connection_with(&ModelConnection, u, v, w)
}

pub fn curvature_from_connection_with(
    conn: &dyn Connection,
    u: &FrameVector,
    v: &FrameVector,
    w: &FrameVector,
) -> Result<FrameVector> {
    u.same_dim(v)?;
    u.same_dim(w)?;
    let first = conn.gamma(u, &conn.gamma(v, w)?)?;
    let second = conn.gamma(v, &conn.gamma(u, w)?)?;
    let third = conn.gamma(&conn.bracket(u, v)?, w)?;
    Ok(&(&first - &second) - &third)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> FrameVector {
        FrameVector {
            a: (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            b: (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            f: rng.gen_range(-1.0..1.0),
        }
    }

    fn random_point(rng: &mut ChaCha8Rng, n: usize) -> CoordPoint {
        CoordPoint {
            x: (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect(),
            y: (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect(),
            z: rng.gen_range(-5.0..5.0),
        }
    }

    #[test]
    fn eta_coord_examples() {
        let o = CoordPoint::origin(2);
        let xi = CoordVelocity {
            dx: vec![0.0; 2],
            dy: vec![0.0; 2],
            dz: 2.0,
        };
        assert_eq!(eta_coord(&o, &xi).unwrap(), 1.0);

        let p = CoordPoint {
            x: vec![0.0, 0.0],
            y: vec![1.0, 0.0],
            z: 0.0,
        };
        let horizontal = CoordVelocity {
            dx: vec![2.0, 0.0],
            dy: vec![0.0; 2],
            dz: 2.0,
        };
        assert_eq!(eta_coord(&p, &horizontal).unwrap(), 0.0);

        let v = CoordVelocity {
            dx: vec![4.0, 0.0],
            dy: vec![0.0; 2],
            dz: 6.0,
        };
        assert_eq!(eta_coord(&o, &v).unwrap(), 3.0);
    }

    #[test]
    fn eta_coord_rejects_mismatch() {
        let o = CoordPoint::origin(2);
        let v = CoordVelocity {
            dx: vec![0.0; 3],
            dy: vec![0.0; 3],
            dz: 0.0,
        };
        assert!(matches!(eta_coord(&o, &v), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn frame_of_basis_fields() {
        let p = CoordPoint {
            x: vec![0.3, -1.0],
            y: vec![2.0, 0.5],
            z: 4.0,
        };
        let xi = CoordVelocity {
            dx: vec![0.0; 2],
            dy: vec![0.0; 2],
            dz: 2.0,
        };
        assert_eq!(coord_to_frame(&p, &xi).unwrap(), FrameVector::xi(2));

        let q = CoordPoint::origin(2);
        let v = CoordVelocity {
            dx: vec![2.0, 0.0],
            dy: vec![0.0; 2],
            dz: 0.0,
        };
        assert_eq!(coord_to_frame(&q, &v).unwrap(), FrameVector::phi_x_basis(2, 0));

        // X_{n+1} = 2(d/dx^1 + y^1 d/dz) has no ξ component anywhere
        let back = frame_to_coord(&p, &FrameVector::phi_x_basis(2, 0)).unwrap();
        assert_eq!(back.dx, vec![2.0, 0.0]);
        assert_eq!(back.dz, 2.0 * p.y[0]);
        assert_eq!(coord_to_frame(&p, &back).unwrap().f, 0.0);
    }

    #[test]
    fn coordinate_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut worst = 0.0_f64;
        for k in 0..100 {
            let n = 1 + k % 3;
            let p = random_point(&mut rng, n);
            let v = CoordVelocity {
                dx: (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect(),
                dy: (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect(),
                dz: rng.gen_range(-3.0..3.0),
            };
            let w = coord_to_frame(&p, &v).unwrap();
            assert_eq!(w.f, eta_coord(&p, &v).unwrap());
            let back = frame_to_coord(&p, &w).unwrap();
            for (u, v) in back.dx.iter().zip(&v.dx).chain(back.dy.iter().zip(&v.dy)) {
                worst = worst.max((u - v).abs());
            }
            worst = worst.max((back.dz - v.dz).abs());
        }
        assert!(worst <= 1e-14, "round trip error {worst:e}");
    }

    #[test]
    fn orthonormal_frame() {
        let x1 = FrameVector::x_basis(2, 0);
        let xn1 = FrameVector::phi_x_basis(2, 0);
        assert_eq!(g_frame(&x1, &x1).unwrap(), 1.0);
        assert_eq!(g_frame(&x1, &xn1).unwrap(), 0.0);
        assert_eq!(phi_frame(&x1), xn1);
        assert_eq!(phi_frame(&FrameVector::xi(3)), FrameVector::zeros(3));
    }

    #[test]
    fn contact_metric_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..200 {
            let n = 1 + k % 3;
            let (u, v) = (random_vector(&mut rng, n), random_vector(&mut rng, n));
            let xi = FrameVector::xi(n);
            let phi2 = phi_frame(&phi_frame(&v));
            let expected = (-1.0 * &v).axpy(v.eta(), &xi);
            assert!((&phi2 - &expected).max_abs() <= 1e-15);
            let lhs = g_frame(&phi_frame(&u), &phi_frame(&v)).unwrap();
            let rhs = g_frame(&u, &v).unwrap() - u.eta() * v.eta();
            assert!((lhs - rhs).abs() <= 1e-14);
        }
    }

    #[test]
    fn connection_table_entries() {
        let n = 2;
        let xi = FrameVector::xi(n);
        let x1 = FrameVector::x_basis(n, 0);
        let xn1 = FrameVector::phi_x_basis(n, 0);
        let zero = FrameVector::zeros(n);

        assert_eq!(cov_deriv_along(&xi, &x1, &zero).unwrap(), -1.0 * &xn1);
        assert_eq!(cov_deriv_along(&x1, &xn1, &zero).unwrap(), xi);
        assert_eq!(cov_deriv_along(&xn1, &x1, &zero).unwrap(), -1.0 * &xi);
        assert_eq!(cov_deriv_along(&xn1, &xi, &zero).unwrap(), x1);
        assert_eq!(cov_deriv_along(&xi, &xi, &zero).unwrap(), zero);
        // straight y-line: T = X_1 constant is a geodesic
        assert_eq!(cov_deriv_along(&x1, &x1, &zero).unwrap(), zero);
        // X_1 and X_2 do not interact
        assert_eq!(gamma(&x1, &FrameVector::phi_x_basis(n, 1)).unwrap(), zero);
    }

    #[test]
    fn nabla_xi_is_minus_phi() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=3 {
            for _ in 0..50 {
                let t = random_vector(&mut rng, n);
                let d = gamma(&t, &FrameVector::xi(n)).unwrap();
                assert_eq!(d, -1.0 * &phi_frame(&t));
            }
        }
    }

    #[test]
    fn connection_is_metric() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=3 {
            for _ in 0..100 {
                let (t, v, w) = (
                    random_vector(&mut rng, n),
                    random_vector(&mut rng, n),
                    random_vector(&mut rng, n),
                );
                let s = g_frame(&gamma(&t, &v).unwrap(), &w).unwrap() + g_frame(&v, &gamma(&t, &w).unwrap()).unwrap();
                assert!(s.abs() <= 1e-14);
            }
        }
    }

    #[test]
    fn phi_sectional_curvature() {
        let n = 2;
        let x1 = FrameVector::x_basis(n, 0);
        let phi_x1 = phi_frame(&x1);
        for c in [-3.0, -1.0, 0.5, 1.0, 4.0] {
            let r = curvature_space_form(c, &x1, &phi_x1, &phi_x1).unwrap();
            assert!((g_frame(&r, &x1).unwrap() - c).abs() <= 1e-15);
            let r = curvature_space_form(c, &x1, &FrameVector::xi(n), &FrameVector::xi(n)).unwrap();
            assert!((g_frame(&r, &x1).unwrap() - 1.0).abs() <= 1e-15);
        }
        let r = curvature_from_connection(&x1, &phi_x1, &phi_x1).unwrap();
        assert!((g_frame(&r, &x1).unwrap() + 3.0).abs() <= 1e-15);
    }

    #[test]
    fn curvature_vanishes_on_repeated_arguments() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=3 {
            let (x, z) = (random_vector(&mut rng, n), random_vector(&mut rng, n));
            assert!(curvature_space_form(-3.0, &x, &x, &z).unwrap().max_abs() <= 1e-15);
            let xi = FrameVector::xi(n);
            assert!(curvature_from_connection(&xi, &xi, &z).unwrap().max_abs() <= 1e-15);
        }
    }

    #[test]
    fn connection_curvature_matches_space_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in 1..=3 {
            for _ in 0..300 {
                let (u, v, w) = (
                    random_vector(&mut rng, n),
                    random_vector(&mut rng, n),
                    random_vector(&mut rng, n),
                );
                let a = curvature_from_connection(&u, &v, &w).unwrap();
                let b = curvature_space_form(-3.0, &u, &v, &w).unwrap();
                assert!((&a - &b).max_abs() <= 1e-12 * (1.0 + b.max_abs()));
            }
        }
    }

    #[test]
    fn dimension_guards() {
        assert!(Dimension::new(0).is_err());
        assert!(Dimension::new(1).unwrap().require_at_least_two().is_err());
        assert_eq!(Dimension::new(3).unwrap().ambient(), 7);
        let u = FrameVector::zeros(2);
        let v = FrameVector::zeros(3);
        assert!(g_frame(&u, &v).is_err());
        assert!(curvature_space_form(-3.0, &u, &u, &v).is_err());
    }
}
