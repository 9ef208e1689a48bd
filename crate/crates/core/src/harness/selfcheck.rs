//! Seeded identity checks of the model: structure tensors, connection,
//! curvature and the Frenet expansion of the bitension field.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::verify::CheckVerdict;
use crate::bitension::{bitension_direct, bitension_expansion};
use crate::error::Result;
use crate::frenet::{covariant_jet, frenet_apparatus, DEFAULT_RANK_TOL};
use crate::generators::{gen_rotation_fixture, AnalyticCurve};
use crate::model::{
    curvature_from_connection_with, curvature_space_form, g_frame, phi_frame, Connection, FrameVector,
    ModelConnection,
};

pub const STRUCTURE_TOL: f64 = 1e-14;
pub const CONNECTION_TOL: f64 = 1e-14;
pub const CURVATURE_REL_TOL: f64 = 1e-12;
pub const SECTIONAL_TOL: f64 = 1e-10;
pub const EXPANSION_TOL: f64 = 1e-10;

pub const STRUCTURE_SAMPLES: usize = 1000;
pub const CURVATURE_TRIPLES: usize = 1000;
pub const SECTIONAL_SAMPLES: usize = 200;
pub const ROTATION_FIXTURES: usize = 50;
/// Points per rotation fixture in the expansion check.
pub const FIXTURE_POINTS: usize = 8;

/// Model connection with a spurious `Γ(ξ, ξ) = X_1`, for exercising failure paths.
#[derive(Debug, Clone, Copy, Default)]
pub struct CorruptedConnection;

impl Connection for CorruptedConnection {
    fn gamma(&self, t: &FrameVector, v: &FrameVector) -> Result<FrameVector> {
        let mut out = crate::model::gamma(t, v)?;
        out.a[0] += t.f * v.f;
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfcheckReport {
    pub seed: u64,
    pub checks: Vec<CheckVerdict>,
}

impl SelfcheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.checks.iter().find(|c| !c.pass).map(|c| c.name.as_str())
    }

    pub fn check(&self, name: &str) -> Option<&CheckVerdict> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Plain-text summary; identical for identical seeds.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "selfcheck seed={}", self.seed);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<22} {}  max {:.3e}  threshold {:.1e}",
                c.name,
                if c.pass { "pass" } else { "FAIL" },
                c.value,
                c.threshold
            );
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        match self.first_failure() {
            None => {
                let _ = writeln!(out, "result: pass ({passed}/{})", self.checks.len());
            }
            Some(name) => {
                let _ = writeln!(
                    out,
                    "result: FAIL ({passed}/{}), first failing identity: {name}",
                    self.checks.len()
                );
            }
        }
        out
    }
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> FrameVector {
    FrameVector {
        a: (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        b: (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        f: rng.gen_range(-1.0..1.0),
    }
}

fn random_dim(rng: &mut impl Rng) -> usize {
    rng.gen_range(1..=3)
}

/// A rotation fixture with random `n ∈ {1,2,3}`, `η(T) = f`, `ω` and phases,
/// kept away from the geodesic case `ω = 2f`.
pub fn random_rotation_fixture(rng: &mut impl Rng) -> Result<AnalyticCurve> {
    let n = random_dim(rng);
    let f: f64 = rng.gen_range(0.1..0.9) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let mut dir: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.0)).collect();
    let len = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
    let r = (1.0 - f * f).sqrt();
    for d in &mut dir {
        *d *= r / len;
    }
    let mut omega: f64 = rng.gen_range(-2.0..2.0);
    if (omega - 2.0 * f).abs() < 0.2 {
        omega += 0.5;
    }
    let theta: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
    gen_rotation_fixture(&dir, omega, &theta, f)
}

fn phi_squared(rng: &mut ChaCha8Rng) -> f64 {
    let mut worst = 0.0_f64;
    for _ in 0..STRUCTURE_SAMPLES {
        let n = random_dim(rng);
        let v = random_vector(rng, n);
        let want = (-v.clone()).axpy(v.eta(), &FrameVector::xi(n));
        worst = worst.max((&phi_frame(&phi_frame(&v)) - &want).max_abs());
    }
    worst
}

fn phi_metric(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..STRUCTURE_SAMPLES {
        let n = random_dim(rng);
        let (u, v) = (random_vector(rng, n), random_vector(rng, n));
        let lhs = g_frame(&phi_frame(&u), &phi_frame(&v))?;
        let rhs = g_frame(&u, &v)? - u.eta() * v.eta();
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

fn eta_xi() -> f64 {
    (1..=3)
        .map(|n| {
            let xi = FrameVector::xi(n);
            (xi.eta() - 1.0).abs().max(phi_frame(&xi).max_abs())
        })
        .fold(0.0, f64::max)
}

/// `g(∇_U V, W) + g(V, ∇_U W)` for constant-coefficient fields, over basis triples.
fn metric_compatibility(conn: &dyn Connection) -> Result<f64> {
    let mut worst = 0.0_f64;
    for n in 1..=3 {
        let basis = basis(n);
        for u in &basis {
            for v in &basis {
                for w in &basis {
                    let r = g_frame(&conn.gamma(u, v)?, w)? + g_frame(v, &conn.gamma(u, w)?)?;
                    worst = worst.max(r.abs());
                }
            }
        }
    }
    Ok(worst)
}

/// `∇_U V − ∇_V U − [U, V]` over basis pairs.
fn torsion_free(conn: &dyn Connection) -> Result<f64> {
    let mut worst = 0.0_f64;
    for n in 1..=3 {
        let basis = basis(n);
        for u in &basis {
            for v in &basis {
                let t = &(&conn.gamma(u, v)? - &conn.gamma(v, u)?) - &conn.bracket(u, v)?;
                worst = worst.max(t.max_abs());
            }
        }
    }
    Ok(worst)
}

fn basis(n: usize) -> Vec<FrameVector> {
    let mut out: Vec<FrameVector> = (0..n).map(|i| FrameVector::x_basis(n, i)).collect();
    out.extend((0..n).map(|i| FrameVector::phi_x_basis(n, i)));
    out.push(FrameVector::xi(n));
    out
}

fn curvature_oracle(conn: &dyn Connection, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..CURVATURE_TRIPLES {
        let n = random_dim(rng);
        let (x, y, z) = (random_vector(rng, n), random_vector(rng, n), random_vector(rng, n));
        let from_conn = curvature_from_connection_with(conn, &x, &y, &z)?;
        let closed = curvature_space_form(-3.0, &x, &y, &z)?;
        let scale = x.norm() * y.norm() * z.norm();
        worst = worst.max((&from_conn - &closed).max_abs() / scale);
    }
    Ok(worst)
}

/// Deviation of `g(R(X, φX)φX, X)` from `−3` for random unit `X ⊥ ξ`.
fn phi_sectional(conn: &dyn Connection, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..SECTIONAL_SAMPLES {
        let n = random_dim(rng);
        let mut x = random_vector(rng, n);
        x.f = 0.0;
        let x = x.scale(1.0 / x.norm());
        let px = phi_frame(&x);
        let k = g_frame(&curvature_from_connection_with(conn, &x, &px, &px)?, &x)?;
        worst = worst.max((k + 3.0).abs());
    }
    Ok(worst)
}

/// `max |τ₂(direct) − τ₂(expansion)|` over random rotation fixtures.
pub fn expansion_vs_direct(rng: &mut impl Rng, fixtures: usize) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..fixtures {
        let curve = random_rotation_fixture(rng)?;
        for &s in &curve.window(rng.gen_range(0.0..1.0), 1.0, FIXTURE_POINTS) {
            let j = curve.eval_jet(s);
            let cj = covariant_jet(&j)?;
            let fd = frenet_apparatus(&j, &cj, DEFAULT_RANK_TOL)?;
            let direct = bitension_direct(&j, &cj, -3.0)?;
            let ex = bitension_expansion(&fd, &fd.scalars, &fd.dkappa, -3.0, &phi_frame(&j.t))?;
            worst = worst.max((&direct - &ex).max_abs());
        }
    }
    Ok(worst)
}

pub fn run_selfcheck(seed: u64) -> Result<SelfcheckReport> {
    run_selfcheck_with(seed, &ModelConnection)
}

/// Every check draws from its own stream derived from `seed`, so the values do
/// not depend on which checks ran before.
pub fn run_selfcheck_with(seed: u64, conn: &dyn Connection) -> Result<SelfcheckReport> {
    let stream = |k: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k);
        rng
    };
    let checks = vec![
        CheckVerdict::new("phi-squared", phi_squared(&mut stream(1)), STRUCTURE_TOL),
        CheckVerdict::new("phi-metric", phi_metric(&mut stream(2))?, STRUCTURE_TOL),
        CheckVerdict::new("eta-xi", eta_xi(), STRUCTURE_TOL),
        CheckVerdict::new("metric-compatibility", metric_compatibility(conn)?, CONNECTION_TOL),
        CheckVerdict::new("torsion-free", torsion_free(conn)?, CONNECTION_TOL),
        CheckVerdict::new("curvature-oracle", curvature_oracle(conn, &mut stream(3))?, CURVATURE_REL_TOL),
        CheckVerdict::new("phi-sectional", phi_sectional(conn, &mut stream(4))?, SECTIONAL_TOL),
        CheckVerdict::new(
            "expansion-vs-direct",
            expansion_vs_direct(&mut stream(5), ROTATION_FIXTURES)?,
            EXPANSION_TOL,
        ),
    ];
    Ok(SelfcheckReport { seed, checks })
}
