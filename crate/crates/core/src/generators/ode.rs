//! Second route to the same curves: integrate the first-order frame systems
//! with classical RK4 together with `dx^i = 2T_{n+i}`, `dy^i = 2T_i`,
//! `dz = 2η(T) + Σ y^i dx^i`.
//!
//! * perp circles: `T′ = κ₁E − Γ(T,T)`, `E′ = cosβ₀ φE`, with `E = ∇_T T/κ₁`;
//! * parallel kinds: `T′ = λφT − Γ(T,T)` with `λ = σκ₁/sinβ₀`
//!   (rotation fixtures: `λ = ω − 2f`).
//!
//! Initial values come from the closed form at the start of the span.

use super::closed_form::{generate, parallel_data};
use super::params::{GeneratorKind, GeneratorParams};
use crate::error::{Error, Result};
use crate::model::{gamma, phi_frame, CoordPoint, FrameVector};
use crate::sampled::SampledCurve;

/// Allowed `max |g(T,T) − 1|` per unit length of the span.
pub const DRIFT_PER_LENGTH: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct OdeRun {
    pub samples: SampledCurve,
    /// `max_k |g(T_k, T_k) − 1|` over the run.
    pub unit_speed_drift: f64,
    /// The frame components of `T` at every sample.
    pub tangents: Vec<FrameVector>,
}

#[derive(Debug, Clone, Copy)]
enum Law {
    /// `T′ = κ E − Γ(T,T)`, `E′ = rate·φE`.
    Perp { kappa: f64, rate: f64 },
    /// `T′ = λ φT − Γ(T,T)`.
    Parallel { lambda: f64 },
}

#[derive(Debug, Clone)]
struct State {
    t: FrameVector,
    e: FrameVector,
    p: CoordPoint,
}

impl State {
    fn axpy(&self, k: f64, d: &State) -> State {
        State {
            t: self.t.axpy(k, &d.t),
            e: self.e.axpy(k, &d.e),
            p: CoordPoint {
                x: self.p.x.iter().zip(&d.p.x).map(|(u, v)| u + k * v).collect(),
                y: self.p.y.iter().zip(&d.p.y).map(|(u, v)| u + k * v).collect(),
                z: self.p.z + k * d.p.z,
            },
        }
    }
}

fn rhs(law: Law, st: &State) -> Result<State> {
    let gtt = gamma(&st.t, &st.t)?;
    let (dt, de) = match law {
        Law::Perp { kappa, rate } => (st.e.scale(kappa) - gtt, phi_frame(&st.e).scale(rate)),
        Law::Parallel { lambda } => (phi_frame(&st.t).scale(lambda) - gtt, FrameVector::zeros(st.t.dim())),
    };
    let dx: Vec<f64> = st.t.b.iter().map(|b| 2.0 * b).collect();
    let dy: Vec<f64> = st.t.a.iter().map(|a| 2.0 * a).collect();
    let dz = 2.0 * st.t.f + st.p.y.iter().zip(&dx).map(|(y, d)| y * d).sum::<f64>();
    Ok(State {
        t: dt,
        e: de,
        p: CoordPoint { x: dx, y: dy, z: dz },
    })
}

fn rk4_step(law: Law, st: &State, h: f64) -> Result<State> {
    let k1 = rhs(law, st)?;
    let k2 = rhs(law, &st.axpy(0.5 * h, &k1))?;
    let k3 = rhs(law, &st.axpy(0.5 * h, &k2))?;
    let k4 = rhs(law, &st.axpy(h, &k3))?;
    Ok(st
        .axpy(h / 6.0, &k1)
        .axpy(h / 3.0, &k2)
        .axpy(h / 3.0, &k3)
        .axpy(h / 6.0, &k4))
}

fn law_for(p: &GeneratorParams) -> Result<Law> {
    match p.kind {
        GeneratorKind::PerpCircle => {
            let cb = p.require_beta0()?.cos();
            Ok(Law::Perp {
                kappa: cb.abs(),
                rate: cb,
            })
        }
        GeneratorKind::ParCircle | GeneratorKind::ParHelix => Ok(Law::Parallel {
            lambda: parallel_data(p)?.lambda,
        }),
        GeneratorKind::Rotation => {
            let omega = p.omega.ok_or(Error::MissingScalar("omega"))?;
            let f = p.f.ok_or(Error::MissingScalar("f"))?;
            Ok(Law::Parallel { lambda: omega - 2.0 * f })
        }
    }
}

/// Integrates over `span` with `round(len/h)` equal steps (the step is
/// adjusted so the last sample lands on `span.1`).
pub fn integrate(p: &GeneratorParams, h: f64, span: (f64, f64)) -> Result<OdeRun> {
    let (s0, s1) = span;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParameter(format!("step h = {h} must be positive")));
    }
    if !(s1 > s0) || !s0.is_finite() || !s1.is_finite() {
        return Err(Error::InvalidParameter(format!("span [{s0}, {s1}] is empty")));
    }
    let len = s1 - s0;
    let steps = ((len / h).round() as usize).max(1);
    let h = len / steps as f64;
    let law = law_for(p)?;

    let closed = generate(p)?;
    let j0 = closed.eval_jet(s0);
    let e0 = match law {
        Law::Perp { kappa, .. } => (&j0.dt + &gamma(&j0.t, &j0.t)?).scale(1.0 / kappa),
        Law::Parallel { .. } => FrameVector::zeros(p.n),
    };
    let mut st = State {
        t: j0.t,
        e: e0,
        p: closed.point(s0),
    };

    let mut s = Vec::with_capacity(steps + 1);
    let mut points = Vec::with_capacity(steps + 1);
    let mut tangents = Vec::with_capacity(steps + 1);
    let mut drift: f64 = 0.0;
    for k in 0..=steps {
        drift = drift.max((st.t.norm_sq() - 1.0).abs());
        s.push(s0 + k as f64 * h);
        points.push(st.p.clone());
        tangents.push(st.t.clone());
        if k < steps {
            st = rk4_step(law, &st, h)?;
        }
    }
    if !st.t.is_finite() {
        return Err(Error::NonFinite("ODE state"));
    }
    Ok(OdeRun {
        samples: SampledCurve::new(p.n, s, points)?,
        unit_speed_drift: drift,
        tangents,
    })
}

/// Uniform samples of the integrated curve; fails with `StepTooLarge` when the
/// unit-speed drift exceeds [`DRIFT_PER_LENGTH`] per unit length.
pub fn gen_by_ode(p: &GeneratorParams, h: f64, span: (f64, f64)) -> Result<SampledCurve> {
    let run = integrate(p, h, span)?;
    let per_length = run.unit_speed_drift / (span.1 - span.0);
    if per_length > DRIFT_PER_LENGTH {
        return Err(Error::StepTooLarge {
            drift: per_length,
            limit: DRIFT_PER_LENGTH,
        });
    }
    Ok(run.samples)
}
