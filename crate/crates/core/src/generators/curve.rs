use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::params::GeneratorParams;
use super::trigpoly::TrigPoly;
use crate::error::{Error, Result};
use crate::frenet::Jet4;
use crate::model::{CoordPoint, Dimension, FrameVector};
use crate::sampled::SampledCurve;

/// Frame components of a vector field along a curve, as functions of `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FramePolys {
    pub a: Vec<TrigPoly>,
    pub b: Vec<TrigPoly>,
    pub f: TrigPoly,
}

impl FramePolys {
    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn eval(&self, s: f64) -> FrameVector {
        FrameVector {
            a: self.a.iter().map(|p| p.eval(s)).collect(),
            b: self.b.iter().map(|p| p.eval(s)).collect(),
            f: self.f.eval(s),
        }
    }

    pub fn derivative(&self) -> FramePolys {
        FramePolys {
            a: self.a.iter().map(TrigPoly::derivative).collect(),
            b: self.b.iter().map(TrigPoly::derivative).collect(),
            f: self.f.derivative(),
        }
    }

    /// `g(V, V)` as a closed form.
    pub fn norm_sq(&self) -> Result<TrigPoly> {
        let mut acc = self.f.mul(&self.f)?;
        for p in self.a.iter().chain(&self.b) {
            acc = acc.add(&p.mul(p)?);
        }
        Ok(acc)
    }

    /// Lowest positive frequency among the components.
    pub fn lowest_frequency(&self) -> Option<f64> {
        self.a
            .iter()
            .chain(&self.b)
            .chain(std::iter::once(&self.f))
            .filter_map(TrigPoly::lowest_frequency)
            .reduce(f64::min)
    }
}

/// Closed-form curve: coordinates and tangent frame components as [`TrigPoly`]s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticCurve {
    pub n: Dimension,
    pub x: Vec<TrigPoly>,
    pub y: Vec<TrigPoly>,
    pub z: TrigPoly,
    pub tframe: FramePolys,
    pub meta: GeneratorParams,
    derivs: [FramePolys; 3],
}

impl AnalyticCurve {
    /// Integrates `dx^i = 2T_{n+i}`, `dy^i = 2T_i`, `dz = 2η(T) + Σ y^i dx^i`
    /// in closed form. `a`, `b`, `z0` are the constant terms of the
    /// antiderivatives, the remaining terms being purely oscillatory or linear.
    pub fn from_frame(tframe: FramePolys, meta: GeneratorParams) -> Result<Self> {
        let n = Dimension::new(tframe.dim())?;
        if tframe.b.len() != n.get() {
            return Err(Error::DimensionMismatch {
                expected: n.get(),
                found: tframe.b.len(),
            });
        }
        let a0 = meta.vector(&meta.a)?;
        let b0 = meta.vector(&meta.b)?;
        let mut x = Vec::with_capacity(n.get());
        let mut y = Vec::with_capacity(n.get());
        let mut dz = tframe.f.scale(2.0);
        for i in 0..n.get() {
            let dx = tframe.b[i].scale(2.0);
            let xi = with_constant(dx.antiderivative()?, a0[i]);
            let yi = with_constant(tframe.a[i].scale(2.0).antiderivative()?, b0[i]);
            dz = dz.add(&yi.mul(&dx)?);
            x.push(xi);
            y.push(yi);
        }
        let z = with_constant(dz.antiderivative()?, meta.z0);
        let d1 = tframe.derivative();
        let d2 = d1.derivative();
        let d3 = d2.derivative();
        Ok(AnalyticCurve {
            n,
            x,
            y,
            z,
            tframe,
            meta,
            derivs: [d1, d2, d3],
        })
    }

    pub fn dim(&self) -> usize {
        self.n.get()
    }

    pub fn point(&self, s: f64) -> CoordPoint {
        CoordPoint {
            x: self.x.iter().map(|p| p.eval(s)).collect(),
            y: self.y.iter().map(|p| p.eval(s)).collect(),
            z: self.z.eval(s),
        }
    }

    /// Exact `T, T′, T″, T‴` at `s`.
    pub fn eval_jet(&self, s: f64) -> Jet4 {
        Jet4 {
            s,
            t: self.tframe.eval(s),
            dt: self.derivs[0].eval(s),
            d2t: self.derivs[1].eval(s),
            d3t: self.derivs[2].eval(s),
        }
    }

    /// Largest coefficient of `dγ/ds − frame_to_coord(T)`, taken over all
    /// coordinates as closed forms.
    pub fn velocity_identity_residual(&self) -> Result<f64> {
        let mut worst = 0.0_f64;
        let mut dz = self.tframe.f.scale(2.0);
        for i in 0..self.dim() {
            let dx = self.tframe.b[i].scale(2.0);
            let dy = self.tframe.a[i].scale(2.0);
            worst = worst.max(self.x[i].derivative().sub(&dx).max_coeff_abs());
            worst = worst.max(self.y[i].derivative().sub(&dy).max_coeff_abs());
            dz = dz.add(&self.y[i].mul(&dx)?);
        }
        Ok(worst.max(self.z.derivative().sub(&dz).max_coeff_abs()))
    }

    /// Largest coefficient of `g(T,T) − 1`.
    pub fn unit_speed_residual(&self) -> Result<f64> {
        Ok(self.tframe.norm_sq()?.sub(&TrigPoly::constant(1.0)).max_coeff_abs())
    }

    /// Period of the slowest oscillation of `T`; `None` for constant `T`.
    pub fn fundamental_period(&self) -> Option<f64> {
        self.tframe.lowest_frequency().map(|w| TAU / w)
    }

    /// `count` evenly spaced parameters covering `periods` fundamental periods
    /// from `s0`, endpoint excluded. A constant `T` uses unit length per period.
    pub fn window(&self, s0: f64, periods: f64, count: usize) -> Vec<f64> {
        let len = periods * self.fundamental_period().unwrap_or(1.0);
        (0..count).map(|k| s0 + len * k as f64 / count as f64).collect()
    }

    /// Uniform samples `s0 + k h`, `k = 0..count`.
    pub fn sample(&self, s0: f64, h: f64, count: usize) -> Result<SampledCurve> {
        let s: Vec<f64> = (0..count).map(|k| s0 + k as f64 * h).collect();
        let points = s.iter().map(|&t| self.point(t)).collect();
        SampledCurve::new(self.dim(), s, points)
    }
}

fn with_constant(p: TrigPoly, c: f64) -> TrigPoly {
    p.add(&TrigPoly::constant(c))
}
