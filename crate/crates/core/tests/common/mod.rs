#![allow(dead_code)]

use std::f64::consts::PI;

use sasakian_curves::classifier::Sign;
use sasakian_curves::generators::{GeneratorKind, GeneratorParams};
use sasakian_curves::model::CoordPoint;
use sasakian_curves::sampled::SampledCurve;

pub fn sqrt5() -> f64 {
    5f64.sqrt()
}

/// β₀ = π/3, n = 2, c₁ = (√(3/4), 0).
pub fn perp_circle() -> GeneratorParams {
    let mut p = GeneratorParams::new(GeneratorKind::PerpCircle, 2);
    p.beta0 = Some(PI / 3.0);
    p.c1 = vec![0.75f64.sqrt(), 0.0];
    p
}

/// n = 2, c₁ = (√((3−√5)/4), 0).
pub fn par_circle() -> GeneratorParams {
    let mut p = GeneratorParams::new(GeneratorKind::ParCircle, 2);
    p.c1 = vec![((3.0 - sqrt5()) / 4.0).sqrt(), 0.0];
    p
}

/// cos²β₀ = 9/10, σ = −1, n = 2, c₁ = (√(1/10), 0).
pub fn par_helix() -> GeneratorParams {
    let mut p = GeneratorParams::new(GeneratorKind::ParHelix, 2);
    p.beta0_cos2 = Some(0.9);
    p.sign = Some(Sign::Minus);
    p.c1 = vec![0.1f64.sqrt(), 0.0];
    p
}

/// `η(T) = 1/2`, `|ρ|² = 3/4`.
pub fn rotation(omega: f64) -> GeneratorParams {
    let mut p = GeneratorParams::new(GeneratorKind::Rotation, 2);
    p.rho = vec![0.75f64.sqrt(), 0.0];
    p.omega = Some(omega);
    p.f = Some(0.5);
    p
}

pub fn point_dev(a: &CoordPoint, b: &CoordPoint) -> f64 {
    a.x.iter()
        .zip(&b.x)
        .chain(a.y.iter().zip(&b.y))
        .map(|(u, v)| (u - v).abs())
        .fold((a.z - b.z).abs(), f64::max)
}

pub fn max_dev(samples: &SampledCurve, reference: impl Fn(f64) -> CoordPoint) -> f64 {
    samples
        .s
        .iter()
        .zip(&samples.points)
        .map(|(&s, p)| point_dev(p, &reference(s)))
        .fold(0.0, f64::max)
}

pub fn line(label: &str, pass: bool, detail: &str) {
    println!("{label}: {} | {detail}", if pass { "PASS" } else { "FAIL" });
}
