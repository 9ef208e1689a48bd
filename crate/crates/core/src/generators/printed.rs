//! Reference coordinate formulas for the circle and helix families, transcribed
//! term by term, and a per-coefficient comparison with the coordinates built
//! by antidifferentiation. Constant terms are free and not compared.

use serde::{Deserialize, Serialize};

use super::closed_form::parallel_data;
use super::curve::AnalyticCurve;
use super::params::{GeneratorKind, GeneratorParams};
use super::trigpoly::TrigPoly;
use crate::classifier::Sign;
use crate::error::Result;

/// Coefficients closer than this are considered equal.
pub const COEFF_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrintedBlock {
    pub x: Vec<TrigPoly>,
    pub y: Vec<TrigPoly>,
    pub z: TrigPoly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientDiff {
    /// `x1`, `y2`, `z`, ...
    pub coordinate: String,
    /// `s` for the linear term, else `cos` or `sin`.
    pub term: String,
    pub freq: f64,
    pub constructed: f64,
    pub printed: f64,
}

/// The reference block for `p`, or `None` for kinds without one.
pub fn printed_block(p: &GeneratorParams) -> Result<Option<PrintedBlock>> {
    match p.kind {
        GeneratorKind::PerpCircle => perp_circle(p).map(Some),
        GeneratorKind::ParCircle => par_circle(p).map(Some),
        GeneratorKind::ParHelix => par_helix(p).map(Some),
        GeneratorKind::Rotation => Ok(None),
    }
}

struct Vectors {
    c1: Vec<f64>,
    c2: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
}

fn vectors(p: &GeneratorParams) -> Result<Vectors> {
    Ok(Vectors {
        c1: p.vector(&p.c1)?,
        c2: p.vector(&p.c2)?,
        d1: p.vector(&p.d1)?,
        d2: p.vector(&p.d2)?,
        a: p.vector(&p.a)?,
        b: p.vector(&p.b)?,
    })
}

fn wave(c: f64, s: f64, w: f64) -> TrigPoly {
    TrigPoly::wave(c, s, w)
}

fn perp_circle(p: &GeneratorParams) -> Result<PrintedBlock> {
    let cb = p.require_beta0()?.cos();
    let e = Sign::of(cb).value();
    let k = cb.abs();
    let v = vectors(p)?;
    let mut x = Vec::new();
    let mut y = Vec::new();
    let mut z_sum = TrigPoly::zero();
    let mut c_sq = 0.0;
    let mut b_sum = TrigPoly::zero();
    for i in 0..p.n {
        let (c1, c2, d1, d2, b) = (v.c1[i], v.c2[i], v.d1[i], v.d2[i], v.b[i]);
        // ±(1/κ)(2 sin(κs)c₁ ∓ 2 cos(κs)c₂ − cos(2κs)d₁ − sin(2κs)d₂) + a
        x.push(
            wave(-2.0 * c2 / k, 2.0 * e * c1 / k, k)
                .add(&wave(-e * d1 / k, -e * d2 / k, 2.0 * k))
                .add(&TrigPoly::constant(v.a[i])),
        );
        // (1/κ)(2 cos(κs)c₁ ± 2 sin(κs)c₂ + sin(2κs)d₁ − cos(2κs)d₂) + b
        y.push(
            wave(2.0 * c1 / k, 2.0 * e * c2 / k, k)
                .add(&wave(-d2 / k, d1 / k, 2.0 * k))
                .add(&TrigPoly::constant(b)),
        );
        c_sq += c1 * c1 + c2 * c2;
        // ±cos(4κs)d₁d₂ − 2cos(2κs)c₁c₂ + 4cos(3κs)c₂d₂ − 4sin(3κs)c₁d₂
        z_sum = z_sum
            .add(&wave(e * d1 * d2, 0.0, 4.0 * k))
            .add(&wave(-2.0 * c1 * c2, 0.0, 2.0 * k))
            .add(&wave(4.0 * c2 * d2, -4.0 * c1 * d2, 3.0 * k));
        // b(−2 sin(κs)c₁ ± 2 cos(κs)c₂ + cos(2κs)d₁ + sin(2κs)d₂)
        b_sum = b_sum.add(&wave(2.0 * e * c2, -2.0 * c1, k).add(&wave(d1, d2, 2.0 * k)).scale(b));
    }
    let z = TrigPoly::linear(p.z0, e * 2.0 / k * (1.0 + c_sq))
        .add(&z_sum.scale(1.0 / (2.0 * k * k)))
        .add(&b_sum.scale(-e / k));
    Ok(PrintedBlock { x, y, z })
}

fn par_circle(p: &GeneratorParams) -> Result<PrintedBlock> {
    let s5 = 5f64.sqrt();
    let w = (s5 - 1.0) / 2.0;
    let amp = s5 + 1.0;
    let pm = p.sign.unwrap_or(Sign::Plus).value();
    let v = vectors(p)?;
    let mut x = Vec::new();
    let mut y = Vec::new();
    let mut z = TrigPoly::linear(p.z0, (1.0 - s5 + pm * 2.0 * (1.0 + s5).sqrt()) / 2.0);
    for i in 0..p.n {
        let (c1, c2, b) = (v.c1[i], v.c2[i], v.b[i]);
        x.push(wave(amp * c1, amp * c2, w).add(&TrigPoly::constant(v.a[i])));
        y.push(wave(-amp * c2, amp * c1, w).add(&TrigPoly::constant(b)));
        // ((3+√5)/2)((c₁² − c₂²) sin((√5−1)s) − 2cos((√5−1)s)c₁c₂)
        z = z.add(&wave(-2.0 * c1 * c2, c1 * c1 - c2 * c2, 2.0 * w).scale((3.0 + s5) / 2.0));
        // (1+√5) b (sin(ws)c₂ + cos(ws)c₁)
        z = z.add(&wave(c1, c2, w).scale((1.0 + s5) * b));
    }
    Ok(PrintedBlock { x, y, z })
}

fn par_helix(p: &GeneratorParams) -> Result<PrintedBlock> {
    let data = parallel_data(p)?;
    let (sb, cb) = data.beta0.sin_cos();
    let k1 = data.kappa1;
    let den = k1 + data.sign.value() * (2.0 * data.beta0).sin();
    let w = den / k1;
    let amp = 2.0 * k1 / den;
    let v = vectors(p)?;
    let mut x = Vec::new();
    let mut y = Vec::new();
    let mut sq_diff = 0.0;
    let mut cross = 0.0;
    let mut b_sum = TrigPoly::zero();
    for i in 0..p.n {
        let (c1, c2, b) = (v.c1[i], v.c2[i], v.b[i]);
        x.push(wave(-amp * c1, -amp * c2, w).add(&TrigPoly::constant(v.a[i])));
        y.push(wave(-amp * c2, amp * c1, w).add(&TrigPoly::constant(b)));
        sq_diff += c1 * c1 - c2 * c2;
        cross += c1 * c2;
        b_sum = b_sum.add(&wave(c1, c2, w).scale(b));
    }
    let z = TrigPoly::linear(p.z0, 2.0 * (cb + k1 * sb * sb / den))
        .add(&wave(cross, sq_diff, 2.0 * w).scale(k1 * k1 / (den * den)))
        .add(&b_sum.scale(-amp));
    Ok(PrintedBlock { x, y, z })
}

fn diff_one(name: String, ours: &TrigPoly, printed: &TrigPoly, out: &mut Vec<CoefficientDiff>) {
    if (ours.lin - printed.lin).abs() > COEFF_TOL {
        out.push(CoefficientDiff {
            coordinate: name.clone(),
            term: "s".into(),
            freq: 0.0,
            constructed: ours.lin,
            printed: printed.lin,
        });
    }
    let mut freqs: Vec<f64> = ours.terms.iter().chain(&printed.terms).map(|t| t.freq).collect();
    freqs.sort_by(f64::total_cmp);
    freqs.dedup_by(|a, b| (*a - *b).abs() <= super::trigpoly::FREQ_TOL);
    for w in freqs {
        let (oc, os) = ours.coefficient_at(w);
        let (pc, ps) = printed.coefficient_at(w);
        for (term, o, q) in [("cos", oc, pc), ("sin", os, ps)] {
            if (o - q).abs() > COEFF_TOL {
                out.push(CoefficientDiff {
                    coordinate: name.clone(),
                    term: term.into(),
                    freq: w,
                    constructed: o,
                    printed: q,
                });
            }
        }
    }
}

/// Term-level differences between `curve` and its reference block. Empty
/// when they agree up to constants; also empty for kinds without a block.
pub fn compare_with_printed(curve: &AnalyticCurve) -> Result<Vec<CoefficientDiff>> {
    let Some(block) = printed_block(&curve.meta)? else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for i in 0..curve.dim() {
        diff_one(format!("x{}", i + 1), &curve.x[i], &block.x[i], &mut out);
        diff_one(format!("y{}", i + 1), &curve.y[i], &block.y[i], &mut out);
    }
    diff_one("z".into(), &curve.z, &block.z, &mut out);
    Ok(out)
}
