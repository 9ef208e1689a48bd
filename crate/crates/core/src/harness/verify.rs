//! Pointwise biharmonicity checks over a window, from exact jets or from
//! finite differences of samples.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitension::{
    bitension_direct, bitension_expansion, eigenvalue_parallel, eigenvalue_perpendicular, kappa_constancy,
    laplacian_eigen_check, system_residuals,
};
use crate::classifier::Mode;
use crate::error::{Error, Result};
use crate::frenet::{
    covariant_jet, frenet_apparatus, FiniteDifferenceSpec, Jet4, DEFAULT_RANK_TOL, FPRIME_CROSSCHECK_TOL,
    SAMPLED_RANK_TOL,
};
use crate::generators::AnalyticCurve;
use crate::model::phi_frame;
use crate::sampled::SampledCurve;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub unit_speed: f64,
    pub eta_constancy: f64,
    pub kappa_constancy: f64,
    pub tau2: f64,
    pub expansion: f64,
    pub system: f64,
    pub eigen: f64,
}

impl Thresholds {
    pub const ANALYTIC: Thresholds = Thresholds {
        unit_speed: 1e-10,
        eta_constancy: 1e-10,
        kappa_constancy: 1e-7,
        tau2: 1e-8,
        expansion: 1e-8,
        system: 1e-8,
        eigen: 1e-8,
    };

    pub const SAMPLED: Thresholds = Thresholds {
        unit_speed: 1e-6,
        eta_constancy: 1e-4,
        kappa_constancy: 1e-4,
        tau2: 1e-4,
        expansion: 1e-4,
        system: 1e-4,
        eigen: 1e-4,
    };
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// `φ`-sectional curvature of the ambient space form.
    pub c: f64,
    /// Forces the eigenvalue branch; inferred from `g(E₂, φT)` otherwise.
    pub mode: Option<Mode>,
    /// Explicit eigenvalue, overriding `mode`.
    pub lambda: Option<f64>,
    pub points: usize,
    /// Window length in fundamental periods (analytic input only).
    pub periods: f64,
    pub s0: f64,
    /// Thresholds override; the path default otherwise.
    pub thresholds: Option<Thresholds>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            c: -3.0,
            mode: None,
            lambda: None,
            points: 100,
            periods: 2.0,
            s0: 0.0,
            thresholds: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl CheckVerdict {
    pub fn new(name: &str, value: f64, threshold: f64) -> Self {
        CheckVerdict {
            name: name.to_string(),
            value,
            threshold,
            pass: value <= threshold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub stddev: f64,
    /// Standard deviation over `|mean|`.
    pub constancy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Analytic,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SystemMaxima {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r4: f64,
    pub tangential: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub source: Source,
    pub c: f64,
    pub n: usize,
    pub points: usize,
    pub window: [f64; 2],
    /// Sample spacing and derivative stride (sampled input only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spacing: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stride: Option<usize>,
    pub unit_speed_max_dev: f64,
    #[serde(rename = "eta_T_mean")]
    pub eta_t_mean: f64,
    #[serde(rename = "eta_T_max_dev")]
    pub eta_t_max_dev: f64,
    /// Osculating order seen at every point (minimum over the window).
    pub order: usize,
    pub kappa: Vec<Stat>,
    pub alpha_mean: f64,
    pub tau2_max: f64,
    pub expansion_max_diff: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system_residuals: Option<SystemMaxima>,
    pub mode: Mode,
    pub eigen_lambda: f64,
    pub eigen_residual: f64,
    pub fprime_discrepancy_max: f64,
    pub thresholds: Thresholds,
    pub checks: Vec<CheckVerdict>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn check(&self, name: &str) -> Option<&CheckVerdict> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn kappa_mean(&self, index: usize) -> Option<f64> {
        self.kappa.get(index - 1).map(|k| k.mean)
    }
}

#[derive(Debug, Clone)]
struct PointEval {
    unit_dev: f64,
    eta: f64,
    tau2: f64,
    /// `None` when the frame could not be built.
    frame: std::result::Result<FramePart, String>,
}

#[derive(Debug, Clone)]
struct FramePart {
    kappa: Vec<f64>,
    order: usize,
    alpha: f64,
    expansion_diff: f64,
    system: Option<SystemMaxima>,
    fprime_discrepancy: f64,
}

fn eval_point(j: &Jet4, c: f64, rank_tol: f64) -> Result<(PointEval, crate::frenet::CovariantJet)> {
    let cj = covariant_jet(j)?;
    let tau = bitension_direct(j, &cj, c)?;
    let frame = match frenet_apparatus(j, &cj, rank_tol) {
        Ok(fd) => {
            let ss = fd.scalars.clone();
            let mut part = FramePart {
                kappa: fd.kappa.clone(),
                order: fd.order,
                alpha: ss.alpha_or_zero(),
                expansion_diff: 0.0,
                system: None,
                fprime_discrepancy: ss.fprime_discrepancy(),
            };
            if fd.order >= 2 {
                let ex = bitension_expansion(&fd, &ss, &fd.dkappa, c, &phi_frame(&j.t))?;
                part.expansion_diff = (&ex - &tau).max_abs();
                if (c - 1.0).abs() > 1e-12 {
                    let r = system_residuals(&fd, &ss, c)?;
                    part.system = Some(SystemMaxima {
                        r1: r.r1.abs(),
                        r2: r.r2.abs(),
                        r3: r.r3.abs(),
                        r4: r.r4.abs(),
                        tangential: r.tangential.abs(),
                    });
                }
            }
            Ok(part)
        }
        Err(e @ (Error::NotUnitSpeed { .. } | Error::DegenerateFrame { .. })) => Err(e.to_string()),
        Err(e) => return Err(e),
    };
    Ok((
        PointEval {
            unit_dev: (j.t.norm_sq() - 1.0).abs(),
            eta: j.t.eta(),
            tau2: tau.max_abs(),
            frame,
        },
        cj,
    ))
}

fn stat(values: &[f64]) -> Stat {
    let m = values.len().max(1) as f64;
    let mean = values.iter().sum::<f64>() / m;
    let var = if values.len() > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0)
    } else {
        0.0
    };
    Stat {
        mean,
        stddev: var.sqrt(),
        constancy: kappa_constancy(values),
    }
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, f64::max)
}

/// Shared aggregation once jets are known.
fn assemble(
    jets: &[Jet4],
    source: Source,
    n: usize,
    opts: &VerifyOptions,
    thresholds: Thresholds,
    rank_tol: f64,
) -> Result<VerificationReport> {
    if jets.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, have: 0 });
    }
    let c = opts.c;
    let evals: Vec<(PointEval, crate::frenet::CovariantJet)> =
        jets.par_iter().map(|j| eval_point(j, c, rank_tol)).collect::<Result<_>>()?;

    let mut notes = Vec::new();
    let unit = max_of(evals.iter().map(|(e, _)| e.unit_dev));
    let etas: Vec<f64> = evals.iter().map(|(e, _)| e.eta).collect();
    let eta_mean = etas.iter().sum::<f64>() / etas.len() as f64;
    let eta_dev = max_of(etas.iter().map(|e| (e - eta_mean).abs()));
    let tau2 = max_of(evals.iter().map(|(e, _)| e.tau2));

    let frames: Vec<&FramePart> = evals.iter().filter_map(|(e, _)| e.frame.as_ref().ok()).collect();
    let frame_failures = evals.len() - frames.len();
    if let Some(msg) = evals.iter().find_map(|(e, _)| e.frame.as_ref().err()) {
        notes.push(format!("frame unavailable at {frame_failures} of {} points: {msg}", evals.len()));
    }
    let order = frames.iter().map(|f| f.order).min().unwrap_or(0);
    if frames.iter().any(|f| f.order != order) {
        notes.push("osculating order varies over the window".into());
    }
    let kappa: Vec<Stat> = (0..order.saturating_sub(1))
        .map(|k| stat(&frames.iter().map(|f| f.kappa[k]).collect::<Vec<_>>()))
        .collect();
    let alpha_mean = if frames.is_empty() {
        0.0
    } else {
        frames.iter().map(|f| f.alpha).sum::<f64>() / frames.len() as f64
    };
    let expansion = max_of(frames.iter().map(|f| f.expansion_diff));
    let fprime = max_of(frames.iter().map(|f| f.fprime_discrepancy));
    if fprime > FPRIME_CROSSCHECK_TOL {
        notes.push(format!(
            "eta(T)' and kappa1*eta(E2) disagree by {fprime:.3e} (> {FPRIME_CROSSCHECK_TOL:.0e})"
        ));
    }

    let system_enabled = (c - 1.0).abs() > 1e-12 && order >= 2;
    let system = if system_enabled {
        let sys: Vec<SystemMaxima> = frames.iter().filter_map(|f| f.system).collect();
        Some(SystemMaxima {
            r1: max_of(sys.iter().map(|s| s.r1)),
            r2: max_of(sys.iter().map(|s| s.r2)),
            r3: max_of(sys.iter().map(|s| s.r3)),
            r4: max_of(sys.iter().map(|s| s.r4)),
            tangential: max_of(sys.iter().map(|s| s.tangential)),
        })
    } else {
        if (c - 1.0).abs() <= 1e-12 {
            notes.push("c = 1: system residuals not applicable".into());
        }
        None
    };

    let mode = opts.mode.unwrap_or(if alpha_mean * alpha_mean >= 0.5 * (1.0 - eta_mean * eta_mean) {
        Mode::Par
    } else {
        Mode::Perp
    });
    let lambda = opts.lambda.unwrap_or(match mode {
        Mode::Par => eigenvalue_parallel(c, eta_mean),
        Mode::Perp => eigenvalue_perpendicular(c, eta_mean),
    });
    let eigen = max_of(
        jets.iter()
            .zip(&evals)
            .map(|(j, (_, cj))| laplacian_eigen_check(j, cj, lambda))
            .collect::<Result<Vec<_>>>()?
            .into_iter(),
    );

    let mut checks = vec![
        CheckVerdict::new("unit-speed", unit, thresholds.unit_speed),
        CheckVerdict::new("eta-constancy", eta_dev, thresholds.eta_constancy),
    ];
    if frame_failures > 0 {
        checks.push(CheckVerdict::new("frame", frame_failures as f64, 0.0));
    }
    if order >= 2 {
        let worst = kappa.iter().map(|k| k.constancy).fold(0.0, f64::max);
        checks.push(CheckVerdict::new("kappa-constancy", worst, thresholds.kappa_constancy));
        checks.push(CheckVerdict::new("expansion-direct", expansion, thresholds.expansion));
    }
    checks.push(CheckVerdict::new("tau2", tau2, thresholds.tau2));
    if let Some(s) = &system {
        let worst = s.r2.max(s.r3).max(s.r4);
        checks.push(CheckVerdict::new("system", worst, thresholds.system));
    }
    checks.push(CheckVerdict::new("eigen", eigen, thresholds.eigen));
    let verdict = if checks.iter().all(|c| c.pass) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };

    Ok(VerificationReport {
        source,
        c,
        n,
        points: jets.len(),
        window: [jets[0].s, jets[jets.len() - 1].s],
        spacing: None,
        stride: None,
        unit_speed_max_dev: unit,
        eta_t_mean: eta_mean,
        eta_t_max_dev: eta_dev,
        order,
        kappa,
        alpha_mean,
        tau2_max: tau2,
        expansion_max_diff: expansion,
        system_residuals: system,
        mode,
        eigen_lambda: lambda,
        eigen_residual: eigen,
        fprime_discrepancy_max: fprime,
        thresholds,
        checks,
        verdict,
        notes,
    })
}

/// Verification from exact jets over `opts.periods` fundamental periods.
pub fn verify_analytic(curve: &AnalyticCurve, opts: &VerifyOptions) -> Result<VerificationReport> {
    if opts.points == 0 {
        return Err(Error::InvalidParameter("at least one evaluation point is needed".into()));
    }
    let s = curve.window(opts.s0, opts.periods, opts.points);
    let jets: Vec<Jet4> = s.par_iter().map(|&t| curve.eval_jet(t)).collect();
    let thresholds = opts.thresholds.unwrap_or(Thresholds::ANALYTIC);
    assemble(&jets, Source::Analytic, curve.dim(), opts, thresholds, DEFAULT_RANK_TOL)
}

/// Verification from finite-difference jets at `opts.points` interior samples
/// spread evenly over the whole interior.
pub fn verify_sampled(samples: &SampledCurve, opts: &VerifyOptions) -> Result<VerificationReport> {
    let h = samples.spacing()?;
    let spec = FiniteDifferenceSpec::for_spacing(h);
    verify_sampled_with(samples, spec, opts)
}

pub fn verify_sampled_with(
    samples: &SampledCurve,
    spec: FiniteDifferenceSpec,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let h = samples.spacing()?;
    if samples.len() < spec.min_samples() {
        return Err(Error::TooFewSamples {
            needed: spec.min_samples(),
            have: samples.len(),
        });
    }
    let indices = interior_indices(spec.interior(samples.len()), opts.points);
    let jets = crate::frenet::jets_from_samples_at(samples, spec, indices)?;
    let thresholds = opts.thresholds.unwrap_or(Thresholds::SAMPLED);
    let mut r = assemble(&jets, Source::Sampled, samples.n, opts, thresholds, SAMPLED_RANK_TOL)?;
    r.spacing = Some(h);
    r.stride = Some(spec.stride);
    Ok(r)
}

/// `count` indices spread evenly over `range`, or all of it when shorter.
pub fn interior_indices(range: std::ops::Range<usize>, count: usize) -> Vec<usize> {
    let len = range.len();
    if count == 0 || len == 0 {
        return Vec::new();
    }
    if len <= count {
        return range.collect();
    }
    if count == 1 {
        return vec![range.start + len / 2];
    }
    (0..count)
        .map(|k| range.start + (k * (len - 1)) / (count - 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_cover_the_range() {
        let ix = interior_indices(10..1010, 100);
        assert_eq!(ix.len(), 100);
        assert_eq!(ix[0], 10);
        assert_eq!(*ix.last().unwrap(), 1009);
        assert!(ix.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(interior_indices(3..7, 100), vec![3, 4, 5, 6]);
    }

    #[test]
    fn stat_of_constant() {
        let s = stat(&[2.0, 2.0, 2.0]);
        assert_eq!(s.mean, 2.0);
        assert_eq!(s.stddev, 0.0);
        assert_eq!(s.constancy, 0.0);
    }
}
