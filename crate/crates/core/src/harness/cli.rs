//! `sasakian` command line: selfcheck, generate, verify, classify, ode-generate.
//!
//! Exit codes: 0 pass or admissible, 1 verification or admissibility failure,
//! 2 input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::selfcheck::{run_selfcheck_with, CorruptedConnection};
use super::verify::{verify_analytic, verify_sampled, VerificationReport, VerifyOptions};
use crate::classifier::{
    admissible_constant_angle, admissible_par, admissible_perp, brute_force_admissible, classify_c1, AngleParams,
    ClassificationResult, GridSpec, Mode, Sign,
};
use crate::error::{Error, Result};
use crate::generators::{compare_with_printed, gen_by_ode, generate, AnalyticCurve, GeneratorKind, GeneratorParams};
use crate::model::{Connection, ModelConnection};
use crate::sampled::SampledCurve;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sasakian", version, about = "Biharmonic curves in Sasakian space forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check model identities, the curvature oracle and the bitension expansion.
    Selfcheck(SelfcheckArgs),
    /// Sample a closed-form curve to CSV.
    Generate(GenerateArgs),
    /// Verify biharmonicity of a sampled or closed-form curve.
    Verify(VerifyArgs),
    /// Print the admissible curvatures for given c and angles.
    Classify(ClassifyArgs),
    /// Integrate the frame equations with RK4 and write CSV.
    OdeGenerate(OdeArgs),
}

#[derive(Debug, Args)]
pub struct SelfcheckArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, hide = true)]
    pub corrupt_connection: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub params: PathBuf,
    /// Overrides the kind in the params file.
    #[arg(long)]
    pub kind: Option<GeneratorKind>,
    /// Parameter interval; two fundamental periods from 0 by default.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    pub span: Option<Vec<f64>>,
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    #[arg(long)]
    pub out: PathBuf,
    /// Sidecar JSON with the exact jets at every sample.
    #[arg(long)]
    pub jets: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["csv", "params"])))]
pub struct VerifyArgs {
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long = "c", default_value_t = -3.0, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long)]
    pub mode: Option<Mode>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    #[arg(long, default_value_t = 2.0)]
    pub periods: f64,
    /// Report path; the report goes to stdout otherwise.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassifyMode {
    Perp,
    Par,
    Angle,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long = "c", allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, value_enum)]
    pub mode: Option<ClassifyMode>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta0: Option<f64>,
    #[arg(long = "beta0-cos2")]
    pub beta0_cos2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Option<Sign>,
    /// Curvatures for the c = 1 case.
    #[arg(long)]
    pub kappa1: Option<f64>,
    #[arg(long)]
    pub kappa2: Option<f64>,
    /// Scan the residuals on a grid instead of using the closed forms.
    #[arg(long)]
    pub brute_force: bool,
}

#[derive(Debug, Args)]
pub struct OdeArgs {
    #[arg(long)]
    pub params: PathBuf,
    #[arg(long)]
    pub h: f64,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    pub span: Vec<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let out = match cli.command {
        Command::Selfcheck(a) => cmd_selfcheck(&a),
        Command::Generate(a) => cmd_generate(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Classify(a) => cmd_classify(&a),
        Command::OdeGenerate(a) => cmd_ode_generate(&a),
    };
    match out {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn read_params(path: &Path) -> Result<GeneratorParams> {
    GeneratorParams::from_json(&fs::read_to_string(path)?)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes)?;
    Ok(())
}

pub fn cmd_selfcheck(a: &SelfcheckArgs) -> Result<i32> {
    let conn: &dyn Connection = if a.corrupt_connection {
        &CorruptedConnection
    } else {
        &ModelConnection
    };
    let report = run_selfcheck_with(a.seed, conn)?;
    emit(&report.render())?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

fn default_span(curve: &AnalyticCurve) -> (f64, f64) {
    (0.0, 2.0 * curve.fundamental_period().unwrap_or(1.0))
}

fn span_of(v: &Option<Vec<f64>>, curve: &AnalyticCurve) -> Result<(f64, f64)> {
    let (a, b) = match v {
        Some(v) => (v[0], v[1]),
        None => default_span(curve),
    };
    if !(b > a) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParameter(format!("span [{a}, {b}] is empty")));
    }
    Ok((a, b))
}

pub fn cmd_generate(a: &GenerateArgs) -> Result<i32> {
    let mut p = read_params(&a.params)?;
    if let Some(k) = a.kind {
        p.kind = k;
    }
    let curve = generate(&p)?;
    let (s0, s1) = span_of(&a.span, &curve)?;
    if a.samples < 2 {
        return Err(Error::InvalidParameter("at least 2 samples are needed".into()));
    }
    let h = (s1 - s0) / (a.samples - 1) as f64;
    let samples = curve.sample(s0, h, a.samples)?;
    let mut buf = Vec::new();
    samples.write_csv(&mut buf)?;
    write_file(&a.out, &buf)?;
    if let Some(path) = &a.jets {
        let jets: Vec<_> = samples.s.iter().map(|&s| curve.eval_jet(s)).collect();
        write_file(path, serde_json::to_string_pretty(&jets)?.as_bytes())?;
    }
    let mut text = format!("{}: {} samples on [{s0}, {s1}] written to {}\n", p.kind, a.samples, a.out.display());
    let diffs = compare_with_printed(&curve)?;
    if !diffs.is_empty() {
        text += &format!("reference coordinate block differs in {} coefficients:\n", diffs.len());
        for d in &diffs {
            text += &format!(
                "  {} {} freq {:.12}: constructed {:.12}, reference {:.12}\n",
                d.coordinate, d.term, d.freq, d.constructed, d.printed
            );
        }
    }
    emit(&text)?;
    Ok(EXIT_OK)
}

fn emit_report(report: &VerificationReport, path: &Option<PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(report)?;
    match path {
        Some(p) => {
            write_file(p, text.as_bytes())?;
            let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
            if failed.is_empty() {
                emit(&format!("verdict: pass (tau2_max {:.3e})\n", report.tau2_max))?;
            } else {
                emit(&format!("verdict: fail [{}] (tau2_max {:.3e})\n", failed.join(", "), report.tau2_max))?;
            }
        }
        None => emit(&(text + "\n"))?,
    }
    Ok(())
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let opts = VerifyOptions {
        c: a.c,
        mode: a.mode,
        lambda: a.lambda,
        points: a.points,
        periods: a.periods,
        ..VerifyOptions::default()
    };
    let report = match (&a.csv, &a.params) {
        (Some(csv), None) => {
            let samples = SampledCurve::read_csv(fs::File::open(csv)?)?;
            verify_sampled(&samples, &opts)?
        }
        (None, Some(params)) => verify_analytic(&generate(&read_params(params)?)?, &opts)?,
        _ => return Err(Error::InvalidParameter("give exactly one of --csv and --params".into())),
    };
    emit_report(&report, &a.report)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

fn angles_of(a: &ClassifyArgs) -> Result<AngleParams> {
    let mut angles = match (a.beta0, a.beta0_cos2) {
        (Some(b), None) => AngleParams::with_beta0(b),
        (None, Some(c2)) => AngleParams::from_cos2(c2)?,
        (None, None) => return Err(Error::MissingScalar("beta0")),
        (Some(_), Some(_)) => {
            return Err(Error::InvalidParameter("give --beta0 or --beta0-cos2, not both".into()));
        }
    };
    if let Some(s) = a.sign {
        angles = angles.signed(s);
    }
    Ok(angles)
}

pub fn classify(a: &ClassifyArgs) -> Result<ClassificationResult> {
    if !a.c.is_finite() {
        return Err(Error::NonFinite("c"));
    }
    if (a.c - 1.0).abs() <= 1e-12 {
        let k1 = a.kappa1.ok_or(Error::MissingScalar("kappa1"))?;
        return Ok(classify_c1(k1, a.kappa2));
    }
    if a.kappa1.is_some() || a.kappa2.is_some() {
        return Err(Error::InvalidParameter("--kappa1/--kappa2 apply to c = 1 only".into()));
    }
    let mode = a
        .mode
        .ok_or_else(|| Error::InvalidParameter("--mode perp|par|angle is required for c != 1".into()))?;
    match (mode, a.brute_force) {
        (ClassifyMode::Angle, false) => {
            let b1 = a.beta1.ok_or(Error::MissingScalar("beta1"))?;
            admissible_constant_angle(a.c, b1, a.beta2)
        }
        (ClassifyMode::Angle, true) => Err(Error::InvalidParameter("--brute-force supports perp and par".into())),
        (m, true) => {
            let beta0 = angles_of(a)?.beta0()?;
            let mode = if m == ClassifyMode::Perp { Mode::Perp } else { Mode::Par };
            brute_force_admissible(a.c, mode, beta0, GridSpec::default())
        }
        (ClassifyMode::Perp, false) => admissible_perp(a.c, &angles_of(a)?),
        (ClassifyMode::Par, false) => admissible_par(a.c, &angles_of(a)?),
    }
}

pub fn cmd_classify(a: &ClassifyArgs) -> Result<i32> {
    let r = classify(a)?;
    emit(&(serde_json::to_string_pretty(&r)? + "\n"))?;
    Ok(if r.is_admissible() { EXIT_OK } else { EXIT_FAIL })
}

pub fn cmd_ode_generate(a: &OdeArgs) -> Result<i32> {
    let p = read_params(&a.params)?;
    let span = (a.span[0], a.span[1]);
    let samples = gen_by_ode(&p, a.h, span)?;
    let mut buf = Vec::new();
    samples.write_csv(&mut buf)?;
    write_file(&a.out, &buf)?;
    emit(&format!(
        "{}: {} RK4 samples on [{}, {}] written to {}\n",
        p.kind,
        samples.len(),
        span.0,
        span.1,
        a.out.display()
    ))?;
    Ok(EXIT_OK)
}
