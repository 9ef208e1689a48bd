//! Closed-form curves, rotation fixtures and the ODE route to the same curves.

pub mod closed_form;
pub mod curve;
pub mod ode;
pub mod params;
pub mod printed;
pub mod trigpoly;

pub use closed_form::{gen_circle_par, gen_circle_perp, gen_helix_par, gen_rotation_fixture, generate, parallel_data};
pub use curve::{AnalyticCurve, FramePolys};
pub use ode::{gen_by_ode, integrate, OdeRun};
pub use params::{GeneratorKind, GeneratorParams};
pub use printed::{compare_with_printed, printed_block, CoefficientDiff};
pub use trigpoly::{TrigPoly, TrigTerm};

/// Exact jet of `curve` at `s`.
pub fn eval_jet(curve: &AnalyticCurve, s: f64) -> crate::frenet::Jet4 {
    curve.eval_jet(s)
}
