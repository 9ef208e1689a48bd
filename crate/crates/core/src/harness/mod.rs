//! Command-line harness: verification reports, self-checks and the CLI.

pub mod cli;
pub mod selfcheck;
pub mod verify;

pub use selfcheck::{random_rotation_fixture, run_selfcheck, run_selfcheck_with, SelfcheckReport};
pub use verify::{
    verify_analytic, verify_sampled, verify_sampled_with, CheckVerdict, Thresholds, VerificationReport,
    VerifyOptions,
};
