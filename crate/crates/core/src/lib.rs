//! Biharmonic curves in the Sasakian space form ℝ^{2n+1}(−3): the model
//! geometry, Frenet apparatus, bitension field, classification of admissible
//! curvature data and explicit curve generators.

pub mod bitension;
pub mod classifier;
pub mod error;
pub mod frenet;
pub mod generators;
pub mod harness;
pub mod model;
pub mod sampled;

pub use error::{Error, Result};
pub use model::{CoordPoint, CoordVelocity, Dimension, FrameVector, SpaceFormParam};
pub use sampled::SampledCurve;
