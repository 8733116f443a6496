//! Phase-space integral transform with conjugate kernels
//! `exp{±2i(p−x)(q−y)}`, its closed-form identities and the quantum
//! phase-space machinery built on it.

pub mod closedform;
pub mod czt;
pub mod error;
pub mod grid;
pub mod hermite;
pub mod io;
pub mod quantum;
pub mod xform;

pub use error::{Error, Result};
pub use grid::{make_axis, sample_field, weighted_norm_sq, Axis, PhaseGrid, SampledField, Signal};
pub use xform::{
    forward_direct, forward_fast, forward_shifted_form, inverse_direct, inverse_fast, parseval_residual, transform,
    Direction, Path, TransformPlan,
};
