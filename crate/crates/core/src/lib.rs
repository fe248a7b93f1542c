//! Exact computer algebra for the Rumin complex of nilpotent Lie algebras.

pub mod ce_complex;
pub mod error;
pub mod exact_linalg;
pub mod exterior;
pub mod io_cli;
pub mod lie_core;
pub mod lqp;
pub mod op_algebra;
pub mod rumin_core;
pub mod weights;

pub use error::{Error, Result};
