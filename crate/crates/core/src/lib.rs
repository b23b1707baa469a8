// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod crossing;
pub mod dispersion;
pub mod dpi;
pub mod error;
pub mod localization;
pub mod numerics;
pub mod scatfunc;
pub mod unitarization;
pub mod zf;

pub use error::{Error, Result};
