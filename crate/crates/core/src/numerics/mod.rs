//! Sampled functions, principal-value and adaptive quadrature, Fourier
//! support splitting, and strip-analytic function carriers.

mod analytic;
mod grid;
pub mod quadrature;
mod special;

pub use analytic::AnalyticSampler;
pub use grid::{simpson_weights, GridFunction, SupportSplit};
pub use special::bessel_j_sequence;
