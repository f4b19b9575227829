//! Radial grids, grid functions, weighted Lebesgue norms and Kato norms.
//!
//! Nodes are log-uniform, `r_i = r_min e^{ih}`, and integrals
//! `∫ g(r) r^{d-1} dr = ∫ g(e^u) e^{du} du` are computed with the trapezoid
//! rule in `u` plus Gregory end corrections. Integrands here are products of
//! powers and Gaussians, which are smooth in `u` even at the `r^{-σ₋}`
//! singularity of the origin.

mod bump;
mod frame;
mod function;
mod grid;
mod io;
mod norm;

pub use bump::{smooth_bump, smooth_bump_derivatives};
pub use frame::{kato_distance, kato_norm, KatoFrame};
pub use function::RadialFunction;
pub use grid::{GridKey, RadialGrid};
pub use io::{write_frame_csvs, write_function_csv, FrameManifestEntry};
pub use norm::{pairwise_sum, weighted_norm, weighted_norm_estimate, weighted_norm_on, NormEstimate};
