//! Modified Bessel functions and the radial heat kernel of `L_a`.
//!
//! On radial functions `L_a` acts as a Bessel operator of order
//! `ν = ½√((d-2)² + 4a)`, whose heat kernel is an explicit multiple of
//! `e^{-z} I_ν(z)` with `z = rρ/(2t)`. All evaluation goes through the
//! exponentially scaled Bessel function so that the only exponential left in
//! the kernel is the Gaussian `e^{-(r-ρ)²/(4t)}`.

mod bessel;
mod gamma;
mod kernel;

pub use bessel::{bessel_i_scaled, ln_bessel_i_scaled, ScaledBessel, SERIES_SEAM};
pub use gamma::ln_gamma;
pub use kernel::{kernel_eval, sphere_area, RadialKernel};
