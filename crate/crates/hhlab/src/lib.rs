//! Numerical laboratory for the heat semigroup of `L_a = -Δ + a|x|^{-2}` and
//! the Hardy–Hénon parabolic equation
//! `u_t + L_a u = |x|^γ F_α(u)` on radial data.

pub mod config;
pub mod error;
pub mod exact;
pub mod exponents;
pub mod regime;
pub mod semigroup;
pub mod besselkernel;
pub mod quadrature;
pub mod radialcore;
pub mod dynamics;

pub use error::{Error, Result};
pub use exact::Num;
pub use exponents::{DecayQuadruple, ProblemParams, SpacePair};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
pub mod chapter_introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/exponents.md")]
pub mod chapter_exponents {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/regimes.md")]
pub mod chapter_regimes {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/kernel.md")]
pub mod chapter_kernel {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/grids.md")]
pub mod chapter_grids {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/semigroup.md")]
pub mod chapter_semigroup {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/dynamics.md")]
pub mod chapter_dynamics {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/blowup.md")]
pub mod chapter_blowup {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod chapter_cli {}
