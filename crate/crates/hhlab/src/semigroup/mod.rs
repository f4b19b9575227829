//! The heat semigroup `e^{-tL_a}` on radial grid functions, decay-rate
//! measurements and the numerical necessity witnesses.

mod decay;
mod lattice;
mod operator;
mod rows;
mod witness;

pub use decay::{decay_slope, geometric_times, least_squares_slope, probe_exponent};
pub use lattice::{LatticeKernel, TimeLattice};
pub use operator::{
    apply_semigroup, apply_semigroup_checked, semigroup_operator, SemigroupOperator, TAIL_WARNING,
};
pub use witness::{
    necessity_witness_origin, necessity_witness_translation, OriginWitness, TranslationWitness,
};

#[cfg(test)]
mod tests;
