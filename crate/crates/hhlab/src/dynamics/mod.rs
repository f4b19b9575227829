//! Mild solutions of `u_t + L_a u = |x|^γ F(u)`: Picard iteration in Kato
//! norms, lifespan measurements and the test-function inequality.

mod blowup;
mod duhamel;
mod nonlinearity;
mod picard;
mod testfn;

pub use blowup::{
    blowup_experiment, lifespan, lifespan_sweep, march, power_data, BlowupConfig, LifespanReport, MarchOutcome,
};
pub use duhamel::{duhamel_step, DuhamelOperator, Frames, KatoExponents, NonFiniteAt, TimeGrid};
pub use nonlinearity::{NonlinearityKind, NonlinearitySpec};
pub use picard::{picard_on, picard_solve, picard_solve_with, InitialIterate, PicardOptions, SolveReport};
pub use testfn::{cutoff_power, test_function_constant, test_function_inequality_check, TestFunctionReport};
