pub mod classify;
pub mod dynamics;
pub mod linear;
pub mod region;

use hhlab::dynamics::{NonlinearityKind, NonlinearitySpec};
use hhlab::ProblemParams;

use crate::context::{CliError, Context};

/// The nonlinearity named by the `nonlinearity` key (default `signed`).
pub fn nonlinearity(ctx: &Context, params: &ProblemParams) -> Result<NonlinearitySpec, CliError> {
    let kind: NonlinearityKind = ctx.config.str("nonlinearity").unwrap_or("signed").parse()?;
    Ok(NonlinearitySpec::for_params(params, kind))
}
