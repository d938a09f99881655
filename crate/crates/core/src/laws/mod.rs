//! The evolution laws as verifiers, plus the factor dynamics they rest on.

mod batch;
mod dynamics;
mod record;
mod tau;
mod verify;

pub use batch::{random_mixed, run_batch, run_instance, BatchLaw, BatchSpec, BatchSummary};
pub use dynamics::{
    channel_factor, channel_factor_on, evolve_series, linear_grid, qubit_factor, sudden_death_time, ChannelFactor,
    SeriesPoint, Side, SuddenDeathResult, DEFAULT_BRACKET, DEFAULT_DEATH_TOL,
};
pub use record::{Bound, Direction, Law, LawConfig, VerificationRecord};
pub use tau::{tau, tau_evolution, verify_tau_evolution, TauEvolution};
pub use verify::{
    verify_corollary1, verify_corollary2, verify_remark_d2, verify_remark_lowerbound, verify_theorem1,
    verify_theorem2,
};
