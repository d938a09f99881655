//! Optimization oracles: decompositions through unitary mixing, rank-1
//! POVMs on the assisting party, and ascent over isometries. Every value
//! produced here is attained by an explicit decomposition or measurement,
//! so it lower-bounds the corresponding maximum.

mod ensemble;
mod optimizer;
mod povm;

pub use ensemble::{coa_convex_max, convex_roof_upper, hjw_ensemble, Ensemble};
pub use optimizer::{maximize_isometry, Optimum, OptimizerConfig};
pub use povm::{
    assisted_average, eoa_lower_bound, eoa_lower_bound_sweep, povm_from_isometry, Assistance, InnerBound, Povm,
};
