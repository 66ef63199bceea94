//! Search strategies over alphabet orderings.

mod exhaustive;
mod local;
mod sampling;

pub use exhaustive::{exhaustive_search, ExhaustiveStats, DEFAULT_SIGMA_CAP};
pub use local::{
    find_improving_move, first_improvement_search, SearchResult, Termination, TracePoint,
    DEFAULT_BUDGET,
};
pub use sampling::{harmonic_bound, random_sampling, SampleStats};
