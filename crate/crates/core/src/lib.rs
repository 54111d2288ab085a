//! Continuity bounds for majorization-monotone functionals, built on the
//! majorization flow `M_ε` that moves a probability vector toward uniform at
//! unit total-variation speed.
//!
//! ```
//! use majflow::{flow_point, EntropyFamily, ProbVec};
//!
//! let psi = ProbVec::extremal(3);
//! let m = flow_point(&psi, 0.5).unwrap();
//! assert_eq!(m.as_slice(), &[0.5, 0.25, 0.25]);
//! let h = EntropyFamily::shannon().eval(&m).unwrap();
//! assert!((h - 1.5).abs() < 1e-12);
//! ```

pub mod bounds;
pub mod distinct;
pub mod entropy;
pub mod error;
pub mod flow;
pub mod oracle;
pub mod quantum;
pub mod simplex;

pub use bounds::{
    collision_closed_form, dimensional_scaling_table, hinf_tight_uniform, lipschitz_concave_smoothed,
    lipschitz_convex_type, lipschitz_special, prior_art_bound, tight_uniform_bound, BoundKind, BoundReport,
    LipschitzOutcome, PriorArt,
};
pub use distinct::{distinct_uniform_bound, expected_distinct, simulate_distinct, TrialSpec};
pub use entropy::{catalogue, Classification, EntropyFamily, GammaValue};
pub use error::{Error, Result};
pub use flow::{flow_path, flow_point, generator, FlowPath, Generator};
pub use oracle::OracleConfig;
pub use quantum::{flow_state, spectrum_sorted, trace_distance, DensityMatrix, HermitianMatrix};
pub use simplex::{group_spectrum, majorizes, sort_desc, tv_distance, GroupedSpectrum, ProbVec};
