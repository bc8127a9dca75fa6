//! A finite-dimensional operator-algebra laboratory.
//!
//! Observables live in the full matrix algebra `M_n(C)`. A measuring device
//! type is a maximal abelian subalgebra, encoded by a joint eigenbasis; its
//! characters are the possible joint outcomes. Elementary states assign one
//! character per registered device type, and ensembles of them are sampled so
//! that classical averages reproduce quantum means `trace(rho A)`.
//!
//! On top of that the crate ships a numerical GNS construction and state
//! reduction by yes-no experiments, with the conditional-mean estimator that
//! recovers the collapse rule from classical conditioning.
//!
//! Sampling is data-parallel over draws when the `parallel` feature (default)
//! is enabled. Each draw owns its own RNG stream, so results are bit-identical
//! with or without the feature.

pub mod algebra;
pub mod error;
pub mod exec;
pub mod gns;
pub mod json;
pub mod linalg;
pub mod masa;
pub mod operators;
pub mod probability;
pub mod random;
pub mod reduction;
pub mod scenario;
pub mod states;
pub mod tol;

pub use algebra::{DynamicalVariable, Observable, Projector};
pub use error::{Error, Result};
pub use gns::{build_gns, GnsRepresentation};
pub use masa::{Character, CommutingFamily, DeviceType, Registry};
pub use probability::{BornDistribution, EnsembleSample, ScenarioCorrelations};
pub use reduction::{IntervalUnion, YesNoExperiment};
pub use states::{ElementaryState, EquivalenceClass, QuantumState};

/// Complex double precision scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;
