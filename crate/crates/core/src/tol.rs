//! Numerical tolerances. Relative tolerances are scaled by an operator norm.

/// Relative Hermiticity tolerance.
pub const HERMITIAN: f64 = 1e-12;
/// Idempotency tolerance for projectors.
pub const IDEMPOTENT: f64 = 1e-10;
/// Eigenvalue equality and clustering tolerance.
pub const EIGEN: f64 = 1e-9;
/// Negative Born probabilities above `-PROB_CLIP` are clipped to zero.
pub const PROB_CLIP: f64 = 1e-12;
/// Allowed deviation of a probability vector (or a trace) from one.
pub const PROB_SUM: f64 = 1e-10;
/// Smallest admissible density-matrix eigenvalue.
pub const STATE_EIG: f64 = 1e-10;
/// Relative rank cutoff for the GNS Gram matrix.
pub const GNS_RANK: f64 = 1e-10;
/// A yes-no answer with probability at or below this is treated as impossible.
pub const ZERO_PROB: f64 = 1e-12;
/// Resolution of identity and orthogonality for device projectors.
pub const RESOLUTION: f64 = 1e-10;

/// Absolute tolerance for a quantity of magnitude `scale`: `rel * max(1, scale)`.
pub fn scaled(rel: f64, scale: f64) -> f64 {
    rel * scale.max(1.0)
}
