//! Centralized numerical tolerances.
//!
//! Every threshold used anywhere in the crate lives here with a justification,
//! so that a tolerance change is a one-line diff and the test suite documents
//! exactly what "equal" means at each stage.

/// Coefficients with absolute value below this are dropped from sparse
/// algebra elements after every arithmetic operation. All structure constants
/// of the double are 0/1 integers, so anything this small is pure roundoff.
pub const PRUNE: f64 = 1e-12;

/// Default pass/fail threshold for identity suites (Hopf axioms, modular
/// relations, character orthonormality). Exact-arithmetic identities
/// accumulate at most a few hundred rounding steps, which stays far below
/// this; genuine violations show up at order 1 or at least 1e-3.
pub const PASS: f64 = 1e-9;

/// Relative eigenvalue clustering width when splitting commuting Hermitian
/// families into common eigenspaces. Distinct class-algebra eigenvalues for
/// groups of order <= 120 are separated by far more than this; repeated
/// eigenvalues computed by dense solvers agree to ~1e-13.
pub const EIGEN_CLUSTER: f64 = 1e-7;

/// Maximum deviation allowed when matching one character row against another
/// (dual lookup, induced-trace comparison, transporting an irrep label).
pub const CHAR_MATCH: f64 = 1e-8;

/// Fusion multiplicities are computed as inner products that are integers in
/// exact arithmetic; the float must sit within this distance of an integer
/// before rounding is accepted.
pub const FUSION_ROUND: f64 = 1e-6;

/// Irrep degrees are recovered as sqrt(|G| / sum |omega_i|^2 / |O_i|); the
/// result must be within this distance of a positive integer.
pub const DEGREE_INT: f64 = 1e-6;

/// Singular values below this fraction of the largest are treated as zero
/// when computing numerical ranks and nullspaces.
pub const RANK_REL: f64 = 1e-8;

/// Default seed for every deterministic pseudo-random choice (splitting
/// fallbacks, commutant probes, random test vectors). Runs with equal seeds
/// are bit-for-bit reproducible.
pub const DEFAULT_SEED: u64 = 0x5EED;
