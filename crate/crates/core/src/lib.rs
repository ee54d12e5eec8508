//! Grover walks on Cayley graphs over dihedral groups.
//!
//! The crate analyzes the discrete-time Grover walk on `Cay(D_n, S)` for a
//! symmetric connection set `S`. It provides:
//!
//! - exact arithmetic in `D_n` and connection-set validation ([`dihedral`]),
//! - the irreducible representations of `D_n` and the exponential sums
//!   `eta_h(C)` over roots of unity ([`representation`]),
//! - closed-form eigenvalues and spectral projectors of the adjacency matrix
//!   and of the walk discriminant `P = A/d` ([`spectrum`]),
//! - the arc-space walk operators `R`, `N`, `U`, the transition-matrix
//!   spectrum, and periodicity detection ([`walk`]),
//! - perfect-state-transfer detection by three independent routes: the
//!   Chebyshev matrix criterion `T_tau(P) e_u = e_v`, a permutation-structure
//!   check, and an eigenvalue-condition classifier ([`pst`]).
//!
//! Every analytic result is designed to be cross-checked against a dense
//! linear-algebra oracle; the test suites exercise those checks exhaustively
//! at small `n`.

pub mod dihedral;
pub mod enumerate;
pub mod pst;
pub mod representation;
pub mod spectrum;
pub mod walk;

use thiserror::Error;

/// Absolute tolerance below which a quantity counts as zero.
///
/// Used for the degeneracy test on `eta_h(S_2)`, the normality test, and the
/// default perfect-state-transfer entry tolerance. The smallest nonzero value
/// any of these quantities can take at desk scale (`n <= ~200`) is orders of
/// magnitude larger.
pub const ZERO_TOL: f64 = 1e-9;

/// Errors produced by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The connection set was empty.
    #[error("connection set is empty")]
    EmptySet,
    /// The identity element may not appear in a connection set.
    #[error("identity element is not allowed in a connection set")]
    IdentityInSet,
    /// The connection set is not closed under inverses.
    #[error("connection set is not symmetric: inverse of {0} is missing")]
    NotSymmetric(String),
    /// The group order parameter is below 2.
    #[error("dihedral order parameter must be at least 2, got {0}")]
    ModulusTooSmall(usize),
    /// A vertex index or block index fell outside its legal range.
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    /// A representation was requested that does not exist for this `n`.
    #[error("representation {label} is not defined for n = {n}")]
    RepNotDefined { label: String, n: usize },
    /// `eta_h(S_2)` vanishes, so the unit ratio `ell_h` is undefined.
    #[error("eta_{h}(S_2) is within tolerance of zero; ell_{h} is undefined")]
    DegenerateBlock { h: usize },
    /// The three normality tests disagreed; this signals an implementation bug.
    #[error("normality methods disagree: closure={closure}, membership={membership}, eta={eta}")]
    InternalInconsistency {
        closure: bool,
        membership: bool,
        eta: bool,
    },
    /// The transition-spectrum multiplicity formula went negative.
    #[error("transition spectrum multiplicity is negative (b1 = {b1}, mult(-1) = {minus_one})")]
    NegativeMultiplicity { b1: i64, minus_one: i64 },
    /// The Chebyshev recurrence path and the spectral path disagree.
    #[error("chebyshev recurrence and spectral paths disagree by {0:e}")]
    SpectralMismatch(f64),
}
