//! Error taxonomy shared by all modules.

use alloc::string::String;

use crate::C64;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong, split into construction-time invariant
/// violations, evaluation-domain failures, and numerical preconditions.
///
/// The distinction matters to callers: the CLI maps every variant here to
/// exit code 2 (mathematical precondition), reserving 1 for usage errors.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A constructor argument violates a structural invariant.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// Evaluation requested outside the natural domain of an expression.
    #[error("domain violation at z = {z}: {reason}")]
    Domain { z: C64, reason: String },

    /// Requested jet order exceeds the configured cap.
    #[error("jet order {requested} exceeds cap {cap}")]
    OrderCap { requested: usize, cap: usize },

    /// Jet arithmetic on jets with different basepoints or orders.
    #[error("jet mismatch: {0}")]
    JetMismatch(String),

    /// Reciprocal of a jet whose leading value vanishes.
    #[error("jet reciprocal: leading value is zero")]
    LeadingZero,

    /// Family size beyond the supported cap.
    #[error("family of {got} functions exceeds the cap of {cap}")]
    FamilyTooLarge { got: usize, cap: usize },

    /// Closed-form Wronskian parameters repeated or out of order.
    #[error("closed-form family: {0}")]
    BadClosedFormFamily(String),

    /// The coefficient vector is identically zero.
    #[error("all-zero coefficient vector")]
    AllZeroLambda,

    /// An identity check was asked to use an index with zero coefficient.
    #[error("lambda[{k}] = 0: replacement identity undefined")]
    LambdaZeroAt { k: usize },

    /// A zero of the integrand sits (numerically) on a counting contour.
    #[error("zero too close to integration boundary (min |f| = {min_abs:.3e}, max |f| = {max_abs:.3e})")]
    ZeroOnBoundary { min_abs: f64, max_abs: f64 },

    /// The winding integral refused to settle near an integer.
    #[error("winding value {value:.6} not within 0.1 of an integer after quadrature refinement")]
    WindingNotInteger { value: f64 },

    /// A point expected strictly inside the unit disk was not.
    #[error("point {z} is not strictly inside the unit disk")]
    OutsideDisk { z: C64 },

    /// A decay fit found no region points at a scheduled radius.
    #[error("region slice empty at radius {radius}")]
    EmptySlice { radius: f64 },

    /// The fattened-region containment hypothesis failed on samples.
    #[error("containment hypothesis failed: ball around z = {z} leaves the outer region")]
    ContainmentFailed { z: C64 },

    /// A boundary-set descriptor with nothing in it.
    #[error("empty boundary set")]
    EmptyBoundarySet,

    /// The subdivision search visited more boxes than the configured budget.
    #[error("subdivision budget exceeded after counting {boxes} boxes")]
    SearchBudgetExceeded { boxes: usize },
}
