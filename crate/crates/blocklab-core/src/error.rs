use thiserror::Error;

/// Errors surfaced by the computational kernel.
///
/// `InvariantViolation` is reserved for conditions that are mathematically
/// impossible when the implementation is correct; callers treat it as an
/// internal failure rather than as bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("generator {index} is not a bijection on {degree} points")]
    NonBijectiveGenerator { index: usize, degree: usize },

    #[error("generator {index} has {len} images but the degree is {degree}")]
    BadGeneratorLength { index: usize, len: usize, degree: usize },

    #[error("group closure exceeded the cap of {cap} elements")]
    OrderCapExceeded { cap: usize },

    #[error("subgroup enumeration parent has order {order}, above the cap {cap}")]
    SubgroupCapExceeded { order: usize, cap: usize },

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("unknown group name {0:?}")]
    UnknownGroupName(String),

    #[error("extension degree {m} out of range (1..=12)")]
    BadExtensionDegree { m: u32 },

    #[error("element is not invariant under the requested subgroup")]
    NotInvariant,

    #[error("subspace quotient requested for a non-subspace")]
    NotASubspace,

    #[error("idempotent splitting stalled; the coefficient field is too small")]
    FieldTooSmall,

    #[error("meataxe failed to split a reducible module after {attempts} attempts")]
    MeatAxeStalled { attempts: usize },

    #[error("idempotent lifting did not converge within {steps} steps")]
    LiftDiverged { steps: usize },

    #[error("integer overflow in Smith normal form")]
    SnfOverflow,

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

/// Shorthand for `Error::InvariantViolation` with a formatted message.
#[macro_export]
macro_rules! invariant {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err($crate::Error::InvariantViolation(format!($($arg)*)));
        }
    };
}
