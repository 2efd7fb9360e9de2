//! Exact integer bookkeeping for the hyperbolicity of quadratic forms over
//! function fields of quadrics.
//!
//! Nothing here touches field arithmetic. Every operation works on the
//! discrete invariants only: dimensions, Witt indices, splitting patterns,
//! binomial parities and Tate-motive positions.
//!
//! * [`dyadic`] 2-adic supports, Lucas parity, alternating 2-power
//!   decompositions and the index set of a quadric.
//! * [`conjecture`] the dimension-congruence conjecture, its three
//!   equivalent-looking reformulations and the coverage classifier.
//! * [`tower`] splitting patterns, first Witt index admissibility and the
//!   pattern enumerator.
//! * [`kernel`] divisibility constraints on forms that become hyperbolic
//!   over a function field, and the refined splitting-pattern checker.
//! * [`steenrod`] parity bookkeeping for Steenrod operations on cycle classes.

pub mod conjecture;
pub mod dyadic;
pub mod error;
pub mod kernel;
pub mod steenrod;
pub mod tower;

pub use error::{Error, Result};

/// Largest `s` accepted where `2^{s+2}` must fit in a `u64`.
pub const MAX_S: u32 = 61;

pub(crate) fn require_s(s: u32) -> Result<()> {
    if s > MAX_S {
        return Err(Error::Overflow(s));
    }
    Ok(())
}

/// `2^e` as `u64`. Callers keep `e < 64`.
#[inline]
pub(crate) fn pow2(e: u32) -> u64 {
    1u64 << e
}
