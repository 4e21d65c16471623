//! Exact arithmetic for a one-parameter family of ring extensions.
//!
//! Given a commutative base ring R, an ideal I, and parameters (a, b),
//! the family ring has elements (r, i) with r in R, i in I, multiplied by
//!
//! ```text
//! (r, i) * (s, j) = (r*s - b*i*j, r*j + s*i - a*i*j)
//! ```
//!
//! so that t satisfies t^2 + a*t + b = 0. The fiber (0, 0) is the
//! idealization of I and (-1, 0) is the duplication of R along I; the
//! other fibers connect to those two through explicit ring maps whenever
//! t^2 + a*t + b factors appropriately over R.
//!
//! The crate supports three base rings exactly: the integers, Z/n, and
//! truncated power series over Q or F_p supported on a numerical
//! semigroup. On top of the arithmetic it computes invariants of the
//! semigroup-ring members of the family: Hilbert functions, embedding
//! dimension, Cohen-Macaulay type, Gorenstein-ness, and the fiber counts
//! of Spec over the parameter line.

pub mod base;
pub mod family;
pub mod fibers;
pub mod invariants;
pub mod parse;
pub mod semigroup;
pub mod series;
pub mod verify;

pub use base::{BaseRing, FamilyError, IdealSpec, Scalar, SeriesRing};
pub use family::{
    comaximal_to_duplication, duplication_mul, idealization_mul, rationalize,
    repeated_root_to_idealization, ComaximalShift, FamilyContext, FamilyElement,
    RepeatedRootShift,
};
pub use fibers::{
    count_primes_over, duplication_fiber, splitting_mod_p, splitting_over_rationals, sweep,
    FamilyFiber, FiberError, FiberReport, Splitting,
};
pub use invariants::{
    brute_force_hilbert, cm_type, embedding_dimension_family, hilbert_family, is_gorenstein,
    multiplicity_family, HilbertRecord,
};
pub use parse::{
    parse_config_text, parse_element, parse_ideal, parse_scalar, parse_semigroup, parse_series,
    ParseError,
};
pub use semigroup::{
    cm_type_family, duplication, is_canonical, DuplicationResult, NumericalSemigroup,
    RelativeIdeal, SemigroupError,
};
pub use series::{Coeff, FieldKind, SeriesError, TruncatedSeries, Valuation};

/// Default working precision for series bases, overridable per context.
pub const DEFAULT_PRECISION: u64 = 64;

/// Any error the library can produce, for callers that funnel everything
/// into one channel.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Fiber(#[from] FiberError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
