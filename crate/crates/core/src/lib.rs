//! Exact computations for the equivariant obstruction to fan partitions.
//!
//! The pipeline: build the arrangement A(J, α) for n = 2a+2b under Q_{4n}
//! ([`arrangement`]), compute the top homology of its compactified union and
//! the group action on it ([`homology`]), pass to twisted coinvariants
//! ([`coinvariants`]) and evaluate the obstruction cocycle of the
//! general-position map on the fundamental cell ([`obstruction`]).

pub mod arrangement;
pub mod coinvariants;
pub mod exactlin;
pub mod groups;
pub mod homology;
pub mod obstruction;

pub use arrangement::{Arrangement, HalfOpenSubspace, IntersectionPoset};
pub use exactlin::{ExactMatrix, ExactVector, Integer, Rational, SmithForm};
pub use groups::{ActionGroup, GroupElement};
