//! Exact computation of the ordered K-theory of the C*-algebras `B_θ`
//! generated by faithful irreducible representations of `UT(4,Z)`, and of
//! the isomorphism relation between them.
//!
//! Everything here is exact: integers are arbitrary precision, real
//! algebraic numbers are carried as a minimal polynomial together with an
//! isolating rational interval, and every isomorphism verdict comes with a
//! `GL(3,Z)` certificate that can be re-checked independently.
//!
//! Module map:
//!
//! * [`intlat`]: integer matrices, Smith/Hermite normal forms, finitely
//!   presented abelian groups, rational lattices.
//! * [`numfield`]: polynomials over `Q`, real algebraic numbers, arithmetic and
//!   sign determination in `Q(θ)`, quadratic surds.
//! * [`groups`]: arithmetic in `UT(4,Z)`, the automorphism `β`, the cocycle `ω_θ`.
//! * [`ktheory`]: exterior-algebra actions, the Pimsner–Voiculescu sequence,
//!   the Elliott invariant of `B_θ`.
//! * [`classify`]: deciding `B_θ ≅ B_η` and enumerating the `η` equivalent to a `θ`.

pub mod classify;
mod error;
pub mod exact;
pub mod groups;
pub mod intlat;
pub mod ktheory;
pub mod numfield;

pub use error::{Error, Result};

pub use classify::{
    certificate_for, cubic_integer_points, decide_isomorphic, degree4_mu, enumerate_equivalents,
    quadratic_equivalents, verify_nonsingular_cubic, Certificate, ClassificationResult,
    EquivalentsList, Verdict,
};
pub use groups::{CosetRep, UT4Element};
pub use intlat::{FpAbelianGroup, IntMatrix, RationalLattice, SmithForm};
pub use ktheory::{ElliottInvariant, GradedAutomorphism};
pub use numfield::{FieldElement, NumberField, Poly, QuadraticForm, RealAlgebraic};
