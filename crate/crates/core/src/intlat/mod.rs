//! Exact integer linear algebra.
//!
//! Matrices act on column vectors: `M: Z^cols -> Z^rows`. Accordingly the
//! cokernel of `M` is `Z^rows / M Z^cols` and its kernel lives in `Z^cols`.

mod group;
mod lattice;
mod matrix;
mod smith;

pub use group::FpAbelianGroup;
pub use lattice::{hermite_normal_form, lattice_equal, RationalLattice};
pub use matrix::IntMatrix;
pub use smith::{cokernel, kernel_basis, smith_normal_form, solve_integer, SmithForm};
