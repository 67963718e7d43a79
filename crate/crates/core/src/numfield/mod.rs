//! Exact arithmetic in `Q(θ)` for a real algebraic `θ`.

mod field;
mod poly;
mod quadratic;
mod real;

pub use field::{charpoly, elt_arith, integer_translate_class, ArithOp, FieldElement, NumberField};
pub use poly::Poly;
pub use quadratic::{squarefree_decompose, QuadraticForm};
pub use real::RealAlgebraic;
