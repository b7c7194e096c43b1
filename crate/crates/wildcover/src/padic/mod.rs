//! Truncated 2-adic arithmetic, square classes and the quadratic Hilbert symbol.

mod classes;
mod field;
pub mod hilbert;
mod space;

pub use classes::SquareClass;
pub use field::{poly_string, Elt, FieldSpec, FieldSummary, PadicElement, MAX_EF};
pub use hilbert::{hilbert, HilbertMethod};
pub use space::{DecompositionCase, SquareClassSpace, UnitDecomposition};
