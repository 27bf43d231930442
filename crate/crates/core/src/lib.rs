//! Differential and Walsh analysis of functions over F_{p^n} in every
//! characteristic: the generalized derivative `Σ_{i∈F_p} f(x + ia)`, GAPN and
//! GAB tests, EA-equivalence invariance, and dual arcs built from GAPN
//! functions of algebraic degree p.

pub mod cyclotomic;
pub mod dual_arc;
pub mod equivalence;
pub mod error;
pub mod diff;
pub mod field;
mod fp_poly;
pub mod function;
pub mod linalg;
pub mod par;
pub mod report;
pub mod search;
pub mod walsh;

pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use function::{AffineMap, FunctionTable, PolynomialForm};
