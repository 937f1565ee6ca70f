//! Free modules over `GF(2)[V_0, ..., V_{n-1}]` generated by grid states.

mod map;
mod poly;
mod slice;

pub use map::{compose, normalize_column, term_shift, Column, Degree, DegreeMode, DegreeReport, MapError, ModuleMap};
pub use poly::{Monomial, Polynomial};
pub use slice::{matrix_from_columns, matrix_on_slice, monomials_of_degree, slice_basis, SliceBasis};
