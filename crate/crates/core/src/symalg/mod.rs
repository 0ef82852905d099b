//! Exact sparse polynomial arithmetic over the integers and symbolic
//! determinants.

mod det;
mod poly;

pub use det::{det_symbolic, Matrix};
pub use poly::{JsonTerm, JsonVar, Monomial, Polynomial, Variable};
