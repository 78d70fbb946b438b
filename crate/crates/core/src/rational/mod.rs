//! Exact arithmetic in `Q[eta]` and `Q(eta)`.
//!
//! `eta` stands for the Cartan element `l0`; rational functions in it are the
//! coefficients of every noncommutative element.

mod parse;
mod poly;
mod ratfunc;

pub use num_rational::BigRational;
pub use parse::parse_rational_function;
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
