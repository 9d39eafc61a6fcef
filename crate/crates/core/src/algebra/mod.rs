//! Exact univariate algebra over the rationals.

pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod roots;

pub use poly::Polynomial;
pub use ratfunc::{ExtendedValue, RationalFunction};
pub use rational::{frac, parse_rational, rat, Rational};
pub use roots::{
    count_roots_below, difference_sign, isolate_real_roots, real_roots, AlgebraicNumber,
    IsolatedRoot, SturmSequence,
};
