//! Exact scalars and linear algebra.

pub mod field;
pub mod matrix;
pub mod polymat;
pub mod polynomial;
pub mod ratfunc;
pub mod rational;
pub mod subspace;

pub use field::Field;
pub use matrix::{Matrix, Rref};
pub use polynomial::{Monomial, Polynomial};
pub use ratfunc::RationalFunction;
pub use rational::{format_rational, q, qf, Rational};
pub use subspace::Subspace;
