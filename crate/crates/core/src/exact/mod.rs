//! Exact rational and cyclotomic arithmetic.

pub mod cyclotomic;
pub mod rational;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use rational::{parse_rational, Rational};
