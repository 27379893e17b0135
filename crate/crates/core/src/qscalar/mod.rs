//! Exact scalars: rationals, Laurent polynomials in `q`, the field ℚ(q),
//! quantum integers and binomials, and specialization at rational points.

mod field;
mod laurent;
mod ratfunc;
mod rational;
mod upoly;

pub use field::Field;
pub use laurent::{q_binomial, q_factorial, q_int, InexactDivision, LaurentPoly};
pub use ratfunc::RatFunc;
pub use rational::{ParseRationalError, Rational};

/// Evaluate an element of ℚ(q) at `q = q0`.
pub fn specialize(x: &RatFunc, q0: &Rational) -> crate::Result<Rational> {
    x.specialize(q0)
}

#[cfg(test)]
mod props;
