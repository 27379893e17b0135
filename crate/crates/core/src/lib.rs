//! Exact symbolic computation of braided symmetric and exterior powers of
//! simple `U_q(sl_2)`-modules, their graded algebras, classical Poisson
//! closures and quantum Veronese algebras.
//!
//! Scalars live in ℚ(q) ([`qscalar::RatFunc`]) for authoritative results, or
//! in ℚ after specializing `q` to a rational point ([`qscalar::Rational`])
//! for fast screening. All linear algebra is exact and generic over
//! [`qscalar::Field`].

pub mod braided;
pub mod error;
pub mod exactla;
pub mod poisson;
pub mod qscalar;
pub mod uqsl2;
pub mod veronese;

pub use error::{Error, Result};
