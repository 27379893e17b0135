use std::fmt;
use std::hash::Hash;

/// An exact field. Implemented by [`Rational`](super::Rational) and
/// [`RatFunc`](super::RatFunc); all linear algebra in the crate is generic
/// over it.
pub trait Field: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Rough size of the representation; elimination prefers pivots that
    /// keep it small.
    fn complexity(&self) -> usize {
        0
    }

    /// `self / other`; panics on division by zero.
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv().expect("division by zero in exact field"))
    }

    /// Integer power, negative exponents invert.
    fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }
}
