use std::fmt;

use super::laurent::LaurentPoly;
use super::{upoly, Field, Rational};
use crate::error::{Error, Result};

/// Element of ℚ(q) in canonical form.
///
/// `den` is a polynomial with nonzero constant term and leading coefficient
/// one; `num` is a Laurent polynomial coprime to `den`. Zero is `0/1`. Two
/// equal field elements therefore have identical representations, so
/// equality, hashing and zero tests are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Build `num / den` and normalize. Panics if `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "RatFunc with zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (nv, ns, np) = num.to_int_poly();
        let (dv, ds, dp) = den.to_int_poly();
        let scale = ns.div(&ds);
        let shift = nv - dv;
        let (np, dp) = if dp.len() > 1 && np.len() > 1 {
            let g = upoly::gcd(&np, &dp);
            if g.len() > 1 {
                let g = LaurentPoly::from_int_poly(&g);
                let n = LaurentPoly::from_int_poly(&np).div_exact(&g).expect("gcd divides");
                let d = LaurentPoly::from_int_poly(&dp).div_exact(&g).expect("gcd divides");
                (n, d)
            } else {
                (LaurentPoly::from_int_poly(&np), LaurentPoly::from_int_poly(&dp))
            }
        } else {
            (LaurentPoly::from_int_poly(&np), LaurentPoly::from_int_poly(&dp))
        };
        let lc = dp.leading_coeff().unwrap().clone();
        let lc_inv = lc.inv().unwrap();
        RatFunc {
            num: np.scale(&scale.mul(&lc_inv)).shift(shift),
            den: dp.scale(&lc_inv),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn q() -> Self {
        RatFunc::from_poly(LaurentPoly::q())
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        RatFunc::from_poly(LaurentPoly::monomial(Rational::one(), e))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Evaluate at `q0`; fails when `q0` is a pole or zero.
    pub fn specialize(&self, q0: &Rational) -> Result<Rational> {
        if q0.is_zero() {
            return Err(Error::Pole {
                value: self.to_string(),
                point: q0.to_string(),
            });
        }
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::Pole {
                value: self.to_string(),
                point: q0.to_string(),
            });
        }
        Ok(self.num.eval(q0).div(&d))
    }

    /// Substitution `q ↦ q⁻¹`.
    pub fn bar(&self) -> Self {
        RatFunc::new(self.num.bar(), self.den.bar())
    }
}

impl Field for RatFunc {
    fn complexity(&self) -> usize {
        let span = |p: &LaurentPoly| match (p.degree(), p.valuation()) {
            (Some(d), Some(v)) => (d - v) as usize + 1,
            _ => 0,
        };
        span(&self.num) + span(&self.den)
    }

    fn zero() -> Self {
        RatFunc::from_poly(LaurentPoly::zero())
    }

    fn one() -> Self {
        RatFunc::from_poly(LaurentPoly::one())
    }

    fn from_i64(n: i64) -> Self {
        RatFunc::from_poly(LaurentPoly::from(n))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return RatFunc::from_poly(num);
            }
            return RatFunc::new(num, self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RatFunc::new(num, self.den.mul(&other.den))
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc::from_poly(self.num.mul(&other.num));
        }
        // monomial numerators are coprime to every denominator
        if let (Some((e, c)), true) = (self.num.as_monomial(), self.den.is_one()) {
            return RatFunc {
                num: other.num.shift(e).scale(c),
                den: other.den.clone(),
            };
        }
        if let (Some((e, c)), true) = (other.num.as_monomial(), other.den.is_one()) {
            return RatFunc {
                num: self.num.shift(e).scale(c),
                den: self.den.clone(),
            };
        }
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.den.clone(), self.num.clone()))
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::from_poly(LaurentPoly::constant(c))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.num_terms() == 1 {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::q_int;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, Rational::integer(c))))
    }

    #[test]
    fn canonical_form() {
        // (q^2 - 1) / (2q - 2) = (q + 1)/2
        let x = RatFunc::new(lp(&[(2, 1), (0, -1)]), lp(&[(1, 2), (0, -2)]));
        assert!(x.is_polynomial());
        assert_eq!(x.num(), &LaurentPoly::from_terms([(1, Rational::new(1, 2)), (0, Rational::new(1, 2))]));
        // q^-1 / (q^2 + q) = q^-2 / (q + 1)
        let y = RatFunc::new(lp(&[(-1, 1)]), lp(&[(2, 1), (1, 1)]));
        assert_eq!(y.den(), &lp(&[(1, 1), (0, 1)]));
        assert_eq!(y.num(), &lp(&[(-2, 1)]));
        // monic denominator
        let z = RatFunc::new(lp(&[(0, 1)]), lp(&[(1, -3), (0, 3)]));
        assert_eq!(z.den(), &lp(&[(1, 1), (0, -1)]));
        assert_eq!(z.num(), &LaurentPoly::constant(Rational::new(-1, 3)));
    }

    #[test]
    fn a_minus_a_is_stored_zero() {
        let a = RatFunc::new(q_int(3), q_int(2).add(&LaurentPoly::one()));
        let z = a.sub(&a);
        assert!(z.is_zero());
        assert_eq!(z, RatFunc::zero());
    }

    #[test]
    fn specialize_values() {
        let two = RatFunc::from_poly(q_int(2));
        assert_eq!(two.specialize(&Rational::one()).unwrap(), Rational::integer(2));
        let x = RatFunc::from_poly(q_int(3));
        assert_eq!(x.specialize(&Rational::integer(2)).unwrap(), Rational::new(21, 4));
        let pole = RatFunc::new(LaurentPoly::one(), lp(&[(1, 1), (0, -1)]));
        assert!(matches!(pole.specialize(&Rational::one()), Err(Error::Pole { .. })));
        assert!(two.specialize(&Rational::zero()).is_err());
    }

    #[test]
    fn quantum_integer_as_quotient() {
        // [5]_q = (q^5 - q^-5)/(q - q^-1)
        let x = RatFunc::new(lp(&[(5, 1), (-5, -1)]), lp(&[(1, 1), (-1, -1)]));
        assert_eq!(x, RatFunc::from_poly(q_int(5)));
    }

    #[test]
    fn display() {
        let y = RatFunc::new(lp(&[(1, 1), (0, 1)]), lp(&[(2, 1), (0, 1)]));
        assert_eq!(y.to_string(), "(q + 1)/(q^2 + 1)");
        assert_eq!(RatFunc::q_pow(-2).to_string(), "q^-2");
    }
}
