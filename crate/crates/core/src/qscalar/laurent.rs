use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::upoly::IntPoly;
use super::{Field, Rational};

/// Laurent polynomial in `q` with rational coefficients, stored sparsely by
/// exponent. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, Rational>,
}

/// Raised when an exact division leaves a nonzero remainder.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("inexact Laurent division: ({dividend}) / ({divisor})")]
pub struct InexactDivision {
    pub dividend: String,
    pub divisor: String,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(Rational::one(), 0)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        LaurentPoly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: Rational, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i32, Rational)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: i32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Largest exponent, `None` for zero.
    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Smallest exponent, `None` for zero.
    pub fn valuation(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, e: i32) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when the polynomial is `c * q^e` for a single term.
    pub fn as_monomial(&self) -> Option<(i32, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, &c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x.mul(c))).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitution `q ↦ q⁻¹`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Evaluate at a nonzero rational point.
    pub fn eval(&self, q0: &Rational) -> Rational {
        assert!(!q0.is_zero(), "Laurent polynomial evaluated at q = 0");
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc = acc.add(&c.mul(&q0.pow(*e as i64)));
        }
        acc
    }

    /// Exact division; any remainder is reported as an error.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, InexactDivision> {
        let err = || InexactDivision {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let (dd, dlc) = match (divisor.degree(), divisor.leading_coeff()) {
            (Some(d), Some(c)) => (d, c.clone()),
            _ => return Err(err()),
        };
        let dv = divisor.valuation().unwrap();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(rd) = rem.degree() {
            // the remainder's valuation can only be cleared if its span covers the divisor's
            if rd - dd < rem.valuation().unwrap() - dv {
                return Err(err());
            }
            let c = rem.terms[&rd].div(&dlc);
            let e = rd - dd;
            quot.add_term(e, &c);
            rem = rem.sub(&divisor.shift(e).scale(&c));
        }
        Ok(quot)
    }

    /// Decompose as `scale * q^val * P(q)` with `P` a primitive integer
    /// polynomial with nonzero constant term. Zero maps to an empty `P`.
    pub(crate) fn to_int_poly(&self) -> (i32, Rational, IntPoly) {
        let Some(val) = self.valuation() else {
            return (0, Rational::zero(), Vec::new());
        };
        let deg = self.degree().unwrap();
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut dense: IntPoly = vec![BigInt::zero(); (deg - val + 1) as usize];
        for (e, c) in &self.terms {
            dense[(e - val) as usize] = c.numer() * (&lcm / c.denom());
        }
        let prim = super::upoly::primitive(&dense);
        // dense = k * prim for some rational k
        let k = Rational::from_big(dense[0].clone(), prim[0].clone());
        let scale = k.div(&Rational::from_big(lcm, BigInt::one()));
        (val, scale, prim)
    }

    pub(crate) fn from_int_poly(p: &IntPoly) -> Self {
        LaurentPoly::from_terms(
            p.iter()
                .enumerate()
                .map(|(i, c)| (i as i32, Rational::from_big(c.clone(), BigInt::one()))),
        )
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(n: i64) -> Self {
        LaurentPoly::constant(Rational::integer(n))
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents with explicit signs, e.g. `q^2 + 1 - 3/2*q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let var = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            if var.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{abs}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Quantum integer `[n]_q = (q^n - q^-n)/(q - q^-1)`.
pub fn q_int(n: i64) -> LaurentPoly {
    if n < 0 {
        return q_int(-n).neg();
    }
    LaurentPoly::from_terms((0..n).map(|k| ((n - 1 - 2 * k) as i32, Rational::one())))
}

/// `[n]_q! = [1]_q [2]_q … [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: i64) -> LaurentPoly {
    (1..=n).fold(LaurentPoly::one(), |acc, k| acc.mul(&q_int(k)))
}

/// Gaussian binomial `[m choose i]_q`, zero outside `0 ≤ i ≤ m`.
pub fn q_binomial(m: i64, i: i64) -> LaurentPoly {
    if i < 0 || m < 0 || i > m {
        return LaurentPoly::zero();
    }
    let den = q_factorial(i).mul(&q_factorial(m - i));
    q_factorial(m)
        .div_exact(&den)
        .expect("q-factorial quotient must be a Laurent polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, Rational::integer(c))))
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(q_int(3).to_string(), "q^2 + 1 + q^-2");
        let p = LaurentPoly::from_terms([(1, Rational::new(-3, 2)), (-1, Rational::one())]);
        assert_eq!(p.to_string(), "-3/2*q + q^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(lp(&[(0, -2)]).to_string(), "-2");
    }

    #[test]
    fn division_oracle_for_q_int() {
        // (q^3 - q^-3) / (q - q^-1) by long division
        let num = lp(&[(3, 1), (-3, -1)]);
        let den = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(num.div_exact(&den).unwrap(), q_int(3));
        assert_eq!(q_int(0), LaurentPoly::zero());
        assert_eq!(q_int(1), LaurentPoly::one());
        assert_eq!(q_int(-2), q_int(2).neg());
    }

    #[test]
    fn inexact_division_fails() {
        let err = lp(&[(2, 1), (0, 1)]).div_exact(&lp(&[(1, 1), (0, 1)]));
        assert!(err.is_err());
    }

    #[test]
    fn q_binomial_values() {
        assert_eq!(q_binomial(5, 0), LaurentPoly::one());
        assert_eq!(q_binomial(2, 1), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(q_binomial(4, 2), lp(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]));
        assert!(q_binomial(3, 4).is_zero());
        assert!(q_binomial(3, -1).is_zero());
    }

    #[test]
    fn recurrence_and_bar_symmetry() {
        for n in -10..=10 {
            let lhs = q_int(2).mul(&q_int(n));
            assert_eq!(lhs, q_int(n + 1).add(&q_int(n - 1)), "n = {n}");
            assert_eq!(q_int(n).bar(), q_int(n));
        }
        for m in 0..8 {
            for i in 0..=m {
                let b = q_binomial(m, i);
                assert_eq!(b.bar(), b);
                assert_eq!(b, q_binomial(m, m - i));
            }
        }
    }

    #[test]
    fn evaluation() {
        assert_eq!(q_int(3).eval(&Rational::integer(2)), Rational::new(21, 4));
        assert_eq!(q_int(7).eval(&Rational::one()), Rational::integer(7));
    }
}
