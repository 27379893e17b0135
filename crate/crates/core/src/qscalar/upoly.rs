//! Dense univariate polynomials over ℤ, used only for gcd computations
//! behind [`RatFunc`](super::RatFunc) normalization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending degree, no trailing zeros; empty is zero.
pub(crate) type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn content(p: &IntPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive(p: &IntPoly) -> IntPoly {
    let mut out = p.clone();
    trim(&mut out);
    if out.is_empty() {
        return out;
    }
    let mut c = content(&out);
    if out.last().unwrap().is_negative() {
        c = -c;
    }
    if !c.is_one() {
        for x in out.iter_mut() {
            *x = &*x / &c;
        }
    }
    out
}

/// Pseudo-remainder of `a` by `b` (b nonzero), made primitive.
fn prem_primitive(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut r = a.clone();
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        let shift = dr - db;
        // r <- lb * r - lr * x^shift * b
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        trim(&mut r);
        // keep coefficient size under control
        let c = content(&r);
        if !c.is_zero() && !c.is_one() {
            for x in r.iter_mut() {
                *x = &*x / &c;
            }
        }
    }
    r
}

/// Greatest common divisor, primitive with positive leading coefficient.
pub(crate) fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = prem_primitive(&a, &b);
        a = b;
        b = primitive(&r);
    }
    a
}
