//! Arbitrary-precision rationals and a few vector helpers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn ints(vs: &[i64]) -> Vec<Rational> {
    vs.iter().copied().map(int).collect()
}

pub fn dot(a: &[Rational], x: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), x.len());
    let mut acc = Rational::zero();
    for (u, v) in a.iter().zip(x) {
        if !u.is_zero() && !v.is_zero() {
            acc += u * v;
        }
    }
    acc
}

/// Least common multiple of the denominators, always positive.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    let mut l = BigInt::one();
    for v in values {
        if !v.denom().is_one() {
            l = l.lcm(v.denom());
        }
    }
    l
}

/// Scales a rational vector by a positive factor so that it becomes an
/// integer vector with content 1. The zero vector maps to zeros.
pub fn primitive_integers<'a>(
    values: impl IntoIterator<Item = &'a Rational> + Clone,
) -> Vec<BigInt> {
    let l = denominator_lcm(values.clone());
    let mut out: Vec<BigInt> = values
        .into_iter()
        .map(|v| {
            if v.denom().is_one() {
                v.numer() * &l
            } else {
                v.numer() * (&l / v.denom())
            }
        })
        .collect();
    let mut g = BigInt::zero();
    for v in &out {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
    }
    if !g.is_zero() && !g.is_one() {
        for v in &mut out {
            *v /= &g;
        }
    }
    out
}

/// Positive rescaling of a direction to primitive integer form.
pub fn primitive_direction(v: &[Rational]) -> Vec<Rational> {
    primitive_integers(v.iter())
        .into_iter()
        .map(Rational::from_integer)
        .collect()
}

pub fn sign(v: &Rational) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}
