//! Base scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! `Rational` is kept in lowest terms with a positive denominator by the
//! underlying implementation, so structural equality is mathematical
//! equality. `GaussRational` is a pair (re, im) of rationals.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;
pub type GaussRational = num_complex::Complex<Rational>;

/// Rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn gauss(re: Rational, im: Rational) -> GaussRational {
    GaussRational::new(re, im)
}

pub fn gauss_from_rational(re: Rational) -> GaussRational {
    GaussRational::new(re, Rational::zero())
}

/// conj(c) * c as a rational; the imaginary part cancels.
pub fn gauss_norm(c: &GaussRational) -> Rational {
    &c.re * &c.re + &c.im * &c.im
}

/// Exact sign of a rational: -1, 0, or 1.
pub fn rational_sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Splits n > 0 as s^2 * m with m squarefree, by trial division.
/// Returns (s, m). Inputs come from user-entered radicands and multinomial
/// coefficients, which are small; products of already-squarefree radicands
/// never pass through here (they reduce by gcd alone).
pub fn extract_square_part(n: &BigUint) -> (BigUint, BigUint) {
    assert!(!n.is_zero(), "square extraction needs a positive integer");
    let mut remaining = n.clone();
    let mut square_root_part = BigUint::one();
    let mut squarefree = BigUint::one();
    let mut p = BigUint::from(2u32);
    while &p * &p <= remaining {
        let mut exp = 0u32;
        while (&remaining % &p).is_zero() {
            remaining /= &p;
            exp += 1;
        }
        if exp > 0 {
            for _ in 0..exp / 2 {
                square_root_part *= &p;
            }
            if exp % 2 == 1 {
                squarefree *= &p;
            }
        }
        p += 1u32;
    }
    // What is left is prime (or 1) and appears to the first power.
    squarefree *= &remaining;
    (square_root_part, squarefree)
}

/// Smallest prime factor of n > 1.
pub fn smallest_prime_factor(n: &BigUint) -> BigUint {
    assert!(n > &BigUint::one());
    let mut p = BigUint::from(2u32);
    while &p * &p <= *n {
        if (n % &p).is_zero() {
            return p;
        }
        p += 1u32;
    }
    n.clone()
}
