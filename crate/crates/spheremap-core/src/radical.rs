//! Scalars of the form `sum_m (a_m + b_m i) * sqrt(m)` with `a_m, b_m`
//! rational and each radicand `m` a squarefree positive integer.
//!
//! The map from radicands to coefficients is the canonical representation:
//! radicands are kept squarefree and zero coefficients are dropped, so
//! structural equality coincides with equality in the field
//! `Q(i, sqrt(2), sqrt(3), sqrt(5), ...)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{
    extract_square_part, gauss_norm, smallest_prime_factor, GaussRational, Rational,
};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct RadicalScalar {
    terms: BTreeMap<BigUint, GaussRational>,
}

impl RadicalScalar {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::from_gauss(GaussRational::new(q, Rational::zero()))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_gauss(c: GaussRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(BigUint::one(), c);
        }
        Self { terms }
    }

    pub fn i() -> Self {
        Self::from_gauss(GaussRational::new(Rational::zero(), Rational::one()))
    }

    /// `c * sqrt(radicand)`, normalizing the radicand to squarefree form.
    pub fn radical_term(radicand: u64, c: GaussRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            let (sq, free) = extract_square_part(&BigUint::from(radicand));
            let scale = Rational::from_integer(BigInt::from(sq));
            terms.insert(free, c * GaussRational::new(scale, Rational::zero()));
        }
        Self { terms }
    }

    /// Exact square root of a positive rational, e.g. 8/9 -> (2/3) sqrt(2).
    pub fn sqrt_of_positive_rational(r: &Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::NonpositiveRadicand);
        }
        let a = r.numer().to_biguint().expect("positive");
        let b = r.denom().to_biguint().expect("canonical positive denominator");
        // sqrt(a/b) = sqrt(a b) / b
        let (sq, free) = extract_square_part(&(&a * &b));
        let coeff = Rational::new(BigInt::from(sq), BigInt::from(b));
        let mut terms = BTreeMap::new();
        terms.insert(free, GaussRational::new(coeff, Rational::zero()));
        Ok(Self { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map_or(false, |q| q.is_one())
    }

    /// True when every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }

    /// True when the only radicand present is 1.
    pub fn is_gauss(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn as_gauss(&self) -> Option<GaussRational> {
        if self.is_zero() {
            Some(GaussRational::new(Rational::zero(), Rational::zero()))
        } else if self.is_gauss() {
            self.terms.get(&BigUint::one()).cloned()
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        let g = self.as_gauss()?;
        g.im.is_zero().then_some(g.re)
    }

    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    /// self * conj(self), always real and nonnegative.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn insert_term(terms: &mut BTreeMap<BigUint, GaussRational>, m: BigUint, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Flips the sign of every term whose radicand the prime p divides.
    /// This is the field automorphism sending sqrt(p) to -sqrt(p).
    fn conjugate_by_prime(&self, p: &BigUint) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    if (m % p).is_zero() {
                        (m.clone(), -c.clone())
                    } else {
                        (m.clone(), c.clone())
                    }
                })
                .collect(),
        }
    }

    /// Exact division. Rationalizes the divisor one prime at a time: for a
    /// prime p present in its radicands, num and den are both multiplied by
    /// the p-conjugate of den, after which no radicand of den is divisible
    /// by p. Once den is Gaussian-rational the quotient is a coefficient
    /// division.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut num = self.clone();
        let mut den = rhs.clone();
        loop {
            let Some(radicand) = den.terms.keys().find(|m| !m.is_one()).cloned() else {
                break;
            };
            let p = smallest_prime_factor(&radicand);
            let flipped = den.conjugate_by_prime(&p);
            num = &num * &flipped;
            den = &den * &flipped;
        }
        let c = den.as_gauss().expect("den reduced to a Gaussian rational");
        debug_assert!(!c.is_zero(), "product of nonzero field elements");
        let inv = c.conj() / GaussRational::new(gauss_norm(&c), Rational::zero());
        Ok(&num * &Self::from_gauss(inv))
    }

    /// Exact sign of a real scalar: -1, 0, or 1. Errors when any imaginary
    /// coefficient is present. A structurally nonzero combination of
    /// distinct squarefree radicals is a nonzero real number (the radicals
    /// are linearly independent over Q), so interval refinement terminates.
    pub fn sign_of_real(&self) -> Result<i8> {
        if !self.is_real() {
            return Err(Error::NonRealScalar);
        }
        if self.is_zero() {
            return Ok(0);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().expect("nonempty");
            debug_assert!(!c.re.is_zero() || !m.is_one());
            return Ok(if c.re.is_positive() { 1 } else { -1 });
        }
        let mut bits: u32 = 8;
        loop {
            let mut lo = Rational::zero();
            let mut hi = Rational::zero();
            for (m, c) in &self.terms {
                let (r_lo, r_hi) = sqrt_enclosure(m, bits);
                if c.re.is_positive() {
                    lo += &c.re * r_lo;
                    hi += &c.re * r_hi;
                } else {
                    lo += &c.re * r_hi;
                    hi += &c.re * r_lo;
                }
            }
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
            bits *= 2;
        }
    }

    /// Compares |self| with |other| for real scalars, via the sign of the
    /// difference of squares.
    pub fn cmp_abs_real(&self, other: &Self) -> Result<std::cmp::Ordering> {
        let diff = &(self * self) - &(other * other);
        Ok(match diff.sign_of_real()? {
            -1 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        })
    }

    /// Iterates (radicand, coefficient) pairs in increasing radicand order.
    pub fn iter_terms(&self) -> impl Iterator<Item = (&BigUint, &GaussRational)> {
        self.terms.iter()
    }
}

/// Outward-rounded rational enclosure of sqrt(m) with the given precision:
/// floor(sqrt(m) 2^bits) / 2^bits <= sqrt(m) <= (floor + 1) / 2^bits.
fn sqrt_enclosure(m: &BigUint, bits: u32) -> (Rational, Rational) {
    if m.is_one() {
        return (Rational::one(), Rational::one());
    }
    let scaled = m << (2 * bits as usize);
    let root = scaled.sqrt();
    let den = BigInt::from(BigUint::one() << bits as usize);
    let lo = Rational::new(BigInt::from(root.clone()), den.clone());
    let hi = Rational::new(BigInt::from(root + BigUint::one()), den);
    (lo, hi)
}

impl Add for &RadicalScalar {
    type Output = RadicalScalar;
    fn add(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            RadicalScalar::insert_term(&mut terms, m.clone(), c.clone());
        }
        RadicalScalar { terms }
    }
}

impl Sub for &RadicalScalar {
    type Output = RadicalScalar;
    fn sub(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            RadicalScalar::insert_term(&mut terms, m.clone(), -c.clone());
        }
        RadicalScalar { terms }
    }
}

impl Mul for &RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                // Both radicands are squarefree, so with g = gcd(m1, m2):
                // sqrt(m1) sqrt(m2) = g sqrt((m1/g)(m2/g)), and the product
                // radicand is squarefree because m1/g and m2/g are coprime.
                let g = m1.gcd(m2);
                let radicand = (m1 / &g) * (m2 / &g);
                let scale = GaussRational::new(
                    Rational::from_integer(BigInt::from(g)),
                    Rational::zero(),
                );
                RadicalScalar::insert_term(&mut terms, radicand, c1 * c2 * scale);
            }
        }
        RadicalScalar { terms }
    }
}

impl Neg for &RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        RadicalScalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for RadicalScalar {
    type Output = RadicalScalar;
    fn add(self, rhs: RadicalScalar) -> RadicalScalar {
        &self + &rhs
    }
}

impl Sub for RadicalScalar {
    type Output = RadicalScalar;
    fn sub(self, rhs: RadicalScalar) -> RadicalScalar {
        &self - &rhs
    }
}

impl Mul for RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: RadicalScalar) -> RadicalScalar {
        &self * &rhs
    }
}

impl Neg for RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        -&self
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders one coefficient so that `coeff * sqrt(m)` re-parses under the
/// expression grammar: plain rationals stay bare, anything mixed is
/// parenthesized.
fn fmt_gauss(c: &GaussRational, needs_product_context: bool) -> String {
    let re_zero = c.re.is_zero();
    let im_zero = c.im.is_zero();
    if im_zero {
        return fmt_rational(&c.re);
    }
    let im_str = if c.im.is_one() {
        "i".to_string()
    } else if (-c.im.clone()).is_one() {
        "-i".to_string()
    } else {
        format!("{}*i", fmt_rational(&c.im))
    };
    if re_zero {
        if needs_product_context && c.im.is_negative() {
            return format!("({im_str})");
        }
        return im_str;
    }
    let joined = if c.im.is_negative() {
        let neg = GaussRational::new(c.re.clone(), -c.im.clone());
        let pos_str = fmt_gauss(&neg, false);
        let tail = pos_str
            .split_once(" + ")
            .map(|(_, t)| t.to_string())
            .unwrap_or_default();
        format!("{} - {}", fmt_rational(&c.re), tail)
    } else {
        format!("{} + {}", fmt_rational(&c.re), im_str)
    };
    if needs_product_context {
        format!("({joined})")
    } else {
        joined
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut pieces = Vec::new();
        for (m, c) in &self.terms {
            if m.is_one() {
                pieces.push(fmt_gauss(c, false));
            } else if c.re.is_one() && c.im.is_zero() {
                pieces.push(format!("sqrt({m})"));
            } else if (-c.re.clone()).is_one() && c.im.is_zero() {
                pieces.push(format!("-sqrt({m})"));
            } else {
                pieces.push(format!("{}*sqrt({m})", fmt_gauss(c, true)));
            }
        }
        let mut out = pieces[0].clone();
        for piece in &pieces[1..] {
            if let Some(rest) = piece.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(piece);
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
