//! Univariate polynomials over the rationals: exact root counting in an
//! interval by Sturm chains, root isolation, and recovery of rational
//! roots without integer factorization.
//!
//! A rational root of an integer polynomial has denominator dividing the
//! leading coefficient. Once an isolating interval is narrower than
//! 1 / L^2 (L that leading coefficient) it contains at most one rational
//! with denominator <= L, and the Stern-Brocot walk finds the unique
//! simplest rational inside the interval; an exact evaluation then settles
//! whether the root is rational.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{rational_sign, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>, // ascending powers, no trailing zeros
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootLocation {
    Exact(Rational),
    /// Open interval containing exactly one (irrational) root.
    Isolated { lo: Rational, hi: Rational },
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i + 1)))
                .collect(),
        )
    }

    pub fn divrem(&self, g: &Self) -> (Self, Self) {
        assert!(!g.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quo = vec![Rational::zero(); self.coeffs.len().saturating_sub(g.coeffs.len() - 1)];
        let g_lead = g.leading();
        while !rem.is_zero() && rem.coeffs.len() >= g.coeffs.len() {
            let shift = rem.coeffs.len() - g.coeffs.len();
            let factor = rem.leading() / &g_lead;
            quo[shift] = factor.clone();
            for (i, gc) in g.coeffs.iter().enumerate() {
                let delta = gc * &factor;
                rem.coeffs[shift + i] -= delta;
            }
            while rem.coeffs.last().is_some_and(Zero::is_zero) {
                rem.coeffs.pop();
            }
        }
        (Self::from_coeffs(quo), rem)
    }

    /// Exact quotient when `g` divides `self`; None otherwise.
    pub fn divexact(&self, g: &Self) -> Option<Self> {
        let (q, r) = self.divrem(g);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.leading();
        Self { coeffs: self.coeffs.iter().map(|c| c / &lead).collect() }
    }

    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        self.divexact(&g).expect("gcd divides").monic()
    }

    /// Content-free integer-scaled copy: multiplies by the lcm of the
    /// coefficient denominators, divides by the gcd of the numerators.
    pub fn primitive_integer(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &scaled {
            content = content.gcd(v);
        }
        Self::from_coeffs(
            scaled
                .into_iter()
                .map(|v| Rational::from_integer(v / &content))
                .collect(),
        )
    }

    fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().expect("nonempty").is_zero() {
            let k = chain.len();
            let rem = chain[k - 2].divrem(&chain[k - 1]).1;
            chain.push(-&rem);
        }
        chain.pop();
        chain
    }

    fn sign_variations(chain: &[Self], x: &Rational) -> usize {
        let mut last = 0i8;
        let mut variations = 0;
        for p in chain {
            let s = rational_sign(&p.eval(x));
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                variations += 1;
            }
            last = s;
        }
        variations
    }

    /// Number of distinct real roots in the open interval (a, b).
    /// Requires p(a) != 0 and p(b) != 0.
    pub fn count_roots_open(&self, a: &Rational, b: &Rational) -> usize {
        let sf = self.squarefree_part();
        assert!(!sf.eval(a).is_zero() && !sf.eval(b).is_zero());
        let chain = sf.sturm_chain();
        Self::sign_variations(&chain, a) - Self::sign_variations(&chain, b)
    }

    /// All roots in the half-open interval (0, 1], each either exactly
    /// rational or isolated in an open interval with rational endpoints
    /// that are not roots. Ascending order.
    pub fn roots_in_unit_halfopen(&self) -> Vec<RootLocation> {
        assert!(!self.is_zero(), "root isolation of the zero polynomial");
        let mut sf = self.squarefree_part();
        let mut out = Vec::new();
        // Shed the root at 0 (outside the interval) and the root at 1.
        if sf.coeff(0).is_zero() {
            sf = sf.divexact(&Self::x()).expect("x divides");
        }
        let one = Rational::one();
        let mut root_at_one = false;
        if sf.eval(&one).is_zero() {
            root_at_one = true;
            let linear = Self::from_coeffs(vec![-one.clone(), one.clone()]);
            sf = sf.divexact(&linear).expect("s - 1 divides");
        }
        if !sf.is_zero() && sf.degree() >= 1 {
            let chain = sf.sturm_chain();
            let zero = Rational::zero();
            let count = Self::sign_variations(&chain, &zero) - Self::sign_variations(&chain, &one);
            let mut stack = vec![(zero, one.clone(), count)];
            let den_bound = sf.primitive_integer().leading().numer().abs();
            while let Some((lo, hi, count)) = stack.pop() {
                match count {
                    0 => {}
                    1 => out.push(classify_single_root(&sf, lo, hi, &den_bound)),
                    _ => {
                        let mid = split_point(&sf, &lo, &hi);
                        let left =
                            Self::sign_variations(&chain, &lo) - Self::sign_variations(&chain, &mid);
                        stack.push((mid.clone(), hi, count - left));
                        stack.push((lo, mid, left));
                    }
                }
            }
        }
        if root_at_one {
            out.push(RootLocation::Exact(one));
        }
        out.sort_by(|a, b| location_key(a).cmp(location_key(b)));
        out
    }
}

fn location_key(loc: &RootLocation) -> &Rational {
    match loc {
        RootLocation::Exact(r) => r,
        RootLocation::Isolated { lo, .. } => lo,
    }
}

/// A point strictly inside (lo, hi) where sf does not vanish. Tries
/// equally spaced candidates; sf has finitely many roots so one of
/// degree + 2 candidates works.
fn split_point(sf: &UniPoly, lo: &Rational, hi: &Rational) -> Rational {
    let slots = sf.degree() + 2;
    for k in 1..=slots {
        let t = lo + (hi - lo) * Rational::new(BigInt::from(k), BigInt::from(slots + 1));
        if !sf.eval(&t).is_zero() {
            return t;
        }
    }
    unreachable!("more candidate points than roots");
}

/// Narrows an isolating interval for the unique root of squarefree sf in
/// (lo, hi) until the root is recognized as the simplest rational inside,
/// or certified irrational by the denominator bound.
fn classify_single_root(
    sf: &UniPoly,
    mut lo: Rational,
    mut hi: Rational,
    den_bound: &BigInt,
) -> RootLocation {
    debug_assert!(rational_sign(&sf.eval(&lo)) * rational_sign(&sf.eval(&hi)) == -1);
    let width_target = Rational::new(BigInt::one(), den_bound * den_bound * BigInt::from(2));
    loop {
        if &hi - &lo < width_target {
            let candidate = simplest_in_open(&lo, &hi);
            if candidate.denom() <= den_bound && sf.eval(&candidate).is_zero() {
                return RootLocation::Exact(candidate);
            }
            return RootLocation::Isolated { lo, hi };
        }
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        let sign_mid = rational_sign(&sf.eval(&mid));
        if sign_mid == 0 {
            return RootLocation::Exact(mid);
        }
        if sign_mid == rational_sign(&sf.eval(&lo)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// The unique rational with smallest denominator (then smallest numerator)
/// in the open interval (lo, hi).
pub fn simplest_in_open(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi);
    let zero = Rational::zero();
    if *lo < zero && *hi > zero {
        return zero;
    }
    if *hi <= zero {
        return -simplest_in_open(&-hi.clone(), &-lo.clone());
    }
    // 0 <= lo < hi
    let a = lo.floor();
    let next = &a + Rational::one();
    if next < *hi {
        return next;
    }
    // The interval sits inside [a, a + 1]; recurse on 1/(x - a).
    if *lo == a {
        // (a, hi): x = a + 1/y with y > 1/(hi - a).
        let y = (Rational::one() / (hi - &a)).floor() + Rational::one();
        return a + Rational::one() / y;
    }
    let y = simplest_in_open(&(Rational::one() / (hi - &a)), &(Rational::one() / (lo - &a)));
    a + Rational::one() / y
}

/// Reduced ratio of two univariate polynomials with a monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() || g.degree() == 0 {
            (num, den)
        } else {
            (
                num.divexact(&g).expect("gcd divides"),
                den.divexact(&g).expect("gcd divides"),
            )
        };
        let lead = den.leading();
        num = num.scale(&(Rational::one() / &lead));
        den = den.scale(&(Rational::one() / &lead));
        Self { num, den }
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                write!(f, "{}", if c.is_negative() { "-" } else { "" })?;
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let coeff_part = if mag.is_one() && k > 0 { None } else { Some(mag) };
            match (coeff_part, k) {
                (Some(m), 0) => write!(f, "{m}")?,
                (Some(m), 1) => write!(f, "{m}*s")?,
                (Some(m), _) => write!(f, "{m}*s^{k}")?,
                (None, 1) => write!(f, "s")?,
                (None, _) => write!(f, "s^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == 0 && self.den.leading().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
