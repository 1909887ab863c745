//! Sparse multivariate polynomials over [`RadicalScalar`].
//!
//! Terms are kept in a map ordered by the global graded-lex order; zero
//! coefficients are never stored, so structural equality is polynomial
//! equality. Mixed-variable-count arithmetic is a programming error and
//! panics; `divide_by` reports it as a proper error because its inputs can
//! come from user data.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::radical::RadicalScalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    num_vars: usize,
    terms: BTreeMap<Monomial, RadicalScalar>,
}

impl Poly {
    pub fn zero(num_vars: usize) -> Self {
        Self { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: RadicalScalar) -> Self {
        Self::term(num_vars, Monomial::one(num_vars), c)
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, RadicalScalar::one())
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        Self::term(num_vars, Monomial::var(num_vars, i), RadicalScalar::one())
    }

    pub fn term(num_vars: usize, m: Monomial, c: RadicalScalar) -> Self {
        assert_eq!(m.num_vars(), num_vars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { num_vars, terms }
    }

    pub fn from_terms(num_vars: usize, items: Vec<(Monomial, RadicalScalar)>) -> Self {
        let mut out = Self::zero(num_vars);
        for (m, c) in items {
            assert_eq!(m.num_vars(), num_vars);
            out.add_term(m, c);
        }
        out
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn count_nonzero_coeffs(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> RadicalScalar {
        self.terms.get(m).cloned().unwrap_or_else(RadicalScalar::zero)
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Monomial, &RadicalScalar)> {
        self.terms.iter()
    }

    /// Largest term under the graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &RadicalScalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: RadicalScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &RadicalScalar) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &RadicalScalar) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (mm, a) in &self.terms {
            out.add_term(mm.mul(m), a * c);
        }
        out
    }

    pub fn conjugate_coefficients(&self) -> Self {
        Self {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.num_vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `images[i]` for variable i. All images must share one
    /// variable count, which becomes the variable count of the result.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.num_vars);
        let target_vars = images.first().map_or(self.num_vars, |p| p.num_vars);
        assert!(images.iter().all(|p| p.num_vars == target_vars));
        // Cache powers of each image up to the largest exponent used.
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(target_vars), p.clone()])
            .collect();
        for (i, cache) in powers.iter_mut().enumerate() {
            let max_exp = self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0) as usize;
            while cache.len() <= max_exp {
                let next = &cache[cache.len() - 1] * &images[i];
                cache.push(next);
            }
        }
        let mut out = Poly::zero(target_vars);
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(target_vars, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    acc = &acc * &powers[i][e as usize];
                }
            }
            out = &out + &acc;
        }
        out
    }

    pub fn evaluate(&self, point: &[RadicalScalar]) -> RadicalScalar {
        assert_eq!(point.len(), self.num_vars);
        let mut total = RadicalScalar::zero();
        for (m, c) in &self.terms {
            let mut prod = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    prod = &prod * &point[i].pow(e);
                }
            }
            total = &total + &prod;
        }
        total
    }

    /// Reinterprets the polynomial in a larger ring by appending unused
    /// trailing variables.
    pub fn extend_vars(&self, num_vars: usize) -> Poly {
        assert!(num_vars >= self.num_vars);
        Poly {
            num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extend_vars(num_vars), c.clone()))
                .collect(),
        }
    }

    /// Division with remainder by a single divisor under the global term
    /// order: self = q * g + r where no term of r is divisible by the
    /// leading monomial of g. The pair (q, r) is unique for a fixed order.
    pub fn divide_by(&self, g: &Poly) -> Result<(Poly, Poly)> {
        if self.num_vars != g.num_vars {
            return Err(Error::VariableCountMismatch(self.num_vars, g.num_vars));
        }
        let Some((g_lm, g_lc)) = g.leading_term() else {
            return Err(Error::ZeroDivisor);
        };
        let (g_lm, g_lc) = (g_lm.clone(), g_lc.clone());
        let mut quotient = Poly::zero(self.num_vars);
        let mut remainder = Poly::zero(self.num_vars);
        let mut work = self.clone();
        while let Some((lm, lc)) = work.leading_term() {
            let (lm, lc) = (lm.clone(), lc.clone());
            if g_lm.divides(&lm) {
                let factor_m = g_lm.quotient_into(&lm);
                // Nonzero scalars are invertible, so this cannot fail once
                // the divisor is nonzero.
                let factor_c = lc.checked_div(&g_lc)?;
                work = &work - &g.mul_term(&factor_m, &factor_c);
                quotient.add_term(factor_m, factor_c);
            } else {
                work.terms.remove(&lm);
                remainder.add_term(lm, lc);
            }
        }
        Ok((quotient, remainder))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.num_vars, rhs.num_vars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.num_vars, rhs.num_vars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.num_vars, rhs.num_vars, "variable count mismatch");
        let mut out = Poly::zero(self.num_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Dimension of the linear span of the given polynomials, as coefficient
/// vectors over the union of their monomials.
pub fn span_dimension(polys: &[&Poly]) -> usize {
    let Some(first) = polys.first() else {
        return 0;
    };
    let num_vars = first.num_vars();
    assert!(polys.iter().all(|p| p.num_vars() == num_vars));
    let mut basis: Vec<Monomial> = polys
        .iter()
        .flat_map(|p| p.iter_terms().map(|(m, _)| m.clone()))
        .collect();
    basis.sort();
    basis.dedup();
    let rows: Vec<Vec<RadicalScalar>> = polys
        .iter()
        .map(|p| basis.iter().map(|m| p.coeff(m)).collect())
        .collect();
    crate::linalg::Matrix::from_rows(rows).rank()
}

fn term_string(m: &Monomial, c: &RadicalScalar, var: &dyn Fn(usize) -> String) -> String {
    let mono = if m.is_one() {
        String::new()
    } else {
        let mut parts = Vec::new();
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if e == 1 {
                parts.push(var(i));
            } else {
                parts.push(format!("{}^{e}", var(i)));
            }
        }
        parts.join("*")
    };
    if mono.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        return mono;
    }
    if (-c).is_one() {
        return format!("-{mono}");
    }
    let coeff = c.to_string();
    // A coefficient that is itself a sum needs parentheses before '*'.
    let needs_parens = coeff.contains(" + ") || coeff.contains(" - ");
    if needs_parens {
        format!("({coeff})*{mono}")
    } else {
        format!("{coeff}*{mono}")
    }
}

impl Poly {
    pub fn format_with_vars(&self, var: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let pieces: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| term_string(m, c, var))
            .collect();
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
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with_vars(&|i| format!("z{}", i + 1)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
