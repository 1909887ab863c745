//! Exponent vectors with the term order used throughout the crate.
//!
//! The order is graded lexicographic: lower total degree first, ties broken
//! at the rightmost differing exponent with the larger exponent winning.
//! Equivalently it is graded lex with variable priority z_n > ... > z_1.
//! Two consequences are relied on elsewhere: enumerating the degree-d
//! monomials in increasing order yields z_1^d, z_1^{d-1} z_2, ..., z_n^d,
//! and the leading (largest) term of ||z||^2 is z_n zbar_n when the
//! conjugated variables sit after the plain ones.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn one(num_vars: usize) -> Self {
        Self { exps: vec![0; num_vars] }
    }

    /// The single variable x_i (zero-based).
    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut exps = vec![0; num_vars];
        exps[i] = 1;
        Self { exps }
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.exps.len(), rhs.exps.len());
        Self {
            exps: self.exps.iter().zip(&rhs.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, rhs: &Self) -> bool {
        self.exps.len() == rhs.exps.len()
            && self.exps.iter().zip(&rhs.exps).all(|(a, b)| a <= b)
    }

    /// rhs / self, assuming divisibility.
    pub fn quotient_into(&self, rhs: &Self) -> Self {
        debug_assert!(self.divides(rhs));
        Self {
            exps: rhs.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        }
    }

    /// Pads with zero exponents for extra trailing variables.
    pub fn extend_vars(&self, num_vars: usize) -> Self {
        debug_assert!(num_vars >= self.exps.len());
        let mut exps = self.exps.clone();
        exps.resize(num_vars, 0);
        Self { exps }
    }

    /// All monomials of exact degree d in `num_vars` variables, ascending.
    pub fn of_degree(num_vars: usize, d: u32) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current = vec![0u32; num_vars];
        fill(&mut out, &mut current, 0, d);
        out.sort();
        out
    }

    /// All monomials of degree at most d, ascending.
    pub fn up_to_degree(num_vars: usize, d: u32) -> Vec<Self> {
        let mut out: Vec<Self> = (0..=d).flat_map(|k| Self::of_degree(num_vars, k)).collect();
        out.sort();
        out
    }
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().rev().zip(other.exps.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
