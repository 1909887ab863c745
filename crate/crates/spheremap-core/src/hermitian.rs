//! Real-valued polynomials r(z, zbar) stored by coefficient on z^alpha
//! zbar^beta pairs. The coefficient on (beta, alpha) is always the
//! conjugate of the one on (alpha, beta); the constructor checks this and
//! every operation preserves it, which is exactly the condition for the
//! form to take real values.
//!
//! A form can be flattened to a polynomial in 2n variables (z_1..z_n
//! followed by zbar_1..zbar_n) and back; division with remainder happens
//! in that flattened ring. For a divisor whose leading monomial pairs a
//! variable with its own conjugate (such as ||z||^2 - s, which leads with
//! z_n zbar_n), the unique quotient and remainder of a Hermitian form are
//! Hermitian again, because conjugate-transposing the division identity
//! produces another valid division and the pair (q, r) is unique.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::radical::RadicalScalar;
use crate::scalar::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct HermitianForm {
    source_dim: usize,
    entries: BTreeMap<(Monomial, Monomial), RadicalScalar>,
}

impl HermitianForm {
    pub fn zero(source_dim: usize) -> Self {
        Self { source_dim, entries: BTreeMap::new() }
    }

    pub fn constant(source_dim: usize, c: RadicalScalar) -> Self {
        let mut f = Self::zero(source_dim);
        f.add_entry(Monomial::one(source_dim), Monomial::one(source_dim), c);
        f
    }

    /// The form ||z||^2 = sum z_i zbar_i.
    pub fn norm_form(source_dim: usize) -> Self {
        let mut f = Self::zero(source_dim);
        for i in 0..source_dim {
            f.add_entry(
                Monomial::var(source_dim, i),
                Monomial::var(source_dim, i),
                RadicalScalar::one(),
            );
        }
        f
    }

    /// ||z||^2 - s.
    pub fn sphere_form(source_dim: usize, s: &Rational) -> Self {
        &Self::norm_form(source_dim) - &Self::constant(source_dim, RadicalScalar::from_rational(s.clone()))
    }

    /// ||z||^{2d}.
    pub fn norm_power(source_dim: usize, d: u32) -> Self {
        let mut acc = Self::constant(source_dim, RadicalScalar::one());
        let norm = Self::norm_form(source_dim);
        for _ in 0..d {
            acc = &acc * &norm;
        }
        acc
    }

    /// sum_j p_j(z) conj(p_j)(zbar): the squared norm of a polynomial
    /// tuple as a Hermitian form. Entry (alpha, beta) is
    /// sum_j c_{j,alpha} conj(c_{j,beta}).
    pub fn squared_norm(components: &[Poly]) -> Self {
        let source_dim = components.first().map_or(0, Poly::num_vars);
        let mut f = Self::zero(source_dim);
        for p in components {
            assert_eq!(p.num_vars(), source_dim, "variable count mismatch");
            for (alpha, a) in p.iter_terms() {
                for (beta, b) in p.iter_terms() {
                    f.add_entry(alpha.clone(), beta.clone(), a * &b.conj());
                }
            }
        }
        f
    }

    pub fn from_entries(
        source_dim: usize,
        items: Vec<(Monomial, Monomial, RadicalScalar)>,
    ) -> Result<Self> {
        let mut f = Self::zero(source_dim);
        for (a, b, c) in items {
            f.add_entry(a, b, c);
        }
        f.verify_hermitian()?;
        Ok(f)
    }

    fn verify_hermitian(&self) -> Result<()> {
        for ((a, b), c) in &self.entries {
            let mirrored = self
                .entries
                .get(&(b.clone(), a.clone()))
                .cloned()
                .unwrap_or_else(RadicalScalar::zero);
            if mirrored != c.conj() {
                return Err(Error::NotHermitian(0, 0));
            }
        }
        Ok(())
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_entry(&mut self, alpha: Monomial, beta: Monomial, c: RadicalScalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry((alpha, beta)) {
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

    pub fn entry(&self, alpha: &Monomial, beta: &Monomial) -> RadicalScalar {
        self.entries
            .get(&(alpha.clone(), beta.clone()))
            .cloned()
            .unwrap_or_else(RadicalScalar::zero)
    }

    pub fn iter_entries(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &RadicalScalar)> {
        self.entries.iter()
    }

    pub fn count_nonzero_coeffs(&self) -> usize {
        self.entries.len()
    }

    /// Bidegree (max degree of alpha, max degree of beta).
    pub fn bidegree(&self) -> (u32, u32) {
        let a = self.entries.keys().map(|(a, _)| a.degree()).max().unwrap_or(0);
        let b = self.entries.keys().map(|(_, b)| b.degree()).max().unwrap_or(0);
        (a, b)
    }

    pub fn scale(&self, c: &RadicalScalar) -> Self {
        let mut out = Self::zero(self.source_dim);
        for ((a, b), e) in &self.entries {
            out.add_entry(a.clone(), b.clone(), e * c);
        }
        out
    }

    /// Scaling by a rational keeps the form Hermitian for free.
    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.scale(&RadicalScalar::from_rational(c.clone()))
    }

    /// Flattens to a polynomial in 2n variables: z_1..z_n, zbar_1..zbar_n.
    pub fn to_poly(&self) -> Poly {
        let n = self.source_dim;
        let mut out = Poly::zero(2 * n);
        for ((a, b), c) in &self.entries {
            let mut exps = Vec::with_capacity(2 * n);
            exps.extend_from_slice(a.exps());
            exps.extend_from_slice(b.exps());
            out.add_term(Monomial::new(exps), c.clone());
        }
        out
    }

    pub fn from_poly(source_dim: usize, p: &Poly) -> Result<Self> {
        assert_eq!(p.num_vars(), 2 * source_dim);
        let mut f = Self::zero(source_dim);
        for (m, c) in p.iter_terms() {
            let alpha = Monomial::new(m.exps()[..source_dim].to_vec());
            let beta = Monomial::new(m.exps()[source_dim..].to_vec());
            f.add_entry(alpha, beta, c.clone());
        }
        f.verify_hermitian()?;
        Ok(f)
    }

    /// Division with remainder in the flattened ring. The divisor must
    /// have a self-paired leading monomial (like ||z||^2 - s) for the
    /// results to stay Hermitian; otherwise this reports NotHermitian.
    pub fn divide_by(&self, g: &HermitianForm) -> Result<(HermitianForm, HermitianForm)> {
        if self.source_dim != g.source_dim {
            return Err(Error::VariableCountMismatch(self.source_dim, g.source_dim));
        }
        let (q, r) = self.to_poly().divide_by(&g.to_poly())?;
        Ok((
            Self::from_poly(self.source_dim, &q)?,
            Self::from_poly(self.source_dim, &r)?,
        ))
    }

    /// The Hermitian matrix of coefficients over the joint monomial basis.
    /// Returns the basis together with the matrix.
    pub fn coefficient_matrix(&self) -> (Vec<Monomial>, Matrix) {
        let mut basis: Vec<Monomial> = self
            .entries
            .keys()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        basis.sort();
        basis.dedup();
        let k = basis.len();
        let mut m = Matrix::zeros(k, k);
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                *m.at_mut(i, j) = self.entry(a, b);
            }
        }
        (basis, m)
    }

    /// Rank of the coefficient matrix.
    pub fn rank(&self) -> usize {
        let (p, n) = self.signature();
        p + n
    }

    /// Signature (positive, negative) of the coefficient matrix.
    pub fn signature(&self) -> (usize, usize) {
        let (_, m) = self.coefficient_matrix();
        m.inertia().expect("forms are Hermitian by construction")
    }

    /// Exact value at a point: sum c_{ab} z^a conj(z)^b.
    pub fn evaluate(&self, point: &[RadicalScalar]) -> RadicalScalar {
        assert_eq!(point.len(), self.source_dim);
        let conj_point: Vec<RadicalScalar> = point.iter().map(RadicalScalar::conj).collect();
        let mut total = RadicalScalar::zero();
        for ((a, b), c) in &self.entries {
            let mut prod = c.clone();
            for (i, &e) in a.exps().iter().enumerate() {
                if e > 0 {
                    prod = &prod * &point[i].pow(e);
                }
            }
            for (i, &e) in b.exps().iter().enumerate() {
                if e > 0 {
                    prod = &prod * &conj_point[i].pow(e);
                }
            }
            total = &total + &prod;
        }
        total
    }
}

impl std::ops::Add for &HermitianForm {
    type Output = HermitianForm;
    fn add(self, rhs: &HermitianForm) -> HermitianForm {
        assert_eq!(self.source_dim, rhs.source_dim, "variable count mismatch");
        let mut out = self.clone();
        for ((a, b), c) in &rhs.entries {
            out.add_entry(a.clone(), b.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &HermitianForm {
    type Output = HermitianForm;
    fn sub(self, rhs: &HermitianForm) -> HermitianForm {
        assert_eq!(self.source_dim, rhs.source_dim, "variable count mismatch");
        let mut out = self.clone();
        for ((a, b), c) in &rhs.entries {
            out.add_entry(a.clone(), b.clone(), -c);
        }
        out
    }
}

impl std::ops::Mul for &HermitianForm {
    type Output = HermitianForm;
    fn mul(self, rhs: &HermitianForm) -> HermitianForm {
        assert_eq!(self.source_dim, rhs.source_dim, "variable count mismatch");
        let mut out = HermitianForm::zero(self.source_dim);
        for ((a1, b1), c1) in &self.entries {
            for ((a2, b2), c2) in &rhs.entries {
                out.add_entry(a1.mul(a2), b1.mul(b2), c1 * c2);
            }
        }
        out
    }
}

impl std::ops::Neg for &HermitianForm {
    type Output = HermitianForm;
    fn neg(self) -> HermitianForm {
        HermitianForm {
            source_dim: self.source_dim,
            entries: self.entries.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

fn fmt_form(form: &HermitianForm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let n = form.source_dim;
    let name = move |i: usize| {
        if i < n {
            format!("z{}", i + 1)
        } else {
            format!("zb{}", i - n + 1)
        }
    };
    write!(f, "{}", form.to_poly().format_with_vars(&name))
}

impl fmt::Display for HermitianForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_form(self, f)
    }
}

impl fmt::Debug for HermitianForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_form(self, f)
    }
}
