//! Projective picture of a sphere-to-sphere map: homogenize, view spheres
//! as hyperquadrics with signature (m, 1) Hermitian matrices, certify
//! inclusions by exact polynomial division of polarized forms, and derive
//! linear automorphisms that move one invariant sphere to another.
//!
//! Convention: the homogenizing variable sits in slot 0, and component 0
//! of a homogenized map is the homogenized denominator. A Hermitian
//! matrix M defines the quadric sum of `M[i][j] z_i zbar_j` = 0; its
//! polarization replaces zbar by an independent block of variables, so
//! inclusion of quadrics becomes divisibility of polynomials.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::map::RationalMap;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::radical::RadicalScalar;
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousMap {
    components: Vec<Poly>, // in n + 1 variables, slot 0 homogenizing
    degree: u32,
}

impl HomogeneousMap {
    /// Homogenizes numerators and denominator to the map's degree. The
    /// denominator becomes component 0.
    pub fn from_map(map: &RationalMap) -> Self {
        let d = map.degree();
        let mut components = vec![homogenize_poly(map.denominator(), d)];
        for p in map.components() {
            components.push(homogenize_poly(p, d));
        }
        Self { components, degree: d }
    }

    pub fn source_dim(&self) -> usize {
        self.components[0].num_vars() - 1
    }

    /// Number of homogeneous components, one more than the affine target
    /// dimension.
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Sets the homogenizing variable to 1, recovering an affine rational
    /// map with component 0 as the denominator.
    pub fn dehomogenize(&self) -> Result<RationalMap> {
        let n = self.source_dim();
        let mut affine = self.components.iter().map(|p| {
            let mut out = Poly::zero(n);
            for (m, c) in p.iter_terms() {
                out.add_term(Monomial::new(m.exps()[1..].to_vec()), c.clone());
            }
            out
        });
        let denominator = affine.next().expect("component 0 exists");
        RationalMap::new(n, affine.collect(), denominator)
    }
}

fn homogenize_poly(p: &Poly, d: u32) -> Poly {
    let mut out = Poly::zero(p.num_vars() + 1);
    for (m, c) in p.iter_terms() {
        assert!(m.degree() <= d, "degree exceeds the homogenization degree");
        let mut exps = Vec::with_capacity(p.num_vars() + 1);
        exps.push(d - m.degree());
        exps.extend_from_slice(m.exps());
        out.add_term(Monomial::new(exps), c.clone());
    }
    out
}

/// diag(-1, 1, ..., 1) of the given size: the standard hyperquadric, the
/// projective closure of the unit sphere.
pub fn j_matrix(size: usize) -> Matrix {
    let mut entries = vec![RadicalScalar::one(); size];
    entries[0] = -&RadicalScalar::one();
    Matrix::diagonal(entries)
}

/// A Hermitian matrix of signature (size - 1, 1): the defining matrix of
/// a sphere seen as a projective hyperquadric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianSphereMatrix {
    inner: Matrix,
}

impl HermitianSphereMatrix {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let (pos, neg) = matrix.inertia()?;
        let want = matrix.rows() - 1;
        if pos != want || neg != 1 {
            return Err(Error::WrongSignature(pos, neg, want, 1));
        }
        Ok(Self { inner: matrix })
    }

    /// The sphere |w|^2 = s about the origin in m-space:
    /// diag(-s, 1, ..., 1) acting on (z_0, z_1, ..., z_m).
    pub fn zero_centered(m: usize, s: &Rational) -> Result<Self> {
        if *s <= Rational::zero() {
            return Err(Error::RadiusOutOfRange("sphere matrix"));
        }
        let mut entries = vec![RadicalScalar::one(); m + 1];
        entries[0] = -&RadicalScalar::from_rational(s.clone());
        Self::new(Matrix::diagonal(entries))
    }

    pub fn standard(m: usize) -> Self {
        Self { inner: j_matrix(m + 1) }
    }

    pub fn size(&self) -> usize {
        self.inner.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.inner
    }
}

/// The polarized quadric of M composed with F: the polynomial
/// sum of M[a][b] F_a(z) conj(F_b)(w) in the 2(n+1) variables
/// z_0..z_n, w_0..w_n, where conj acts on coefficients only.
fn polarized_pullback(matrix: &Matrix, f: &HomogeneousMap) -> Poly {
    let n1 = f.source_dim() + 1;
    let total = 2 * n1;
    let mut out = Poly::zero(total);
    for a in 0..matrix.rows() {
        for b in 0..matrix.cols() {
            let c = matrix.at(a, b);
            if c.is_zero() {
                continue;
            }
            let left = shift_vars(&f.components[a], 0, total);
            let right = shift_vars(&f.components[b].conjugate_coefficients(), n1, total);
            out = &out + &(&left * &right).scale(c);
        }
    }
    out
}

/// The polarized quadric of M itself in the doubled variables.
fn polarized_form(matrix: &Matrix, n1: usize) -> Poly {
    let total = 2 * n1;
    let mut out = Poly::zero(total);
    for i in 0..matrix.rows() {
        for j in 0..matrix.cols() {
            let c = matrix.at(i, j);
            if c.is_zero() {
                continue;
            }
            let mut exps = vec![0u32; total];
            exps[i] = 1;
            exps[n1 + j] = 1;
            out.add_term(Monomial::new(exps), c.clone());
        }
    }
    out
}

fn shift_vars(p: &Poly, offset: usize, total: usize) -> Poly {
    let mut out = Poly::zero(total);
    for (m, c) in p.iter_terms() {
        let mut exps = vec![0u32; total];
        exps[offset..offset + p.num_vars()].copy_from_slice(m.exps());
        out.add_term(Monomial::new(exps), c.clone());
    }
    out
}

/// Certifies that F carries the source quadric into the target quadric:
/// the pullback of the target form must be divisible by the source form.
/// Returns the multiplier polynomial.
pub fn verify_segre_inclusion(
    f: &HomogeneousMap,
    source: &HermitianSphereMatrix,
    target: &HermitianSphereMatrix,
) -> Result<Poly> {
    if source.size() != f.source_dim() + 1 {
        return Err(Error::SizeMismatch(source.size(), f.source_dim() + 1));
    }
    if target.size() != f.component_count() {
        return Err(Error::SizeMismatch(target.size(), f.component_count()));
    }
    let pullback = polarized_pullback(target.matrix(), f);
    let divisor = polarized_form(source.matrix(), f.source_dim() + 1);
    let (quotient, remainder) = pullback.divide_by(&divisor)?;
    if !remainder.is_zero() {
        return Err(Error::CertificateFailure(
            "quadric inclusion".into(),
            "pullback of the target form is not a multiple of the source form".into(),
        ));
    }
    Ok(quotient)
}

/// For a map fixing the standard hyperquadric and carrying the quadric of
/// A into the quadric of B, the matrices S = J A and T = J B intertwine:
/// F(S z) = lambda (T F)(z) for a scalar lambda. Computes S, T, lambda and
/// verifies the intertwining identity structurally.
pub fn induced_automorphisms(
    f: &HomogeneousMap,
    source: &HermitianSphereMatrix,
    target: &HermitianSphereMatrix,
) -> Result<(Matrix, Matrix, RadicalScalar)> {
    let n1 = f.source_dim() + 1;
    if source.size() != n1 {
        return Err(Error::SizeMismatch(source.size(), n1));
    }
    if target.size() != f.component_count() {
        return Err(Error::SizeMismatch(target.size(), f.component_count()));
    }
    let s_matrix = j_matrix(n1).mul(source.matrix());
    let t_matrix = j_matrix(f.component_count()).mul(target.matrix());
    let images: Vec<Poly> = (0..n1)
        .map(|i| {
            let mut acc = Poly::zero(n1);
            for j in 0..n1 {
                acc = &acc + &Poly::var(n1, j).scale(s_matrix.at(i, j));
            }
            acc
        })
        .collect();
    let composed: Vec<Poly> = f.components.iter().map(|p| p.compose(&images)).collect();
    let mixed: Vec<Poly> = (0..f.component_count())
        .map(|a| {
            let mut acc = Poly::zero(n1);
            for (b, p) in f.components.iter().enumerate() {
                acc = &acc + &p.scale(t_matrix.at(a, b));
            }
            acc
        })
        .collect();
    let mut lambda = None;
    for (g, h) in composed.iter().zip(mixed.iter()) {
        if let Some((m, c)) = h.iter_terms().next() {
            lambda = Some(g.coeff(m).checked_div(c)?);
            break;
        }
    }
    let Some(lambda) = lambda else {
        return Err(Error::NoIntertwining("the mixed map T F vanishes".into()));
    };
    for (a, (g, h)) in composed.iter().zip(mixed.iter()).enumerate() {
        if *g != h.scale(&lambda) {
            return Err(Error::NoIntertwining(format!(
                "component {a}: F(Sz) differs from lambda (T F)(z) with lambda = {lambda}"
            )));
        }
    }
    Ok((s_matrix, t_matrix, lambda))
}

/// Starting from the invariant pairs (1, 1) and (s, t) with s, t strictly
/// inside (0, 1), the induced automorphisms generate the pairs
/// (s^j, t^j). Certifies each generated pair before returning it.
pub fn sphere_orbit(
    map: &RationalMap,
    s: &Rational,
    t: &Rational,
    k: u32,
) -> Result<Vec<(Rational, Rational)>> {
    let one = Rational::one();
    if *s <= Rational::zero() || *s >= one || *t <= Rational::zero() || *t >= one {
        return Err(Error::OrbitSphereNotInner);
    }
    map.maps_sphere_to_sphere(&one, &one)?;
    map.maps_sphere_to_sphere(s, t)?;
    let f = HomogeneousMap::from_map(map);
    let source = HermitianSphereMatrix::zero_centered(map.source_dim(), s)?;
    let target = HermitianSphereMatrix::zero_centered(map.target_dim(), t)?;
    induced_automorphisms(&f, &source, &target)?;
    let mut out = Vec::with_capacity(k as usize);
    let (mut sj, mut tj) = (one.clone(), one);
    for _ in 0..k {
        sj *= s;
        tj *= t;
        map.maps_sphere_to_sphere(&sj, &tj)?;
        out.push((sj.clone(), tj.clone()));
    }
    Ok(out)
}
