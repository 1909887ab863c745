//! Stock constructions of sphere-to-sphere maps: the homogeneous
//! symmetric-power maps, weighted juxtaposition, affine ball embeddings,
//! target padding, and unitary changes of coordinates.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hermitian::HermitianForm;
use crate::linalg::Matrix;
use crate::map::RationalMap;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::radical::RadicalScalar;
use crate::scalar::Rational;

/// sqrt for coefficients that may legitimately be zero.
fn sqrt_nonneg(r: &Rational) -> Result<RadicalScalar> {
    if r.is_zero() {
        Ok(RadicalScalar::zero())
    } else {
        RadicalScalar::sqrt_of_positive_rational(r)
    }
}

/// The degree-d symmetric power of n-space: one component
/// sqrt(multinomial(d; alpha)) z^alpha per degree-d monomial, in
/// ascending monomial order. Its squared norm is |z|^(2d), so it carries
/// the sphere of squared radius s to the sphere of squared radius s^d.
pub fn homogeneous_map(n: usize, d: u32) -> RationalMap {
    assert!(n >= 1);
    let components = Monomial::of_degree(n, d)
        .into_iter()
        .map(|m| {
            let coeff = RadicalScalar::sqrt_of_positive_rational(&Rational::from_integer(
                multinomial(d, m.exps()).into(),
            ))
            .expect("multinomial coefficients are positive");
            Poly::term(n, m, coeff)
        })
        .collect();
    RationalMap::polynomial(n, components).expect("constant denominator")
}

fn multinomial(d: u32, exps: &[u32]) -> BigUint {
    let mut acc = BigUint::one();
    let mut rest = d;
    for &e in exps {
        acc *= binomial(BigUint::from(rest), BigUint::from(e));
        rest -= e;
    }
    acc
}

/// Weighted orthogonal sum sqrt(1 - t) f + sqrt(t) g of two maps with the
/// same source and the same denominator. Sends (s, u) to the convex
/// combination of the two target radii with weight t.
pub fn juxtapose(f: &RationalMap, g: &RationalMap, t: &Rational) -> Result<RationalMap> {
    if f.source_dim() != g.source_dim() {
        return Err(Error::SourceDimensionMismatch(
            f.source_dim(),
            g.source_dim(),
        ));
    }
    if f.denominator() != g.denominator() {
        return Err(Error::DenominatorMismatch);
    }
    if *t <= Rational::zero() || *t >= Rational::one() {
        return Err(Error::WeightOutOfRange);
    }
    let left = RadicalScalar::sqrt_of_positive_rational(&(Rational::one() - t))?;
    let right = RadicalScalar::sqrt_of_positive_rational(t)?;
    let mut components: Vec<Poly> = f.components().iter().map(|p| p.scale(&left)).collect();
    components.extend(g.components().iter().map(|p| p.scale(&right)));
    RationalMap::new(f.source_dim(), components, f.denominator().clone())
}

/// The linear embedding of the ball of squared radius s into the ball of
/// squared radius t inside N-space:
/// z -> (sqrt((1-t)/(1-s)) z, sqrt((t-s)/(1-s)), 0, ..., 0).
/// Requires 0 < s <= t < 1 and N >= n + 1.
pub fn affine_embedding(n: usize, target_dim: usize, s: &Rational, t: &Rational) -> Result<RationalMap> {
    if target_dim < n + 1 {
        return Err(Error::TargetDimensionTooSmall(target_dim, n + 1));
    }
    if *s <= Rational::zero() || s > t || *t >= Rational::one() {
        return Err(Error::EmbeddingParametersOutOfRange);
    }
    let one = Rational::one();
    let stretch = RadicalScalar::sqrt_of_positive_rational(&((&one - t) / (&one - s)))?;
    let shift = sqrt_nonneg(&((t - s) / (&one - s)))?;
    let mut components: Vec<Poly> =
        (0..n).map(|i| Poly::var(n, i).scale(&stretch)).collect();
    components.push(Poly::constant(n, shift));
    components.resize(target_dim, Poly::zero(n));
    RationalMap::polynomial(n, components)
}

/// sqrt(1 - c^2) f padded with the constant c and one zero slot. If f
/// sends (s, t) then the padded map sends (s, (1 - c^2) t + c^2); padding
/// preserves every source radius while sliding the targets toward 1.
pub fn pad_and_shift(f: &RationalMap, c: &Rational) -> Result<RationalMap> {
    if *c <= Rational::zero() || *c >= Rational::one() {
        return Err(Error::PaddingConstantOutOfRange);
    }
    let c_sq = c * c;
    let damp = RadicalScalar::sqrt_of_positive_rational(&(Rational::one() - &c_sq))?;
    let n = f.source_dim();
    let mut components: Vec<Poly> = f.components().iter().map(|p| p.scale(&damp)).collect();
    components.push(Poly::constant(n, RadicalScalar::from_rational(c.clone())));
    components.push(Poly::zero(n));
    RationalMap::new(n, components, f.denominator().clone())
}

/// A square matrix certified unitary at construction: U* U = I holds
/// structurally, entry by entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitaryMatrix {
    inner: Matrix,
}

impl UnitaryMatrix {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::SizeMismatch(matrix.rows(), matrix.cols()));
        }
        let product = matrix.conj_transpose().mul(&matrix);
        let n = matrix.rows();
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { RadicalScalar::one() } else { RadicalScalar::zero() };
                if *product.at(i, j) != expected {
                    return Err(Error::NotUnitary(i, j));
                }
            }
        }
        Ok(Self { inner: matrix })
    }

    pub fn identity(n: usize) -> Self {
        Self { inner: Matrix::identity(n) }
    }

    /// Diagonal unitary; every entry must have unit modulus.
    pub fn diagonal(entries: Vec<RadicalScalar>) -> Result<Self> {
        Self::new(Matrix::diagonal(entries))
    }

    /// Plane rotation by a rational point on the unit circle, such as
    /// (cos, sin) = (3/5, 4/5).
    pub fn rotation(size: usize, i: usize, j: usize, cos: &Rational, sin: &Rational) -> Result<Self> {
        assert!(i < j && j < size);
        let mut m = Matrix::identity(size);
        *m.at_mut(i, i) = RadicalScalar::from_rational(cos.clone());
        *m.at_mut(j, j) = RadicalScalar::from_rational(cos.clone());
        *m.at_mut(i, j) = RadicalScalar::from_rational(-sin.clone());
        *m.at_mut(j, i) = RadicalScalar::from_rational(sin.clone());
        Self::new(m)
    }

    pub fn size(&self) -> usize {
        self.inner.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.inner
    }

    pub fn at(&self, i: usize, j: usize) -> &RadicalScalar {
        self.inner.at(i, j)
    }
}

/// U f: recombines the components by a unitary of the target. Preserves
/// the squared norm, hence every sphere pair.
pub fn apply_target_unitary(f: &RationalMap, u: &UnitaryMatrix) -> Result<RationalMap> {
    if u.size() != f.target_dim() {
        return Err(Error::SizeMismatch(u.size(), f.target_dim()));
    }
    let n = f.source_dim();
    let components = (0..u.size())
        .map(|i| {
            let mut acc = Poly::zero(n);
            for (j, p) in f.components().iter().enumerate() {
                acc = &acc + &p.scale(u.at(i, j));
            }
            acc
        })
        .collect();
    RationalMap::new(n, components, f.denominator().clone())
}

/// f(U z): unitary change of source coordinates. The squared norm of the
/// source point is preserved, so sphere pairs survive unchanged.
pub fn apply_source_unitary(f: &RationalMap, u: &UnitaryMatrix) -> Result<RationalMap> {
    let n = f.source_dim();
    if u.size() != n {
        return Err(Error::SizeMismatch(u.size(), n));
    }
    let images: Vec<Poly> = (0..n)
        .map(|i| {
            let mut acc = Poly::zero(n);
            for j in 0..n {
                acc = &acc + &Poly::var(n, j).scale(u.at(i, j));
            }
            acc
        })
        .collect();
    let components = f.components().iter().map(|p| p.compose(&images)).collect();
    RationalMap::new(n, components, f.denominator().compose(&images))
}

/// Structural identity |H_d(z)|^2 = |z|^(2d), used as a self-check by
/// callers that build on the homogeneous maps.
pub fn is_norm_power(f: &RationalMap, d: u32) -> bool {
    f.squared_norm_numerator() == HermitianForm::norm_power(f.source_dim(), d)
        && f.denominator() == &Poly::one(f.source_dim())
}

pub fn symmetric_power_dimension(n: usize, d: u32) -> usize {
    Monomial::of_degree(n, d).len()
}
