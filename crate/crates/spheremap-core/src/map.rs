//! Rational maps between complex unit balls: a tuple of polynomial
//! numerators over a shared denominator that does not vanish at the
//! origin.
//!
//! The central question about such a map is whether it carries the sphere
//! of radius sqrt(s) into the sphere of radius sqrt(t). That holds exactly
//! when the squared-norm identity
//! `|p_1|^2 + ... + |p_N|^2 - t |q|^2 = H * (|z|^2 - s)`
//! has a Hermitian-form solution H, which single-divisor division decides:
//! the remainder must vanish identically. The certificate retains the
//! quotient so callers can re-expand and confirm the identity
//! independently of the division routine.

use crate::error::{Error, Result};
use crate::hermitian::HermitianForm;
use crate::poly::{span_dimension, Poly};
use crate::scalar::Rational;

use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    source_dim: usize,
    components: Vec<Poly>,
    denominator: Poly,
}

/// Witness that a map sends the sphere |z|^2 = source_sq into the sphere
/// |w|^2 = target_sq, with the Hermitian quotient of the defining identity.
#[derive(Clone, Debug)]
pub struct SpherePairCertificate {
    pub source_sq: Rational,
    pub target_sq: Rational,
    pub quotient: HermitianForm,
}

impl RationalMap {
    pub fn new(source_dim: usize, components: Vec<Poly>, denominator: Poly) -> Result<Self> {
        for p in components.iter().chain(std::iter::once(&denominator)) {
            if p.num_vars() != source_dim {
                return Err(Error::VariableCountMismatch(source_dim, p.num_vars()));
            }
        }
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if denominator.coeff(&crate::monomial::Monomial::one(source_dim)).is_zero() {
            return Err(Error::DenominatorVanishesAtOrigin);
        }
        Ok(Self { source_dim, components, denominator })
    }

    /// A polynomial map: denominator identically 1.
    pub fn polynomial(source_dim: usize, components: Vec<Poly>) -> Result<Self> {
        Self::new(source_dim, components, Poly::one(source_dim))
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .chain(std::iter::once(&self.denominator))
            .map(Poly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn squared_norm_numerator(&self) -> HermitianForm {
        HermitianForm::squared_norm(&self.components)
    }

    pub fn squared_norm_denominator(&self) -> HermitianForm {
        HermitianForm::squared_norm(std::slice::from_ref(&self.denominator))
    }

    /// Affine dimension of the span of the image: one less than the linear
    /// span of the component functions together with the denominator.
    /// Constant maps have dimension 0; a map whose components are linearly
    /// independent modulo constants attains target_dim.
    pub fn embedding_dimension(&self) -> usize {
        let mut polys: Vec<&Poly> = vec![&self.denominator];
        polys.extend(self.components.iter());
        span_dimension(&polys).saturating_sub(1)
    }

    /// Decides whether the sphere of squared radius `source_sq` maps into
    /// the sphere of squared radius `target_sq`, both required positive.
    /// On success the returned certificate has been re-verified by
    /// expanding quotient * (|z|^2 - s) + t |q|^2 and comparing against
    /// |p|^2 structurally.
    pub fn maps_sphere_to_sphere(
        &self,
        source_sq: &Rational,
        target_sq: &Rational,
    ) -> Result<SpherePairCertificate> {
        if *source_sq <= Rational::zero() {
            return Err(Error::RadiusOutOfRange("source"));
        }
        if *target_sq <= Rational::zero() {
            return Err(Error::RadiusOutOfRange("target"));
        }
        let lhs = &self.squared_norm_numerator()
            - &self.squared_norm_denominator().scale_rational(target_sq);
        let sphere = HermitianForm::sphere_form(self.source_dim, source_sq);
        let (quotient, remainder) = lhs.divide_by(&sphere)?;
        if !remainder.is_zero() {
            return Err(Error::CertificateFailure(
                format!("sphere pair ({source_sq}, {target_sq})"),
                "squared-norm identity has a nonzero remainder".into(),
            ));
        }
        let recheck = &(&quotient * &sphere)
            + &self.squared_norm_denominator().scale_rational(target_sq);
        if recheck != self.squared_norm_numerator() {
            return Err(Error::CertificateFailure(
                format!("sphere pair ({source_sq}, {target_sq})"),
                "re-expanded certificate does not match |p|^2".into(),
            ));
        }
        Ok(SpherePairCertificate {
            source_sq: source_sq.clone(),
            target_sq: target_sq.clone(),
            quotient,
        })
    }
}
