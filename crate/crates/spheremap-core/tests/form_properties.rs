use proptest::prelude::*;
use spheremap_core::hermitian::HermitianForm;
use spheremap_core::poly::span_dimension;
use spheremap_core::scalar::{gauss, rat};
use spheremap_core::{Monomial, Poly, RadicalScalar, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn coefficient() -> impl Strategy<Value = RadicalScalar> {
    let term = (
        prop_oneof![Just(1u64), Just(2), Just(3)],
        small_rational(),
        small_rational(),
    );
    proptest::collection::vec(term, 0..2).prop_map(|terms| {
        let mut acc = RadicalScalar::zero();
        for (m, re, im) in terms {
            acc = &acc + &RadicalScalar::radical_term(m, gauss(re, im));
        }
        acc
    })
}

/// Sparse polynomials in `n` variables with exponents below 3.
fn poly(n: usize) -> impl Strategy<Value = Poly> {
    let term = (proptest::collection::vec(0u32..3, n), coefficient());
    proptest::collection::vec(term, 0..5).prop_map(move |terms| {
        Poly::from_terms(
            n,
            terms
                .into_iter()
                .map(|(exps, c)| (Monomial::new(exps), c))
                .collect(),
        )
    })
}

fn poly_list(n: usize) -> impl Strategy<Value = Vec<Poly>> {
    proptest::collection::vec(poly(n), 1..4)
}

/// Indefinite Hermitian forms arise as differences of squared norms.
fn hermitian(n: usize) -> impl Strategy<Value = HermitianForm> {
    (poly_list(n), poly_list(n)).prop_map(|(plus, minus)| {
        &HermitianForm::squared_norm(&plus) - &HermitianForm::squared_norm(&minus)
    })
}

proptest! {
    #[test]
    fn division_reconstructs_exactly(h in poly(4), g in poly(4)) {
        prop_assume!(!g.is_zero());
        let (quotient, remainder) = h.divide_by(&g).unwrap();
        prop_assert_eq!(&(&quotient * &g) + &remainder, h);
        let lead = g.leading_term().unwrap().0.clone();
        for (m, _) in remainder.iter_terms() {
            prop_assert!(!lead.divides(m));
        }
    }

    #[test]
    fn hermitian_division_by_sphere_forms_reconstructs(
        h in hermitian(2),
        s in small_rational()
    ) {
        let g = HermitianForm::sphere_form(2, &s);
        let (quotient, remainder) = h.divide_by(&g).unwrap();
        prop_assert_eq!(&(&quotient * &g) + &remainder, h);
    }

    #[test]
    fn gram_rank_equals_span_rank(polys in poly_list(2)) {
        let refs: Vec<&Poly> = polys.iter().collect();
        prop_assert_eq!(
            HermitianForm::squared_norm(&polys).rank(),
            span_dimension(&refs)
        );
    }

    #[test]
    fn rank_is_subadditive(a in hermitian(2), b in hermitian(2)) {
        prop_assert!((&a + &b).rank() <= a.rank() + b.rank());
    }

    #[test]
    fn rank_survives_multiplication_by_a_squared_modulus(
        a in hermitian(2),
        q in poly(2)
    ) {
        prop_assume!(!q.is_zero());
        let modulus = HermitianForm::squared_norm(std::slice::from_ref(&q));
        prop_assert_eq!((&modulus * &a).rank(), a.rank());
    }

    #[test]
    fn signature_parts_sum_to_the_rank(a in hermitian(2)) {
        let (positives, negatives) = a.signature();
        prop_assert_eq!(positives + negatives, a.rank());
    }
}

/// Multiplying any nonzero real combination Q by a product of two
/// same-sign-shifted norm forms leaves at least C(n+2, 2) nonzero
/// coefficients, and the Hermitian rank of the analogous z-form is
/// at least that bound as well.
#[test]
fn shifted_norm_products_spread_coefficients() {
    for n in 1usize..=3 {
        let bound = (n + 2) * (n + 1) / 2;
        for (i, j) in [(1i64, 1i64), (1, 3), (2, 1), (5, 2)] {
            let s1 = rat(i, 2);
            let s2 = rat(j, 3);
            let shifted = |s: &Rational| {
                let mut p = Poly::constant(n, RadicalScalar::from_rational(s.clone()));
                for v in 0..n {
                    p = &p + &Poly::var(n, v);
                }
                p
            };
            let q = {
                let mut p = Poly::one(n);
                p = &p + &Poly::var(n, 0).scale(&RadicalScalar::from_int(2));
                p
            };
            let product = &(&q * &shifted(&s1)) * &shifted(&s2);
            assert!(
                product.count_nonzero_coeffs() >= bound,
                "n = {n}, shifts {s1}, {s2}: {} < {bound}",
                product.count_nonzero_coeffs()
            );

            let norm = HermitianForm::norm_form(n);
            let shift_form = |s: &Rational| {
                &norm + &HermitianForm::constant(n, RadicalScalar::from_rational(s.clone()))
            };
            let q_form = {
                let z1 = Poly::var(n, 0);
                let w = &Poly::one(n) + &z1;
                &HermitianForm::squared_norm(&[w]) - &HermitianForm::squared_norm(&[z1])
            };
            let rank = (&(&q_form * &shift_form(&s1)) * &shift_form(&s2)).rank();
            assert!(rank >= bound, "n = {n}: rank {rank} < {bound}");
        }
    }
}

/// rank 2 with mixed signs when the shifts straddle zero: the bound above
/// genuinely needs same-sign shifts.
#[test]
fn opposite_sign_shifts_can_collapse_the_rank() {
    let norm = HermitianForm::norm_form(1);
    let plus = &norm + &HermitianForm::constant(1, RadicalScalar::one());
    let minus = &norm - &HermitianForm::constant(1, RadicalScalar::one());
    let product = &plus * &minus;
    assert_eq!(product.rank(), 2);
    assert_eq!(product.signature(), (1, 1));
}
