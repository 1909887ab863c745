// Fixtures shared across the integration suites. Each test binary
// compiles its own copy, so not every helper is used everywhere.
#![allow(dead_code)]

use spheremap_core::scalar::{rat, rat_int};
use spheremap_core::{Monomial, Poly, RadicalScalar, RationalMap};

pub fn sqrt_int(n: i64) -> RadicalScalar {
    RadicalScalar::sqrt_of_positive_rational(&rat_int(n)).unwrap()
}

pub fn sqrt_rat(num: i64, den: i64) -> RadicalScalar {
    RadicalScalar::sqrt_of_positive_rational(&rat(num, den)).unwrap()
}

pub fn monomial_map(n: usize, spec: &[(RadicalScalar, &[u32])]) -> RationalMap {
    let components = spec
        .iter()
        .map(|(c, exps)| Poly::term(n, Monomial::new(exps.to_vec()), c.clone()))
        .collect();
    RationalMap::polynomial(n, components).unwrap()
}

/// Degree-3 polynomial map of 2-space whose only invariant sphere pairs
/// are (1, 1) and (1/4, 1/16):
/// ((2/sqrt 5) z1^3, (2 sqrt 2/sqrt 5) z1^2 z2, (2/sqrt 5) z1 z2^2,
///  z1 z2, z2^2, (1/sqrt 5) z1).
pub fn two_sphere_cubic() -> RationalMap {
    let c = sqrt_rat(4, 5);
    let c2 = sqrt_rat(8, 5);
    let c6 = sqrt_rat(1, 5);
    monomial_map(
        2,
        &[
            (c.clone(), &[3, 0]),
            (c2, &[2, 1]),
            (c, &[1, 2]),
            (RadicalScalar::one(), &[1, 1]),
            (RadicalScalar::one(), &[0, 2]),
            (c6, &[1, 0]),
        ],
    )
}

/// Map whose invariant source radius is irrational: the sphere conditions
/// force 4s^2 - 6s + 1 = 0 with t = 3s^2, and only s = (3 - sqrt 5)/4
/// lies in (0, 1].
pub fn irrational_radius_map() -> RationalMap {
    monomial_map(
        2,
        &[
            (sqrt_int(2), &[3, 0]),
            (RadicalScalar::from_int(2), &[2, 1]),
            (sqrt_int(2), &[1, 2]),
            (sqrt_int(3), &[1, 1]),
            (sqrt_int(3), &[0, 2]),
            (sqrt_rat(1, 2), &[1, 0]),
        ],
    )
}

/// The Whitney map (z1, z1 z2, z2^2): proper on the closed unit ball,
/// unit sphere to unit sphere, no inner invariant pair.
pub fn whitney_map() -> RationalMap {
    let z1 = Poly::var(2, 0);
    let z2 = Poly::var(2, 1);
    RationalMap::polynomial(2, vec![z1.clone(), &z1 * &z2, &z2 * &z2]).unwrap()
}
