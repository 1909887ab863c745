//! Restriction of a rational map to affine hyperplanes and the resulting
//! rank invariant: the largest affine span dimension of the image of a
//! hyperplane.
//!
//! Over the rationals the maximum is attained generically, so random
//! sampling gives a one-sided answer: a sampled rank never exceeds the
//! true invariant and equals it once any sampled hyperplane is generic
//! enough. The exact mode replaces sampling with symbolic hyperplane
//! parameters and computes the rank over the rational function field by
//! fraction-free elimination, trading speed for a proof.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::map::RationalMap;
use crate::monomial::Monomial;
use crate::poly::{span_dimension, Poly};
use crate::radical::RadicalScalar;
use crate::scalar::Rational;

/// The composed map on the hyperplane z = base + directions * t, as a
/// rational map in n - 1 variables.
pub fn restrict_to_hyperplane(
    map: &RationalMap,
    base: &[Rational],
    directions: &[Vec<Rational>],
) -> Result<RationalMap> {
    let images = hyperplane_images(map.source_dim(), base, directions);
    let components = map.components().iter().map(|p| p.compose(&images)).collect();
    RationalMap::new(
        map.source_dim() - 1,
        components,
        map.denominator().compose(&images),
    )
}

/// Affine span dimension of the image of one specific hyperplane.
pub fn hyperplane_rank_on(
    map: &RationalMap,
    base: &[Rational],
    directions: &[Vec<Rational>],
) -> Result<usize> {
    let images = hyperplane_images(map.source_dim(), base, directions);
    let denominator = map.denominator().compose(&images);
    if denominator.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let composed: Vec<Poly> = map.components().iter().map(|p| p.compose(&images)).collect();
    let mut polys: Vec<&Poly> = vec![&denominator];
    polys.extend(composed.iter());
    Ok(span_dimension(&polys).saturating_sub(1))
}

fn hyperplane_images(n: usize, base: &[Rational], directions: &[Vec<Rational>]) -> Vec<Poly> {
    assert_eq!(base.len(), n);
    assert_eq!(directions.len(), n.saturating_sub(1));
    let params = n.saturating_sub(1);
    (0..n)
        .map(|i| {
            let mut image =
                Poly::constant(params, RadicalScalar::from_rational(base[i].clone()));
            for (j, dir) in directions.iter().enumerate() {
                assert_eq!(dir.len(), n);
                image = &image
                    + &Poly::var(params, j).scale(&RadicalScalar::from_rational(dir[i].clone()));
            }
            image
        })
        .collect()
}

/// Randomized maximum of `hyperplane_rank_on` over `trials` hyperplanes.
/// Deterministic for a fixed seed; never larger than the true invariant.
/// Coordinates are sampled with denominators growing per trial so later
/// trials escape any fixed degenerate locus.
pub fn hyperplane_rank(map: &RationalMap, trials: usize, seed: u64) -> Result<usize> {
    let n = map.source_dim();
    let ranks = crate::parallel::map_indexed(trials, |index| -> Result<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64));
        let bound = 8i64 << index.min(16) as u32;
        for _ in 0..64 {
            let base: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng, bound)).collect();
            let directions: Vec<Vec<Rational>> = (0..n.saturating_sub(1))
                .map(|_| (0..n).map(|_| random_rational(&mut rng, bound)).collect())
                .collect();
            if !directions_independent(&directions, n) {
                continue;
            }
            match hyperplane_rank_on(map, &base, &directions) {
                Ok(rank) => return Ok(rank),
                Err(Error::ZeroDenominator) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::DegenerateParametricSystem(
            "hyperplane sampling kept hitting the denominator's zero set",
        ))
    });
    let mut best = 0;
    for r in ranks {
        best = best.max(r?);
    }
    Ok(best)
}

fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let numer = rng.gen_range(-bound..=bound);
    let denom = rng.gen_range(1..=bound);
    Rational::new(numer.into(), denom.into())
}

fn directions_independent(directions: &[Vec<Rational>], n: usize) -> bool {
    if directions.is_empty() {
        return true;
    }
    let rows: Vec<Vec<RadicalScalar>> = directions
        .iter()
        .map(|d| d.iter().map(|q| RadicalScalar::from_rational(q.clone())).collect())
        .collect();
    Matrix::from_rows(rows).rank() == n - 1
}

/// The invariant itself, proven rather than sampled: ranks the restriction
/// over the field of rational functions in the hyperplane parameters.
/// Exponential-size intermediate polynomials make this practical only for
/// small maps.
pub fn hyperplane_rank_exact(map: &RationalMap) -> Result<usize> {
    let n = map.source_dim();
    let t_count = n.saturating_sub(1);
    // Variable layout: t_0..t_{t-1}, then a_0..a_{n-1}, then the n x (n-1)
    // direction matrix entries in row-major order.
    let total = t_count + n + n * t_count;
    let images: Vec<Poly> = (0..n)
        .map(|i| {
            let mut image = Poly::var(total, t_count + i);
            for j in 0..t_count {
                let v = Poly::var(total, t_count + n + i * t_count + j);
                image = &image + &(&v * &Poly::var(total, j));
            }
            image
        })
        .collect();
    let mut composed: Vec<Poly> = vec![map.denominator().compose(&images)];
    for p in map.components() {
        composed.push(p.compose(&images));
    }
    // Coefficient matrix over the parameter field: rows are the composed
    // functions, columns the monomials in t that occur.
    let mut keys: BTreeSet<Monomial> = BTreeSet::new();
    for poly in &composed {
        for (m, _) in poly.iter_terms() {
            keys.insert(t_part(m, t_count, total));
        }
    }
    let keys: Vec<Monomial> = keys.into_iter().collect();
    let rows: Vec<Vec<Poly>> = composed
        .iter()
        .map(|poly| {
            let mut row = vec![Poly::zero(total); keys.len()];
            for (m, c) in poly.iter_terms() {
                let key = t_part(m, t_count, total);
                let col = keys.binary_search(&key).expect("key collected above");
                let mut exps = m.exps().to_vec();
                exps[..t_count].fill(0);
                row[col].add_term(Monomial::new(exps), c.clone());
            }
            row
        })
        .collect();
    Ok(poly_matrix_rank(rows, total).saturating_sub(1))
}

fn t_part(m: &Monomial, t_count: usize, total: usize) -> Monomial {
    let mut exps = vec![0u32; total];
    exps[..t_count].copy_from_slice(&m.exps()[..t_count]);
    Monomial::new(exps)
}

/// Rank of a matrix of polynomials over their fraction field, by
/// one-step fraction-free elimination. Every division is exact because
/// intermediate entries are minors of the original matrix.
fn poly_matrix_rank(mut m: Vec<Vec<Poly>>, vars: usize) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = Poly::one(vars);
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let Some(pivot_row) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot_row);
        let pivot = m[row][col].clone();
        for r in row + 1..rows {
            for c in col + 1..cols {
                let numer = &(&pivot * &m[r][c]) - &(&m[r][col] * &m[row][c]);
                let (q, rem) = numer.divide_by(&prev).expect("previous pivot is nonzero");
                assert!(rem.is_zero(), "fraction-free elimination divides exactly");
                m[r][c] = q;
            }
            m[r][col] = Poly::zero(vars);
        }
        prev = pivot;
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}
