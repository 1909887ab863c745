use spheremap_core::classify::{classify_annulus_map, is_homogeneous_equivalent, Verdict};
use spheremap_core::construct::{
    apply_target_unitary, homogeneous_map, juxtapose, pad_and_shift, UnitaryMatrix,
};
use spheremap_core::hyperplane::hyperplane_rank;
use spheremap_core::projective::{
    sphere_orbit, verify_segre_inclusion, HermitianSphereMatrix, HomogeneousMap,
};
use spheremap_core::scalar::{rat, rat_int};
use spheremap_core::spectrum::{invariant_spheres, IsolatedSpherePair};
use spheremap_core::{Poly, Rational, RationalMap};

mod common;
use common::{two_sphere_cubic, whitney_map};

fn rational_pow(s: &Rational, d: u32) -> Rational {
    let mut acc = rat_int(1);
    for _ in 0..d {
        acc *= s;
    }
    acc
}

#[test]
fn orbits_agree_with_the_continuum_branch() {
    for (n, d) in [(2usize, 2u32), (2, 3), (3, 2)] {
        let f = homogeneous_map(n, d);
        let s = rat(1, 2);
        let t = rational_pow(&s, d);
        let orbit = sphere_orbit(&f, &s, &t, 4).unwrap();
        let spectrum = invariant_spheres(&f).unwrap();
        let phi = spectrum.continuum.unwrap().target_of_source;
        for (j, (sj, tj)) in orbit.iter().enumerate() {
            assert_eq!(*sj, rational_pow(&s, j as u32 + 1));
            assert_eq!(phi.eval(sj), Some(tj.clone()), "H_{d} on {n} vars, step {j}");
        }
    }
}

/// The polarized quadric-inclusion certificate at the pair of unit
/// quadrics and the affine divisibility certificate at (1, 1) accept and
/// reject together.
#[test]
fn segre_inclusion_matches_the_sphere_certificate() {
    let improper = RationalMap::polynomial(
        2,
        vec![&Poly::var(2, 0) * &Poly::var(2, 0), Poly::var(2, 1)],
    )
    .unwrap();
    let corpus: Vec<RationalMap> = vec![
        homogeneous_map(2, 2),
        whitney_map(),
        two_sphere_cubic(),
        pad_and_shift(&homogeneous_map(2, 2), &rat(3, 5)).unwrap(),
        improper,
    ];
    for (i, f) in corpus.iter().enumerate() {
        let homogeneous = HomogeneousMap::from_map(f);
        let source = HermitianSphereMatrix::standard(f.source_dim());
        let target = HermitianSphereMatrix::standard(f.target_dim());
        let segre = verify_segre_inclusion(&homogeneous, &source, &target);
        let affine = f.maps_sphere_to_sphere(&rat_int(1), &rat_int(1));
        assert_eq!(
            segre.is_ok(),
            affine.is_ok(),
            "corpus member {i}: polarized and affine certificates disagree"
        );
    }
}

/// Certified maps whose embedding dimension sits strictly inside
/// (n, C(n+1,2)) must come out of the pipeline with degree 1.
#[test]
fn embedding_dimension_gap_forces_degree_one() {
    let mut corpus: Vec<(RationalMap, Rational, Rational)> = Vec::new();
    for (s_num, t_num) in [(1i64, 1i64), (1, 2), (2, 2)] {
        let s = rat(s_num, 4);
        let t = rat(t_num, 3);
        if s <= t {
            corpus.push((
                spheremap_core::construct::affine_embedding(2, 3, &s, &t).unwrap(),
                s,
                t,
            ));
        }
    }
    for (f, s, t) in corpus {
        let n = f.source_dim();
        let n_f = f.embedding_dimension();
        let bound = (n + 1) * n / 2;
        if n >= 2 && n < n_f && n_f < bound {
            let report = classify_annulus_map(&f, &s, &t, 6, 31).unwrap();
            let degree = report.invariants.unwrap().degree;
            assert_eq!(degree, 1, "gap-range map of degree {degree}");
            assert!(matches!(
                report.verdict,
                Verdict::AffineEmbedding { .. } | Verdict::UnitaryIdentity
            ));
        }
    }
}

/// The rank inequality behind the gap bound: a degree >= 2 certified map
/// keeps hermitian_rank of its squared numerator norm at or above
/// C(n+1, 2).
#[test]
fn squared_norms_of_higher_degree_maps_have_fat_rank() {
    for n in 2usize..=3 {
        let bound = (n + 1) * n / 2;
        for d in 2u32..=3 {
            let f = homogeneous_map(n, d);
            let rank = f.squared_norm_numerator().rank();
            assert!(rank >= bound, "H_{d} on {n} vars: rank {rank} < {bound}");
        }
        let j = juxtapose(&homogeneous_map(n, 2), &homogeneous_map(n, 3), &rat(1, 2)).unwrap();
        let rank = j.squared_norm_numerator().rank();
        assert!(rank >= bound, "juxtaposition on {n} vars: rank {rank} < {bound}");
    }
}

/// Split form of the homogeneity criterion. Homogeneous norms always
/// give k_f = N_f - 1. The converse needs the annulus hypotheses: an
/// inner invariant sphere pair and an image hull filling the target
/// (N_f = N). The Whitney map (no inner pair) and the padded squaring
/// map (hull misses the origin) each break exactly one hypothesis and
/// reach the rank bound without being homogeneous.
#[test]
fn hyperplane_rank_detects_homogeneity_except_for_hull_defects() {
    let rotation3 = UnitaryMatrix::rotation(3, 0, 2, &rat(3, 5), &rat(4, 5)).unwrap();
    let corpus: Vec<RationalMap> = vec![
        homogeneous_map(2, 2),
        homogeneous_map(2, 3),
        homogeneous_map(3, 2),
        apply_target_unitary(&homogeneous_map(2, 2), &rotation3).unwrap(),
        juxtapose(&homogeneous_map(2, 1), &homogeneous_map(2, 2), &rat(1, 2)).unwrap(),
        juxtapose(&homogeneous_map(2, 2), &homogeneous_map(2, 3), &rat(1, 3)).unwrap(),
        two_sphere_cubic(),
        whitney_map(),
        pad_and_shift(&homogeneous_map(2, 2), &rat(3, 5)).unwrap(),
    ];
    for (i, f) in corpus.iter().enumerate() {
        let n_f = f.embedding_dimension();
        let k_f = hyperplane_rank(f, 8, 600 + i as u64).unwrap();
        let homogeneous = is_homogeneous_equivalent(f).is_some();
        if homogeneous {
            assert_eq!(k_f + 1, n_f, "corpus member {i}: homogeneous but rank-deficient");
        }
        let spectrum = invariant_spheres(f).unwrap();
        let has_inner_pair = spectrum.continuum.is_some()
            || spectrum.isolated.iter().any(|pair| match pair {
                IsolatedSpherePair::Exact { source_sq, .. } => *source_sq < rat_int(1),
                IsolatedSpherePair::Algebraic { .. } => true,
            });
        if k_f + 1 == n_f && f.source_dim() >= 2 && n_f == f.target_dim() && has_inner_pair {
            assert!(homogeneous, "corpus member {i}: full-rank non-homogeneous map");
        }
    }

    let whitney = whitney_map();
    assert_eq!(hyperplane_rank(&whitney, 8, 76).unwrap() + 1, whitney.embedding_dimension());
    assert!(is_homogeneous_equivalent(&whitney).is_none());

    let padded = pad_and_shift(&homogeneous_map(2, 2), &rat(3, 5)).unwrap();
    assert_eq!(hyperplane_rank(&padded, 8, 77).unwrap() + 1, padded.embedding_dimension());
    assert!(is_homogeneous_equivalent(&padded).is_none());
}
