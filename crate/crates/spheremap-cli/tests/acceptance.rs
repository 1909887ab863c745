//! Acceptance gate: eight exact, self-contained checks covering the
//! fixture invariants, the homogeneous and juxtaposition suites, the
//! Hermitian rank bounds, the corpus-level gap property, the induced
//! sphere automorphisms, the 2-to-3 dichotomy, and CLI round trips.
//! Each test prints one pass line. No tolerances anywhere.

use std::path::Path;
use std::process::Command;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spheremap_core::classify::{classify_2_3, classify_annulus_map, TwoThreeClass, Verdict};
use spheremap_core::construct::{
    affine_embedding, apply_source_unitary, apply_target_unitary, homogeneous_map, is_norm_power,
    juxtapose, pad_and_shift, symmetric_power_dimension, UnitaryMatrix,
};
use spheremap_core::hyperplane::hyperplane_rank;
use spheremap_core::projective::{
    induced_automorphisms, sphere_orbit, HermitianSphereMatrix, HomogeneousMap,
};
use spheremap_core::scalar::{rat, rat_int};
use spheremap_core::spectrum::{
    invariant_spheres, ContinuumBranch, IsolatedSpherePair, SphereSpectrum,
};
use spheremap_core::unipoly::{RationalFunction, UniPoly};
use spheremap_core::{
    Error, HermitianForm, Monomial, Poly, RadicalScalar, Rational, RationalMap,
};

use spheremap_cli::document::parse_document;
use spheremap_cli::document::serialize_document;

fn fixture_path(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn load_fixture(name: &str) -> RationalMap {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    parse_document(&text).expect("fixture parses").map
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut out = 1usize;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

fn rational_pow(base: &Rational, exp: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

/// Random rational strictly between 0 and 1.
fn random_inner(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(2i64..=24);
    let num = rng.gen_range(1..den);
    rat(num, den)
}

/// Random nonzero rational in [-9, 9] \ {0}.
fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let num = loop {
        let n = rng.gen_range(-9i64..=9);
        if n != 0 {
            break n;
        }
    };
    rat(num, rng.gen_range(1i64..=9))
}

const TURNS: [(i64, i64, i64); 3] = [(3, 4, 5), (5, 12, 13), (8, 15, 17)];

fn random_rotation(rng: &mut ChaCha8Rng, size: usize) -> UnitaryMatrix {
    let (a, b, c) = TURNS[rng.gen_range(0..TURNS.len())];
    let i = rng.gen_range(0..size - 1);
    let j = rng.gen_range(i + 1..size);
    UnitaryMatrix::rotation(size, i, j, &rat(a, c), &rat(b, c)).expect("unit cos/sin pair")
}

#[test]
fn criterion_1_cubic_fixture_profile() {
    let map = load_fixture("nonhomog_cubic.map");
    assert_eq!(map.degree(), 3);
    assert_eq!(map.embedding_dimension(), 6);
    for seed in [7u64, 99, 2024] {
        assert_eq!(hyperplane_rank(&map, 8, seed).unwrap(), 3);
    }
    let spectrum = invariant_spheres(&map).unwrap();
    let expected = SphereSpectrum {
        isolated: vec![
            IsolatedSpherePair::Exact { source_sq: rat(1, 4), target_sq: rat(1, 16) },
            IsolatedSpherePair::Exact { source_sq: rat_int(1), target_sq: rat_int(1) },
        ],
        continuum: None,
    };
    assert_eq!(spectrum, expected);
    println!("criterion 1: pass - cubic fixture has degree 3, N_f 6, k_f 3, spheres {{(1,1),(1/4,1/16)}}");
}

#[test]
fn criterion_2_homogeneous_suite() {
    for n in 2..=3usize {
        for d in 1..=3u32 {
            let map = homogeneous_map(n, d);
            assert!(is_norm_power(&map, d), "norm of H_{d} on {n} vars");
            let expected_dim = binom(n + d as usize - 1, d as usize);
            assert_eq!(map.target_dim(), expected_dim);
            assert_eq!(map.target_dim(), symmetric_power_dimension(n, d));
            assert_eq!(map.embedding_dimension(), expected_dim);
            assert_eq!(
                hyperplane_rank(&map, 8, 7).unwrap(),
                expected_dim - 1,
                "rank of H_{d} on {n} vars"
            );
            let mut power = vec![Rational::zero(); d as usize + 1];
            power[d as usize] = Rational::one();
            let expected = SphereSpectrum {
                isolated: vec![],
                continuum: Some(ContinuumBranch {
                    target_of_source: RationalFunction::new(
                        UniPoly::from_coeffs(power),
                        UniPoly::one(),
                    ),
                }),
            };
            assert_eq!(invariant_spheres(&map).unwrap(), expected);
        }
    }
    println!("criterion 2: pass - H_d suite (n in 2..3, d in 1..3): norm power, dimension, rank N-1, continuum s^d");
}

/// (|z|^2 + s) as a Hermitian form: the sphere form at radius -s.
fn shifted_norm(n: usize, s: &Rational) -> HermitianForm {
    HermitianForm::sphere_form(n, &(-s.clone()))
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> HermitianForm {
    let pool = Monomial::up_to_degree(n, max_degree);
    loop {
        let mut entries = Vec::new();
        for _ in 0..rng.gen_range(1..=4usize) {
            let a = pool[rng.gen_range(0..pool.len())].clone();
            let b = pool[rng.gen_range(0..pool.len())].clone();
            let re = random_nonzero(rng);
            let im = if a == b { Rational::zero() } else { random_nonzero(rng) };
            let coeff = RadicalScalar::radical_term(
                1,
                spheremap_core::GaussRational::new(re, im),
            );
            entries.push((a.clone(), b.clone(), coeff.clone()));
            if a != b {
                entries.push((b, a, coeff.conj()));
            }
        }
        let q = HermitianForm::from_entries(n, entries).expect("paired entries");
        if !q.is_zero() {
            return q;
        }
    }
}

#[test]
fn criterion_3_hermitian_rank_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);

    // Products of two shifted norms, both shifts of the same sign.
    for n in 1..=3usize {
        for trial in 0..20 {
            let mut s1 = rat(rng.gen_range(1i64..=9), rng.gen_range(1i64..=9));
            let mut s2 = rat(rng.gen_range(1i64..=9), rng.gen_range(1i64..=9));
            if trial % 2 == 1 {
                s1 = -s1;
                s2 = -s2;
            }
            let product = &shifted_norm(n, &s1) * &shifted_norm(n, &s2);
            assert_eq!(product.rank(), binom(n + 2, 2), "n={n}, s1={s1}, s2={s2}");
        }
    }

    // Opposite signs collapse the rank.
    let collapsed = &shifted_norm(1, &rat_int(1)) * &shifted_norm(1, &rat_int(-1));
    assert_eq!(collapsed.rank(), 2);
    assert_eq!(collapsed.signature(), (1, 1));

    // Multiplying by any nonzero Hermitian Q keeps the rank at or above
    // the bare product's rank.
    let mut checked = 0;
    while checked < 500 {
        let n = 1 + checked % 3;
        let max_degree = if n == 3 { 1 } else { 2 };
        let q = random_hermitian(&mut rng, n, max_degree);
        let sign = if checked % 2 == 0 { 1 } else { -1 };
        let s1 = rat(sign * rng.gen_range(1i64..=9), rng.gen_range(1i64..=9));
        let s2 = rat(sign * rng.gen_range(1i64..=9), rng.gen_range(1i64..=9));
        let product = &(&q * &shifted_norm(n, &s1)) * &shifted_norm(n, &s2);
        let rank = product.rank();
        assert!(
            rank >= binom(n + 2, 2),
            "rank {rank} below {} at n={n}, s1={s1}, s2={s2}, q={q}",
            binom(n + 2, 2)
        );
        checked += 1;
    }

    // Diagonal picture: coefficient counts after multiplying by the two
    // shifted simplex forms.
    let mut checked = 0;
    while checked < 500 {
        let n = 1 + checked % 3;
        let pool = Monomial::up_to_degree(n, 2);
        let q = {
            let mut acc = Poly::zero(n);
            for _ in 0..rng.gen_range(1..=4usize) {
                let m = pool[rng.gen_range(0..pool.len())].clone();
                acc = &acc
                    + &Poly::term(n, m, RadicalScalar::from_rational(random_nonzero(&mut rng)));
            }
            if acc.is_zero() {
                continue;
            }
            acc
        };
        let sign = if checked % 2 == 0 { 1 } else { -1 };
        let shift = |s: Rational| -> Poly {
            let mut acc = Poly::constant(n, RadicalScalar::from_rational(s));
            for i in 0..n {
                acc = &acc + &Poly::var(n, i);
            }
            acc
        };
        let s1 = shift(rat(sign * rng.gen_range(1i64..=9), rng.gen_range(1i64..=9)));
        let s2 = shift(rat(sign * rng.gen_range(1i64..=9), rng.gen_range(1i64..=9)));
        let product = &(&q * &s1) * &s2;
        let count = product.count_nonzero_coeffs();
        assert!(
            count >= binom(n + 2, 2),
            "count {count} below {} at n={n}",
            binom(n + 2, 2)
        );
        checked += 1;
    }

    println!("criterion 3: pass - shifted-norm products have rank C(n+2,2); 500 Q-multiplied ranks and 500 diagonal counts stay at or above it");
}

struct CorpusMember {
    label: String,
    map: RationalMap,
    source_sq: Rational,
    target_sq: Rational,
}

fn corpus() -> Vec<CorpusMember> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut members = Vec::new();

    // Affine embeddings with random dimensions and radii.
    for k in 0..30 {
        let n = 2 + k % 2;
        let target = n + 1 + k % 4;
        let (a, b) = {
            let x = random_inner(&mut rng);
            let y = random_inner(&mut rng);
            if x <= y { (x, y) } else { (y, x) }
        };
        let map = affine_embedding(n, target, &a, &b).expect("valid parameters");
        members.push(CorpusMember {
            label: format!("embedding {n}->{target} ({a}, {b})"),
            map,
            source_sq: a,
            target_sq: b,
        });
    }

    // Unitary twists of the homogeneous models.
    for k in 0..25u32 {
        let n = 2 + (k as usize) % 2;
        let d = 1 + k % 3;
        let mut map = homogeneous_map(n, d);
        map = apply_target_unitary(&map, &random_rotation(&mut rng, map.target_dim()))
            .expect("size match");
        if k % 2 == 0 {
            map = apply_source_unitary(&map, &random_rotation(&mut rng, n)).expect("size match");
        }
        let s = random_inner(&mut rng);
        let t = rational_pow(&s, d);
        members.push(CorpusMember {
            label: format!("twisted H_{d} on {n} vars"),
            map,
            source_sq: s,
            target_sq: t,
        });
    }

    // Juxtapositions of distinct-degree models.
    for k in 0..25u32 {
        let n = 2 + (k as usize) % 2;
        let (d1, d2) = [(1, 2), (1, 3), (2, 3)][(k as usize) % 3];
        let w = random_inner(&mut rng);
        let map = juxtapose(&homogeneous_map(n, d1), &homogeneous_map(n, d2), &w)
            .expect("same source");
        let s = random_inner(&mut rng);
        let t = (Rational::one() - &w) * rational_pow(&s, d1) + &w * rational_pow(&s, d2);
        members.push(CorpusMember {
            label: format!("juxtaposition H_{d1}|H_{d2} on {n} vars, weight {w}"),
            map,
            source_sq: s,
            target_sq: t,
        });
    }

    // Padded models: damped components plus a constant slot.
    for k in 0..20u32 {
        let n = 2 + (k as usize) % 2;
        let d = 1 + k % 3;
        let c = random_inner(&mut rng);
        let map = pad_and_shift(&homogeneous_map(n, d), &c).expect("inner constant");
        let s = random_inner(&mut rng);
        let c_sq = &c * &c;
        let t = (Rational::one() - &c_sq) * rational_pow(&s, d) + c_sq;
        members.push(CorpusMember {
            label: format!("padded H_{d} on {n} vars, shift {c}"),
            map,
            source_sq: s,
            target_sq: t,
        });
    }

    // Twisted identity maps.
    for k in 0..10usize {
        let n = 2 + k % 3;
        let identity =
            RationalMap::polynomial(n, (0..n).map(|i| Poly::var(n, i)).collect()).unwrap();
        let map = apply_target_unitary(&identity, &random_rotation(&mut rng, n)).unwrap();
        let s = random_inner(&mut rng);
        members.push(CorpusMember {
            label: format!("twisted identity on {n} vars"),
            map,
            source_sq: s.clone(),
            target_sq: s,
        });
    }

    members
}

#[test]
fn criterion_4_corpus_respects_the_dimension_gap() {
    let members = corpus();
    assert!(members.len() >= 100);
    for member in &members {
        let report = classify_annulus_map(
            &member.map,
            &member.source_sq,
            &member.target_sq,
            8,
            7,
        )
        .unwrap_or_else(|e| panic!("{}: {e}", member.label));
        assert_ne!(report.verdict, Verdict::NotProper, "{}", member.label);
        let n = member.map.source_dim();
        let degree = member.map.degree();
        let n_f = member.map.embedding_dimension();
        if degree > 1 && n >= 2 {
            assert!(
                !(n < n_f && n_f < binom(n + 1, 2)),
                "{}: degree {degree} with N_f = {n_f} inside the forbidden band ({}, {})",
                member.label,
                n,
                binom(n + 1, 2)
            );
        }
        if degree == 1 {
            match &report.verdict {
                Verdict::UnitaryIdentity => {
                    assert_eq!(member.source_sq, member.target_sq, "{}", member.label);
                }
                Verdict::AffineEmbedding { source_sq, target_sq, .. } => {
                    assert!(target_sq >= source_sq, "{}", member.label);
                }
                other => panic!("{}: degree-1 member classified {other:?}", member.label),
            }
        }
        let expected_full = binom(n + degree as usize - 1, degree as usize);
        if n_f < expected_full {
            eprintln!(
                "note: {} spans {n_f} of {expected_full} symmetric-power dimensions",
                member.label
            );
        }
    }
    println!(
        "criterion 4: pass - {} corpus members: no degree>1 map with n < N_f < C(n+1,2); degree-1 members are unitary or expanding embeddings",
        members.len()
    );
}

#[test]
fn criterion_5_induced_automorphisms_and_orbits() {
    let s = rat(1, 4);
    for d in 2..=3u32 {
        let map = homogeneous_map(2, d);
        let t = rational_pow(&s, d);
        let hom = HomogeneousMap::from_map(&map);
        let source = HermitianSphereMatrix::zero_centered(2, &s).unwrap();
        let target = HermitianSphereMatrix::zero_centered(map.target_dim(), &t).unwrap();
        let (s_mat, t_mat, lambda) = induced_automorphisms(&hom, &source, &target).unwrap();

        let mut source_diag = vec![RadicalScalar::from_rational(s.clone())];
        source_diag.extend(std::iter::repeat(RadicalScalar::one()).take(2));
        assert_eq!(s_mat, spheremap_core::linalg::Matrix::diagonal(source_diag));
        let mut target_diag = vec![RadicalScalar::from_rational(t.clone())];
        target_diag.extend(std::iter::repeat(RadicalScalar::one()).take(map.target_dim()));
        assert_eq!(t_mat, spheremap_core::linalg::Matrix::diagonal(target_diag));
        assert!(lambda.is_one());

        // Re-expand F(Sx) = lambda (T F)(x) from scratch.
        let n1 = hom.source_dim() + 1;
        let images: Vec<Poly> = (0..n1)
            .map(|i| {
                let mut acc = Poly::zero(n1);
                for j in 0..n1 {
                    acc = &acc + &Poly::var(n1, j).scale(s_mat.at(i, j));
                }
                acc
            })
            .collect();
        for (a, p) in hom.components().iter().enumerate() {
            let composed = p.compose(&images);
            let mut mixed = Poly::zero(n1);
            for (b, q) in hom.components().iter().enumerate() {
                mixed = &mixed + &q.scale(t_mat.at(a, b));
            }
            assert_eq!(composed, mixed.scale(&lambda), "component {a} of H_{d}");
        }

        // The orbit walks down the radii as pure powers, re-certified.
        let orbit = sphere_orbit(&map, &s, &t, 4).unwrap();
        let expected: Vec<(Rational, Rational)> = (1..=4u32)
            .map(|j| (rational_pow(&s, j), rational_pow(&s, j * d)))
            .collect();
        assert_eq!(orbit, expected);
    }

    let cubic = load_fixture("nonhomog_cubic.map");
    let hom = HomogeneousMap::from_map(&cubic);
    let source = HermitianSphereMatrix::zero_centered(2, &s).unwrap();
    let target = HermitianSphereMatrix::zero_centered(6, &rat(1, 16)).unwrap();
    assert!(matches!(
        induced_automorphisms(&hom, &source, &target),
        Err(Error::NoIntertwining(_))
    ));

    println!("criterion 5: pass - H_d intertwining S = diag(s,1,1), T = diag(s^d,1,...,1), lambda = 1; orbits are (s^j, s^(jd)); the cubic admits none");
}

#[test]
fn criterion_6_two_to_three_dichotomy() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);

    for _ in 0..20 {
        let (a, b) = {
            let x = random_inner(&mut rng);
            let y = random_inner(&mut rng);
            if x <= y { (x, y) } else { (y, x) }
        };
        let map = affine_embedding(2, 3, &a, &b).unwrap();
        let class = classify_2_3(&map, &a, &b)
            .unwrap_or_else(|e| panic!("embedding ({a}, {b}): {e}"));
        assert_eq!(class, TwoThreeClass::AffineEmbedding);
    }

    for k in 0..20 {
        let mut map = homogeneous_map(2, 2);
        map = apply_target_unitary(&map, &random_rotation(&mut rng, 3)).unwrap();
        if k % 2 == 0 {
            map = apply_source_unitary(&map, &random_rotation(&mut rng, 2)).unwrap();
        }
        let s = random_inner(&mut rng);
        let t = &s * &s;
        let class =
            classify_2_3(&map, &s, &t).unwrap_or_else(|e| panic!("twisted squaring: {e}"));
        assert_eq!(class, TwoThreeClass::HomogeneousSquaring);
    }

    println!("criterion 6: pass - 20 embeddings classify affine, 20 twisted squarings classify homogeneous, no member hits the contradiction branch");
}

#[test]
fn criterion_7_juxtaposition_rank_deficit() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for k in 0..200u64 {
        let n = 2 + (k as usize) % 2;
        let (d1, d2) = [(1u32, 2u32), (1, 3), (2, 3)][(k as usize) % 3];
        let w = random_inner(&mut rng);
        let map = juxtapose(&homogeneous_map(n, d1), &homogeneous_map(n, d2), &w).unwrap();
        let n_f = map.embedding_dimension();
        let k_f = hyperplane_rank(&map, 8, 1000 + k).unwrap();
        assert!(
            k_f + 2 <= n_f,
            "H_{d1}|H_{d2} on {n} vars, weight {w}: k_f = {k_f}, N_f = {n_f}"
        );
    }
    println!("criterion 7: pass - 200 mixed-degree juxtapositions keep k_f <= N_f - 2");
}

#[test]
fn criterion_8_round_trip_and_determinism() {
    // Serializer round trip on every fixture.
    for name in ["nonhomog_cubic.map", "h2.map", "whitney.map", "embed_2_3.map"] {
        let text = std::fs::read_to_string(fixture_path(name)).unwrap();
        let doc = parse_document(&text).unwrap();
        let pairs: Vec<(Rational, Rational)> = doc
            .declared_pairs
            .iter()
            .map(|c| (c.source_sq.clone(), c.target_sq.clone()))
            .collect();
        let serialized = serialize_document(&doc.map, &pairs);
        let reparsed = parse_document(&serialized).unwrap();
        assert_eq!(reparsed.map.components(), doc.map.components(), "{name}");
        assert_eq!(reparsed.map.denominator(), doc.map.denominator(), "{name}");
        assert_eq!(reparsed.declared_pairs.len(), doc.declared_pairs.len(), "{name}");
        let again = serialize_document(&reparsed.map, &pairs);
        assert_eq!(serialized, again, "{name}: serializer is not canonical");
    }

    // Identical bytes across runs with a fixed seed, and certificates
    // that survive the independent recheck entry point.
    let binary = env!("CARGO_BIN_EXE_spheremap");
    let fixture = fixture_path("nonhomog_cubic.map");
    let args = [
        "--json",
        "classify",
        fixture.to_str().unwrap(),
        "1/4",
        "1/16",
        "--seed",
        "7",
        "--trials",
        "8",
    ];
    let first = Command::new(binary).args(args).output().unwrap();
    let second = Command::new(binary).args(args).output().unwrap();
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let report: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let checks = spheremap_cli::report::recheck(&report).unwrap();
    assert!(checks.len() >= 2, "expected both boundary certificates, got {checks:?}");

    for (subcommand, radii) in [("verify", vec!["1/4", "1/16"]), ("invariants", vec![])] {
        let mut full = vec!["--json", subcommand, fixture.to_str().unwrap()];
        full.extend(radii);
        let out = Command::new(binary).args(&full).output().unwrap();
        assert!(out.status.success());
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        spheremap_cli::report::recheck(&report)
            .unwrap_or_else(|e| panic!("{subcommand} recheck: {e}"));
    }

    println!("criterion 8: pass - canonical round trips, byte-identical seeded reports, and rechecked JSON certificates");
}
