//! JSON reports and their independent recheck. Every report embeds the
//! map it talks about as a serialized document, so a report file is
//! self-contained: `recheck` re-parses the map and re-expands each
//! recorded identity with ring operations only (multiply, add, compare),
//! never trusting the division that produced the certificate.

use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};
use spheremap_core::classify::{ClassificationReport, GapCertificate, MapInvariants, Verdict};
use spheremap_core::scalar::rat_int;
use spheremap_core::spectrum::{invariant_spheres, IsolatedSpherePair, SphereSpectrum};
use spheremap_core::unipoly::{RationalFunction, UniPoly};
use spheremap_core::{
    HermitianForm, Monomial, RadicalScalar, Rational, RationalMap, SpherePairCertificate,
};

use crate::document::{parse_document, serialize_document};
use crate::parse::parse_rational;

// ---------------------------------------------------------------- encoding

fn rational_json(q: &Rational) -> Value {
    Value::String(q.to_string())
}

fn scalar_json(x: &RadicalScalar) -> Value {
    let terms: Vec<Value> = x
        .iter_terms()
        .map(|(radicand, c)| {
            json!({
                "radicand": radicand.to_string(),
                "re": c.re.to_string(),
                "im": c.im.to_string(),
            })
        })
        .collect();
    Value::Array(terms)
}

fn hermitian_json(h: &HermitianForm) -> Value {
    let entries: Vec<Value> = h
        .iter_entries()
        .map(|((left, right), coeff)| {
            json!({
                "left": left.exps(),
                "right": right.exps(),
                "coeff": scalar_json(coeff),
            })
        })
        .collect();
    json!({ "source_dim": h.source_dim(), "entries": entries })
}

fn unipoly_json(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rational_json).collect())
}

fn certificate_json(c: &SpherePairCertificate) -> Value {
    json!({
        "source_sq": rational_json(&c.source_sq),
        "target_sq": rational_json(&c.target_sq),
        "quotient": hermitian_json(&c.quotient),
    })
}

fn gap_json(g: &GapCertificate) -> Value {
    json!({
        "b0": rational_json(&g.b0),
        "b1": rational_json(&g.b1),
        "quadratic": hermitian_json(&g.quadratic),
    })
}

fn spectrum_json(map: &RationalMap, spectrum: &SphereSpectrum) -> Value {
    let isolated: Vec<Value> = spectrum
        .isolated
        .iter()
        .map(|pair| match pair {
            IsolatedSpherePair::Exact { source_sq, target_sq } => {
                let mut entry = Map::new();
                entry.insert("kind".into(), "exact".into());
                entry.insert("source_sq".into(), rational_json(source_sq));
                entry.insert("target_sq".into(), rational_json(target_sq));
                if let Ok(cert) = map.maps_sphere_to_sphere(source_sq, target_sq) {
                    entry.insert("certificate".into(), certificate_json(&cert));
                }
                Value::Object(entry)
            }
            IsolatedSpherePair::Algebraic {
                defining_poly,
                source_interval,
                target_interval,
            } => json!({
                "kind": "algebraic",
                "defining_poly": unipoly_json(defining_poly),
                "source_interval": [
                    rational_json(&source_interval.0),
                    rational_json(&source_interval.1),
                ],
                "target_interval": [
                    rational_json(&target_interval.0),
                    rational_json(&target_interval.1),
                ],
            }),
        })
        .collect();
    let continuum = match &spectrum.continuum {
        Some(branch) => json!({
            "numerator": unipoly_json(branch.target_of_source.numerator()),
            "denominator": unipoly_json(branch.target_of_source.denominator()),
        }),
        None => Value::Null,
    };
    json!({ "isolated": isolated, "continuum": continuum })
}

fn invariants_json(map: &RationalMap, inv: &MapInvariants) -> Value {
    json!({
        "degree": inv.degree,
        "embedding_dim": inv.embedding_dim,
        "hyperplane_rank": inv.hyperplane_rank,
        "spectrum": spectrum_json(map, &inv.spectrum),
    })
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::NotProper => json!({ "kind": "not_proper" }),
        Verdict::UnitaryIdentity => json!({ "kind": "unitary_identity" }),
        Verdict::AffineEmbedding { source_sq, target_sq, shift_sq } => json!({
            "kind": "affine_embedding",
            "source_sq": rational_json(source_sq),
            "target_sq": rational_json(target_sq),
            "shift_sq": rational_json(shift_sq),
        }),
        Verdict::Homogeneous { degree } => {
            json!({ "kind": "homogeneous", "degree": degree })
        }
        Verdict::JuxtapositionLike => json!({ "kind": "juxtaposition_like" }),
        Verdict::Unclassified => json!({ "kind": "unclassified" }),
    }
}

fn base_report(command: &str, map: &RationalMap) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("command".into(), command.into());
    out.insert("map".into(), serialize_document(map, &[]).into());
    out
}

pub fn verify_report(map: &RationalMap, cert: &SpherePairCertificate) -> Value {
    let mut out = base_report("verify", map);
    out.insert("source_sq".into(), rational_json(&cert.source_sq));
    out.insert("target_sq".into(), rational_json(&cert.target_sq));
    out.insert("certificate".into(), certificate_json(cert));
    Value::Object(out)
}

pub fn classify_report(
    map: &RationalMap,
    s: &Rational,
    t: &Rational,
    trials: usize,
    seed: u64,
    report: &ClassificationReport,
) -> Value {
    let mut out = base_report("classify", map);
    out.insert("source_sq".into(), rational_json(s));
    out.insert("target_sq".into(), rational_json(t));
    out.insert("trials".into(), trials.into());
    out.insert("seed".into(), seed.into());
    out.insert("verdict".into(), verdict_json(&report.verdict));
    out.insert(
        "invariants".into(),
        report
            .invariants
            .as_ref()
            .map_or(Value::Null, |inv| invariants_json(map, inv)),
    );
    out.insert(
        "outer_certificate".into(),
        report
            .outer_certificate
            .as_ref()
            .map_or(Value::Null, certificate_json),
    );
    out.insert(
        "inner_certificate".into(),
        report
            .inner_certificate
            .as_ref()
            .map_or(Value::Null, certificate_json),
    );
    out.insert(
        "gap".into(),
        report.gap.as_ref().map_or(Value::Null, gap_json),
    );
    Value::Object(out)
}

pub fn invariants_report(
    map: &RationalMap,
    inv: &MapInvariants,
    trials: usize,
    seed: u64,
    exact: bool,
) -> Value {
    let mut out = base_report("invariants", map);
    out.insert("trials".into(), trials.into());
    out.insert("seed".into(), seed.into());
    out.insert("exact".into(), exact.into());
    out.insert("degree".into(), inv.degree.into());
    out.insert("embedding_dim".into(), inv.embedding_dim.into());
    out.insert("hyperplane_rank".into(), inv.hyperplane_rank.into());
    out.insert("spectrum".into(), spectrum_json(map, &inv.spectrum));
    Value::Object(out)
}

pub fn orbit_report(
    map: &RationalMap,
    s: &Rational,
    t: &Rational,
    pairs: &[(Rational, Rational)],
) -> Value {
    let mut out = base_report("orbit", map);
    out.insert("source_sq".into(), rational_json(s));
    out.insert("target_sq".into(), rational_json(t));
    out.insert("count".into(), pairs.len().into());
    let orbit: Vec<Value> = pairs
        .iter()
        .map(|(a, b)| {
            let mut entry = Map::new();
            entry.insert("source_sq".into(), rational_json(a));
            entry.insert("target_sq".into(), rational_json(b));
            if let Ok(cert) = map.maps_sphere_to_sphere(a, b) {
                entry.insert("certificate".into(), certificate_json(&cert));
            }
            Value::Object(entry)
        })
        .collect();
    out.insert("orbit".into(), Value::Array(orbit));
    Value::Object(out)
}

// ---------------------------------------------------------------- recheck

fn field<'a>(value: &'a Value, key: &str) -> Result<&'a Value, String> {
    value
        .get(key)
        .ok_or_else(|| format!("report is missing '{key}'"))
}

fn decode_rational(value: &Value) -> Result<Rational, String> {
    let Value::String(text) = value else {
        return Err("expected a rational encoded as a string".into());
    };
    parse_rational(text)
}

fn decode_usize(value: &Value) -> Result<usize, String> {
    value
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| "expected a nonnegative integer".into())
}

fn decode_scalar(value: &Value) -> Result<RadicalScalar, String> {
    let Value::Array(terms) = value else {
        return Err("expected a scalar encoded as an array of radical terms".into());
    };
    let mut total = RadicalScalar::zero();
    for term in terms {
        let radicand: BigUint = field(term, "radicand")?
            .as_str()
            .and_then(|s| s.parse().ok())
            .ok_or("bad radicand")?;
        let re = decode_rational(field(term, "re")?)?;
        let im = decode_rational(field(term, "im")?)?;
        let coeff = RadicalScalar::radical_term(
            1,
            spheremap_core::GaussRational::new(re, im),
        );
        let root = if radicand.is_zero() {
            return Err("radicand must be positive".into());
        } else {
            RadicalScalar::sqrt_of_positive_rational(&Rational::from_integer(radicand.into()))
                .map_err(|e| e.to_string())?
        };
        total = &total + &(&coeff * &root);
    }
    Ok(total)
}

fn decode_exps(value: &Value) -> Result<Monomial, String> {
    let Value::Array(items) = value else {
        return Err("expected an exponent array".into());
    };
    let mut exps = Vec::with_capacity(items.len());
    for item in items {
        exps.push(
            item.as_u64()
                .and_then(|v| u32::try_from(v).ok())
                .ok_or("bad exponent")?,
        );
    }
    Ok(Monomial::new(exps))
}

fn decode_hermitian(value: &Value) -> Result<HermitianForm, String> {
    let source_dim = decode_usize(field(value, "source_dim")?)?;
    let Value::Array(entries) = field(value, "entries")? else {
        return Err("expected an entry array".into());
    };
    let mut items = Vec::with_capacity(entries.len());
    for entry in entries {
        items.push((
            decode_exps(field(entry, "left")?)?,
            decode_exps(field(entry, "right")?)?,
            decode_scalar(field(entry, "coeff")?)?,
        ));
    }
    HermitianForm::from_entries(source_dim, items).map_err(|e| e.to_string())
}

fn decode_unipoly(value: &Value) -> Result<UniPoly, String> {
    let Value::Array(items) = value else {
        return Err("expected a coefficient array".into());
    };
    let mut coeffs = Vec::with_capacity(items.len());
    for item in items {
        coeffs.push(decode_rational(item)?);
    }
    Ok(UniPoly::from_coeffs(coeffs))
}

/// |p|^2 - t |q|^2 == quotient * (|z|^2 - s), expanded with ring
/// operations only.
fn check_certificate(map: &RationalMap, value: &Value, label: &str) -> Result<(), String> {
    let s = decode_rational(field(value, "source_sq")?)?;
    let t = decode_rational(field(value, "target_sq")?)?;
    let quotient = decode_hermitian(field(value, "quotient")?)?;
    let lhs = &map.squared_norm_numerator()
        - &map.squared_norm_denominator().scale_rational(&t);
    let rhs = &quotient * &HermitianForm::sphere_form(map.source_dim(), &s);
    if lhs != rhs {
        return Err(format!("{label}: recorded quotient does not reproduce |p|^2 - t |q|^2"));
    }
    Ok(())
}

/// |p|^2 == |q|^2 (b0 + b1 (|z|^2 - 1)) + quadratic (|z|^2 - 1)(|z|^2 - s).
fn check_gap(map: &RationalMap, value: &Value, s: &Rational) -> Result<(), String> {
    let b0 = decode_rational(field(value, "b0")?)?;
    let b1 = decode_rational(field(value, "b1")?)?;
    let quadratic = decode_hermitian(field(value, "quadratic")?)?;
    let n = map.source_dim();
    let one = rat_int(1);
    let linear = &map.squared_norm_denominator()
        * &(&HermitianForm::constant(n, RadicalScalar::from_rational(b0))
            + &HermitianForm::sphere_form(n, &one).scale_rational(&b1));
    let quad = &(&quadratic * &HermitianForm::sphere_form(n, &one))
        * &HermitianForm::sphere_form(n, s);
    if &linear + &quad != map.squared_norm_numerator() {
        return Err("gap: recorded decomposition does not reproduce |p|^2".into());
    }
    Ok(())
}

fn check_spectrum(map: &RationalMap, value: &Value, checks: &mut Vec<String>) -> Result<(), String> {
    let Value::Array(isolated) = field(value, "isolated")? else {
        return Err("expected an isolated-pair array".into());
    };
    for (index, pair) in isolated.iter().enumerate() {
        let kind = field(pair, "kind")?.as_str().unwrap_or_default();
        match kind {
            "exact" => {
                check_certificate(map, field(pair, "certificate")?, "spectrum pair")?;
                checks.push(format!("spectrum pair {index} (exact)"));
            }
            "algebraic" => {
                let poly = decode_unipoly(field(pair, "defining_poly")?)?;
                let Value::Array(interval) = field(pair, "source_interval")? else {
                    return Err("expected an interval".into());
                };
                let (Some(lo), Some(hi)) = (interval.first(), interval.get(1)) else {
                    return Err("expected two interval endpoints".into());
                };
                let lo = decode_rational(lo)?;
                let hi = decode_rational(hi)?;
                let sign_change = (poly.eval(&lo) * poly.eval(&hi)).is_negative();
                if !sign_change {
                    return Err(format!(
                        "spectrum pair {index}: defining polynomial does not change sign on the recorded interval"
                    ));
                }
                checks.push(format!("spectrum pair {index} (algebraic)"));
            }
            other => return Err(format!("unknown spectrum pair kind '{other}'")),
        }
    }
    let continuum = field(value, "continuum")?;
    if !continuum.is_null() {
        let num = decode_unipoly(field(continuum, "numerator")?)?;
        let den = decode_unipoly(field(continuum, "denominator")?)?;
        if den.is_zero() {
            return Err("continuum: recorded denominator is zero".into());
        }
        let phi = RationalFunction::new(num, den);
        // Sample the recorded family at inner radii and certify each
        // sampled pair from scratch.
        let mut sampled = 0;
        for (num, den) in [(1i64, 2i64), (1, 3), (2, 5), (3, 7), (1, 7)] {
            let s0 = Rational::new(num.into(), den.into());
            let Some(t0) = phi.eval(&s0) else { continue };
            if t0 <= Rational::zero() {
                return Err("continuum: sampled target radius is not positive".into());
            }
            map.maps_sphere_to_sphere(&s0, &t0)
                .map_err(|e| format!("continuum sample at s = {s0}: {e}"))?;
            sampled += 1;
            if sampled == 3 {
                break;
            }
        }
        if sampled == 0 {
            return Err("continuum: no sample point avoided the recorded poles".into());
        }
        checks.push(format!("continuum branch ({sampled} samples)"));
    }
    Ok(())
}

/// Re-verifies a report produced by any subcommand. Returns the list of
/// identities that were checked, in order.
pub fn recheck(report: &Value) -> Result<Vec<String>, String> {
    let command = field(report, "command")?
        .as_str()
        .ok_or("'command' is not a string")?;
    let map_text = field(report, "map")?
        .as_str()
        .ok_or("'map' is not a string")?;
    let document = parse_document(map_text).map_err(|e| format!("embedded map: {e}"))?;
    let map = document.map;
    let mut checks = Vec::new();

    match command {
        "verify" => {
            let cert = field(report, "certificate")?;
            let s = decode_rational(field(report, "source_sq")?)?;
            if decode_rational(field(cert, "source_sq")?)? != s {
                return Err("certificate radius disagrees with the report".into());
            }
            check_certificate(&map, cert, "certificate")?;
            checks.push("sphere-pair certificate".into());
        }
        "classify" => {
            let s = decode_rational(field(report, "source_sq")?)?;
            let outer = field(report, "outer_certificate")?;
            if !outer.is_null() {
                check_certificate(&map, outer, "outer certificate")?;
                checks.push("outer certificate".into());
            }
            let inner = field(report, "inner_certificate")?;
            if !inner.is_null() {
                check_certificate(&map, inner, "inner certificate")?;
                checks.push("inner certificate".into());
            }
            let gap = field(report, "gap")?;
            if !gap.is_null() {
                check_gap(&map, gap, &s)?;
                checks.push("gap decomposition".into());
            }
            let invariants = field(report, "invariants")?;
            if !invariants.is_null() {
                check_spectrum(&map, field(invariants, "spectrum")?, &mut checks)?;
            }
        }
        "invariants" => {
            let degree = decode_usize(field(report, "degree")?)?;
            if map.degree() as usize != degree {
                return Err(format!(
                    "degree: recomputed {} but the report says {degree}",
                    map.degree()
                ));
            }
            checks.push("degree".into());
            let embedding_dim = decode_usize(field(report, "embedding_dim")?)?;
            if map.embedding_dimension() != embedding_dim {
                return Err(format!(
                    "embedding dimension: recomputed {} but the report says {embedding_dim}",
                    map.embedding_dimension()
                ));
            }
            checks.push("embedding dimension".into());
            let recorded_rank = decode_usize(field(report, "hyperplane_rank")?)?;
            let rank = if field(report, "exact")?.as_bool() == Some(true) {
                spheremap_core::hyperplane::hyperplane_rank_exact(&map)
            } else {
                let trials = decode_usize(field(report, "trials")?)?;
                let seed = field(report, "seed")?.as_u64().ok_or("bad seed")?;
                spheremap_core::hyperplane::hyperplane_rank(&map, trials, seed)
            }
            .map_err(|e| e.to_string())?;
            if rank != recorded_rank {
                return Err(format!(
                    "hyperplane rank: recomputed {rank} but the report says {recorded_rank}"
                ));
            }
            checks.push("hyperplane rank".into());
            let spectrum = field(report, "spectrum")?;
            check_spectrum(&map, spectrum, &mut checks)?;
            let recomputed = invariant_spheres(&map).map_err(|e| e.to_string())?;
            if spectrum_json(&map, &recomputed) != *spectrum {
                return Err("spectrum: recomputed value disagrees with the report".into());
            }
            checks.push("spectrum recomputation".into());
        }
        "orbit" => {
            let Value::Array(orbit) = field(report, "orbit")? else {
                return Err("'orbit' is not an array".into());
            };
            for (index, entry) in orbit.iter().enumerate() {
                check_certificate(
                    &map,
                    field(entry, "certificate")?,
                    &format!("orbit pair {index}"),
                )?;
            }
            checks.push(format!("{} orbit certificates", orbit.len()));
        }
        other => return Err(format!("unknown command '{other}'")),
    }
    Ok(checks)
}
