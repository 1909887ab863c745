//! The sphere spectrum of a rational map: every pair of radii (s, t) such
//! that the map carries |z|^2 = s into |w|^2 = t, found by exact
//! elimination rather than sampling.
//!
//! Treat s and t as two extra polynomial variables and reduce
//! |p|^2 - t |q|^2 modulo |z|^2 - s. The remainder, grouped by monomials
//! in z and zbar, yields real linear conditions c_i(s) = t d_i(s). Cross
//! multiplying eliminates t: every solution s is a common root of the
//! minors c_i d_j - c_j d_i, hence a root of their gcd G.
//!
//! G = 0 identically means the conditions stay proportional for all s:
//! a one-parameter family t = phi(s). Otherwise the solutions are the
//! finitely many roots of G in (0, 1], each recovered exactly when
//! rational and isolated with certified interval enclosures when not.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::map::RationalMap;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::scalar::{rat, rational_sign, Rational};
use crate::unipoly::{RationalFunction, RootLocation, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsolatedSpherePair {
    Exact {
        source_sq: Rational,
        target_sq: Rational,
    },
    /// Irrational pair: source_sq is the unique root of defining_poly in
    /// its open interval; target_sq lies in the second interval.
    Algebraic {
        defining_poly: UniPoly,
        source_interval: (Rational, Rational),
        target_interval: (Rational, Rational),
    },
}

/// One-parameter family of invariant spheres, t = phi(s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuumBranch {
    pub target_of_source: RationalFunction,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SphereSpectrum {
    /// Isolated pairs, ascending in the source radius.
    pub isolated: Vec<IsolatedSpherePair>,
    pub continuum: Option<ContinuumBranch>,
}

/// A linear condition c(s) - t d(s) = 0 with rational coefficients.
struct Condition {
    c: UniPoly,
    d: UniPoly,
}

pub fn invariant_spheres(map: &RationalMap) -> Result<SphereSpectrum> {
    let conditions = sphere_conditions(map)?;
    if conditions.iter().all(|eq| eq.d.is_zero()) {
        return Err(Error::DegenerateParametricSystem(
            "no condition involves the target radius",
        ));
    }
    // Eliminate t: gcd of the pairwise cross minors. Zero means every
    // pair of conditions is proportional, i.e. a continuum.
    let mut eliminant = UniPoly::zero();
    'outer: for i in 0..conditions.len() {
        for j in i + 1..conditions.len() {
            let minor = &(&conditions[i].c * &conditions[j].d)
                - &(&conditions[j].c * &conditions[i].d);
            eliminant = eliminant.gcd(&minor);
            if !eliminant.is_zero() && eliminant.degree() == 0 {
                break 'outer;
            }
        }
    }
    if eliminant.is_zero() {
        return continuum_branch(map, &conditions).map(|branch| SphereSpectrum {
            isolated: Vec::new(),
            continuum: Some(branch),
        });
    }
    if eliminant.degree() == 0 {
        return Ok(SphereSpectrum::default());
    }
    isolated_pairs(map, &conditions, &eliminant)
}

/// Reduces |p|^2 - t |q|^2 modulo |z|^2 - s in the polynomial ring with
/// variables z_1..z_n, zbar_1..zbar_n, s, t and splits the remainder into
/// real conditions, one per monomial in (z, zbar) and real/imaginary part.
fn sphere_conditions(map: &RationalMap) -> Result<Vec<Condition>> {
    let n = map.source_dim();
    let vars = 2 * n + 2;
    let s_index = 2 * n;
    let t_index = 2 * n + 1;
    let p_norm = map.squared_norm_numerator().to_poly().extend_vars(vars);
    let q_norm = map.squared_norm_denominator().to_poly().extend_vars(vars);
    let h = &p_norm - &(&q_norm * &Poly::var(vars, t_index));
    let mut sphere = Poly::zero(vars);
    for i in 0..n {
        let mut exps = vec![0u32; vars];
        exps[i] = 1;
        exps[n + i] = 1;
        sphere.add_term(Monomial::new(exps), crate::radical::RadicalScalar::one());
    }
    sphere = &sphere - &Poly::var(vars, s_index);
    let (_, remainder) = h.divide_by(&sphere)?;

    // Group by the (z, zbar) part; each group is c(s) - t d(s).
    let mut groups: BTreeMap<(Vec<u32>, bool), (Vec<Rational>, Vec<Rational>)> = BTreeMap::new();
    for (m, coeff) in remainder.iter_terms() {
        let gauss = coeff.as_gauss().ok_or_else(|| {
            Error::RadicalGramEntry(format!("coefficient {coeff} of a reduced squared norm"))
        })?;
        let s_deg = m.exp(s_index) as usize;
        let t_deg = m.exp(t_index);
        assert!(t_deg <= 1, "reduction is linear in the target radius");
        let key_base = m.exps()[..2 * n].to_vec();
        for (part, value) in [(false, gauss.re), (true, gauss.im)] {
            if value.is_zero() {
                continue;
            }
            let entry = groups.entry((key_base.clone(), part)).or_default();
            let side = if t_deg == 0 { &mut entry.0 } else { &mut entry.1 };
            if side.len() <= s_deg {
                side.resize(s_deg + 1, Rational::zero());
            }
            // The remainder carries -t d(s), so negate the t side.
            side[s_deg] += if t_deg == 0 { value.clone() } else { -value.clone() };
        }
    }
    let conditions: Vec<Condition> = groups
        .into_values()
        .map(|(c, d)| Condition { c: UniPoly::from_coeffs(c), d: UniPoly::from_coeffs(d) })
        .filter(|eq| !eq.c.is_zero() || !eq.d.is_zero())
        .collect();
    if conditions.is_empty() {
        return Err(Error::DegenerateParametricSystem(
            "squared-norm reduction vanished identically",
        ));
    }
    Ok(conditions)
}

fn continuum_branch(map: &RationalMap, conditions: &[Condition]) -> Result<ContinuumBranch> {
    let pivot = conditions
        .iter()
        .find(|eq| !eq.d.is_zero())
        .expect("checked by the caller");
    let phi = RationalFunction::new(pivot.c.clone(), pivot.d.clone());
    for eq in conditions {
        let lhs = &eq.c * &phi.den;
        let rhs = &phi.num * &eq.d;
        if lhs != rhs {
            return Err(Error::CertificateFailure(
                "continuum branch".into(),
                format!("condition {} - t ({}) is not satisfied by t = {phi}", eq.c, eq.d),
            ));
        }
    }
    // Independent spot check through the certificate machinery at the
    // first sample radius where the family gives a genuine sphere.
    for s0 in [rat(1, 2), rat(1, 3), rat(3, 4)] {
        let Some(t0) = phi.eval(&s0) else { continue };
        if t0 > Rational::zero() {
            map.maps_sphere_to_sphere(&s0, &t0)?;
            break;
        }
    }
    Ok(ContinuumBranch { target_of_source: phi })
}

fn isolated_pairs(
    map: &RationalMap,
    conditions: &[Condition],
    eliminant: &UniPoly,
) -> Result<SphereSpectrum> {
    let squarefree = eliminant.squarefree_part();
    let roots = squarefree.roots_in_unit_halfopen();
    let mut defining = squarefree.clone();
    for root in &roots {
        if let RootLocation::Exact(r) = root {
            let linear = UniPoly::from_coeffs(vec![-r.clone(), Rational::from_integer(1.into())]);
            defining = defining.divexact(&linear).expect("simple rational root");
        }
    }
    let defining = defining.primitive_integer();
    let mut isolated = Vec::new();
    for root in roots {
        match root {
            RootLocation::Exact(s0) => {
                let Some(eq) = conditions.iter().find(|eq| !eq.d.eval(&s0).is_zero()) else {
                    continue;
                };
                let t0 = eq.c.eval(&s0) / eq.d.eval(&s0);
                if t0 <= Rational::zero() {
                    continue;
                }
                map.maps_sphere_to_sphere(&s0, &t0)?;
                isolated.push(IsolatedSpherePair::Exact { source_sq: s0, target_sq: t0 });
            }
            RootLocation::Isolated { lo, hi } => {
                if let Some(pair) =
                    algebraic_pair(conditions, &squarefree, &defining, lo, hi)
                {
                    isolated.push(pair);
                }
            }
        }
    }
    Ok(SphereSpectrum { isolated, continuum: None })
}

/// Recovers the target interval for an irrational source radius isolated
/// in (lo, hi). Returns None when the associated target is not positive.
fn algebraic_pair(
    conditions: &[Condition],
    squarefree: &UniPoly,
    defining: &UniPoly,
    mut lo: Rational,
    mut hi: Rational,
) -> Option<IsolatedSpherePair> {
    // d(s0) = 0 exactly when the part of the eliminant vanishing at s0
    // divides d, i.e. when gcd(squarefree, d) has a root in the isolating
    // interval. Same test decides c(s0) = 0, which would force t = 0.
    let vanishes_at_root = |p: &UniPoly| -> bool {
        if p.is_zero() {
            return true;
        }
        let g = squarefree.gcd(p);
        g.degree() >= 1 && g.count_roots_open(&lo, &hi) > 0
    };
    let eq = conditions.iter().find(|eq| !vanishes_at_root(&eq.d))?;
    if vanishes_at_root(&eq.c) {
        return None;
    }
    // Shrink the interval until interval arithmetic gives both c and d a
    // definite sign; the enclosure of t = c/d is then rigorous.
    let two = rat(2, 1);
    loop {
        let c_range = eval_on_interval(&eq.c, &lo, &hi);
        let d_range = eval_on_interval(&eq.d, &lo, &hi);
        if sign_definite(&c_range) && sign_definite(&d_range) {
            let t_range = divide_ranges(&c_range, &d_range);
            if t_range.0 <= Rational::zero() {
                return None;
            }
            return Some(IsolatedSpherePair::Algebraic {
                defining_poly: defining.clone(),
                source_interval: (lo, hi),
                target_interval: t_range,
            });
        }
        let mid = (&lo + &hi) / &two;
        // The interval isolates an irrational root, so the rational
        // midpoint is never a root of the squarefree eliminant.
        if rational_sign(&squarefree.eval(&mid)) == rational_sign(&squarefree.eval(&lo)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Rigorous enclosure of p over [lo, hi], assuming 0 <= lo <= hi.
fn eval_on_interval(p: &UniPoly, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut min = Rational::zero();
    let mut max = Rational::zero();
    let mut lo_pow = Rational::from_integer(1.into());
    let mut hi_pow = Rational::from_integer(1.into());
    for (k, coeff) in p.coeffs().iter().enumerate() {
        if k > 0 {
            lo_pow *= lo;
            hi_pow *= hi;
        }
        if coeff.is_zero() {
            continue;
        }
        let (a, b) = (coeff * &lo_pow, coeff * &hi_pow);
        if a <= b {
            min += a;
            max += b;
        } else {
            min += b;
            max += a;
        }
    }
    (min, max)
}

fn sign_definite(range: &(Rational, Rational)) -> bool {
    range.0 > Rational::zero() || range.1 < Rational::zero()
}

fn divide_ranges(c: &(Rational, Rational), d: &(Rational, Rational)) -> (Rational, Rational) {
    let quotients = [&c.0 / &d.0, &c.0 / &d.1, &c.1 / &d.0, &c.1 / &d.1];
    let min = quotients.iter().min().expect("nonempty").clone();
    let max = quotients.iter().max().expect("nonempty").clone();
    (min, max)
}
