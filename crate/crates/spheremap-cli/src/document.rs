//! Line-based map documents. A document describes one rational map and,
//! optionally, sphere pairs the author claims it respects:
//!
//! ```text
//! # nonhomogeneous cubic
//! n= 2
//! N= 6
//! component= 2/5*sqrt(5)*z1^3
//! component= ...
//! denominator= 1
//! sphere_pair= 1 1
//! sphere_pair= 1/4 1/16
//! ```
//!
//! Blank lines and `#` comments are skipped. `denominator` defaults to 1.
//! Declared pairs are re-certified while loading, so a parsed document
//! never carries an unverified claim.

use std::fmt;

use spheremap_core::{Poly, Rational, RationalMap, SpherePairCertificate};

use crate::parse::{parse_expression, parse_rational, ParseError};

#[derive(Debug)]
pub struct MapDocument {
    pub map: RationalMap,
    pub declared_pairs: Vec<SpherePairCertificate>,
}

#[derive(Debug)]
pub enum LoadError {
    Parse(ParseError),
    Math(spheremap_core::Error),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Parse(e) => write!(f, "{e}"),
            LoadError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LoadError {}

impl From<ParseError> for LoadError {
    fn from(e: ParseError) -> Self {
        LoadError::Parse(e)
    }
}

impl From<spheremap_core::Error> for LoadError {
    fn from(e: spheremap_core::Error) -> Self {
        LoadError::Math(e)
    }
}

fn structural(line: usize, message: impl Into<String>) -> LoadError {
    LoadError::Parse(ParseError {
        line,
        column: 1,
        message: message.into(),
    })
}

pub fn parse_document(text: &str) -> Result<MapDocument, LoadError> {
    let mut n: Option<(usize, usize)> = None;
    let mut big_n: Option<(usize, usize)> = None;
    let mut component_lines: Vec<(usize, String)> = Vec::new();
    let mut denominator_line: Option<(usize, String)> = None;
    let mut pair_lines: Vec<(usize, Rational, Rational)> = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let lineno = index + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(structural(
                lineno,
                format!("expected 'key= value', found '{line}'"),
            ));
        };
        let key = key.trim();
        let value = value.trim();
        match key {
            "n" | "N" => {
                let slot = if key == "n" { &mut n } else { &mut big_n };
                if slot.is_some() {
                    return Err(structural(lineno, format!("duplicate key '{key}'")));
                }
                let parsed: usize = value.parse().map_err(|_| {
                    structural(lineno, format!("'{value}' is not a dimension"))
                })?;
                if parsed == 0 {
                    return Err(structural(lineno, format!("{key} must be at least 1")));
                }
                *slot = Some((lineno, parsed));
            }
            "component" => component_lines.push((lineno, value.to_string())),
            "denominator" => {
                if denominator_line.is_some() {
                    return Err(structural(lineno, "duplicate key 'denominator'"));
                }
                denominator_line = Some((lineno, value.to_string()));
            }
            "sphere_pair" => {
                let mut parts = value.split_whitespace();
                let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next())
                else {
                    return Err(structural(
                        lineno,
                        "sphere_pair takes exactly two rationals",
                    ));
                };
                let s = parse_rational(a).map_err(|e| structural(lineno, e))?;
                let t = parse_rational(b).map_err(|e| structural(lineno, e))?;
                pair_lines.push((lineno, s, t));
            }
            other => {
                return Err(structural(lineno, format!("unknown key '{other}'")));
            }
        }
    }

    let last_line = text.lines().count().max(1);
    let Some((_, n)) = n else {
        return Err(structural(last_line, "missing key 'n'"));
    };
    let Some((n_line, big_n)) = big_n else {
        return Err(structural(last_line, "missing key 'N'"));
    };
    if component_lines.len() != big_n {
        return Err(structural(
            n_line,
            format!(
                "N= {big_n} but the document has {} component line{}",
                component_lines.len(),
                if component_lines.len() == 1 { "" } else { "s" }
            ),
        ));
    }

    let mut components = Vec::with_capacity(big_n);
    for (lineno, text) in &component_lines {
        components.push(parse_expression(text, n, *lineno)?);
    }
    let denominator = match &denominator_line {
        Some((lineno, text)) => parse_expression(text, n, *lineno)?,
        None => Poly::one(n),
    };

    let map = RationalMap::new(n, components, denominator)?;

    let mut declared_pairs = Vec::with_capacity(pair_lines.len());
    for (_, s, t) in pair_lines {
        declared_pairs.push(map.maps_sphere_to_sphere(&s, &t)?);
    }

    Ok(MapDocument { map, declared_pairs })
}

pub fn serialize_document(map: &RationalMap, pairs: &[(Rational, Rational)]) -> String {
    let mut out = String::new();
    out.push_str(&format!("n= {}\n", map.source_dim()));
    out.push_str(&format!("N= {}\n", map.target_dim()));
    for p in map.components() {
        out.push_str(&format!("component= {p}\n"));
    }
    out.push_str(&format!("denominator= {}\n", map.denominator()));
    for (s, t) in pairs {
        out.push_str(&format!("sphere_pair= {s} {t}\n"));
    }
    out
}
