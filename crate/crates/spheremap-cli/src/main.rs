use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::One;
use spheremap_core::classify::{classify_annulus_map, MapInvariants, Verdict};
use spheremap_core::construct::{affine_embedding, homogeneous_map, juxtapose};
use spheremap_core::hyperplane::{hyperplane_rank, hyperplane_rank_exact};
use spheremap_core::projective::sphere_orbit;
use spheremap_core::spectrum::{invariant_spheres, IsolatedSpherePair, SphereSpectrum};
use spheremap_core::{Rational, RationalMap};

use spheremap_cli::document::{parse_document, serialize_document, LoadError, MapDocument};
use spheremap_cli::parse::parse_rational;
use spheremap_cli::report;

/// Exact certificates and invariants for rational maps between spheres.
///
/// Maps are read from plain-text documents (see `construct` for ready-made
/// examples). All arithmetic is exact; a verdict is never a float estimate.
#[derive(Parser)]
#[command(name = "spheremap", version)]
struct Cli {
    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized hyperplane-rank estimate
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Random hyperplanes drawn per rank estimate
    #[arg(long, global = true, default_value_t = 8)]
    trials: usize,

    /// Cap the worker thread pool (default: one worker per core)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print degree, embedding dimension, hyperplane rank and the
    /// invariant-sphere spectrum of a map
    Invariants {
        file: PathBuf,
        /// Compute the hyperplane rank symbolically instead of sampling;
        /// slower, but independent of --seed and --trials
        #[arg(long = "exact-kf")]
        exact_kf: bool,
    },
    /// Certify that a source sphere maps into a target sphere
    Verify {
        file: PathBuf,
        /// Squared radius of the source sphere, e.g. 1/4
        source_sq: String,
        /// Squared radius of the target sphere
        target_sq: String,
    },
    /// Classify a map that is proper between the annuli bounded by the
    /// unit sphere and the given inner pair
    Classify {
        file: PathBuf,
        source_sq: String,
        target_sq: String,
    },
    /// Iterate the automorphism induced on inner spheres, listing the
    /// certified pairs it generates
    Orbit {
        file: PathBuf,
        source_sq: String,
        target_sq: String,
        /// Number of iterates to certify
        count: u32,
    },
    /// Print a ready-made map document to stdout
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Re-verify a JSON report by re-expanding every recorded identity
    Recheck { file: PathBuf },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// The degree-d model whose components are the monomials of degree d
    /// with square-root multinomial coefficients
    Hd { n: usize, degree: u32 },
    /// Weighted juxtaposition of two maps sharing a source: squared
    /// norms combine as (1-w) |f|^2 + w |g|^2
    Juxt {
        file1: PathBuf,
        file2: PathBuf,
        /// Weight w on the second map, strictly between 0 and 1
        weight: String,
    },
    /// Degree-one embedding of n variables with a constant shift,
    /// proper for the inner pair (source_sq, target_sq)
    Embed {
        n: usize,
        target_dim: usize,
        source_sq: String,
        target_sq: String,
    },
}

enum Failure {
    /// Bad input: unreadable file, malformed document, malformed rational.
    Usage(String),
    /// The mathematics refused: a certificate failed or cannot exist.
    Certificate(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Certificate(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Certificate(m) => m,
        }
    }
}

impl From<spheremap_core::Error> for Failure {
    fn from(e: spheremap_core::Error) -> Self {
        Failure::Certificate(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        spheremap_core::parallel::configure_threads(threads);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn load_map(path: &Path) -> Result<MapDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| match e {
        LoadError::Parse(p) => Failure::Usage(format!("{}: {p}", path.display())),
        LoadError::Math(m) => {
            Failure::Certificate(format!("{}: declared sphere pair failed: {m}", path.display()))
        }
    })
}

fn radius(text: &str, what: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::Usage(format!("{what}: {e}")))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn spectrum_text(spectrum: &SphereSpectrum) -> String {
    let mut out = String::from("invariant sphere pairs:\n");
    if spectrum.isolated.is_empty() && spectrum.continuum.is_none() {
        out.push_str("  none\n");
        return out;
    }
    for pair in &spectrum.isolated {
        match pair {
            IsolatedSpherePair::Exact { source_sq, target_sq } => {
                let _ = writeln!(out, "  s = {source_sq} -> t = {target_sq}");
            }
            IsolatedSpherePair::Algebraic {
                defining_poly,
                source_interval,
                target_interval,
            } => {
                let _ = writeln!(
                    out,
                    "  s in ({}, {}) with {defining_poly} = 0 -> t in ({}, {})",
                    source_interval.0, source_interval.1, target_interval.0, target_interval.1,
                );
            }
        }
    }
    if let Some(branch) = &spectrum.continuum {
        let _ = writeln!(out, "  continuum: t = {}", branch.target_of_source);
    }
    out
}

fn verdict_text(verdict: &Verdict) -> String {
    match verdict {
        Verdict::NotProper => "not proper: a boundary sphere-pair certificate failed".into(),
        Verdict::UnitaryIdentity => "unitary identity".into(),
        Verdict::AffineEmbedding { source_sq, target_sq, shift_sq } => format!(
            "affine embedding for the pair ({source_sq}, {target_sq}) with squared shift {shift_sq}"
        ),
        Verdict::Homogeneous { degree } => format!("homogeneous of degree {degree}"),
        Verdict::JuxtapositionLike => {
            "juxtaposition-like: sphere continuum with a hyperplane-rank deficit".into()
        }
        Verdict::Unclassified => "unclassified".into(),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Invariants { file, exact_kf } => {
            let map = load_map(file)?.map;
            let rank = if *exact_kf {
                hyperplane_rank_exact(&map)?
            } else {
                hyperplane_rank(&map, cli.trials, cli.seed)?
            };
            let inv = MapInvariants {
                degree: map.degree(),
                embedding_dim: map.embedding_dimension(),
                hyperplane_rank: rank,
                spectrum: invariant_spheres(&map)?,
            };
            if cli.json {
                print_json(&report::invariants_report(
                    &map, &inv, cli.trials, cli.seed, *exact_kf,
                ));
            } else {
                println!("degree: {}", inv.degree);
                println!("embedding dimension: {}", inv.embedding_dim);
                println!("hyperplane rank: {}", inv.hyperplane_rank);
                print!("{}", spectrum_text(&inv.spectrum));
            }
            Ok(())
        }
        Command::Verify { file, source_sq, target_sq } => {
            let map = load_map(file)?.map;
            let s = radius(source_sq, "source_sq")?;
            let t = radius(target_sq, "target_sq")?;
            let cert = map.maps_sphere_to_sphere(&s, &t)?;
            if cli.json {
                print_json(&report::verify_report(&map, &cert));
            } else {
                let (a, b) = cert.quotient.bidegree();
                println!(
                    "VERIFIED: the sphere of squared radius {s} maps into the sphere of squared radius {t}"
                );
                println!("quotient bidegree: ({a}, {b})");
            }
            Ok(())
        }
        Command::Classify { file, source_sq, target_sq } => {
            let map = load_map(file)?.map;
            let s = radius(source_sq, "source_sq")?;
            let t = radius(target_sq, "target_sq")?;
            let outcome = classify_annulus_map(&map, &s, &t, cli.trials, cli.seed)?;
            if cli.json {
                print_json(&report::classify_report(
                    &map, &s, &t, cli.trials, cli.seed, &outcome,
                ));
            } else {
                println!("verdict: {}", verdict_text(&outcome.verdict));
                if let Some(inv) = &outcome.invariants {
                    println!("degree: {}", inv.degree);
                    println!("embedding dimension: {}", inv.embedding_dim);
                    println!("hyperplane rank: {}", inv.hyperplane_rank);
                    print!("{}", spectrum_text(&inv.spectrum));
                }
                if let Some(gap) = &outcome.gap {
                    println!("gap decomposition: b0 = {}, b1 = {}", gap.b0, gap.b1);
                }
            }
            if outcome.verdict == Verdict::NotProper {
                return Err(Failure::Certificate(format!(
                    "the map is not proper between the unit sphere and the pair ({s}, {t})"
                )));
            }
            Ok(())
        }
        Command::Orbit { file, source_sq, target_sq, count } => {
            let map = load_map(file)?.map;
            let s = radius(source_sq, "source_sq")?;
            let t = radius(target_sq, "target_sq")?;
            let pairs = sphere_orbit(&map, &s, &t, *count)?;
            if cli.json {
                print_json(&report::orbit_report(&map, &s, &t, &pairs));
            } else {
                for (a, b) in &pairs {
                    println!("s = {a} -> t = {b}");
                }
            }
            Ok(())
        }
        Command::Construct { kind } => {
            let (map, pairs) = construct(kind)?;
            let certified: Vec<(Rational, Rational)> = pairs
                .into_iter()
                .filter(|(s, t)| map.maps_sphere_to_sphere(s, t).is_ok())
                .collect();
            let text = serialize_document(&map, &certified);
            if cli.json {
                print_json(&serde_json::json!({ "command": "construct", "map": text }));
            } else {
                print!("{text}");
            }
            Ok(())
        }
        Command::Recheck { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let checks = report::recheck(&value).map_err(Failure::Certificate)?;
            if cli.json {
                print_json(&serde_json::json!({ "command": "recheck", "checked": checks }));
            } else {
                for check in &checks {
                    println!("checked: {check}");
                }
                println!("OK: {} identities verified", checks.len());
            }
            Ok(())
        }
    }
}

fn construct(kind: &ConstructKind) -> Result<(RationalMap, Vec<(Rational, Rational)>), Failure> {
    match kind {
        ConstructKind::Hd { n, degree } => {
            if *n == 0 {
                return Err(Failure::Usage("n must be at least 1".into()));
            }
            let map = homogeneous_map(*n, *degree);
            let one = Rational::one();
            let quarter = Rational::new(1.into(), 4.into());
            let image = quarter.pow(*degree as i32);
            Ok((map, vec![(one.clone(), one), (quarter, image)]))
        }
        ConstructKind::Juxt { file1, file2, weight } => {
            let f = load_map(file1)?.map;
            let g = load_map(file2)?.map;
            let w = radius(weight, "weight")?;
            let map = juxtapose(&f, &g, &w)?;
            let one = Rational::one();
            Ok((map, vec![(one.clone(), one)]))
        }
        ConstructKind::Embed { n, target_dim, source_sq, target_sq } => {
            let s = radius(source_sq, "source_sq")?;
            let t = radius(target_sq, "target_sq")?;
            let map = affine_embedding(*n, *target_dim, &s, &t)?;
            let one = Rational::one();
            Ok((map, vec![(one.clone(), one), (s, t)]))
        }
    }
}
