//! Exact arithmetic and certificates for rational maps that send spheres to
//! spheres.
//!
//! Everything in this crate is computed over exact scalars: arbitrary
//! precision rationals extended by square roots of squarefree integers and
//! the imaginary unit. There are no floating point numbers and no epsilon
//! comparisons anywhere; every verdict is backed by a witness that can be
//! re-expanded and checked structurally.
//!
//! The main objects are [`map::RationalMap`] (a tuple of polynomial
//! components over a common polynomial denominator) and the real forms
//! derived from it: the squared norm of the numerator and denominator as
//! [`hermitian::HermitianForm`]s. A map sends the sphere of squared radius
//! `s` to the sphere of squared radius `t` exactly when
//! `||p||^2 - t |q|^2` is divisible by `||z||^2 - s`; the quotient of that
//! division is the certificate this crate produces, stores, and re-checks.
//!
//! On top of the certificate layer sit the numeric invariants used to tell
//! maps apart (degree, embedding dimension, generic hyperplane rank, the
//! spectrum of invariant spheres), canonical constructions (tensor powers of
//! the identity, juxtapositions, affine embeddings, paddings, unitary
//! twists), the projective machinery that transports sphere pairs along
//! linear fractional automorphisms, and a classifier for maps between
//! annuli built from those pieces.
//!
//! # Parallelism
//!
//! The `parallel` feature (on by default) switches the independent-task
//! loops (hyperplane trials, corpus sweeps) to rayon. Results are
//! bit-identical to the sequential fallback: every trial derives its
//! randomness from `seed + index` and reductions are order-independent.

#![forbid(unsafe_code)]

pub mod classify;
pub mod construct;
pub mod error;
pub mod hermitian;
pub mod hyperplane;
pub mod linalg;
pub mod map;
pub mod monomial;
pub mod parallel;
pub mod poly;
pub mod projective;
pub mod radical;
pub mod scalar;
pub mod spectrum;
pub mod unipoly;

pub use error::Error;
pub use hermitian::HermitianForm;
pub use map::{RationalMap, SpherePairCertificate};
pub use monomial::Monomial;
pub use poly::Poly;
pub use radical::RadicalScalar;
pub use scalar::{GaussRational, Rational};
