//! Exact-arithmetic invariants of surface singularities built from Newton
//! polyhedra: Milnor numbers by rank and by closed formula, Teissier
//! mu*-triples, monodromy zeta divisors, and a pipeline that turns pairs of
//! plane projective curves into certified candidate mu-Zariski pairs.
//!
//! Everything is computed over the rationals; there is no floating point in
//! this crate. All randomness (generic plane sections, randomized suites) is
//! seeded and reproducible.

pub mod error;
pub mod invariants;
pub mod linalg;
pub mod local;
pub mod newton;
pub mod pipeline;
pub mod poly;
pub mod weighted;
pub mod zeta;

pub use error::Error;
pub use invariants::{MuStar, SectionCase, SectionPrediction};
pub use newton::{Face, NewtonPolyhedron};
pub use poly::{Exponents, Polynomial, Rational};
pub use weighted::{SingularityProfile, WeightVector, WlyTriple};
pub use zeta::{LambdaExpr, ZetaDivisor};
