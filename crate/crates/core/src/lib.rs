//! Coalition games, weighted majority rules and classifier-ensemble fusion.
//!
//! The numeric core is generic over the scalar type. Game weights are usually
//! exact rationals ([`Rational`]) so that winning/losing and stalemate
//! decisions are tie-exact; probability work runs on `f64` ([`Skills`]) but
//! accepts any [`Field`] scalar, including rationals when an exact answer is
//! wanted.
//!
//! Modules:
//! - [`model`]: games, coalitions, skill and decision profiles.
//! - [`power`]: Banzhaf and Shapley-Shubik indices (exact and Monte Carlo).
//! - [`wmr`]: weighted majority rules as decision tables, unique-rule
//!   enumeration, trade robustness and the disagreement network.
//! - [`jury`]: group competence, decisiveness, log-odds weights, teams.
//! - [`scoring`]: positional scoring rules and Condorcet analysis.
//! - [`fusion`]: combining classifier outputs.
//! - [`io`]: the text and CSV formats read and written by the CLI.

pub mod error;
pub mod fusion;
pub mod io;
pub mod jury;
pub mod model;
pub mod power;
pub mod scalar;
pub mod scoring;
pub mod wmr;

mod sampling;

pub use error::{Error, Result};
pub use model::{Coalition, DecisionProfile, ExplicitGame, SimpleGame, SkillProfile, VotingGame};
pub use scalar::{Field, Real, Scalar};

/// Exact rational used for game weights and quotas.
pub type Rational = num_rational::Rational64;
/// Arbitrary-precision rational for exact probability work that would
/// overflow [`Rational`].
pub type BigRational = num_rational::BigRational;

/// A voting game with exact rational weights.
pub type Game = VotingGame<Rational>;
/// A voting game with floating-point weights.
pub type FloatGame = VotingGame<f64>;
/// Skill probabilities in `f64`.
pub type Skills = SkillProfile<f64>;
/// Skill probabilities held as exact rationals.
pub type ExactSkills = SkillProfile<Rational>;
