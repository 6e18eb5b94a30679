//! Error type shared by every module in the crate.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in exact-arithmetic land.
///
/// Payloads are strings rendered by the site that raised the error, so the
/// variants stay `Clone + PartialEq` and printable without dragging scalar
/// types into the signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Scalar text did not match the input grammar.
    Parse(String),
    /// Division by an exact zero.
    DivisionByZero,
    /// Arithmetic combined two distinct quadratic extensions.
    MixedFields { left: u64, right: u64 },
    /// A radicand was zero or too large to certify square-free reduction.
    InvalidRadicand(u64),
    /// An evaluation argument lay outside the map's domain.
    OutOfDomain(String),
    /// A discontinuous map was evaluated exactly at a partition point.
    AtBreakpoint(String),
    /// Two maps with incompatible domains were combined.
    DomainMismatch(String),
    /// A map constructor rejected its data.
    InvalidMap(String),
    /// A measure constructor rejected its data.
    InvalidMeasure(String),
    /// A measure operation mixed window and periodic extents.
    ExtentMismatch(String),
    /// A basic interval would receive infinite mass under transfer.
    NonSigmaFinite(String),
    /// The eigen relation failed; payload renders the residual.
    NotEigen(String),
    /// A measure that had to be a probability was not one.
    NotProbability(String),
    /// An image endpoint of a claimed Markov partition missed the partition.
    NotMarkov(String),
    /// The transition matrix is not irreducible.
    NotIrreducible(String),
    /// A family parameter sat below the admissible threshold.
    BelowThreshold { lambda: String, threshold: String },
    /// A lift operation received a map that is not a degree-one lift.
    NotDegreeOne,
    /// An operation required a constant absolute slope and there is none.
    NotConstantSlope,
    /// An eventually periodic itinerary was given with a non-primitive period.
    NonPrimitivePeriod(String),
    /// A finite itinerary was shorter than the requested depth.
    InsufficientItinerary { have: usize, need: usize },
    /// A parameter search found the same sign at both interval ends.
    NoSignChange(String),
    /// A sign probe could not be decided at the supported depth.
    UndecidedSign(String),
    /// A projection to the circle would carry infinite mass.
    InfiniteProjection,
    /// A subdivision or report hypothesis failed before the run started.
    HypothesisViolated(String),
    /// A scalar parameter violated a documented range restriction.
    InvalidParameter(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::MixedFields { left, right } => write!(
                f,
                "cannot mix sqrt({left}) and sqrt({right}) in one expression"
            ),
            Error::InvalidRadicand(d) => write!(f, "invalid radicand {d}"),
            Error::OutOfDomain(s) => write!(f, "argument outside domain: {s}"),
            Error::AtBreakpoint(s) => {
                write!(f, "map is undefined at partition point {s}")
            }
            Error::DomainMismatch(s) => write!(f, "domain mismatch: {s}"),
            Error::InvalidMap(s) => write!(f, "invalid map: {s}"),
            Error::InvalidMeasure(s) => write!(f, "invalid measure: {s}"),
            Error::ExtentMismatch(s) => write!(f, "extent mismatch: {s}"),
            Error::NonSigmaFinite(s) => {
                write!(f, "transfer is not sigma-finite: {s}")
            }
            Error::NotEigen(s) => write!(f, "eigen relation fails: {s}"),
            Error::NotProbability(s) => write!(f, "not a probability measure: {s}"),
            Error::NotMarkov(s) => write!(f, "partition is not Markov: {s}"),
            Error::NotIrreducible(s) => {
                write!(f, "transition matrix is not irreducible: {s}")
            }
            Error::BelowThreshold { lambda, threshold } => write!(
                f,
                "slope {lambda} is below the admissible threshold {threshold}"
            ),
            Error::NotDegreeOne => write!(f, "map is not a degree-one lift"),
            Error::NotConstantSlope => write!(f, "map has no constant absolute slope"),
            Error::NonPrimitivePeriod(s) => write!(f, "period word is not primitive: {s}"),
            Error::InsufficientItinerary { have, need } => write!(
                f,
                "finite itinerary has {have} symbols but depth {need} was requested"
            ),
            Error::NoSignChange(s) => write!(f, "no sign change over the search range: {s}"),
            Error::UndecidedSign(s) => write!(f, "sign probe undecided: {s}"),
            Error::InfiniteProjection => {
                write!(f, "projection to the circle carries infinite mass")
            }
            Error::HypothesisViolated(s) => write!(f, "hypothesis violated: {s}"),
            Error::InvalidParameter(s) => write!(f, "invalid parameter: {s}"),
        }
    }
}

impl core::error::Error for Error {}
