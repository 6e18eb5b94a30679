//! Exact computation with piecewise affine interval maps and degree-one
//! circle lifts.
//!
//! Everything in this crate is exact: scalars live in the rationals or in a
//! real quadratic extension of the rationals, maps and measures are stored as
//! finite lists of exact breakpoints, and every comparison is decided by
//! integer arithmetic. No floating point is used anywhere in the core.
//!
//! The crate is `no_std` (with `alloc`). Rendering, file formats, and the
//! command line front end live in the companion `slopelab` crate.
//!
//! Module map:
//!
//! * [`scalar`]: the exact scalar field (rationals and quadratic surds).
//! * [`map`]: piecewise affine maps of the interval and degree-one lifts,
//!   with evaluation, composition, and iteration.
//! * [`measure`]: step-density measures and the induced mass-transfer
//!   operator, eigen residuals, and normalised transfer steps.
//! * [`semiconj`]: constant-slope models built from eigen-measures.
//! * [`markov`]: transition matrices of Markov partitions, certified and
//!   exact Perron data, and slope entropy with rigorous enclosures.
//! * [`lift`]: the two-branch lift family, the diagonal-crossing
//!   transitivity test, iterated image covers, and circle projections.
//! * [`coding`]: itineraries, nested preimage enclosures, and the parameter
//!   search for prescribed kneading data.
//! * [`subdivision`]: the bad-set refinement experiment and the
//!   impossibility report for maintaining a finite eigen-measure.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod coding;
pub mod enclosure;
pub mod error;
pub mod lift;
pub mod map;
pub mod markov;
pub mod measure;
pub mod scalar;
pub mod semiconj;
pub mod subdivision;

pub use enclosure::Enclosure;
pub use error::{Error, Result};
pub use scalar::ExactScalar;
