//! Closed exact intervals used as certified enclosures.

use core::fmt;

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// A closed interval `[lo, hi]` with exact endpoints, `lo <= hi`.
///
/// Enclosures certify a value: the enclosed number is known to lie between
/// the endpoints, and the width bounds the uncertainty exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    lo: ExactScalar,
    hi: ExactScalar,
}

impl Enclosure {
    /// Builds `[lo, hi]`, rejecting `lo > hi`.
    pub fn new(lo: ExactScalar, hi: ExactScalar) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidParameter(format!(
                "enclosure endpoints out of order: [{lo}, {hi}]"
            )));
        }
        Ok(Enclosure { lo, hi })
    }

    /// The degenerate enclosure `[x, x]`.
    pub fn point(x: ExactScalar) -> Self {
        Enclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    /// Lower endpoint.
    pub fn lo(&self) -> &ExactScalar {
        &self.lo
    }

    /// Upper endpoint.
    pub fn hi(&self) -> &ExactScalar {
        &self.hi
    }

    /// Exact width `hi - lo`.
    pub fn width(&self) -> ExactScalar {
        self.hi.try_sub(&self.lo).expect("endpoints share a field")
    }

    /// True when `x` lies in the closed interval.
    pub fn contains(&self, x: &ExactScalar) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// True when the whole of `other` lies inside `self`.
    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// True when the enclosure is a single point.
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

use alloc::format;
