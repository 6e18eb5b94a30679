//! Itinerary coding on the invariant Cantor set of a family lift, and
//! the parameter search that prescribes the turning orbit's itinerary.
//!
//! For a family parameter `lambda` the set of points whose forward lift
//! orbit never leaves `[0, 1]` is a Cantor set, coded by two cells:
//! `L = [1/lambda, 2/lambda]` on the rising branch and
//! `R = [1 - 1/lambda, 1]` on the falling one. Each cell maps onto
//! `[0, 1]`, so every 0-1 sequence names exactly one point, obtained as
//! a nested intersection of inverse-branch images that shrink by exactly
//! `lambda` per symbol.
//!
//! The turning value of the lift, reduced mod one, sweeps `[0, 1]`
//! affinely as `lambda` runs over `[2n+1, 2n+3]`. Matching it against a
//! coded point pins parameters with a prescribed turning itinerary: a
//! quadratic solve when the itinerary is a fixed point, exact-sign
//! bisection otherwise. Eventually periodic turning orbits certify the
//! Markov property (countable turning-orbit closure); the block-family
//! itineraries, alternating runs of 0s and 1s whose n-th run has length
//! n or n+1, are the classical source of aperiodic yet countable-closure
//! codes, and orbits following them are reported as evidence, never as a
//! certificate.

use alloc::format;
use alloc::vec::Vec;

use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::lift::{family_threshold, LambdaFamilyMap};
use crate::map::AffineLaw;
use crate::scalar::ExactScalar;

/// One coding symbol: `L` is the rising-branch cell (written 0), `R` the
/// falling-branch cell (written 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    L,
    R,
}

impl Symbol {
    /// The 0/1 digit of the symbol.
    pub fn digit(self) -> u8 {
        match self {
            Symbol::L => 0,
            Symbol::R => 1,
        }
    }

    fn other(self) -> Symbol {
        match self {
            Symbol::L => Symbol::R,
            Symbol::R => Symbol::L,
        }
    }
}

/// Which blocks of a block-family itinerary take the longer length.
///
/// The n-th block (1-indexed) has length `n` normally and `n + 1` when
/// selected long; blocks alternate symbols starting with `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockChoices {
    AllShort,
    AllLong,
    /// Explicit per-block choices; blocks beyond the list are short.
    Explicit(Vec<bool>),
}

impl BlockChoices {
    fn is_long(&self, block: usize) -> bool {
        match self {
            BlockChoices::AllShort => false,
            BlockChoices::AllLong => true,
            BlockChoices::Explicit(longs) => longs.get(block - 1).copied().unwrap_or(false),
        }
    }
}

/// A 0-1 itinerary, finite or infinitely extendable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Itinerary {
    Finite(Vec<Symbol>),
    EventuallyPeriodic {
        preperiod: Vec<Symbol>,
        period: Vec<Symbol>,
    },
    Blocks(BlockChoices),
}

impl Itinerary {
    /// An eventually periodic itinerary with a primitivity-checked
    /// period.
    pub fn eventually_periodic(preperiod: Vec<Symbol>, period: Vec<Symbol>) -> Result<Itinerary> {
        if period.is_empty() {
            return Err(Error::NonPrimitivePeriod("empty period".into()));
        }
        let k = period.len();
        for d in 1..k {
            if k % d == 0 && (0..k).all(|i| period[i] == period[i % d]) {
                return Err(Error::NonPrimitivePeriod(format!(
                    "period of length {k} is a power of its first {d} symbols"
                )));
            }
        }
        Ok(Itinerary::EventuallyPeriodic { preperiod, period })
    }

    /// The purely periodic single-symbol itinerary `s^inf`.
    pub fn constant(symbol: Symbol) -> Itinerary {
        Itinerary::EventuallyPeriodic {
            preperiod: Vec::new(),
            period: alloc::vec![symbol],
        }
    }

    /// The first `len` symbols. Finite itineraries that are too short
    /// are an error; the other forms extend forever.
    pub fn prefix(&self, len: usize) -> Result<Vec<Symbol>> {
        match self {
            Itinerary::Finite(word) => {
                if word.len() < len {
                    return Err(Error::InsufficientItinerary {
                        have: word.len(),
                        need: len,
                    });
                }
                Ok(word[..len].to_vec())
            }
            Itinerary::EventuallyPeriodic { preperiod, period } => {
                let mut out = Vec::with_capacity(len);
                for i in 0..len {
                    if i < preperiod.len() {
                        out.push(preperiod[i]);
                    } else {
                        out.push(period[(i - preperiod.len()) % period.len()]);
                    }
                }
                Ok(out)
            }
            Itinerary::Blocks(choices) => {
                let mut out = Vec::with_capacity(len);
                let mut symbol = Symbol::L;
                let mut block = 1usize;
                while out.len() < len {
                    let run = block + usize::from(choices.is_long(block));
                    for _ in 0..run {
                        if out.len() == len {
                            break;
                        }
                        out.push(symbol);
                    }
                    symbol = symbol.other();
                    block += 1;
                }
                Ok(out)
            }
        }
    }
}

/// Expands a block-family itinerary to an explicit word.
pub fn expand_block_family(choices: &BlockChoices, len: usize) -> Vec<Symbol> {
    Itinerary::Blocks(choices.clone())
        .prefix(len)
        .expect("block families extend forever")
}

/// The two coding cells of a family parameter, with the inverse branch
/// laws.
#[derive(Clone, Debug)]
pub struct CodingCore {
    lambda: ExactScalar,
    cells: [(ExactScalar, ExactScalar); 2],
    inverses: [AffineLaw; 2],
}

/// Builds the coding cells `L = [1/lambda, 2/lambda]` and
/// `R = [1 - 1/lambda, 1]` for a family parameter.
pub fn coding_core(lambda: &ExactScalar) -> Result<CodingCore> {
    let threshold = family_threshold();
    if lambda < &threshold {
        return Err(Error::BelowThreshold {
            lambda: format!("{lambda}"),
            threshold: format!("{threshold}"),
        });
    }
    let one = ExactScalar::one();
    let inv = lambda.recip()?;
    let l = (inv.clone(), ExactScalar::from_int(2) * &inv);
    let r = (&one - &inv, one.clone());
    // Above the threshold the parameter exceeds three, so the cells are
    // disjoint and the coding is a full shift.
    assert!(l.1 < r.0);
    // Inverse of the rising branch y = lambda x - 1 and of the falling
    // branch y = lambda (1 - x).
    let g0 = AffineLaw::new(inv.clone(), inv.clone())?;
    let g1 = AffineLaw::new(-&inv, one)?;
    Ok(CodingCore {
        lambda: lambda.clone(),
        cells: [l, r],
        inverses: [g0, g1],
    })
}

impl CodingCore {
    /// The family parameter.
    pub fn lambda(&self) -> &ExactScalar {
        &self.lambda
    }

    /// Closure of a symbol's cell.
    pub fn cell(&self, symbol: Symbol) -> (&ExactScalar, &ExactScalar) {
        let (lo, hi) = &self.cells[symbol.digit() as usize];
        (lo, hi)
    }

    /// The symbol whose cell contains `x`, if either does.
    pub fn symbol_of(&self, x: &ExactScalar) -> Option<Symbol> {
        for symbol in [Symbol::L, Symbol::R] {
            let (lo, hi) = self.cell(symbol);
            if x >= lo && x <= hi {
                return Some(symbol);
            }
        }
        None
    }

    /// The fixed point of a symbol's branch: `1/(lambda-1)` for `L`,
    /// `lambda/(lambda+1)` for `R`.
    pub fn fixed_point(&self, symbol: Symbol) -> ExactScalar {
        let one = ExactScalar::one();
        match symbol {
            Symbol::L => (&self.lambda - &one).recip().unwrap(),
            Symbol::R => {
                let den = (&self.lambda + &one).recip().unwrap();
                &self.lambda * &den
            }
        }
    }

    fn inverse(&self, symbol: Symbol) -> &AffineLaw {
        &self.inverses[symbol.digit() as usize]
    }
}

/// Nested-preimage enclosure of the point with the given itinerary,
/// refined through `depth` symbols. Width is exactly `lambda^-depth`,
/// and deeper enclosures nest inside shallower ones.
pub fn point_from_itinerary(
    core: &CodingCore,
    itinerary: &Itinerary,
    depth: usize,
) -> Result<Enclosure> {
    if depth == 0 {
        return Err(Error::InvalidParameter("enclosure depth must be positive".into()));
    }
    let word = itinerary.prefix(depth)?;
    let mut lo = ExactScalar::zero();
    let mut hi = ExactScalar::one();
    for symbol in word.iter().rev() {
        let law = core.inverse(*symbol);
        let (a, b) = law.image_of(&lo, &hi);
        lo = a;
        hi = b;
    }
    Enclosure::new(lo, hi)
}

/// The exact coded point of an eventually periodic itinerary, as the
/// fixed point of the composed inverse branches.
pub fn exact_point(core: &CodingCore, itinerary: &Itinerary) -> Result<ExactScalar> {
    let Itinerary::EventuallyPeriodic { preperiod, period } = itinerary else {
        return Err(Error::InvalidParameter(
            "exact coded points need an eventually periodic itinerary".into(),
        ));
    };
    let mut comp = core.inverse(period[period.len() - 1]).clone();
    for symbol in period[..period.len() - 1].iter().rev() {
        comp = core.inverse(*symbol).after(&comp);
    }
    // comp contracts by lambda^-k, so the fixed point is unique.
    let one = ExactScalar::one();
    let mut x = comp.intercept().try_div(&(&one - comp.slope()))?;
    for symbol in preperiod.iter().rev() {
        x = core.inverse(*symbol).eval(&x);
    }
    Ok(x)
}

/// The turning target `(lambda - 1)/2 - n`, which sweeps `[0, 1]`
/// affinely as `lambda` runs over `[2n+1, 2n+3]`.
pub fn turning_target(lambda: &ExactScalar, n: u32) -> ExactScalar {
    (lambda - &ExactScalar::one()) / &ExactScalar::from_int(2) - &ExactScalar::from_int(n as i64)
}

/// Finds a family parameter in `[2n+1, 2n+3]` whose turning value codes
/// the given itinerary.
///
/// The two constant itineraries have quadratic solutions and come back
/// as exact points, verified against the turning identity; everything
/// else goes through [`find_lambda_by_bisection`].
pub fn find_lambda_for_itinerary(
    n: u32,
    itinerary: &Itinerary,
    width: &ExactScalar,
) -> Result<Enclosure> {
    check_sweep_parameters(n, width)?;
    if let Itinerary::EventuallyPeriodic { preperiod, period } = itinerary {
        if preperiod.is_empty() && period.len() == 1 {
            let nn = ExactScalar::from_int(n as i64);
            let np1 = &nn + &ExactScalar::one();
            let radicand = match period[0] {
                // (lambda-1)/2 - n = 1/(lambda-1)
                Symbol::L => &nn * &nn + &ExactScalar::from_int(2),
                // (lambda-1)/2 - n = lambda/(lambda+1)
                Symbol::R => {
                    &nn * &nn + &(ExactScalar::from_int(4) * &nn) + &ExactScalar::from_int(2)
                }
            };
            let lambda = np1 + &sqrt_scalar(&radicand)?;
            let target = turning_target(&lambda, n);
            let core = coding_core(&lambda)?;
            assert_eq!(target, core.fixed_point(period[0]));
            return Ok(Enclosure::point(lambda));
        }
    }
    find_lambda_by_bisection(n, itinerary, width)
}

fn sqrt_scalar(x: &ExactScalar) -> Result<ExactScalar> {
    let r = x
        .as_rational()
        .ok_or_else(|| Error::InvalidParameter(format!("radicand {x} is not rational")))?;
    ExactScalar::sqrt_of_rational(r)
}

/// Exact-sign bisection for the turning-itinerary equation on
/// `[2n+1, 2n+3]`, at any requested enclosure width.
///
/// Each probe compares the turning target against a coded-point
/// enclosure deepened until the sign is decided; the endpoints always
/// have opposite signs because coded points stay strictly inside
/// `(0, 1)` while the target sweeps from 0 to 1.
pub fn find_lambda_by_bisection(
    n: u32,
    itinerary: &Itinerary,
    width: &ExactScalar,
) -> Result<Enclosure> {
    check_sweep_parameters(n, width)?;
    let mut lo = ExactScalar::from_int(2 * n as i64 + 1);
    let mut hi = ExactScalar::from_int(2 * n as i64 + 3);
    let sign_at = |lambda: &ExactScalar| -> Result<i8> {
        let target = turning_target(lambda, n);
        let core = coding_core(lambda)?;
        let mut depth = 24usize;
        loop {
            let enclosure = point_from_itinerary(&core, itinerary, depth)?;
            if &target < enclosure.lo() {
                return Ok(-1);
            }
            if &target > enclosure.hi() {
                return Ok(1);
            }
            if depth >= 512 {
                return Err(Error::UndecidedSign(format!(
                    "target at lambda = {lambda} stayed inside the depth-{depth} \
                     enclosure; the probe may solve the equation exactly"
                )));
            }
            depth *= 2;
        }
    };
    if sign_at(&lo)? >= 0 || sign_at(&hi)? <= 0 {
        return Err(Error::NoSignChange(format!(
            "turning target does not cross the coded point over [{lo}, {hi}]"
        )));
    }
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &ExactScalar::from_int(2);
        if sign_at(&mid)? < 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Enclosure::new(lo, hi)
}

fn check_sweep_parameters(n: u32, width: &ExactScalar) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "sweep interval [2n+1, 2n+3] needs n >= 2 to clear the family threshold, got n = {n}"
        )));
    }
    if !width.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "enclosure width must be positive, got {width}"
        )));
    }
    Ok(())
}

/// Outcome of the turning-orbit classification.
#[derive(Clone, Debug)]
pub enum MarkovClass {
    /// The turning orbit repeats exactly: it is eventually periodic, its
    /// closure is finite, and the parameter is Markov.
    MarkovCertificate {
        preperiod: usize,
        period: usize,
        orbit: Vec<ExactScalar>,
    },
    /// No repeat was found, every orbit point lies in a coding cell, and
    /// the itinerary so far is a block-family prefix. Heuristic evidence
    /// against eventual periodicity, certifying nothing.
    NonMarkovEvidence {
        complete_blocks: usize,
        orbit: Vec<ExactScalar>,
    },
    /// No repeat within the depth and no recognized structure.
    Unknown {
        distinct: usize,
        orbit: Vec<ExactScalar>,
    },
}

/// Iterates the circle orbit of the turning value exactly and reports
/// the strongest classification the finite run supports.
pub fn classify_markov(lambda: &ExactScalar, depth: usize) -> Result<MarkovClass> {
    if depth == 0 {
        return Err(Error::InvalidParameter("orbit depth must be positive".into()));
    }
    let family = LambdaFamilyMap::make(lambda)?;
    let core = coding_core(lambda)?;
    let mut orbit: Vec<ExactScalar> = Vec::with_capacity(depth);
    let mut x = family.c().fract();
    for _ in 0..depth {
        if let Some(j) = orbit.iter().position(|p| p == &x) {
            let period = orbit.len() - j;
            return Ok(MarkovClass::MarkovCertificate {
                preperiod: j,
                period,
                orbit,
            });
        }
        orbit.push(x.clone());
        x = family.map().evaluate(&x)?.fract();
    }
    let symbols: Option<Vec<Symbol>> = orbit.iter().map(|p| core.symbol_of(p)).collect();
    if let Some(word) = symbols {
        if let Some(complete_blocks) = block_family_prefix_length(&word) {
            return Ok(MarkovClass::NonMarkovEvidence {
                complete_blocks,
                orbit,
            });
        }
    }
    Ok(MarkovClass::Unknown {
        distinct: orbit.len(),
        orbit,
    })
}

/// Number of complete blocks when the word is a block-family prefix
/// (alternating runs starting with `L`, the n-th of length n or n+1),
/// `None` otherwise.
fn block_family_prefix_length(word: &[Symbol]) -> Option<usize> {
    if word.first() != Some(&Symbol::L) {
        return None;
    }
    let mut runs: Vec<usize> = Vec::new();
    let mut current = word[0];
    let mut run = 0usize;
    for &s in word {
        if s == current {
            run += 1;
        } else {
            runs.push(run);
            current = s;
            run = 1;
        }
    }
    // Runs must alternate by construction; check the lengths.
    let complete = runs.len();
    runs.push(run);
    for (i, &len) in runs.iter().enumerate() {
        let n = i + 1;
        let is_last = i + 1 == runs.len();
        let fits = len == n || len == n + 1;
        if !fits && !(is_last && len <= n + 1) {
            return None;
        }
    }
    Some(complete)
}
