//! The two-branch lift family, the diagonal-crossing transitivity
//! certificate, projection to the circle, iterated image covers, and
//! measure transport between line and circle.
//!
//! The family member with parameter `lambda` is the continuous degree-one
//! lift through the dots `(k, k-1)` and `(k+b, k+c)` for every integer
//! `k`, where `b = (lambda+1)/(2 lambda)` and `c = (lambda-1)/2`. Both
//! branches have absolute slope exactly `lambda`, every integer drops by
//! exactly one, and the local maxima clear the raised diagonal `y = x+1`
//! by the margin `(lambda^2 - 4 lambda - 1)/(2 lambda)`, which is
//! nonnegative exactly when `lambda >= 2 + sqrt(5)`.
//!
//! Transitivity is certified through that margin: when every branch
//! closure contains an exact solution of `F(x) = x - 1` and of
//! `F(x) = x + 1`, every branch image spans a full period around itself
//! and the projected circle map is topologically transitive. The
//! certificate is constructive (the crossing points are returned); its
//! absence proves nothing, and the checker never claims
//! non-transitivity.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::map::{AffineLaw, MapKind, PiecewiseAffineMap};
use crate::measure::{Extent, StepDensityMeasure};
use crate::scalar::ExactScalar;

/// The smallest parameter accepted by [`LambdaFamilyMap::make`]:
/// `2 + sqrt(5)`, the root of the margin polynomial.
pub fn family_threshold() -> ExactScalar {
    ExactScalar::from_int(2) + ExactScalar::sqrt_of_integer(5).unwrap()
}

/// A member of the two-branch lift family, with its derived constants.
#[derive(Clone, Debug)]
pub struct LambdaFamilyMap {
    lambda: ExactScalar,
    b: ExactScalar,
    c: ExactScalar,
    margin: ExactScalar,
    map: PiecewiseAffineMap,
    relaxed: bool,
}

impl LambdaFamilyMap {
    /// Builds the family member, requiring `lambda >= 2 + sqrt(5)` so the
    /// transitivity margin is nonnegative.
    pub fn make(lambda: &ExactScalar) -> Result<Self> {
        let threshold = family_threshold();
        if lambda < &threshold {
            return Err(Error::BelowThreshold {
                lambda: format!("{lambda}"),
                threshold: format!("{threshold}"),
            });
        }
        Self::build(lambda, false)
    }

    /// Builds a family member below the threshold for negative tests.
    ///
    /// The shape still needs `lambda > 1` (otherwise the inner breakpoint
    /// leaves the fundamental domain). The result is flagged relaxed and
    /// its margin may be negative.
    pub fn make_relaxed(lambda: &ExactScalar) -> Result<Self> {
        if lambda <= &ExactScalar::one() {
            return Err(Error::InvalidParameter(format!(
                "family shape needs lambda > 1, got {lambda}"
            )));
        }
        let relaxed = lambda < &family_threshold();
        Self::build(lambda, relaxed)
    }

    fn build(lambda: &ExactScalar, relaxed: bool) -> Result<Self> {
        let one = ExactScalar::one();
        let two = ExactScalar::from_int(2);
        let b = (lambda + &one).try_div(&(&two * lambda))?;
        let c = (lambda - &one) / &two;
        let map = PiecewiseAffineMap::lift_from_values(
            alloc::vec![ExactScalar::zero(), b.clone()],
            alloc::vec![-&one, c.clone()],
            true,
        )?;
        // The connect-the-dots data must give slopes exactly +/-lambda.
        assert_eq!(map.laws()[0].slope(), lambda);
        assert_eq!(&-map.laws()[1].slope(), lambda);
        // Margin above the raised diagonal at the local maximum, in
        // closed form.
        let margin = &c - &b - &one;
        let closed_form =
            (lambda * lambda - &(ExactScalar::from_int(4) * lambda) - &one).try_div(&(two * lambda))?;
        assert_eq!(margin, closed_form);
        Ok(LambdaFamilyMap {
            lambda: lambda.clone(),
            b,
            c,
            margin,
            map,
            relaxed,
        })
    }

    /// The slope parameter.
    pub fn lambda(&self) -> &ExactScalar {
        &self.lambda
    }

    /// The inner breakpoint `(lambda+1)/(2 lambda)` of the fundamental
    /// domain.
    pub fn b(&self) -> &ExactScalar {
        &self.b
    }

    /// The local maximum value `(lambda-1)/2`.
    pub fn c(&self) -> &ExactScalar {
        &self.c
    }

    /// `F(b) - b - 1`, the clearance over the raised diagonal.
    pub fn margin(&self) -> &ExactScalar {
        &self.margin
    }

    /// The underlying degree-one lift.
    pub fn map(&self) -> &PiecewiseAffineMap {
        &self.map
    }

    /// True when the parameter is below the certified threshold.
    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }
}

/// One branch's exact diagonal crossings: `F(down) = down - 1` and
/// `F(up) = up + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchWitnesses {
    pub branch: usize,
    pub down: ExactScalar,
    pub up: ExactScalar,
}

/// Outcome of the diagonal-crossing transitivity test.
#[derive(Clone, Debug)]
pub enum Transitivity {
    /// Every branch closure crosses both displaced diagonals; the
    /// projected circle map is topologically transitive.
    Certified { witnesses: Vec<BranchWitnesses> },
    /// Some branch misses one of the diagonals. `extreme` is the closest
    /// displacement `F(x) - x` the branch attains toward the missing
    /// diagonal `wanted` (+1 or -1). Says nothing about actual
    /// transitivity.
    HypothesisFails {
        branch: usize,
        wanted: i8,
        extreme: ExactScalar,
    },
}

impl Transitivity {
    /// True for the certified outcome.
    pub fn is_certified(&self) -> bool {
        matches!(self, Transitivity::Certified { .. })
    }
}

/// Certifies transitivity of a constant-slope degree-one lift by solving
/// `F(x) = x - 1` and `F(x) = x + 1` exactly on every branch closure.
///
/// When every branch contains both crossings, each branch image spans a
/// full period on both sides and the circle map is transitive. The
/// witnesses are the exact crossing points. A failed hypothesis reports
/// the branch and the extremal displacement reached, and is silent about
/// transitivity itself.
pub fn transitivity_check(f: &PiecewiseAffineMap) -> Result<Transitivity> {
    if f.kind() != MapKind::CircleLift {
        return Err(Error::NotDegreeOne);
    }
    let Some(lambda) = f.is_constant_slope() else {
        return Err(Error::NotConstantSlope);
    };
    let one = ExactScalar::one();
    let mut witnesses = Vec::with_capacity(f.branch_count());
    for i in 0..f.branch_count() {
        let (u, v) = f.cell(i);
        let law = &f.laws()[i];
        let mut crossings = [None, None];
        for (slot, offset) in [(-1i8, -&one), (1i8, one.clone())] {
            // law(x) = x + offset, solved exactly; constant displacement
            // (slope one) never crosses.
            if law.slope() == &one {
                continue;
            }
            let x = (&offset - law.intercept()).try_div(&(law.slope() - &one))?;
            if x >= u && x <= v {
                crossings[((slot + 1) / 2) as usize] = Some(x);
            }
        }
        match crossings {
            [Some(down), Some(up)] => {
                // After translating the up-crossing into the unit period
                // above the down-crossing, the pair spans less than one
                // period while its images span more than two.
                let gap = (&up - &down).abs();
                assert!(gap < one);
                let k = if up > down {
                    ExactScalar::zero()
                } else {
                    one.clone()
                };
                let spread = law.eval(&up) + &k - law.eval(&down);
                assert!(spread > ExactScalar::from_int(2));
                witnesses.push(BranchWitnesses {
                    branch: i,
                    down,
                    up,
                });
            }
            [down, _] => {
                let wanted: i8 = if down.is_none() { -1 } else { 1 };
                let d_u = law.eval(&u) - &u;
                let d_v = law.eval(&v) - &v;
                let extreme = if wanted == 1 {
                    if d_u >= d_v { d_u } else { d_v }
                } else if d_u <= d_v {
                    d_u
                } else {
                    d_v
                };
                return Ok(Transitivity::HypothesisFails {
                    branch: i,
                    wanted,
                    extreme,
                });
            }
        }
    }
    // Both diagonals crossed within a single branch forces expansion
    // beyond factor two.
    assert!(lambda.abs() > ExactScalar::from_int(2));
    Ok(Transitivity::Certified { witnesses })
}

/// A circle map, stored as its degree-one lift together with the induced
/// self-map of `[0, 1]`.
#[derive(Clone, Debug)]
pub struct CircleMap {
    lift: PiecewiseAffineMap,
    interval_form: PiecewiseAffineMap,
}

impl CircleMap {
    /// The defining lift.
    pub fn lift(&self) -> &PiecewiseAffineMap {
        &self.lift
    }

    /// The mod-one reduction as an interval map on `[0, 1]`, cut at every
    /// point whose lift value crosses an integer. Usually discontinuous
    /// at those cuts even when the lift is continuous, so the form is
    /// kept pointwise-undefined on its partition.
    pub fn interval_form(&self) -> &PiecewiseAffineMap {
        &self.interval_form
    }

    /// Evaluates the circle map on a representative in `[0, 1)`.
    pub fn evaluate(&self, x: &ExactScalar) -> Result<ExactScalar> {
        let value = self.lift.evaluate(&x.fract())?;
        Ok(value.fract())
    }

    /// The constant slope of the underlying lift, when it has one.
    pub fn is_constant_slope(&self) -> Option<ExactScalar> {
        self.lift.is_constant_slope()
    }
}

/// Projects a degree-one lift to the circle.
///
/// The lift and the projection commute by construction; the constructor
/// still verifies the identity at every cell midpoint of the interval
/// form.
pub fn project_to_circle(f: &PiecewiseAffineMap) -> Result<CircleMap> {
    if f.kind() != MapKind::CircleLift {
        return Err(Error::NotDegreeOne);
    }
    let one = ExactScalar::one();
    let zero = ExactScalar::zero();
    let mut breakpoints = alloc::vec![ExactScalar::zero()];
    let mut laws: Vec<AffineLaw> = Vec::new();
    for (cell_lo, cell_hi, law) in f.window_cells(&zero, &one)? {
        // Clip to the fundamental interval, then split the cell wherever
        // the lift value crosses an integer, shifting each piece's law
        // back into [0, 1].
        let lo = if cell_lo > zero { cell_lo } else { zero.clone() };
        let hi = if cell_hi < one { cell_hi } else { one.clone() };
        if lo >= hi {
            continue;
        }
        let (img_lo, img_hi) = law.image_of(&lo, &hi);
        let mut cuts = alloc::vec![lo.clone()];
        let mut k = img_lo.floor_int() + BigInt::one();
        loop {
            let level = ExactScalar::from(k.clone());
            if level >= img_hi {
                break;
            }
            if level > img_lo {
                cuts.push(law.invert(&level));
            }
            k += BigInt::one();
        }
        cuts.push(hi.clone());
        crate::scalar::sort_dedup(&mut cuts);
        for w in cuts.windows(2) {
            let mid = (&w[0] + &w[1]) / &ExactScalar::from_int(2);
            let drop = ExactScalar::from(law.eval(&mid).floor_int());
            laws.push(AffineLaw::new(
                law.slope().clone(),
                law.intercept() - &drop,
            )?);
            if &w[1] < &one {
                breakpoints.push(w[1].clone());
            }
        }
    }
    breakpoints.push(one);
    let interval_form = PiecewiseAffineMap::interval_from_laws(breakpoints, laws, false)?;
    let circle = CircleMap {
        lift: f.clone(),
        interval_form,
    };
    for i in 0..circle.interval_form.branch_count() {
        let (u, v) = circle.interval_form.cell(i);
        let mid = (u + v) / &ExactScalar::from_int(2);
        assert_eq!(
            circle.interval_form.evaluate(&mid)?,
            circle.lift.evaluate(&mid)?.fract(),
            "projection must commute with the lift"
        );
    }
    Ok(circle)
}

/// Outcome of iterating the image of an open interval under a lift.
#[derive(Clone, Debug)]
pub enum Coverage {
    /// At `step`, one image component had length at least one and
    /// strictly contained integer translates of both diagonal witnesses;
    /// the images then grow by a full period on both sides forever, so
    /// the union of all images is the whole line. `lengths[n]` is the
    /// total image length after `n` steps.
    CoversLine {
        step: usize,
        lengths: Vec<ExactScalar>,
    },
    /// No certificate within the step or component budget. Proves
    /// nothing.
    Inconclusive {
        steps_run: usize,
        lengths: Vec<ExactScalar>,
    },
}

const COVER_COMPONENT_CAP: usize = 64;

/// Iterates the exact image of the open interval `(lo, hi)` under a
/// constant-slope degree-one lift, merging components exactly, until the
/// diagonal-witness certificate applies or a budget runs out.
pub fn images_cover(
    f: &PiecewiseAffineMap,
    lo: &ExactScalar,
    hi: &ExactScalar,
    max_steps: usize,
) -> Result<Coverage> {
    if lo >= hi {
        return Err(Error::InvalidParameter(format!(
            "need a nonempty open interval, got ({lo}, {hi})"
        )));
    }
    let witnesses = match transitivity_check(f)? {
        Transitivity::Certified { witnesses } => witnesses,
        Transitivity::HypothesisFails { .. } => Vec::new(),
    };
    let certificate = witnesses.first().map(|w| {
        (w.down.fract(), w.up.fract())
    });
    let mut components = alloc::vec![(lo.clone(), hi.clone())];
    let total = |cs: &[(ExactScalar, ExactScalar)]| {
        crate::scalar::sum(&cs.iter().map(|(a, b)| b - a).collect::<Vec<_>>())
    };
    let mut lengths = alloc::vec![total(&components)];
    let contains_witness_pair = |component: &(ExactScalar, ExactScalar)| -> bool {
        let Some((down, up)) = &certificate else {
            return false;
        };
        let (a, b) = component;
        if b - a < ExactScalar::one() {
            return false;
        }
        let strictly_holds = |w: &ExactScalar| {
            let k = ExactScalar::from((a - w).floor_int() + BigInt::one());
            let t = w + &k;
            &t > a && &t < b
        };
        strictly_holds(down) && strictly_holds(up)
    };
    for step in 0..=max_steps {
        if components.iter().any(|c| contains_witness_pair(c)) {
            return Ok(Coverage::CoversLine { step, lengths });
        }
        if step == max_steps {
            break;
        }
        // Image of each open component is one open interval; merge
        // strictly overlapping results.
        let mut images = Vec::with_capacity(components.len());
        for (a, b) in &components {
            let mut min: Option<ExactScalar> = None;
            let mut max: Option<ExactScalar> = None;
            for (u, v, law) in f.window_cells(a, b)? {
                let piece_lo = if &u > a { u } else { a.clone() };
                let piece_hi = if &v < b { v } else { b.clone() };
                let (w_lo, w_hi) = law.image_of(&piece_lo, &piece_hi);
                if min.as_ref().is_none_or(|m| &w_lo < m) {
                    min = Some(w_lo);
                }
                if max.as_ref().is_none_or(|m| &w_hi > m) {
                    max = Some(w_hi);
                }
            }
            images.push((min.unwrap(), max.unwrap()));
        }
        images.sort();
        let mut merged: Vec<(ExactScalar, ExactScalar)> = Vec::new();
        for (a, b) in images {
            match merged.last_mut() {
                Some((_, last_hi)) if a < *last_hi => {
                    if b > *last_hi {
                        *last_hi = b;
                    }
                }
                _ => merged.push((a, b)),
            }
        }
        if merged.len() > COVER_COMPONENT_CAP {
            return Ok(Coverage::Inconclusive {
                steps_run: step,
                lengths,
            });
        }
        components = merged;
        lengths.push(total(&components));
    }
    Ok(Coverage::Inconclusive {
        steps_run: max_steps,
        lengths,
    })
}

/// Pushes a finite window measure on the line down to the circle by
/// summing densities over integer translates. The result is a window
/// measure on `[0, 1]` with the same total mass.
///
/// A periodic measure with mass has infinitely many translates stacking
/// onto every circle point, so it is rejected.
pub fn project_measure_to_circle(mu: &StepDensityMeasure) -> Result<StepDensityMeasure> {
    match mu.extent() {
        Extent::Periodic => {
            if mu.is_zero() {
                return StepDensityMeasure::window(
                    alloc::vec![ExactScalar::zero(), ExactScalar::one()],
                    alloc::vec![ExactScalar::zero()],
                );
            }
            Err(Error::InfiniteProjection)
        }
        Extent::Window => {
            let (w_lo, w_hi) = mu.window_bounds()?;
            // Collect every breakpoint reduced mod one, including the
            // window ends.
            let mut cuts = alloc::vec![ExactScalar::zero(), ExactScalar::one()];
            for p in mu.breakpoints() {
                cuts.push(p.fract());
            }
            crate::scalar::sort_dedup(&mut cuts);
            let mut densities = Vec::with_capacity(cuts.len() - 1);
            for w in cuts.windows(2) {
                let mid = (&w[0] + &w[1]) / &ExactScalar::from_int(2);
                // Sum the density over all translates meeting the window.
                let mut k = (&w_lo - &mid).floor_int();
                let mut acc = ExactScalar::zero();
                loop {
                    let x = &mid + &ExactScalar::from(k.clone());
                    if x > w_hi {
                        break;
                    }
                    if x >= w_lo {
                        acc = acc + &mu.density_at(&x);
                    }
                    k += BigInt::one();
                }
                densities.push(acc);
            }
            StepDensityMeasure::window(cuts, densities)
        }
    }
}

/// Places a circle measure (window on `[0, 1]`) into the period
/// `[k, k+1]` upstairs. A right inverse of [`project_measure_to_circle`]
/// for measures supported in one period.
pub fn lift_measure_to_period(mu: &StepDensityMeasure, k: i64) -> Result<StepDensityMeasure> {
    let (lo, hi) = mu.window_bounds()?;
    if !lo.is_zero() || !hi.is_one() {
        return Err(Error::ExtentMismatch(format!(
            "circle measures live on [0, 1], got [{lo}, {hi}]"
        )));
    }
    let shift = ExactScalar::from_int(k);
    let breakpoints = mu.breakpoints().iter().map(|p| p + &shift).collect();
    StepDensityMeasure::window(breakpoints, mu.densities().to_vec())
}
