//! Piecewise affine maps: interval maps on `[0,1]` and degree-one lifts.
//!
//! A map is a strictly increasing list of breakpoints plus one affine law
//! per basic interval. Interval maps carry `n+1` breakpoints from 0 to 1
//! for `n` branches and must map into `[0,1]`. Lifts store one fundamental
//! period: `m` breakpoints inside `[0,1)` and `m` laws, the last branch
//! running from the last breakpoint to the first breakpoint plus one, with
//! every other period reached by the degree-one relation
//! `F(x + 1) = F(x) + 1`, which holds by construction.
//!
//! Maps are undefined exactly at partition points unless the continuity
//! flag is set; the flag is verified at construction by exact one-sided
//! limit comparison. Breakpoints where adjacent laws happen to agree are
//! kept, not pruned: admissible partitions need not be minimal.
//!
//! Composition refines partitions exactly: the partition of `g` after `f`
//! is `P` together with the `f`-preimages of the breakpoints of `g` that
//! fall strictly inside branch images (for lifts, of all their integer
//! translates). Everything here is immutable after construction.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::{common_field, ExactScalar, Field};

/// Which domain a map acts on.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MapKind {
    /// A self-map of the unit interval.
    Interval,
    /// A degree-one lift of a circle map, stored per fundamental period.
    CircleLift,
}

/// One affine branch `x -> slope * x + intercept` with nonzero slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLaw {
    slope: ExactScalar,
    intercept: ExactScalar,
}

impl AffineLaw {
    /// Builds a law, rejecting zero slope.
    pub fn new(slope: ExactScalar, intercept: ExactScalar) -> Result<Self> {
        if slope.is_zero() {
            return Err(Error::InvalidMap("zero branch slope".into()));
        }
        Ok(AffineLaw { slope, intercept })
    }

    /// The affine law through two dots with distinct abscissae.
    pub fn through_points(
        x0: &ExactScalar,
        y0: &ExactScalar,
        x1: &ExactScalar,
        y1: &ExactScalar,
    ) -> Result<Self> {
        if x0 == x1 {
            return Err(Error::InvalidMap("coincident dot abscissae".into()));
        }
        let slope = (y1 - y0).try_div(&(x1 - x0))?;
        let intercept = y0 - &slope * x0;
        AffineLaw::new(slope, intercept)
    }

    /// Branch slope.
    pub fn slope(&self) -> &ExactScalar {
        &self.slope
    }

    /// Branch intercept.
    pub fn intercept(&self) -> &ExactScalar {
        &self.intercept
    }

    /// Evaluates the law.
    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        &self.slope * x + &self.intercept
    }

    /// Solves `law(x) = y` for `x`.
    pub fn invert(&self, y: &ExactScalar) -> ExactScalar {
        (y - &self.intercept) / &self.slope
    }

    /// The composition `self` after `inner`.
    pub fn after(&self, inner: &AffineLaw) -> AffineLaw {
        AffineLaw {
            slope: &self.slope * &inner.slope,
            intercept: &self.slope * &inner.intercept + &self.intercept,
        }
    }

    /// The translated law `x -> self(x - k) + k` (conjugation by a shift).
    pub fn shift_conjugate(&self, k: &ExactScalar) -> AffineLaw {
        let one = ExactScalar::one();
        AffineLaw {
            slope: self.slope.clone(),
            intercept: &self.intercept + &(k * &(one - &self.slope)),
        }
    }

    /// Image of the closed cell `[lo, hi]`, returned with ordered endpoints.
    pub fn image_of(&self, lo: &ExactScalar, hi: &ExactScalar) -> (ExactScalar, ExactScalar) {
        let a = self.eval(lo);
        let b = self.eval(hi);
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

/// A piecewise affine map of class C, or of class C-tilde when the
/// continuity flag is set and verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseAffineMap {
    kind: MapKind,
    breakpoints: Vec<ExactScalar>,
    laws: Vec<AffineLaw>,
    continuous: bool,
    field: Field,
}

fn check_strictly_increasing(points: &[ExactScalar]) -> Result<()> {
    for w in points.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidMap(format!(
                "breakpoints not strictly increasing: {} then {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

fn joined_field(breakpoints: &[ExactScalar], laws: &[AffineLaw]) -> Result<Field> {
    let mut refs: Vec<&ExactScalar> = breakpoints.iter().collect();
    for law in laws {
        refs.push(&law.slope);
        refs.push(&law.intercept);
    }
    common_field(&refs)
}

impl PiecewiseAffineMap {
    /// Builds an interval map from explicit branch laws.
    ///
    /// `breakpoints` runs from 0 to 1 with `laws.len() + 1` entries; every
    /// branch must map the closure of its cell into `[0,1]`; when
    /// `continuous` is set, one-sided limits must agree at every interior
    /// breakpoint.
    pub fn interval_from_laws(
        breakpoints: Vec<ExactScalar>,
        laws: Vec<AffineLaw>,
        continuous: bool,
    ) -> Result<Self> {
        if breakpoints.len() < 2 || laws.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidMap(format!(
                "{} breakpoints with {} laws",
                breakpoints.len(),
                laws.len()
            )));
        }
        check_strictly_increasing(&breakpoints)?;
        if !breakpoints[0].is_zero() || !breakpoints[breakpoints.len() - 1].is_one() {
            return Err(Error::InvalidMap(
                "interval map breakpoints must run from 0 to 1".into(),
            ));
        }
        let field = joined_field(&breakpoints, &laws)?;
        let zero = ExactScalar::zero();
        let one = ExactScalar::one();
        for (i, law) in laws.iter().enumerate() {
            let (lo, hi) = law.image_of(&breakpoints[i], &breakpoints[i + 1]);
            if lo < zero || hi > one {
                return Err(Error::InvalidMap(format!(
                    "branch {i} image [{lo}, {hi}] leaves [0,1]"
                )));
            }
        }
        if continuous {
            for i in 1..laws.len() {
                let left = laws[i - 1].eval(&breakpoints[i]);
                let right = laws[i].eval(&breakpoints[i]);
                if left != right {
                    return Err(Error::InvalidMap(format!(
                        "one-sided limits at {} differ: {} vs {}",
                        breakpoints[i], left, right
                    )));
                }
            }
        }
        Ok(PiecewiseAffineMap {
            kind: MapKind::Interval,
            breakpoints,
            laws,
            continuous,
            field,
        })
    }

    /// Builds a degree-one lift from laws over one fundamental period.
    ///
    /// `breakpoints` lie inside `[0,1)`, one law per breakpoint; branch `i`
    /// acts on `[b_i, b_{i+1})` and the last branch on
    /// `[b_last, b_first + 1)`. When `continuous` is set the one-sided
    /// limits must agree at every breakpoint, including the wrap, where the
    /// degree-one relation makes the condition
    /// `last_law(b_first + 1) = first_law(b_first) + 1`.
    pub fn lift_from_laws(
        breakpoints: Vec<ExactScalar>,
        laws: Vec<AffineLaw>,
        continuous: bool,
    ) -> Result<Self> {
        if breakpoints.is_empty() || laws.len() != breakpoints.len() {
            return Err(Error::InvalidMap(format!(
                "{} breakpoints with {} laws",
                breakpoints.len(),
                laws.len()
            )));
        }
        check_strictly_increasing(&breakpoints)?;
        let zero = ExactScalar::zero();
        let one = ExactScalar::one();
        if breakpoints[0] < zero || breakpoints[breakpoints.len() - 1] >= one {
            return Err(Error::InvalidMap(
                "lift breakpoints must lie inside [0,1)".into(),
            ));
        }
        let field = joined_field(&breakpoints, &laws)?;
        if continuous {
            for i in 1..laws.len() {
                let left = laws[i - 1].eval(&breakpoints[i]);
                let right = laws[i].eval(&breakpoints[i]);
                if left != right {
                    return Err(Error::InvalidMap(format!(
                        "one-sided limits at {} differ: {} vs {}",
                        breakpoints[i], left, right
                    )));
                }
            }
            let wrap = &breakpoints[0] + &one;
            let left = laws[laws.len() - 1].eval(&wrap);
            let right = laws[0].eval(&breakpoints[0]) + &one;
            if left != right {
                return Err(Error::InvalidMap(format!(
                    "one-sided limits at the wrap point {wrap} differ: {left} vs {right}"
                )));
            }
        }
        Ok(PiecewiseAffineMap {
            kind: MapKind::CircleLift,
            breakpoints,
            laws,
            continuous,
            field,
        })
    }

    /// Connect-the-dots interval map.
    ///
    /// For a continuous map, `values` holds one ordinate per breakpoint.
    /// For a class C map, `values` holds the pair of one-sided limit
    /// ordinates per branch, so `2 * (breakpoints.len() - 1)` entries in
    /// the order left limit of branch 0, right limit of branch 0, and so
    /// on.
    pub fn interval_from_values(
        breakpoints: Vec<ExactScalar>,
        values: Vec<ExactScalar>,
        continuous: bool,
    ) -> Result<Self> {
        let laws = dots_to_laws(&breakpoints, &values, continuous, false)?;
        Self::interval_from_laws(breakpoints, laws, continuous)
    }

    /// Connect-the-dots degree-one lift.
    ///
    /// For a continuous lift, `values` holds one ordinate per breakpoint
    /// and the last branch closes the period at
    /// `(b_first + 1, v_first + 1)`. For a class C lift, `values` holds
    /// one-sided limit pairs per branch as in
    /// [`Self::interval_from_values`].
    pub fn lift_from_values(
        breakpoints: Vec<ExactScalar>,
        values: Vec<ExactScalar>,
        continuous: bool,
    ) -> Result<Self> {
        let laws = dots_to_laws(&breakpoints, &values, continuous, true)?;
        Self::lift_from_laws(breakpoints, laws, continuous)
    }

    /// The identity interval map.
    pub fn identity() -> Self {
        PiecewiseAffineMap::interval_from_laws(
            vec![ExactScalar::zero(), ExactScalar::one()],
            vec![AffineLaw::new(ExactScalar::one(), ExactScalar::zero()).unwrap()],
            true,
        )
        .unwrap()
    }

    /// Interval or lift.
    pub fn kind(&self) -> MapKind {
        self.kind
    }

    /// Whether the map is of class C-tilde (verified continuous).
    pub fn is_continuous(&self) -> bool {
        self.continuous
    }

    /// The scalar field housing every breakpoint and law.
    pub fn field(&self) -> Field {
        self.field
    }

    /// Breakpoints of one fundamental domain.
    pub fn breakpoints(&self) -> &[ExactScalar] {
        &self.breakpoints
    }

    /// Branch laws of one fundamental domain.
    pub fn laws(&self) -> &[AffineLaw] {
        &self.laws
    }

    /// Number of branches per fundamental domain.
    pub fn branch_count(&self) -> usize {
        self.laws.len()
    }

    /// Closure `[lo, hi]` of basic interval `i` in the fundamental domain.
    pub fn cell(&self, i: usize) -> (ExactScalar, ExactScalar) {
        match self.kind {
            MapKind::Interval => (self.breakpoints[i].clone(), self.breakpoints[i + 1].clone()),
            MapKind::CircleLift => {
                let lo = self.breakpoints[i].clone();
                let hi = if i + 1 < self.breakpoints.len() {
                    self.breakpoints[i + 1].clone()
                } else {
                    &self.breakpoints[0] + &ExactScalar::one()
                };
                (lo, hi)
            }
        }
    }

    /// Index of the basic interval whose half-open cell `[b_i, b_{i+1})`
    /// contains `x`, which must already lie in the fundamental domain.
    fn locate_cell(&self, x: &ExactScalar) -> usize {
        let after = self.breakpoints.partition_point(|b| b <= x);
        match self.kind {
            MapKind::Interval => {
                if after == 0 {
                    0
                } else {
                    (after - 1).min(self.laws.len() - 1)
                }
            }
            MapKind::CircleLift => {
                if after == 0 {
                    self.laws.len() - 1
                } else {
                    after - 1
                }
            }
        }
    }

    /// Reduces `x` into the fundamental domain of a lift, returning the
    /// integer translate and the representative.
    fn reduce(&self, x: &ExactScalar) -> (ExactScalar, ExactScalar) {
        let shifted = x - &self.breakpoints[0];
        let k = ExactScalar::from(shifted.floor_int());
        (x - &k, k)
    }

    /// Evaluates the map.
    ///
    /// Interval maps require `x` in `[0,1]`; lifts accept any scalar and
    /// satisfy `evaluate(x + 1) = evaluate(x) + 1` identically. Class C
    /// maps are undefined exactly at partition points (for lifts, at every
    /// integer translate of one).
    pub fn evaluate(&self, x: &ExactScalar) -> Result<ExactScalar> {
        match self.kind {
            MapKind::Interval => {
                if x < &ExactScalar::zero() || x > &ExactScalar::one() {
                    return Err(Error::OutOfDomain(x.to_string()));
                }
                if let Ok(i) = self.breakpoints.binary_search(x) {
                    if !self.continuous {
                        return Err(Error::AtBreakpoint(x.to_string()));
                    }
                    let law = &self.laws[i.min(self.laws.len() - 1)];
                    return Ok(law.eval(x));
                }
                Ok(self.laws[self.locate_cell(x)].eval(x))
            }
            MapKind::CircleLift => {
                let (x0, k) = self.reduce(x);
                if let Ok(i) = self.breakpoints.binary_search(&x0) {
                    if !self.continuous {
                        return Err(Error::AtBreakpoint(x.to_string()));
                    }
                    return Ok(self.laws[i].eval(&x0) + &k);
                }
                Ok(self.laws[self.locate_cell(&x0)].eval(&x0) + &k)
            }
        }
    }

    /// One-sided limit from the right at `x` (defined for interval maps on
    /// `[0,1)` and for lifts everywhere).
    pub fn right_limit_at(&self, x: &ExactScalar) -> Result<ExactScalar> {
        match self.kind {
            MapKind::Interval => {
                if x < &ExactScalar::zero() || x >= &ExactScalar::one() {
                    return Err(Error::OutOfDomain(x.to_string()));
                }
                match self.breakpoints.binary_search(x) {
                    Ok(i) => Ok(self.laws[i.min(self.laws.len() - 1)].eval(x)),
                    Err(_) => Ok(self.laws[self.locate_cell(x)].eval(x)),
                }
            }
            MapKind::CircleLift => {
                let (x0, k) = self.reduce(x);
                let i = match self.breakpoints.binary_search(&x0) {
                    Ok(i) => i,
                    Err(_) => self.locate_cell(&x0),
                };
                Ok(self.laws[i].eval(&x0) + &k)
            }
        }
    }

    /// One-sided limit from the left at `x` (defined for interval maps on
    /// `(0,1]` and for lifts everywhere).
    pub fn left_limit_at(&self, x: &ExactScalar) -> Result<ExactScalar> {
        match self.kind {
            MapKind::Interval => {
                if x <= &ExactScalar::zero() || x > &ExactScalar::one() {
                    return Err(Error::OutOfDomain(x.to_string()));
                }
                match self.breakpoints.binary_search(x) {
                    Ok(i) => Ok(self.laws[i - 1].eval(x)),
                    Err(_) => Ok(self.laws[self.locate_cell(x)].eval(x)),
                }
            }
            MapKind::CircleLift => {
                let (x0, k) = self.reduce(x);
                match self.breakpoints.binary_search(&x0) {
                    Ok(0) => {
                        // Left of b_0 is the wrap branch, one period down.
                        let one = ExactScalar::one();
                        let wrap = &x0 + &one;
                        Ok(self.laws[self.laws.len() - 1].eval(&wrap) + &k - &one)
                    }
                    Ok(i) => Ok(self.laws[i - 1].eval(&x0) + &k),
                    Err(_) => Ok(self.laws[self.locate_cell(&x0)].eval(&x0) + &k),
                }
            }
        }
    }

    /// Returns `lambda > 0` when every branch slope has absolute value
    /// `lambda`.
    pub fn is_constant_slope(&self) -> Option<ExactScalar> {
        let lambda = self.laws[0].slope().abs();
        for law in &self.laws[1..] {
            if law.slope().abs() != lambda {
                return None;
            }
        }
        Some(lambda)
    }

    /// Breakpoint translates lying strictly inside the open interval
    /// `(lo, hi)`, sorted. For interval maps these are the plain
    /// breakpoints; for lifts every integer translate is considered.
    pub fn breakpoint_translates_within(
        &self,
        lo: &ExactScalar,
        hi: &ExactScalar,
    ) -> Vec<ExactScalar> {
        let mut out = Vec::new();
        match self.kind {
            MapKind::Interval => {
                for b in &self.breakpoints {
                    if b > lo && b < hi {
                        out.push(b.clone());
                    }
                }
            }
            MapKind::CircleLift => {
                let k_lo = (lo - &self.breakpoints[self.breakpoints.len() - 1]).floor_int();
                let k_hi = (hi - &self.breakpoints[0]).floor_int();
                let mut k = k_lo;
                while k <= k_hi {
                    let shift = ExactScalar::from(k.clone());
                    for b in &self.breakpoints {
                        let t = b + &shift;
                        if &t > lo && &t < hi {
                            out.push(t);
                        }
                    }
                    k += 1;
                }
                out.sort();
            }
        }
        out
    }

    /// Materialized view of a lift's cells covering the window `[lo, hi]`:
    /// triples `(cell_lo, cell_hi, law)` for every translated basic
    /// interval meeting the window, in order.
    pub fn window_cells(
        &self,
        lo: &ExactScalar,
        hi: &ExactScalar,
    ) -> Result<Vec<(ExactScalar, ExactScalar, AffineLaw)>> {
        if self.kind != MapKind::CircleLift {
            return Err(Error::NotDegreeOne);
        }
        if lo >= hi {
            return Err(Error::InvalidParameter(format!(
                "empty window [{lo}, {hi}]"
            )));
        }
        let mut out = Vec::new();
        let mut k: num_bigint::BigInt = (lo - &self.breakpoints[0]).floor_int() - 1;
        let k_hi = (hi - &self.breakpoints[0]).floor_int() + 1;
        while k <= k_hi {
            let shift = ExactScalar::from(k.clone());
            for i in 0..self.laws.len() {
                let (c_lo, c_hi) = self.cell(i);
                let c_lo = &c_lo + &shift;
                let c_hi = &c_hi + &shift;
                if &c_hi > lo && &c_lo < hi {
                    out.push((c_lo, c_hi, self.laws[i].shift_conjugate(&shift)));
                }
            }
            k += 1;
        }
        Ok(out)
    }

    /// The composition `outer` after `inner`, with partition refined
    /// exactly: the inner partition plus the inner preimages of outer
    /// breakpoints (and, for lifts, of their integer translates) falling
    /// strictly inside branch images.
    pub fn compose(inner: &Self, outer: &Self) -> Result<Self> {
        if inner.kind != outer.kind {
            return Err(Error::DomainMismatch(
                "cannot compose an interval map with a lift".into(),
            ));
        }
        inner.field.join(outer.field)?;
        let continuous = inner.continuous && outer.continuous;
        let two = ExactScalar::from_int(2);
        match inner.kind {
            MapKind::Interval => {
                let mut cuts: Vec<ExactScalar> = inner.breakpoints.clone();
                for (i, law) in inner.laws.iter().enumerate() {
                    let (lo, hi) = law.image_of(&inner.breakpoints[i], &inner.breakpoints[i + 1]);
                    for q in outer.breakpoint_translates_within(&lo, &hi) {
                        cuts.push(law.invert(&q));
                    }
                }
                crate::scalar::sort_dedup(&mut cuts);
                let mut laws = Vec::with_capacity(cuts.len() - 1);
                for w in cuts.windows(2) {
                    let mid = (&w[0] + &w[1]) / &two;
                    let inner_law = &inner.laws[inner.locate_cell(&mid)];
                    let y = inner_law.eval(&mid);
                    let outer_law = &outer.laws[outer.locate_cell(&y)];
                    laws.push(outer_law.after(inner_law));
                }
                Self::interval_from_laws(cuts, laws, continuous)
            }
            MapKind::CircleLift => {
                let period_end = &inner.breakpoints[0] + &ExactScalar::one();
                let mut cuts: Vec<ExactScalar> = inner.breakpoints.clone();
                for (i, law) in inner.laws.iter().enumerate() {
                    let (lo, hi) = inner.cell(i);
                    let (lo, hi) = law.image_of(&lo, &hi);
                    for q in outer.breakpoint_translates_within(&lo, &hi) {
                        let x = law.invert(&q);
                        // Cuts at cell boundaries are already breakpoints.
                        if x > inner.breakpoints[i]
                            && (i + 1 == inner.laws.len() || x < inner.breakpoints[i + 1])
                            && x < period_end
                        {
                            cuts.push(x);
                        }
                    }
                }
                crate::scalar::sort_dedup(&mut cuts);
                let mut laws = Vec::with_capacity(cuts.len());
                for i in 0..cuts.len() {
                    let lo = cuts[i].clone();
                    let hi = if i + 1 < cuts.len() {
                        cuts[i + 1].clone()
                    } else {
                        &cuts[0] + &ExactScalar::one()
                    };
                    let mid = (&lo + &hi) / &two;
                    let inner_law = &inner.laws[inner.locate_cell(&inner.reduce(&mid).0)];
                    // The cell may sit above the fundamental domain of the
                    // inner map only through reduce; mid is already inside.
                    let y = inner_law.eval(&mid);
                    let (y0, k) = outer.reduce(&y);
                    let outer_law = outer.laws[outer.locate_cell(&y0)].shift_conjugate(&k);
                    laws.push(outer_law.after(inner_law));
                }
                Self::lift_from_laws(cuts, laws, continuous)
            }
        }
    }

    /// The `n`-th iterate, `n >= 1`, with partition refined exactly at
    /// every step.
    pub fn iterate(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("iterate count must be >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = Self::compose(&acc, self)?;
        }
        Ok(acc)
    }
}

fn dots_to_laws(
    breakpoints: &[ExactScalar],
    values: &[ExactScalar],
    continuous: bool,
    lift: bool,
) -> Result<Vec<AffineLaw>> {
    let branches = if lift {
        breakpoints.len()
    } else {
        breakpoints.len().saturating_sub(1)
    };
    if branches == 0 {
        return Err(Error::InvalidMap("no branches".into()));
    }
    let mut laws = Vec::with_capacity(branches);
    if continuous {
        if values.len() != breakpoints.len() {
            return Err(Error::InvalidMap(format!(
                "continuous map needs one value per breakpoint, got {} for {}",
                values.len(),
                breakpoints.len()
            )));
        }
        let one = ExactScalar::one();
        for i in 0..branches {
            let (x1, y1) = if i + 1 < breakpoints.len() {
                (breakpoints[i + 1].clone(), values[i + 1].clone())
            } else {
                // Wrap branch of a lift closes the period one unit up.
                (&breakpoints[0] + &one, &values[0] + &one)
            };
            laws.push(AffineLaw::through_points(
                &breakpoints[i],
                &values[i],
                &x1,
                &y1,
            )?);
        }
    } else {
        if values.len() != 2 * branches {
            return Err(Error::InvalidMap(format!(
                "class C map needs two one-sided values per branch, got {} for {} branches",
                values.len(),
                branches
            )));
        }
        let one = ExactScalar::one();
        for i in 0..branches {
            let x1 = if i + 1 < breakpoints.len() {
                breakpoints[i + 1].clone()
            } else {
                &breakpoints[0] + &one
            };
            laws.push(AffineLaw::through_points(
                &breakpoints[i],
                &values[2 * i],
                &x1,
                &values[2 * i + 1],
            )?);
        }
    }
    Ok(laws)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> ExactScalar {
        ExactScalar::parse(text).unwrap()
    }

    fn v(texts: &[&str]) -> Vec<ExactScalar> {
        texts.iter().map(|t| s(t)).collect()
    }

    /// The full tent map as a continuous interval map.
    fn tent() -> PiecewiseAffineMap {
        PiecewiseAffineMap::interval_from_values(v(&["0", "1/2", "1"]), v(&["0", "1", "0"]), true)
            .unwrap()
    }

    /// The two-branch lift through the dots (0,-1) and (b,c) for
    /// lambda = 132/25.
    fn family_lift() -> PiecewiseAffineMap {
        PiecewiseAffineMap::lift_from_values(v(&["0", "157/264"]), v(&["-1", "107/50"]), true)
            .unwrap()
    }

    #[test]
    fn constructor_rejections() {
        assert!(PiecewiseAffineMap::interval_from_values(
            v(&["0", "1"]),
            v(&["0", "2"]),
            true
        )
        .is_err());
        assert!(PiecewiseAffineMap::interval_from_values(
            v(&["0", "1/2", "1/2", "1"]),
            v(&["0", "1", "0", "1"]),
            true
        )
        .is_err());
        assert!(PiecewiseAffineMap::interval_from_values(
            v(&["0", "1/2", "1"]),
            v(&["0", "1", "1/2"]),
            false
        )
        .is_err());
        // Flat dot pair means zero slope.
        assert!(PiecewiseAffineMap::interval_from_values(
            v(&["0", "1/2", "1"]),
            v(&["1/2", "1/2", "0"]),
            true
        )
        .is_err());
        // Claimed continuity must be exact.
        assert!(PiecewiseAffineMap::interval_from_laws(
            v(&["0", "1/2", "1"]),
            vec![
                AffineLaw::new(s("2"), s("0")).unwrap(),
                AffineLaw::new(s("-1"), s("1")).unwrap(),
            ],
            true
        )
        .is_err());
    }

    #[test]
    fn tent_evaluation() {
        let t = tent();
        assert_eq!(t.evaluate(&s("1/4")).unwrap(), s("1/2"));
        assert_eq!(t.evaluate(&s("1/2")).unwrap(), s("1"));
        assert_eq!(t.evaluate(&s("3/4")).unwrap(), s("1/2"));
        assert_eq!(t.evaluate(&s("0")).unwrap(), s("0"));
        assert_eq!(t.evaluate(&s("1")).unwrap(), s("0"));
        assert!(t.evaluate(&s("2")).is_err());
        assert_eq!(t.is_constant_slope().unwrap(), s("2"));
    }

    #[test]
    fn class_c_map_is_undefined_at_breakpoints() {
        let m = PiecewiseAffineMap::interval_from_values(
            v(&["0", "1/2", "1"]),
            v(&["0", "1/2", "1/2", "0"]),
            false,
        )
        .unwrap();
        assert!(matches!(
            m.evaluate(&s("1/2")),
            Err(Error::AtBreakpoint(_))
        ));
        assert_eq!(m.right_limit_at(&s("1/2")).unwrap(), s("1/2"));
        assert_eq!(m.left_limit_at(&s("1/2")).unwrap(), s("1/2"));
        assert_eq!(m.evaluate(&s("1/4")).unwrap(), s("1/4"));
    }

    #[test]
    fn family_lift_evaluation_and_degree_one() {
        let f = family_lift();
        let lambda = s("132/25");
        assert_eq!(f.is_constant_slope().unwrap(), lambda);
        // Branch law is lambda * x - 1 left of b: at 1/2 that is 41/25.
        assert_eq!(f.evaluate(&s("1/2")).unwrap(), s("41/25"));
        assert_eq!(f.evaluate(&s("0")).unwrap(), s("-1"));
        // Degree one: translate in, translate out.
        for x in v(&["1/3", "157/264", "9/10"]) {
            let fx = f.evaluate(&x).unwrap();
            let fx1 = f.evaluate(&(&x + &ExactScalar::one())).unwrap();
            assert_eq!(fx1, &fx + &ExactScalar::one());
            let fxm = f.evaluate(&(&x - &s("3"))).unwrap();
            assert_eq!(fxm, &fx - &s("3"));
        }
    }

    #[test]
    fn identity_composition_is_neutral() {
        let t = tent();
        let id = PiecewiseAffineMap::identity();
        assert_eq!(PiecewiseAffineMap::compose(&id, &t).unwrap(), t);
        assert_eq!(PiecewiseAffineMap::compose(&t, &id).unwrap(), t);
    }

    #[test]
    fn tent_square_by_hand() {
        let t = tent();
        let t2 = PiecewiseAffineMap::compose(&t, &t).unwrap();
        assert_eq!(t2.breakpoints(), v(&["0", "1/4", "1/2", "3/4", "1"]).as_slice());
        assert_eq!(t2.is_constant_slope().unwrap(), s("4"));
        assert_eq!(t2.evaluate(&s("1/8")).unwrap(), s("1/2"));
        assert_eq!(t2.evaluate(&s("3/8")).unwrap(), s("1/2"));
        assert_eq!(t2.evaluate(&s("1/4")).unwrap(), s("1"));
        assert_eq!(t2, t.iterate(2).unwrap());
    }

    #[test]
    fn family_square_has_twelve_breakpoints() {
        let f = family_lift();
        let f2 = f.iterate(2).unwrap();
        assert_eq!(f2.branch_count(), 12);
        let lambda2 = s("132/25").powi(2);
        assert_eq!(f2.is_constant_slope().unwrap(), lambda2);
        // Spot check the semiconjugacy of iteration: F(F(x)) pointwise.
        for x in v(&["1/7", "1/2", "200/264", "99/100"]) {
            let direct = f.evaluate(&f.evaluate(&x).unwrap()).unwrap();
            assert_eq!(f2.evaluate(&x).unwrap(), direct);
        }
    }

    #[test]
    fn iterate_splits_as_compose() {
        let f = family_lift();
        let f3 = f.iterate(3).unwrap();
        let f1_2 = PiecewiseAffineMap::compose(&f.iterate(2).unwrap(), &f).unwrap();
        let f2_1 = PiecewiseAffineMap::compose(&f, &f.iterate(2).unwrap()).unwrap();
        assert_eq!(f3, f1_2);
        assert_eq!(f3, f2_1);
    }

    #[test]
    fn window_cells_cover_exactly() {
        let f = family_lift();
        let cells = f.window_cells(&s("-2"), &s("2")).unwrap();
        // Cells tile the window: consecutive, increasing, covering.
        for w in cells.windows(2) {
            assert_eq!(w[0].1, w[1].0);
        }
        assert!(cells.first().unwrap().0 <= s("-2"));
        assert!(cells.last().unwrap().1 >= s("2"));
        // Each law agrees with evaluation at the cell midpoint.
        for (lo, hi, law) in &cells {
            let mid = (lo + hi) / &s("2");
            assert_eq!(law.eval(&mid), f.evaluate(&mid).unwrap());
        }
    }

    #[test]
    fn removable_breakpoints_are_kept() {
        let m = PiecewiseAffineMap::interval_from_values(
            v(&["0", "1/3", "1"]),
            v(&["0", "1/3", "1"]),
            true,
        )
        .unwrap();
        assert_eq!(m.branch_count(), 2);
        let composed = PiecewiseAffineMap::compose(&m, &m).unwrap();
        assert_eq!(composed.branch_count(), 2);
    }
}
