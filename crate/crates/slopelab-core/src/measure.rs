//! Step-density measures and the induced mass-transfer operator.
//!
//! A measure here is absolutely continuous with a piecewise constant,
//! nonnegative density: a strictly increasing breakpoint list with one
//! density per cell. Two extents exist. A window measure lives on a finite
//! interval and is zero outside it. A periodic measure repeats its
//! fundamental period (length one) over the whole line, mirroring how
//! lifts are stored, and has infinite total mass unless it is identically
//! zero. Both kinds are nonatomic and give every bounded interval finite
//! mass, so the strong sigma-finiteness this crate relies on holds
//! structurally.
//!
//! The transfer operator sends a measure to the measure whose value on a
//! set A is the sum over branches I of the input mass of f(I intersect A).
//! On densities this reads `density(x) = input_density(f(x)) * |slope at
//! x|`, so the step class is closed under it and every computation below
//! is exact partition refinement plus exact arithmetic. A measure with
//! constant density is an eigen-measure of factor lambda exactly when the
//! map has constant absolute slope lambda, which is what the eigen
//! residual detects.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::map::{MapKind, PiecewiseAffineMap};
use crate::scalar::{common_field, ExactScalar, Field};

/// How far a measure extends.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Extent {
    /// Supported on a finite window, zero outside.
    Window,
    /// Repeats with period one over the whole line.
    Periodic,
}

/// A total mass, which a periodic measure makes infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mass {
    Finite(ExactScalar),
    Infinite,
}

impl Mass {
    /// The finite value, if there is one.
    pub fn finite(&self) -> Option<&ExactScalar> {
        match self {
            Mass::Finite(m) => Some(m),
            Mass::Infinite => None,
        }
    }
}

/// A nonatomic measure with piecewise constant density.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepDensityMeasure {
    /// Window: `n+1` breakpoints for `n` cells. Periodic: `m` breakpoints
    /// inside `[0,1)`, cell `i` running to the next breakpoint and the
    /// last wrapping to the first plus one.
    breakpoints: Vec<ExactScalar>,
    densities: Vec<ExactScalar>,
    extent: Extent,
    field: Field,
}

impl StepDensityMeasure {
    /// Builds a window measure from breakpoints and per-cell densities.
    pub fn window(breakpoints: Vec<ExactScalar>, densities: Vec<ExactScalar>) -> Result<Self> {
        if breakpoints.len() < 2 || densities.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidMeasure(format!(
                "{} breakpoints with {} densities",
                breakpoints.len(),
                densities.len()
            )));
        }
        Self::validate(&breakpoints, &densities, Extent::Window)
    }

    /// Builds a periodic measure from its fundamental period.
    ///
    /// Breakpoints lie inside `[0,1)`; the last cell wraps around to the
    /// first breakpoint plus one.
    pub fn periodic(breakpoints: Vec<ExactScalar>, densities: Vec<ExactScalar>) -> Result<Self> {
        if breakpoints.is_empty() || densities.len() != breakpoints.len() {
            return Err(Error::InvalidMeasure(format!(
                "{} breakpoints with {} densities",
                breakpoints.len(),
                densities.len()
            )));
        }
        if breakpoints[0] < ExactScalar::zero()
            || breakpoints[breakpoints.len() - 1] >= ExactScalar::one()
        {
            return Err(Error::InvalidMeasure(
                "periodic breakpoints must lie inside [0,1)".into(),
            ));
        }
        Self::validate(&breakpoints, &densities, Extent::Periodic)
    }

    fn validate(
        breakpoints: &[ExactScalar],
        densities: &[ExactScalar],
        extent: Extent,
    ) -> Result<Self> {
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidMeasure(format!(
                    "breakpoints not strictly increasing: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        for d in densities {
            if d.is_negative() {
                return Err(Error::InvalidMeasure(format!("negative density {d}")));
            }
        }
        let mut refs: Vec<&ExactScalar> = breakpoints.iter().collect();
        refs.extend(densities.iter());
        let field = common_field(&refs)?;
        Ok(StepDensityMeasure {
            breakpoints: breakpoints.to_vec(),
            densities: densities.to_vec(),
            extent,
            field,
        })
    }

    /// Lebesgue measure on the whole line, as a periodic unit density.
    pub fn lebesgue() -> Self {
        StepDensityMeasure::periodic(vec![ExactScalar::zero()], vec![ExactScalar::one()]).unwrap()
    }

    /// Lebesgue measure restricted to `[lo, hi]`.
    pub fn lebesgue_on(lo: ExactScalar, hi: ExactScalar) -> Result<Self> {
        StepDensityMeasure::window(vec![lo, hi], vec![ExactScalar::one()])
    }

    /// The uniform probability measure on `[lo, hi]`.
    pub fn uniform_probability_on(lo: ExactScalar, hi: ExactScalar) -> Result<Self> {
        let len = hi.try_sub(&lo)?;
        if !len.is_positive() {
            return Err(Error::InvalidMeasure(format!(
                "degenerate window [{lo}, {hi}]"
            )));
        }
        StepDensityMeasure::window(vec![lo, hi], vec![len.recip()?])
    }

    /// Window or periodic.
    pub fn extent(&self) -> Extent {
        self.extent
    }

    /// Breakpoints of the window or of one fundamental period.
    pub fn breakpoints(&self) -> &[ExactScalar] {
        &self.breakpoints
    }

    /// Densities, one per cell.
    pub fn densities(&self) -> &[ExactScalar] {
        &self.densities
    }

    /// The scalar field housing all breakpoints and densities.
    pub fn field(&self) -> Field {
        self.field
    }

    /// True when the density vanishes everywhere.
    pub fn is_zero(&self) -> bool {
        self.densities.iter().all(|d| d.is_zero())
    }

    /// Window bounds for a window measure.
    pub fn window_bounds(&self) -> Result<(ExactScalar, ExactScalar)> {
        match self.extent {
            Extent::Window => Ok((
                self.breakpoints[0].clone(),
                self.breakpoints[self.breakpoints.len() - 1].clone(),
            )),
            Extent::Periodic => Err(Error::ExtentMismatch(
                "periodic measure has no window".into(),
            )),
        }
    }

    /// Mass of one fundamental period (periodic) or of the window.
    pub fn mass_per_extent(&self) -> ExactScalar {
        let mut total = ExactScalar::zero();
        for i in 0..self.densities.len() {
            let (lo, hi) = self.cell(i);
            total = total + &self.densities[i] * &(&hi - &lo);
        }
        total
    }

    /// Total mass over the whole line.
    pub fn total_mass(&self) -> Mass {
        match self.extent {
            Extent::Window => Mass::Finite(self.mass_per_extent()),
            Extent::Periodic => {
                if self.is_zero() {
                    Mass::Finite(ExactScalar::zero())
                } else {
                    Mass::Infinite
                }
            }
        }
    }

    /// Closure of cell `i`.
    fn cell(&self, i: usize) -> (ExactScalar, ExactScalar) {
        let lo = self.breakpoints[i].clone();
        let hi = if i + 1 < self.breakpoints.len() {
            self.breakpoints[i + 1].clone()
        } else {
            &self.breakpoints[0] + &ExactScalar::one()
        };
        (lo, hi)
    }

    /// Density at `x`, with the right-continuous sampling convention at
    /// breakpoints (which carry no mass, so the convention is harmless).
    pub fn density_at(&self, x: &ExactScalar) -> ExactScalar {
        match self.extent {
            Extent::Window => {
                if x < &self.breakpoints[0] || x >= &self.breakpoints[self.breakpoints.len() - 1] {
                    return ExactScalar::zero();
                }
                let after = self.breakpoints.partition_point(|b| b <= x);
                self.densities[after - 1].clone()
            }
            Extent::Periodic => {
                let shifted = x - &self.breakpoints[0];
                let k = ExactScalar::from(shifted.floor_int());
                let x0 = x - &k;
                let after = self.breakpoints.partition_point(|b| b <= &x0);
                let i = if after == 0 {
                    self.densities.len() - 1
                } else {
                    after - 1
                };
                self.densities[i].clone()
            }
        }
    }

    /// Cumulative mass from a fixed reference up to `x`; differences of
    /// this are interval masses.
    fn cumulative(&self, x: &ExactScalar) -> ExactScalar {
        match self.extent {
            Extent::Window => {
                let mut acc = ExactScalar::zero();
                for i in 0..self.densities.len() {
                    let (lo, hi) = self.cell(i);
                    if x <= &lo {
                        break;
                    }
                    let top = if x < &hi { x.clone() } else { hi };
                    acc = acc + &self.densities[i] * &(&top - &lo);
                }
                acc
            }
            Extent::Periodic => {
                let period_mass = self.mass_per_extent();
                let shifted = x - &self.breakpoints[0];
                let k = shifted.floor_int();
                let kq = ExactScalar::from(k);
                let x0 = x - &kq;
                let mut acc = &kq * &period_mass;
                for i in 0..self.densities.len() {
                    let (lo, hi) = self.cell(i);
                    if &x0 <= &lo {
                        break;
                    }
                    let top = if &x0 < &hi { x0.clone() } else { hi };
                    acc = acc + &self.densities[i] * &(&top - &lo);
                }
                acc
            }
        }
    }

    /// Exact mass of the bounded interval `[lo, hi]` (endpoints carry no
    /// mass, so open and closed agree).
    pub fn measure_of(&self, lo: &ExactScalar, hi: &ExactScalar) -> Result<ExactScalar> {
        if lo > hi {
            return Err(Error::InvalidParameter(format!(
                "interval endpoints out of order: [{lo}, {hi}]"
            )));
        }
        Ok(self.cumulative(hi) - self.cumulative(lo))
    }

    /// Breakpoint translates of the measure's partition strictly inside
    /// `(lo, hi)`: plain breakpoints for a window, all integer translates
    /// for a periodic measure.
    fn breakpoint_translates_within(&self, lo: &ExactScalar, hi: &ExactScalar) -> Vec<ExactScalar> {
        let mut out = Vec::new();
        match self.extent {
            Extent::Window => {
                for b in &self.breakpoints {
                    if b > lo && b < hi {
                        out.push(b.clone());
                    }
                }
            }
            Extent::Periodic => {
                let k_lo: BigInt = (lo - &self.breakpoints[self.breakpoints.len() - 1]).floor_int();
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

    /// Applies the induced transfer operator of `f`.
    ///
    /// The result extent follows the geometry: an interval map always
    /// produces a window measure on `[0,1]`; a lift maps periodic to
    /// periodic and window to window (supported on the preimage of the
    /// input window). Every basic interval of the result receives finite
    /// mass by construction, so the sigma-finiteness guard never fires for
    /// well-formed inputs.
    pub fn apply_transfer(&self, f: &PiecewiseAffineMap) -> Result<StepDensityMeasure> {
        self.field.join(f.field())?;
        match (f.kind(), self.extent) {
            (MapKind::Interval, _) => {
                let mut cuts: Vec<ExactScalar> = f.breakpoints().to_vec();
                for (i, law) in f.laws().iter().enumerate() {
                    let (lo, hi) = law.image_of(&f.breakpoints()[i], &f.breakpoints()[i + 1]);
                    for q in self.breakpoint_translates_within(&lo, &hi) {
                        cuts.push(law.invert(&q));
                    }
                }
                crate::scalar::sort_dedup(&mut cuts);
                let densities = self.transfer_densities(f, &cuts, false)?;
                StepDensityMeasure::window(cuts, densities)
            }
            (MapKind::CircleLift, Extent::Periodic) => {
                let period_end = &f.breakpoints()[0] + &ExactScalar::one();
                let mut cuts: Vec<ExactScalar> = f.breakpoints().to_vec();
                for (i, law) in f.laws().iter().enumerate() {
                    let (c_lo, c_hi) = f.cell(i);
                    let (lo, hi) = law.image_of(&c_lo, &c_hi);
                    for q in self.breakpoint_translates_within(&lo, &hi) {
                        let x = law.invert(&q);
                        if x > c_lo && x < c_hi && x < period_end {
                            cuts.push(x);
                        }
                    }
                }
                crate::scalar::sort_dedup(&mut cuts);
                let densities = self.transfer_densities(f, &cuts, true)?;
                StepDensityMeasure::periodic(cuts, densities)
            }
            (MapKind::CircleLift, Extent::Window) => {
                let (w_lo, w_hi) = self.window_bounds()?;
                // Branch displacements f(x) - x are periodic and affine per
                // cell, so their extremes sit at cell closures.
                let mut d_min: Option<ExactScalar> = None;
                let mut d_max: Option<ExactScalar> = None;
                for (i, law) in f.laws().iter().enumerate() {
                    let (c_lo, c_hi) = f.cell(i);
                    for x in [&c_lo, &c_hi] {
                        let d = law.eval(x) - x;
                        if d_min.as_ref().is_none_or(|m| &d < m) {
                            d_min = Some(d.clone());
                        }
                        if d_max.as_ref().is_none_or(|m| &d > m) {
                            d_max = Some(d);
                        }
                    }
                }
                let support_lo = &w_lo - &d_max.unwrap();
                let support_hi = &w_hi - &d_min.unwrap();
                let pieces = f.window_cells(&support_lo, &support_hi)?;
                let mut cuts: Vec<ExactScalar> = Vec::new();
                for (c_lo, c_hi, law) in &pieces {
                    cuts.push(c_lo.clone());
                    cuts.push(c_hi.clone());
                    let (lo, hi) = law.image_of(c_lo, c_hi);
                    for q in self.breakpoint_translates_within(&lo, &hi) {
                        let x = law.invert(&q);
                        if &x > c_lo && &x < c_hi {
                            cuts.push(x);
                        }
                    }
                }
                crate::scalar::sort_dedup(&mut cuts);
                let two = ExactScalar::from_int(2);
                let mut densities = Vec::with_capacity(cuts.len() - 1);
                for w in cuts.windows(2) {
                    let mid = (&w[0] + &w[1]) / &two;
                    let y = f.evaluate(&mid).expect("midpoint is interior");
                    let slope = lift_slope_at(f, &mid);
                    densities.push(self.density_at(&y) * slope.abs());
                }
                StepDensityMeasure::window(cuts, densities)
            }
        }
    }

    /// The transfer of a window measure through a lift, scaled by
    /// `factor` and restricted to `[lo, hi]`, all in one pass.
    ///
    /// The restricted density is `x -> factor * rho(f(x)) * |f'(x)|`,
    /// read straight off the branch covering `x`, so only the window's
    /// own branch pieces are built and runs of equal density merge into
    /// one cell. The merge keeps iterated applications from accumulating
    /// redundant cuts; the measure itself is exactly the restriction of
    /// `factor * transfer(self)`.
    fn clipped_transfer_scaled(
        &self,
        f: &PiecewiseAffineMap,
        factor: &ExactScalar,
        lo: &ExactScalar,
        hi: &ExactScalar,
    ) -> Result<StepDensityMeasure> {
        self.field.join(f.field())?;
        let pieces = f.window_cells(lo, hi)?;
        let mut cuts = vec![lo.clone(), hi.clone()];
        for (c_lo, c_hi, law) in &pieces {
            for edge in [c_lo, c_hi] {
                if edge > lo && edge < hi {
                    cuts.push(edge.clone());
                }
            }
            let (i_lo, i_hi) = law.image_of(c_lo, c_hi);
            for q in self.breakpoint_translates_within(&i_lo, &i_hi) {
                let x = law.invert(&q);
                if &x > c_lo && &x < c_hi && &x > lo && &x < hi {
                    cuts.push(x);
                }
            }
        }
        crate::scalar::sort_dedup(&mut cuts);
        let gains: Vec<ExactScalar> = pieces
            .iter()
            .map(|(_, _, law)| law.slope().abs() * factor)
            .collect();
        let two = ExactScalar::from_int(2);
        let mut merged_cuts = vec![cuts[0].clone()];
        let mut merged_densities: Vec<ExactScalar> = Vec::new();
        let mut piece = 0;
        for w in cuts.windows(2) {
            let mid = (&w[0] + &w[1]) / &two;
            // Cells never straddle a piece edge, so the covering piece
            // only ever advances.
            while pieces[piece].1 < mid {
                piece += 1;
            }
            let y = pieces[piece].2.eval(&mid);
            let density = self.density_at(&y) * &gains[piece];
            if merged_densities.last() == Some(&density) {
                continue;
            }
            if !merged_densities.is_empty() {
                merged_cuts.push(w[0].clone());
            }
            merged_densities.push(density);
        }
        merged_cuts.push(cuts[cuts.len() - 1].clone());
        StepDensityMeasure::window(merged_cuts, merged_densities)
    }

    /// Densities of the transfer at the midpoints of refined cells.
    fn transfer_densities(
        &self,
        f: &PiecewiseAffineMap,
        cuts: &[ExactScalar],
        wrap: bool,
    ) -> Result<Vec<ExactScalar>> {
        let two = ExactScalar::from_int(2);
        let count = if wrap { cuts.len() } else { cuts.len() - 1 };
        let mut densities = Vec::with_capacity(count);
        for i in 0..count {
            let lo = cuts[i].clone();
            let hi = if i + 1 < cuts.len() {
                cuts[i + 1].clone()
            } else {
                &cuts[0] + &ExactScalar::one()
            };
            let mid = (&lo + &hi) / &two;
            let y = f.evaluate(&mid).expect("midpoint is interior");
            let slope = match f.kind() {
                MapKind::Interval => {
                    let idx = f.breakpoints().partition_point(|b| b <= &mid) - 1;
                    f.laws()[idx.min(f.laws().len() - 1)].slope().clone()
                }
                MapKind::CircleLift => lift_slope_at(f, &mid),
            };
            densities.push(self.density_at(&y) * slope.abs());
        }
        Ok(densities)
    }

    /// Pointwise sum of two measures of the same extent.
    pub fn try_add(&self, other: &Self) -> Result<StepDensityMeasure> {
        if self.extent != other.extent {
            return Err(Error::ExtentMismatch(
                "cannot add window and periodic measures".into(),
            ));
        }
        self.field.join(other.field)?;
        let cuts = refined_cuts(self, other);
        let two = ExactScalar::from_int(2);
        let wrap = self.extent == Extent::Periodic;
        let count = if wrap { cuts.len() } else { cuts.len() - 1 };
        let mut densities = Vec::with_capacity(count);
        for i in 0..count {
            let lo = cuts[i].clone();
            let hi = if i + 1 < cuts.len() {
                cuts[i + 1].clone()
            } else {
                &cuts[0] + &ExactScalar::one()
            };
            let mid = (&lo + &hi) / &two;
            densities.push(self.density_at(&mid) + other.density_at(&mid));
        }
        match self.extent {
            Extent::Window => StepDensityMeasure::window(cuts, densities),
            Extent::Periodic => StepDensityMeasure::periodic(cuts, densities),
        }
    }

    /// The measure scaled by a nonnegative factor.
    pub fn scaled(&self, factor: &ExactScalar) -> Result<StepDensityMeasure> {
        if factor.is_negative() {
            return Err(Error::InvalidParameter(format!(
                "negative measure scale {factor}"
            )));
        }
        self.field.join(factor.field())?;
        let densities = self.densities.iter().map(|d| d * factor).collect();
        Ok(StepDensityMeasure {
            breakpoints: self.breakpoints.clone(),
            densities,
            extent: self.extent,
            field: self.field.join(factor.field())?,
        })
    }

    /// Restriction of a window measure to `[lo, hi]`.
    pub fn restricted_to(&self, lo: &ExactScalar, hi: &ExactScalar) -> Result<StepDensityMeasure> {
        if self.extent != Extent::Window {
            return Err(Error::ExtentMismatch(
                "can only restrict a window measure".into(),
            ));
        }
        if lo >= hi {
            return Err(Error::InvalidParameter(format!(
                "degenerate restriction [{lo}, {hi}]"
            )));
        }
        let mut cuts = vec![lo.clone()];
        for b in &self.breakpoints {
            if b > lo && b < hi {
                cuts.push(b.clone());
            }
        }
        cuts.push(hi.clone());
        let two = ExactScalar::from_int(2);
        let mut densities = Vec::with_capacity(cuts.len() - 1);
        for w in cuts.windows(2) {
            let mid = (&w[0] + &w[1]) / &two;
            densities.push(self.density_at(&mid));
        }
        StepDensityMeasure::window(cuts, densities)
    }

    /// Exact L1 distance between the densities of two same-extent
    /// measures: over the union of windows, or over one period.
    pub fn l1_distance(&self, other: &Self) -> Result<ExactScalar> {
        if self.extent != other.extent {
            return Err(Error::ExtentMismatch(
                "cannot compare window and periodic measures".into(),
            ));
        }
        self.field.join(other.field)?;
        let cuts = refined_cuts(self, other);
        let two = ExactScalar::from_int(2);
        let wrap = self.extent == Extent::Periodic;
        let count = if wrap { cuts.len() } else { cuts.len() - 1 };
        let mut acc = ExactScalar::zero();
        for i in 0..count {
            let lo = cuts[i].clone();
            let hi = if i + 1 < cuts.len() {
                cuts[i + 1].clone()
            } else {
                &cuts[0] + &ExactScalar::one()
            };
            let mid = (&lo + &hi) / &two;
            let diff = self.density_at(&mid) - other.density_at(&mid);
            acc = acc + diff.abs() * (&hi - &lo);
        }
        Ok(acc)
    }
}

/// Slope of a lift's branch law at a point interior to some translated
/// basic interval.
fn lift_slope_at(f: &PiecewiseAffineMap, x: &ExactScalar) -> ExactScalar {
    let one = ExactScalar::one();
    let cells = f
        .window_cells(&(x - &one), &(x + &one))
        .expect("window around an interior point");
    for (lo, hi, law) in cells {
        if &lo <= x && x < &hi {
            return law.slope().clone();
        }
    }
    unreachable!("window cells tile the line");
}

/// Merged breakpoints of two same-extent measures. For windows this spans
/// the union of the two windows; for periodic measures it merges the two
/// period partitions.
fn refined_cuts(a: &StepDensityMeasure, b: &StepDensityMeasure) -> Vec<ExactScalar> {
    let mut cuts: Vec<ExactScalar> = a.breakpoints.iter().cloned().collect();
    cuts.extend(b.breakpoints.iter().cloned());
    crate::scalar::sort_dedup(&mut cuts);
    cuts
}

/// Exact L1 size of the eigen defect `transfer(mu) - lambda * mu`.
///
/// Zero exactly when `mu` is an eigen-measure of the transfer operator
/// with factor `lambda` (over the window union, or per period). The map
/// and measure must produce matching extents: an interval map pairs with a
/// window measure, a lift with either.
pub fn eigen_residual(
    f: &PiecewiseAffineMap,
    mu: &StepDensityMeasure,
    lambda: &ExactScalar,
) -> Result<ExactScalar> {
    if f.kind() == MapKind::Interval && mu.extent() == Extent::Periodic {
        return Err(Error::ExtentMismatch(
            "interval maps transfer window measures only".into(),
        ));
    }
    if lambda.sign() != core::cmp::Ordering::Greater {
        return Err(Error::InvalidParameter(format!(
            "eigen factor must be positive, got {lambda}"
        )));
    }
    let transferred = mu.apply_transfer(f)?;
    let scaled = mu.scaled(lambda)?;
    transferred.l1_distance(&scaled)
}

/// One normalised transfer step restricted to the measure's own window.
///
/// Sends `nu` to the restriction of `transfer(nu) / lambda` to the window
/// of `nu` and reports the retained mass. Iterating this from a
/// probability measure tracks how much mass the normalised dynamics keeps
/// inside the window.
pub fn power_step(
    f: &PiecewiseAffineMap,
    nu: &StepDensityMeasure,
    lambda: &ExactScalar,
) -> Result<(StepDensityMeasure, ExactScalar)> {
    let (w_lo, w_hi) = nu.window_bounds()?;
    if !lambda.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "normalising factor must be positive, got {lambda}"
        )));
    }
    let clipped = match f.kind() {
        // Lifts restrict in place: the transferred density at x depends
        // only on f near x, so the window never has to be left.
        MapKind::CircleLift => {
            nu.clipped_transfer_scaled(f, &lambda.recip()?, &w_lo, &w_hi)?
        }
        MapKind::Interval => {
            let transferred = nu.apply_transfer(f)?;
            let onescaled = transferred.scaled(&lambda.recip()?)?;
            onescaled.restricted_to(&w_lo, &w_hi)?
        }
    };
    let retained = clipped.mass_per_extent();
    Ok((clipped, retained))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::PiecewiseAffineMap;

    fn s(text: &str) -> ExactScalar {
        ExactScalar::parse(text).unwrap()
    }

    fn v(texts: &[&str]) -> Vec<ExactScalar> {
        texts.iter().map(|t| s(t)).collect()
    }

    fn tent() -> PiecewiseAffineMap {
        PiecewiseAffineMap::interval_from_values(v(&["0", "1/2", "1"]), v(&["0", "1", "0"]), true)
            .unwrap()
    }

    fn family_lift() -> PiecewiseAffineMap {
        PiecewiseAffineMap::lift_from_values(v(&["0", "157/264"]), v(&["-1", "107/50"]), true)
            .unwrap()
    }

    #[test]
    fn window_measure_masses() {
        let mu = StepDensityMeasure::window(v(&["0", "1/4", "1"]), v(&["2", "1/3"])).unwrap();
        assert_eq!(mu.total_mass(), Mass::Finite(s("3/4")));
        assert_eq!(mu.measure_of(&s("0"), &s("1/4")).unwrap(), s("1/2"));
        assert_eq!(mu.measure_of(&s("1/8"), &s("1/2")).unwrap(), s("1/4")
            + &(s("1/4") * s("1/3")));
        assert_eq!(mu.measure_of(&s("-5"), &s("0")).unwrap(), s("0"));
        assert_eq!(mu.measure_of(&s("1"), &s("7")).unwrap(), s("0"));
        assert!(mu.measure_of(&s("1"), &s("0")).is_err());
    }

    #[test]
    fn periodic_measure_masses() {
        let leb = StepDensityMeasure::lebesgue();
        assert_eq!(leb.total_mass(), Mass::Infinite);
        assert_eq!(leb.measure_of(&s("-3/2"), &s("5/2")).unwrap(), s("4"));
        let mu = StepDensityMeasure::periodic(v(&["0", "1/2"]), v(&["1", "3"])).unwrap();
        assert_eq!(mu.mass_per_extent(), s("2"));
        assert_eq!(mu.measure_of(&s("0"), &s("1/2")).unwrap(), s("1/2"));
        assert_eq!(mu.measure_of(&s("1/2"), &s("1")).unwrap(), s("3/2"));
        assert_eq!(mu.measure_of(&s("-1/4"), &s("1/4")).unwrap(), s("1"));
        assert_eq!(mu.measure_of(&s("3"), &s("5")).unwrap(), s("4"));
        let zero = StepDensityMeasure::periodic(v(&["0"]), v(&["0"])).unwrap();
        assert_eq!(zero.total_mass(), Mass::Finite(s("0")));
    }

    #[test]
    fn tent_transfer_doubles_lebesgue() {
        let leb = StepDensityMeasure::lebesgue_on(s("0"), s("1")).unwrap();
        let t = leb.apply_transfer(&tent()).unwrap();
        // Constant slope 2 pulls unit density back to density 2.
        assert_eq!(t.measure_of(&s("0"), &s("1")).unwrap(), s("2"));
        assert_eq!(
            eigen_residual(&tent(), &leb, &s("2")).unwrap(),
            ExactScalar::zero()
        );
        assert!(eigen_residual(&tent(), &leb, &s("3")).unwrap().is_positive());
    }

    #[test]
    fn transfer_density_tracks_image_density() {
        // Density 1 on [0,1/2), 0 on [1/2,1): pulled back through the tent
        // the mass concentrates where the tent lands below 1/2.
        let mu = StepDensityMeasure::window(v(&["0", "1/2", "1"]), v(&["1", "0"])).unwrap();
        let t = mu.apply_transfer(&tent()).unwrap();
        assert_eq!(t.measure_of(&s("0"), &s("1/4")).unwrap(), s("1/2"));
        assert_eq!(t.measure_of(&s("1/4"), &s("1/2")).unwrap(), s("0"));
        assert_eq!(t.measure_of(&s("1/2"), &s("3/4")).unwrap(), s("0"));
        assert_eq!(t.measure_of(&s("3/4"), &s("1")).unwrap(), s("1/2"));
    }

    #[test]
    fn lift_transfer_keeps_lebesgue_eigen() {
        let f = family_lift();
        let leb = StepDensityMeasure::lebesgue();
        let lambda = s("132/25");
        assert_eq!(eigen_residual(&f, &leb, &lambda).unwrap(), s("0"));
        assert!(eigen_residual(&f, &leb, &s("5")).unwrap().is_positive());
    }

    #[test]
    fn linearity_of_transfer() {
        let f = tent();
        let mu = StepDensityMeasure::window(v(&["0", "1/3", "1"]), v(&["1", "1/2"])).unwrap();
        let nu = StepDensityMeasure::window(v(&["0", "3/4", "1"]), v(&["1/4", "2"])).unwrap();
        let sum = mu.try_add(&nu).unwrap();
        let t_sum = sum.apply_transfer(&f).unwrap();
        let t_parts = mu
            .apply_transfer(&f)
            .unwrap()
            .try_add(&nu.apply_transfer(&f).unwrap())
            .unwrap();
        assert_eq!(t_sum.l1_distance(&t_parts).unwrap(), s("0"));
        let scaled = mu.scaled(&s("7/3")).unwrap();
        let t_scaled = scaled.apply_transfer(&f).unwrap();
        let scaled_t = mu.apply_transfer(&f).unwrap().scaled(&s("7/3")).unwrap();
        assert_eq!(t_scaled.l1_distance(&scaled_t).unwrap(), s("0"));
    }

    #[test]
    fn window_transfer_through_lift() {
        let f = family_lift();
        let nu = StepDensityMeasure::uniform_probability_on(s("-2"), s("2")).unwrap();
        let (next, retained) = power_step(&f, &nu, &s("132/25")).unwrap();
        assert!(retained.is_positive());
        assert!(retained < s("1"));
        let (_, retained2) = power_step(&f, &next, &s("132/25")).unwrap();
        assert!(retained2 < retained);
    }

    #[test]
    fn restriction_and_distance() {
        let mu = StepDensityMeasure::window(v(&["0", "1"]), v(&["1"])).unwrap();
        let r = mu.restricted_to(&s("1/4"), &s("1/2")).unwrap();
        assert_eq!(r.mass_per_extent(), s("1/4"));
        let nu = StepDensityMeasure::window(v(&["0", "1/2", "1"]), v(&["1", "1"])).unwrap();
        assert_eq!(mu.l1_distance(&nu).unwrap(), s("0"));
    }
}
