//! Constant-slope models from eigen-measures.
//!
//! Given an interval map `f` and a probability step measure `mu` on the
//! unit interval with `transfer(mu) = lambda * mu`, the cumulative function
//! `phi(x) = mu([0, x])` is a nondecreasing continuous surjection of
//! `[0,1]` onto itself, and `g = phi . f . phi^{-1}` is well defined and
//! piecewise affine with every branch slope of absolute value `lambda`.
//! Cells that `mu` gives zero mass collapse to points downstairs; the
//! eigen relation forces the one-sided values of `f` on a collapsed cell
//! to land in a single `phi`-fiber, which is checked exactly rather than
//! assumed. When `f` is continuous the construction produces a continuous
//! factor, and the constructor verifies that too.
//!
//! Everything is exact: the builder refines the partition by the
//! `f`-preimages of the measure breakpoints, reads `phi` off the prefix
//! sums, and checks the resulting branch slopes against `lambda`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::map::{AffineLaw, MapKind, PiecewiseAffineMap};
use crate::measure::{eigen_residual, Extent, StepDensityMeasure};
use crate::scalar::ExactScalar;

/// A continuous nondecreasing piecewise affine surjection of `[0,1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneCdf {
    xs: Vec<ExactScalar>,
    ys: Vec<ExactScalar>,
}

impl MonotoneCdf {
    /// The cumulative function of a probability measure on `[0,1]`.
    pub fn from_measure(mu: &StepDensityMeasure) -> Result<Self> {
        let (lo, hi) = mu.window_bounds()?;
        if !lo.is_zero() || !hi.is_one() {
            return Err(Error::InvalidMeasure(format!(
                "cumulative function needs a measure on [0,1], got [{lo}, {hi}]"
            )));
        }
        let xs = mu.breakpoints().to_vec();
        let mut ys = Vec::with_capacity(xs.len());
        let mut acc = ExactScalar::zero();
        ys.push(acc.clone());
        for i in 0..mu.densities().len() {
            let len = &xs[i + 1] - &xs[i];
            acc = acc + &mu.densities()[i] * &len;
            ys.push(acc.clone());
        }
        Ok(MonotoneCdf { xs, ys })
    }

    /// Vertex abscissae.
    pub fn breakpoints(&self) -> &[ExactScalar] {
        &self.xs
    }

    /// Vertex ordinates (the prefix masses).
    pub fn values(&self) -> &[ExactScalar] {
        &self.ys
    }

    /// Exact evaluation on `[0,1]`.
    pub fn eval(&self, x: &ExactScalar) -> Result<ExactScalar> {
        if x < &self.xs[0] || x > &self.xs[self.xs.len() - 1] {
            return Err(Error::OutOfDomain(format!("{x}")));
        }
        let i = match self.xs.binary_search(x) {
            Ok(i) => return Ok(self.ys[i].clone()),
            Err(i) => i - 1,
        };
        let slope = (&self.ys[i + 1] - &self.ys[i]).try_div(&(&self.xs[i + 1] - &self.xs[i]))?;
        Ok(&self.ys[i] + &(&slope * &(x - &self.xs[i])))
    }
}

/// A verified semiconjugacy `phi . source = factor . phi`.
#[derive(Clone, Debug)]
pub struct Semiconjugacy {
    phi: MonotoneCdf,
    source: PiecewiseAffineMap,
    factor: PiecewiseAffineMap,
    lambda: ExactScalar,
    collapsed: Vec<(ExactScalar, ExactScalar)>,
}

impl Semiconjugacy {
    /// The change of coordinates `phi`.
    pub fn phi(&self) -> &MonotoneCdf {
        &self.phi
    }

    /// The original map.
    pub fn source(&self) -> &PiecewiseAffineMap {
        &self.source
    }

    /// The constant-slope factor `g`.
    pub fn factor(&self) -> &PiecewiseAffineMap {
        &self.factor
    }

    /// The common absolute branch slope of the factor.
    pub fn lambda(&self) -> &ExactScalar {
        &self.lambda
    }

    /// Cells of zero measure that `phi` collapses to points.
    pub fn collapsed_cells(&self) -> &[(ExactScalar, ExactScalar)] {
        &self.collapsed
    }

    /// Re-checks the defining identity on a refinement grid, exactly.
    ///
    /// Confirms `phi(f(m)) = g(phi(m))` at every refined-cell midpoint and
    /// matches one-sided limits at refined-cell endpoints through `phi`.
    pub fn verify(&self) -> Result<()> {
        let cells = refinement_cells(&self.source, &self.phi)?;
        let two = ExactScalar::from_int(2);
        for (u, v) in &cells {
            let pu = self.phi.eval(u)?;
            let pv = self.phi.eval(v)?;
            if pu == pv {
                continue;
            }
            let mid = (u + v) / &two;
            let fm = self
                .source
                .right_limit_at(&mid)
                .expect("midpoint is interior");
            let lhs = self.phi.eval(&fm)?;
            let rhs = self.factor.evaluate(&self.phi.eval(&mid)?).map_err(|e| {
                Error::InvalidMap(format!("factor undefined inside a cell image: {e}"))
            })?;
            if lhs != rhs {
                return Err(Error::InvalidMap(format!(
                    "identity fails at {mid}: phi(f) = {lhs} but g(phi) = {rhs}"
                )));
            }
            // One-sided limits through phi agree at the cell ends.
            let f_right = self.source.right_limit_at(u).expect("interior limit");
            let g_right = self.factor.right_limit_at(&pu).expect("interior limit");
            if self.phi.eval(&f_right)? != g_right {
                return Err(Error::InvalidMap(format!(
                    "right limits disagree through phi at {u}"
                )));
            }
            let f_left = self.source.left_limit_at(v).expect("interior limit");
            let g_left = self.factor.left_limit_at(&pv).expect("interior limit");
            if self.phi.eval(&f_left)? != g_left {
                return Err(Error::InvalidMap(format!(
                    "left limits disagree through phi at {v}"
                )));
            }
        }
        Ok(())
    }
}

/// The partition refining the source partition, the measure partition, and
/// the source preimages of measure breakpoints, as consecutive cells.
fn refinement_cells(
    f: &PiecewiseAffineMap,
    phi: &MonotoneCdf,
) -> Result<Vec<(ExactScalar, ExactScalar)>> {
    let mut cuts: Vec<ExactScalar> = f.breakpoints().to_vec();
    cuts.extend(phi.breakpoints().iter().cloned());
    for (i, law) in f.laws().iter().enumerate() {
        let (lo, hi) = law.image_of(&f.breakpoints()[i], &f.breakpoints()[i + 1]);
        for q in phi.breakpoints() {
            if q > &lo && q < &hi {
                cuts.push(law.invert(q));
            }
        }
    }
    crate::scalar::sort_dedup(&mut cuts);
    Ok(cuts.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect())
}

/// Builds the constant-slope model of `f` from an eigen-measure.
///
/// `f` must be an interval map; `mu` a probability step measure on `[0,1]`
/// with `transfer(mu) = lambda * mu` exactly. The returned factor has
/// every branch slope of absolute value `lambda`, is continuous whenever
/// `f` is, and satisfies the semiconjugacy identity exactly (checked on
/// construction via [`Semiconjugacy::verify`]).
pub fn build_semiconjugacy(
    f: &PiecewiseAffineMap,
    mu: &StepDensityMeasure,
    lambda: &ExactScalar,
) -> Result<Semiconjugacy> {
    if f.kind() != MapKind::Interval {
        return Err(Error::DomainMismatch(
            "semiconjugacy construction works on interval maps".into(),
        ));
    }
    if mu.extent() != Extent::Window {
        return Err(Error::ExtentMismatch(
            "eigen-measure must be a window measure on [0,1]".into(),
        ));
    }
    let total = mu.mass_per_extent();
    if !total.is_one() {
        return Err(Error::NotProbability(format!("total mass {total}")));
    }
    let residual = eigen_residual(f, mu, lambda)?;
    if !residual.is_zero() {
        return Err(Error::NotEigen(format!(
            "transfer defect has L1 size {residual}"
        )));
    }
    let phi = MonotoneCdf::from_measure(mu)?;
    let cells = refinement_cells(f, &phi)?;

    let mut g_breaks: Vec<ExactScalar> = Vec::new();
    let mut g_laws: Vec<AffineLaw> = Vec::new();
    let mut collapsed: Vec<(ExactScalar, ExactScalar)> = Vec::new();

    for (u, v) in &cells {
        let pu = phi.eval(u)?;
        let pv = phi.eval(v)?;
        // One-sided values of f into the cell; f is affine inside it.
        let fu = f.right_limit_at(u).expect("cell start has a right limit");
        let fv = f.left_limit_at(v).expect("cell end has a left limit");
        let pfu = phi.eval(&fu)?;
        let pfv = phi.eval(&fv)?;
        if pu == pv {
            // The cell is mu-null; the eigen relation makes its image
            // mu-null too, so both ends land in the same phi-fiber.
            if pfu != pfv {
                return Err(Error::NotEigen(format!(
                    "null cell [{u}, {v}] has an image of positive measure"
                )));
            }
            collapsed.push((u.clone(), v.clone()));
            continue;
        }
        let law = AffineLaw::through_points(&pu, &pfu, &pv, &pfv)?;
        assert_eq!(
            law.slope().abs(),
            *lambda,
            "eigen relation forces factor slope lambda"
        );
        if let Some(last) = g_breaks.last() {
            assert_eq!(last, &pu, "factor cells are contiguous");
        } else {
            g_breaks.push(pu);
        }
        g_breaks.push(pv);
        g_laws.push(law);
    }

    let factor = PiecewiseAffineMap::interval_from_laws(g_breaks, g_laws, f.is_continuous())?;
    let semi = Semiconjugacy {
        phi,
        source: f.clone(),
        factor,
        lambda: lambda.clone(),
        collapsed,
    };
    semi.verify()?;
    Ok(semi)
}
