//! Finite Markov structure: transition matrices, Perron data, and the
//! topological entropy of a constant slope.
//!
//! For a Markov partition (cell images are exact unions of cells) the
//! transfer operator restricted to cell masses is the 0-1 transition
//! matrix with a 1 wherever a cell's image covers another cell. Cell
//! masses of an eigen-measure form a positive right eigenvector at the
//! spectral radius.
//!
//! Two roads lead to that eigenvector. The certified numeric road runs
//! power iteration on `A + I` (primitive whenever `A` is irreducible) in
//! exact rational arithmetic and reports min/max Rayleigh-style ratios,
//! which bracket the spectral radius at any requested tolerance. The
//! exact road computes the characteristic polynomial, extracts integer
//! and quadratic roots, identifies the spectral radius among them with
//! the certified bracket, and solves for the eigenvector exactly; it
//! reports nothing when the Perron root lives in a field this crate
//! cannot represent.
//!
//! Entropy of a constant-slope map is the logarithm of the slope for
//! finitely many branches. With countably many branches the identity can
//! fail, which is why the type carries the branch-count caveat rather
//! than silently claiming it. Logarithms are never floating point: an
//! exact rational bracket of the slope feeds a hyperbolic-arctangent
//! series with explicit tail bounds, giving enclosures that tighten on
//! demand.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::map::{MapKind, PiecewiseAffineMap};
use crate::measure::StepDensityMeasure;
use crate::scalar::ExactScalar;
use crate::semiconj::{build_semiconjugacy, Semiconjugacy};

/// Caveat attached to slope-entropy values.
pub const FINITE_BRANCH_CAVEAT: &str = "log(slope) equals topological entropy for \
constant-slope maps with finitely many branches; with countably many branches the \
identity can fail";

/// The 0-1 covering matrix of a Markov partition under an interval map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    partition: Vec<ExactScalar>,
    entries: Vec<Vec<u8>>,
}

impl TransitionMatrix {
    /// Builds the matrix, checking the Markov property exactly.
    ///
    /// The partition must refine the map's branch partition and every
    /// cell-image endpoint must itself be a partition point; entry
    /// `(i, j)` is 1 exactly when the image of cell `i` covers cell `j`.
    pub fn from_map(f: &PiecewiseAffineMap, partition: &[ExactScalar]) -> Result<Self> {
        if f.kind() != MapKind::Interval {
            return Err(Error::DomainMismatch(
                "transition matrices are built from interval maps".into(),
            ));
        }
        if partition.len() < 2 {
            return Err(Error::NotMarkov("partition needs at least one cell".into()));
        }
        for w in partition.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::NotMarkov(format!(
                    "partition not strictly increasing: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if !partition[0].is_zero() || !partition[partition.len() - 1].is_one() {
            return Err(Error::NotMarkov("partition must run from 0 to 1".into()));
        }
        for b in f.breakpoints() {
            if partition.binary_search(b).is_err() {
                return Err(Error::NotMarkov(format!(
                    "partition must refine the branch partition; missing {b}"
                )));
            }
        }
        let n = partition.len() - 1;
        let two = ExactScalar::from_int(2);
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let mid = (&partition[i] + &partition[i + 1]) / &two;
            let idx = f.breakpoints().partition_point(|b| b <= &mid) - 1;
            let law = &f.laws()[idx.min(f.laws().len() - 1)];
            let (lo, hi) = law.image_of(&partition[i], &partition[i + 1]);
            for end in [&lo, &hi] {
                if partition.binary_search(end).is_err() {
                    return Err(Error::NotMarkov(format!(
                        "image endpoint {end} of cell {i} is not a partition point"
                    )));
                }
            }
            images.push((lo, hi));
        }
        let mut entries = vec![vec![0u8; n]; n];
        for i in 0..n {
            let (lo, hi) = &images[i];
            for j in 0..n {
                if &partition[j] >= lo && &partition[j + 1] <= hi {
                    entries[i][j] = 1;
                }
            }
        }
        Ok(TransitionMatrix {
            partition: partition.to_vec(),
            entries,
        })
    }

    /// Number of states.
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// The 0-1 entries, row by row.
    pub fn entries(&self) -> &[Vec<u8>] {
        &self.entries
    }

    /// The Markov partition the matrix was built from.
    pub fn partition(&self) -> &[ExactScalar] {
        &self.partition
    }

    /// True when every state communicates with every other.
    pub fn is_irreducible(&self) -> bool {
        let n = self.size();
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    let edge = if forward {
                        self.entries[i][j]
                    } else {
                        self.entries[j][i]
                    };
                    if edge == 1 && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        // Every state has an outgoing edge in a covering matrix of a
        // surjective-enough map, but check anyway: a zero row can never
        // communicate.
        if self.entries.iter().any(|row| row.iter().all(|&e| e == 0)) {
            return false;
        }
        reach(true) && reach(false)
    }

    fn first_non_communicating_pair(&self) -> Option<(usize, usize)> {
        let n = self.size();
        let reachable_from = |start: usize| {
            let mut seen = vec![false; n];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if self.entries[i][j] == 1 && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            seen
        };
        for i in 0..n {
            let seen = reachable_from(i);
            if let Some(j) = (0..n).find(|&j| !seen[j]) {
                return Some((i, j));
            }
        }
        None
    }

    fn apply_shifted(&self, v: &[BigRational]) -> Vec<BigRational> {
        // (A + I) v, keeping iteration primitive even when A is periodic.
        let n = self.size();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = v[i].clone();
            for j in 0..n {
                if self.entries[i][j] == 1 {
                    acc += &v[j];
                }
            }
            out.push(acc);
        }
        out
    }

    /// Certified bracket of the spectral radius plus approximate masses.
    ///
    /// Runs exact rational power iteration on `A + I`; at every step the
    /// minimum and maximum of `((A+I)v)_i / v_i` bracket the shifted
    /// spectral radius, so the returned enclosure is rigorous whatever
    /// the iteration count. The masses are the current iteration vector,
    /// positive and summing to one, accurate to roughly the same order as
    /// the bracket but not individually certified.
    pub fn perron_enclosure(&self, tol: &ExactScalar) -> Result<PerronData> {
        if !tol.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        if !self.is_irreducible() {
            let pair = self.first_non_communicating_pair();
            return Err(Error::NotIrreducible(match pair {
                Some((i, j)) => format!("state {j} is unreachable from state {i}"),
                None => String::from("a state has no outgoing covers"),
            }));
        }
        let n = self.size();
        let mut v: Vec<BigRational> =
            vec![BigRational::new(BigInt::one(), BigInt::from(n as u64)); n];
        for _ in 0..20_000 {
            let w = self.apply_shifted(&v);
            let mut lo: Option<BigRational> = None;
            let mut hi: Option<BigRational> = None;
            for i in 0..n {
                let ratio = &w[i] / &v[i];
                if lo.as_ref().is_none_or(|m| &ratio < m) {
                    lo = Some(ratio.clone());
                }
                if hi.as_ref().is_none_or(|m| &ratio > m) {
                    hi = Some(ratio);
                }
            }
            let lo = lo.unwrap() - BigRational::one();
            let hi = hi.unwrap() - BigRational::one();
            let sum: BigRational = w.iter().sum();
            v = w.into_iter().map(|x| x / &sum).collect();
            let width = ExactScalar::from_rational(&hi - &lo);
            if &width <= tol {
                return Ok(PerronData {
                    enclosure: Enclosure::new(
                        ExactScalar::from_rational(lo),
                        ExactScalar::from_rational(hi),
                    )?,
                    masses: v.into_iter().map(ExactScalar::from_rational).collect(),
                });
            }
        }
        Err(Error::InvalidParameter(format!(
            "power iteration failed to reach tolerance {tol}"
        )))
    }

    /// Characteristic polynomial coefficients `[1, c_1, ..., c_n]` of the
    /// monic polynomial, by the trace recursion.
    fn char_poly(&self) -> Vec<BigRational> {
        let n = self.size();
        let a = |i: usize, j: usize| {
            BigRational::from_integer(BigInt::from(self.entries[i][j] as u32))
        };
        // M starts as the identity; each round sets c_k = -tr(A M)/k and
        // M <- A M + c_k I.
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut coeffs = vec![BigRational::one()];
        for k in 1..=n {
            // AM = A * M.
            let mut am = vec![vec![BigRational::zero(); n]; n];
            for i in 0..n {
                for l in 0..n {
                    if self.entries[i][l] == 1 {
                        for j in 0..n {
                            let term = &a(i, l) * &m[l][j];
                            am[i][j] += term;
                        }
                    }
                }
            }
            let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
            let ck = -tr / BigRational::from_integer(BigInt::from(k as u64));
            for i in 0..n {
                for j in 0..n {
                    m[i][j] = am[i][j].clone();
                    if i == j {
                        m[i][j] += &ck;
                    }
                }
            }
            coeffs.push(ck);
        }
        coeffs
    }

    /// Exact spectral radius and eigen-masses when they live in the
    /// rationals or one quadratic field; `None` when the Perron root has
    /// higher degree.
    ///
    /// Every returned value is verified: the masses are strictly
    /// positive, sum to one, and satisfy the eigen equation exactly.
    pub fn exact_perron(&self) -> Result<Option<ExactPerron>> {
        let probe_tol = ExactScalar::from_ratio(1, 1_000_000_000)?;
        let bracket = self.perron_enclosure(&probe_tol)?.enclosure;
        let mut poly = self.char_poly();
        // Deflate zero roots outright.
        while poly.last().map(|c| c.is_zero()) == Some(true) && poly.len() > 1 {
            poly.pop();
        }
        let mut candidates: Vec<ExactScalar> = Vec::new();
        // Integer roots divide the constant term (the polynomial is monic
        // with integer coefficients).
        let constant = poly[poly.len() - 1].clone();
        debug_assert!(constant.is_integer(), "covering matrix traces are integral");
        let mut work = poly.clone();
        if let Ok(limit) = u64::try_from(constant.numer().abs()) {
            let mut divisors: Vec<i64> = Vec::new();
            let mut d = 1u64;
            while d * d <= limit {
                if limit % d == 0 {
                    divisors.push(d as i64);
                    divisors.push((limit / d) as i64);
                }
                d += 1;
            }
            divisors.sort_unstable();
            divisors.dedup();
            for d in divisors {
                for root in [d, -d] {
                    let r = BigRational::from_integer(BigInt::from(root));
                    loop {
                        let (quot, rem) = synthetic_divide(&work, &r);
                        if rem.is_zero() && work.len() > 1 {
                            work = quot;
                            if root > 0 {
                                candidates.push(ExactScalar::from_int(root));
                            }
                        } else {
                            break;
                        }
                    }
                }
            }
        }
        if work.len() == 3 {
            // Quadratic remainder x^2 + b x + c.
            let b = work[1].clone();
            let c = work[2].clone();
            let disc = &b * &b - BigRational::from_integer(BigInt::from(4)) * &c;
            if !disc.is_negative() {
                if let Ok(sq) = ExactScalar::sqrt_of_rational(&disc) {
                    let minus_b = ExactScalar::from_rational(-b);
                    let half = ExactScalar::from_ratio(1, 2)?;
                    for sign in [1i64, -1] {
                        let root = (&minus_b
                            + &(&sq * &ExactScalar::from_int(sign)))
                            * half.clone();
                        if root.is_positive() {
                            candidates.push(root);
                        }
                    }
                }
            }
        }
        for lambda in candidates {
            if !bracket.contains(&lambda) {
                continue;
            }
            if let Some(masses) = self.solve_eigenvector(&lambda)? {
                return Ok(Some(ExactPerron { lambda, masses }));
            }
        }
        Ok(None)
    }

    /// Kernel vector of `A - lambda I`, validated to be strictly positive
    /// and to satisfy the eigen equation exactly; normalised to mass one.
    fn solve_eigenvector(&self, lambda: &ExactScalar) -> Result<Option<Vec<ExactScalar>>> {
        let n = self.size();
        let mut m: Vec<Vec<ExactScalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let e = ExactScalar::from_int(self.entries[i][j] as i64);
                        if i == j {
                            e - lambda
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect();
        // Row-reduce; record the pivot column of each eliminated row.
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
        let mut rank = 0usize;
        for col in 0..n {
            let Some(row) = (rank..n).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, row);
            let inv = m[rank][col].recip()?;
            for j in col..n {
                m[rank][j] = &m[rank][j] * &inv;
            }
            for r in 0..n {
                if r != rank && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for j in col..n {
                        let delta = &factor * &m[rank][j];
                        m[r][j] = &m[r][j] - &delta;
                    }
                }
            }
            pivot_of_col[col] = Some(rank);
            rank += 1;
        }
        let Some(free) = (0..n).find(|&c| pivot_of_col[c].is_none()) else {
            // Full rank: lambda is not an eigenvalue after all.
            return Ok(None);
        };
        let mut v = vec![ExactScalar::zero(); n];
        v[free] = ExactScalar::one();
        for col in 0..n {
            if let Some(row) = pivot_of_col[col] {
                v[col] = -&m[row][free];
            }
        }
        // Perron vectors are strictly signed; anything else is a wrong
        // eigenvalue or a defective solve.
        if v.iter().all(|x| x.is_negative()) {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
        if !v.iter().all(|x| x.is_positive()) {
            return Ok(None);
        }
        // Verify A v = lambda v exactly before trusting anything.
        for i in 0..n {
            let mut acc = ExactScalar::zero();
            for j in 0..n {
                if self.entries[i][j] == 1 {
                    acc = acc + &v[j];
                }
            }
            if acc != lambda * &v[i] {
                return Ok(None);
            }
        }
        let total = crate::scalar::sum(v.iter());
        let inv = total.recip()?;
        Ok(Some(v.into_iter().map(|x| x * &inv).collect()))
    }
}

/// Certified spectral-radius bracket with approximate masses.
#[derive(Clone, Debug)]
pub struct PerronData {
    /// Rigorous enclosure of the spectral radius.
    pub enclosure: Enclosure,
    /// Positive, mass-one iteration vector (approximate).
    pub masses: Vec<ExactScalar>,
}

/// Exact spectral radius and verified eigen-masses.
#[derive(Clone, Debug)]
pub struct ExactPerron {
    /// The spectral radius as an exact scalar.
    pub lambda: ExactScalar,
    /// Strictly positive cell masses summing to one, `A m = lambda m`.
    pub masses: Vec<ExactScalar>,
}

/// The step measure whose cells carry the given masses.
pub fn eigen_measure_from_masses(
    partition: &[ExactScalar],
    masses: &[ExactScalar],
) -> Result<StepDensityMeasure> {
    if partition.len() != masses.len() + 1 {
        return Err(Error::InvalidMeasure(format!(
            "{} partition points with {} masses",
            partition.len(),
            masses.len()
        )));
    }
    let mut densities = Vec::with_capacity(masses.len());
    for i in 0..masses.len() {
        let len = &partition[i + 1] - &partition[i];
        densities.push(masses[i].try_div(&len)?);
    }
    StepDensityMeasure::window(partition.to_vec(), densities)
}

/// A Markov map's exact Perron data, eigen-measure, and constant-slope
/// model, bundled.
#[derive(Clone, Debug)]
pub struct MarkovModel {
    pub matrix: TransitionMatrix,
    pub perron: ExactPerron,
    pub measure: StepDensityMeasure,
    pub semiconjugacy: Semiconjugacy,
}

/// End-to-end pipeline: transition matrix, exact Perron data, candidate
/// eigen-measure, semiconjugacy.
///
/// Fails with the exact reason when any stage breaks down: the partition
/// is not Markov, the matrix is reducible, the Perron root is not
/// representable, or the Perron masses do not actually form a step
/// eigen-measure (they need not: mass balance on cells is necessary, not
/// sufficient, and the builder checks the full transfer identity).
pub fn markov_semiconjugacy(
    f: &PiecewiseAffineMap,
    partition: &[ExactScalar],
) -> Result<MarkovModel> {
    let matrix = TransitionMatrix::from_map(f, partition)?;
    let Some(perron) = matrix.exact_perron()? else {
        return Err(Error::InvalidParameter(
            "spectral radius is not rational or quadratic; \
             supply an eigen-measure explicitly"
                .into(),
        ));
    };
    let measure = eigen_measure_from_masses(partition, &perron.masses)?;
    let semiconjugacy = build_semiconjugacy(f, &measure, &perron.lambda)?;
    Ok(MarkovModel {
        matrix,
        perron,
        measure,
        semiconjugacy,
    })
}

fn synthetic_divide(poly: &[BigRational], root: &BigRational) -> (Vec<BigRational>, BigRational) {
    let mut quotient = Vec::with_capacity(poly.len() - 1);
    let mut carry = BigRational::zero();
    for c in poly {
        let value = c + &carry * root;
        if quotient.len() + 1 < poly.len() {
            quotient.push(value.clone());
        }
        carry = value;
    }
    (quotient, carry)
}

/// Topological entropy of a constant-slope map with finitely many
/// branches, represented exactly as the logarithm of the slope.
#[derive(Clone, Debug)]
pub struct SlopeEntropy {
    slope: ExactScalar,
}

/// Entropy of a constant absolute slope `>= 1`.
pub fn entropy_of_slope(slope: &ExactScalar) -> Result<SlopeEntropy> {
    if slope < &ExactScalar::one() {
        return Err(Error::InvalidParameter(format!(
            "entropy of slope {slope} below one is not log(slope)"
        )));
    }
    Ok(SlopeEntropy {
        slope: slope.clone(),
    })
}

impl SlopeEntropy {
    /// The underlying slope.
    pub fn slope(&self) -> &ExactScalar {
        &self.slope
    }

    /// True when the entropy is exactly zero (slope one).
    pub fn is_zero(&self) -> bool {
        self.slope.is_one()
    }

    /// Exact test of `entropy >= log(sqrt(2))`, decided by squaring.
    pub fn at_least_log_sqrt2(&self) -> bool {
        self.slope.powi(2) >= ExactScalar::from_int(2)
    }

    /// Rigorous enclosure of the entropy in nats with width at most
    /// `10^-digits`.
    pub fn nats_enclosure(&self, digits: u32) -> Result<Enclosure> {
        if self.is_zero() {
            return Ok(Enclosure::point(ExactScalar::zero()));
        }
        let mut precision = digits + 4;
        let mut terms = (digits as usize) + 8;
        let want = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
        for _ in 0..32 {
            let (xlo, xhi) = rational_bounds(&self.slope, precision);
            let (llo, _) = ln_bounds(&xlo, terms);
            let (_, lhi) = ln_bounds(&xhi, terms);
            if &lhi - &llo <= want {
                return Ok(Enclosure::new(
                    ExactScalar::from_rational(llo),
                    ExactScalar::from_rational(lhi),
                )?);
            }
            precision *= 2;
            terms *= 2;
        }
        Err(Error::InvalidParameter(format!(
            "entropy enclosure did not converge at {digits} digits"
        )))
    }

    /// Decimal rendering of the entropy in nats, correctly rounded.
    ///
    /// The logarithm of an algebraic slope other than one is never
    /// exactly representable, so tightening the enclosure until both ends
    /// round identically terminates.
    pub fn decimal(&self, digits: usize) -> Result<String> {
        if self.is_zero() {
            return Ok(ExactScalar::zero().to_decimal(digits));
        }
        let mut guard = digits as u32 + 6;
        for _ in 0..16 {
            let enc = self.nats_enclosure(guard)?;
            let lo = enc.lo().to_decimal(digits);
            let hi = enc.hi().to_decimal(digits);
            if lo == hi {
                return Ok(lo);
            }
            guard += 8;
        }
        Err(Error::InvalidParameter(format!(
            "entropy rendering did not settle at {digits} digits"
        )))
    }
}

/// Rational bracket `[lo, hi]` of a scalar with `hi - lo <= 10^-digits`.
fn rational_bounds(x: &ExactScalar, digits: u32) -> (BigRational, BigRational) {
    if let Some(r) = x.as_rational() {
        return (r.clone(), r.clone());
    }
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = x * &ExactScalar::from(scale.clone());
    let n = scaled.floor_int();
    (
        BigRational::new(n.clone(), scale.clone()),
        BigRational::new(n + BigInt::one(), scale),
    )
}

/// Bounds of `2 atanh(t) = ln((1+t)/(1-t))` from the odd series with an
/// explicit geometric tail bound. Requires `|t| < 1`.
fn atanh2_bounds(t: &BigRational, terms: usize) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(BigInt::from(2));
    let t2 = t * t;
    let mut sum = BigRational::zero();
    let mut power = t.clone();
    for j in 0..terms {
        let denom = BigRational::from_integer(BigInt::from(2 * j as u64 + 1));
        sum += &two * &power / denom;
        power *= &t2;
    }
    // power is now |t|^(2 terms + 1) up to sign.
    let tail = &two * &power.abs()
        / (BigRational::from_integer(BigInt::from(2 * terms as u64 + 1))
            * (BigRational::one() - &t2));
    if t.is_negative() {
        (&sum - &tail, sum.clone())
    } else {
        (sum.clone(), &sum + &tail)
    }
}

/// Rigorous bounds for `ln x` of a positive rational, by range reduction
/// to `[2/3, 4/3]` and the atanh series.
fn ln_bounds(x: &BigRational, terms: usize) -> (BigRational, BigRational) {
    assert!(x.is_positive(), "logarithm of a nonpositive rational");
    let four_thirds = BigRational::new(BigInt::from(4), BigInt::from(3));
    let two_thirds = BigRational::new(BigInt::from(2), BigInt::from(3));
    let two = BigRational::from_integer(BigInt::from(2));
    let mut y = x.clone();
    let mut k: i64 = 0;
    while y > four_thirds {
        y /= &two;
        k += 1;
    }
    while y < two_thirds {
        y *= &two;
        k -= 1;
    }
    let t = (&y - BigRational::one()) / (&y + BigRational::one());
    let (slo, shi) = atanh2_bounds(&t, terms);
    if k == 0 {
        return (slo, shi);
    }
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let (l2lo, l2hi) = atanh2_bounds(&third, terms);
    let kq = BigRational::from_integer(BigInt::from(k));
    if k > 0 {
        (slo + &kq * l2lo, shi + &kq * l2hi)
    } else {
        (slo + &kq * l2hi, shi + &kq * l2lo)
    }
}
