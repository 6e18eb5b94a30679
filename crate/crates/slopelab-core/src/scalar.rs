//! Exact scalars: rationals and real quadratic surds.
//!
//! A scalar is either a rational number or a value `a + b*sqrt(d)` with
//! rational `a`, nonzero rational `b`, and a square-free integer `d >= 2`.
//! The representation is canonical, so derived structural equality agrees
//! with numerical equality, and one square-free `d` never masquerades as
//! another. Radicands are reduced by trial division, which is certifiable
//! only when the raw radicand fits in 32 bits; larger inputs are rejected.
//!
//! Comparisons are total and exact. Two values in the same field compare by
//! taking a sign: the sign of `a + b*sqrt(d)` is decided by the signs of `a`
//! and `b` plus at most one comparison of `a*a` against `b*b*d`. Values in
//! distinct quadratic fields compare by moving the rational parts to one
//! side and squaring once more, which grounds out in a same-field sign.
//! Equality across distinct square-free radicands is impossible for nonzero
//! irrational parts, so the total order is consistent with structural
//! equality.
//!
//! Arithmetic between two distinct quadratic fields has no home field and
//! is a hard error. The checked methods (`try_add` and friends) report it;
//! the operator impls panic and are meant for code paths that have already
//! joined fields via [`Field::join`].

use alloc::string::{String, ToString};
use alloc::{format, vec::Vec};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest raw radicand whose square-free reduction we certify.
pub const MAX_RADICAND: u64 = u32::MAX as u64;

/// The field a scalar lives in.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Field {
    /// The rationals.
    Rational,
    /// The quadratic extension by `sqrt(d)` for a square-free `d >= 2`.
    Quadratic(u64),
}

impl Field {
    /// Smallest common field of two scalars, if one exists.
    ///
    /// Rationals embed in every quadratic field; two distinct quadratic
    /// fields have no common field in this representation.
    pub fn join(self, other: Field) -> Result<Field> {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Ok(f),
            (Field::Quadratic(x), Field::Quadratic(y)) if x == y => Ok(self),
            (Field::Quadratic(x), Field::Quadratic(y)) => {
                Err(Error::MixedFields { left: x, right: y })
            }
        }
    }
}

/// Joined field of a slice of scalars.
pub fn common_field(scalars: &[&ExactScalar]) -> Result<Field> {
    let mut field = Field::Rational;
    for s in scalars {
        field = field.join(s.field())?;
    }
    Ok(field)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Rat(BigRational),
    /// `a + b*sqrt(d)` with `b != 0` and `d >= 2` square-free.
    Quad { a: BigRational, b: BigRational, d: u64 },
}

/// An exact rational or real quadratic number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactScalar(Repr);

/// Splits `d` into its square part and square-free part: `d = s*s*m`.
fn square_free_split(d: u64) -> (u64, u64) {
    let mut m = 1u64;
    let mut s = 1u64;
    let mut rest = d;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                m *= p;
            }
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    m *= rest;
    (s, m)
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(big(n))
}

/// Sign of `a + b*sqrt(d)` for square-free `d >= 2`, exactly.
fn quad_sign(a: &BigRational, b: &BigRational, d: u64) -> Ordering {
    if b.is_zero() {
        return a.cmp(&BigRational::zero());
    }
    if b.is_positive() {
        if !a.is_negative() {
            Ordering::Greater
        } else {
            // a < 0 < b: positive iff b*b*d > a*a. Equality would force
            // d to be a rational square, which square-free d >= 2 is not.
            let lhs = b * b * BigRational::from_integer(BigInt::from(d));
            let rhs = a * a;
            debug_assert_ne!(lhs, rhs, "square-free radicand matched a square");
            lhs.cmp(&rhs)
        }
    } else {
        quad_sign(&-a, &-b, d).reverse()
    }
}

impl ExactScalar {
    /// Zero.
    pub fn zero() -> Self {
        ExactScalar(Repr::Rat(BigRational::zero()))
    }

    /// One.
    pub fn one() -> Self {
        ExactScalar(Repr::Rat(BigRational::one()))
    }

    /// The integer `n`.
    pub fn from_int(n: i64) -> Self {
        ExactScalar(Repr::Rat(rat_int(n)))
    }

    /// The rational `num / den`; `den` must be nonzero.
    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactScalar(Repr::Rat(BigRational::new(big(num), big(den)))))
    }

    /// Wraps an arbitrary rational.
    pub fn from_rational(r: BigRational) -> Self {
        ExactScalar(Repr::Rat(r))
    }

    /// The exact square root of a nonnegative integer.
    ///
    /// Returns a rational when `n` is a perfect square and a quadratic surd
    /// otherwise. `n` must be positive and at most [`MAX_RADICAND`].
    pub fn sqrt_of_integer(n: u64) -> Result<Self> {
        Self::with_radical(BigRational::zero(), BigRational::one(), n)
    }

    /// The exact square root of a nonnegative rational.
    pub fn sqrt_of_rational(r: &BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::InvalidParameter(format!(
                "square root of negative rational {r}"
            )));
        }
        if r.is_zero() {
            return Ok(Self::zero());
        }
        // sqrt(p/q) = sqrt(p*q) / q with p, q > 0.
        let pq = r.numer() * r.denom();
        let pq: u64 = pq
            .try_into()
            .map_err(|_| Error::InvalidRadicand(MAX_RADICAND))?;
        let root = Self::sqrt_of_integer(pq)?;
        let q = ExactScalar(Repr::Rat(BigRational::from_integer(r.denom().clone())));
        root.try_div(&q)
    }

    /// Builds `a + b*sqrt(d)` in canonical form.
    ///
    /// The radicand is reduced square-free (its square part migrates into
    /// `b`), `b = 0` or `d` a perfect square collapse to a rational, and a
    /// raw `d` of zero or above [`MAX_RADICAND`] is rejected.
    pub fn with_radical(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        if d == 0 || d > MAX_RADICAND {
            return Err(Error::InvalidRadicand(d));
        }
        if b.is_zero() {
            return Ok(ExactScalar(Repr::Rat(a)));
        }
        let (s, m) = square_free_split(d);
        let b = b * BigRational::from_integer(BigInt::from(s));
        if m == 1 {
            Ok(ExactScalar(Repr::Rat(a + b)))
        } else {
            Ok(ExactScalar(Repr::Quad { a, b, d: m }))
        }
    }

    /// The field this scalar lives in.
    pub fn field(&self) -> Field {
        match &self.0 {
            Repr::Rat(_) => Field::Rational,
            Repr::Quad { d, .. } => Field::Quadratic(*d),
        }
    }

    /// True when the scalar is rational.
    pub fn is_rational(&self) -> bool {
        matches!(&self.0, Repr::Rat(_))
    }

    /// The underlying rational, when there is one.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(r) => Some(r),
            Repr::Quad { .. } => None,
        }
    }

    /// The parts `(a, b, d)` of an irrational scalar `a + b*sqrt(d)`.
    pub fn quadratic_parts(&self) -> Option<(&BigRational, &BigRational, u64)> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Quad { a, b, d } => Some((a, b, *d)),
        }
    }

    /// Sign of the scalar as an `Ordering` against zero.
    pub fn sign(&self) -> Ordering {
        match &self.0 {
            Repr::Rat(r) => r.cmp(&BigRational::zero()),
            Repr::Quad { a, b, d } => quad_sign(a, b, *d),
        }
    }

    /// True when exactly zero.
    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rat(r) if r.is_zero())
    }

    /// True when exactly one.
    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rat(r) if r.is_one())
    }

    /// True when strictly negative.
    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    /// True when strictly positive.
    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    /// True when an integer.
    pub fn is_integer(&self) -> bool {
        matches!(&self.0, Repr::Rat(r) if r.is_integer())
    }

    /// Checked addition; errors on mixed quadratic fields.
    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.field().join(rhs.field())?;
        Ok(self.raw_add(rhs))
    }

    /// Checked subtraction; errors on mixed quadratic fields.
    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.field().join(rhs.field())?;
        Ok(self.raw_add(&rhs.clone().neg()))
    }

    /// Checked multiplication; errors on mixed quadratic fields.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.field().join(rhs.field())?;
        Ok(self.raw_mul(rhs))
    }

    /// Checked division; errors on mixed fields and on a zero divisor.
    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.field().join(rhs.field())?;
        Ok(self.raw_mul(&rhs.recip()?))
    }

    /// Exact reciprocal; errors on zero.
    pub fn recip(&self) -> Result<Self> {
        match &self.0 {
            Repr::Rat(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(ExactScalar(Repr::Rat(r.recip())))
                }
            }
            Repr::Quad { a, b, d } => {
                // 1/(a + b*sqrt(d)) = (a - b*sqrt(d)) / (a*a - b*b*d).
                // The norm is nonzero because b != 0 and d is square-free.
                let norm = a * a - b * b * BigRational::from_integer(BigInt::from(*d));
                debug_assert!(!norm.is_zero(), "zero norm for a canonical surd");
                Ok(ExactScalar(Repr::Quad {
                    a: a / &norm,
                    b: -(b / &norm),
                    d: *d,
                }))
            }
        }
    }

    fn raw_add(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Rat(x), Repr::Rat(y)) => ExactScalar(Repr::Rat(x + y)),
            (Repr::Rat(x), Repr::Quad { a, b, d }) | (Repr::Quad { a, b, d }, Repr::Rat(x)) => {
                ExactScalar(Repr::Quad {
                    a: a + x,
                    b: b.clone(),
                    d: *d,
                })
            }
            (Repr::Quad { a: a1, b: b1, d: d1 }, Repr::Quad { a: a2, b: b2, d: d2 }) => {
                assert_eq!(
                    d1, d2,
                    "mixed quadratic fields in arithmetic; join fields first"
                );
                let b = b1 + b2;
                if b.is_zero() {
                    ExactScalar(Repr::Rat(a1 + a2))
                } else {
                    ExactScalar(Repr::Quad {
                        a: a1 + a2,
                        b,
                        d: *d1,
                    })
                }
            }
        }
    }

    fn raw_mul(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Rat(x), Repr::Rat(y)) => ExactScalar(Repr::Rat(x * y)),
            (Repr::Rat(x), Repr::Quad { a, b, d }) | (Repr::Quad { a, b, d }, Repr::Rat(x)) => {
                if x.is_zero() {
                    Self::zero()
                } else {
                    ExactScalar(Repr::Quad {
                        a: a * x,
                        b: b * x,
                        d: *d,
                    })
                }
            }
            (Repr::Quad { a: a1, b: b1, d: d1 }, Repr::Quad { a: a2, b: b2, d: d2 }) => {
                assert_eq!(
                    d1, d2,
                    "mixed quadratic fields in arithmetic; join fields first"
                );
                let dd = BigRational::from_integer(BigInt::from(*d1));
                let a = a1 * a2 + b1 * b2 * dd;
                let b = a1 * b2 + a2 * b1;
                if b.is_zero() {
                    ExactScalar(Repr::Rat(a))
                } else {
                    ExactScalar(Repr::Quad { a, b, d: *d1 })
                }
            }
        }
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        if self.is_negative() {
            self.clone().neg()
        } else {
            self.clone()
        }
    }

    /// Nonnegative integer power by repeated squaring.
    pub fn powi(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.raw_mul(&base);
            }
            base = base.raw_mul(&base.clone());
            e >>= 1;
        }
        acc
    }

    /// Exact floor as a big integer.
    pub fn floor_int(&self) -> BigInt {
        match &self.0 {
            Repr::Rat(r) => r.numer().div_floor(r.denom()),
            Repr::Quad { a, b, d } => {
                // Write the value as (p + sign(b) * sqrt(s)) / q with
                // integers p, q > 0 and s = b*b*d * q*q scaled in.
                let qa = a.denom();
                let qb = b.denom();
                let q = qa.lcm(qb);
                let p = a.numer() * (&q / qa);
                let bq = b.numer() * (&q / qb);
                let s = &bq * &bq * BigInt::from(*d);
                let root = s.sqrt();
                if bq.is_positive() {
                    // Numerator lies in [p + root, p + root + 1).
                    (p + root).div_floor(&q)
                } else {
                    // Numerator lies in (p - root - 1, p - root].
                    let n0 = (&p - &root).div_floor(&q);
                    // Candidate n0 or n0 - 1: value >= n0 iff
                    // (p - n0*q) >= sqrt(s), decided by squaring.
                    let u = &p - &n0 * &q;
                    if !u.is_negative() && &u * &u > s {
                        n0
                    } else {
                        n0 - 1
                    }
                }
            }
        }
    }

    /// Fractional part, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        let k = ExactScalar(Repr::Rat(BigRational::from_integer(self.floor_int())));
        self.raw_add(&k.neg())
    }

    /// Decimal rendering with `digits` places, rounding half away from zero.
    ///
    /// Half-way cases only arise for rationals, so the rule is exact.
    pub fn to_decimal(&self, digits: usize) -> String {
        let sign = self.sign();
        let mag = self.abs();
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = mag
            .raw_mul(&ExactScalar(Repr::Rat(BigRational::from_integer(
                scale.clone(),
            ))))
            .raw_add(&ExactScalar(Repr::Rat(BigRational::new(big(1), big(2)))));
        let n = scaled.floor_int();
        let (int_part, frac_part) = n.div_rem(&scale);
        let mut out = String::new();
        if sign == Ordering::Less && !n.is_zero() {
            out.push('-');
        }
        out.push_str(&int_part.to_string());
        if digits > 0 {
            let frac = frac_part.to_string();
            out.push('.');
            for _ in frac.len()..digits {
                out.push('0');
            }
            out.push_str(&frac);
        }
        out
    }

    /// Parses the scalar grammar: `INT`, `INT/POSINT`, or
    /// `RAT(+|-)RAT*sqrt(POSINT)` with an optional rational part, all
    /// whitespace-free. Examples: `132/25`, `3+1*sqrt(6)`, `-1/2-3*sqrt(5)`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        if text.chars().any(char::is_whitespace) {
            return Err(Error::Parse(format!("whitespace in scalar '{text}'")));
        }
        let Some(star) = text.find("*sqrt(") else {
            return Ok(ExactScalar(Repr::Rat(parse_rat(text)?)));
        };
        let tail = &text[star + "*sqrt(".len()..];
        let radicand = tail
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("missing ')' in '{text}'")))?;
        if radicand.is_empty() || !radicand.bytes().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad radicand in '{text}'")));
        }
        let d: u64 = radicand
            .parse()
            .map_err(|_| Error::InvalidRadicand(u64::MAX))?;
        let left = &text[..star];
        // Split the coefficient text at the first sign that follows a digit;
        // signs inside a RAT only ever lead it.
        let mut split_at = None;
        let bytes = left.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1].is_ascii_digit() {
                split_at = Some(i);
                break;
            }
        }
        let (a, b) = match split_at {
            Some(i) => {
                let a = parse_rat(&left[..i])?;
                let sign = if bytes[i] == b'-' { -1 } else { 1 };
                let b = parse_rat(&left[i + 1..])?;
                (a, b * rat_int(sign))
            }
            None => (BigRational::zero(), parse_rat(left)?),
        };
        if b.is_zero() {
            return Err(Error::Parse(format!(
                "zero radical coefficient in '{text}'; write the rational part alone"
            )));
        }
        Self::with_radical(a, b, d)
    }
}

fn parse_rat(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational '{text}'"));
    let (neg, rest) = match text.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, text),
    };
    let (num_text, den_text) = match rest.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (rest, None),
    };
    if num_text.is_empty() || !num_text.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut num: BigInt = num_text.parse().map_err(|_| bad())?;
    let den: BigInt = match den_text {
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let den: BigInt = d.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            den
        }
        None => BigInt::one(),
    };
    if neg {
        num = -num;
    }
    Ok(BigRational::new(num, den))
}

fn rat_text(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(r) => write!(f, "{}", rat_text(r)),
            Repr::Quad { a, b, d } => {
                let sign = if b.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}*sqrt({})", rat_text(a), sign, rat_text(&b.abs()), d)
            }
        }
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    /// Total exact order on the reals this type can represent.
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Rat(x), Repr::Rat(y)) => x.cmp(y),
            (Repr::Rat(x), Repr::Quad { a, b, d }) => {
                // x - (a + b sqrt(d)) has sign of (x - a) + (-b) sqrt(d).
                quad_sign(&(x - a), &-b, *d)
            }
            (Repr::Quad { a, b, d }, Repr::Rat(y)) => quad_sign(&(a - y), b, *d),
            (Repr::Quad { a: a1, b: b1, d: d1 }, Repr::Quad { a: a2, b: b2, d: d2 })
                if d1 == d2 =>
            {
                quad_sign(&(a1 - a2), &(b1 - b2), *d1)
            }
            (Repr::Quad { a: a1, b: b1, d: d1 }, Repr::Quad { a: a2, b: b2, d: d2 }) => {
                // Compare u = (a1 - a2) + b1 sqrt(d1) against v = b2 sqrt(d2).
                let r = a1 - a2;
                let su = quad_sign(&r, b1, *d1);
                let sv = b2.cmp(&BigRational::zero());
                if su != sv {
                    return su.cmp(&sv);
                }
                if su == Ordering::Equal {
                    return Ordering::Equal;
                }
                // Same strict sign: compare squares in the d1 field.
                // u*u = (r*r + b1*b1*d1) + (2*r*b1) sqrt(d1), v*v rational.
                let d1r = BigRational::from_integer(BigInt::from(*d1));
                let d2r = BigRational::from_integer(BigInt::from(*d2));
                let qa = &r * &r + b1 * b1 * d1r - b2 * b2 * d2r;
                let qb = rat_int(2) * r * b1;
                let squares = quad_sign(&qa, &qb, *d1);
                if su == Ordering::Greater {
                    squares
                } else {
                    squares.reverse()
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident, $what:expr) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.$checked(&rhs).expect($what)
            }
        }
        impl<'a> $trait<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                self.$checked(rhs).expect($what)
            }
        }
        impl<'a> $trait<ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.$checked(&rhs).expect($what)
            }
        }
        impl<'a, 'b> $trait<&'b ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'b ExactScalar) -> ExactScalar {
                self.$checked(rhs).expect($what)
            }
        }
    };
}

forward_binop!(Add, add, try_add, "scalar addition across mixed fields");
forward_binop!(Sub, sub, try_sub, "scalar subtraction across mixed fields");
forward_binop!(Mul, mul, try_mul, "scalar multiplication across mixed fields");
forward_binop!(Div, div, try_div, "scalar division by zero or across mixed fields");

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        match self.0 {
            Repr::Rat(r) => ExactScalar(Repr::Rat(-r)),
            Repr::Quad { a, b, d } => ExactScalar(Repr::Quad { a: -a, b: -b, d }),
        }
    }
}

impl<'a> Neg for &'a ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.clone().neg()
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigInt> for ExactScalar {
    fn from(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

/// Sums a sequence of same-field scalars.
pub fn sum<'a, I: IntoIterator<Item = &'a ExactScalar>>(items: I) -> ExactScalar {
    items
        .into_iter()
        .fold(ExactScalar::zero(), |acc, x| acc + x)
}

/// Sorts and deduplicates a list of scalars in place.
pub fn sort_dedup(items: &mut Vec<ExactScalar>) {
    items.sort();
    items.dedup();
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(text: &str) -> ExactScalar {
        ExactScalar::parse(text).unwrap()
    }

    /// Independent magnitude oracle: the value scaled by 10^40 and floored,
    /// built from plain integer square roots rather than scalar internals.
    fn magnitude_oracle(x: &ExactScalar) -> BigInt {
        let scale = BigInt::from(10u32).pow(40);
        match &x.0 {
            Repr::Rat(r) => (r.numer() * &scale).div_floor(r.denom()),
            Repr::Quad { a, b, d } => {
                let ra = (a.numer() * &scale).div_floor(a.denom());
                let scaled_b = b * BigRational::from_integer(scale);
                let num = scaled_b.numer() * scaled_b.numer() * BigInt::from(*d);
                let den = scaled_b.denom() * scaled_b.denom();
                let mag = (num / den).sqrt();
                if b.is_negative() {
                    ra - mag
                } else {
                    ra + mag
                }
            }
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in [
            "0",
            "7",
            "-3",
            "132/25",
            "-1/2",
            "3+1*sqrt(6)",
            "0+1*sqrt(5)",
            "-1/2-3/4*sqrt(14)",
            "2-1*sqrt(2)",
        ] {
            let v = q(text);
            assert_eq!(ExactScalar::parse(&v.to_string()).unwrap(), v, "{text}");
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        for text in [
            "",
            " 1",
            "1 ",
            "1/0",
            "1//2",
            "sqrt(5)",
            "1*sqrt()",
            "1*sqrt(5",
            "1*sqrt(x)",
            "1.5",
            "+-",
            "2+0*sqrt(5)",
        ] {
            assert!(ExactScalar::parse(text).is_err(), "{text:?}");
        }
    }

    #[test]
    fn radicand_normalises_square_free() {
        // sqrt(12) = 2 sqrt(3), sqrt(49) = 7, sqrt(18) = 3 sqrt(2).
        assert_eq!(q("0+1*sqrt(12)"), q("0+2*sqrt(3)"));
        assert_eq!(q("0+1*sqrt(49)"), q("7"));
        assert_eq!(q("1+1*sqrt(18)"), q("1+3*sqrt(2)"));
        assert!(ExactScalar::sqrt_of_integer(0).is_err());
    }

    #[test]
    fn arithmetic_matches_hand_values() {
        let phi = q("1/2+1/2*sqrt(5)");
        // The golden ratio satisfies x^2 = x + 1.
        assert_eq!(&phi * &phi, &phi + &ExactScalar::one());
        // Conjugate product gives the norm: (1/2)^2 - (1/2)^2 * 5 = -1.
        let conj = q("1/2-1/2*sqrt(5)");
        assert_eq!(&phi * &conj, ExactScalar::from_int(-1));
        // Reciprocal of the golden ratio is phi - 1.
        assert_eq!(phi.recip().unwrap(), &phi - &ExactScalar::one());
    }

    #[test]
    fn irrational_parts_cancel_to_rational() {
        let x = q("1+2*sqrt(7)");
        let y = q("3-2*sqrt(7)");
        let sum = &x + &y;
        assert!(sum.is_rational());
        assert_eq!(sum, ExactScalar::from_int(4));
    }

    #[test]
    fn mixed_field_arithmetic_is_rejected() {
        let x = q("0+1*sqrt(5)");
        let y = q("0+1*sqrt(6)");
        assert!(matches!(
            x.try_add(&y),
            Err(Error::MixedFields { left: 5, right: 6 })
        ));
    }

    #[test]
    fn same_field_ordering_is_exact() {
        // sqrt(6) is between 2 and 5/2.
        let r6 = q("0+1*sqrt(6)");
        assert!(ExactScalar::from_int(2) < r6);
        assert!(r6 < q("5/2"));
        // 2 - 3 sqrt(2) < 0 < 3 - 2 sqrt(2).
        assert!(q("2-3*sqrt(2)").is_negative());
        assert!(q("3-2*sqrt(2)").is_positive());
    }

    #[test]
    fn cross_field_ordering_is_exact() {
        // 3 + sqrt(6) > 2 + sqrt(5): the family threshold comparison.
        assert!(q("3+1*sqrt(6)") > q("2+1*sqrt(5)"));
        // sqrt(2) + sqrt(3) style pairs in either orientation.
        assert!(q("0+1*sqrt(2)") < q("0+1*sqrt(3)"));
        assert!(q("1+1*sqrt(5)") > q("0+1*sqrt(6)"));
        assert!(q("0-1*sqrt(2)") > q("0-1*sqrt(3)"));
        // Very close pair: 10 sqrt(2) vs sqrt(201), squares 200 vs 201.
        assert!(q("0+10*sqrt(2)") < q("0+1*sqrt(201)"));
    }

    #[test]
    fn ordering_agrees_with_magnitude_oracle() {
        let samples = vec![
            q("0"),
            q("1"),
            q("-7/3"),
            q("132/25"),
            q("0+1*sqrt(2)"),
            q("0+1*sqrt(5)"),
            q("2+1*sqrt(5)"),
            q("3+1*sqrt(6)"),
            q("3+1*sqrt(14)"),
            q("-1+2*sqrt(3)"),
            q("5-1*sqrt(7)"),
            q("-2-1/3*sqrt(11)"),
            q("1/2+1/2*sqrt(5)"),
        ];
        for x in &samples {
            for y in &samples {
                let ours = x.cmp(y);
                let oracle = magnitude_oracle(x).cmp(&magnitude_oracle(y));
                // The oracle is exact to 1 ulp at 40 digits; distinct sample
                // values differ by far more than that.
                if ours != Ordering::Equal {
                    assert_eq!(ours, oracle, "{x} vs {y}");
                } else {
                    assert_eq!(x, y);
                }
            }
        }
    }

    #[test]
    fn floor_handles_both_radical_signs() {
        assert_eq!(q("0+1*sqrt(2)").floor_int(), big(1));
        assert_eq!(q("0-1*sqrt(2)").floor_int(), big(-2));
        assert_eq!(q("3+1*sqrt(6)").floor_int(), big(5));
        assert_eq!(q("2+1*sqrt(5)").floor_int(), big(4));
        assert_eq!(q("-5/2").floor_int(), big(-3));
        assert_eq!(q("7").floor_int(), big(7));
        // Tight case: 10 sqrt(2) = 14.142..., 2 - 10 sqrt(2) floors to -13.
        assert_eq!(q("2-10*sqrt(2)").floor_int(), big(-13));
        let fract = q("0+1*sqrt(6)").fract();
        assert!(fract.is_positive() && fract < ExactScalar::one());
    }

    #[test]
    fn decimal_rendering_rounds_half_away_from_zero() {
        assert_eq!(q("1/2").to_decimal(0), "1");
        assert_eq!(q("-1/2").to_decimal(0), "-1");
        assert_eq!(q("1/4").to_decimal(1), "0.3");
        assert_eq!(q("-1/8").to_decimal(2), "-0.13");
        assert_eq!(q("132/25").to_decimal(4), "5.2800");
        assert_eq!(q("0+1*sqrt(2)").to_decimal(6), "1.414214");
        assert_eq!(q("2+1*sqrt(5)").to_decimal(6), "4.236068");
        assert_eq!(q("3+1*sqrt(6)").to_decimal(6), "5.449490");
        assert_eq!(q("0").to_decimal(3), "0.000");
    }

    #[test]
    fn powers_and_fract() {
        let l = q("132/25");
        assert_eq!(l.powi(2), q("17424/625"));
        assert_eq!(l.powi(0), ExactScalar::one());
        let r2 = q("0+1*sqrt(2)");
        assert_eq!(r2.powi(2), ExactScalar::from_int(2));
        assert_eq!(r2.powi(3), q("0+2*sqrt(2)"));
    }

    #[test]
    fn field_join_rules() {
        use Field::*;
        assert_eq!(Rational.join(Quadratic(5)).unwrap(), Quadratic(5));
        assert_eq!(Quadratic(5).join(Quadratic(5)).unwrap(), Quadratic(5));
        assert!(Quadratic(5).join(Quadratic(6)).is_err());
    }
}
