//! Exact rational arithmetic and the small optimization kernels built on it.
//!
//! Every quantity of the BN map (slopes, section densities, region
//! boundaries) is a [`Rational`]. Nothing in this module touches floating
//! point except [`to_f64`], which exists for rendering only.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision fraction, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Largest integer `<= x`.
pub fn rat_floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Smallest integer `>= x`.
pub fn rat_ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// `rat_floor` narrowed to `i64`. Panics if the value does not fit, which
/// cannot happen for the slopes and degrees this crate works with.
pub fn floor_i64(x: &Rational) -> i64 {
    rat_floor(x).to_i64().expect("floor does not fit in i64")
}

pub fn ceil_i64(x: &Rational) -> i64 {
    rat_ceil(x).to_i64().expect("ceil does not fit in i64")
}

/// `Some(n)` when `x` is the integer `n`.
pub fn as_integer(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Render as `p/q`, or `p` for integers.
pub fn fmt_rat(x: &Rational) -> String {
    x.to_string()
}

/// Accepts `p/q`, `p`, and finite decimals such as `-2.125`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((whole, frac)) = t.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(s.to_string()));
        }
        let numer: BigInt = digits.parse().map_err(|_| Error::Parse(s.to_string()))?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let v = Rational::new(numer, denom);
        return Ok(if neg { -v } else { v });
    }
    Rational::from_str(t).map_err(|_| Error::Parse(s.to_string()))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `slope * t + intercept`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub slope: Rational,
    pub intercept: Rational,
}

impl Affine {
    pub fn new(slope: Rational, intercept: Rational) -> Self {
        Affine { slope, intercept }
    }

    pub fn constant(c: Rational) -> Self {
        Affine::new(Rational::zero(), c)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        &self.slope * t + &self.intercept
    }

    pub fn mul(&self, other: &Affine) -> Quadratic {
        Quadratic {
            a: &self.slope * &other.slope,
            b: &self.slope * &other.intercept + &self.intercept * &other.slope,
            c: &self.intercept * &other.intercept,
        }
    }

    /// `t -> self(c - t)`.
    pub fn reflect(&self, c: &Rational) -> Affine {
        Affine::new(-&self.slope, &self.slope * c + &self.intercept)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*t + {}", self.slope, self.intercept)
    }
}

/// `a t^2 + b t + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Quadratic {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        Quadratic { a, b, c }
    }

    pub fn zero() -> Self {
        Quadratic::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn constant(c: Rational) -> Self {
        Quadratic::new(Rational::zero(), Rational::zero(), c)
    }

    pub fn linear(a: &Affine) -> Self {
        Quadratic::new(Rational::zero(), a.slope.clone(), a.intercept.clone())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        (&self.a * t + &self.b) * t + &self.c
    }

    pub fn scale(&self, k: &Rational) -> Quadratic {
        Quadratic::new(&self.a * k, &self.b * k, &self.c * k)
    }

    /// Cauchy bound: every real root has absolute value below the returned
    /// number. `None` for constant polynomials.
    pub fn root_bound(&self) -> Option<Rational> {
        let (lead, rest): (&Rational, Vec<&Rational>) = if !self.a.is_zero() {
            (&self.a, vec![&self.b, &self.c])
        } else if !self.b.is_zero() {
            (&self.b, vec![&self.c])
        } else {
            return None;
        };
        let m = rest
            .into_iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        Some(Rational::one() + m / lead.abs())
    }
}

impl Add for &Quadratic {
    type Output = Quadratic;
    fn add(self, o: &Quadratic) -> Quadratic {
        Quadratic::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c)
    }
}

impl Sub for &Quadratic {
    type Output = Quadratic;
    fn sub(self, o: &Quadratic) -> Quadratic {
        Quadratic::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c)
    }
}

impl Neg for &Quadratic {
    type Output = Quadratic;
    fn neg(self) -> Quadratic {
        Quadratic::new(-&self.a, -&self.b, -&self.c)
    }
}

impl Mul<&Rational> for &Quadratic {
    type Output = Quadratic;
    fn mul(self, k: &Rational) -> Quadratic {
        self.scale(k)
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*t^2 + {}*t + {}", self.a, self.b, self.c)
    }
}

/// Exact maximizer and maximum of `q` on `[lo, hi]`.
///
/// A concave vertex inside the interval wins; otherwise the better endpoint,
/// with ties going to `lo`.
pub fn quad_max_on_interval(
    q: &Quadratic,
    lo: &Rational,
    hi: &Rational,
) -> Result<(Rational, Rational)> {
    if lo > hi {
        return Err(Error::EmptyInterval {
            lo: fmt_rat(lo),
            hi: fmt_rat(hi),
        });
    }
    if q.a.is_negative() {
        let vertex = -&q.b / (&q.a * int(2));
        if &vertex >= lo && &vertex <= hi {
            let v = q.eval(&vertex);
            return Ok((vertex, v));
        }
    }
    let at_lo = q.eval(lo);
    let at_hi = q.eval(hi);
    if at_lo >= at_hi {
        Ok((lo.clone(), at_lo))
    } else {
        Ok((hi.clone(), at_hi))
    }
}

/// One piece of a [`PiecewiseFn`]: an interval with closure flags and the
/// affine function valid on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub f: Affine,
}

impl Segment {
    pub fn new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool, f: Affine) -> Self {
        Segment {
            lo,
            hi,
            lo_closed,
            hi_closed,
            f,
        }
    }

    /// The degenerate segment `[x, x]` carrying the constant `value`.
    pub fn point(x: Rational, value: Rational) -> Self {
        Segment::new(x.clone(), x, true, true, Affine::constant(value))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Less => false,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Greater => true,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { x >= &self.lo } else { x > &self.lo };
        let below = if self.hi_closed { x <= &self.hi } else { x < &self.hi };
        above && below
    }

    /// Value of the affine piece at the left end (a one-sided limit when
    /// the end is open).
    pub fn left_value(&self) -> Rational {
        self.f.eval(&self.lo)
    }

    pub fn right_value(&self) -> Rational {
        self.f.eval(&self.hi)
    }

    /// Intersection with another interval given by bounds and flags.
    pub fn clip(
        &self,
        lo: &Rational,
        lo_closed: bool,
        hi: &Rational,
        hi_closed: bool,
    ) -> Option<Segment> {
        let (nlo, nlo_closed) = match self.lo.cmp(lo) {
            Ordering::Less => (lo.clone(), lo_closed),
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Equal => (lo.clone(), lo_closed && self.lo_closed),
        };
        let (nhi, nhi_closed) = match self.hi.cmp(hi) {
            Ordering::Greater => (hi.clone(), hi_closed),
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Equal => (hi.clone(), hi_closed && self.hi_closed),
        };
        let s = Segment::new(nlo, nhi, nlo_closed, nhi_closed, self.f.clone());
        (!s.is_empty()).then_some(s)
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{} -> {}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' },
            self.f
        )
    }
}

/// Exact piecewise affine function on an interval.
///
/// Segments are sorted, pairwise disjoint, and cover the domain without
/// gaps: consecutive segments share an endpoint that exactly one of them
/// contains. The constructor rejects anything else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseFn {
    segments: Vec<Segment>,
}

impl PiecewiseFn {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Piecewise("no segments".into()));
        }
        for s in &segments {
            if s.is_empty() {
                return Err(Error::Piecewise(format!("empty segment {s}")));
            }
        }
        for w in segments.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if a.hi != b.lo {
                return Err(Error::Piecewise(format!("gap or overlap between {a} and {b}")));
            }
            if a.hi_closed == b.lo_closed {
                return Err(Error::Piecewise(format!(
                    "shared endpoint {} claimed by {} segments",
                    a.hi,
                    if a.hi_closed { "both" } else { "neither" }
                )));
            }
        }
        Ok(PiecewiseFn { segments })
    }

    /// Builds from candidate pieces, silently dropping empty ones, then
    /// validates.
    pub fn from_pieces(pieces: impl IntoIterator<Item = Segment>) -> Result<Self> {
        PiecewiseFn::new(pieces.into_iter().filter(|s| !s.is_empty()).collect())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn domain_lo(&self) -> (&Rational, bool) {
        let s = &self.segments[0];
        (&s.lo, s.lo_closed)
    }

    pub fn domain_hi(&self) -> (&Rational, bool) {
        let s = self.segments.last().unwrap();
        (&s.hi, s.hi_closed)
    }

    pub fn in_domain(&self, x: &Rational) -> bool {
        self.segment_index(x).is_some()
    }

    pub fn segment_index(&self, x: &Rational) -> Option<usize> {
        let idx = self.segments.partition_point(|s| &s.lo <= x);
        (idx.saturating_sub(2)..idx).rev().find(|&i| self.segments[i].contains(x))
    }

    pub fn segment_at(&self, x: &Rational) -> Option<&Segment> {
        self.segment_index(x).map(|i| &self.segments[i])
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        self.segment_at(x).map(|s| s.f.eval(x))
    }

    /// All segment endpoints, sorted and deduplicated.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut pts: Vec<Rational> = self
            .segments
            .iter()
            .flat_map(|s| [s.lo.clone(), s.hi.clone()])
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// Merges neighbours that are the same affine function, and folds
    /// isolated points into an adjacent piece when the values agree.
    pub fn simplified(&self) -> PiecewiseFn {
        let mut out: Vec<Segment> = Vec::with_capacity(self.segments.len());
        for s in &self.segments {
            let Some(last) = out.last_mut() else {
                out.push(s.clone());
                continue;
            };
            if s.is_point() && !last.is_point() && last.f.eval(&s.lo) == s.f.eval(&s.lo) {
                last.hi_closed = true;
            } else if last.is_point() && !s.is_point() && s.f.eval(&last.lo) == last.f.eval(&last.lo)
            {
                let mut m = s.clone();
                m.lo_closed = true;
                *last = m;
            } else if !last.is_point() && !s.is_point() && last.f == s.f {
                last.hi = s.hi.clone();
                last.hi_closed = s.hi_closed;
            } else {
                out.push(s.clone());
            }
        }
        PiecewiseFn { segments: out }
    }

    /// Pointwise maximum of two functions on the same domain. Crossings
    /// inside a common piece become new breakpoints.
    pub fn max(&self, other: &PiecewiseFn) -> Result<PiecewiseFn> {
        if self.domain_lo() != other.domain_lo() || self.domain_hi() != other.domain_hi() {
            return Err(Error::Piecewise("max of functions with different domains".into()));
        }
        let mut pts = self.breakpoints();
        pts.extend(other.breakpoints());
        pts.sort();
        pts.dedup();

        let half = rat(1, 2);
        let mut out = Vec::new();
        for (i, p) in pts.iter().enumerate() {
            if let (Some(u), Some(v)) = (self.eval(p), other.eval(p)) {
                out.push(Segment::point(p.clone(), u.max(v)));
            }
            let Some(q) = pts.get(i + 1) else { break };
            let mid = (p + q) * &half;
            let a = &self.segment_at(&mid).expect("interior point in domain").f;
            let b = &other.segment_at(&mid).expect("interior point in domain").f;
            let pick = |x: &Rational| if a.eval(x) >= b.eval(x) { a.clone() } else { b.clone() };
            let ds = &a.slope - &b.slope;
            let crossing = (!ds.is_zero())
                .then(|| (&b.intercept - &a.intercept) / &ds)
                .filter(|x| x > p && x < q);
            match crossing {
                Some(x) => {
                    let m1 = (p + &x) * &half;
                    let m2 = (&x + q) * &half;
                    out.push(Segment::new(p.clone(), x.clone(), false, false, pick(&m1)));
                    out.push(Segment::point(x.clone(), a.eval(&x)));
                    out.push(Segment::new(x, q.clone(), false, false, pick(&m2)));
                }
                None => out.push(Segment::new(p.clone(), q.clone(), false, false, pick(&mid))),
            }
        }
        Ok(PiecewiseFn::new(out)?.simplified())
    }
}

impl fmt::Display for PiecewiseFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.segments {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_and_ceil() {
        assert_eq!(rat_floor(&rat(9, 2)), BigInt::from(4));
        assert_eq!(rat_floor(&rat(-9, 2)), BigInt::from(-5));
        assert_eq!(rat_floor(&int(6)), BigInt::from(6));
        assert_eq!(rat_ceil(&rat(9, 2)), BigInt::from(5));
        assert_eq!(rat_ceil(&rat(-9, 2)), BigInt::from(-4));
        assert_eq!(rat_ceil(&int(6)), BigInt::from(6));
    }

    #[test]
    fn quad_max_examples() {
        // (1 + t/10)(1 + (1 - t)/10)
        let q = Affine::new(rat(1, 10), int(1)).mul(&Affine::new(rat(-1, 10), rat(11, 10)));
        assert_eq!(
            quad_max_on_interval(&q, &int(0), &int(1)).unwrap(),
            (rat(1, 2), rat(441, 400))
        );

        let q = Quadratic::new(int(-1), int(11), int(-7));
        assert_eq!(quad_max_on_interval(&q, &int(9), &int(13)).unwrap(), (int(9), int(11)));

        let q = Quadratic::new(int(0), int(1), int(0));
        assert_eq!(quad_max_on_interval(&q, &int(0), &int(2)).unwrap(), (int(2), int(2)));
    }

    #[test]
    fn quad_max_ties_go_left() {
        let q = Quadratic::constant(int(3));
        assert_eq!(quad_max_on_interval(&q, &int(-1), &int(5)).unwrap().0, int(-1));
        let q = Quadratic::new(int(1), int(0), int(0));
        assert_eq!(quad_max_on_interval(&q, &int(-2), &int(2)).unwrap().0, int(-2));
    }

    #[test]
    fn quad_max_rejects_reversed_interval() {
        let q = Quadratic::zero();
        assert!(matches!(
            quad_max_on_interval(&q, &int(1), &int(0)),
            Err(Error::EmptyInterval { .. })
        ));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("2.125").unwrap(), rat(17, 8));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    fn unit_step() -> PiecewiseFn {
        PiecewiseFn::new(vec![
            Segment::new(int(0), int(1), true, true, Affine::new(int(1), int(0))),
            Segment::new(int(1), int(3), false, true, Affine::constant(int(1))),
        ])
        .unwrap()
    }

    #[test]
    fn piecewise_eval_selects_one_segment() {
        let f = unit_step();
        assert_eq!(f.eval(&rat(1, 2)), Some(rat(1, 2)));
        assert_eq!(f.eval(&int(1)), Some(int(1)));
        assert_eq!(f.eval(&int(3)), Some(int(1)));
        assert_eq!(f.eval(&int(4)), None);
        assert_eq!(f.eval(&rat(-1, 3)), None);
    }

    #[test]
    fn piecewise_rejects_overlap_and_gap() {
        let overlap = PiecewiseFn::new(vec![
            Segment::new(int(0), int(1), true, true, Affine::constant(int(0))),
            Segment::new(int(1), int(2), true, true, Affine::constant(int(0))),
        ]);
        assert!(overlap.is_err());
        let gap = PiecewiseFn::new(vec![
            Segment::new(int(0), int(1), true, false, Affine::constant(int(0))),
            Segment::new(int(1), int(2), false, true, Affine::constant(int(0))),
        ]);
        assert!(gap.is_err());
    }

    #[test]
    fn piecewise_max_splits_at_crossing() {
        let f = unit_step();
        let g = PiecewiseFn::new(vec![Segment::new(
            int(0),
            int(3),
            true,
            true,
            Affine::new(rat(-1, 2), rat(3, 2)),
        )])
        .unwrap();
        let m = f.max(&g).unwrap();
        // g wins on [0, 1], f from 1 on (they meet at 1).
        for (x, want) in [
            (int(0), rat(3, 2)),
            (rat(1, 2), rat(5, 4)),
            (int(1), int(1)),
            (int(2), int(1)),
            (int(3), int(1)),
        ] {
            assert_eq!(m.eval(&x), Some(want), "x = {x}");
        }
        assert!(m.segments().len() <= 3, "{m}");
    }

    #[test]
    fn simplified_merges_equal_pieces() {
        let f = PiecewiseFn::new(vec![
            Segment::new(int(0), int(1), true, false, Affine::new(int(1), int(0))),
            Segment::point(int(1), int(1)),
            Segment::new(int(1), int(2), false, true, Affine::new(int(1), int(0))),
        ])
        .unwrap();
        assert_eq!(f.simplified().segments().len(), 1);
    }
}
