//! The BN map: threshold functions, the staircase boundary `t_g` of region
//! T, the boundary `f_g` of region BMNO, membership tests with their
//! stable-locus exclusions, and polylines for plotting.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{as_integer, ceil_i64, fmt_rat, int, rat, to_f64, Affine, PiecewiseFn, Rational, Segment};
use crate::numbers::{beta_untwisted, serre_dual_point, BNProblem, Genus, SlopePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StabilityKind {
    Stable,
    Semistable,
}

impl fmt::Display for StabilityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilityKind::Stable => "stable",
            StabilityKind::Semistable => "semistable",
        })
    }
}

/// Why a point inside a region is not certified for stable bundles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExclusionReason {
    /// Corner `mu = eta'(s)+1` of the staircase where the next step is not
    /// adjacent.
    StaircaseGap,
    /// Same corner, rejected by the line-bundle BN number test.
    StaircaseBeta,
    /// Vertical line `mu = eta(s)` above height `(s-1)/g + s - 1`.
    BmnoEtaHat,
    /// The isolated point `(eta(s)+1, s)`.
    BmnoEtaHatPlusOne,
    SerreDualOfExcluded,
}

impl ExclusionReason {
    pub fn tag(self) -> &'static str {
        match self {
            ExclusionReason::StaircaseGap => "staircase-gap",
            ExclusionReason::StaircaseBeta => "staircase-beta",
            ExclusionReason::BmnoEtaHat => "bmno-eta-hat",
            ExclusionReason::BmnoEtaHatPlusOne => "bmno-eta-hat-plus-one",
            ExclusionReason::SerreDualOfExcluded => "serre-dual-of-excluded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionVerdict {
    pub inside: bool,
    pub on_boundary: bool,
    /// Only ever set for points that are inside.
    pub excluded_for_stable: bool,
    pub exclusion_reason: Option<ExclusionReason>,
}

impl RegionVerdict {
    fn outside() -> Self {
        RegionVerdict {
            inside: false,
            on_boundary: false,
            excluded_for_stable: false,
            exclusion_reason: None,
        }
    }

    /// Inside and not excluded for the requested kind.
    pub fn certifies(&self) -> bool {
        self.inside && !self.excluded_for_stable
    }
}

/// `s + g - 2 - floor((g-1)/s)`: the least `d` with `beta(1, d+1, s) >= 1`.
pub fn eta_hat_prime(g: Genus, s: i64) -> Result<i64> {
    if s < 1 {
        return Err(Error::TooSmall { what: "s", min: 1, got: s });
    }
    let g = g.get();
    Ok(s + g - 2 - (g - 1).div_euclid(s))
}

/// `s + g - 1 - floor(g/s)`: the least `d` with `beta(1, d, s) >= 0`.
pub fn eta_hat(g: Genus, s: i64) -> Result<i64> {
    if s < 1 {
        return Err(Error::TooSmall { what: "s", min: 1, got: s });
    }
    let g = g.get();
    Ok(s + g - 1 - g.div_euclid(s))
}

fn etp(g: Genus, s: i64) -> i64 {
    eta_hat_prime(g, s).expect("s >= 1")
}

fn eth(g: Genus, s: i64) -> i64 {
    eta_hat(g, s).expect("s >= 1")
}

fn line_beta(g: Genus, d: i64, k: i64) -> i64 {
    beta_untwisted(&BNProblem { g, n: 1, d, k })
}

/// The exact boundary functions of the BN map for one genus.
#[derive(Clone, Debug)]
pub struct BnMap {
    g: Genus,
    t: PiecewiseFn,
    f: PiecewiseFn,
    upper: PiecewiseFn,
}

impl BnMap {
    /// Builds and audits the tables. Construction fails if the case
    /// intervals of either function overlap or leave gaps.
    pub fn new(g: Genus) -> Result<BnMap> {
        let t = build_t(g)?;
        let f = build_f(g)?;
        let upper = f.max(&t)?;
        Ok(BnMap { g, t, f, upper })
    }

    /// Shared, lazily built table for `g`.
    pub fn for_genus(g: Genus) -> Arc<BnMap> {
        static CACHE: OnceLock<Mutex<HashMap<Genus, Arc<BnMap>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(m) = cache.lock().unwrap().get(&g) {
            return m.clone();
        }
        let m = Arc::new(BnMap::new(g).expect("BN map tables are well formed for every genus"));
        cache.lock().unwrap().entry(g).or_insert(m).clone()
    }

    pub fn genus(&self) -> Genus {
        self.g
    }

    /// `t_g` on `[0, 2g-2]`.
    pub fn t(&self) -> &PiecewiseFn {
        &self.t
    }

    /// `f_g` on `[0, 2g-2]`, extended past `g-1` by Serre duality.
    pub fn f(&self) -> &PiecewiseFn {
        &self.f
    }

    /// `max(f_g, t_g)`.
    pub fn upper(&self) -> &PiecewiseFn {
        &self.upper
    }

    pub fn mu_max(&self) -> Rational {
        int(2 * self.g.get() - 2)
    }

    fn check_mu(&self, mu: &Rational) -> Result<()> {
        if mu.is_negative() || mu > &self.mu_max() {
            return Err(Error::OutOfDomain {
                what: "mu",
                value: fmt_rat(mu),
                window: format!("[0, {}]", self.mu_max()),
            });
        }
        Ok(())
    }

    pub fn t_at(&self, mu: &Rational) -> Result<Rational> {
        self.check_mu(mu)?;
        Ok(self.t.eval(mu).expect("domain checked"))
    }

    pub fn f_at(&self, mu: &Rational) -> Result<Rational> {
        self.check_mu(mu)?;
        Ok(self.f.eval(mu).expect("domain checked"))
    }

    pub fn upper_at(&self, mu: &Rational) -> Result<Rational> {
        self.check_mu(mu)?;
        Ok(self.upper.eval(mu).expect("domain checked"))
    }
}

fn build_t(g: Genus) -> Result<PiecewiseFn> {
    let gv = g.get();
    let mut pieces = vec![Segment::point(int(0), int(0))];
    for s in 1..gv {
        let a = etp(g, s);
        let next = etp(g, s + 1);
        // mu - ceil(mu) + s on (a, a+1], where ceil(mu) = a+1
        pieces.push(Segment::new(
            int(a),
            int(a + 1),
            false,
            true,
            Affine::new(int(1), int(s - a - 1)),
        ));
        pieces.push(Segment::new(int(a + 1), int(next), false, true, Affine::constant(int(s))));
    }
    PiecewiseFn::from_pieces(pieces)
}

fn build_f(g: Genus) -> Result<PiecewiseFn> {
    let gv = g.get();
    let gq = int(gv);
    let half_lo = int(0);
    let half_hi = int(gv - 1);
    let mut left = Vec::new();
    let mut s = 1;
    loop {
        let e = eth(g, s);
        if e > gv - 1 {
            break;
        }
        let e1 = eth(g, s + 1);
        let w = int(s) / &gq;
        let sq = int(s);
        let mut cand = vec![
            Segment::point(int(e), sq.clone()),
            // (s/g)(mu - (e+1)) + s on (e, e+1]
            Segment::new(int(e), int(e + 1), false, true, Affine::new(w.clone(), &sq - &w * int(e + 1))),
        ];
        // (s/g)(mu - m) + s on each unit step (m, m+1] of the middle range
        for m in (e + 1)..(e1 - 1) {
            cand.push(Segment::new(int(m), int(m + 1), false, true, Affine::new(w.clone(), &sq - &w * int(m))));
        }
        let w3 = int(e1 - s) / &gq;
        cand.push(Segment::new(
            int(e1 - 1),
            int(e1),
            false,
            false,
            Affine::new(w3.clone(), &sq - &w3 * int(e1 - 1)),
        ));
        left.extend(cand.into_iter().filter_map(|seg| seg.clip(&half_lo, true, &half_hi, true)));
        s += 1;
    }
    let left = PiecewiseFn::from_pieces(left)?;

    // f(mu) = f(2g-2-mu) + mu - (g-1) beyond g-1
    let top = int(2 * gv - 2);
    let mut right: Vec<Segment> = left
        .segments()
        .iter()
        .rev()
        .filter_map(|seg| {
            let mut f = seg.f.reflect(&top);
            f.slope += Rational::one();
            f.intercept -= &half_hi;
            Segment::new(&top - &seg.hi, &top - &seg.lo, seg.hi_closed, seg.lo_closed, f).clip(
                &half_hi,
                false,
                &top,
                true,
            )
        })
        .collect();
    let mut all = left.segments().to_vec();
    all.append(&mut right);
    PiecewiseFn::from_pieces(all)
}

/// `t_g(mu)` for `0 <= mu <= 2g-2`.
pub fn tg_eval(g: Genus, mu: &Rational) -> Result<Rational> {
    BnMap::for_genus(g).t_at(mu)
}

/// `f_g(mu)` for `0 <= mu <= 2g-2`.
pub fn fg_eval(g: Genus, mu: &Rational) -> Result<Rational> {
    BnMap::for_genus(g).f_at(mu)
}

fn in_window(g: Genus, mu: &Rational, lambda: &Rational) -> bool {
    !mu.is_negative() && mu <= &int(2 * g.get() - 2) && lambda.is_positive()
}

/// Membership in region T: `0 <= mu <= 2g-2`, `0 < lambda <= t_g(mu)`.
///
/// For stable bundles the corner points `mu = eta'(s)+1`,
/// `s-1 < lambda <= s` are flagged when either the staircase has a gap there
/// or `beta(1, mu+1, s+1) <= 0`; the verdict records which test fired.
pub fn membership_t(g: Genus, mu: &Rational, lambda: &Rational, kind: StabilityKind) -> RegionVerdict {
    if !in_window(g, mu, lambda) {
        return RegionVerdict::outside();
    }
    let bound = tg_eval(g, mu).expect("window checked");
    if lambda > &bound {
        return RegionVerdict::outside();
    }
    let mut v = RegionVerdict {
        inside: true,
        on_boundary: lambda == &bound,
        excluded_for_stable: false,
        exclusion_reason: None,
    };
    if kind == StabilityKind::Stable {
        v.exclusion_reason = staircase_exclusion(g, mu, lambda);
        v.excluded_for_stable = v.exclusion_reason.is_some();
    }
    v
}

fn staircase_exclusion(g: Genus, mu: &Rational, lambda: &Rational) -> Option<ExclusionReason> {
    let m = as_integer(mu)?;
    let s = ceil_i64(lambda);
    if s < 1 || etp(g, s) + 1 != m {
        return None;
    }
    if etp(g, s) + 1 != etp(g, s + 1) {
        Some(ExclusionReason::StaircaseGap)
    } else if line_beta(g, m + 1, s + 1) <= 0 {
        Some(ExclusionReason::StaircaseBeta)
    } else {
        None
    }
}

/// Membership in region BMNO: `0 <= mu <= 2g-2`, `0 < lambda <= f_g(mu)`.
///
/// Stable exclusions: the lines `mu = eta(s) <= g-1` above
/// `(s-1)/g + s - 1`, the points `(eta(s)+1, s)`, and the Serre duals of
/// both families.
pub fn membership_bmno(g: Genus, mu: &Rational, lambda: &Rational, kind: StabilityKind) -> RegionVerdict {
    if !in_window(g, mu, lambda) {
        return RegionVerdict::outside();
    }
    let bound = fg_eval(g, mu).expect("window checked");
    if lambda > &bound {
        return RegionVerdict::outside();
    }
    let mut v = RegionVerdict {
        inside: true,
        on_boundary: lambda == &bound,
        excluded_for_stable: false,
        exclusion_reason: None,
    };
    if kind == StabilityKind::Stable {
        let here = SlopePoint::new(mu.clone(), lambda.clone());
        let dual = serre_dual_point(g, &here);
        v.exclusion_reason = bmno_exclusion(g, &here).or_else(|| {
            bmno_exclusion(g, &dual).map(|_| ExclusionReason::SerreDualOfExcluded)
        });
        v.excluded_for_stable = v.exclusion_reason.is_some();
    }
    v
}

fn bmno_exclusion(g: Genus, p: &SlopePoint) -> Option<ExclusionReason> {
    let m = as_integer(&p.mu)?;
    let gv = g.get();
    for s in 1..=gv + 1 {
        let e = eth(g, s);
        if e == m && e < gv && p.lambda > rat(s - 1, gv) + int(s - 1) {
            return Some(ExclusionReason::BmnoEtaHat);
        }
        if e + 1 == m && p.lambda == int(s) {
            return Some(ExclusionReason::BmnoEtaHatPlusOne);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    T,
    Bmno,
    Clifford,
    BnCurve,
}

/// A polyline vertex. Exact for the piecewise-linear boundaries, decimal for
/// the BN curve (an irrational conic).
#[derive(Clone, Debug, PartialEq)]
pub enum PlotPoint {
    Exact { mu: Rational, lambda: Rational },
    Approx { mu: f64, lambda: f64 },
}

impl PlotPoint {
    pub fn exact(mu: Rational, lambda: Rational) -> Self {
        PlotPoint::Exact { mu, lambda }
    }

    pub fn as_f64(&self) -> (f64, f64) {
        match self {
            PlotPoint::Exact { mu, lambda } => (to_f64(mu), to_f64(lambda)),
            PlotPoint::Approx { mu, lambda } => (*mu, *lambda),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, PlotPoint::Exact { .. })
    }
}

/// Vertices for drawing a region boundary.
///
/// For T and BMNO every segment contributes both endpoint values (so jumps
/// become vertical strokes) plus uniform samples at multiples of
/// `1/samples_per_unit`.
pub fn region_polyline(g: Genus, region: Region, samples_per_unit: i64) -> Result<Vec<PlotPoint>> {
    if samples_per_unit < 1 {
        return Err(Error::TooSmall {
            what: "samples_per_unit",
            min: 1,
            got: samples_per_unit,
        });
    }
    let map = BnMap::for_genus(g);
    let gv = g.get();
    Ok(match region {
        Region::T => piecewise_polyline(map.t(), samples_per_unit),
        Region::Bmno => piecewise_polyline(map.f(), samples_per_unit),
        Region::Clifford => vec![
            PlotPoint::exact(int(0), int(1)),
            PlotPoint::exact(int(2 * gv - 2), int(gv)),
        ],
        Region::BnCurve => bn_curve_polyline(g, samples_per_unit),
    })
}

fn piecewise_polyline(f: &PiecewiseFn, spu: i64) -> Vec<PlotPoint> {
    let mut out: Vec<PlotPoint> = Vec::new();
    let mut push = |p: PlotPoint| {
        if out.last() != Some(&p) {
            out.push(p);
        }
    };
    let step = rat(1, spu);
    for seg in f.segments() {
        push(PlotPoint::exact(seg.lo.clone(), seg.left_value()));
        let mut x = (&seg.lo / &step).floor() * &step + &step;
        while x < seg.hi {
            push(PlotPoint::exact(x.clone(), seg.f.eval(&x)));
            x += &step;
        }
        push(PlotPoint::exact(seg.hi.clone(), seg.right_value()));
    }
    out
}

/// Positive root of `lambda^2 + (g-1-mu) lambda - (g-1) = 0`.
pub fn bn_curve_lambda(g: Genus, mu: f64) -> f64 {
    let c = (g.get() - 1) as f64;
    let b = c - mu;
    let disc = (b * b + 4.0 * c).sqrt();
    if b > 0.0 {
        2.0 * c / (b + disc)
    } else {
        (disc - b) / 2.0
    }
}

fn bn_curve_polyline(g: Genus, spu: i64) -> Vec<PlotPoint> {
    let gv = g.get();
    let top = int(2 * gv - 2);
    // Rational points: mu = s + (g-1)(1 - 1/s) at lambda = s.
    let exact: Vec<(Rational, Rational)> = (1..=gv)
        .map(|s| (int(s) + int(gv - 1) * (Rational::one() - rat(1, s)), int(s)))
        .filter(|(mu, _)| mu <= &top)
        .collect();
    let mut out = Vec::new();
    let mut ex = exact.into_iter().peekable();
    for j in 0..=(2 * gv - 2) * spu {
        let mu = rat(j, spu);
        while let Some((emu, _)) = ex.peek() {
            if emu > &mu {
                break;
            }
            let (emu, el) = ex.next().unwrap();
            out.push(PlotPoint::exact(emu, el));
        }
        if let Some(PlotPoint::Exact { mu: last, .. }) = out.last() {
            if last == &mu {
                continue;
            }
        }
        let m = to_f64(&mu);
        out.push(PlotPoint::Approx { mu: m, lambda: bn_curve_lambda(g, m) });
    }
    out.extend(ex.map(|(m, l)| PlotPoint::exact(m, l)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: i64) -> Genus {
        Genus::new(v).unwrap()
    }

    /// Independent scan: least `d >= 0` with `beta(1, d + shift, s) >= floor`.
    fn scan_min(gg: Genus, s: i64, shift: i64, floor: i64) -> i64 {
        (0..).find(|&d| line_beta(gg, d + shift, s) >= floor).unwrap()
    }

    #[test]
    fn eta_examples() {
        for gv in 2..25 {
            let gg = g(gv);
            assert_eq!(eta_hat_prime(gg, 1).unwrap(), 0);
            assert_eq!(eta_hat_prime(gg, gv).unwrap(), 2 * gv - 2);
            assert_eq!(eta_hat(gg, 1).unwrap(), 0);
        }
        assert_eq!(eta_hat_prime(g(10), 2).unwrap(), scan_min(g(10), 2, 1, 1));
        assert_eq!(eta_hat_prime(g(10), 2).unwrap(), 6);
        assert_eq!(eta_hat(g(10), 2).unwrap(), scan_min(g(10), 2, 0, 0));
        assert_eq!(eta_hat(g(10), 2).unwrap(), 6);
        assert_eq!(eta_hat(g(10), 3).unwrap(), 9);
        assert!(eta_hat(g(10), 0).is_err());
        assert!(eta_hat_prime(g(10), -2).is_err());
    }

    #[test]
    fn tables_build_for_many_genera() {
        for gv in 2..=60 {
            BnMap::new(g(gv)).unwrap_or_else(|e| panic!("g = {gv}: {e}"));
        }
    }

    #[test]
    fn tg_examples() {
        let gg = g(10);
        assert_eq!(tg_eval(gg, &int(0)).unwrap(), int(0));
        assert_eq!(tg_eval(gg, &rat(13, 2)).unwrap(), rat(3, 2));
        assert_eq!(tg_eval(gg, &int(8)).unwrap(), int(2));
        assert_eq!(tg_eval(gg, &int(3)).unwrap(), int(1));
        assert!(tg_eval(gg, &int(19)).is_err());
        assert!(tg_eval(gg, &rat(-1, 2)).is_err());
    }

    #[test]
    fn tg_right_endpoint_is_g_minus_one() {
        // The last staircase step is (eta'(g-1)+1, eta'(g)] = (2g-3, 2g-2]
        // at height g-1.
        for gv in 2..=20 {
            assert_eq!(tg_eval(g(gv), &int(2 * gv - 2)).unwrap(), int(gv - 1), "g = {gv}");
        }
    }

    #[test]
    fn fg_examples() {
        let gg = g(10);
        assert_eq!(fg_eval(gg, &rat(3, 2)).unwrap(), rat(21, 20));
        assert_eq!(fg_eval(gg, &rat(11, 2)).unwrap(), rat(5, 4));
        assert_eq!(fg_eval(gg, &int(18)).unwrap(), int(10));
        assert_eq!(fg_eval(gg, &int(3)).unwrap(), rat(11, 10));
        assert_eq!(fg_eval(gg, &int(6)).unwrap(), int(2));
        for gv in 2..=20 {
            assert_eq!(fg_eval(g(gv), &int(2 * gv - 2)).unwrap(), int(gv));
            assert_eq!(fg_eval(g(gv), &int(0)).unwrap(), int(1));
        }
    }

    #[test]
    fn t_membership_examples() {
        let gg = g(10);
        let v = membership_t(gg, &rat(13, 2), &rat(3, 2), StabilityKind::Semistable);
        assert!(v.inside && v.on_boundary && !v.excluded_for_stable);

        let v = membership_t(gg, &int(7), &rat(3, 2), StabilityKind::Stable);
        assert!(v.inside && v.excluded_for_stable);
        assert_eq!(v.exclusion_reason, Some(ExclusionReason::StaircaseGap));

        for kind in [StabilityKind::Stable, StabilityKind::Semistable] {
            assert!(!membership_t(gg, &int(3), &rat(441, 400), kind).inside);
        }
        assert!(!membership_t(gg, &int(3), &int(0), StabilityKind::Semistable).inside);
        assert!(!membership_t(gg, &int(19), &rat(1, 2), StabilityKind::Semistable).inside);
    }

    #[test]
    fn bmno_membership_examples() {
        let gg = g(10);
        let v = membership_bmno(gg, &int(3), &rat(11, 10), StabilityKind::Semistable);
        assert!(v.inside && v.on_boundary);
        for kind in [StabilityKind::Stable, StabilityKind::Semistable] {
            assert!(!membership_bmno(gg, &int(3), &rat(441, 400), kind).inside);
        }
        let v = membership_bmno(gg, &int(6), &rat(6, 5), StabilityKind::Stable);
        assert!(v.inside && v.excluded_for_stable);
        assert_eq!(v.exclusion_reason, Some(ExclusionReason::BmnoEtaHat));

        let v = membership_bmno(gg, &int(7), &int(2), StabilityKind::Stable);
        assert_eq!(v.exclusion_reason, Some(ExclusionReason::BmnoEtaHatPlusOne));

        // Serre dual of (6, 6/5) is (12, 21/5).
        let v = membership_bmno(gg, &int(12), &rat(21, 5), StabilityKind::Stable);
        assert!(v.inside);
        assert_eq!(v.exclusion_reason, Some(ExclusionReason::SerreDualOfExcluded));
    }

    #[test]
    fn semistable_never_excluded() {
        let gg = g(10);
        for mu in 0..=18 {
            for l in 1..=40 {
                let lam = rat(l, 4);
                assert!(!membership_t(gg, &int(mu), &lam, StabilityKind::Semistable).excluded_for_stable);
                assert!(!membership_bmno(gg, &int(mu), &lam, StabilityKind::Semistable).excluded_for_stable);
            }
        }
    }

    #[test]
    fn polyline_examples() {
        let gg = g(10);
        let t = region_polyline(gg, Region::T, 1).unwrap();
        assert!(t.contains(&PlotPoint::exact(int(7), int(2))));
        assert!(t.contains(&PlotPoint::exact(int(8), int(2))));

        for gv in [2, 5, 10] {
            let c = region_polyline(g(gv), Region::Clifford, 3).unwrap();
            assert_eq!(
                c,
                vec![PlotPoint::exact(int(0), int(1)), PlotPoint::exact(int(2 * gv - 2), int(gv))]
            );
        }

        let bn = region_polyline(gg, Region::BnCurve, 4).unwrap();
        assert!(bn.contains(&PlotPoint::exact(int(1), int(1))));
        for p in &bn {
            let (mu, lam) = p.as_f64();
            let resid = lam * (lam - mu + 9.0) - 9.0;
            assert!(resid.abs() < 1e-9, "({mu}, {lam}) residual {resid}");
        }
        assert!(region_polyline(gg, Region::T, 0).is_err());
    }

    #[test]
    fn polyline_hits_threshold_breakpoints() {
        let gg = g(10);
        let t = region_polyline(gg, Region::T, 1).unwrap();
        let bm = region_polyline(gg, Region::Bmno, 1).unwrap();
        let has_mu = |pts: &[PlotPoint], m: i64| {
            pts.iter().any(|p| matches!(p, PlotPoint::Exact { mu, .. } if mu == &int(m)))
        };
        for s in 1..=10 {
            let a = eta_hat_prime(gg, s).unwrap();
            assert!(has_mu(&t, a));
            if a < 18 {
                assert!(has_mu(&t, a + 1));
            }
            let e = eta_hat(gg, s).unwrap();
            if e <= 9 {
                for m in [e, e + 1, e - 1] {
                    if (0..=18).contains(&m) {
                        assert!(has_mu(&bm, m));
                    }
                }
            }
        }
    }
}
