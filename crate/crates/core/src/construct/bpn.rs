use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, int, quad_max_on_interval, rat, Rational, Segment};
use crate::numbers::Genus;
use crate::regions::BnMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `(mu1 + mu2, lambda1 lambda2)` itself.
    Direct,
    /// The Serre dual of a product point.
    SerreDual,
}

impl Branch {
    pub fn tag(self) -> &'static str {
        match self {
            Branch::Direct => "direct",
            Branch::SerreDual => "serre-dual",
        }
    }
}

/// Top boundary of the product region above one slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpnQuery {
    pub g: Genus,
    pub mu: Rational,
    pub lambda: Option<Rational>,
    pub boundary: Rational,
    /// Whether some admissible decomposition reaches the boundary, rather
    /// than only approaching it through open constraints.
    pub attained: bool,
    pub branch: Branch,
    /// `(mu1, mu2, lambda1, lambda2)` of an optimal decomposition; for the
    /// dual branch this decomposes the dual slope.
    pub decomposition: (Rational, Rational, Rational, Rational),
}

impl BpnQuery {
    pub fn to_json(&self) -> Value {
        let (m1, m2, l1, l2) = &self.decomposition;
        json!({
            "g": self.g.get(),
            "mu": fmt_rat(&self.mu),
            "lambda": self.lambda.as_ref().map(fmt_rat),
            "boundary": fmt_rat(&self.boundary),
            "attained": self.attained,
            "branch": self.branch.tag(),
            "decomposition": {
                "mu1": fmt_rat(m1), "mu2": fmt_rat(m2), "lambda1": fmt_rat(l1), "lambda2": fmt_rat(l2),
            },
        })
    }
}

struct Best {
    value: Rational,
    attained: bool,
    decomposition: (Rational, Rational, Rational, Rational),
}

/// Interval of `t` with `t` in `s1` and `mu - t` in `s2`, as `(lo, lo_closed,
/// hi, hi_closed)`.
fn pair_window(mu: &Rational, s1: &Segment, s2: &Segment) -> (Rational, bool, Rational, bool) {
    // mu - t in [s2.lo, s2.hi]  <=>  t in [mu - s2.hi, mu - s2.lo]
    let (lo2, lo2c) = (mu - &s2.hi, s2.hi_closed);
    let (hi2, hi2c) = (mu - &s2.lo, s2.lo_closed);
    let (lo, loc) = match s1.lo.cmp(&lo2) {
        std::cmp::Ordering::Greater => (s1.lo.clone(), s1.lo_closed),
        std::cmp::Ordering::Less => (lo2, lo2c),
        std::cmp::Ordering::Equal => (lo2, lo2c && s1.lo_closed),
    };
    let (hi, hic) = match s1.hi.cmp(&hi2) {
        std::cmp::Ordering::Less => (s1.hi.clone(), s1.hi_closed),
        std::cmp::Ordering::Greater => (hi2, hi2c),
        std::cmp::Ordering::Equal => (hi2, hi2c && s1.hi_closed),
    };
    (lo, loc, hi, hic)
}

/// `sup F(mu1) F(mu - mu1)` over `0 < mu1 < min(2, mu)` with `F = max(f_g, t_g)`.
fn direct_sup(map: &BnMap, mu: &Rational) -> Option<Best> {
    let zero = Rational::zero();
    let top = map.mu_max();
    if !mu.is_positive() || mu > &top {
        return None;
    }
    let cap = if mu < &int(2) { mu.clone() } else { int(2) };
    // admissible mu1: (0, cap), mu2 = mu - mu1 in (0, top]; the latter holds
    // automatically
    let upper = map.upper().segments();
    let mut best: Option<Best> = None;
    for s1 in upper {
        let Some(s1) = s1.clip(&zero, false, &cap, false) else { continue };
        for s2 in upper {
            let (lo, loc, hi, hic) = pair_window(mu, &s1, s2);
            if lo > hi || (lo == hi && !(loc && hic)) {
                continue;
            }
            let f1 = s1.f.clone();
            let f2 = s2.f.reflect(mu);
            let q = f1.mul(&f2);
            let (arg, val) = quad_max_on_interval(&q, &lo, &hi).expect("window is non-empty");
            let attained = (arg != lo || loc) && (arg != hi || hic);
            let better = match &best {
                None => true,
                Some(b) => val > b.value || (val == b.value && attained && !b.attained),
            };
            if better {
                let m2 = mu - &arg;
                best = Some(Best {
                    decomposition: (arg.clone(), m2.clone(), f1.eval(&arg), s2.f.eval(&m2)),
                    value: val,
                    attained,
                });
            }
        }
    }
    best
}

fn check_g_mu(map: &BnMap, mu: &Rational) -> Result<()> {
    if mu.is_negative() || mu > &map.mu_max() {
        return Err(Error::OutOfDomain {
            what: "mu",
            value: fmt_rat(mu),
            window: format!("[0, {}]", map.mu_max()),
        });
    }
    Ok(())
}

/// Exact top boundary of the product region (and its Serre dual) at `mu`.
pub fn bpn_boundary(g: Genus, mu: &Rational) -> Result<BpnQuery> {
    let map = BnMap::for_genus(g);
    check_g_mu(&map, mu)?;
    let gm1 = int(g.get() - 1);
    let direct = direct_sup(&map, mu).map(|b| (b, Branch::Direct));
    let dual = direct_sup(&map, &(map.mu_max() - mu)).map(|mut b| {
        b.value += mu - &gm1;
        (b, Branch::SerreDual)
    });
    let (best, branch) = match (direct, dual) {
        (Some(a), Some(b)) => {
            if b.0.value > a.0.value || (b.0.value == a.0.value && b.0.attained && !a.0.attained) {
                b
            } else {
                a
            }
        }
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => unreachable!("every mu in [0, 2g-2] has a decomposition on one side"),
    };
    Ok(BpnQuery {
        g,
        mu: mu.clone(),
        lambda: None,
        boundary: best.value,
        attained: best.attained,
        branch,
        decomposition: best.decomposition,
    })
}

/// Closed-boundary membership in the product region or its Serre dual.
///
/// A point is in the direct part when `0 < lambda <= sup`, and in the dual
/// part when it is the dual of such a point.
pub fn bpn_membership(g: Genus, mu: &Rational, lambda: &Rational) -> bool {
    let map = BnMap::for_genus(g);
    if check_g_mu(&map, mu).is_err() {
        return false;
    }
    let gm1 = int(g.get() - 1);
    let in_direct = direct_sup(&map, mu).is_some_and(|b| lambda.is_positive() && lambda <= &b.value);
    let in_dual = direct_sup(&map, &(map.mu_max() - mu)).is_some_and(|b| {
        let shift = mu - &gm1;
        lambda > &shift && lambda <= &(b.value + &shift)
    });
    in_direct || in_dual
}

/// A point of the product region lying above both `t_g` and `f_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpnNewPoint {
    pub mu: Rational,
    pub lambda: Rational,
    pub boundary: Rational,
    pub attained: bool,
    pub margin_over_bmno: Rational,
    pub margin_over_t: Rational,
}

impl BpnNewPoint {
    pub fn to_json(&self) -> Value {
        json!({
            "mu": fmt_rat(&self.mu),
            "lambda": fmt_rat(&self.lambda),
            "boundary": fmt_rat(&self.boundary),
            "attained": self.attained,
            "margin_over_bmno": fmt_rat(&self.margin_over_bmno),
            "margin_over_t": fmt_rat(&self.margin_over_t),
        })
    }
}

/// Scans `mu = j * step` over `(0, 2g-2]` for slopes where the product
/// region reaches above `max(t_g, f_g)`.
///
/// The witness height is the boundary itself when attained, otherwise the
/// midpoint between the old and new boundaries.
pub fn bpn_new_points(g: Genus, step: &Rational) -> Result<Vec<BpnNewPoint>> {
    if g.get() < 5 {
        return Err(Error::TooSmall { what: "genus", min: 5, got: g.get() });
    }
    if !step.is_positive() {
        return Err(Error::precondition(format!("step = {} > 0", fmt_rat(step))));
    }
    let map = BnMap::for_genus(g);
    let mut out = Vec::new();
    let mut mu = step.clone();
    while mu <= map.mu_max() {
        let q = bpn_boundary(g, &mu)?;
        let old = map.upper_at(&mu)?;
        if q.boundary > old {
            let lambda = if q.attained {
                q.boundary.clone()
            } else {
                (&old + &q.boundary) * rat(1, 2)
            };
            out.push(BpnNewPoint {
                margin_over_bmno: &lambda - map.f_at(&mu)?,
                margin_over_t: &lambda - map.t_at(&mu)?,
                mu: mu.clone(),
                lambda,
                boundary: q.boundary,
                attained: q.attained,
            });
        }
        mu += step;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::serre_dual_point;
    use crate::numbers::SlopePoint;

    fn g(v: i64) -> Genus {
        Genus::new(v).unwrap()
    }

    #[test]
    fn boundary_examples() {
        let q = bpn_boundary(g(10), &int(3)).unwrap();
        assert_eq!(q.boundary, rat(441, 400));
        assert!(q.attained);
        assert_eq!(q.decomposition, (rat(3, 2), rat(3, 2), rat(21, 20), rat(21, 20)));

        let q = bpn_boundary(g(10), &rat(5, 2)).unwrap();
        assert_eq!(q.boundary, rat(1681, 1600));
        assert_eq!(q.decomposition.0, rat(5, 4));

        let mu = rat(17, 8);
        let q = bpn_boundary(g(10), &mu).unwrap();
        let f = BnMap::for_genus(g(10)).f_at(&mu).unwrap();
        assert_eq!(f, rat(81, 80));
        assert!(q.boundary > f);

        assert!(bpn_boundary(g(10), &int(19)).is_err());
        assert!(bpn_boundary(g(10), &rat(-1, 3)).is_err());
    }

    #[test]
    fn membership_examples() {
        assert!(bpn_membership(g(10), &int(3), &rat(11, 10)));
        assert!(bpn_membership(g(10), &int(3), &rat(441, 400)));
        assert!(!bpn_membership(g(10), &int(3), &rat(111, 100)));
    }

    #[test]
    fn membership_is_serre_symmetric() {
        let gg = g(7);
        for i in 0..=48 {
            for j in 1..=30 {
                let p = SlopePoint::new(rat(i, 4), rat(j, 5));
                let d = serre_dual_point(gg, &p);
                assert_eq!(
                    bpn_membership(gg, &p.mu, &p.lambda),
                    bpn_membership(gg, &d.mu, &d.lambda),
                    "{p} vs {d}"
                );
            }
        }
    }

    #[test]
    fn new_points_at_genus_ten() {
        let pts = bpn_new_points(g(10), &rat(1, 2)).unwrap();
        let p = pts.iter().find(|p| p.mu == int(3)).expect("mu = 3 is new");
        assert_eq!(p.lambda, rat(441, 400));
        assert_eq!(p.margin_over_bmno, rat(1, 400));
        assert_eq!(p.margin_over_t, rat(41, 400));
        assert!(bpn_new_points(g(4), &rat(1, 2)).is_err());
    }
}
