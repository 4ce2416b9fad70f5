//! Certified non-emptiness decisions for `B(n, d, k)` and for universal
//! twisted loci `B^k(U1, U2)`.
//!
//! Every verdict other than `Unknown` carries certificates. A certificate
//! stores the parameters of the result it applies and recomputes the
//! result's hypotheses on demand, so a verdict can be re-checked without
//! trusting the code path that produced it.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::construct::{kernel_construct, kernel_k_max, product_construct};
use crate::error::{Error, Result};
use crate::exact::fmt_rat;
use crate::numbers::{
    beta_twisted_locus, beta_universal, beta_untwisted, serre_dual_problem, BNProblem, Genus, UniversalProblem,
};
use crate::regions::{membership_bmno, membership_t, BnMap, RegionVerdict, StabilityKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveClass {
    AnySmooth,
    Petri,
    /// A curve in an unspecified open subset of moduli; treated as Petri.
    GeneralCurve,
    NonHyperelliptic,
    Hyperelliptic,
}

impl CurveClass {
    pub fn tag(self) -> &'static str {
        match self {
            CurveClass::AnySmooth => "any",
            CurveClass::Petri => "petri",
            CurveClass::GeneralCurve => "general",
            CurveClass::NonHyperelliptic => "nonhyperelliptic",
            CurveClass::Hyperelliptic => "hyperelliptic",
        }
    }

    pub fn is_petri(self) -> bool {
        matches!(self, CurveClass::Petri | CurveClass::GeneralCurve)
    }

    /// `Some(true)` if every curve of the class is hyperelliptic,
    /// `Some(false)` if none is, `None` if the class mixes both. Every curve
    /// of genus 2 is hyperelliptic whatever the class says.
    pub fn hyperelliptic(self, g: Genus) -> Option<bool> {
        if g.get() == 2 {
            return Some(true);
        }
        match self {
            CurveClass::Hyperelliptic => Some(true),
            CurveClass::NonHyperelliptic | CurveClass::Petri | CurveClass::GeneralCurve => Some(false),
            CurveClass::AnySmooth => None,
        }
    }

    pub fn is_non_hyperelliptic(self, g: Genus) -> bool {
        self.hyperelliptic(g) == Some(false)
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for CurveClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "any" => CurveClass::AnySmooth,
            "petri" => CurveClass::Petri,
            "general" => CurveClass::GeneralCurve,
            "nonhyperelliptic" => CurveClass::NonHyperelliptic,
            "hyperelliptic" => CurveClass::Hyperelliptic,
            _ => return Err(Error::Parse(s.to_string())),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Nonempty,
    Empty,
    Unknown,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::Nonempty => "nonempty",
            Status::Empty => "empty",
            Status::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scope {
    /// The verdict holds for the given rank.
    ThisRank,
    /// Only established for some (infinitely many) ranks with the same
    /// slope point.
    SomeRankSameSlopePoint,
}

impl Scope {
    pub fn tag(self) -> &'static str {
        match self {
            Scope::ThisRank => "this-rank",
            Scope::SomeRankSameSlopePoint => "some-rank-same-slope-point",
        }
    }
}

/// What a certificate is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subject {
    Untwisted(BNProblem),
    Universal(UniversalProblem),
}

impl Subject {
    fn k(&self) -> i64 {
        match self {
            Subject::Untwisted(p) => p.k,
            Subject::Universal(u) => u.k,
        }
    }

    fn to_json(self) -> Value {
        match self {
            Subject::Untwisted(p) => problem_json(&p),
            Subject::Universal(u) => universal_json(&u),
        }
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Untwisted(p) => p.fmt(f),
            Subject::Universal(u) => u.fmt(f),
        }
    }
}

/// One step of a normalization trail for universal problems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Normalization {
    Swap,
    SerreDual,
    Shift(i64),
}

impl Normalization {
    pub fn apply(self, u: &UniversalProblem) -> UniversalProblem {
        match self {
            Normalization::Swap => u.swapped(),
            Normalization::SerreDual => u.serre_dual(),
            Normalization::Shift(l) => u.shifted(l),
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Normalization::Swap => f.write_str("swap"),
            Normalization::SerreDual => f.write_str("serre-dual"),
            Normalization::Shift(l) => write!(f, "shift({l})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistVariant {
    Direct,
    Serre,
}

impl TwistVariant {
    pub fn tag(self) -> &'static str {
        match self {
            TwistVariant::Direct => "direct",
            TwistVariant::Serre => "serre",
        }
    }
}

/// The result applied, with the parameters it was instantiated at.
#[derive(Clone, Debug, PartialEq)]
pub enum Rule {
    TrivialKNonpositive {
        subject: Subject,
    },
    ClassicalPetri {
        p: BNProblem,
        cc: CurveClass,
    },
    SmallSlope {
        p: BNProblem,
        cc: CurveClass,
        kind: StabilityKind,
    },
    /// The dual span of the canonical bundle lies in `B(g-1, 2g-2, g)` on a
    /// non-hyperelliptic curve.
    CanonicalDualSpan {
        p: BNProblem,
        cc: CurveClass,
    },
    HyperellipticSlopeTwo {
        p: BNProblem,
        cc: CurveClass,
        kind: StabilityKind,
    },
    RegionT {
        p: BNProblem,
        kind: StabilityKind,
    },
    RegionBmno {
        p: BNProblem,
        cc: CurveClass,
        kind: StabilityKind,
    },
    KnownEmpty {
        p: BNProblem,
        kind: StabilityKind,
    },
    SerreDualOf {
        p: BNProblem,
        inner: Box<Certificate>,
    },
    LineBundleReduction {
        u: UniversalProblem,
        inner: Vec<Certificate>,
    },
    Normalized {
        from: UniversalProblem,
        steps: Vec<Normalization>,
        inner: Box<Certificate>,
    },
    /// Existence of twisted loci from a line-bundle locus with
    /// `beta(1, d0, k0)(E2) >= 1`.
    TwistedExtension {
        g: Genus,
        n1: i64,
        d1: i64,
        k: i64,
        n2: i64,
        d2: i64,
        d0: i64,
        k0: i64,
        variant: TwistVariant,
        kind: StabilityKind,
    },
    TensorProduct {
        g: Genus,
        p1: BNProblem,
        p2: BNProblem,
        k: i64,
        cc: CurveClass,
        kind: StabilityKind,
        factor1: Vec<Certificate>,
        factor2: Vec<Certificate>,
    },
    KernelBundle {
        base: BNProblem,
        n: i64,
        d: i64,
        k: i64,
        cc: CurveClass,
        kind: StabilityKind,
        base_certs: Vec<Certificate>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Premise {
    pub inequality: String,
    pub holds: bool,
}

fn prem(holds: bool, inequality: impl Into<String>) -> Premise {
    Premise {
        inequality: inequality.into(),
        holds,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub rule: Rule,
    pub verdict: Status,
}

const KNOWN_EMPTY_STABLE: &[(i64, i64, i64, i64)] = &[(3, 2, 6, 4)];

fn kind_is_stable(kind: StabilityKind) -> Premise {
    prem(kind == StabilityKind::Stable, format!("statement is about stable bundles ({kind})"))
}

fn small_slope_rhs(p: &BNProblem) -> i64 {
    p.n + p.g.get() * (p.k - p.n)
}

fn region_premises(p: &BNProblem, v: &RegionVerdict, bound_name: &str, bound: String) -> Vec<Premise> {
    let sp = p.slope_point();
    let top = 2 * p.g.get() - 2;
    vec![
        prem(p.n >= 2, format!("n = {} >= 2", p.n)),
        prem(v.inside, format!(
            "0 <= mu = {} <= {top} and 0 < lambda = {} <= {bound_name}(mu) = {bound}",
            fmt_rat(&sp.mu),
            fmt_rat(&sp.lambda)
        )),
    ]
}

fn subjects_match(certs: &[Certificate], want: Subject) -> bool {
    !certs.is_empty() && certs.iter().all(|c| c.subject() == want)
}

fn certified_this_rank(certs: &[Certificate]) -> bool {
    !certs.is_empty()
        && certs.iter().all(|c| c.verdict == Status::Nonempty)
        && certs.iter().any(|c| c.scope() == Scope::ThisRank)
}

impl Certificate {
    pub fn new(rule: Rule, verdict: Status) -> Self {
        Certificate { rule, verdict }
    }

    pub fn name(&self) -> &'static str {
        match &self.rule {
            Rule::TrivialKNonpositive { .. } => "trivial-k-nonpositive",
            Rule::ClassicalPetri { .. } => "classical-petri",
            Rule::SmallSlope { .. } => "small-slope",
            Rule::CanonicalDualSpan { .. } => "canonical-dual-span",
            Rule::HyperellipticSlopeTwo { .. } => "hyperelliptic-slope-two",
            Rule::RegionT { .. } => "region-t",
            Rule::RegionBmno { .. } => "region-bmno",
            Rule::KnownEmpty { .. } => "known-empty",
            Rule::SerreDualOf { .. } => "serre-dual",
            Rule::LineBundleReduction { .. } => "line-bundle-reduction",
            Rule::Normalized { .. } => "normalized",
            Rule::TwistedExtension { .. } => "twisted-extension",
            Rule::TensorProduct { .. } => "tensor-product",
            Rule::KernelBundle { .. } => "kernel-bundle",
        }
    }

    pub fn subject(&self) -> Subject {
        match &self.rule {
            Rule::TrivialKNonpositive { subject } => *subject,
            Rule::ClassicalPetri { p, .. }
            | Rule::SmallSlope { p, .. }
            | Rule::CanonicalDualSpan { p, .. }
            | Rule::HyperellipticSlopeTwo { p, .. }
            | Rule::RegionT { p, .. }
            | Rule::RegionBmno { p, .. }
            | Rule::KnownEmpty { p, .. }
            | Rule::SerreDualOf { p, .. } => Subject::Untwisted(*p),
            Rule::LineBundleReduction { u, .. } => Subject::Universal(*u),
            Rule::Normalized { from, .. } => Subject::Universal(*from),
            Rule::TwistedExtension { .. } => Subject::Universal(twisted_subject(&self.rule)),
            Rule::TensorProduct { g, p1, p2, k, .. } => Subject::Universal(UniversalProblem {
                g: *g,
                n1: p1.n,
                d1: p1.d,
                n2: p2.n,
                d2: p2.d,
                k: *k,
            }),
            Rule::KernelBundle { base, n, d, k, .. } => Subject::Universal(UniversalProblem {
                g: base.g,
                n1: base.n,
                d1: base.d,
                n2: d - n * base.g.get(),
                d2: -d,
                k: *k,
            }),
        }
    }

    pub fn scope(&self) -> Scope {
        match &self.rule {
            Rule::RegionBmno { .. } => Scope::SomeRankSameSlopePoint,
            Rule::SerreDualOf { inner, .. } | Rule::Normalized { inner, .. } => inner.scope(),
            Rule::LineBundleReduction { inner, .. } => {
                inner.iter().map(Certificate::scope).min().unwrap_or(Scope::SomeRankSameSlopePoint)
            }
            _ => Scope::ThisRank,
        }
    }

    /// The hypotheses of the rule for the stored verdict, re-evaluated from
    /// the stored parameters.
    pub fn premises(&self) -> Vec<Premise> {
        let v = self.verdict;
        let mut out = Vec::new();
        if v == Status::Unknown {
            out.push(prem(false, "a certificate must conclude nonempty or empty"));
        }
        match &self.rule {
            Rule::TrivialKNonpositive { subject } => {
                out.push(prem(v == Status::Nonempty, "conclusion is nonempty"));
                out.push(prem(subject.k() <= 0, format!("k = {} <= 0", subject.k())));
            }
            Rule::ClassicalPetri { p, cc } => {
                let b = beta_untwisted(p);
                out.push(prem(p.n == 1, format!("n = {} = 1", p.n)));
                out.push(prem(cc.is_petri(), format!("curve class {cc} is Petri")));
                out.push(match v {
                    Status::Empty => prem(b < 0, format!("beta(1, {}, {}) = {b} < 0", p.d, p.k)),
                    _ => prem(b >= 0, format!("beta(1, {}, {}) = {b} >= 0", p.d, p.k)),
                });
            }
            Rule::SmallSlope { p, cc, kind } => out.extend(small_slope_premises(p, *cc, *kind, v)),
            Rule::CanonicalDualSpan { p, cc } => {
                let g = p.g.get();
                out.push(prem(v == Status::Nonempty, "conclusion is nonempty"));
                out.push(prem(cc.is_non_hyperelliptic(p.g), format!("curve class {cc} is non-hyperelliptic")));
                out.push(prem(
                    (p.n, p.d, p.k) == (g - 1, 2 * g - 2, g),
                    format!("(n, d, k) = ({}, {}, {}) = (g-1, 2g-2, g)", p.n, p.d, p.k),
                ));
            }
            Rule::HyperellipticSlopeTwo { p, cc, kind } => {
                out.push(prem(p.g.get() == 2 || *cc == CurveClass::Hyperelliptic, format!("curve class {cc} is hyperelliptic")));
                out.push(prem(p.n >= 2, format!("n = {} >= 2", p.n)));
                out.push(prem(p.d == 2 * p.n, format!("d = {} = 2n", p.d)));
                match v {
                    Status::Empty => {
                        out.push(prem(p.k > p.n, format!("k = {} > n = {}", p.k, p.n)));
                        out.push(kind_is_stable(*kind));
                    }
                    _ => out.push(prem(p.k <= p.n, format!("k = {} <= n = {}", p.k, p.n))),
                }
            }
            Rule::RegionT { p, kind } => {
                out.push(prem(v == Status::Nonempty, "conclusion is nonempty"));
                let verdict = membership_t(p.g, &p.slope_point().mu, &p.slope_point().lambda, *kind);
                let bound = BnMap::for_genus(p.g)
                    .t_at(&p.slope_point().mu)
                    .map(|x| fmt_rat(&x))
                    .unwrap_or_else(|_| "undefined".into());
                out.extend(region_premises(p, &verdict, "t_g", bound));
                if *kind == StabilityKind::Stable {
                    out.push(prem(!verdict.excluded_for_stable, "slope point is not a staircase corner excluded for stable bundles"));
                }
            }
            Rule::RegionBmno { p, cc, kind } => {
                out.push(prem(v == Status::Nonempty, "conclusion is nonempty"));
                let verdict = membership_bmno(p.g, &p.slope_point().mu, &p.slope_point().lambda, *kind);
                let bound = BnMap::for_genus(p.g)
                    .f_at(&p.slope_point().mu)
                    .map(|x| fmt_rat(&x))
                    .unwrap_or_else(|_| "undefined".into());
                out.extend(region_premises(p, &verdict, "f_g", bound));
                if *kind == StabilityKind::Stable {
                    out.push(prem(cc.is_non_hyperelliptic(p.g), format!("curve class {cc} is non-hyperelliptic")));
                    out.push(prem(!verdict.excluded_for_stable, "slope point is not excluded for stable bundles"));
                }
            }
            Rule::KnownEmpty { p, kind } => {
                out.push(prem(v == Status::Empty, "conclusion is empty"));
                out.push(kind_is_stable(*kind));
                let key = (p.g.get(), p.n, p.d, p.k);
                out.push(prem(
                    KNOWN_EMPTY_STABLE.contains(&key),
                    format!("(g, n, d, k) = {key:?} is listed as empty"),
                ));
            }
            Rule::SerreDualOf { p, inner } => {
                let dual = serre_dual_problem(p);
                out.push(prem(
                    inner.subject() == Subject::Untwisted(dual),
                    format!("inner certificate concerns the Serre dual B({}, {}, {})", dual.n, dual.d, dual.k),
                ));
                out.push(prem(inner.verdict == v, "inner certificate has the same conclusion"));
                out.push(prem(
                    beta_untwisted(p) == beta_untwisted(&dual),
                    format!("beta = {} on both sides", beta_untwisted(p)),
                ));
            }
            Rule::LineBundleReduction { u, inner } => {
                let reduced = line_bundle_reduced(u);
                out.push(prem(reduced.is_some(), format!("n1 = {} or n2 = {} is 1", u.n1, u.n2)));
                if let Some(r) = reduced {
                    out.push(prem(
                        subjects_match(inner, Subject::Untwisted(r)),
                        format!("inner certificates concern B({}, {}, {})", r.n, r.d, r.k),
                    ));
                }
                out.push(prem(
                    !inner.is_empty() && inner.iter().all(|c| c.verdict == v),
                    "inner certificates have the same conclusion",
                ));
            }
            Rule::Normalized { from, steps, inner } => {
                let to = steps.iter().fold(*from, |u, s| s.apply(&u));
                let trail: Vec<String> = steps.iter().map(|s| s.to_string()).collect();
                out.push(prem(
                    inner.subject() == Subject::Universal(to),
                    format!("[{}] maps the problem to {to}", trail.join(", ")),
                ));
                out.push(prem(inner.verdict == v, "inner certificate has the same conclusion"));
                out.push(prem(
                    beta_universal(from) == beta_universal(&to),
                    format!("beta^k = {} on both sides", beta_universal(from)),
                ));
            }
            Rule::TwistedExtension { .. } => out.extend(twisted_premises(&self.rule, v)),
            Rule::TensorProduct {
                g,
                p1,
                p2,
                k,
                cc,
                kind: _,
                factor1,
                factor2,
            } => {
                out.push(prem(v == Status::Nonempty, "conclusion is nonempty"));
                out.extend(product_window_premises(*g, p1, p2, *cc));
                out.push(prem(*k <= p1.k * p2.k, format!("k = {k} <= k1 k2 = {}", p1.k * p2.k)));
                for (i, (p, certs)) in [(p1, factor1), (p2, factor2)].into_iter().enumerate() {
                    out.push(prem(
                        subjects_match(certs, Subject::Untwisted(*p)) && certified_this_rank(certs),
                        format!("factor {} B({}, {}, {}) is certified nonempty at this rank", i + 1, p.n, p.d, p.k),
                    ));
                }
            }
            Rule::KernelBundle {
                base,
                n,
                d,
                k,
                cc,
                kind,
                base_certs,
            } => {
                out.push(prem(v == Status::Nonempty, "conclusion is nonempty"));
                out.extend(kernel_premises(base, *n, *d, *k, *cc, *kind));
                out.push(prem(
                    subjects_match(base_certs, Subject::Untwisted(*base)) && certified_this_rank(base_certs),
                    format!("base B({}, {}, {}) is certified nonempty at this rank", base.n, base.d, base.k),
                ));
            }
        }
        out
    }

    fn children(&self) -> Vec<&Certificate> {
        match &self.rule {
            Rule::SerreDualOf { inner, .. } | Rule::Normalized { inner, .. } => vec![inner.as_ref()],
            Rule::LineBundleReduction { inner, .. } => inner.iter().collect(),
            Rule::TensorProduct { factor1, factor2, .. } => factor1.iter().chain(factor2).collect(),
            Rule::KernelBundle { base_certs, .. } => base_certs.iter().collect(),
            _ => Vec::new(),
        }
    }

    /// True when every premise holds here and in every nested certificate.
    pub fn verify(&self) -> bool {
        self.premises().iter().all(|p| p.holds) && self.children().iter().all(|c| c.verify())
    }

    pub fn params(&self) -> Value {
        let certs = |cs: &[Certificate]| Value::Array(cs.iter().map(Certificate::to_json).collect());
        match &self.rule {
            Rule::TrivialKNonpositive { subject } => json!({ "problem": subject.to_json() }),
            Rule::ClassicalPetri { p, cc } | Rule::CanonicalDualSpan { p, cc } => {
                json!({ "problem": problem_json(p), "curve": cc.tag() })
            }
            Rule::SmallSlope { p, cc, kind } | Rule::HyperellipticSlopeTwo { p, cc, kind } | Rule::RegionBmno { p, cc, kind } => {
                let mut v = json!({ "problem": problem_json(p), "curve": cc.tag(), "stability": kind.to_string() });
                if matches!(self.rule, Rule::SmallSlope { .. }) {
                    if let Ok((case, l, lp)) = classify_small_slope(p.g, p.n, p.d) {
                        v["case"] = json!(case.tag(cc.hyperelliptic(p.g)));
                        v["ell"] = json!(l);
                        v["ellprime"] = json!(lp);
                    }
                }
                v
            }
            Rule::RegionT { p, kind } | Rule::KnownEmpty { p, kind } => {
                let sp = p.slope_point();
                json!({
                    "problem": problem_json(p),
                    "stability": kind.to_string(),
                    "mu": fmt_rat(&sp.mu),
                    "lambda": fmt_rat(&sp.lambda),
                })
            }
            Rule::SerreDualOf { p, inner } => json!({ "problem": problem_json(p), "inner": inner.to_json() }),
            Rule::LineBundleReduction { u, inner } => json!({ "problem": universal_json(u), "inner": certs(inner) }),
            Rule::Normalized { from, steps, inner } => json!({
                "problem": universal_json(from),
                "steps": steps.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                "inner": inner.to_json(),
            }),
            Rule::TwistedExtension {
                g,
                n1,
                d1,
                k,
                n2,
                d2,
                d0,
                k0,
                variant,
                kind,
            } => json!({
                "g": g.get(), "n1": n1, "d1": d1, "k": k, "n2": n2, "d2": d2, "d0": d0, "k0": k0,
                "variant": variant.tag(),
                "stability": kind.to_string(),
                "beta_twisted": twisted_beta(&self.rule),
                "problem": universal_json(&twisted_subject(&self.rule)),
            }),
            Rule::TensorProduct {
                g,
                p1,
                p2,
                k,
                cc,
                kind,
                factor1,
                factor2,
            } => json!({
                "g": g.get(),
                "factor1": problem_json(p1),
                "factor2": problem_json(p2),
                "k": k,
                "curve": cc.tag(),
                "stability": kind.to_string(),
                "factor1_certificates": certs(factor1),
                "factor2_certificates": certs(factor2),
            }),
            Rule::KernelBundle {
                base,
                n,
                d,
                k,
                cc,
                kind,
                base_certs,
            } => json!({
                "base": problem_json(base),
                "n": n,
                "d": d,
                "k": k,
                "k_max": kernel_k_max(base.g, base.n, base.d, base.k, *n, *d).ok(),
                "curve": cc.tag(),
                "stability": kind.to_string(),
                "base_certificates": certs(base_certs),
            }),
        }
    }

    pub fn to_json(&self) -> Value {
        let premises: Vec<Value> = self
            .premises()
            .into_iter()
            .map(|p| json!({ "inequality": p.inequality, "holds": p.holds }))
            .collect();
        json!({
            "rule": self.name(),
            "conclusion": self.verdict.tag(),
            "params": self.params(),
            "premises": premises,
        })
    }
}

pub(crate) fn problem_json(p: &BNProblem) -> Value {
    json!({ "g": p.g.get(), "n": p.n, "d": p.d, "k": p.k })
}

pub(crate) fn universal_json(u: &UniversalProblem) -> Value {
    json!({ "g": u.g.get(), "n1": u.n1, "d1": u.d1, "n2": u.n2, "d2": u.d2, "k": u.k })
}

fn small_slope_premises(p: &BNProblem, cc: CurveClass, kind: StabilityKind, v: Status) -> Vec<Premise> {
    let (n, d, k) = (p.n, p.d, p.k);
    let g = p.g.get();
    let rhs = small_slope_rhs(p);
    let ge = || prem(d >= rhs, format!("d >= n + g(k - n): {d} >= {rhs}"));
    let lt = || prem(d < rhs, format!("d < n + g(k - n): {d} < {rhs}"));
    let mut out = vec![prem(n >= 2, format!("n = {n} >= 2"))];
    if d < 2 * n {
        out.push(prem(0 < d, format!("0 < d = {d} < 2n = {}", 2 * n)));
        match (v, kind) {
            (Status::Nonempty, StabilityKind::Stable) => {
                out.push(ge());
                out.push(prem((d, k) != (n, n), format!("(d, k) = ({d}, {k}) differs from (n, n)")));
            }
            (Status::Nonempty, _) => out.push(ge()),
            (_, StabilityKind::Stable) if (d, k) == (n, n) => {
                out.push(prem(true, format!("(d, k) = (n, n) = ({n}, {n})")));
            }
            _ => out.push(lt()),
        }
        return out;
    }
    out.push(prem(d == 2 * n, format!("d = {d} = 2n")));
    let special = (n, k) != (g - 1, g);
    match (v, cc.hyperelliptic(p.g)) {
        (Status::Nonempty, Some(false)) => {
            out.push(prem(true, format!("curve class {cc} is non-hyperelliptic")));
            out.push(ge());
        }
        (Status::Nonempty, _) => out.push(prem(k <= n, format!("k = {k} <= n = {n}"))),
        (_, hyp) => {
            if hyp == Some(false) {
                out.push(prem(true, format!("curve class {cc} is non-hyperelliptic")));
            } else {
                out.push(prem(k > n, format!("k = {k} > n = {n}")));
            }
            out.push(lt());
            out.push(prem(special, format!("(n, k) = ({n}, {k}) differs from (g-1, g)")));
            out.push(kind_is_stable(kind));
        }
    }
    out
}

fn line_bundle_reduced(u: &UniversalProblem) -> Option<BNProblem> {
    if u.n2 == 1 {
        Some(BNProblem { g: u.g, n: u.n1, d: u.d1 + u.n1 * u.d2, k: u.k })
    } else if u.n1 == 1 {
        Some(BNProblem { g: u.g, n: u.n2, d: u.d2 + u.n2 * u.d1, k: u.k })
    } else {
        None
    }
}

fn twisted_subject(rule: &Rule) -> UniversalProblem {
    let Rule::TwistedExtension { g, n1, d1, k, n2, d2, variant, .. } = *rule else {
        unreachable!("only called on twisted-extension rules")
    };
    let d2 = match variant {
        TwistVariant::Direct => d2,
        TwistVariant::Serre => 2 * n2 * (g.get() - 1) - d2,
    };
    UniversalProblem { g, n1, d1, n2, d2, k }
}

/// `beta(n1, d1, k)` of the twisted locus the twisted-extension criterion makes non-empty.
fn twisted_beta(rule: &Rule) -> i64 {
    let Rule::TwistedExtension { g, n1, d1, k, n2, d2, variant, .. } = *rule else {
        unreachable!("only called on twisted-extension rules")
    };
    match variant {
        TwistVariant::Direct => beta_twisted_locus(g, n1, d1, k, n2, d2),
        TwistVariant::Serre => beta_twisted_locus(g, n1, -d1, twisted_k1(g, n1, d1, k, n2, d2), n2, d2),
    }
}

fn twisted_k1(g: Genus, n1: i64, d1: i64, k: i64, n2: i64, d2: i64) -> i64 {
    k - n2 * d1 + n1 * d2 - n1 * n2 * (g.get() - 1)
}

fn twisted_premises(rule: &Rule, v: Status) -> Vec<Premise> {
    let Rule::TwistedExtension { g, n1, d1, k, n2, d2, d0, k0, variant, kind } = *rule else {
        unreachable!("only called on twisted-extension rules")
    };
    let strict = kind == StabilityKind::Stable;
    let rel = if strict { ">" } else { ">=" };
    let b0 = beta_twisted_locus(g, 1, d0, k0, n2, d2);
    let mut out = vec![
        prem(v == Status::Nonempty, "conclusion is nonempty"),
        prem(n1 >= 2, format!("n1 = {n1} >= 2")),
        prem(k0 >= 1, format!("k0 = {k0} >= 1")),
        prem(b0 >= 1, format!("beta(1, {d0}, {k0})(E2) = {b0} >= 1")),
    ];
    let (kk, dd) = match variant {
        TwistVariant::Direct => (k, d1),
        TwistVariant::Serre => (twisted_k1(g, n1, d1, k, n2, d2), -d1),
    };
    let need = if strict { n1 * d0 + 1 } else { n1 * d0 };
    out.push(prem(kk <= n1 * k0, format!("{} = {kk} <= n1 k0 = {}", if variant == TwistVariant::Direct { "k" } else { "k1" }, n1 * k0)));
    out.push(prem(dd >= need, format!("{} = {dd} >= {need}", if variant == TwistVariant::Direct { "d1" } else { "-d1" })));
    let bt = twisted_beta(rule);
    let bt_ok = if strict { bt > 1 } else { bt >= 1 };
    out.push(prem(bt_ok, format!("twisted beta = {bt} {rel} 1")));
    let bu = beta_universal(&twisted_subject(rule));
    let floor = n2 * n2 * (g.get() - 1) + 2;
    let bu_ok = if strict { bu > floor } else { bu >= floor };
    out.push(prem(bu_ok, format!("beta^k = {bu} {rel} n2^2 (g-1) + 2 = {floor}")));
    out
}

pub(crate) fn product_window_premises(g: Genus, p1: &BNProblem, p2: &BNProblem, cc: CurveClass) -> Vec<Premise> {
    let gv = g.get();
    let strict = p1.d < 2 * p1.n && p2.d <= 2 * gv * p2.n;
    let relaxed = cc.is_non_hyperelliptic(g) && p1.d <= 2 * p1.n && p2.d < 2 * gv * p2.n;
    vec![
        prem(p1.g == g && p2.g == g, format!("both factors live on genus {gv}")),
        prem(p1.n >= 2 && p2.n >= 2, format!("n1 = {} >= 2 and n2 = {} >= 2", p1.n, p2.n)),
        prem(p1.d > 0 && p2.d > 0, format!("d1 = {} > 0 and d2 = {} > 0", p1.d, p2.d)),
        prem(p1.k > 0 && p2.k > 0, format!("k1 = {} > 0 and k2 = {} > 0", p1.k, p2.k)),
        prem(
            strict || relaxed,
            format!(
                "d1 = {} < 2n1 = {} and d2 = {} <= 2g n2 = {} (or, non-hyperelliptic, d1 <= 2n1 and d2 < 2g n2)",
                p1.d,
                2 * p1.n,
                p2.d,
                2 * gv * p2.n
            ),
        ),
    ]
}

pub(crate) fn kernel_premises(base: &BNProblem, n: i64, d: i64, k: i64, cc: CurveClass, kind: StabilityKind) -> Vec<Premise> {
    let g = base.g.get();
    let two_ng = 2 * n * g;
    let d_ok = match kind {
        StabilityKind::Stable => d > two_ng || (d == two_ng && cc.is_non_hyperelliptic(base.g)),
        StabilityKind::Semistable => d >= two_ng,
    };
    let d_text = match kind {
        StabilityKind::Stable => format!("d = {d} > 2ng = {two_ng} (or = 2ng on a non-hyperelliptic curve)"),
        StabilityKind::Semistable => format!("d = {d} >= 2ng = {two_ng}"),
    };
    let kmax = kernel_k_max(base.g, base.n, base.d, base.k, n, d);
    let mut out = vec![
        prem(base.n >= 2, format!("n1 = {} >= 2", base.n)),
        prem(base.k > base.n, format!("k1 = {} > n1 = {}", base.k, base.n)),
        prem(n >= 1, format!("n = {n} >= 1")),
        prem(d_ok, d_text),
    ];
    match kmax {
        Ok(m) => out.push(prem(0 < k && k <= m, format!("0 < k = {k} <= k_max = {m}"))),
        Err(e) => out.push(prem(false, format!("k_max undefined: {e}"))),
    }
    out
}

/// A tri-state verdict with its justification.
#[derive(Clone, Debug, PartialEq)]
pub struct Decision {
    pub status: Status,
    pub scope: Scope,
    pub certificates: Vec<Certificate>,
    /// Expected dimension of the locus asked about.
    pub beta: i64,
}

impl Decision {
    pub fn unknown(beta: i64) -> Self {
        Decision {
            status: Status::Unknown,
            scope: Scope::ThisRank,
            certificates: Vec::new(),
            beta,
        }
    }

    /// Builds a decision from certificates that all share one conclusion.
    pub fn from_certificates(certificates: Vec<Certificate>, beta: i64) -> Self {
        let Some(first) = certificates.first() else {
            return Decision::unknown(beta);
        };
        let status = first.verdict;
        debug_assert!(certificates.iter().all(|c| c.verdict == status));
        let scope = certificates.iter().map(Certificate::scope).min().unwrap_or(Scope::ThisRank);
        Decision {
            status,
            scope,
            certificates,
            beta,
        }
    }

    pub fn is_nonempty_this_rank(&self) -> bool {
        self.status == Status::Nonempty && self.scope == Scope::ThisRank
    }

    /// Checks the certificate invariants: a definite status needs at least
    /// one certificate, all of them conclude that status and re-verify, and
    /// a this-rank scope needs a this-rank certificate.
    pub fn verify(&self) -> bool {
        match self.status {
            Status::Unknown => self.certificates.is_empty(),
            status => {
                !self.certificates.is_empty()
                    && self.certificates.iter().all(|c| c.verdict == status && c.verify())
                    && self.certificates.iter().map(Certificate::scope).min() == Some(self.scope)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status.tag(),
            "scope": self.scope.tag(),
            "beta": self.beta,
            "certificates": self.certificates.iter().map(Certificate::to_json).collect::<Vec<_>>(),
        })
    }
}

/// The slope-two and small-slope cases of stable bundles with sections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SmallSlopeCase {
    /// `d < n + g`: the trivial bundle of rank `k` is a subsheaf.
    TrivialSubsheaf,
    /// `d = n + g l` with `l >= 1`: built from dual spans.
    DualSpan,
    /// `d = n + g l + l'`, `0 < l' < g`: quotients of dual spans.
    DualSpanQuotient,
    /// `d = 2n`; the answer depends on whether the curve is hyperelliptic.
    SlopeTwo,
}

impl SmallSlopeCase {
    /// Short tag, with the slope-two case split by curve type when known.
    pub fn tag(self, hyperelliptic: Option<bool>) -> &'static str {
        match (self, hyperelliptic) {
            (SmallSlopeCase::TrivialSubsheaf, _) => "trivial-subsheaf",
            (SmallSlopeCase::DualSpan, _) => "dual-span",
            (SmallSlopeCase::DualSpanQuotient, _) => "dual-span-quotient",
            (SmallSlopeCase::SlopeTwo, Some(true)) => "slope-two-hyperelliptic",
            (SmallSlopeCase::SlopeTwo, Some(false)) => "slope-two-non-hyperelliptic",
            (SmallSlopeCase::SlopeTwo, None) => "slope-two",
        }
    }
}

fn check_small_slope_domain(n: i64, d: i64) -> Result<()> {
    if n < 2 {
        return Err(Error::TooSmall { what: "rank", min: 2, got: n });
    }
    if d <= 0 || d > 2 * n {
        return Err(Error::OutOfDomain {
            what: "degree",
            value: d.to_string(),
            window: format!("(0, {}]", 2 * n),
        });
    }
    Ok(())
}

/// Writes `d = n + g l + l'` with `0 <= l' < g` and names the case.
pub fn classify_small_slope(g: Genus, n: i64, d: i64) -> Result<(SmallSlopeCase, i64, i64)> {
    check_small_slope_domain(n, d)?;
    let gv = g.get();
    let (l, lp) = ((d - n).div_euclid(gv), (d - n).rem_euclid(gv));
    let case = if d == 2 * n {
        SmallSlopeCase::SlopeTwo
    } else if d < n + gv {
        SmallSlopeCase::TrivialSubsheaf
    } else if lp == 0 {
        SmallSlopeCase::DualSpan
    } else {
        SmallSlopeCase::DualSpanQuotient
    };
    Ok((case, l, lp))
}

/// Stable small-slope verdict for `0 < d <= 2n`.
pub fn small_slope_decide(g: Genus, n: i64, d: i64, k: i64, cc: CurveClass) -> Result<Decision> {
    small_slope_decide_kind(g, n, d, k, cc, StabilityKind::Stable)
}

/// Small-slope verdict for either stability kind.
///
/// Below slope two the semistable locus is non-empty exactly when the
/// inequality holds (direct sums of degree-one line bundles cover
/// `(n, n, n)`); at slope two only non-emptiness carries over from the
/// stable case.
pub fn small_slope_decide_kind(
    g: Genus,
    n: i64,
    d: i64,
    k: i64,
    cc: CurveClass,
    kind: StabilityKind,
) -> Result<Decision> {
    check_small_slope_domain(n, d)?;
    let p = BNProblem { g, n, d, k };
    Ok(Decision::from_certificates(small_slope_rule(&p, cc, kind).into_iter().collect(), p.beta()))
}

fn small_slope_rule(p: &BNProblem, cc: CurveClass, kind: StabilityKind) -> Option<Certificate> {
    let (n, d, k) = (p.n, p.d, p.k);
    if n < 2 || d <= 0 || d > 2 * n {
        return None;
    }
    let g = p.g.get();
    let ineq = d >= small_slope_rhs(p);
    let yes = |rule| Some(Certificate::new(rule, Status::Nonempty));
    let small = Rule::SmallSlope { p: *p, cc, kind };
    if d < 2 * n {
        let nonempty = ineq && !(kind == StabilityKind::Stable && (d, k) == (n, n));
        return Some(Certificate::new(small, if nonempty { Status::Nonempty } else { Status::Empty }));
    }
    let special = (n, k) == (g - 1, g);
    match cc.hyperelliptic(p.g) {
        Some(true) => {
            let rule = Rule::HyperellipticSlopeTwo { p: *p, cc, kind };
            match (k <= n, kind) {
                (true, _) => yes(rule),
                (false, StabilityKind::Stable) => Some(Certificate::new(rule, Status::Empty)),
                (false, StabilityKind::Semistable) => None,
            }
        }
        Some(false) => match (ineq, special, kind) {
            (true, _, _) => yes(small),
            (false, true, _) => yes(Rule::CanonicalDualSpan { p: *p, cc }),
            (false, false, StabilityKind::Stable) => Some(Certificate::new(small, Status::Empty)),
            (false, false, StabilityKind::Semistable) => None,
        },
        None => {
            if k <= n {
                yes(small)
            } else if !ineq && !special && kind == StabilityKind::Stable {
                Some(Certificate::new(small, Status::Empty))
            } else {
                None
            }
        }
    }
}

type Stage = fn(&BNProblem, CurveClass, StabilityKind) -> Option<Certificate>;

fn stage_trivial(p: &BNProblem, _: CurveClass, _: StabilityKind) -> Option<Certificate> {
    (p.k <= 0).then(|| Certificate::new(Rule::TrivialKNonpositive { subject: Subject::Untwisted(*p) }, Status::Nonempty))
}

fn stage_classical(p: &BNProblem, cc: CurveClass, _: StabilityKind) -> Option<Certificate> {
    (p.n == 1 && cc.is_petri()).then(|| {
        let v = if beta_untwisted(p) >= 0 { Status::Nonempty } else { Status::Empty };
        Certificate::new(Rule::ClassicalPetri { p: *p, cc }, v)
    })
}

fn stage_region_t(p: &BNProblem, _: CurveClass, kind: StabilityKind) -> Option<Certificate> {
    if p.n < 2 {
        return None;
    }
    let sp = p.slope_point();
    membership_t(p.g, &sp.mu, &sp.lambda, kind)
        .certifies()
        .then(|| Certificate::new(Rule::RegionT { p: *p, kind }, Status::Nonempty))
}

fn stage_known_empty(p: &BNProblem, _: CurveClass, kind: StabilityKind) -> Option<Certificate> {
    (kind == StabilityKind::Stable && KNOWN_EMPTY_STABLE.contains(&(p.g.get(), p.n, p.d, p.k)))
        .then(|| Certificate::new(Rule::KnownEmpty { p: *p, kind }, Status::Empty))
}

fn stage_bmno(p: &BNProblem, cc: CurveClass, kind: StabilityKind) -> Option<Certificate> {
    if p.n < 2 || (kind == StabilityKind::Stable && !cc.is_non_hyperelliptic(p.g)) {
        return None;
    }
    let sp = p.slope_point();
    membership_bmno(p.g, &sp.mu, &sp.lambda, kind)
        .certifies()
        .then(|| Certificate::new(Rule::RegionBmno { p: *p, cc, kind }, Status::Nonempty))
}

const STAGES: [Stage; 6] = [
    stage_trivial,
    stage_classical,
    small_slope_rule,
    stage_region_t,
    stage_known_empty,
    stage_bmno,
];

/// Decides `B(n, d, k)` (stable) or its semistable analogue.
///
/// Stages run in a fixed order, each on the problem and on its Serre dual;
/// the first stage with a conclusion fixes the status, and agreeing
/// certificates from later stages are collected as well.
pub fn decide_untwisted(p: &BNProblem, cc: CurveClass, kind: StabilityKind) -> Decision {
    let dual = serre_dual_problem(p);
    let run = |stage: Stage| -> Vec<Certificate> {
        let mut out: Vec<Certificate> = stage(p, cc, kind).into_iter().collect();
        if dual != *p {
            if let Some(c) = stage(&dual, cc, kind) {
                out.push(Certificate::new(
                    Rule::SerreDualOf {
                        p: *p,
                        inner: Box::new(c.clone()),
                    },
                    c.verdict,
                ));
            }
        }
        out
    };
    let mut status = None;
    let mut certs = Vec::new();
    for stage in STAGES {
        let found = run(stage);
        let Some(first) = found.first() else { continue };
        match status {
            None => {
                if found.iter().any(|c| c.verdict != first.verdict) {
                    // Contradictory rules; refuse to answer rather than pick one.
                    return Decision::unknown(p.beta());
                }
                status = Some(first.verdict);
                certs.extend(found);
            }
            Some(s) => certs.extend(found.into_iter().filter(|c| c.verdict == s)),
        }
    }
    Decision::from_certificates(certs, p.beta())
}

/// Applies the twisted-extension criterion with explicit `(d0, k0)`.
///
/// Hypothesis failures give `Unknown`: the criterion only ever proves
/// non-emptiness.
#[allow(clippy::too_many_arguments)]
pub fn t1_twisted_decide(
    g: Genus,
    n1: i64,
    d1: i64,
    k: i64,
    n2: i64,
    d2: i64,
    d0: i64,
    k0: i64,
    variant: TwistVariant,
    kind: StabilityKind,
) -> Result<Decision> {
    if n1 < 2 {
        return Err(Error::TooSmall { what: "n1", min: 2, got: n1 });
    }
    if n2 < 1 {
        return Err(Error::TooSmall { what: "n2", min: 1, got: n2 });
    }
    let cert = Certificate::new(
        Rule::TwistedExtension {
            g,
            n1,
            d1,
            k,
            n2,
            d2,
            d0,
            k0,
            variant,
            kind,
        },
        Status::Nonempty,
    );
    let beta = beta_universal(&twisted_subject(&cert.rule));
    Ok(if cert.verify() {
        Decision::from_certificates(vec![cert], beta)
    } else {
        Decision::unknown(beta)
    })
}

/// Twisted locus BN number attached to a twisted-extension certificate.
pub fn twisted_extension_beta(cert: &Certificate) -> Option<i64> {
    matches!(cert.rule, Rule::TwistedExtension { .. }).then(|| twisted_beta(&cert.rule))
}

fn normalized_forms(u: &UniversalProblem) -> Vec<(Vec<Normalization>, UniversalProblem)> {
    use Normalization::*;
    let mut out: Vec<(Vec<Normalization>, UniversalProblem)> = Vec::new();
    for steps in [vec![], vec![Swap], vec![SerreDual], vec![SerreDual, Swap]] {
        let f = steps.iter().fold(*u, |x, s| s.apply(&x));
        if !out.iter().any(|(_, o)| *o == f) {
            out.push((steps, f));
        }
    }
    out
}

fn wrap(from: &UniversalProblem, mut steps: Vec<Normalization>, cert: Certificate) -> Certificate {
    if steps.is_empty() {
        return cert;
    }
    // Collapse a trailing shift into the trail so the inner subject matches.
    if let Rule::Normalized { steps: inner_steps, inner, .. } = cert.rule {
        steps.extend(inner_steps);
        let verdict = inner.verdict;
        return Certificate::new(Rule::Normalized { from: *from, steps, inner }, verdict);
    }
    let verdict = cert.verdict;
    Certificate::new(
        Rule::Normalized {
            from: *from,
            steps,
            inner: Box::new(cert),
        },
        verdict,
    )
}

fn shifted_cert(form: &UniversalProblem, shift: i64, cert: Certificate) -> Certificate {
    if shift == 0 {
        return cert;
    }
    let verdict = cert.verdict;
    Certificate::new(
        Rule::Normalized {
            from: *form,
            steps: vec![Normalization::Shift(shift)],
            inner: Box::new(cert),
        },
        verdict,
    )
}

fn divisor_pairs(k: i64) -> Vec<(i64, i64)> {
    let mut pairs: Vec<(i64, i64)> = (1..=k).filter(|a| k % a == 0).map(|a| (a, k / a)).collect();
    pairs.sort_by_key(|&(a, b)| (a.max(b), a));
    pairs
}

fn search_product(u: &UniversalProblem, cc: CurveClass, kind: StabilityKind) -> Option<Certificate> {
    if u.n1 < 2 || u.n2 < 2 || u.k < 1 {
        return None;
    }
    let g = u.g.get();
    let lo = (u.d1 - 2 * u.n1).div_euclid(u.n1);
    for shift in lo..=lo + 2 {
        let s = u.shifted(shift);
        if s.d1 <= 0 || s.d1 > 2 * s.n1 || s.d2 <= 0 || s.d2 > 2 * g * s.n2 {
            continue;
        }
        for (k1, k2) in divisor_pairs(u.k) {
            let p1 = BNProblem { g: u.g, n: s.n1, d: s.d1, k: k1 };
            let p2 = BNProblem { g: u.g, n: s.n2, d: s.d2, k: k2 };
            if let Ok(w) = product_construct(u.g, &p1, &p2, cc, kind) {
                return Some(shifted_cert(u, shift, w.certificate()));
            }
        }
    }
    None
}

fn search_kernel(u: &UniversalProblem, cc: CurveClass, kind: StabilityKind) -> Option<Certificate> {
    if u.n1 < 2 || u.k < 1 {
        return None;
    }
    let g = u.g.get();
    let mut n = 1;
    while n * g <= u.n2 {
        let d = u.n2 + n * g;
        // Shift so the second factor has degree -d.
        if (-d - u.d2).rem_euclid(u.n2) == 0 {
            let shift = (-d - u.d2) / u.n2;
            let s = u.shifted(shift);
            let kmax_at = |k1| kernel_k_max(u.g, s.n1, s.d1, k1, n, d).unwrap_or(i64::MIN);
            let top = s.n1 + s.d1.max(0) + s.n1;
            let mut k1 = s.n1 + 1;
            while k1 <= top && kmax_at(k1) < u.k {
                k1 += 1;
            }
            while k1 <= top {
                let base = BNProblem { g: u.g, n: s.n1, d: s.d1, k: k1 };
                if let Ok(w) = kernel_construct(&base, n, d, u.k, cc, kind) {
                    return Some(shifted_cert(u, shift, w.certificate()));
                }
                k1 += 1;
            }
        }
        n += 1;
    }
    None
}

fn search_twisted(u: &UniversalProblem, kind: StabilityKind) -> Option<Certificate> {
    if u.n1 < 2 {
        return None;
    }
    let strict = kind == StabilityKind::Stable;
    let g = u.g;
    let ceil_div = |a: i64, b: i64| -(-a).div_euclid(b);
    // Direct: the criterion applies to (n2, d2) itself.
    let d0 = if strict { (u.d1 - 1).div_euclid(u.n1) } else { u.d1.div_euclid(u.n1) };
    let k0_lo = ceil_div(u.k, u.n1).max(1);
    let mut tries = Vec::new();
    for k0 in k0_lo..k0_lo + 4 {
        tries.push((u.d2, d0, k0, TwistVariant::Direct));
    }
    // Serre: the criterion's E2 has degree 2 n2 (g-1) - d2.
    let e2 = 2 * u.n2 * (g.get() - 1) - u.d2;
    let d0s = if strict { (-u.d1 - 1).div_euclid(u.n1) } else { (-u.d1).div_euclid(u.n1) };
    let k1 = twisted_k1(g, u.n1, u.d1, u.k, u.n2, e2);
    let k0s_lo = ceil_div(k1, u.n1).max(1);
    for k0 in k0s_lo..k0s_lo + 4 {
        tries.push((e2, d0s, k0, TwistVariant::Serre));
    }
    tries.into_iter().find_map(|(d2, d0, k0, variant)| {
        let c = Certificate::new(
            Rule::TwistedExtension {
                g,
                n1: u.n1,
                d1: u.d1,
                k: u.k,
                n2: u.n2,
                d2,
                d0,
                k0,
                variant,
                kind,
            },
            Status::Nonempty,
        );
        c.verify().then_some(c)
    })
}

type Strategy<'a> = dyn Fn(&UniversalProblem) -> Option<Certificate> + 'a;

/// Decides the universal twisted locus `B^k(U1, U2)`.
///
/// Tries, on the problem and its swap/Serre-dual forms: `k <= 0`, reduction
/// to an untwisted locus when a rank is 1, the tensor-product construction,
/// the kernel-bundle construction and the twisted-extension criterion. Each
/// strategy that succeeds contributes a certificate. Only the rank-1
/// reduction can conclude emptiness.
pub fn decide_universal(u: &UniversalProblem, cc: CurveClass, kind: StabilityKind) -> Decision {
    let beta = beta_universal(u);
    let forms = normalized_forms(u);
    let attempt = |f: &dyn Fn(&UniversalProblem) -> Option<Certificate>| -> Option<Certificate> {
        forms.iter().find_map(|(steps, form)| f(form).map(|c| wrap(u, steps.clone(), c)))
    };

    let trivial = |f: &UniversalProblem| {
        (f.k <= 0).then(|| Certificate::new(Rule::TrivialKNonpositive { subject: Subject::Universal(*f) }, Status::Nonempty))
    };
    let reduction = |f: &UniversalProblem| {
        let r = line_bundle_reduced(f)?;
        let d = decide_untwisted(&r, cc, kind);
        (d.status != Status::Unknown).then(|| {
            Certificate::new(
                Rule::LineBundleReduction {
                    u: *f,
                    inner: d.certificates,
                },
                d.status,
            )
        })
    };
    let product = |f: &UniversalProblem| search_product(f, cc, kind);
    let kernel = |f: &UniversalProblem| search_kernel(f, cc, kind);
    let twisted = |f: &UniversalProblem| search_twisted(f, kind);

    let strategies: [&Strategy; 5] =
        [&trivial, &reduction, &product, &kernel, &twisted];
    let mut certs: Vec<Certificate> = Vec::new();
    for s in strategies {
        if let Some(c) = attempt(s) {
            if certs.first().is_none_or(|f| f.verdict == c.verdict) {
                certs.push(c);
            }
        }
    }
    Decision::from_certificates(certs, beta)
}
