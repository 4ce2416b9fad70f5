use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{ceil_i64, fmt_rat, int, rat, Affine, Quadratic};
use crate::numbers::{beta_universal, BNProblem, Genus, UniversalProblem};
use crate::oracle::{
    decide_untwisted, kernel_premises, problem_json, universal_json, Certificate, CurveClass, Decision, Rule, Status,
};
use crate::regions::StabilityKind;

/// Upper bound on `k` for which the kernel construction over `B(n1, d1, k1)`
/// with generators of rank `n`, degree `d` yields `h0(E1 ⊗ E2) >= k`.
pub fn kernel_k_max(g: Genus, n1: i64, d1: i64, k1: i64, n: i64, d: i64) -> Result<i64> {
    if n < 1 {
        return Err(Error::TooSmall { what: "n", min: 1, got: n });
    }
    let gm1 = g.get() - 1;
    if d <= n * gm1 {
        return Err(Error::precondition(format!("d = {d} > n(g-1) = {}", n * gm1)));
    }
    Ok((d - n * gm1) * (k1 - n1) - n * d1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelWitness {
    pub base: BNProblem,
    pub base_decision: Decision,
    pub n: i64,
    pub d: i64,
    /// `(d - ng, -d)`.
    pub n2: i64,
    pub d2: i64,
    pub k_max: i64,
    pub k: i64,
    pub universal: UniversalProblem,
    pub beta_universal: i64,
    pub cc: CurveClass,
    pub kind: StabilityKind,
}

impl KernelWitness {
    pub fn certificate(&self) -> Certificate {
        Certificate::new(
            Rule::KernelBundle {
                base: self.base,
                n: self.n,
                d: self.d,
                k: self.k,
                cc: self.cc,
                kind: self.kind,
                base_certs: self.base_decision.certificates.clone(),
            },
            Status::Nonempty,
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": "nonempty",
            "base": problem_json(&self.base),
            "n": self.n,
            "d": self.d,
            "k_max": self.k_max,
            "universal": universal_json(&self.universal),
            "beta_universal": self.beta_universal,
            "certificates": [self.certificate().to_json()],
        })
    }
}

/// Kernel-bundle construction: pairs `(E1, E2)` with `E2` of type
/// `(d - ng, -d)` and `h0(E1 ⊗ E2) >= k`, built from `E1 ∈ B(base)`.
pub fn kernel_construct(
    base: &BNProblem,
    n: i64,
    d: i64,
    k: i64,
    cc: CurveClass,
    kind: StabilityKind,
) -> Result<KernelWitness> {
    if let Some(bad) = kernel_premises(base, n, d, k, cc, kind).into_iter().find(|p| !p.holds) {
        return Err(Error::precondition(bad.inequality));
    }
    let base_decision = decide_untwisted(base, cc, kind);
    if !base_decision.is_nonempty_this_rank() {
        return Err(Error::precondition(format!(
            "base B({}, {}, {}) is not certified nonempty at this rank (status {})",
            base.n,
            base.d,
            base.k,
            base_decision.status.tag()
        )));
    }
    let g = base.g;
    let universal = UniversalProblem {
        g,
        n1: base.n,
        d1: base.d,
        n2: d - n * g.get(),
        d2: -d,
        k,
    };
    Ok(KernelWitness {
        base: *base,
        base_decision,
        n,
        d,
        n2: universal.n2,
        d2: universal.d2,
        k_max: kernel_k_max(g, base.n, base.d, base.k, n, d)?,
        k,
        beta_universal: beta_universal(&universal),
        universal,
        cc,
        kind,
    })
}

/// `beta^k` of the kernel family with `k = d (k1 - n1) - e`, as a polynomial
/// in `d`.
pub fn kernel_beta_quadratic(g: Genus, n1: i64, d1: i64, k1: i64, n: i64, e: i64) -> Quadratic {
    let gv = g.get();
    let gm1 = int(gv - 1);
    let n2 = Affine::new(int(1), int(-n * gv));
    let k = Affine::new(int(k1 - n1), int(-e));
    // chi = n2 d1 + n1 (-d) - n1 n2 (g-1)
    let chi = Affine::new(
        int(d1) - int(n1) - int(n1) * &gm1,
        int(-n * gv * d1) + int(n1 * n * gv) * &gm1,
    );
    let k_minus_chi = Affine::new(&k.slope - &chi.slope, &k.intercept - &chi.intercept);
    let fixed = Quadratic::constant(int(n1 * n1) * &gm1 + int(2));
    let moduli2 = &n2.mul(&n2) * &gm1;
    &(&fixed + &moduli2) - &k.mul(&k_minus_chi)
}

/// Smallest `d` at which the kernel family reaches negative expected
/// dimension, with that value.
pub fn kernel_negativity_min_d(
    g: Genus,
    n1: i64,
    d1: i64,
    k1: i64,
    n: i64,
    e: i64,
    cc: CurveClass,
) -> Result<(i64, i64)> {
    let gv = g.get();
    if k1 <= n1 {
        return Err(Error::precondition(format!("k1 = {k1} > n1 = {n1}")));
    }
    if n < 1 {
        return Err(Error::TooSmall { what: "n", min: 1, got: n });
    }
    let e_min = n * (gv - 1) * (k1 - n1) + n * d1;
    if e < e_min {
        return Err(Error::precondition(format!("e = {e} >= n(g-1)(k1-n1) + n d1 = {e_min}")));
    }
    let d1_bound = int(k1 + n1 * (gv - 1)) - rat(gv - 1, k1 - n1);
    if int(d1) >= d1_bound {
        return Err(Error::precondition(format!(
            "d1 = {d1} < k1 + n1(g-1) - (g-1)/(k1-n1) = {}",
            fmt_rat(&d1_bound)
        )));
    }
    let q = kernel_beta_quadratic(g, n1, d1, k1, n, e);
    if !q.a.is_negative() {
        return Err(Error::precondition(format!(
            "expected dimension is never negative: leading coefficient {} >= 0",
            fmt_rat(&q.a)
        )));
    }
    let d_floor = if cc.is_non_hyperelliptic(g) { 2 * n * gv } else { 2 * n * gv + 1 };
    let k_positive = e.div_euclid(k1 - n1) + 1;
    let start = d_floor.max(k_positive);
    let bound = q.root_bound().map(|r| ceil_i64(&r) + 1).unwrap_or(start);
    for d in start..=start.max(bound) {
        let b = q.eval(&int(d));
        if b.is_negative() {
            let b = b.to_integer().to_i64().expect("integer polynomial value fits i64");
            return Ok((d, b));
        }
    }
    unreachable!("a concave quadratic is negative beyond its root bound")
}

/// Degrees `d1` (not divisible by `n1`) in the window where the kernel
/// construction over `B(n1, d1, k1)` gives negative expected dimension.
pub fn c6_enumerate(g: Genus, n1: i64, k1: i64) -> Result<Vec<i64>> {
    let gv = g.get();
    if gv < 3 {
        return Err(Error::TooSmall { what: "genus", min: 3, got: gv });
    }
    if n1 < 2 {
        return Err(Error::TooSmall { what: "n1", min: 2, got: n1 });
    }
    if k1 <= n1 || k1 > n1 * (gv - 1) {
        return Err(Error::OutOfDomain {
            what: "k1",
            value: k1.to_string(),
            window: format!("({n1}, {}]", n1 * (gv - 1)),
        });
    }
    let s = (k1 + n1 - 1) / n1;
    let lo = k1 + n1 * (gv - 1) - n1 * ((gv - 1) / s);
    let hi = int(k1 + n1 * (gv - 1)) - rat(gv - 1, k1 - n1);
    // d1 < hi
    let last = ceil_i64(&hi) - 1;
    Ok((lo..=last).filter(|d1| d1 % n1 != 0).collect())
}
