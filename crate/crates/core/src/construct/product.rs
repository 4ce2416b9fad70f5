use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, int, Rational};
use crate::numbers::{beta_tensor_product, beta_universal, BNProblem, Genus, UniversalProblem};
use crate::oracle::{
    decide_untwisted, problem_json, product_window_premises, universal_json, Certificate, CurveClass, Decision, Rule,
    Status,
};
use crate::regions::StabilityKind;

/// `B^{k1 k2}(U1, U2)` is non-empty because `E1 ⊗ E2` has enough sections
/// for suitable `E1 ∈ B(p1)`, `E2 ∈ B(p2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductWitness {
    pub g: Genus,
    pub p1: BNProblem,
    pub p2: BNProblem,
    pub cc: CurveClass,
    pub kind: StabilityKind,
    pub factor1: Decision,
    pub factor2: Decision,
    pub k: i64,
    pub universal: UniversalProblem,
    pub beta_universal: i64,
    /// The locus `B(n1 n2, n2 d1 + n1 d2, k1 k2)` that the tensor product
    /// lands in (semistable form).
    pub tensor: BNProblem,
    pub beta_tensor: i64,
}

impl ProductWitness {
    pub fn certificate(&self) -> Certificate {
        Certificate::new(
            Rule::TensorProduct {
                g: self.g,
                p1: self.p1,
                p2: self.p2,
                k: self.k,
                cc: self.cc,
                kind: self.kind,
                factor1: self.factor1.certificates.clone(),
                factor2: self.factor2.certificates.clone(),
            },
            Status::Nonempty,
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": "nonempty",
            "universal": universal_json(&self.universal),
            "k": self.k,
            "beta_universal": self.beta_universal,
            "tensor": problem_json(&self.tensor),
            "beta_tensor": self.beta_tensor,
            "certificates": [self.certificate().to_json()],
        })
    }
}

/// Tensor-product construction for `p1` of slope below two and `p2` of
/// slope at most `2g`.
pub fn product_construct(
    g: Genus,
    p1: &BNProblem,
    p2: &BNProblem,
    cc: CurveClass,
    kind: StabilityKind,
) -> Result<ProductWitness> {
    if let Some(bad) = product_window_premises(g, p1, p2, cc).into_iter().find(|p| !p.holds) {
        return Err(Error::precondition(bad.inequality));
    }
    let factor1 = decide_untwisted(p1, cc, kind);
    let factor2 = decide_untwisted(p2, cc, kind);
    for (p, d) in [(p1, &factor1), (p2, &factor2)] {
        if !d.is_nonempty_this_rank() {
            return Err(Error::precondition(format!(
                "B({}, {}, {}) is not certified nonempty at this rank (status {})",
                p.n,
                p.d,
                p.k,
                d.status.tag()
            )));
        }
    }
    let k = p1.k * p2.k;
    let universal = UniversalProblem {
        g,
        n1: p1.n,
        d1: p1.d,
        n2: p2.n,
        d2: p2.d,
        k,
    };
    let tensor = BNProblem {
        g,
        n: p1.n * p2.n,
        d: p2.n * p1.d + p1.n * p2.d,
        k,
    };
    Ok(ProductWitness {
        g,
        p1: *p1,
        p2: *p2,
        cc,
        kind,
        factor1,
        factor2,
        k,
        universal,
        beta_universal: beta_universal(&universal),
        tensor,
        beta_tensor: beta_tensor_product(&universal),
    })
}

/// `beta^k / (n1 n2)^2` written through slopes, with `k = k1 k2`.
pub fn beta_product_normalized(
    g: Genus,
    mu1: &Rational,
    lambda1: &Rational,
    mu2: &Rational,
    lambda2: &Rational,
    n1: i64,
    n2: i64,
) -> Rational {
    let gm1 = int(g.get() - 1);
    let lam = lambda1 * lambda2;
    (Rational::new(1.into(), (n2 * n2).into()) + Rational::new(1.into(), (n1 * n1).into())) * &gm1
        + Rational::new(2.into(), (n1 * n1 * n2 * n2).into())
        - &lam * (&lam - (mu1 + mu2) + &gm1)
}

/// `beta(n1 n2, n2 d1 + n1 d2, k1 k2) / (n1 n2)^2` written through slopes.
pub fn beta_tensor_normalized(
    g: Genus,
    mu1: &Rational,
    lambda1: &Rational,
    mu2: &Rational,
    lambda2: &Rational,
    n1: i64,
    n2: i64,
) -> Rational {
    let gm1 = int(g.get() - 1);
    let lam = lambda1 * lambda2;
    &gm1 + Rational::new(1.into(), (n1 * n1 * n2 * n2).into()) - &lam * (&lam - (mu1 + mu2) + &gm1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativitySearch {
    /// `mu1 + mu2 < lambda1 lambda2 + g - 1`.
    pub criterion_holds: bool,
    /// Smallest admissible ranks (by `max(n1, n2)`, then `n1`) with
    /// negative `beta^k`.
    pub ranks: Option<(i64, i64)>,
    pub beta: Option<i64>,
}

impl NegativitySearch {
    pub fn to_json(&self) -> Value {
        json!({
            "criterion_holds": self.criterion_holds,
            "ranks": self.ranks.map(|(a, b)| vec![a, b]),
            "beta": self.beta,
        })
    }
}

fn rank_step(mu: &Rational, lambda: &Rational) -> Result<i64> {
    mu.denom()
        .lcm(lambda.denom())
        .to_i64()
        .ok_or_else(|| Error::precondition("slope denominators too large"))
}

const MAX_RANK: i64 = 100_000;

/// Smallest ranks at fixed slopes for which the product locus has negative
/// expected dimension. Requires the four inputs to be positive.
pub fn product_negativity_search(
    g: Genus,
    mu1: &Rational,
    lambda1: &Rational,
    mu2: &Rational,
    lambda2: &Rational,
) -> Result<NegativitySearch> {
    for (name, x) in [("mu1", mu1), ("lambda1", lambda1), ("mu2", mu2), ("lambda2", lambda2)] {
        if !x.is_positive() {
            return Err(Error::precondition(format!("{name} = {} > 0", fmt_rat(x))));
        }
    }
    let criterion_holds = mu1 + mu2 < lambda1 * lambda2 + int(g.get() - 1);
    if !criterion_holds {
        return Ok(NegativitySearch {
            criterion_holds,
            ranks: None,
            beta: None,
        });
    }
    let (s1, s2) = (rank_step(mu1, lambda1)?, rank_step(mu2, lambda2)?);
    let first = |s: i64| if s >= 2 { s } else { 2 };
    let beta_at = |n1: i64, n2: i64| {
        let at = |x: &Rational, n: i64| (x * int(n)).to_integer().to_i64().expect("rank-scaled slope fits i64");
        let u = UniversalProblem {
            g,
            n1,
            d1: at(mu1, n1),
            n2,
            d2: at(mu2, n2),
            k: at(lambda1, n1) * at(lambda2, n2),
        };
        beta_universal(&u)
    };
    let on_grid = |n: i64, s: i64| n >= first(s) && n % s == 0;
    let mut m = first(s1).min(first(s2));
    while m <= MAX_RANK {
        // pairs with max(n1, n2) = m, ordered by n1
        let mut pairs = Vec::new();
        if on_grid(m, s1) {
            pairs.extend((first(s2)..=m).filter(|&n2| on_grid(n2, s2)).map(|n2| (m, n2)));
        }
        if on_grid(m, s2) {
            pairs.extend((first(s1)..m).filter(|&n1| on_grid(n1, s1)).map(|n1| (n1, m)));
        }
        pairs.sort();
        for (n1, n2) in pairs {
            let b = beta_at(n1, n2);
            if b < 0 {
                return Ok(NegativitySearch {
                    criterion_holds,
                    ranks: Some((n1, n2)),
                    beta: Some(b),
                });
            }
        }
        m += 1;
    }
    Err(Error::precondition(format!("no negative rank pair with max rank <= {MAX_RANK}")))
}
