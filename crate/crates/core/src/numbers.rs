//! Expected-dimension calculus: Euler characteristics, BN numbers and the
//! duality/twist normalizations that leave them unchanged.
//!
//! Integer inputs give integer outputs. The normalized density forms used by
//! the product construction live in [`crate::construct`].

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{int, Rational};

/// Genus of a smooth projective curve, at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Genus(i64);

impl Genus {
    pub fn new(g: i64) -> Result<Self> {
        if g < 2 {
            return Err(Error::InvalidGenus(g));
        }
        Ok(Genus(g))
    }

    pub fn get(self) -> i64 {
        self.0
    }

    /// Dimension of the moduli space of stable bundles of rank `n`.
    pub fn moduli_dim(self, n: i64) -> i64 {
        n * n * (self.0 - 1) + 1
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The standard locus `B(n, d, k)`: stable bundles of rank `n`, degree `d`
/// with at least `k` independent sections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BNProblem {
    pub g: Genus,
    pub n: i64,
    pub d: i64,
    pub k: i64,
}

impl BNProblem {
    pub fn new(g: Genus, n: i64, d: i64, k: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::TooSmall { what: "rank", min: 1, got: n });
        }
        Ok(BNProblem { g, n, d, k })
    }

    /// `(d/n, k/n)`.
    pub fn slope_point(&self) -> SlopePoint {
        SlopePoint::new(Rational::new(self.d.into(), self.n.into()), Rational::new(self.k.into(), self.n.into()))
    }

    pub fn beta(&self) -> i64 {
        beta_untwisted(self)
    }
}

impl fmt::Display for BNProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({},{},{}) on g={}", self.n, self.d, self.k, self.g)
    }
}

/// The universal twisted locus: pairs `(E1, E2)` of stable bundles of types
/// `(n1, d1)` and `(n2, d2)` with `h0(E1 ⊗ E2) >= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UniversalProblem {
    pub g: Genus,
    pub n1: i64,
    pub d1: i64,
    pub n2: i64,
    pub d2: i64,
    pub k: i64,
}

impl UniversalProblem {
    pub fn new(g: Genus, n1: i64, d1: i64, n2: i64, d2: i64, k: i64) -> Result<Self> {
        for (what, n) in [("first rank", n1), ("second rank", n2)] {
            if n < 1 {
                return Err(Error::TooSmall { what, min: 1, got: n });
            }
        }
        Ok(UniversalProblem { g, n1, d1, n2, d2, k })
    }

    /// With `k <= 0` the locus is the whole product of moduli spaces.
    pub fn locus_is_everything(&self) -> bool {
        self.k <= 0
    }

    pub fn swapped(&self) -> UniversalProblem {
        UniversalProblem { n1: self.n2, d1: self.d2, n2: self.n1, d2: self.d1, ..*self }
    }

    /// `(E1, E2) -> (E1*, E2* ⊗ K)`, with `k` replaced by `k - chi`.
    pub fn serre_dual(&self) -> UniversalProblem {
        let g = self.g.get();
        UniversalProblem {
            d1: -self.d1,
            d2: self.n2 * (2 * g - 2) - self.d2,
            k: self.k - chi(self),
            ..*self
        }
    }

    /// Twist the first factor by `L*` and the second by `L`, `deg L = shift`.
    pub fn shifted(&self, shift: i64) -> UniversalProblem {
        UniversalProblem {
            d1: self.d1 - self.n1 * shift,
            d2: self.d2 + self.n2 * shift,
            ..*self
        }
    }
}

impl fmt::Display for UniversalProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "B^{}(U({},{}), U({},{})) on g={}",
            self.k, self.n1, self.d1, self.n2, self.d2, self.g
        )
    }
}

/// A point `(mu, lambda)` of the BN map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlopePoint {
    pub mu: Rational,
    pub lambda: Rational,
}

impl SlopePoint {
    pub fn new(mu: Rational, lambda: Rational) -> Self {
        SlopePoint { mu, lambda }
    }
}

impl fmt::Display for SlopePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.mu, self.lambda)
    }
}

/// `chi(E1 ⊗ E2) = n2 d1 + n1 d2 - n1 n2 (g-1)`.
pub fn chi(p: &UniversalProblem) -> i64 {
    p.n2 * p.d1 + p.n1 * p.d2 - p.n1 * p.n2 * (p.g.get() - 1)
}

pub fn beta_untwisted(p: &BNProblem) -> i64 {
    let g = p.g.get();
    p.n * p.n * (g - 1) + 1 - p.k * (p.k - p.d + p.n * (g - 1))
}

/// BN number of the twisted locus `B(n1, d1, k)(E2)` for `E2` of type
/// `(n2, d2)`.
pub fn beta_twisted_locus(g: Genus, n1: i64, d1: i64, k: i64, n2: i64, d2: i64) -> i64 {
    let c = n2 * d1 + n1 * d2 - n1 * n2 * (g.get() - 1);
    g.moduli_dim(n1) - k * (k - c)
}

/// `dim M1 + dim M2 - k(k - chi)`.
pub fn beta_universal(p: &UniversalProblem) -> i64 {
    (p.n1 * p.n1 + p.n2 * p.n2) * (p.g.get() - 1) + 2 - p.k * (p.k - chi(p))
}

/// BN number of `B(n1 n2, n2 d1 + n1 d2, k)`, the locus holding the tensor
/// products.
pub fn beta_tensor_product(p: &UniversalProblem) -> i64 {
    let n = p.n1 * p.n2;
    n * n * (p.g.get() - 1) + 1 - p.k * (p.k - chi(p))
}

pub fn serre_dual_problem(p: &BNProblem) -> BNProblem {
    let g = p.g.get();
    BNProblem {
        d: 2 * p.n * (g - 1) - p.d,
        k: p.k - p.d + p.n * (g - 1),
        ..*p
    }
}

/// `(mu, lambda) -> (2g-2-mu, lambda-mu+g-1)`.
pub fn serre_dual_point(g: Genus, p: &SlopePoint) -> SlopePoint {
    let gm1 = int(g.get() - 1);
    SlopePoint {
        mu: int(2) * &gm1 - &p.mu,
        lambda: &p.lambda - &p.mu + gm1,
    }
}

/// `lambda - mu/2 - 1`: non-positive exactly on the Clifford side.
pub fn clifford_excess(p: &SlopePoint) -> Rational {
    &p.lambda - &p.mu / int(2) - Rational::one()
}

/// `lambda(lambda - mu + g - 1) - (g - 1)`: zero on the BN curve, where the
/// normalized BN number equals one.
pub fn bn_curve_excess(g: Genus, p: &SlopePoint) -> Rational {
    let gm1 = int(g.get() - 1);
    &p.lambda * (&p.lambda - &p.mu + &gm1) - gm1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn g(v: i64) -> Genus {
        Genus::new(v).unwrap()
    }

    fn up(gv: i64, n1: i64, d1: i64, n2: i64, d2: i64, k: i64) -> UniversalProblem {
        UniversalProblem::new(g(gv), n1, d1, n2, d2, k).unwrap()
    }

    fn bp(gv: i64, n: i64, d: i64, k: i64) -> BNProblem {
        BNProblem::new(g(gv), n, d, k).unwrap()
    }

    #[test]
    fn genus_and_rank_validation() {
        assert_eq!(Genus::new(1), Err(Error::InvalidGenus(1)));
        assert!(BNProblem::new(g(2), 0, 1, 1).is_err());
        assert!(UniversalProblem::new(g(2), 1, 0, 0, 0, 1).is_err());
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi(&up(6, 2, 3, 2, 3, 0)), -8);
        assert_eq!(chi(&up(2, 1, 1, 1, 0, 0)), 0);
        assert_eq!(chi(&up(4, 2, 11, 7, -11, 0)), 13);
        // (d - ng)(d1 - n1 g) - n n1 g at n = 1, d = 11
        assert_eq!((11 - 4) * (11 - 2 * 4) - 2 * 4, 13);
    }

    #[test]
    fn untwisted_examples() {
        for gv in 2..30 {
            assert_eq!(beta_untwisted(&bp(gv, 1, 2 * gv - 2, gv)), 0);
        }
        assert_eq!(beta_untwisted(&bp(4, 2, 11, 6)), 7);
        assert_eq!(beta_untwisted(&bp(3, 2, 6, 4)), 1);
    }

    #[test]
    fn twisted_examples() {
        for (gv, n1, d1, k) in [(2, 2, 3, 2), (5, 3, 9, 3), (10, 4, -3, 7)] {
            assert_eq!(
                beta_twisted_locus(g(gv), n1, d1, k, 1, 0),
                beta_untwisted(&bp(gv, n1, d1, k))
            );
        }
        assert_eq!(beta_twisted_locus(g(2), 2, 3, 2, 2, 0), 5);
        let b1 = beta_twisted_locus(g(5), 1, 3, 1, 2, 0);
        assert_eq!(b1, 2);
        assert_eq!(beta_twisted_locus(g(5), 3, 9, 3, 2, 0), 10);
        assert_eq!(10, 9 * (b1 - 1) + 1);
    }

    #[test]
    fn universal_and_tensor_examples() {
        assert_eq!(beta_universal(&up(6, 2, 3, 2, 3, 4)), -6);
        assert_eq!(beta_universal(&up(4, 2, 11, 7, -11, 21)), -7);
        assert_eq!(-11 * 11 + 11 * 11 - 7, -7);
        let p = up(9, 3, 5, 4, -2, 0);
        assert_eq!(beta_universal(&p), (9 + 16) * 8 + 2);
        assert!(p.locus_is_everything());

        assert_eq!(beta_tensor_product(&up(6, 2, 3, 2, 3, 4)), 33);
        assert_eq!(chi(&up(5, 6, 11, 7, 12, 0)), -19);
        assert_eq!(beta_tensor_product(&up(5, 6, 11, 7, 12, 56)), 2857);
        assert_eq!(
            beta_tensor_product(&up(7, 3, 4, 1, 0, 5)),
            beta_untwisted(&bp(7, 3, 4, 5))
        );
    }

    #[test]
    fn serre_dual_problem_examples() {
        let p = bp(8, 1, 14, 8);
        assert_eq!(serre_dual_problem(&p), bp(8, 1, 0, 1));
        assert_eq!(serre_dual_problem(&serre_dual_problem(&p)), p);
        let q = serre_dual_problem(&bp(10, 2, 6, 2));
        assert_eq!((q.n, q.d, q.k), (2, 30, 14));
    }

    #[test]
    fn serre_dual_point_examples() {
        let gg = g(7);
        let mid = SlopePoint::new(int(6), rat(5, 3));
        assert_eq!(serre_dual_point(gg, &mid), mid);
        let p = SlopePoint::new(rat(3, 4), rat(1, 5));
        assert_eq!(serre_dual_point(gg, &serre_dual_point(gg, &p)), p);
        assert_eq!(
            serre_dual_point(g(10), &SlopePoint::new(int(6), rat(6, 5))),
            SlopePoint::new(int(12), rat(21, 5))
        );
    }

    #[test]
    fn clifford_and_bn_curve_examples() {
        assert_eq!(clifford_excess(&SlopePoint::new(int(0), int(1))), int(0));
        assert_eq!(clifford_excess(&SlopePoint::new(int(18), int(10))), int(0));
        assert_eq!(clifford_excess(&SlopePoint::new(int(3), rat(441, 400))), rat(-559, 400));

        for gv in 2..20 {
            let gg = g(gv);
            assert_eq!(bn_curve_excess(gg, &SlopePoint::new(int(1), int(1))), int(0));
            assert_eq!(bn_curve_excess(gg, &SlopePoint::new(int(0), int(0))), int(1 - gv));
            assert_eq!(bn_curve_excess(gg, &SlopePoint::new(int(2 * gv - 2), int(gv))), int(1));
        }
    }

    #[test]
    fn density_point_of_problem() {
        let p = bp(4, 4, 6, 2);
        assert_eq!(p.slope_point(), SlopePoint::new(rat(3, 2), rat(1, 2)));
    }
}
