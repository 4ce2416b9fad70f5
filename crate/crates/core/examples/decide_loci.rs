//! Certified decisions for untwisted and universal twisted loci.

use bnloci::numbers::{BNProblem, Genus, UniversalProblem};
use bnloci::oracle::{decide_universal, decide_untwisted, CurveClass};
use bnloci::regions::StabilityKind;

fn main() -> Result<(), bnloci::error::Error> {
    let stable = StabilityKind::Stable;
    let cases = [
        (3, 2, 6, 4, CurveClass::AnySmooth),
        (5, 4, 8, 5, CurveClass::NonHyperelliptic),
        (4, 2, 4, 3, CurveClass::Hyperelliptic),
        (4, 2, 11, 6, CurveClass::AnySmooth),
        (5, 3, 3, 2, CurveClass::Petri),
    ];
    for (g, n, d, k, cc) in cases {
        let p = BNProblem::new(Genus::new(g)?, n, d, k)?;
        let dec = decide_untwisted(&p, cc, stable);
        let rules: Vec<_> = dec.certificates.iter().map(|c| c.name()).collect();
        println!("{p} on {cc}: {} (beta {}) via {rules:?}, verifies: {}", dec.status.tag(), dec.beta, dec.verify());
    }

    let u = UniversalProblem::new(Genus::new(4)?, 2, 11, 7, -11, 21)?;
    let dec = decide_universal(&u, CurveClass::AnySmooth, stable);
    let rules: Vec<_> = dec.certificates.iter().map(|c| c.name()).collect();
    println!("{u}: {} (beta^k {}) via {rules:?}", dec.status.tag(), dec.beta);
    Ok(())
}
