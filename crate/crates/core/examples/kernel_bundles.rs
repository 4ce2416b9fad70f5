//! Kernel-bundle construction: sections bound, the quadratic in d, and the
//! degree windows where it beats the expected dimension.

use bnloci::construct::{c6_enumerate, kernel_beta_quadratic, kernel_construct, kernel_negativity_min_d};
use bnloci::numbers::{BNProblem, Genus};
use bnloci::oracle::CurveClass;
use bnloci::regions::StabilityKind;

fn main() -> Result<(), bnloci::error::Error> {
    let g = Genus::new(4)?;
    let base = BNProblem::new(g, 2, 11, 6)?;
    let w = kernel_construct(&base, 1, 11, 21, CurveClass::AnySmooth, StabilityKind::Stable)?;
    println!("{}: k_max {} beta^k {}", w.universal, w.k_max, w.beta_universal);

    println!("beta^k(d) = {}", kernel_beta_quadratic(g, 2, 11, 6, 1, 23));
    let (d, beta) = kernel_negativity_min_d(g, 2, 11, 6, 1, 23, CurveClass::AnySmooth)?;
    println!("first negative degree d = {d}, beta^k = {beta}");

    let g3 = Genus::new(3)?;
    for n1 in 3..=6 {
        println!("g=3 n1={n1} k1={}: d1 in {:?}", n1 + 2, c6_enumerate(g3, n1, n1 + 2)?);
    }
    match kernel_construct(&base, 1, 8, 5, CurveClass::AnySmooth, StabilityKind::Stable) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("d = 8 rejected: {e}"),
    }
    Ok(())
}
