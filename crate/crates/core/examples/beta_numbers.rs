//! chi and the four BN numbers, with Serre duality and line-bundle shifts.

use bnloci::numbers::{beta_tensor_product, beta_twisted_locus, beta_universal, chi, serre_dual_problem, BNProblem, Genus, UniversalProblem};

fn main() -> Result<(), bnloci::error::Error> {
    let g = Genus::new(6)?;
    let p = BNProblem::new(g, 2, 3, 2)?;
    let dual = serre_dual_problem(&p);
    println!("{p}: beta = {}, Serre dual {dual}: beta = {}", p.beta(), dual.beta());

    let u = UniversalProblem::new(g, 2, 3, 2, 3, 4)?;
    println!("{u}: chi = {}, beta^k = {}, tensor beta = {}", chi(&u), beta_universal(&u), beta_tensor_product(&u));
    println!("twisted locus beta = {}", beta_twisted_locus(g, 2, 3, 4, 2, 3));

    for shift in -2..=2 {
        let v = u.shifted(shift);
        println!("  shift {shift:+}: {v} chi = {} beta^k = {}", chi(&v), beta_universal(&v));
    }
    Ok(())
}
