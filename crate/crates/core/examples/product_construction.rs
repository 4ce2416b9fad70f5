//! Tensor products of small-slope bundles: the genus threshold for negative
//! expected dimension, and the rank search at fixed slopes.

use bnloci::construct::{product_construct, product_negativity_search};
use bnloci::exact::{int, rat};
use bnloci::numbers::{BNProblem, Genus};
use bnloci::oracle::CurveClass;
use bnloci::regions::StabilityKind;

fn main() -> Result<(), bnloci::error::Error> {
    for gv in 2..=8 {
        let g = Genus::new(gv)?;
        let p = BNProblem::new(g, 2, 3, 2)?;
        let w = product_construct(g, &p, &p, CurveClass::AnySmooth, StabilityKind::Stable)?;
        println!("g={gv}: {} beta^k = {} tensor beta = {}", w.universal, w.beta_universal, w.beta_tensor);
    }

    let s = product_negativity_search(Genus::new(2)?, &rat(1, 2), &rat(3, 4), &rat(1, 2), &rat(3, 4))?;
    println!("g=2 slopes (1/2, 3/4)^2: criterion {} ranks {:?} beta {:?}", s.criterion_holds, s.ranks, s.beta);
    let s = product_negativity_search(Genus::new(6)?, &rat(3, 2), &int(1), &rat(3, 2), &int(1))?;
    println!("g=6 slopes (3/2, 1)^2: ranks {:?} beta {:?}", s.ranks, s.beta);
    Ok(())
}
