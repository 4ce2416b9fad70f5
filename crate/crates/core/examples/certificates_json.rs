//! Decisions as JSON, and re-checking their certificates from the stored
//! parameters alone.

use bnloci::numbers::{BNProblem, Genus};
use bnloci::oracle::{decide_untwisted, CurveClass};
use bnloci::regions::StabilityKind;

fn main() -> Result<(), bnloci::error::Error> {
    let p = BNProblem::new(Genus::new(4)?, 2, 11, 6)?;
    let dec = decide_untwisted(&p, CurveClass::AnySmooth, StabilityKind::Stable);
    println!("{}", serde_json::to_string_pretty(&dec.to_json()).expect("serializable"));
    for c in &dec.certificates {
        println!("{}: subject {}, scope {}", c.name(), c.subject(), c.scope().tag());
        for prem in c.premises() {
            println!("  [{}] {}", if prem.holds { "x" } else { " " }, prem.inequality);
        }
        println!("  verifies: {}", c.verify());
    }
    Ok(())
}
