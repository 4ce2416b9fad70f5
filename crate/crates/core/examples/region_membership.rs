//! t_g and f_g as exact piecewise functions, and membership in T and BMNO.

use bnloci::exact::{fmt_rat, int, rat};
use bnloci::numbers::Genus;
use bnloci::regions::{eta_hat, eta_hat_prime, membership_bmno, membership_t, BnMap, StabilityKind};

fn main() -> Result<(), bnloci::error::Error> {
    let g = Genus::new(10)?;
    let map = BnMap::for_genus(g);
    println!("t_10 = {}", map.t().simplified());
    println!("f_10 = {}", map.f().simplified());
    for s in 1..=4 {
        println!("s = {s}: eta' = {}, eta = {}", eta_hat_prime(g, s)?, eta_hat(g, s)?);
    }

    for (mu, lambda) in [(int(3), int(1)), (int(3), rat(11, 10)), (int(3), rat(441, 400)), (int(4), rat(3, 2))] {
        let t = membership_t(g, &mu, &lambda, StabilityKind::Stable);
        let b = membership_bmno(g, &mu, &lambda, StabilityKind::Stable);
        println!(
            "({}, {}): T inside={} boundary={}  BMNO inside={} boundary={} excluded={:?}",
            fmt_rat(&mu),
            fmt_rat(&lambda),
            t.inside,
            t.on_boundary,
            b.inside,
            b.on_boundary,
            b.exclusion_reason.map(|r| r.tag())
        );
    }
    Ok(())
}
