//! The product region: exact top boundary and points outside T and BMNO.

use bnloci::construct::{bpn_boundary, bpn_new_points};
use bnloci::exact::{fmt_rat, int, rat};
use bnloci::numbers::Genus;

fn main() -> Result<(), bnloci::error::Error> {
    let g = Genus::new(10)?;
    for mu in [rat(17, 8), rat(5, 2), int(3), rat(7, 2)] {
        let q = bpn_boundary(g, &mu)?;
        let (m1, m2, l1, l2) = &q.decomposition;
        println!(
            "mu = {}: boundary {} ({}, attained {}) from ({}, {}) x ({}, {})",
            fmt_rat(&mu),
            fmt_rat(&q.boundary),
            q.branch.tag(),
            q.attained,
            fmt_rat(m1),
            fmt_rat(l1),
            fmt_rat(m2),
            fmt_rat(l2)
        );
    }
    for gv in 5..=8 {
        let pts = bpn_new_points(Genus::new(gv)?, &rat(1, 4))?;
        let best = pts.iter().max_by(|a, b| a.margin_over_bmno.cmp(&b.margin_over_bmno));
        println!(
            "g={gv}: {} new slopes; widest at {:?}",
            pts.len(),
            best.map(|p| (fmt_rat(&p.mu), fmt_rat(&p.lambda)))
        );
    }
    Ok(())
}
