//! Writes the BN map for a genus (default 10) as SVG and CSV into the
//! current directory.

use bnloci::numbers::Genus;
use bnloci::plot::{render_csv, render_svg, stable_exclusion_markers};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gv: i64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(10);
    let g = Genus::new(gv)?;
    let svg = format!("bn_map_g{gv}.svg");
    let csv = format!("bn_map_g{gv}.csv");
    std::fs::write(&svg, render_svg(g, 8)?)?;
    std::fs::write(&csv, render_csv(g, 8)?)?;
    println!("wrote {svg} and {csv}; {} stable exclusion runs", stable_exclusion_markers(g).len());
    Ok(())
}
