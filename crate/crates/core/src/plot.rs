//! Drawing the BN map: boundary polylines of T, BMNO and the product
//! region, the Clifford line, the BN curve and the points excluded for
//! stable bundles, rendered as CSV or standalone SVG.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::construct::bpn_boundary;
use crate::error::{Error, Result};
use crate::exact::{fmt_rat, int, rat, to_f64, Rational};
use crate::numbers::{serre_dual_point, Genus, SlopePoint};
use crate::regions::{eta_hat, eta_hat_prime, membership_t, region_polyline, BnMap, ExclusionReason, PlotPoint, Region, StabilityKind};

/// A vertical run `mu = const`, `lambda` in `(lo, hi]` (or `[lo, hi]` when
/// `lo_open` is false), excluded for stable bundles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExclusionMarker {
    pub mu: Rational,
    pub lambda_lo: Rational,
    pub lambda_hi: Rational,
    pub lo_open: bool,
    pub reason: ExclusionReason,
}

/// Exact top boundary of the product region sampled at `1/samples_per_unit`.
pub fn bpn_polyline(g: Genus, samples_per_unit: i64) -> Result<Vec<PlotPoint>> {
    if samples_per_unit < 1 {
        return Err(Error::TooSmall { what: "samples_per_unit", min: 1, got: samples_per_unit });
    }
    (0..=(2 * g.get() - 2) * samples_per_unit)
        .map(|j| {
            let mu = rat(j, samples_per_unit);
            bpn_boundary(g, &mu).map(|q| PlotPoint::exact(mu, q.boundary))
        })
        .collect()
}

/// Stable-bundle exclusions inside T and BMNO, as vertical runs.
pub fn stable_exclusion_markers(g: Genus) -> Vec<ExclusionMarker> {
    let map = BnMap::for_genus(g);
    let gv = g.get();
    let top = 2 * gv - 2;
    let mut out = Vec::new();

    for s in 1..=gv {
        let m = eta_hat_prime(g, s).expect("s >= 1") + 1;
        if m > top {
            continue;
        }
        let hi = map.t_at(&int(m)).expect("in range").min(int(s));
        if hi > int(s - 1) {
            let v = membership_t(g, &int(m), &hi, StabilityKind::Stable);
            if let Some(reason) = v.exclusion_reason {
                out.push(ExclusionMarker { mu: int(m), lambda_lo: int(s - 1), lambda_hi: hi, lo_open: true, reason });
            }
        }
    }

    let mut bmno = Vec::new();
    for s in 1..=gv + 1 {
        let e = eta_hat(g, s).expect("s >= 1");
        if e < gv {
            let lo = rat(s - 1, gv) + int(s - 1);
            let hi = map.f_at(&int(e)).expect("in range");
            if hi > lo {
                bmno.push(ExclusionMarker { mu: int(e), lambda_lo: lo, lambda_hi: hi, lo_open: true, reason: ExclusionReason::BmnoEtaHat });
            }
        }
        if e < top && int(s) <= map.f_at(&int(e + 1)).expect("in range") {
            bmno.push(ExclusionMarker {
                mu: int(e + 1),
                lambda_lo: int(s),
                lambda_hi: int(s),
                lo_open: false,
                reason: ExclusionReason::BmnoEtaHatPlusOne,
            });
        }
    }
    let duals: Vec<ExclusionMarker> = bmno
        .iter()
        .map(|mk| {
            let lo = serre_dual_point(g, &SlopePoint::new(mk.mu.clone(), mk.lambda_lo.clone()));
            let hi = serre_dual_point(g, &SlopePoint::new(mk.mu.clone(), mk.lambda_hi.clone()));
            let clipped = !lo.lambda.is_positive();
            ExclusionMarker {
                mu: lo.mu,
                lambda_lo: if clipped { Rational::zero() } else { lo.lambda },
                lambda_hi: hi.lambda,
                lo_open: mk.lo_open || clipped,
                reason: ExclusionReason::SerreDualOfExcluded,
            }
        })
        .filter(|mk| mk.lambda_hi.is_positive())
        .filter(|mk| !bmno.iter().any(|b| b.mu == mk.mu && b.lambda_lo == mk.lambda_lo))
        .collect();
    out.extend(bmno);
    out.extend(duals);
    out.sort_by(|a, b| (&a.mu, &a.lambda_lo).cmp(&(&b.mu, &b.lambda_lo)));
    out
}

struct Series {
    name: &'static str,
    color: &'static str,
    points: Vec<PlotPoint>,
}

fn all_series(g: Genus, samples_per_unit: i64) -> Result<Vec<Series>> {
    Ok(vec![
        Series { name: "t", color: "#1f77b4", points: region_polyline(g, Region::T, samples_per_unit)? },
        Series { name: "bmno", color: "#d62728", points: region_polyline(g, Region::Bmno, samples_per_unit)? },
        Series { name: "bpn", color: "#2ca02c", points: bpn_polyline(g, samples_per_unit)? },
        Series { name: "clifford", color: "#7f7f7f", points: region_polyline(g, Region::Clifford, samples_per_unit)? },
        Series { name: "bn_curve", color: "#9467bd", points: region_polyline(g, Region::BnCurve, samples_per_unit)? },
    ])
}

fn csv_value(p: &PlotPoint) -> (String, String) {
    match p {
        PlotPoint::Exact { mu, lambda } => (fmt_rat(mu), fmt_rat(lambda)),
        PlotPoint::Approx { mu, lambda } => (format!("{mu:.9}"), format!("{lambda:.9}")),
    }
}

/// One row per vertex: `series,mu,lambda`. Exact values print as `p/q`,
/// BN-curve samples as decimals. Exclusion runs contribute their two ends.
pub fn render_csv(g: Genus, samples_per_unit: i64) -> Result<String> {
    let mut s = String::from("series,mu,lambda\n");
    for series in all_series(g, samples_per_unit)? {
        for p in &series.points {
            let (m, l) = csv_value(p);
            writeln!(s, "{},{m},{l}", series.name).unwrap();
        }
    }
    for mk in stable_exclusion_markers(g) {
        let name = format!("excluded:{}", mk.reason.tag());
        writeln!(s, "{name},{},{}", fmt_rat(&mk.mu), fmt_rat(&mk.lambda_lo)).unwrap();
        if mk.lambda_hi != mk.lambda_lo {
            writeln!(s, "{name},{},{}", fmt_rat(&mk.mu), fmt_rat(&mk.lambda_hi)).unwrap();
        }
    }
    Ok(s)
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 48.0;

struct Frame {
    mu_max: f64,
    lambda_max: f64,
}

impl Frame {
    fn x(&self, mu: f64) -> f64 {
        MARGIN + mu / self.mu_max * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, lambda: f64) -> f64 {
        HEIGHT - MARGIN - lambda / self.lambda_max * (HEIGHT - 2.0 * MARGIN)
    }
}

/// Standalone SVG: `mu` across `[0, 2g-2]`, `lambda` up `[0, g]`.
pub fn render_svg(g: Genus, samples_per_unit: i64) -> Result<String> {
    let gv = g.get();
    let fr = Frame { mu_max: (2 * gv - 2) as f64, lambda_max: gv as f64 };
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(s, r#"<text x="{:.6}" y="20" font-family="sans-serif" font-size="14" text-anchor="middle">BN map, g = {gv}</text>"#, WIDTH / 2.0).unwrap();

    // axes and ticks
    let (x0, y0, x1, y1) = (fr.x(0.0), fr.y(0.0), fr.x(fr.mu_max), fr.y(fr.lambda_max));
    writeln!(s, r#"<g stroke="black" stroke-width="1">"#).unwrap();
    writeln!(s, r#"<line x1="{x0:.6}" y1="{y0:.6}" x2="{x1:.6}" y2="{y0:.6}"/>"#).unwrap();
    writeln!(s, r#"<line x1="{x0:.6}" y1="{y0:.6}" x2="{x0:.6}" y2="{y1:.6}"/>"#).unwrap();
    writeln!(s, "</g>").unwrap();
    writeln!(s, r#"<g font-family="sans-serif" font-size="10" text-anchor="middle">"#).unwrap();
    for m in 0..=(2 * gv - 2) {
        let x = fr.x(m as f64);
        writeln!(s, r#"<line x1="{x:.6}" y1="{y0:.6}" x2="{x:.6}" y2="{:.6}" stroke="black"/>"#, y0 + 4.0).unwrap();
        writeln!(s, r#"<text x="{x:.6}" y="{:.6}">{m}</text>"#, y0 + 16.0).unwrap();
    }
    for l in 0..=gv {
        let y = fr.y(l as f64);
        writeln!(s, r#"<line x1="{:.6}" y1="{y:.6}" x2="{x0:.6}" y2="{y:.6}" stroke="black"/>"#, x0 - 4.0).unwrap();
        writeln!(s, r#"<text x="{:.6}" y="{:.6}">{l}</text>"#, x0 - 14.0, y + 3.0).unwrap();
    }
    writeln!(s, r#"<text x="{:.6}" y="{:.6}">mu</text>"#, x1, y0 + 32.0).unwrap();
    writeln!(s, r#"<text x="{:.6}" y="{:.6}">lambda</text>"#, x0, y1 - 10.0).unwrap();
    writeln!(s, "</g>").unwrap();

    for (i, series) in all_series(g, samples_per_unit)?.iter().enumerate() {
        let pts: Vec<String> = series
            .points
            .iter()
            .map(|p| {
                let (m, l) = p.as_f64();
                format!("{:.6},{:.6}", fr.x(m), fr.y(l.min(fr.lambda_max)))
            })
            .collect();
        writeln!(
            s,
            r#"<polyline id="{}" fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
            series.name,
            series.color,
            pts.join(" ")
        )
        .unwrap();
        let ly = 40.0 + 14.0 * i as f64;
        writeln!(
            s,
            r#"<text x="{:.6}" y="{ly:.6}" font-family="sans-serif" font-size="11" fill="{}">{}</text>"#,
            WIDTH - MARGIN - 80.0,
            series.color,
            series.name
        )
        .unwrap();
    }

    writeln!(s, r#"<g id="excluded" stroke="black" fill="black">"#).unwrap();
    for mk in stable_exclusion_markers(g) {
        let x = fr.x(to_f64(&mk.mu));
        let (ylo, yhi) = (fr.y(to_f64(&mk.lambda_lo)), fr.y(to_f64(&mk.lambda_hi)));
        if mk.lambda_lo == mk.lambda_hi {
            writeln!(s, r#"<circle cx="{x:.6}" cy="{ylo:.6}" r="2.5"/>"#).unwrap();
        } else {
            writeln!(s, r#"<line x1="{x:.6}" y1="{ylo:.6}" x2="{x:.6}" y2="{yhi:.6}" stroke-width="2.5" stroke-dasharray="3,2"/>"#).unwrap();
        }
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}

/// `mu` and `lambda` of a plot vertex as exact rationals when available.
pub fn exact_coords(p: &PlotPoint) -> Option<(Rational, Rational)> {
    match p {
        PlotPoint::Exact { mu, lambda } => Some((mu.clone(), lambda.clone())),
        PlotPoint::Approx { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::{membership_bmno, membership_t};

    fn g(v: i64) -> Genus {
        Genus::new(v).unwrap()
    }

    #[test]
    fn markers_agree_with_membership() {
        for gv in [3, 5, 10] {
            let gg = g(gv);
            let markers = stable_exclusion_markers(gg);
            assert!(!markers.is_empty());
            for mk in markers {
                let v = match mk.reason {
                    ExclusionReason::StaircaseGap | ExclusionReason::StaircaseBeta => {
                        membership_t(gg, &mk.mu, &mk.lambda_hi, StabilityKind::Stable)
                    }
                    _ => membership_bmno(gg, &mk.mu, &mk.lambda_hi, StabilityKind::Stable),
                };
                assert!(v.excluded_for_stable, "g = {gv}: {mk:?}");
            }
        }
    }

    #[test]
    fn csv_and_svg_render() {
        let csv = render_csv(g(4), 2).unwrap();
        assert!(csv.starts_with("series,mu,lambda\n"));
        assert!(csv.lines().skip(1).all(|l| l.split(',').count() == 3));
        assert!(csv.contains("clifford,0,1\nclifford,6,4\n"));
        let svg = render_svg(g(4), 2).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("href"));
        assert!(render_svg(g(4), 0).is_err());
    }

    #[test]
    fn bpn_polyline_is_exact() {
        let pts = bpn_polyline(g(10), 2).unwrap();
        assert!(pts.iter().all(PlotPoint::is_exact));
        assert!(pts.contains(&PlotPoint::exact(int(3), rat(441, 400))));
    }
}
