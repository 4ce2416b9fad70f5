//! Acceptance suite: one line per criterion. Every comparison is exact
//! (zero tolerance) over rationals or integers.

use bnloci::cli;
use bnloci::construct::{
    beta_product_normalized, bpn_boundary, bpn_new_points, c6_enumerate, kernel_beta_quadratic, kernel_construct,
    kernel_k_max, kernel_negativity_min_d, product_construct,
};
use bnloci::exact::{int, rat, Rational};
use bnloci::numbers::{
    beta_universal, beta_untwisted, chi, serre_dual_point, serre_dual_problem, BNProblem, Genus, SlopePoint,
    UniversalProblem,
};
use bnloci::oracle::{decide_untwisted, small_slope_decide, Certificate, CurveClass, Decision, Status};
use bnloci::regions::{eta_hat, eta_hat_prime, fg_eval, membership_bmno, membership_t, tg_eval, StabilityKind};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const STABLE: StabilityKind = StabilityKind::Stable;
const ANY: CurveClass = CurveClass::AnySmooth;

fn genus(g: i64) -> Genus {
    Genus::new(g).unwrap()
}

// Independent integer formulas for chi and the BN numbers.
fn chi_o(g: i64, n1: i64, d1: i64, n2: i64, d2: i64) -> i64 {
    n2 * d1 + n1 * d2 - n1 * n2 * (g - 1)
}

fn beta_o(g: i64, n: i64, d: i64, k: i64) -> i64 {
    n * n * (g - 1) + 1 - k * (k - d + n * (g - 1))
}

fn beta_k_o(g: i64, n1: i64, d1: i64, n2: i64, d2: i64, k: i64) -> i64 {
    (n1 * n1 + n2 * n2) * (g - 1) + 2 - k * (k - chi_o(g, n1, d1, n2, d2))
}

/// Collects every definite decision seen, for the certificate criterion.
#[derive(Default)]
struct Seen {
    decisions: Vec<Decision>,
    certificates: Vec<Certificate>,
}

impl Seen {
    fn decision(&mut self, d: &Decision) {
        if d.status != Status::Unknown {
            self.decisions.push(d.clone());
        }
    }
}

fn product_threshold(seen: &mut Seen) -> Result<(), String> {
    for gv in 2..=12 {
        let g = genus(gv);
        let p = BNProblem::new(g, 2, 3, 2).unwrap();
        let w = product_construct(g, &p, &p, ANY, STABLE).map_err(|e| format!("g={gv}: {e}"))?;
        seen.decision(&w.factor1);
        seen.decision(&w.factor2);
        seen.certificates.push(w.certificate());
        let b = beta_k_o(gv, 2, 3, 2, 3, 4);
        if w.k != 4 || w.beta_universal != b {
            return Err(format!("g={gv}: k={} beta={} expected 4, {b}", w.k, w.beta_universal));
        }
        if (b < 0) != (gv >= 6) {
            return Err(format!("g={gv}: sign of beta^k = {b}"));
        }
    }
    let w = product_construct(genus(6), &BNProblem::new(genus(6), 2, 3, 2).unwrap(), &BNProblem::new(genus(6), 2, 3, 2).unwrap(), ANY, STABLE)
        .unwrap();
    let normalized = beta_product_normalized(genus(6), &rat(3, 2), &int(1), &rat(3, 2), &int(1), 2, 2);
    if w.beta_universal != -6 || normalized * int(16) != int(-6) {
        return Err(format!("g=6: beta^k {} vs 16 x normalized", w.beta_universal));
    }
    Ok(())
}

fn upper(g: Genus, mu: &Rational) -> Rational {
    let t = tg_eval(g, mu).unwrap();
    let f = fg_eval(g, mu).unwrap();
    t.max(f)
}

/// Grid maximum of `F(mu1) F(mu - mu1)` over `0 < mu1 < min(2, mu)`.
fn grid_sup(g: Genus, mu: &Rational, step: &Rational) -> Option<Rational> {
    let cap = mu.clone().min(int(2));
    let top = int(2 * g.get() - 2);
    let mut best: Option<Rational> = None;
    let mut m1 = step.clone();
    while m1 < cap {
        let m2 = mu - &m1;
        if m2 > Rational::from_integer(0.into()) && m2 <= top {
            let v = upper(g, &m1) * upper(g, &m2);
            if best.as_ref().is_none_or(|b| &v > b) {
                best = Some(v);
            }
        }
        m1 += step;
    }
    best
}

fn bpn_parabola() -> Result<(), String> {
    let g = genus(10);
    let step = rat(1, 64);
    for i in 1..=15 {
        let mu = int(2) + rat(i, 8);
        let x = &mu - int(2);
        let formula = int(1) + &x / int(10) + (&x / int(2)) * (&x / int(2)) / int(100);
        let q = bpn_boundary(g, &mu).map_err(|e| e.to_string())?;
        if q.boundary != formula {
            return Err(format!("mu={mu}: boundary {} vs {formula}", q.boundary));
        }
        let direct = grid_sup(g, &mu, &step);
        let dual = grid_sup(g, &(int(18) - &mu), &step).map(|v| v + &mu - int(9));
        for v in [direct.clone(), dual].into_iter().flatten() {
            if v > formula {
                return Err(format!("mu={mu}: grid value {v} exceeds boundary"));
            }
        }
        let half = &mu / int(2);
        let sym = upper(g, &half) * upper(g, &half);
        if sym != formula {
            return Err(format!("mu={mu}: symmetric decomposition gives {sym}"));
        }
    }
    Ok(())
}

fn bpn_new_region() -> Result<(), String> {
    let g = genus(10);
    let (mu, lambda) = (int(3), rat(441, 400));
    let q = bpn_boundary(g, &mu).map_err(|e| e.to_string())?;
    if !(q.attained && lambda <= q.boundary) {
        return Err("(3, 441/400) is not in the product region".into());
    }
    if tg_eval(g, &mu).unwrap() != int(1) || fg_eval(g, &mu).unwrap() != rat(11, 10) {
        return Err("t_10(3) or f_10(3) off".into());
    }
    if membership_t(g, &mu, &lambda, STABLE).inside || membership_bmno(g, &mu, &lambda, STABLE).inside {
        return Err("(3, 441/400) lies in T or BMNO".into());
    }
    for gv in 5..=12 {
        let pts = bpn_new_points(genus(gv), &rat(1, 8)).map_err(|e| e.to_string())?;
        if pts.is_empty() {
            return Err(format!("g={gv}: no new points"));
        }
        for p in &pts {
            let gg = genus(gv);
            if membership_t(gg, &p.mu, &p.lambda, STABLE).inside || membership_bmno(gg, &p.mu, &p.lambda, STABLE).inside {
                return Err(format!("g={gv}: ({}, {}) is not new", p.mu, p.lambda));
            }
        }
    }
    Ok(())
}

fn kernel_family(seen: &mut Seen) -> Result<(), String> {
    let g = genus(4);
    let q = kernel_beta_quadratic(g, 2, 11, 6, 1, 23);
    if q.a != int(-1) {
        return Err(format!("leading coefficient {}", q.a));
    }
    if kernel_negativity_min_d(g, 2, 11, 6, 1, 23, ANY) != Ok((11, -7)) {
        return Err("minimal degree is not 11 with beta -7".into());
    }
    if kernel_k_max(g, 2, 11, 6, 1, 11) != Ok(21) {
        return Err("k_max(11) != 21".into());
    }
    let w = kernel_construct(&BNProblem::new(g, 2, 11, 6).unwrap(), 1, 11, 21, ANY, STABLE).map_err(|e| e.to_string())?;
    seen.decision(&w.base_decision);
    seen.certificates.push(w.certificate());
    for d in 9..=50 {
        let k = 4 * d - 23;
        let direct = beta_k_o(4, 2, 11, d - 4, -d, k);
        let lib = beta_universal(&UniversalProblem::new(g, 2, 11, d - 4, -d, k).unwrap());
        if q.eval(&int(d)) != int(direct) || lib != direct {
            return Err(format!("d={d}: quadratic {} formula {direct} library {lib}", q.eval(&int(d))));
        }
    }
    Ok(())
}

fn thresholds() -> Result<(), String> {
    for gv in 2..=20 {
        let g = genus(gv);
        for s in 1..=gv {
            let ep = (0..).find(|&d| beta_o(gv, 1, d + 1, s) >= 1).unwrap();
            let e = (0..).find(|&d| beta_o(gv, 1, d, s) >= 0).unwrap();
            if eta_hat_prime(g, s) != Ok(ep) || eta_hat(g, s) != Ok(e) {
                return Err(format!("g={gv} s={s}"));
            }
        }
        if eta_hat_prime(g, 1) != Ok(0) || eta_hat_prime(g, gv) != Ok(2 * gv - 2) || eta_hat(g, 1) != Ok(0) {
            return Err(format!("g={gv}: endpoints"));
        }
    }
    Ok(())
}

fn serre_properties() -> Result<(), String> {
    let strategy = (2i64..=20, 1i64..=10, -100i64..=100, -60i64..=60, 1i64..=10, -100i64..=100, -10i64..=10, 1i64..=60);
    let config = Config { cases: 10_000, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner
        .run(&strategy, |(gv, n, d, k, n2, d2, shift, den)| {
            let g = genus(gv);
            let p = BNProblem { g, n, d, k };
            let q = serre_dual_problem(&p);
            prop_assert_eq!(beta_untwisted(&p), beta_o(gv, n, d, k));
            prop_assert_eq!(beta_untwisted(&q), beta_untwisted(&p));
            prop_assert_eq!(serre_dual_problem(&q), p);

            let pt = SlopePoint::new(rat(d, n), rat(k, den));
            prop_assert_eq!(serre_dual_point(g, &serre_dual_point(g, &pt)), pt);

            let u = UniversalProblem { g, n1: n, d1: d, n2, d2, k };
            let b = beta_k_o(gv, n, d, n2, d2, k);
            prop_assert_eq!(beta_universal(&u), b);
            prop_assert_eq!(chi(&u), chi_o(gv, n, d, n2, d2));
            let dual = u.serre_dual();
            prop_assert_eq!(beta_universal(&dual), b);
            prop_assert_eq!(dual.serre_dual(), u);
            let sw = u.swapped();
            prop_assert_eq!((chi(&sw), beta_universal(&sw)), (chi(&u), b));
            let sh = u.shifted(shift);
            prop_assert_eq!((chi(&sh), beta_universal(&sh)), (chi(&u), b));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn c6_counts() -> Result<(), String> {
    let g3 = genus(3);
    for n1 in 3..=10 {
        let ds = c6_enumerate(g3, n1, n1 + 2).map_err(|e| e.to_string())?;
        if ds.len() as i64 != n1 - 2 {
            return Err(format!("n1={n1}: {ds:?}"));
        }
    }
    if c6_enumerate(g3, 2, 4) != Ok(vec![]) {
        return Err("(3, 2, 4) is not empty".into());
    }
    if c6_enumerate(genus(4), 2, 6) != Ok(vec![11]) {
        return Err("(4, 2, 6) != {11}".into());
    }
    if c6_enumerate(genus(2), 2, 3).is_ok() {
        return Err("genus 2 accepted".into());
    }
    Ok(())
}

fn known_cases(seen: &mut Seen) -> Result<(), String> {
    let d = decide_untwisted(&BNProblem::new(genus(3), 2, 6, 4).unwrap(), ANY, STABLE);
    seen.decision(&d);
    if d.status != Status::Empty || d.beta != 1 {
        return Err(format!("B(2,6,4) at g=3: {}", d.status.tag()));
    }
    for gv in 3..=12 {
        let d = decide_untwisted(&BNProblem::new(genus(gv), gv - 1, 2 * gv - 2, gv).unwrap(), CurveClass::NonHyperelliptic, STABLE);
        seen.decision(&d);
        if d.status != Status::Nonempty {
            return Err(format!("g={gv}: canonical dual span is {}", d.status.tag()));
        }
    }
    for gv in 2..=10 {
        for n in 2..=6 {
            for k in n + 1..=2 * n + 1 {
                let d = decide_untwisted(&BNProblem::new(genus(gv), n, 2 * n, k).unwrap(), CurveClass::Hyperelliptic, STABLE);
                seen.decision(&d);
                if d.status != Status::Empty {
                    return Err(format!("hyperelliptic g={gv} ({n}, {}, {k}): {}", 2 * n, d.status.tag()));
                }
            }
        }
    }
    Ok(())
}

fn small_slope_equivalence(seen: &mut Seen) -> Result<(), String> {
    let mut checked = 0;
    for gv in 2..=12 {
        let g = genus(gv);
        for n in 2..=8 {
            for d in 1..2 * n {
                let f = fg_eval(g, &rat(d, n)).unwrap();
                for k in 0..=2 * n + 2 {
                    let dec = small_slope_decide(g, n, d, k, ANY).map_err(|e| e.to_string())?;
                    seen.decision(&dec);
                    let expected = rat(k, n) <= f && (d, k) != (n, n);
                    let got = match dec.status {
                        Status::Nonempty => true,
                        Status::Empty => false,
                        Status::Unknown => return Err(format!("g={gv} ({n}, {d}, {k}) unknown")),
                    };
                    if got != expected {
                        return Err(format!("g={gv} ({n}, {d}, {k}): decided {got}, predicate {expected}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    if checked == 0 {
        return Err("nothing checked".into());
    }
    Ok(())
}

fn certificates_sound(seen: &Seen) -> Result<(), String> {
    if seen.decisions.is_empty() {
        return Err("no decisions collected".into());
    }
    if let Some(d) = seen.decisions.iter().find(|d| !d.verify()) {
        return Err(format!("decision {} with beta {} failed re-check", d.status.tag(), d.beta));
    }
    if let Some(c) = seen.certificates.iter().find(|c| !c.verify()) {
        return Err(format!("{} certificate failed re-check", c.name()));
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(["bnmap", "selftest"], &mut out, &mut err);
    if code != 0 {
        return Err(format!("selftest exited {code}: {}", String::from_utf8_lossy(&out)));
    }
    Ok(())
}

fn main() {
    let mut seen = Seen::default();
    let results: Vec<(&str, Result<(), String>)> = vec![
        ("product threshold g >= 6 and beta^k(6) = -6", product_threshold(&mut seen)),
        ("product boundary parabola at g=10, grid step 1/64", bpn_parabola()),
        ("(3, 441/400) new at g=10; new points for g = 5..12", bpn_new_region()),
        ("kernel family at g=4: -d^2 coefficient, d=11, beta -7, k_max 21", kernel_family(&mut seen)),
        ("threshold functions vs line-bundle BN numbers, g <= 20", thresholds()),
        ("Serre, swap and shift identities over 10^4 random problems", serre_properties()),
        ("kernel degree window counts", c6_counts()),
        ("known empty loci and slope-two special cases", known_cases(&mut seen)),
        ("small-slope decisions vs f_g, g <= 12, 2 <= n <= 8", small_slope_equivalence(&mut seen)),
    ];
    let tenth = certificates_sound(&seen);
    let mut failed = 0;
    for (i, (name, r)) in results.iter().chain(std::iter::once(&("certificates re-verify; selftest exits 0", tenth))).enumerate() {
        match r {
            Ok(()) => println!("criterion {:2}: PASS  {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:2}: FAIL  {name}: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 10 passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
