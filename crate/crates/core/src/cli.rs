//! The `bnmap` command line. `run` is the whole program; the binary only
//! forwards `argv` and the exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::construct::{
    bpn_boundary, bpn_membership, bpn_new_points, c6_enumerate, kernel_construct, kernel_negativity_min_d,
    product_construct, product_negativity_search,
};
use crate::error::Error;
use crate::exact::{fmt_rat, int, parse_rational, rat, Rational};
use crate::numbers::{
    beta_tensor_product, beta_twisted_locus, beta_universal, beta_untwisted, chi, serre_dual_problem, BNProblem, Genus,
    UniversalProblem,
};
use crate::oracle::{decide_universal, decide_untwisted, small_slope_decide, CurveClass, Decision, Status};
use crate::plot::{render_csv, render_svg};
use crate::regions::{eta_hat, eta_hat_prime, BnMap, StabilityKind};

#[derive(Parser, Debug)]
#[command(name = "bnmap", version, about = "Exact Brill-Noether numbers, certified loci and the BN map")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// chi and the four BN numbers of a (possibly twisted) locus
    Beta(BetaArgs),
    /// Certified decision for B(n, d, k), or for the universal twisted locus with --twist-*
    Decide(DecideArgs),
    /// Tensor-product construction, or the smallest negative ranks at fixed slopes
    Product(ProductArgs),
    /// Kernel-bundle construction, or the smallest degree with negative expected dimension
    Kernel(KernelArgs),
    /// Product-region boundary, membership and new points
    Bpn(BpnArgs),
    /// Degree windows of the kernel construction, or a grid scan of decisions
    Enumerate(EnumerateArgs),
    /// Draw the BN map as SVG or CSV
    Plot(PlotArgs),
    /// Re-run the built-in fixtures and property sweeps
    Selftest,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    genus: i64,
    #[arg(long, default_value = "any", value_parser = parse_curve)]
    curve: CurveClass,
    #[arg(long, value_enum, default_value_t = Stability::Stable)]
    stability: Stability,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Stability {
    Stable,
    Semistable,
}

impl From<Stability> for StabilityKind {
    fn from(s: Stability) -> Self {
        match s {
            Stability::Stable => StabilityKind::Stable,
            Stability::Semistable => StabilityKind::Semistable,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Args, Debug)]
struct BetaArgs {
    #[arg(long)]
    genus: i64,
    #[arg(long)]
    rank: i64,
    #[arg(long)]
    degree: i64,
    #[arg(long)]
    sections: i64,
    #[arg(long, default_value_t = 1)]
    twist_rank: i64,
    #[arg(long, default_value_t = 0)]
    twist_degree: i64,
}

#[derive(Args, Debug)]
struct DecideArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    rank: i64,
    #[arg(long)]
    degree: i64,
    #[arg(long)]
    sections: i64,
    #[arg(long, requires = "twist_degree")]
    twist_rank: Option<i64>,
    #[arg(long, requires = "twist_rank")]
    twist_degree: Option<i64>,
}

#[derive(Args, Debug)]
struct ProductArgs {
    #[command(flatten)]
    common: Common,
    /// n,d,k of the first factor
    #[arg(long, value_parser = parse_triple, requires = "p2", conflicts_with = "slopes")]
    p1: Option<[i64; 3]>,
    #[arg(long, value_parser = parse_triple, requires = "p1")]
    p2: Option<[i64; 3]>,
    /// mu1,lambda1,mu2,lambda2 as rationals
    #[arg(long, value_parser = parse_slopes)]
    slopes: Option<[Rational; 4]>,
}

#[derive(Args, Debug)]
struct KernelArgs {
    #[command(flatten)]
    common: Common,
    /// n1,d1,k1 of the base locus
    #[arg(long, value_parser = parse_triple)]
    base: [i64; 3],
    #[arg(long)]
    n: i64,
    #[arg(long, requires = "k", conflicts_with = "e")]
    d: Option<i64>,
    #[arg(long, requires = "d")]
    k: Option<i64>,
    /// Offset in k = d(k1 - n1) - e; searches the smallest negative d
    #[arg(long)]
    e: Option<i64>,
}

#[derive(Args, Debug)]
struct BpnArgs {
    #[arg(long)]
    genus: i64,
    #[arg(long, value_parser = parse_rat_arg, required_unless_present = "new_points")]
    mu: Option<Rational>,
    #[arg(long)]
    boundary: bool,
    #[arg(long, value_parser = parse_rat_arg, requires = "mu")]
    lambda: Option<Rational>,
    #[arg(long, conflicts_with_all = ["mu", "lambda", "boundary"])]
    new_points: bool,
    #[arg(long, value_parser = parse_rat_arg, default_value = "1/8")]
    step: Rational,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    common: Common,
    /// Base rank for the kernel-construction degree window
    #[arg(long, requires = "k1", conflicts_with = "max_rank")]
    n1: Option<i64>,
    #[arg(long, requires = "n1")]
    k1: Option<i64>,
    /// Scan every B(n, d, k) with n up to this rank and 0 <= d <= n(2g-2)
    #[arg(long)]
    max_rank: Option<i64>,
    /// Keep only loci of negative expected dimension
    #[arg(long)]
    negative_only: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct PlotArgs {
    #[arg(long)]
    genus: i64,
    #[arg(long, value_enum, default_value_t = Format::Svg)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Uniform samples per unit of slope
    #[arg(long, default_value_t = 8)]
    samples: i64,
}

fn parse_curve(s: &str) -> std::result::Result<CurveClass, String> {
    s.parse().map_err(|_| format!("unknown curve class {s:?}; expected any|petri|general|nonhyperelliptic|hyperelliptic"))
}

fn parse_rat_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_triple(s: &str) -> std::result::Result<[i64; 3], String> {
    let v: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    v.try_into().map_err(|_| format!("expected n,d,k, got {s:?}"))
}

fn parse_slopes(s: &str) -> std::result::Result<[Rational; 4], String> {
    let v: Vec<Rational> = s.split(',').map(|p| parse_rat_arg(p.trim())).collect::<std::result::Result<_, _>>()?;
    v.try_into().map_err(|_| format!("expected mu1,lambda1,mu2,lambda2, got {s:?}"))
}

/// Failures that map to exit codes.
enum Failure {
    Input(Error),
    Verification(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `argv` (program name first), runs the command, writes results to
/// `out` and diagnostics to `err`. Returns 0 on success, 1 on invalid input,
/// 2 when a certificate fails its re-check.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn emit(out: &mut dyn Write, v: &Value) -> std::result::Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("JSON values serialize"))?;
    Ok(())
}

fn checked(d: &Decision, what: &str) -> std::result::Result<(), Failure> {
    if d.verify() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("certificate for {what} did not re-check")))
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    match cmd {
        Command::Beta(a) => {
            let g = Genus::new(a.genus)?;
            let u = UniversalProblem::new(g, a.rank, a.degree, a.twist_rank, a.twist_degree, a.sections)?;
            let p = BNProblem::new(g, a.rank, a.degree, a.sections)?;
            emit(
                out,
                &json!({
                    "chi": chi(&u),
                    "beta_untwisted": beta_untwisted(&p),
                    "beta_twisted": beta_twisted_locus(g, a.rank, a.degree, a.sections, a.twist_rank, a.twist_degree),
                    "beta_universal": beta_universal(&u),
                    "beta_tensor": beta_tensor_product(&u),
                }),
            )?;
        }
        Command::Decide(a) => {
            let g = Genus::new(a.common.genus)?;
            let kind = a.common.stability.into();
            let d = match (a.twist_rank, a.twist_degree) {
                (Some(n2), Some(d2)) => {
                    let u = UniversalProblem::new(g, a.rank, a.degree, n2, d2, a.sections)?;
                    decide_universal(&u, a.common.curve, kind)
                }
                _ => decide_untwisted(&BNProblem::new(g, a.rank, a.degree, a.sections)?, a.common.curve, kind),
            };
            checked(&d, "decision")?;
            emit(out, &d.to_json())?;
        }
        Command::Product(a) => {
            let g = Genus::new(a.common.genus)?;
            if let Some([m1, l1, m2, l2]) = &a.slopes {
                emit(out, &product_negativity_search(g, m1, l1, m2, l2)?.to_json())?;
            } else {
                let ([n1, d1, k1], [n2, d2, k2]) = match (a.p1, a.p2) {
                    (Some(x), Some(y)) => (x, y),
                    _ => return Err(Error::precondition("give --p1 and --p2, or --slopes").into()),
                };
                let w = product_construct(
                    g,
                    &BNProblem::new(g, n1, d1, k1)?,
                    &BNProblem::new(g, n2, d2, k2)?,
                    a.common.curve,
                    a.common.stability.into(),
                )?;
                if !w.certificate().verify() {
                    return Err(Failure::Verification("tensor-product certificate".into()));
                }
                emit(out, &w.to_json())?;
            }
        }
        Command::Kernel(a) => {
            let g = Genus::new(a.common.genus)?;
            let [n1, d1, k1] = a.base;
            match (a.d, a.k, a.e) {
                (Some(d), Some(k), None) => {
                    let base = BNProblem::new(g, n1, d1, k1)?;
                    let w = kernel_construct(&base, a.n, d, k, a.common.curve, a.common.stability.into())?;
                    if !w.certificate().verify() {
                        return Err(Failure::Verification("kernel-bundle certificate".into()));
                    }
                    emit(out, &w.to_json())?;
                }
                (None, None, Some(e)) => {
                    let (d, beta) = kernel_negativity_min_d(g, n1, d1, k1, a.n, e, a.common.curve)?;
                    emit(out, &json!({ "d": d, "k": d * (k1 - n1) - e, "beta_universal": beta }))?;
                }
                _ => return Err(Error::precondition("give --d and --k, or --e").into()),
            }
        }
        Command::Bpn(a) => {
            let g = Genus::new(a.genus)?;
            if a.new_points {
                let pts = bpn_new_points(g, &a.step)?;
                emit(out, &Value::Array(pts.iter().map(|p| p.to_json()).collect()))?;
            } else {
                let mu = a.mu.expect("clap requires --mu");
                let mut q = bpn_boundary(g, &mu)?;
                let mut v = match &a.lambda {
                    Some(l) => {
                        q.lambda = Some(l.clone());
                        let mut v = q.to_json();
                        v["member"] = json!(bpn_membership(g, &mu, l));
                        v
                    }
                    None => q.to_json(),
                };
                if a.boundary && a.lambda.is_none() {
                    v = json!(fmt_rat(&q.boundary));
                }
                emit(out, &v)?;
            }
        }
        Command::Enumerate(a) => {
            let g = Genus::new(a.common.genus)?;
            match (a.n1, a.k1, a.max_rank) {
                (Some(n1), Some(k1), None) => {
                    let ds = c6_enumerate(g, n1, k1)?;
                    emit(out, &json!({ "g": g.get(), "n1": n1, "k1": k1, "d1": ds }))?;
                }
                (None, None, Some(max_rank)) => {
                    enumerate_grid(g, max_rank, a.common.curve, a.common.stability.into(), a.negative_only, a.format, out)?
                }
                _ => return Err(Error::precondition("give --n1 and --k1, or --max-rank").into()),
            }
        }
        Command::Plot(a) => {
            let g = Genus::new(a.genus)?;
            let body = match a.format {
                Format::Svg => render_svg(g, a.samples)?,
                Format::Csv => render_csv(g, a.samples)?,
                Format::Json => return Err(Error::precondition("plot --format is svg or csv").into()),
            };
            match a.out {
                Some(path) => std::fs::write(path, body)?,
                None => out.write_all(body.as_bytes())?,
            }
        }
        Command::Selftest => {
            let mut failed = 0;
            for (name, ok) in selftest() {
                writeln!(out, "{} {name}", if ok { "ok  " } else { "FAIL" })?;
                failed += usize::from(!ok);
            }
            writeln!(out, "{failed} failed")?;
            return Ok(if failed == 0 { 0 } else { 2 });
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_grid(
    g: Genus,
    max_rank: i64,
    cc: CurveClass,
    kind: StabilityKind,
    negative_only: bool,
    format: Format,
    out: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    if !(1..=64).contains(&max_rank) {
        return Err(Error::OutOfDomain { what: "max-rank", value: max_rank.to_string(), window: "[1, 64]".into() }.into());
    }
    let mut rows = Vec::new();
    for n in 1..=max_rank {
        for d in 0..=n * (2 * g.get() - 2) {
            // Clifford: k <= d/2 + n
            for k in 1..=d / 2 + n {
                let p = BNProblem::new(g, n, d, k)?;
                if negative_only && p.beta() >= 0 {
                    continue;
                }
                let dec = decide_untwisted(&p, cc, kind);
                checked(&dec, &p.to_string())?;
                rows.push((p, dec));
            }
        }
    }
    match format {
        Format::Csv => {
            writeln!(out, "n,d,k,beta,status,scope,rules")?;
            for (p, d) in &rows {
                let rules: Vec<&str> = d.certificates.iter().map(|c| c.name()).collect();
                writeln!(out, "{},{},{},{},{},{},{}", p.n, p.d, p.k, d.beta, d.status.tag(), d.scope.tag(), rules.join(";"))?;
            }
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(p, d)| json!({ "n": p.n, "d": p.d, "k": p.k, "decision": d.to_json() }))
                .collect();
            emit(out, &Value::Array(v))?;
        }
        Format::Svg => return Err(Error::precondition("enumerate --format is json or csv").into()),
    }
    Ok(())
}

/// Fixed fixtures and small exhaustive sweeps; each entry is a check name
/// and whether it passed.
pub fn selftest() -> Vec<(String, bool)> {
    let mut r: Vec<(String, bool)> = Vec::new();
    let gen = |v| Genus::new(v).expect("fixture genus");
    let any = CurveClass::AnySmooth;
    let stable = StabilityKind::Stable;
    let mut decisions: Vec<Decision> = Vec::new();

    let u = UniversalProblem::new(gen(6), 2, 3, 2, 3, 4).expect("fixture");
    r.push(("universal beta of (2,3)x(2,3), k=4, g=6 is -6".into(), beta_universal(&u) == -6));

    let d = decide_untwisted(&BNProblem::new(gen(3), 2, 6, 4).expect("fixture"), any, stable);
    r.push(("B(2,6,4) is empty at g=3".into(), d.status == Status::Empty && d.beta == 1));
    decisions.push(d);

    for gv in 3..=8 {
        let d = decide_untwisted(&BNProblem::new(gen(gv), gv - 1, 2 * gv - 2, gv).expect("fixture"), CurveClass::NonHyperelliptic, stable);
        r.push((format!("dual span of the canonical bundle is nonempty at g={gv}"), d.status == Status::Nonempty));
        decisions.push(d);
    }

    let p = BNProblem::new(gen(6), 2, 3, 2).expect("fixture");
    match product_construct(gen(6), &p, &p, any, stable) {
        Ok(w) => {
            r.push(("product (2,3,2)x(2,3,2) at g=6".into(), w.k == 4 && w.beta_universal == -6 && w.certificate().verify()));
            decisions.push(decide_universal(&w.universal, any, stable));
        }
        Err(_) => r.push(("product (2,3,2)x(2,3,2) at g=6".into(), false)),
    }

    r.push((
        "product boundary at g=10, mu=3 is 441/400".into(),
        bpn_boundary(gen(10), &int(3)).is_ok_and(|q| q.boundary == rat(441, 400)),
    ));

    let base = BNProblem::new(gen(4), 2, 11, 6).expect("fixture");
    r.push((
        "kernel construction over B(2,11,6) at g=4".into(),
        kernel_construct(&base, 1, 11, 21, any, stable).is_ok_and(|w| w.beta_universal == -7 && w.certificate().verify()),
    ));
    r.push(("kernel degree window at g=4, n1=2, k1=6".into(), c6_enumerate(gen(4), 2, 6) == Ok(vec![11])));

    let mut thresholds = true;
    for gv in 2..=12 {
        let gg = gen(gv);
        for s in 1..=gv {
            let line = |d: i64, s: i64| beta_untwisted(&BNProblem { g: gg, n: 1, d, k: s });
            let ep = (0..).find(|&d| line(d + 1, s) >= 1).expect("eventually positive");
            let e = (0..).find(|&d| line(d, s) >= 0).expect("eventually non-negative");
            thresholds &= eta_hat_prime(gg, s) == Ok(ep) && eta_hat(gg, s) == Ok(e);
        }
    }
    r.push(("threshold functions match line-bundle BN numbers, g <= 12".into(), thresholds));

    let mut serre = true;
    for gv in 2..=6 {
        for n in 1..=4 {
            for d in -10..=30 {
                for k in -2..=12 {
                    let p = BNProblem { g: gen(gv), n, d, k };
                    let q = serre_dual_problem(&p);
                    serre &= p.beta() == q.beta() && serre_dual_problem(&q) == p;
                }
            }
        }
    }
    r.push(("Serre duality preserves beta and is an involution".into(), serre));

    let mut small = true;
    for gv in 2..=8 {
        let gg = gen(gv);
        let map = BnMap::for_genus(gg);
        for n in 2..=5 {
            for d in 1..2 * n {
                for k in 0..=2 * n {
                    let Ok(dec) = small_slope_decide(gg, n, d, k, any) else {
                        small = false;
                        continue;
                    };
                    let inside = k == 0 || map.f_at(&rat(d, n)).is_ok_and(|f| rat(k, n) <= f);
                    let expected = inside && !(d == n && k == n);
                    small &= (dec.status == Status::Nonempty) == expected;
                }
            }
        }
    }
    r.push(("small-slope decisions agree with f_g below slope two".into(), small));

    r.push(("all fixture certificates re-verify".into(), decisions.iter().all(Decision::verify)));
    r
}
