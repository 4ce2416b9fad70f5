use std::process::Command;

fn bnmap(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bnmap")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).expect("valid JSON")
}

#[test]
fn decide_known_empty() {
    let (code, out, _) = bnmap(&["decide", "--genus", "3", "--rank", "2", "--degree", "6", "--sections", "4", "--curve", "any", "--stability", "stable"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["status"], "empty");
    assert_eq!(v["beta"], 1);
    assert!(v["certificates"].as_array().is_some_and(|c| !c.is_empty()));
}

#[test]
fn product_and_boundary() {
    let (code, out, _) = bnmap(&["product", "--genus", "6", "--p1", "2,3,2", "--p2", "2,3,2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!((v["k"].as_i64(), v["beta_universal"].as_i64(), v["status"].as_str()), (Some(4), Some(-6), Some("nonempty")));

    let (code, out, _) = bnmap(&["bpn", "--genus", "10", "--mu", "3", "--boundary"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out), "441/400");

    let (_, out, _) = bnmap(&["bpn", "--genus", "10", "--mu", "3", "--lambda", "11/10"]);
    assert_eq!(json(&out)["member"], true);
}

#[test]
fn invalid_input_names_the_precondition() {
    let (code, _, err) = bnmap(&["kernel", "--genus", "4", "--base", "2,11,6", "--n", "1", "--d", "8", "--k", "5"]);
    assert_eq!(code, 1);
    assert!(err.contains("2ng"), "{err}");
    let (code, _, err) = bnmap(&["enumerate", "--genus", "2", "--n1", "2", "--k1", "3"]);
    assert_eq!(code, 1);
    assert!(err.contains("genus"), "{err}");
    assert_eq!(bnmap(&["bpn", "--genus", "10", "--mu", "x/0"]).0, 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["decide", "--genus", "4", "--rank", "2", "--degree", "11", "--sections", "6"];
    assert_eq!(bnmap(&args).1, bnmap(&args).1);
}

#[test]
fn plot_writes_standalone_svg_and_csv() {
    let dir = std::env::temp_dir().join(format!("bnmap-plot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("g5.svg");
    assert_eq!(bnmap(&["plot", "--genus", "5", "--format", "svg", "--out", svg.to_str().unwrap()]).0, 0);
    let body = std::fs::read_to_string(&svg).unwrap();
    assert!(body.starts_with("<svg") && !body.contains("href"));
    let (code, csv, _) = bnmap(&["plot", "--genus", "5", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(csv.starts_with("series,mu,lambda\n"));
    assert!(csv.lines().any(|l| l.starts_with("bpn,")) && csv.lines().any(|l| l.starts_with("excluded:")));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn selftest_exits_zero() {
    let (code, out, _) = bnmap(&["selftest"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("0 failed\n"));
}
