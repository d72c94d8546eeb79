use ratdecomp::cli::{parse_rational_function, run, Invocation};
use ratdecomp::fields::Rationals;
use serde_json::Value;

const EXAMPLE_A: &str = "(X^3+Y^3+1)/(3*X*Y)";
const EXAMPLE_B: &str = "((X^3+Y^3+1)^2+9*X^2*Y^2)/(3*X*Y*(X^3+Y^3+1))";

fn go(args: &[&str]) -> Invocation {
    let mut empty: &[u8] = b"";
    run(std::iter::once("ratdecomp").chain(args.iter().copied()), &mut empty)
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let r = go(&all);
    serde_json::from_str(&r.stdout).unwrap()
}

fn names() -> Vec<String> {
    vec!["X".into(), "Y".into()]
}

#[test]
fn decomp_sextic() {
    let v = json(&["decomp", EXAMPLE_B, "--seed", "7"]);
    assert_eq!(v["command"], "decomp");
    assert_eq!(v["outcome"], "decomposed");
    assert_eq!(v["u"]["num"], "T^2 + 9");
    assert_eq!(v["u"]["den"], "3*T");
    assert_eq!(v["h"]["num"], "X^3 + Y^3 + 1");
    assert_eq!(v["h"]["den"], "X*Y");
}

#[test]
fn same_seed_same_bytes() {
    for cmd in ["decomp", "grs", "reduce", "indecomp"] {
        let a = go(&[cmd, EXAMPLE_B, "--seed", "11", "--json"]);
        let b = go(&[cmd, EXAMPLE_B, "--seed", "11", "--json"]);
        assert_eq!(a, b);
    }
    let a = go(&["spectrum", EXAMPLE_A, "--field", "fp:101", "--seed", "3", "--json"]);
    assert_eq!(a, go(&["spectrum", EXAMPLE_A, "--field", "fp:101", "--seed", "3", "--json"]));
}

#[test]
fn indecomp_polytope_witness() {
    let v = json(&["indecomp", "(X^2+Y)/1"]);
    assert_eq!(v["outcome"], "non-composite");
    assert_eq!(v["gcd"], 1);
}

#[test]
fn spectrum_over_f101() {
    let v = json(&["spectrum", EXAMPLE_A, "--field", "fp:101"]);
    let pts = v["spectrum_points"].as_array().unwrap();
    assert!(pts.len() <= 8);
    assert!(pts.iter().any(|p| p == "(0:1)"));
}

#[test]
fn outputs_reparse() {
    let v = json(&["decomp", EXAMPLE_B, "--seed", "1"]);
    let k = Rationals;
    let h = format!("({})/({})", v["h"]["num"].as_str().unwrap(), v["h"]["den"].as_str().unwrap());
    let parsed = parse_rational_function(&h, &names(), &k).unwrap();
    assert_eq!(parse_rational_function(&parsed.fmt_with(&names()), &names(), &k).unwrap(), parsed);
    let r = json(&["reduce", &parsed.fmt_with(&names())]);
    let again = format!("({})/({})", r["h"]["num"].as_str().unwrap(), r["h"]["den"].as_str().unwrap());
    assert_eq!(parse_rational_function(&again, &names(), &k).unwrap(), parsed);
}

#[test]
fn decomp_det_and_grs_agree_over_f13() {
    let a = json(&["decomp-det", EXAMPLE_B, "--field", "fp:13"]);
    let b = json(&["grs", EXAMPLE_B, "--field", "fp:13"]);
    assert_eq!(a["outcome"], "decomposed");
    assert_eq!(a["certification"], "deterministic");
    assert_eq!(a["h"], b["h"]);
    assert_eq!(a["u"], b["u"]);
}

#[test]
fn compute_u_and_luroth() {
    let v = json(&["compute-u", EXAMPLE_B, EXAMPLE_A, "--method", "series"]);
    assert_eq!(v["u"]["num"], "T^2 + 1");
    assert_eq!(v["u"]["den"], "T");
    let v = json(&["luroth", "X^2*Y^2", "X^3*Y^3 + 1"]);
    assert_eq!(v["outcome"], "generator");
    assert_eq!(v["generator"], "X*Y");
    let v = json(&["sederberg", "X", "Y"]);
    assert_eq!(v["outcome"], "no-generator");
}

#[test]
fn exit_codes() {
    assert_eq!(go(&["reduce", "X**2"]).code, 1);
    assert_eq!(go(&["decomp-det", EXAMPLE_B]).code, 1);
    assert_eq!(go(&["decomp", EXAMPLE_B, "--field", "fp:4"]).code, 1);
    assert_eq!(go(&["compute-u", "X", "X^2"]).code, 2);
    assert_eq!(go(&["--help"]).code, 0);
}
