use std::io::Write;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("germkit").chain(args.iter().copied());
    let code = germkit_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s.trim()).unwrap()
}

fn job(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn zariski_multiplicity() {
    let (code, out, _) = run(&["mult", "--ring", "0 (x,y,z) ds", "--family", "zariski:40,30,8:t=0"]);
    assert_eq!(code, 0);
    assert_eq!(out, "17\n");
    let (_, out, _) = run(&["mult", "--family", "zariski:40,30,8:t=1"]);
    assert_eq!(out, "16\n");
}

#[test]
fn zariski_milnor_json() {
    let (code, out, _) = run(&[
        "milnor",
        "--ring",
        "32003 (x,y,z) ds",
        "--family",
        "zariski:40,30,8:t=1",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["mu"], 10655);
    assert_eq!(v["characteristic"], 32003);
    assert_eq!(v["ordering"], "ds");
    assert!(v["strategy"].is_string() && v["version"].is_string());
}

#[test]
fn characteristic_switch_is_flagged() {
    let (code, out, err) = run(&["zariski", "--a", "40", "--b", "30", "--c", "8", "--t", "0", "--json"]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert_eq!((v["multiplicity"].clone(), v["mu"].clone()), (17.into(), 10661.into()));
    assert_eq!(v["characteristic"], 32003);
    assert_eq!(v["characteristic_switched"], true);
    let (_, out, _) = run(&["mult", "--char", "0", "--family", "zariski:40,30,8:t=0", "--json"]);
    let v = json(&out);
    assert_eq!(v["characteristic"], 0);
    assert!(v.get("characteristic_switched").is_none());
}

#[test]
fn ft_report() {
    let (code, out, _) = run(&["ft", "--k", "5", "--l", "4", "--report"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["mu"], 11);
    assert_eq!(v["tau"], 10);
    assert_eq!(v["quasi_homogeneous"], "no");
    for key in ["characteristic", "ordering", "strategy", "version"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let (_, text, _) = run(&["ft", "--k", "5", "--l", "4"]);
    assert!(text.starts_with("mu 11\ntau 10\n"), "{text}");
}

#[test]
fn invariants_from_polynomials() {
    let r = ["--ring", "0 (x,y) ds"];
    let with = |cmd: &str, p: &str| {
        let mut a = vec![cmd];
        a.extend(r);
        a.extend(["--poly", p]);
        run(&a)
    };
    assert_eq!(with("milnor", "x^4+y^5+x^2*y^3").1, "12\n");
    assert_eq!(with("tjurina", "x^4+y^5+x^2*y^3").1, "11\n");
    assert_eq!(with("qh", "x^4+y^5+x^2*y^3").1, "no\n");
    assert_eq!(with("qh", "x^3+y^5").1, "yes\n");
    assert_eq!(with("vdim", "x^3+y^5").1, "INFINITE\n");
    let (code, out, _) = run(&["vdim", "--ring", "0 (x,y) ds", "--poly", "x^2", "--poly", "y^3"]);
    assert_eq!((code, out.as_str()), (0, "6\n"));
    let (_, out, _) = run(&["std", "--ring", "0 (x,y) dp", "--poly", "x^2-y", "--poly", "x*y"]);
    assert_eq!(out, "x^2-y\nx*y\ny^2\n");
}

#[test]
fn reiffen_json() {
    let (code, out, err) = run(&["reiffen", "--family", "ft:5,4", "--json"]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert_eq!(v["verdict"], "exact-up-to-order");
    assert_eq!(v["condition2"]["mu"], 11);
    assert!(v["order"].as_u64().unwrap() > 0);
    let (_, out, _) = run(&["reiffen", "--family", "ft:5,4", "--order-N", "0", "--json"]);
    assert_eq!(json(&out)["verdict"], "inconclusive");
}

#[test]
fn usage_errors_name_the_flag() {
    let (code, _, err) = run(&["milnor", "--family", "ft:5,4", "--strategy", "fastest"]);
    assert_eq!(code, 2);
    assert!(err.contains("--strategy"), "{err}");
    let (code, _, err) = run(&["milnor", "--poly", "x^2"]);
    assert_eq!(code, 2);
    assert!(err.contains("--ring"), "{err}");
    let (code, _, err) = run(&["milnor", "--family", "cusp:3"]);
    assert_eq!(code, 2);
    assert!(err.contains("--family"), "{err}");
    let (code, _, err) = run(&["milnor", "--family", "ft:5,4", "--char", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("--char"), "{err}");
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn computation_errors_carry_the_error_name() {
    let (code, _, err) = run(&["milnor", "--ring", "0 (x,y) dp", "--poly", "x^2+y^3"]);
    assert_eq!(code, 1);
    assert!(err.contains("InvalidOrdering"), "{err}");
    let (code, _, err) = run(&["milnor", "--family", "ft:4,4"]);
    assert_eq!(code, 1);
    assert!(err.contains("ParameterOutOfRange"), "{err}");
}

#[test]
fn jobfile_ft_tjurina() {
    let f = job("# FT(5,4)\nring 0 (x,y,z) ds\nf = x*y + z^3;\ng = x*z + y*z^2 + y^4;\ntjurina;\nmilnor(f, g)\n");
    let (code, out, err) = run(&["run", f.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "10\n11\n");
}

#[test]
fn jobfile_edge_cases() {
    let f = job("");
    assert_eq!(
        run(&["run", f.path().to_str().unwrap()]),
        (0, String::new(), String::new())
    );
    let f = job("ring 0 (x,y) ds\nf = x^2 + w;\n");
    let (code, out, err) = run(&["run", f.path().to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (1, ""));
    assert!(err.contains("UnknownVariable") && err.contains("2:"), "{err}");
    let f = job("ring 0 (x,y) ds\nf = x^3 + y^4\nmilnor(h)\n");
    let (code, _, err) = run(&["run", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 3") && err.contains("3:8"), "{err}");
    let f = job("ring 0 (x,y) ds\nf = x^3 + y^4\nmilnor\nbogus\nmilnor\n");
    let (code, out, err) = run(&["run", f.path().to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (1, "6\n"));
    assert!(err.contains("line 4"), "{err}");
    let (code, _, _) = run(&["run", "/nonexistent/job.txt"]);
    assert_eq!(code, 1);
}

#[test]
fn jobfile_json_lines() {
    let f = job("ring 0 (x,y) ds\nf = x^3 + y^5\nmilnor\nqh\n");
    let (code, out, _) = run(&["run", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let lines: Vec<Value> = out.lines().map(json).collect();
    assert_eq!(lines[0]["mu"], 8);
    assert_eq!(lines[0]["line"], 3);
    assert_eq!(lines[1]["quasi_homogeneous"], "yes");
    assert_eq!(lines[1]["weights"], serde_json::json!(["1/3", "1/5"]));
}

#[test]
fn output_is_deterministic() {
    let args = ["std", "--ring", "0 (x,y,z) ds", "--family", "ft:6,5", "--json"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn bench_cross_product() {
    let (code, out, err) = run(&[
        "bench",
        "--family",
        "ft:8,8",
        "--ordering",
        "ds",
        "--ordering",
        "ls",
        "--strategy",
        "sugar",
        "--strategy",
        "fifo",
        "--jobs",
        "2",
        "--json",
    ]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 4);
    for r in recs {
        assert_eq!(r["vdim"], 17);
        assert!(r["millis"].is_u64());
        let same: Vec<_> = recs.iter().filter(|s| s["ordering"] == r["ordering"]).collect();
        assert!(same.iter().all(|s| s["digest"] == r["digest"]));
    }
    let (code, out, _) = run(&["bench", "--family", "ft:5,4", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["records"].as_array().unwrap().len(), 1);
    let (code, _, err) = run(&["bench"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn bench_all_strategies() {
    let (code, out, err) = run(&["bench", "--family", "ft:6,4", "--strategy", "all", "--jobs", "4"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.lines().count(), 1 + germkit::stdbasis::Strategy::all().len());
}

#[test]
fn binary_exit_codes_and_environment() {
    let bin = env!("CARGO_BIN_EXE_germkit");
    let o = Command::new(bin)
        .args(["tjurina", "--family", "ft:5,4"])
        .env("GERMKIT_JSON", "1")
        .env("GERMKIT_ORDERING", "ls")
        .output()
        .unwrap();
    assert!(o.status.success());
    let v = json(&String::from_utf8(o.stdout).unwrap());
    assert_eq!(v["tau"], 10);
    assert_eq!(v["ordering"], "ls");
    let o = Command::new(bin)
        .args(["milnor", "--family", "ft:5,4"])
        .env("GERMKIT_STRATEGY", "nope")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(bin)
        .args(["milnor", "--family", "ft:4,4"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}
