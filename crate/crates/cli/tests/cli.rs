use std::process::{Command, Output};

use serde_json::Value as Json;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fgl-forge"))
        .args(args)
        .env_remove("FGLFORGE_PRECISION")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Json {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("fgl-forge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn pseries_example() {
    let out = run(&["fgl", "pseries", "--name", "multiplicative", "--k", "2", "--precision", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["tool"], "fgl-forge");
    assert_eq!(v["command"], "fgl pseries");
    assert_eq!(v["result"]["display"], "2x - beta*x^2");
    assert_eq!(v["result"]["series"]["coeffs"][2], "-beta");
}

#[test]
fn landweber_example_fails_at_stage_one() {
    let out = run(&[
        "landweber", "check", "--fgl", "additive-over-Z", "--primes", "2", "--max-height", "2", "--precision", "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let verdict = &json(&out)["result"]["primes"][0]["verdict"];
    assert_eq!(verdict["kind"], "fails_at");
    assert_eq!(verdict["n"], 1);
    assert_eq!(verdict["witness"], "1");
}

#[test]
fn landweber_multiplicative_is_exact() {
    let out = run(&[
        "landweber", "check", "--fgl", "multiplicative", "--primes", "2,3,5", "--max-height", "3", "--precision", "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for p in v["result"]["primes"].as_array().unwrap() {
        assert_eq!(p["verdict"]["kind"], "exact_at_height");
        assert_eq!(p["verdict"]["height"], 1);
    }
}

#[test]
fn compose_example() {
    let out = run(&["ops", "compose", "--lhs", "geom(-2)", "--rhs", "geom(-3)", "--precision", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["closed_form"], "geom(-6)");
    assert_eq!(v["result"]["series"]["coeffs"][1], "6");
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["fgl", "show", "--name", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["fgl", "show", "--name", "additive", "--precision", "65"]).status.code(), Some(2));
    assert_eq!(
        run(&["landweber", "check", "--fgl", "additive", "--primes", "101", "--max-height", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["landweber", "check", "--fgl", "additive", "--primes", "4", "--max-height", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["ops", "adams", "--k", "2", "--model", "tower", "--depth", "17"]).status.code(), Some(2));
    assert_eq!(run(&["fgl", "log", "--name", "additive-over-Z"]).status.code(), Some(2));
}

#[test]
fn precision_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fgl-forge"))
        .args(["fgl", "pseries", "--name", "additive", "--k", "3"])
        .env("FGLFORGE_PRECISION", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["series"]["precision"], 5);
}

#[test]
fn fgl_json_round_trips_through_files() {
    let out = run(&["fgl", "show", "--name", "multiplicative-over-Q[beta]", "--precision", "6"]);
    let law = json(&out)["result"]["fgl"].clone();
    let path = temp_file("mult.json", &law.to_string());
    let again = run(&["fgl", "show", "--fgl", path.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(json(&again)["result"]["fgl"], law);
    let check = run(&["fgl", "check", "--fgl", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn broken_law_is_rejected() {
    let path = temp_file(
        "broken.json",
        r#"{"ring": {"kind": "integers"}, "precision": 4, "coefficients": [{"i": 2, "j": 1, "value": "1"}]}"#,
    );
    let out = run(&["fgl", "check", "--fgl", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("formal group law"));
}

#[test]
fn iso_round_trip_through_files() {
    let tower = run(&["ops", "adams", "--k", "2", "--model", "tower", "--depth", "3", "--precision", "6"]);
    assert_eq!(tower.status.code(), Some(0));
    let t = json(&tower)["result"].clone();
    let tp = temp_file("tower.json", &t.to_string());
    let seq = run(&["ops", "iso", "--input", tp.to_str().unwrap(), "--direction", "mult2add"]);
    let s = json(&seq)["result"].clone();
    assert_eq!(s["terms"][0]["coefficient"]["lo"], -3);
    assert_eq!(s["terms"][0]["coefficient"]["values"][0], "1/8");
    let sp = temp_file("seq.json", &s.to_string());
    let back = run(&["ops", "iso", "--input", sp.to_str().unwrap(), "--direction", "add2mult"]);
    assert_eq!(json(&back)["result"], t);
}

#[test]
fn idempotent_and_lazard_commands() {
    let out = run(&["ops", "idempotent", "--n", "0", "--window", "-2:2"]);
    let vals = &json(&out)["result"]["terms"][0]["coefficient"]["values"];
    assert_eq!(vals.to_string(), r#"["0","0","1","0","0"]"#);
    let hq = run(&["lazard", "hq", "--degree", "4"]);
    assert_eq!(hq.status.code(), Some(0));
    assert_eq!(json(&hq)["result"]["passed"], true);
    let hopf = run(&["lazard", "hopf", "--flavor", "groupoid", "--size", "3"]);
    assert_eq!(hopf.status.code(), Some(0));
    let cls = run(&["lazard", "classify", "--name", "multiplicative-over-Q[beta]", "--precision", "4"]);
    assert_eq!(json(&cls)["result"]["images"]["m2"], "1/3*beta^2");
}

#[test]
fn text_format() {
    let out = run(&["fgl", "vseq", "--name", "multiplicative", "--prime", "2", "--max-height", "2", "--precision", "4", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(1), Some("v_1 = -beta  (degree 1)"));
}
