//! The ten acceptance criteria, one pass/fail line each.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use fgl_forge_core::acceptance::{run_criterion, CriterionResult};

const SELFTEST_LIMIT: Duration = Duration::from_secs(120);

fn selftest_json() -> (bool, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_fgl-forge"))
        .args(["selftest", "--format", "json"])
        .output()
        .expect("binary runs");
    (out.status.code() == Some(0), out.stdout)
}

fn determinism() -> CriterionResult {
    let start = Instant::now();
    let (ok1, first) = selftest_json();
    let (ok2, second) = selftest_json();
    let elapsed = start.elapsed();
    let (passed, detail) = if !(ok1 && ok2) {
        (false, "selftest exited nonzero".to_string())
    } else if first != second {
        (false, "selftest output differs between runs".to_string())
    } else if first.is_empty() {
        (false, "selftest printed nothing".to_string())
    } else if elapsed > SELFTEST_LIMIT {
        (false, format!("time limit of {}s exceeded", SELFTEST_LIMIT.as_secs()))
    } else {
        (true, format!("two runs exit 0 with identical {} byte reports", first.len()))
    };
    CriterionResult {
        id: 10,
        name: "cli determinism",
        passed,
        detail,
        elapsed,
        limit: SELFTEST_LIMIT,
    }
}

#[test]
fn acceptance() {
    let mut results: Vec<CriterionResult> = (1..=9).map(run_criterion).collect();
    results.push(determinism());
    let mut out = std::io::stdout().lock();
    for r in &results {
        writeln!(out, "{}", r.line()).unwrap();
    }
    drop(out);
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
