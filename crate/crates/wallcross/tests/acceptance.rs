//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;

use wallcross::verify::{run_criterion, VerifyOptions, CRITERIA};

fn main() -> ExitCode {
    let opts = VerifyOptions::default();
    let mut failed = 0;
    for (id, _) in CRITERIA {
        let r = run_criterion(id, &opts);
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {id}: {status} — {} ({} checks, {:.2} s)",
            r.title,
            r.checks.len(),
            r.elapsed.as_secs_f64()
        );
        for c in r
            .checks
            .iter()
            .filter(|c| !c.passed || std::env::var_os("SHOW_ALL").is_some())
        {
            let tag = if c.passed { "ok" } else { "FAILED" };
            println!("    [{tag}] {} — {}", c.name, c.detail);
        }
        if !r.passed {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
