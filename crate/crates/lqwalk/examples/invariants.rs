//! Run the full cross-validation battery through the library API — the
//! same checks as `lqwalk verify` — and print one line per check.
//!
//! Run with: cargo run --release --example invariants

use lqwalk::verify::{all_passed, run_all_checks};

fn main() -> std::process::ExitCode {
    let reports = run_all_checks();
    for report in &reports {
        let status = if report.passed { "PASS" } else { "FAIL" };
        println!("{status}  {:<22} {}", report.name, report.detail);
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    println!("{passed}/{} checks passed", reports.len());
    if all_passed(&reports) {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
