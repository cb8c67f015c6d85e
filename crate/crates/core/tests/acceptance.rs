//! Runs every acceptance criterion and prints one line per criterion.
//!
//! AC8 is a known failure: A(q) and D(q^{±1}) are isomorphic for q ≠ 1,
//! and the check reports the verified witnesses. The target fails if any
//! other criterion fails, or if AC8 starts passing.

use std::process::ExitCode;

use meshcy::battery::{run_all, DEFAULT_SEED};

const KNOWN_FAILURES: &[u8] = &[8];

fn main() -> ExitCode {
    let seed = std::env::var("MESHCY_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    println!("acceptance battery, seed {seed}");
    let mut unexpected = Vec::new();
    for report in run_all(seed) {
        println!("{report} [{:.2}s]", report.elapsed.as_secs_f64());
        let known = KNOWN_FAILURES.contains(&report.id);
        if report.passed == known {
            unexpected.push(report.id);
        }
    }
    if unexpected.is_empty() {
        println!("all criteria as expected (known failures: AC8)");
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for: {unexpected:?}");
        ExitCode::FAILURE
    }
}
