//! The acceptance suite as a plain binary: one PASS/FAIL line per criterion,
//! exit status 1 if any fails. Numeric arguments select criteria
//! (`cargo test --test acceptance -- 2 7`).
//!
//! All comparisons are exact (tolerance 0). A criterion also fails when it
//! exceeds its wall-clock budget below; untimed criteria share the 5-minute
//! suite budget.

use std::process::ExitCode;

use qdiff_core::acceptance::run;

/// Seconds allowed per criterion (index = id − 1).
const BUDGET: [f64; 12] = [1.0, 10.0, 10.0, 60.0, 30.0, 60.0, 60.0, 60.0, 120.0, 60.0, 60.0, 60.0];
const SUITE_BUDGET: f64 = 300.0;

fn main() -> ExitCode {
    let ids: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).filter(|i| (1..=12).contains(i)).collect();
    let ids = if ids.is_empty() { (1..=12).collect() } else { ids };
    let mut failed = 0;
    let mut total = 0.0;
    for id in ids {
        let r = run(id);
        let budget = BUDGET[id - 1];
        let in_time = r.seconds <= budget;
        let pass = r.passed && in_time;
        total += r.seconds;
        println!(
            "criterion {:>2} [{}] {} ({:.2}s of {budget:.0}s): {}{}",
            r.id,
            if pass { "PASS" } else { "FAIL" },
            r.title,
            r.seconds,
            r.detail,
            if in_time { "" } else { " [over time budget]" }
        );
        failed += usize::from(!pass);
    }
    let suite_ok = total <= SUITE_BUDGET;
    println!(
        "acceptance: {} failed, total {total:.1}s of {SUITE_BUDGET:.0}s{}",
        failed,
        if suite_ok { "" } else { " [over suite budget]" }
    );
    if failed == 0 && suite_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
