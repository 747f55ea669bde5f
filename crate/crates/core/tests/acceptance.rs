//! Runs every acceptance criterion at its pinned tolerance, printing one
//! pass/fail line per criterion.

use ptilde::selftest;

#[test]
fn acceptance_criteria() {
    let runs = selftest::run_all();
    let mut all = true;
    for r in &runs {
        println!(
            "[{}] criterion {}: {} ({} ms) — {}",
            if r.report.passed { "PASS" } else { "FAIL" },
            r.report.id,
            r.report.name,
            r.elapsed_ms,
            r.report.details
        );
        all &= r.report.passed;
    }
    assert!(all, "some acceptance criteria failed");
}
