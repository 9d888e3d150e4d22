//! Full verification battery as an integration gate: one pass/fail line per
//! checked property, failing the build if any row fails.
//!
//! Run with `cargo test -p besov-core --test acceptance -- --nocapture` to
//! see the table.

use besov_core::verify::{all_passed, run_battery, VerifyConfig};

#[test]
fn verification_battery_passes() {
    let rows = run_battery(&VerifyConfig::default());
    println!(
        "{:<28} {:>13} {:>3} {:>10} {:>8}  {}",
        "check", "measured", "", "threshold", "seconds", "result"
    );
    for row in &rows {
        println!(
            "{:<28} {:>13.6e} {:>3} {:>10.3e} {:>8.2}  {}{}",
            row.id,
            row.measured,
            row.comparison.symbol(),
            row.threshold,
            row.seconds,
            if row.pass { "pass" } else { "FAIL" },
            if row.detail.is_empty() {
                String::new()
            } else {
                format!("  [{}]", row.detail)
            }
        );
    }
    let failed: Vec<&str> = rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.id.as_str())
        .collect();
    assert!(
        all_passed(&rows),
        "failing checks: {}",
        failed.join(", ")
    );
}
