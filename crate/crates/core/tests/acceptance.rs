//! Runs every acceptance criterion and prints one pass/fail line each.

use ncfn::suite::{criterion_count, run_all};

#[test]
fn acceptance_criteria() {
    let seed = std::env::var("NC_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
    println!();
    let reports = run_all(seed);
    assert_eq!(reports.len(), criterion_count());
    for r in &reports {
        println!("{}  [{:.2} s]", r.line(), r.elapsed.as_secs_f64());
    }
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
