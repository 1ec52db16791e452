//! End-to-end acceptance suite: one test per criterion, each printing
//! its pass/fail line. Run with `cargo test --test acceptance`.

use confspace::acceptance::{run_all, AcceptanceConfig};

#[test]
fn acceptance_criteria() {
    let cfg = AcceptanceConfig { mc_samples: 1_000_000, seed: 42, jobs: 4 };
    let outcomes = run_all(&cfg);
    assert_eq!(outcomes.len(), 12);
    let mut failed = Vec::new();
    for o in &outcomes {
        println!(
            "[{}] criterion {:2}: {} — {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.details
        );
        if !o.passed {
            failed.push(o.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
