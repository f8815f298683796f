//! The acceptance battery as a test target: every criterion runs at
//! its pinned tolerance and prints one pass/fail line.

use clumsy_cli::acceptance::{run_all, AcceptanceConfig};

#[test]
fn acceptance_criteria() {
    let outcomes = run_all(&AcceptanceConfig::default());
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).collect();
    assert!(
        failed.is_empty(),
        "failing criteria: {}",
        failed
            .iter()
            .map(|o| format!("{} ({})", o.id, o.details))
            .collect::<Vec<_>>()
            .join("; ")
    );
}
