//! Sampling stability of the error-rate estimates.

use givens::harness::{run_accuracy_comparison, ComponentCounts};
use givens::FormatKind;

#[test]
fn zero_ulp_rate_is_stable_from_1e6_to_1e7() {
    let small = run_accuracy_comparison(1_000_000, FormatKind::Binary32, 42).unwrap();
    let large = run_accuracy_comparison(10_000_000, FormatKind::Binary32, 42).unwrap();
    for (a, b) in small.iter().zip(&large) {
        let pairs: [(&ComponentCounts, &ComponentCounts); 2] = [(&a.cosine, &b.cosine), (&a.sine, &b.sine)];
        for (x, y) in pairs {
            let gap = (x.pct(0) - y.pct(0)).abs();
            assert!(gap <= 0.2, "{}: {:.3} vs {:.3}", a.algo, x.pct(0), y.pct(0));
        }
    }
}
