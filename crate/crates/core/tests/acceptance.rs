//! One line per acceptance criterion; exits non-zero if any fails.

use coclass::suites::{run_suite, Suite, SuiteConfig};
use std::process::ExitCode;
use std::time::Instant;

const CRITERIA: [(Suite, &str); 9] = [
    (Suite::Consistency, "presentation consistency and orders, e 2..6, c 3..8"),
    (Suite::Invariants, "cl, cl_p, cc, cc_p on the same grid"),
    (Suite::Patterns, "rank distribution and kernel types by named type"),
    (Suite::Laws, "parent and p-parent propagation laws, e 3..5, i 1..4"),
    (Suite::Bifurcation, "nuclear rank 2 and descendant lists, e 3 and 4"),
    (Suite::Periodicity, "branch period 2 and cardinalities, e 3..5"),
    (Suite::Class2, "class-2 chain to e 5 and root parents"),
    (Suite::Exhaustion, "every grid vertex with e <= 4, i <= 3 reached from the root"),
    (Suite::Properties, "axiom fuzzing, transfers, quotient orders, canonical forms"),
];

fn main() -> ExitCode {
    let cfg = SuiteConfig { seed: 0x5eed, ..Default::default() };
    let mut all_passed = true;
    for (k, (suite, what)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let (passed, detail) = match run_suite(*suite, &cfg) {
            Ok(r) => {
                for c in r.failures() {
                    eprintln!("  [{}] {}: {}", c.law, c.subject, c.detail);
                }
                (r.passed(), format!("{} checks, {} failed", r.checks.len(), r.failures().len()))
            }
            Err(e) => (false, format!("error: {e}")),
        };
        all_passed &= passed;
        println!(
            "criterion {}: {} {} ({}; {:.1}s)",
            k + 1,
            if passed { "PASS" } else { "FAIL" },
            what,
            detail,
            start.elapsed().as_secs_f64()
        );
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
