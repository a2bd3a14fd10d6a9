//! One PASS/FAIL line per acceptance criterion.
//!
//! Failures against documented misprints in the reference values are
//! reported as FAIL with an `[erratum]` tag; the binary exits non-zero only
//! on other failures.

use knotjet::verify::acceptance_suite;

fn main() {
    let suite = acceptance_suite();
    let mut unexpected = 0;
    for c in &suite {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        let err = if !c.pass && c.erratum {
            " [erratum]"
        } else {
            ""
        };
        println!("{tag} {:<16} {}{err}", c.id, c.title);
        for n in &c.notes {
            println!("     {n}");
        }
        if !c.pass && !c.erratum {
            unexpected += 1;
        }
    }
    let passed = suite.iter().filter(|c| c.pass).count();
    println!(
        "acceptance: {passed}/{} passed, {unexpected} unexpected failure(s)",
        suite.len()
    );
    if unexpected > 0 {
        std::process::exit(1);
    }
}
