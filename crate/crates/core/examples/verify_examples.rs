//! Runs every worked-example check and prints the report.
use slicereg::verify::verify_paper_examples;

fn main() {
    let report = verify_paper_examples();
    for c in &report.checks {
        println!(
            "{} {} {:.2e}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.residual
        );
    }
    for n in &report.notes {
        println!("NOTE {} {}", n.name, n.detail);
    }
    std::process::exit(if report.passed() { 0 } else { 1 });
}
