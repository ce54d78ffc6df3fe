//! Run the seeded conformance suites against the 2x2 complex matrix oracle.

use ga_tss::conformance;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let report = conformance::run(seed, 500);
    println!("seed {}", report.seed);
    for s in &report.suites {
        println!("{s}");
    }
    if !report.all_passed() {
        std::process::exit(2);
    }
}
