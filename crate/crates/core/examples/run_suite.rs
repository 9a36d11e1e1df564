//! Runs one verification suite from the command line:
//! `cargo run --example run_suite -- weil`

use greenberg_core::verify::{render_summary, run_suites, VerifyConfig};

fn main() {
    let cfg = VerifyConfig::default();
    let name = std::env::args().nth(1).unwrap_or_else(|| "all".into());
    let t0 = std::time::Instant::now();
    match run_suites(&name, &cfg) {
        Ok(reports) => {
            print!("{}", render_summary(&reports));
            for r in &reports {
                for c in r.cells.iter().filter(|c| !c.pass) {
                    println!("  FAIL {}/{}: {}", r.suite, c.key, c.detail);
                }
            }
            eprintln!("elapsed: {:.2?}", t0.elapsed());
            if reports.iter().any(|r| !r.passed()) {
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("suite error: {e}");
            std::process::exit(2);
        }
    }
}
