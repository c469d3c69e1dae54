//! Acceptance criteria 1 to 10, one PASS/FAIL line each. Runs without the
//! libtest harness so the lines are always printed; the process fails if
//! any criterion does.

use siegelkit_cli::config::RunConfig;
use siegelkit_cli::suites;

fn main() {
    let cfg = RunConfig::default();
    let verbose = std::env::args().any(|a| a == "--verbose");
    let mut failed = Vec::new();
    for id in 1..=10 {
        let o = suites::run_criterion(id, &cfg);
        println!("{}", o.line());
        if verbose || !o.pass {
            for n in &o.notes {
                println!("    {n}");
            }
        }
        if !o.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: 10/10 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
