//! One line per acceptance criterion; exits nonzero if any fails.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! Optional numeric arguments select criteria, e.g.
//! `cargo test --test acceptance -- 6 9`.

use std::process::ExitCode;

use subeq::suite::run_criterion;

fn main() -> ExitCode {
    let mut ids: Vec<u8> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    if ids.is_empty() {
        ids = (1..=10).collect();
    }
    let mut failed = 0;
    for id in ids {
        match run_criterion(id) {
            Ok(r) => {
                println!("{}", r.line());
                failed += !r.passed as usize;
            }
            Err(e) => {
                println!("criterion {id:>2}: FAIL {e}");
                failed += 1;
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
