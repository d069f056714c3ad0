//! Runs every acceptance criterion and prints one line per criterion.

use std::process::ExitCode;

use gstruct::verify::{run_criterion, VerifyConfig, CRITERIA};

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut failed = Vec::new();
    for (id, _) in CRITERIA {
        let r = run_criterion(id, &cfg);
        println!("{r}");
        if !r.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
