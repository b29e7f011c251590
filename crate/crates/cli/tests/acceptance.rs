//! One line per acceptance criterion; the target fails if any criterion does.

use germkit_cli::acceptance::{criterion, CRITERIA, DEFAULT_SEED};

fn main() {
    let mut failed = Vec::new();
    for (id, _) in CRITERIA {
        let o = criterion(id, DEFAULT_SEED);
        println!("{}", o.line());
        if !o.passed {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
