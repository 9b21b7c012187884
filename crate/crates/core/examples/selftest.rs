//! Runs the acceptance battery in-process and prints one line per item.

use tckit::acceptance::{run_all, DEFAULT_SEED};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    for outcome in run_all(seed) {
        println!("{outcome}");
    }
}
