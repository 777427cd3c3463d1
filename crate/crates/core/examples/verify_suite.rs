//! Runs the per-ideal checks over every ideal of a small system.
//!
//! cargo run --release --example verify_suite -- C 3

use std::sync::Arc;

use quasichar::verify::check_ideal;
use quasichar::{build_positive_system, enumerate_ideals, Oracle, RootType};

fn main() -> quasichar::Result<()> {
    let mut args = std::env::args().skip(1);
    let t: RootType = args.next().as_deref().unwrap_or("B").parse()?;
    let l: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let sys = Arc::new(build_positive_system(t, l)?);
    let oracle = Oracle::default();
    let (mut ok, mut total) = (0, 0);
    for ideal in enumerate_ideals(&sys) {
        let report = check_ideal(&ideal, &oracle)?;
        total += 1;
        if report.passed() {
            ok += 1;
        } else {
            println!("FAIL {ideal}: {:?}", report.failures);
        }
    }
    println!("{t}{l}: {ok}/{total} ideals pass");
    Ok(())
}
