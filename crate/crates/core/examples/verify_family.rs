//! Load a family file, run every algorithm and oracle, print the report.
//!
//! `cargo run --example verify_family -- family.json`

use convex_chroma::cli::{cmd_verify, RunConfig};
use convex_chroma::constructions::pentagon_family;
use convex_chroma::Family;

fn main() -> convex_chroma::Result<()> {
    let family = match std::env::args().nth(1) {
        Some(path) => Family::from_json(&std::fs::read_to_string(path)?)?,
        None => pentagon_family(2)?,
    };
    let report = cmd_verify(&family, &RunConfig { samples: 20_000, ..RunConfig::default() })?;
    for check in &report.checks {
        println!("{:5} {:28} {}", if check.holds { "ok" } else { "FAIL" }, check.name, check.detail);
    }
    println!("exit code {}", report.exit_code);
    Ok(())
}
