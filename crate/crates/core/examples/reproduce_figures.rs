//! Builds every figure panel with the default configuration and writes the
//! CSV files plus a checksum manifest.
//!
//! ```text
//! cargo run --example reproduce_figures -- out/figures
//! ```

use std::path::PathBuf;

use quenchkit::cli::commands::{figures, write_figures};
use quenchkit::cli::{RawConfig, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map_or_else(|| PathBuf::from("out/figures"), PathBuf::from);
    let cfg = RunConfig::from_raw(&RawConfig::with_defaults())?;
    let artifacts = figures(&cfg)?;
    for a in &artifacts {
        println!("{:<16} {:>4} rows", a.name, a.table.len());
    }
    for path in write_figures(&dir, &artifacts, true)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
