//! Rewrites the example documents next to this file from the core catalog.
//!
//! cargo run -p wfilt-cli --example regenerate

use std::path::Path;

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
    for (name, doc) in wfilt_core::catalog::all() {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, doc.to_canonical_string())?;
        println!("{}", path.display());
    }
    Ok(())
}
