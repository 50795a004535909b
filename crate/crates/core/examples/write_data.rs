//! Regenerates the bundled inputs: `cargo run -p covalg-core --example write_data [dir]`.

use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data")));
    std::fs::create_dir_all(&dir)?;
    for (name, item) in covalg::bundled::all()? {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, covalg::io::to_json_pretty(&item)?)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
