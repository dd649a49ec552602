//! Instance files: write a generated instance to JSON, read it back, and
//! confirm the round trip is lossless.
//!
//! ```bash
//! cargo run -p sepsolve --example instance_files
//! ```

use sepsolve::io::{instance_file_from_spec, load_instance, save_instance};
use sepsolve::{InstanceSpec, Variant};

fn main() -> sepsolve::Result<()> {
    let spec = InstanceSpec::new(
        6,
        4,
        123,
        Variant::Scep {
            components_c: 2,
            components_q: 2,
        },
    );
    let file = instance_file_from_spec(&spec)?;

    let dir = std::env::temp_dir();
    let path = dir.join("sepsolve_example_instance.json");
    save_instance(&path, &file)?;
    let bytes = std::fs::metadata(&path)?.len();
    println!("wrote {} ({bytes} bytes)", path.display());

    let loaded = load_instance(&path)?;
    println!("loaded spec: {:?}", loaded.spec);
    println!("lossless round trip: {}", loaded == file);

    std::fs::remove_file(&path)?;
    Ok(())
}
