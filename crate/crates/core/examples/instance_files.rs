//! Write an instance file, load it back and drive the command-line entry
//! point in-process.

use posimod::cli::{run_from, InstanceFile};
use posimod::instances::{InstanceDescriptor, WeightedGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graph = WeightedGraph::unit(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])?;
    let file = InstanceFile::new(InstanceDescriptor::CutGraph { graph });
    let dir = std::env::temp_dir().join(format!("posimod-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("cycle.json");
    std::fs::write(&path, file.to_json())?;
    println!("wrote {} ({} bytes)", path.display(), std::fs::metadata(&path)?.len());

    let loaded = InstanceFile::load(&path)?;
    assert_eq!(loaded.to_json(), file.to_json());

    let p = path.to_str().unwrap();
    for args in [
        vec!["posimod", "verify", p],
        vec!["posimod", "min", p],
        vec!["posimod", "max", p],
        vec!["posimod", "extreme", p],
        vec!["posimod", "lowerbound", "12", "3"],
    ] {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_from(&args, &mut out, &mut err);
        print!("$ {} -> {code}\n{}", args[1..].join(" "), String::from_utf8_lossy(&out));
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
