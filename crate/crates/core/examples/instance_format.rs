//! Reading and writing JSON instance documents, then driving the CLI layer
//! in-process.

use clap::Parser;
use thrifty::cli::{execute, Cli};
use thrifty::format::{instance_to_json, parse_instance};

const DOC: &str = r#"{
  "problem": "steinerforest",
  "schedule": {"T": 1, "k": [2, 1], "lambda": ["1", "3"]},
  "graph": {"n": 4, "edges": [[0, 1, "2"], [1, 2, "1/2"], [2, 3, "5"]], "pairs": [[0, 2], [1, 3]]}
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let instance = parse_instance(DOC)?;
    println!("ground units {:?}", instance.ground_units());
    let text = instance_to_json(&instance);
    assert_eq!(parse_instance(&text)?, instance);

    let path = std::env::temp_dir().join("thrifty-example-forest.json");
    std::fs::write(&path, text)?;
    for sub in ["solve", "oracle", "compare"] {
        let cli = Cli::parse_from(["thrifty", sub, path.to_str().unwrap()]);
        let mut out = Vec::new();
        let code = execute(&cli, &mut out).map_err(|f| f.message)?;
        print!("{sub} (exit {code}): {}", String::from_utf8(out)?);
    }
    Ok(())
}
