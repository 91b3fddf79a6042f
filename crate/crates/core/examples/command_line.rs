//! Building a command record, running it and replaying it from its output.

use clap::Parser;
use splitdyn::cli::{render, run, Command};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cmd = Command::try_parse_from(["splitdyn", "--seed", "5", "periodic-points", "--map", "x^2 - 1", "--period", "2"])?;
    let out = run(&cmd)?;
    print!("{}", String::from_utf8(render(&cmd, &out).stdout)?);
    let replay: Command = serde_json::from_value(out.document["command"].clone())?;
    println!("replayed identically: {}", run(&replay)? == out);
    Ok(())
}
