use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use splitdyn::cli::{render, run, Command};

fn main() -> ExitCode {
    let cmd = Command::parse();
    if let Some(n) = cmd.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("splitdyn: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match run(&cmd) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("splitdyn {}: {e}", cmd.action.name());
            return ExitCode::from(2);
        }
    };
    let rendered = render(&cmd, &out);
    if let Some((path, bytes)) = &rendered.file {
        if let Err(e) = std::fs::write(path, bytes) {
            eprintln!("splitdyn: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(&rendered.stdout).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    if out.failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
