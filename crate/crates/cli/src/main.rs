use std::process::ExitCode;

use clap::Parser;
use porc_cli::{exit, render, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("porc: {e}");
            return ExitCode::from(exit::FAILURE as u8);
        }
    }
    let (doc, mut code) = run(&cli);
    if let Some(err) = doc.diagnostics.get("error") {
        eprintln!("porc: {}", err["message"].as_str().unwrap_or("error"));
    }
    match render(&doc, cli.global.format) {
        Ok(text) => {
            let written = match &cli.global.out {
                Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("porc: {e}");
                code = exit::FAILURE;
            }
        }
        Err(e) => {
            eprintln!("porc: {e}");
            code = exit::FAILURE;
        }
    }
    ExitCode::from(code as u8)
}
