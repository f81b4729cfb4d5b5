use std::process::ExitCode;

use clap::Parser;
use sethom::cli::{default_format, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.unwrap_or_else(|| default_format(&cli.command));
    let rendered = run(&cli).and_then(|r| r.render(format).map(|s| (r.passed, s)));
    match rendered {
        Ok((passed, text)) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            print!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
