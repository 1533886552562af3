//! `locres`: command line front end. Exit status 0 means success or a true
//! verdict, 1 a false verdict, 2 an input or precondition error.

mod args;
mod commands;
mod input;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};
use input::InputError;

fn configure_threads() -> Result<(), InputError> {
    let Ok(raw) = std::env::var("RESIDUE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| InputError::new(format!("RESIDUE_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| InputError::new(format!("cannot configure thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.command.ideal().format;
    match configure_threads().and_then(|()| commands::run(&cli.command)) {
        Ok(report) => {
            match format {
                Format::Text => print!("{}", report.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable")),
            }
            ExitCode::from(if report.verdict { 0 } else { 1 })
        }
        Err(e) => {
            if format == Format::Json {
                println!("{}", serde_json::to_string_pretty(&e.to_json()).expect("serializable"));
            }
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
