//! `qdef`: one-shot queries against the qdef decision procedures.

mod args;
mod commands;
mod render;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Format};
use render::{render_error, render_result};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(bits) = cli.factor_bits {
        qdef::arith::set_factor_bit_limit(bits);
    }
    let start = Instant::now();
    let name = cli.command.name();
    match commands::run(&cli.command) {
        Ok(mut result) => {
            result.elapsed = start.elapsed().as_secs_f64();
            print!("{}", render_result(&result, cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.format == Format::Json {
                print!("{}", render_error(&name, &e, code));
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}

fn exit_code(e: &qdef::Error) -> u8 {
    if e.is_resource_limit() {
        3
    } else if e.is_hypothesis_violation() {
        4
    } else {
        2
    }
}
