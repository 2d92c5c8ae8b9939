//! Command-line front end: graph generation, solving, parameter sweeps and
//! verification, with JSON and CSV run records.

pub mod args;
pub mod commands;
pub mod error;
pub mod record;
pub mod source;
pub mod suites;

use args::{Cli, Command};
use error::{CliError, CliResult};

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Gen(a) => commands::cmd_gen(a),
        Command::Solve(a) => commands::cmd_solve(a),
        Command::Sweep(a) => commands::cmd_sweep(a),
        Command::Verify(a) => {
            let checks = suites::run(a);
            for c in &checks {
                println!("{c}");
            }
            let failed = checks.iter().filter(|c| !c.pass).count();
            if failed > 0 {
                return Err(CliError::Failed(format!("{failed} of {} checks failed", checks.len())));
            }
            Ok(())
        }
    }
}
