//! Front end for the `valgroups` binary: one-shot commands and session
//! scripts over the library.

pub mod args;
pub mod error;
pub mod script;
pub mod session;

use std::io::{Read, Write};

use args::{Cli, TopCommand};
pub use error::CliError;
pub use script::run_script;
pub use session::Session;

/// Executes parsed arguments, writing results to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let mut session = Session::new(cli.order, cli.seed, cli.json);
    match &cli.command {
        TopCommand::Op(op) => session.execute(op, out),
        TopCommand::Run { script } => {
            let text = if script.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| CliError::user(format!("cannot read standard input: {e}")))?;
                s
            } else {
                std::fs::read_to_string(script)
                    .map_err(|e| CliError::user(format!("cannot read {}: {e}", script.display())))?
            };
            run_script(&text, &mut session, out)
        }
    }
}
