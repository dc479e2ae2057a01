use std::process::ExitCode;

use clap::Parser;
use cnlwiki_cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match cnlwiki_cli::run(cli, &mut stdout.lock()) {
        Ok(code) => code.into(),
        Err(e) => {
            eprintln!("cnlwiki: {e}");
            e.exit_code().into()
        }
    }
}
