use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qsd_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    let code = match cli.into_config() {
        Ok(config) => run(&config, &mut out, &mut err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
