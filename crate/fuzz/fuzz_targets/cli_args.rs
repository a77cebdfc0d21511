#![no_main]

use clap::Parser;
use libfuzzer_sys::fuzz_target;
use qsd_cli::Cli;

// Arguments are NUL-separated. Only parsing and validation run; no command executes.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let argv = std::iter::once("qsd").chain(text.split('\0'));
    if let Ok(cli) = Cli::try_parse_from(argv) {
        let _ = cli.into_config();
    }
});
