#![no_main]

use libfuzzer_sys::fuzz_target;
use qsd_cli::params::{parse_params, ParamOverrides};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_params(text) {
        assert_eq!(p.clone().overlay(ParamOverrides::default()), p);
    }
});
