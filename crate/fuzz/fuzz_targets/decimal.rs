#![no_main]

use libfuzzer_sys::fuzz_target;
use qsd_cli::table::{format_value, parse_value};

fuzz_target!(|data: &[u8]| {
    if let Ok(bytes) = <[u8; 8]>::try_from(data) {
        let v = f64::from_le_bytes(bytes);
        if v.is_finite() {
            let s = format_value(v);
            let back = parse_value(&s).expect("formatted values parse");
            assert_eq!(format_value(back), s);
        }
    } else if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_value(s);
    }
});
