#![no_main]

use libfuzzer_sys::fuzz_target;
use qsd_cli::FigureTable;

fuzz_target!(|data: &[u8]| {
    // anything accepted must re-serialize to a fixed point
    if let Ok(table) = FigureTable::read_csv(data) {
        let text = table.to_csv_string();
        let again = FigureTable::read_csv(text.as_bytes()).expect("own output parses");
        assert_eq!(again.to_csv_string(), text);
    }
});
