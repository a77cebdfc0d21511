//! The fuzz-target properties, run on random inputs and on the seed corpora.

use std::fs;
use std::path::PathBuf;

use clap::Parser;
use proptest::prelude::*;
use qsd_cli::params::{parse_params, ParamOverrides};
use qsd_cli::table::{format_value, parse_value};
use qsd_cli::{Cli, FigureTable};

fn params_property(text: &str) {
    if let Ok(p) = parse_params(text) {
        assert_eq!(p.clone().overlay(ParamOverrides::default()), p);
    }
}

fn csv_property(data: &[u8]) {
    if let Ok(table) = FigureTable::read_csv(data) {
        let text = table.to_csv_string();
        let again = FigureTable::read_csv(text.as_bytes()).expect("own output parses");
        assert_eq!(again.to_csv_string(), text);
    }
}

fn decimal_property(v: f64) {
    let s = format_value(v);
    let back = parse_value(&s).expect("formatted values parse");
    assert_eq!(format_value(back), s);
}

fn corpus(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<_> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files.iter().map(|p| fs::read(p).unwrap()).collect()
}

#[test]
fn seed_corpora_hold() {
    for data in corpus("params") {
        params_property(std::str::from_utf8(&data).unwrap());
    }
    let tables = corpus("figure_csv");
    assert!(tables.iter().filter(|d| FigureTable::read_csv(d.as_slice()).is_ok()).count() >= 3);
    for data in tables {
        csv_property(&data);
    }
    for data in corpus("decimal") {
        if let Ok(b) = <[u8; 8]>::try_from(data.as_slice()) {
            decimal_property(f64::from_le_bytes(b));
        }
    }
    for data in corpus("cli_args") {
        let text = String::from_utf8(data).unwrap();
        let argv = std::iter::once("qsd").chain(text.split('\0'));
        assert!(Cli::try_parse_from(argv).unwrap().into_config().is_ok(), "{text:?}");
    }
}

fn param_line() -> impl Strategy<Value = String> {
    prop_oneof![
        "[a-zA-Z_]{0,8} ?= ?[-0-9.,e ]{0,12}",
        "(scenario|e_mode) = [a-z0-9-]{0,14}",
        "(theta|phi|chi|delta|lambda|mu|x|y|d|E|trials|seed|m|n) = [-0-9., ]{0,16}",
        "#.{0,10}",
        ".{0,16}",
    ]
}

fn csv_cell() -> impl Strategy<Value = String> {
    prop_oneof![
        any::<f64>().prop_map(format_value),
        "-?[0-9]{1,3}\\.?[0-9]{0,4}",
        "(true|false|yes)",
        "[ -~]{0,6}",
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn params_never_panic(lines in prop::collection::vec(param_line(), 0..8)) {
        params_property(&lines.join("\n"));
    }

    #[test]
    fn csv_reader_is_a_fixed_point(
        axes in 1usize..3,
        rows in prop::collection::vec(prop::collection::vec(csv_cell(), 5..10), 0..4),
    ) {
        let mut text = String::new();
        text.push_str(&(0..axes).map(|i| format!("a{i}")).collect::<Vec<_>>().join(","));
        text.push_str(",p_npovm,p_povm,delta_p,slack_d,slack_e,feasible\n");
        for r in rows {
            text.push_str(&r.join(","));
            text.push('\n');
        }
        csv_property(text.as_bytes());
    }

    #[test]
    fn csv_reader_accepts_arbitrary_bytes(data in prop::collection::vec(any::<u8>(), 0..200)) {
        csv_property(&data);
    }

    #[test]
    fn decimals_round_trip(v in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
        decimal_property(v);
    }

    #[test]
    fn strict_parser_never_panics(s in "[-+.0-9eE]{0,12}") {
        let _ = parse_value(&s);
    }
}
