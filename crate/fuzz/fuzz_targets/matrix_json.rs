#![no_main]

use libfuzzer_sys::fuzz_target;
use opmeans::io::{parse_matrix_json, write_matrix_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(m) = parse_matrix_json(text) else {
        return;
    };
    let written = write_matrix_json(&m);
    let back = parse_matrix_json(&written).expect("writer output must parse");
    assert_eq!(back, m, "matrix changed across write/parse");
    assert_eq!(write_matrix_json(&back), written);
});
