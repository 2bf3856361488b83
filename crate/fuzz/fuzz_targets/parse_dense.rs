#![no_main]

use libfuzzer_sys::fuzz_target;
use mobius_core::{parse_dense, serialize_dense, serialize_dense_hex};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(d) = parse_dense(s) {
        assert_eq!(parse_dense(&serialize_dense(&d)).unwrap(), d);
        assert_eq!(parse_dense(&serialize_dense_hex(&d)).unwrap(), d);
    }
});
