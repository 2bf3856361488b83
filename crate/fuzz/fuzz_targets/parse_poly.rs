#![no_main]

use libfuzzer_sys::fuzz_target;
use mobius_core::{parse_poly, Indexing};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    for ix in [Indexing::OneBased, Indexing::ZeroBased] {
        match parse_poly(s, ix) {
            Ok(e) => {
                let text = e.to_text(ix);
                let again = parse_poly(&text, ix).expect("printed form must parse");
                assert_eq!(again.to_text(ix), text);
            }
            Err(err) => assert!(err.span.start <= err.span.end && err.span.end <= s.len()),
        }
    }
});
