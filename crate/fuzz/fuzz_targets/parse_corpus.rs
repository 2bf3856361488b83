#![no_main]

use libfuzzer_sys::fuzz_target;
use mobius_core::{parse_corpus, parse_poly, Indexing};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_corpus(s, Indexing::OneBased) {
        assert!(c.nvars() >= c.expr.min_vars());
        let text = c.expr.to_text(c.indexing);
        assert!(parse_poly(&text, c.indexing).is_ok());
    }
});
