//! Replays the checked-in fuzz seeds through the fuzz targets' assertions,
//! so they run on stable without cargo-fuzz.

use std::fs;
use std::path::PathBuf;

use mobius_core::*;

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|f| fs::read_to_string(f.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn poly_seeds() {
    for s in seeds("parse_poly") {
        for ix in [Indexing::OneBased, Indexing::ZeroBased] {
            match parse_poly(&s, ix) {
                Ok(e) => {
                    let text = e.to_text(ix);
                    assert_eq!(parse_poly(&text, ix).unwrap().to_text(ix), text);
                }
                Err(err) => assert!(err.span.start <= err.span.end && err.span.end <= s.len()),
            }
        }
    }
}

#[test]
fn dense_seeds() {
    let mut parsed = 0;
    for s in seeds("parse_dense") {
        if let Ok(d) = parse_dense(&s) {
            assert_eq!(parse_dense(&serialize_dense(&d)).unwrap(), d);
            assert_eq!(parse_dense(&serialize_dense_hex(&d)).unwrap(), d);
            parsed += 1;
        }
    }
    assert!(parsed >= 3);
}

#[test]
fn corpus_seeds() {
    for s in seeds("parse_corpus") {
        let c = parse_corpus(&s, Indexing::OneBased).unwrap();
        assert!(c.nvars() >= c.expr.min_vars());
        assert!(parse_poly(&c.expr.to_text(c.indexing), c.indexing).is_ok());
    }
}
