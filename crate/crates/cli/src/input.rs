use std::io::Read;
use std::path::Path;

use mobius_core::{parse_corpus, parse_dense, DenseForm, FactoredExpr, Indexing, MAX_VARS};

use crate::error::CliError;

/// A parsed input, in whichever form it came.
#[derive(Debug, Clone)]
pub enum Input {
    Dense(DenseForm),
    Poly {
        expr: FactoredExpr,
        nvars: u32,
        indexing: Indexing,
    },
}

impl Input {
    pub fn nvars(&self) -> u32 {
        match self {
            Input::Dense(d) => d.n(),
            Input::Poly { nvars, .. } => *nvars,
        }
    }
}

pub fn read_source(path: Option<&Path>, stdin: &mut dyn Read) -> Result<String, CliError> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn is_dense(text: &str) -> bool {
    let t = text.trim_start();
    t.starts_with("anf:") || t.starts_with("tt:")
}

/// Parses `text`; `n` overrides the declared or implied variable count.
pub fn classify(text: &str, indexing: Indexing, n: Option<u32>) -> Result<Input, CliError> {
    if let Some(n) = n {
        if n > MAX_VARS {
            return Err(CliError::Capacity(format!(
                "{n} variables exceeds the limit of {MAX_VARS}"
            )));
        }
    }
    if is_dense(text) {
        let d = parse_dense(text).map_err(|e| CliError::parse(e, text))?;
        if let Some(n) = n.filter(|&n| n != d.n()) {
            return Err(CliError::Usage(format!(
                "--n {n} disagrees with the {}-variable dense input",
                d.n()
            )));
        }
        return Ok(Input::Dense(d));
    }
    let corpus = parse_corpus(text, indexing).map_err(|e| CliError::parse(e, text))?;
    let used = corpus.expr.min_vars();
    let nvars = n.unwrap_or_else(|| corpus.nvars());
    if nvars < used {
        return Err(CliError::Usage(format!(
            "the expression uses {used} variables but n is {nvars}"
        )));
    }
    Ok(Input::Poly {
        expr: corpus.expr,
        nvars,
        indexing: corpus.indexing,
    })
}
