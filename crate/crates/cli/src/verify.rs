//! Differential testing of every transform against the oracle.

use std::io::Write;

use mobius_core::{
    mobius_naive, mu_dense, mu_full, serialize_dense, sparse_to_dense, AlgoChoice, Monomial,
    Result as CoreResult, SparsePoly, ORACLE_MAX_VARS,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::VerifyArgs;
use crate::error::CliError;

/// Largest `n` for which every function is enumerated.
pub const EXHAUSTIVE_MAX_VARS: u32 = 4;

/// A named transform under test.
pub struct Candidate {
    pub name: String,
    pub run: Box<dyn Fn(&SparsePoly) -> CoreResult<SparsePoly>>,
}

/// Every algorithm through both entry points.
pub fn candidates() -> Vec<Candidate> {
    let mut out = Vec::new();
    for algo in AlgoChoice::CONCRETE {
        out.push(Candidate {
            name: algo.name().to_owned(),
            run: Box::new(move |p| Ok(mu_full(p, algo)?.0)),
        });
        out.push(Candidate {
            name: format!("{}/dense", algo.name()),
            run: Box::new(move |p| {
                let (d, _) = mu_dense(&sparse_to_dense(p)?, algo)?;
                let monomials = d.iter_ones().map(|k| Monomial::from_mask(k as u64));
                SparsePoly::from_monomials(p.nvars(), monomials)
            }),
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub n: u32,
    pub functions: u64,
    pub candidates: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub candidate: String,
    pub index: u64,
    pub input: String,
    pub expected: String,
    pub got: String,
}

/// Uniform functions up to ten variables; above that a few dozen random
/// monomials, which keeps the oracle affordable.
pub fn sample(rng: &mut ChaCha8Rng, n: u32) -> SparsePoly {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let monomials: Vec<Monomial> = if n <= 10 {
        (0..1u64 << n)
            .filter(|_| rng.random_bool(0.5))
            .map(Monomial::from_mask)
            .collect()
    } else {
        (0..rng.random_range(0..48))
            .map(|_| Monomial::from_mask(rng.random::<u64>() & full))
            .collect()
    };
    SparsePoly::from_monomials(n, monomials).expect("masks fit in n bits")
}

fn dense_text(p: &SparsePoly) -> String {
    sparse_to_dense(p).map_or_else(|_| p.to_string(), |d| serialize_dense(&d))
}

/// Runs every candidate on the inputs and stops at the first disagreement.
pub fn check(
    n: u32,
    inputs: impl Iterator<Item = SparsePoly>,
    candidates: &[Candidate],
) -> Result<Summary, CliError> {
    let mut functions = 0;
    for (index, p) in inputs.enumerate() {
        let expected = mobius_naive(&p)?;
        for c in candidates {
            let got = (c.run)(&p)?;
            if got != expected {
                let d = Divergence {
                    candidate: c.name.clone(),
                    index: index as u64,
                    input: dense_text(&p),
                    expected: dense_text(&expected).replacen("anf:", "tt:", 1),
                    got: dense_text(&got).replacen("anf:", "tt:", 1),
                };
                return Err(CliError::Divergence(format!(
                    "divergence: {} on function #{} {}: expected {}, got {}",
                    d.candidate, d.index, d.input, d.expected, d.got
                )));
            }
        }
        functions += 1;
    }
    Ok(Summary {
        n,
        functions,
        candidates: candidates.len(),
    })
}

pub fn run(args: &VerifyArgs, stdout: &mut dyn Write, candidates: &[Candidate]) -> Result<(), CliError> {
    let n = args.n;
    if n > ORACLE_MAX_VARS {
        return Err(CliError::Capacity(format!(
            "verify compares against brute force, limited to n <= {ORACLE_MAX_VARS}"
        )));
    }
    let summary = if args.exhaustive {
        if n > EXHAUSTIVE_MAX_VARS {
            return Err(CliError::Usage(format!(
                "--exhaustive is limited to n <= {EXHAUSTIVE_MAX_VARS}"
            )));
        }
        let inputs = (0..1u64 << (1u32 << n)).map(move |code| {
            let monomials = (0..1u64 << n)
                .filter(|k| code >> k & 1 == 1)
                .map(Monomial::from_mask);
            SparsePoly::from_monomials(n, monomials).expect("masks fit in n bits")
        });
        check(n, inputs, candidates)?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let inputs = (0..args.samples).map(move |_| sample(&mut rng, n));
        check(n, inputs, candidates)?
    };
    writeln!(
        stdout,
        "ok: n={} functions={} candidates={} divergences=0",
        summary.n, summary.functions, summary.candidates
    )?;
    Ok(())
}
