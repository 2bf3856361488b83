use std::io::{Read, Write};

use mobius_core::{
    mu_dense, mu_full, serialize_dense, serialize_dense_hex, serialize_poly, sparse_to_dense,
    AlgoChoice, DenseForm, Indexing, Monomial, OpCounter, Role, SparsePoly,
};

use crate::args::{OutArg, TransformArgs};
use crate::error::CliError;
use crate::input::{classify, read_source, Input};

pub fn run(
    args: &TransformArgs,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let text = read_source(args.input.input.as_deref(), stdin)?;
    let input = classify(&text, args.input.indexing.into(), args.input.n)?;
    let algo: AlgoChoice = args.algo.into();
    let (line, ops, used) = match input {
        Input::Dense(d) => {
            let (img, ops) = mu_dense(&d, algo)?;
            let used = algo.resolve_dense();
            let out = args.out.unwrap_or(match img.role() {
                Role::Anf => OutArg::Anf,
                Role::TruthTable => OutArg::Tt,
            });
            let line = match out {
                OutArg::Poly => serialize_poly(&to_poly(&img), Indexing::OneBased),
                dense => render_dense(&img, dense, args.hex)?,
            };
            (line, ops, used)
        }
        Input::Poly { expr, nvars, indexing } => {
            let p = expr.expand(nvars)?;
            let used = algo.resolve_sparse(&p);
            let (img, ops) = mu_full(&p, algo)?;
            let line = match args.out.unwrap_or(OutArg::Poly) {
                OutArg::Poly => serialize_poly(&img, indexing),
                dense => {
                    let d = sparse_to_dense(&img)?.with_role(Role::TruthTable);
                    render_dense(&d, dense, args.hex)?
                }
            };
            (line, ops, used)
        }
    };
    writeln!(stdout, "{line}")?;
    if args.stats {
        report_stats(stderr, used, &ops)?;
    }
    Ok(())
}

fn to_poly(d: &DenseForm) -> SparsePoly {
    let monomials = d.iter_ones().map(|k| Monomial::from_mask(k as u64));
    SparsePoly::from_monomials(d.n(), monomials).expect("indices fit in n bits")
}

fn render_dense(d: &DenseForm, out: OutArg, hex: bool) -> Result<String, CliError> {
    let want = if out == OutArg::Anf { Role::Anf } else { Role::TruthTable };
    if d.role() != want {
        return Err(CliError::Usage(format!(
            "the transform here is {} {}; use --out {} or --out poly",
            if d.role() == Role::Anf { "an" } else { "a" },
            d.role(),
            d.role().prefix()
        )));
    }
    Ok(if hex { serialize_dense_hex(d) } else { serialize_dense(d) })
}

fn report_stats(stderr: &mut dyn Write, algo: AlgoChoice, ops: &OpCounter) -> std::io::Result<()> {
    write!(stderr, "{}: {} {}", algo.name(), ops.total(), ops.unit)?;
    if ops.used_complement {
        write!(stderr, " (via complement)")?;
    }
    writeln!(stderr)
}
