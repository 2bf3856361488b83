use std::collections::BTreeMap;
use std::io::{Read, Write};

use mobius_core::fastpath::WeightRoute;
use mobius_core::{
    dense_to_sparse, fast_weight, mu_dense, mu_full, weight_naive, AlgoChoice, Role,
};

use crate::args::{MethodArg, WeightArgs};
use crate::error::CliError;
use crate::input::{classify, read_source, Input};

pub fn run(
    args: &WeightArgs,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let text = read_source(args.input.input.as_deref(), stdin)?;
    let input = classify(&text, args.input.indexing.into(), args.input.n)?;
    let w: u128 = match input {
        Input::Dense(d) if d.role() == Role::TruthTable => u128::from(d.count_ones()),
        Input::Dense(d) => match args.method {
            MethodArg::Naive => u128::from(weight_naive(&dense_to_sparse(&d)?)?),
            method => {
                if method == MethodArg::Fastpath {
                    writeln!(stderr, "warning: a dense ANF has no factored form; using the transform")?;
                }
                u128::from(mu_dense(&d, AlgoChoice::Auto)?.0.count_ones())
            }
        },
        Input::Poly { expr, nvars, .. } => match args.method {
            MethodArg::Naive => u128::from(weight_naive(&expr.expand(nvars)?)?),
            MethodArg::Transform => mu_full(&expr.expand(nvars)?, AlgoChoice::Auto)?.0.len() as u128,
            MethodArg::Fastpath => {
                let fast = fast_weight(&expr, nvars)?;
                match &fast.route {
                    WeightRoute::Family(f) => writeln!(stderr, "family: {f}")?,
                    WeightRoute::Summandwise { matched, fallback } => {
                        if matched.is_empty() {
                            writeln!(stderr, "warning: no closed form matched; used the general transform")?;
                        } else {
                            let mut counts = BTreeMap::new();
                            for f in matched {
                                *counts.entry(*f).or_insert(0usize) += 1;
                            }
                            let parts: Vec<String> =
                                counts.iter().map(|(f, c)| format!("{c} {f}")).collect();
                            writeln!(stderr, "family: summand-wise ({})", parts.join(", "))?;
                            if *fallback > 0 {
                                writeln!(
                                    stderr,
                                    "warning: {fallback} block(s) had no closed form; used the general transform for them"
                                )?;
                            }
                        }
                    }
                }
                if let Some(published) = fast.as_published.filter(|&p| p != fast.weight) {
                    writeln!(stderr, "note: the published formula gives {published}")?;
                }
                fast.weight
            }
        },
    };
    writeln!(stdout, "{w}")?;
    Ok(())
}
