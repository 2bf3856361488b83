use std::io::{Read, Write};
use std::time::Instant;

use mobius_core::fastpath::{butterfly_ops, estimate_ops};
use mobius_core::{
    fast_weight, mobius_list_ordered, mobius_naive, mu_full, parse_corpus, AlgoChoice, Corpus,
    FactoredExpr, Indexing, Monomial, OpCounter, SparsePoly, ACHTERBAHN_CORPUS, DENSE_MAX_VARS,
    ORACLE_MAX_VARS,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{BenchArgs, CorpusArg};
use crate::error::CliError;
use crate::input::{classify, read_source, Input};
use crate::report::BenchReport;
use crate::verify::sample;

const RANDOM_DEFAULT_VARS: u32 = 8;

struct Case {
    label: String,
    expr: FactoredExpr,
    poly: SparsePoly,
    indexing: Indexing,
}

fn sum_of(p: &SparsePoly) -> FactoredExpr {
    FactoredExpr::Sum(p.monomials().iter().map(|m| FactoredExpr::Mono(*m)).collect())
}

fn cases(args: &BenchArgs, stdin: &mut dyn Read) -> Result<Vec<Case>, CliError> {
    let given = match (&args.input, &args.expr) {
        (Some(path), _) => Some((read_source(Some(path), stdin)?, path.display().to_string())),
        (None, Some(text)) => Some((text.clone(), format!("expr:{}", text.trim()))),
        (None, None) => None,
    };
    if let Some((text, label)) = given {
        let case = match classify(&text, args.indexing.into(), args.n)? {
            Input::Dense(d) => {
                let monomials = d.iter_ones().map(|k| Monomial::from_mask(k as u64));
                let poly = SparsePoly::from_monomials(d.n(), monomials)?;
                Case { label, expr: sum_of(&poly), poly, indexing: Indexing::OneBased }
            }
            Input::Poly { expr, nvars, indexing } => {
                let poly = expr.expand(nvars)?;
                Case { label, expr, poly, indexing }
            }
        };
        return Ok(vec![case]);
    }
    match args.corpus {
        CorpusArg::Achterbahn => {
            let Corpus { indexing, expr, .. } =
                parse_corpus(ACHTERBAHN_CORPUS, Indexing::OneBased).map_err(|e| CliError::parse(e, ACHTERBAHN_CORPUS))?;
            let n = args.n.unwrap_or(13).max(13);
            let poly = expr.expand(n)?;
            Ok(vec![Case { label: "achterbahn".into(), expr, poly, indexing }])
        }
        CorpusArg::Random => {
            let n = args.n.unwrap_or(RANDOM_DEFAULT_VARS);
            if n > DENSE_MAX_VARS {
                return Err(CliError::Capacity(format!(
                    "random corpus is limited to n <= {DENSE_MAX_VARS}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            Ok((0..args.samples)
                .map(|k| {
                    let poly = sample(&mut rng, n);
                    Case {
                        label: format!("random:seed={}:{k}", args.seed),
                        expr: sum_of(&poly),
                        poly,
                        indexing: Indexing::OneBased,
                    }
                })
                .collect())
        }
    }
}

fn position(index: u32, ix: Indexing) -> Result<u32, CliError> {
    match ix {
        Indexing::ZeroBased => Ok(index),
        Indexing::OneBased => index
            .checked_sub(1)
            .ok_or_else(|| CliError::Usage("--order uses one-based variable numbers".into())),
    }
}

pub fn run(
    args: &BenchArgs,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let order_ix: Indexing = args.indexing.into();
    for case in cases(args, stdin)? {
        let p = &case.poly;
        let n = p.nvars();
        let oracle = (n <= ORACLE_MAX_VARS).then(|| mobius_naive(p)).transpose()?;
        let order = args
            .order
            .as_ref()
            .map(|o| o.iter().map(|&i| position(i, order_ix)).collect::<Result<Vec<_>, _>>())
            .transpose()?;

        let mut reports = Vec::new();
        for algo in AlgoChoice::CONCRETE {
            if algo.is_dense() && n > DENSE_MAX_VARS {
                writeln!(stderr, "skipping {} for {}: n={n} is too wide for a dense vector", algo.name(), case.label)?;
                continue;
            }
            let start = Instant::now();
            let (image, ops): (SparsePoly, OpCounter) = match (&order, algo) {
                (Some(order), AlgoChoice::ExclusiveMultList) => mobius_list_ordered(p, order)?,
                _ => mu_full(p, algo)?,
            };
            let wall = start.elapsed();
            let mut r = BenchReport::new(algo.name(), n, case.label.clone(), ops.total(), ops.unit.as_str());
            r.agrees_with_oracle = oracle.as_ref().map(|o| *o == image);
            if !algo.is_dense() {
                r.order = Some(ops.order.iter().map(|&i| case.indexing.display_index(i)).collect());
            }
            if algo == AlgoChoice::ComplementList {
                r.used_complement = Some(ops.used_complement);
            }
            if args.timing {
                r.wall_ns = Some(wall.as_nanos() as u64);
            }
            reports.push(r);
        }

        let start = Instant::now();
        let estimate = estimate_ops(&case.expr, n)?;
        let wall = start.elapsed();
        let baseline = butterfly_ops(n);
        let mut r = BenchReport::new(
            "fastpath",
            n,
            case.label.clone(),
            u64::try_from(estimate).map_err(|_| CliError::Capacity("estimate exceeds 64 bits".into()))?,
            "emitted_term",
        );
        if let Some(o) = &oracle {
            r.agrees_with_oracle = Some(fast_weight(&case.expr, n).is_ok_and(|w| w.weight == o.len() as u128));
        }
        if let Ok(base) = u64::try_from(baseline) {
            if base > 0 {
                r.baseline_ops = Some(base);
                let savings = 100.0 * (1.0 - estimate as f64 / base as f64);
                r.savings_percent = Some((savings * 1e4).round() / 1e4);
            }
        }
        if args.timing {
            r.wall_ns = Some(wall.as_nanos() as u64);
        }
        reports.push(r);

        for r in &reports {
            writeln!(stdout, "{}", if args.json { r.to_json() } else { r.to_text() })?;
        }
    }
    Ok(())
}
