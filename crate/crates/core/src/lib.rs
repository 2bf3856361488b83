//! Möbius transforms of Boolean functions.
//!
//! A Boolean function in `n` variables is held either as a sparse polynomial
//! form ([`SparsePoly`]), a dense `2^n`-bit vector ([`DenseForm`]) whose
//! [`Role`] says whether it is an ANF or a truth table, or a factored
//! expression ([`FactoredExpr`]) as written by the user. The Möbius
//! transform maps the ANF to the truth table and back.
//!
//! ```
//! use mobius_core::{parse_dense, mu_dense, AlgoChoice};
//!
//! let anf = parse_dense("anf:0101").unwrap();
//! let (tt, ops) = mu_dense(&anf, AlgoChoice::IterativeButterfly).unwrap();
//! assert_eq!(mobius_core::serialize_dense(&tt), "tt:0100");
//! assert_eq!(ops.xor_count, 4);
//! ```

pub mod dense;
pub mod error;
pub mod expr;
pub mod fastpath;
pub mod oracle;
pub mod parser;
pub mod poly;
pub mod transforms;

pub use dense::{dense_to_sparse, sparse_to_dense, weight, DenseForm, Role};
pub use error::{Error, Result};
pub use expr::FactoredExpr;
pub use fastpath::{
    block_structure, estimate_blocks, estimate_ops, fast_weight, match_family, Bindings,
    BlockStructure, Family, FastWeight, PatternHit, WeightRoute,
};
pub use oracle::{mobius_naive, weight_naive, ORACLE_MAX_VARS};
pub use parser::{
    parse_corpus, parse_dense, parse_poly, serialize_dense, serialize_dense_hex, serialize_poly,
    Canonical, Corpus, Indexing, ParseError, ParseErrorKind, SourceSpan,
};
pub use poly::{Degree, Monomial, RMSplit, SparsePoly, DENSE_MAX_VARS, MAX_VARS};
pub use transforms::{
    exclusive_mul, mobius_butterfly_iterative, mobius_butterfly_recursive,
    mobius_exclusive_vector, mobius_list_greedy, mobius_list_ordered, mobius_list_sequential,
    mobius_with_complement, mu_dense, mu_full, mu_xi, prefers_complement, AlgoChoice, OpCounter,
    OpUnit,
};

/// The Achterbahn-128 filter function in factored form, variables `X0..X12`.
pub const ACHTERBAHN_CORPUS: &str = include_str!("../corpus/achterbahn.poly");
