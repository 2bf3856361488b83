//! Factored expressions: sums and products of monomials as the user wrote
//! them, kept unexpanded so the closed-form evaluators can match on shape.

use std::fmt;

use crate::error::Result;
use crate::parser::Indexing;
use crate::poly::{Monomial, SparsePoly};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FactoredExpr {
    /// An empty sum is the zero polynomial.
    Sum(Vec<FactoredExpr>),
    Product(Vec<FactoredExpr>),
    Mono(Monomial),
    One,
}

impl FactoredExpr {
    pub fn zero() -> Self {
        FactoredExpr::Sum(Vec::new())
    }

    pub fn var(pos: u32) -> Self {
        FactoredExpr::Mono(Monomial::var(pos))
    }

    /// Every position mentioned anywhere in the tree.
    pub fn support(&self) -> Monomial {
        match self {
            FactoredExpr::Sum(cs) | FactoredExpr::Product(cs) => cs
                .iter()
                .fold(Monomial::ONE, |acc, c| acc.union(c.support())),
            FactoredExpr::Mono(m) => *m,
            FactoredExpr::One => Monomial::ONE,
        }
    }

    /// Smallest variable count that covers the tree.
    pub fn min_vars(&self) -> u32 {
        self.support().highest_position().map_or(0, |p| p + 1)
    }

    /// The polynomial form of the Boolean function the tree denotes.
    pub fn expand(&self, nvars: u32) -> Result<SparsePoly> {
        match self {
            FactoredExpr::Sum(cs) => cs.iter().try_fold(SparsePoly::zero(nvars)?, |acc, c| {
                Ok(acc.xor_add(&c.expand(nvars)?))
            }),
            FactoredExpr::Product(cs) => cs.iter().try_fold(SparsePoly::one(nvars)?, |acc, c| {
                Ok(acc.product(&c.expand(nvars)?))
            }),
            FactoredExpr::Mono(m) => SparsePoly::from_monomials(nvars, [*m]),
            FactoredExpr::One => SparsePoly::one(nvars),
        }
    }

    /// Top-level summands; a non-sum is its own single summand.
    pub fn summands(&self) -> Vec<&FactoredExpr> {
        match self {
            FactoredExpr::Sum(cs) => cs.iter().flat_map(|c| c.summands()).collect(),
            other => vec![other],
        }
    }

    /// Text in the parser grammar.
    pub fn to_text(&self, indexing: Indexing) -> String {
        let mut s = String::new();
        self.write(&mut s, indexing, Context::Top);
        s
    }

    fn write(&self, out: &mut String, ix: Indexing, ctx: Context) {
        match self {
            FactoredExpr::Sum(cs) if cs.is_empty() => {
                // Only valid as a whole expression; elsewhere spell it out.
                out.push_str(if ctx == Context::Top { "0" } else { "(1 + 1)" });
            }
            // a lone child needs no grouping of its own
            FactoredExpr::Sum(cs) | FactoredExpr::Product(cs) if cs.len() == 1 => {
                cs[0].write(out, ix, ctx)
            }
            FactoredExpr::Sum(cs) => {
                let paren = ctx != Context::Top;
                if paren {
                    out.push('(');
                }
                for (k, c) in cs.iter().enumerate() {
                    if k > 0 {
                        out.push_str(" + ");
                    }
                    c.write(out, ix, Context::InSum);
                }
                if paren {
                    out.push(')');
                }
            }
            FactoredExpr::Product(cs) if cs.is_empty() => out.push('1'),
            FactoredExpr::Product(cs) => {
                let paren = ctx == Context::InProduct;
                if paren {
                    out.push('(');
                }
                for (k, c) in cs.iter().enumerate() {
                    if k > 0 {
                        out.push('*');
                    }
                    c.write(out, ix, Context::InProduct);
                }
                if paren {
                    out.push(')');
                }
            }
            FactoredExpr::Mono(m) if m.is_one() => out.push('1'),
            FactoredExpr::Mono(m) => {
                let paren = ctx == Context::InProduct && m.degree() > 1;
                if paren {
                    out.push('(');
                }
                write_monomial(out, *m, ix);
                if paren {
                    out.push(')');
                }
            }
            FactoredExpr::One => out.push('1'),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Context {
    Top,
    InSum,
    InProduct,
}

pub(crate) fn write_monomial(out: &mut String, m: Monomial, ix: Indexing) {
    if m.is_one() {
        out.push('1');
        return;
    }
    for (k, p) in m.positions().enumerate() {
        if k > 0 {
            out.push('*');
        }
        out.push('X');
        out.push_str(&ix.display_index(p).to_string());
    }
}

impl fmt::Display for FactoredExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(Indexing::OneBased))
    }
}
