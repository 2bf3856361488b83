//! Brute-force references for differential testing.
//!
//! Nothing here calls into [`crate::transforms`]. The transform is computed
//! by expanding every monomial into the minterms above it,
//! `x^u = sum_{u <= v} M_v`, and the weight by evaluating at every point.

use crate::error::{Error, Result};
use crate::poly::{Monomial, SparsePoly};

/// Largest variable count the oracle accepts.
pub const ORACLE_MAX_VARS: u32 = 16;

fn check(p: &SparsePoly) -> Result<()> {
    if p.nvars() > ORACLE_MAX_VARS {
        return Err(Error::Capacity {
            what: "oracle variable count",
            requested: p.nvars().into(),
            limit: ORACLE_MAX_VARS.into(),
        });
    }
    Ok(())
}

/// Möbius transform by superset expansion.
pub fn mobius_naive(p: &SparsePoly) -> Result<SparsePoly> {
    check(p)?;
    let full: u64 = (1u64 << p.nvars()) - 1;
    let mut hits = vec![false; 1usize << p.nvars()];
    for m in p.monomials() {
        let u = m.mask();
        // every v with u <= v <= full
        let mut v = u;
        loop {
            hits[v as usize] ^= true;
            if v == full {
                break;
            }
            v = ((v | u) + 1) | u;
            v &= full;
        }
    }
    let monomials = hits
        .iter()
        .enumerate()
        .filter(|(_, &h)| h)
        .map(|(v, _)| Monomial::from_mask(v as u64));
    SparsePoly::from_monomials(p.nvars(), monomials)
}

/// Hamming weight by evaluation at all `2^n` points.
pub fn weight_naive(p: &SparsePoly) -> Result<u64> {
    check(p)?;
    Ok((0..1u64 << p.nvars())
        .filter(|&a| p.evaluate_mask(a))
        .count() as u64)
}
