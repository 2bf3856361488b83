#![allow(dead_code)]

use mobius_core::{FactoredExpr, Monomial, SparsePoly};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn full_mask(n: u32) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// The function whose ANF bits are the low `2^n` bits of `code`.
pub fn poly_from_code(n: u32, code: u64) -> SparsePoly {
    let monomials = (0..1u64 << n)
        .filter(|k| code >> k & 1 == 1)
        .map(Monomial::from_mask);
    SparsePoly::from_monomials(n, monomials).unwrap()
}

/// Uniform ANF for small `n`, a few hundred random monomials above that.
pub fn random_poly(rng: &mut impl Rng, n: u32) -> SparsePoly {
    if n <= 12 {
        let density = [0.5, 0.1, 0.9][rng.random_range(0..3)];
        let monomials: Vec<Monomial> = (0..1u64 << n)
            .filter(|_| rng.random_bool(density))
            .map(Monomial::from_mask)
            .collect();
        SparsePoly::from_monomials(n, monomials).unwrap()
    } else {
        let count = rng.random_range(0..300);
        let full = full_mask(n);
        let monomials: Vec<Monomial> = (0..count)
            .map(|_| Monomial::from_mask(rng.random::<u64>() & full))
            .collect();
        SparsePoly::from_monomials(n, monomials).unwrap()
    }
}

/// Random subset of the positions in `of`.
pub fn random_subset(rng: &mut impl Rng, of: u64) -> Monomial {
    Monomial::from_mask(rng.random::<u64>() & of)
}

pub fn mono_expr(m: Monomial) -> FactoredExpr {
    FactoredExpr::Mono(m)
}

pub fn linear_expr(j: Monomial) -> FactoredExpr {
    FactoredExpr::Sum(j.positions().map(FactoredExpr::var).collect())
}

pub fn product(factors: Vec<FactoredExpr>) -> FactoredExpr {
    FactoredExpr::Product(factors)
}

pub fn sum(terms: Vec<FactoredExpr>) -> FactoredExpr {
    FactoredExpr::Sum(terms)
}
