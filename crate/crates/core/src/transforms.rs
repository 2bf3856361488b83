//! Möbius transform algorithms and their operation counts.
//!
//! Dense algorithms work on `2^n`-bit vectors and count bit XORs. List
//! algorithms work on the ascending monomial list of a [`SparsePoly`] and
//! count list modifications (one per inserted or removed monomial). Every
//! algorithm computes the same map; only the cost differs.

use std::fmt;
use std::str::FromStr;

use crate::dense::DenseForm;
use crate::error::{Error, Result};
use crate::poly::{xor_sorted, Monomial, SparsePoly, DENSE_MAX_VARS, MAX_VARS};

/// What an [`OpCounter`] tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum OpUnit {
    #[default]
    Xor,
    ListMod,
    EmittedTerm,
}

impl OpUnit {
    pub fn as_str(self) -> &'static str {
        match self {
            OpUnit::Xor => "xor",
            OpUnit::ListMod => "list_mod",
            OpUnit::EmittedTerm => "emitted_term",
        }
    }
}

impl fmt::Display for OpUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Work attributable to one transform run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub unit: OpUnit,
    /// Bit XORs, dense algorithms only.
    pub xor_count: u64,
    /// Monomial inserts plus removes, list algorithms only.
    pub list_mods: u64,
    /// Work done at each variable step, in execution order.
    pub per_step: Vec<u64>,
    /// Variable position processed at each step.
    pub order: Vec<u32>,
    /// `N(P_i)` after each list step.
    pub step_sizes: Vec<u64>,
    /// The complement route was taken.
    pub used_complement: bool,
}

impl OpCounter {
    fn new(unit: OpUnit) -> Self {
        OpCounter {
            unit,
            ..Default::default()
        }
    }

    /// The count in this counter's own unit.
    pub fn total(&self) -> u64 {
        match self.unit {
            OpUnit::Xor => self.xor_count,
            OpUnit::ListMod | OpUnit::EmittedTerm => self.list_mods,
        }
    }

    fn record_xor_step(&mut self, pos: u32, xors: u64) {
        self.xor_count += xors;
        self.per_step.push(xors);
        self.order.push(pos);
    }

    fn record_list_step(&mut self, pos: u32, mods: u64, size: usize) {
        self.list_mods += mods;
        self.per_step.push(mods);
        self.order.push(pos);
        self.step_sizes.push(size as u64);
    }
}

/// Which algorithm computes the transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgoChoice {
    RecursiveButterfly,
    IterativeButterfly,
    ExclusiveMultVector,
    /// Multiplies by `(1 + X_i)` for `i = 1..n` in ascending order.
    ExclusiveMultList,
    /// Occurrence-driven ordering of the list steps.
    GreedyList,
    /// Greedy list run on the complement when that is sparser.
    ComplementList,
    Auto,
}

impl AlgoChoice {
    /// Every algorithm except `Auto`.
    pub const CONCRETE: [AlgoChoice; 6] = [
        AlgoChoice::RecursiveButterfly,
        AlgoChoice::IterativeButterfly,
        AlgoChoice::ExclusiveMultVector,
        AlgoChoice::ExclusiveMultList,
        AlgoChoice::GreedyList,
        AlgoChoice::ComplementList,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgoChoice::RecursiveButterfly => "rbm",
            AlgoChoice::IterativeButterfly => "ibm",
            AlgoChoice::ExclusiveMultVector => "vec",
            AlgoChoice::ExclusiveMultList => "list",
            AlgoChoice::GreedyList => "greedy",
            AlgoChoice::ComplementList => "complement",
            AlgoChoice::Auto => "auto",
        }
    }

    pub fn is_dense(self) -> bool {
        matches!(
            self,
            AlgoChoice::RecursiveButterfly
                | AlgoChoice::IterativeButterfly
                | AlgoChoice::ExclusiveMultVector
        )
    }

    /// Concrete algorithm `Auto` stands for on a sparse input.
    pub fn resolve_sparse(self, p: &SparsePoly) -> AlgoChoice {
        match self {
            AlgoChoice::Auto if prefers_complement(p) => AlgoChoice::ComplementList,
            AlgoChoice::Auto => AlgoChoice::GreedyList,
            other => other,
        }
    }

    /// Concrete algorithm `Auto` stands for on a dense input.
    pub fn resolve_dense(self) -> AlgoChoice {
        match self {
            AlgoChoice::Auto => AlgoChoice::IterativeButterfly,
            other => other,
        }
    }
}

impl fmt::Display for AlgoChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgoChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "rbm" => AlgoChoice::RecursiveButterfly,
            "ibm" => AlgoChoice::IterativeButterfly,
            "vec" => AlgoChoice::ExclusiveMultVector,
            "list" => AlgoChoice::ExclusiveMultList,
            "greedy" => AlgoChoice::GreedyList,
            "complement" => AlgoChoice::ComplementList,
            "auto" => AlgoChoice::Auto,
            other => return Err(format!("unknown algorithm `{other}`")),
        })
    }
}

/// `N(P) > 2^(n-1)` and the complement is materialisable.
pub fn prefers_complement(p: &SparsePoly) -> bool {
    let n = p.nvars();
    n <= DENSE_MAX_VARS && n >= 1 && p.len() as u64 > 1u64 << (n - 1)
}

// ---------------------------------------------------------------------------
// Per-indeterminate operator and the quotient-ring product

/// `mu_{X_i}(P) = P0 + X_i (P0 + P1)` where `P = P0 + X_i P1`.
///
/// If `i` lies past the declared variables the result is declared over
/// `i + 1` variables.
pub fn mu_xi(p: &SparsePoly, i: u32) -> Result<SparsePoly> {
    if i >= MAX_VARS {
        return Err(Error::Capacity {
            what: "variable position",
            requested: i.into(),
            limit: (MAX_VARS - 1).into(),
        });
    }
    let widened;
    let p = if i >= p.nvars() {
        widened = p.with_nvars(i + 1)?;
        &widened
    } else {
        p
    };
    let split = p.decompose(i)?;
    let sum = split.p0.xor_add(&split.p1);
    let lifted = SparsePoly::from_sorted_unchecked(
        p.nvars(),
        sum.monomials().iter().map(|m| m.with(i)).collect(),
    );
    Ok(split.p0.xor_add(&lifted))
}

/// The product of `R_n = K2[X] / <X_i^2>`: `P (x) X^I = X^I * P|I`, where
/// `P|I` keeps the monomials of `P` sharing no indeterminate with `I`,
/// extended additively over the monomials of `q`.
pub fn exclusive_mul(p: &SparsePoly, q: &SparsePoly) -> SparsePoly {
    let nvars = p.nvars().max(q.nvars());
    let mut terms = Vec::new();
    for &i in q.monomials() {
        terms.extend(
            p.monomials()
                .iter()
                .filter(|m| m.is_disjoint(i))
                .map(|m| m.union(i)),
        );
    }
    SparsePoly::from_monomials(nvars, terms).expect("positions stay below max(nvars)")
}

// ---------------------------------------------------------------------------
// Dense algorithms

/// Word masks selecting bit positions whose index has bit `s` clear.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

#[inline]
fn bit(words: &[u64], k: usize) -> u64 {
    words[k / 64] >> (k % 64) & 1
}

#[inline]
fn xor_bit(words: &mut [u64], k: usize, v: u64) {
    words[k / 64] ^= v << (k % 64);
}

fn half_xors(n: u32) -> u64 {
    if n == 0 {
        0
    } else {
        1u64 << (n - 1)
    }
}

/// Divide-and-conquer transform: transform both halves, then fold the low
/// half into the high half. The output has the opposite role.
pub fn mobius_butterfly_recursive(d: &DenseForm) -> (DenseForm, OpCounter) {
    let mut out = d.clone();
    let mut counter = OpCounter::new(OpUnit::Xor);
    let n = d.n();
    let mut per_level = vec![0u64; n as usize];
    rbm(out.words_mut(), 0, n, &mut per_level);
    for (level, xors) in per_level.into_iter().enumerate() {
        counter.record_xor_step(level as u32, xors);
    }
    out.set_role(d.role().flipped());
    (out, counter)
}

fn rbm(words: &mut [u64], start: usize, n: u32, per_level: &mut [u64]) {
    if n == 0 {
        return;
    }
    if n == 1 {
        // 00 -> 00, 01 -> 01, 10 -> 11, 11 -> 10
        let a0 = bit(words, start);
        xor_bit(words, start + 1, a0);
        per_level[0] += 1;
        return;
    }
    let half = 1usize << (n - 1);
    rbm(words, start, n - 1, per_level);
    rbm(words, start + half, n - 1, per_level);
    if half >= 64 {
        let (w0, hw) = (start / 64, half / 64);
        let (lo, hi) = words[w0..w0 + 2 * hw].split_at_mut(hw);
        for (h, l) in hi.iter_mut().zip(lo.iter()) {
            *h ^= *l;
        }
    } else {
        for i in 0..half {
            let a0 = bit(words, start + i);
            xor_bit(words, start + half + i, a0);
        }
    }
    per_level[(n - 1) as usize] += half as u64;
}

/// In-place bottom-up transform. At step `i` every block of `2^i` bits has
/// its upper half XORed with its lower half:
/// `A[k*2^i + l + 2^(i-1)] ^= A[k*2^i + l]` for `l < 2^(i-1)`.
pub fn mobius_butterfly_iterative(d: &mut DenseForm) -> OpCounter {
    let n = d.n();
    let mut counter = OpCounter::new(OpUnit::Xor);
    let words = d.words_mut();
    for step in 0..n {
        let half = 1usize << step;
        if half >= 64 {
            let hw = half / 64;
            for block in words.chunks_exact_mut(2 * hw) {
                let (lo, hi) = block.split_at_mut(hw);
                for (h, l) in hi.iter_mut().zip(lo.iter()) {
                    *h ^= *l;
                }
            }
        } else {
            let mask = LOW_HALF[step as usize];
            for w in words.iter_mut() {
                *w ^= (*w & mask) << half;
            }
        }
        counter.record_xor_step(step, half_xors(n));
    }
    let role = d.role().flipped();
    d.set_role(role);
    counter
}

/// Vector form of repeated exclusive multiplication by `(1 + X_i)`: for each
/// index `j` with bit `i` clear, `A[j + 2^i] ^= A[j]`.
pub fn mobius_exclusive_vector(d: &DenseForm) -> (DenseForm, OpCounter) {
    let mut out = d.clone();
    let n = d.n();
    let len = d.len();
    let mut counter = OpCounter::new(OpUnit::Xor);
    let words = out.words_mut();
    for step in 0..n {
        let b = 1usize << step;
        let mut xors = 0u64;
        let mut j = 0usize;
        while j < len {
            let a = bit(words, j);
            xor_bit(words, j + b, a);
            xors += 1;
            // next index with bit `step` clear
            j = ((j | b) + 1) & !b;
        }
        counter.record_xor_step(step, xors);
    }
    out.set_role(d.role().flipped());
    (out, counter)
}

// ---------------------------------------------------------------------------
// List algorithms

/// `list (x) (1 + X_i)` on an ascending list. Calls `on_change(m, inserted)`
/// for every monomial inserted or removed.
fn affine_step(
    list: &[Monomial],
    i: u32,
    mut on_change: impl FnMut(Monomial, bool),
) -> Vec<Monomial> {
    // Adding the same absent position keeps the order.
    let lifted: Vec<Monomial> = list
        .iter()
        .filter(|m| !m.contains(i))
        .map(|m| m.with(i))
        .collect();
    let mut li = lifted.iter().peekable();
    for m in list {
        while let Some(&&l) = li.peek() {
            if l < *m {
                on_change(l, true);
                li.next();
            } else {
                break;
            }
        }
        if li.peek() == Some(&m) {
            on_change(*m, false);
            li.next();
        }
    }
    for &l in li {
        on_change(l, true);
    }
    xor_sorted(list, &lifted)
}

/// Exclusive multiplication by `(1 + X_i)` for `i = 1..n`, in order.
pub fn mobius_list_sequential(p: &SparsePoly) -> (SparsePoly, OpCounter) {
    let order: Vec<u32> = (0..p.nvars()).collect();
    run_list_order(p, &order)
}

/// Same as [`mobius_list_sequential`] with an explicit step order, which
/// must be a permutation of `0..n`.
pub fn mobius_list_ordered(p: &SparsePoly, order: &[u32]) -> Result<(SparsePoly, OpCounter)> {
    let n = p.nvars();
    let mut seen = vec![false; n as usize];
    for &i in order {
        if i >= n || std::mem::replace(&mut seen[i as usize], true) {
            return Err(Error::precondition(format!(
                "step order {order:?} is not a permutation of the {n} variables"
            )));
        }
    }
    if order.len() != n as usize {
        return Err(Error::precondition(format!(
            "step order has {} entries, expected {n}",
            order.len()
        )));
    }
    Ok(run_list_order(p, order))
}

fn run_list_order(p: &SparsePoly, order: &[u32]) -> (SparsePoly, OpCounter) {
    let mut counter = OpCounter::new(OpUnit::ListMod);
    let mut list = p.monomials().to_vec();
    for &i in order {
        let mut mods = 0u64;
        list = affine_step(&list, i, |_, _| mods += 1);
        counter.record_list_step(i, mods, list.len());
    }
    (SparsePoly::from_sorted_unchecked(p.nvars(), list), counter)
}

/// List transform that always steps on the unused indeterminate occurring
/// in the most monomials of the current list. Ties go to the lowest
/// position.
pub fn mobius_list_greedy(p: &SparsePoly) -> (SparsePoly, OpCounter) {
    let n = p.nvars() as usize;
    let mut counter = OpCounter::new(OpUnit::ListMod);
    // `None` marks variables already stepped on.
    let mut occurrences: Vec<Option<i64>> = vec![Some(0); n];
    for m in p.monomials() {
        for pos in m.positions() {
            if let Some(c) = occurrences[pos as usize].as_mut() {
                *c += 1;
            }
        }
    }
    let mut list = p.monomials().to_vec();
    for _ in 0..n {
        let mut best: Option<(usize, i64)> = None;
        for (i, c) in occurrences.iter().enumerate() {
            if let Some(c) = *c {
                if best.map_or(true, |(_, b)| c > b) {
                    best = Some((i, c));
                }
            }
        }
        let (i0, _) = best.expect("one unused variable per remaining step");
        let mut mods = 0u64;
        list = affine_step(&list, i0 as u32, |m, inserted| {
            mods += 1;
            let delta = if inserted { 1 } else { -1 };
            for pos in m.positions() {
                if let Some(c) = occurrences[pos as usize].as_mut() {
                    *c += delta;
                }
            }
        });
        occurrences[i0] = None;
        counter.record_list_step(i0 as u32, mods, list.len());
    }
    (SparsePoly::from_sorted_unchecked(p.nvars(), list), counter)
}

/// Greedy list transform that works on the complement `P'` when `P` holds
/// more than half of all monomials, using `mu(P) = mu(P') + 1`.
pub fn mobius_with_complement(p: &SparsePoly) -> Result<(SparsePoly, OpCounter)> {
    if p.nvars() > DENSE_MAX_VARS {
        return Err(Error::Capacity {
            what: "complement variable count",
            requested: p.nvars().into(),
            limit: DENSE_MAX_VARS.into(),
        });
    }
    if !prefers_complement(p) {
        return Ok(mobius_list_greedy(p));
    }
    let (image, mut counter) = mobius_list_greedy(&p.complement()?);
    let one = SparsePoly::one(p.nvars())?;
    // toggling the constant is one more list modification
    counter.list_mods += 1;
    counter.used_complement = true;
    Ok((image.xor_add(&one), counter))
}

// ---------------------------------------------------------------------------
// Unified entry points

/// Möbius transform of a polynomial form with the chosen algorithm.
pub fn mu_full(p: &SparsePoly, algo: AlgoChoice) -> Result<(SparsePoly, OpCounter)> {
    match algo.resolve_sparse(p) {
        AlgoChoice::ExclusiveMultList => Ok(mobius_list_sequential(p)),
        AlgoChoice::GreedyList => Ok(mobius_list_greedy(p)),
        AlgoChoice::ComplementList => mobius_with_complement(p),
        dense_algo => {
            let d = crate::dense::sparse_to_dense(p)?;
            let (out, counter) = run_dense(d, dense_algo);
            let monomials = out
                .iter_ones()
                .map(|k| Monomial::from_mask(k as u64))
                .collect();
            Ok((SparsePoly::from_sorted_unchecked(p.nvars(), monomials), counter))
        }
    }
}

/// Möbius transform of a dense vector; the result carries the opposite role.
pub fn mu_dense(d: &DenseForm, algo: AlgoChoice) -> Result<(DenseForm, OpCounter)> {
    let algo = algo.resolve_dense();
    if algo.is_dense() {
        return Ok(run_dense(d.clone(), algo));
    }
    let monomials = d
        .iter_ones()
        .map(|k| Monomial::from_mask(k as u64))
        .collect();
    let p = SparsePoly::from_sorted_unchecked(d.n(), monomials);
    let (q, counter) = mu_full(&p, algo)?;
    let mut out = DenseForm::zeros(d.n(), d.role().flipped())?;
    for m in q.monomials() {
        out.set(m.mask() as usize, true);
    }
    Ok((out, counter))
}

fn run_dense(mut d: DenseForm, algo: AlgoChoice) -> (DenseForm, OpCounter) {
    match algo {
        AlgoChoice::RecursiveButterfly => mobius_butterfly_recursive(&d),
        AlgoChoice::ExclusiveMultVector => mobius_exclusive_vector(&d),
        _ => {
            let c = mobius_butterfly_iterative(&mut d);
            (d, c)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::Role;

    fn m(positions: &[u32]) -> Monomial {
        Monomial::from_positions(positions.iter().copied())
    }

    fn poly(nvars: u32, terms: &[&[u32]]) -> SparsePoly {
        SparsePoly::from_monomials(nvars, terms.iter().map(|t| m(t))).unwrap()
    }

    fn dense(role: Role, s: &str) -> DenseForm {
        let n = s.len().trailing_zeros();
        DenseForm::from_bits(n, role, s.chars().map(|c| c == '1')).unwrap()
    }

    #[test]
    fn mu_xi_examples() {
        let f = poly(2, &[&[0], &[0, 1]]);
        assert_eq!(mu_xi(&f, 0).unwrap(), f);
        assert_eq!(mu_xi(&f, 1).unwrap(), poly(2, &[&[0]]));
        let x1 = poly(1, &[&[0]]);
        assert_eq!(mu_xi(&x1, 2).unwrap(), poly(3, &[&[0], &[0, 2]]));
        assert!(mu_xi(&x1, 64).is_err());
    }

    #[test]
    fn mu_xi_special_cases() {
        // X_i absent: (1 + X_i) P
        let p = poly(3, &[&[0], &[1]]);
        assert_eq!(mu_xi(&p, 2).unwrap(), poly(3, &[&[0], &[1], &[0, 2], &[1, 2]]));
        // P = X_i P1: fixed
        let p = poly(3, &[&[2], &[0, 2]]);
        assert_eq!(mu_xi(&p, 2).unwrap(), p);
    }

    #[test]
    fn exclusive_mul_examples() {
        let f = poly(2, &[&[0], &[0, 1]]);
        assert!(exclusive_mul(&f, &poly(2, &[&[0]])).is_zero());
        assert_eq!(exclusive_mul(&f, &poly(2, &[&[], &[1]])), poly(2, &[&[0]]));
        let p = poly(3, &[&[2], &[0, 1]]);
        assert_eq!(exclusive_mul(&p, &poly(3, &[&[1]])), poly(3, &[&[1, 2]]));
    }

    #[test]
    fn recursive_butterfly_examples() {
        let (out, c) = mobius_butterfly_recursive(&dense(Role::Anf, "0101"));
        assert_eq!(out.to_bitstring(), "0100");
        assert_eq!(out.role(), Role::TruthTable);
        assert_eq!(c.xor_count, 4);
        assert_eq!(mobius_butterfly_recursive(&dense(Role::Anf, "10")).0.to_bitstring(), "11");
        let (out, _) = mobius_butterfly_recursive(&dense(Role::TruthTable, "01000100"));
        assert_eq!(out.to_bitstring(), "01010000");
        assert_eq!(out.role(), Role::Anf);
    }

    #[test]
    fn iterative_butterfly_examples() {
        let mut d = dense(Role::Anf, "0101");
        let c = mobius_butterfly_iterative(&mut d);
        assert_eq!(d.to_bitstring(), "0100");
        assert_eq!(c.xor_count, 4);

        let mut z = DenseForm::zeros(5, Role::Anf).unwrap();
        let c = mobius_butterfly_iterative(&mut z);
        assert_eq!(z.count_ones(), 0);
        assert_eq!(c.xor_count, 5 * 16);
        assert_eq!(c.per_step, vec![16; 5]);

        let mut one = dense(Role::Anf, "1000");
        mobius_butterfly_iterative(&mut one);
        assert_eq!(one.to_bitstring(), "1111");
    }

    #[test]
    fn exclusive_vector_examples() {
        assert_eq!(
            mobius_exclusive_vector(&dense(Role::Anf, "0101")).0.to_bitstring(),
            "0100"
        );
        assert_eq!(
            mobius_exclusive_vector(&dense(Role::TruthTable, "01000100")).0.to_bitstring(),
            "01010000"
        );
        let (out, c) = mobius_exclusive_vector(&dense(Role::TruthTable, "11"));
        assert_eq!(out.to_bitstring(), "10");
        assert_eq!(c.xor_count, 1);
    }

    #[test]
    fn dense_algorithms_agree_across_word_boundaries() {
        // n = 9 exercises both the in-word and the word-level paths.
        let mut d = DenseForm::zeros(9, Role::Anf).unwrap();
        for k in (0..512).filter(|k| (k * 37 + 11) % 7 < 3) {
            d.set(k, true);
        }
        let (r, rc) = mobius_butterfly_recursive(&d);
        let (v, vc) = mobius_exclusive_vector(&d);
        let mut i = d.clone();
        let ic = mobius_butterfly_iterative(&mut i);
        assert_eq!(r, i);
        assert_eq!(v, i);
        for c in [rc, vc, ic] {
            assert_eq!(c.xor_count, 9 * 256);
        }
    }

    #[test]
    fn list_sequential_examples() {
        let (q, c) = mobius_list_sequential(&poly(2, &[&[0], &[0, 1]]));
        assert_eq!(q, poly(2, &[&[0]]));
        assert_eq!(c.step_sizes[0], 2);

        let p = poly(3, &[&[2], &[0, 1], &[0, 2]]);
        let (q, c) = mobius_list_sequential(&p);
        assert_eq!(q, poly(3, &[&[2], &[0, 1], &[1, 2], &[0, 1, 2]]));
        assert_eq!(c.list_mods, 3);
        assert_eq!(c.per_step, vec![1, 1, 1]);

        let (q, c) = mobius_list_sequential(&SparsePoly::zero(5).unwrap());
        assert!(q.is_zero());
        assert_eq!(c.list_mods, 0);
    }

    #[test]
    fn bad_order_costs_five() {
        let p = poly(3, &[&[2], &[0, 1], &[0, 2]]);
        let (q, c) = mobius_list_ordered(&p, &[1, 0, 2]).unwrap();
        assert_eq!(q, poly(3, &[&[2], &[0, 1], &[1, 2], &[0, 1, 2]]));
        assert_eq!(c.list_mods, 5);
        assert_eq!(c.per_step, vec![2, 2, 1]);
        assert!(mobius_list_ordered(&p, &[0, 0, 2]).is_err());
        assert!(mobius_list_ordered(&p, &[0, 1]).is_err());
    }

    #[test]
    fn greedy_examples() {
        let p = poly(3, &[&[2], &[0, 1], &[0, 2]]);
        let (q, c) = mobius_list_greedy(&p);
        assert_eq!(q, poly(3, &[&[2], &[0, 1], &[1, 2], &[0, 1, 2]]));
        assert_eq!(c.list_mods, 3);
        assert_eq!(c.order, vec![0, 1, 2]);

        assert_eq!(mobius_list_greedy(&poly(1, &[&[0]])).0, poly(1, &[&[0]]));
        assert_eq!(mobius_list_greedy(&poly(2, &[&[0], &[0, 1]])).0, poly(2, &[&[0]]));
    }

    #[test]
    fn complement_route_examples() {
        let full = poly(2, &[&[], &[0], &[1], &[0, 1]]);
        let (q, c) = mobius_with_complement(&full).unwrap();
        assert_eq!(q, poly(2, &[&[]]));
        assert!(c.used_complement);

        let (q, c) = mobius_with_complement(&poly(2, &[&[0]])).unwrap();
        assert_eq!(q, poly(2, &[&[0], &[0, 1]]));
        assert!(!c.used_complement);

        let p = poly(2, &[&[], &[0], &[1]]);
        let (q, c) = mobius_with_complement(&p).unwrap();
        assert!(c.used_complement);
        assert_eq!(q, mobius_list_sequential(&p).0);
    }

    #[test]
    fn mu_full_examples() {
        let f = poly(2, &[&[0], &[0, 1]]);
        assert_eq!(mu_full(&f, AlgoChoice::Auto).unwrap().0, poly(2, &[&[0]]));
        let f4 = f.with_nvars(4).unwrap();
        assert_eq!(
            mu_full(&f4, AlgoChoice::Auto).unwrap().0,
            poly(4, &[&[0], &[0, 2], &[0, 3], &[0, 2, 3]])
        );
        for algo in AlgoChoice::CONCRETE {
            let z = SparsePoly::zero(3).unwrap();
            assert!(mu_full(&z, algo).unwrap().0.is_zero(), "{algo}");
            assert_eq!(mu_full(&f4, algo).unwrap().0.len(), 4, "{algo}");
        }
    }

    #[test]
    fn dense_algorithms_reject_wide_sparse_inputs() {
        let p = SparsePoly::from_monomials(40, [m(&[39])]).unwrap();
        assert!(mu_full(&p, AlgoChoice::IterativeButterfly)
            .unwrap_err()
            .is_capacity());
        // the list route has no such limit
        // X1..X38 over 40 variables: only X39 and X40 are free
        let big = Monomial::from_positions(0..38);
        let wide = SparsePoly::from_monomials(40, [big]).unwrap();
        let (q, _) = mu_full(&wide, AlgoChoice::GreedyList).unwrap();
        assert_eq!(q.len(), 4);
    }

    #[test]
    fn mu_dense_flips_role_for_list_algorithms() {
        let (out, c) = mu_dense(&dense(Role::Anf, "0101"), AlgoChoice::GreedyList).unwrap();
        assert_eq!(out.to_bitstring(), "0100");
        assert_eq!(out.role(), Role::TruthTable);
        assert_eq!(c.unit, OpUnit::ListMod);
        let (_, c) = mu_dense(&dense(Role::Anf, "0101"), AlgoChoice::Auto).unwrap();
        assert_eq!(c.unit, OpUnit::Xor);
    }

    #[test]
    fn algo_names_round_trip() {
        for algo in AlgoChoice::CONCRETE.iter().chain([&AlgoChoice::Auto]) {
            assert_eq!(algo.name().parse::<AlgoChoice>().unwrap(), *algo);
        }
        assert!("fft".parse::<AlgoChoice>().is_err());
    }
}
