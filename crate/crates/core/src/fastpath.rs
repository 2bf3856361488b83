//! Closed-form transforms and weights for recognisable factored shapes.
//!
//! Matching is syntactic: the tree is normalised (nested sums and products
//! flattened, monomial factors of a product merged) and compared against
//! each [`Family`] in precedence order. Nothing is ever factored out of an
//! expanded polynomial.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::expr::FactoredExpr;
use crate::poly::{Monomial, SparsePoly, DENSE_MAX_VARS, MAX_VARS};
use crate::transforms::{mobius_list_greedy, mu_full, AlgoChoice};

/// Largest monomial count a closed form will materialise.
pub const MAX_EMIT: u128 = 1 << DENSE_MAX_VARS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `X^I`
    SingleMonomial,
    /// `X_1 + ... + X_n`
    LinearSum,
    /// `X_v + P` with `X_v` absent from `P`
    XnPlusP,
    /// `X^I (sum_{j in J} X_j)`
    MonoTimesLinear,
    /// `(X^I1 + X^I2)(sum_{j in J} X_j)`
    PairTimesLinear,
    /// `X^I sum_J X_j + X^I' sum_J' X_j`, both covering every variable,
    /// `|I|` and `|I'|` of different parity
    ParitySplit,
    /// `X^I (X^J + X^K)` with `I, J, K` partitioning the variables
    MonoTimesMonoPair,
    /// `X^I (X^J + X^K)` over more variables than `I, J, K` cover
    PaddedMonoTimesMonoPair,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::SingleMonomial,
        Family::LinearSum,
        Family::XnPlusP,
        Family::MonoTimesLinear,
        Family::PairTimesLinear,
        Family::ParitySplit,
        Family::MonoTimesMonoPair,
        Family::PaddedMonoTimesMonoPair,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SingleMonomial => "SingleMonomial",
            Family::LinearSum => "LinearSum",
            Family::XnPlusP => "XnPlusP",
            Family::MonoTimesLinear => "MonoTimesLinear",
            Family::PairTimesLinear => "PairTimesLinear",
            Family::ParitySplit => "ParitySplit",
            Family::MonoTimesMonoPair => "MonoTimesMonoPair",
            Family::PaddedMonoTimesMonoPair => "PaddedMonoTimesMonoPair",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sets extracted by a match, as position masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bindings {
    SingleMonomial { i: Monomial },
    LinearSum { s: Monomial },
    XnPlusP { xn: u32, p: SparsePoly },
    MonoTimesLinear { i: Monomial, j: Monomial },
    PairTimesLinear { i1: Monomial, i2: Monomial, j: Monomial },
    ParitySplit { i: Monomial, j: Monomial, i_prime: Monomial, j_prime: Monomial },
    MonoTimesMonoPair { i: Monomial, j: Monomial, k: Monomial },
    /// `L` is `I + J + K`.
    PaddedMonoTimesMonoPair { i: Monomial, j: Monomial, k: Monomial },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternHit {
    pub family: Family,
    pub bindings: Bindings,
    pub n: u32,
}

impl PatternHit {
    /// Closed-form Hamming weight.
    pub fn weight(&self) -> u128 {
        let n = self.n;
        match &self.bindings {
            Bindings::SingleMonomial { i } => weight_single_monomial(*i, n),
            Bindings::LinearSum { .. } | Bindings::XnPlusP { .. } => pow2(n - 1),
            Bindings::MonoTimesLinear { i, .. } => pow2(n - i.degree() - 1),
            Bindings::PairTimesLinear { i1, i2, .. } => {
                weight_pair_times_linear_unchecked(i1.degree(), i2.degree(), n)
            }
            Bindings::ParitySplit { i, i_prime, .. } => {
                pow2(n - i.degree() - 1) + pow2(n - i_prime.degree() - 1)
            }
            Bindings::MonoTimesMonoPair { i, j, k }
            | Bindings::PaddedMonoTimesMonoPair { i, j, k } => {
                corrected_mono_pair(i.union(*j).union(*k).degree(), j.degree(), k.degree(), n)
            }
        }
    }

    /// The weight formula as originally published, where it differs from
    /// [`PatternHit::weight`]. Kept for reports only.
    pub fn weight_as_published(&self) -> Option<u128> {
        match &self.bindings {
            Bindings::MonoTimesMonoPair { j, k, .. } => Some(pow2(j.degree()) + pow2(k.degree())),
            Bindings::PaddedMonoTimesMonoPair { i, j, k } => {
                let l = i.union(*j).union(*k).degree();
                Some(pow2(self.n - l) * (pow2(j.degree()) + pow2(k.degree())))
            }
            _ => None,
        }
    }

    /// The transform, built term by term from the closed form.
    pub fn mu(&self) -> Result<SparsePoly> {
        let n = self.n;
        match &self.bindings {
            Bindings::SingleMonomial { i } => mu_single_monomial(*i, n),
            Bindings::LinearSum { s } => mu_linear_sum(*s, n),
            Bindings::XnPlusP { xn, p } => mu_xn_plus_p(p, *xn),
            Bindings::MonoTimesLinear { i, j } => mu_mono_times_linear(*i, *j, n),
            Bindings::PairTimesLinear { i1, i2, j } => mu_pair_times_linear(*i1, *i2, *j, n),
            Bindings::ParitySplit { i, j, i_prime, j_prime } => {
                mu_parity_split(*i, *j, *i_prime, *j_prime, n)
            }
            Bindings::MonoTimesMonoPair { i, j, k } => mu_mono_times_mono_pair(*i, *j, *k, n),
            Bindings::PaddedMonoTimesMonoPair { i, j, k } => {
                mu_padded_mono_times_mono_pair(*i, *j, *k, n)
            }
        }
    }
}

fn pow2(e: u32) -> u128 {
    1u128 << e
}

fn full(n: u32) -> Monomial {
    if n >= 64 {
        Monomial::from_mask(u64::MAX)
    } else {
        Monomial::from_mask((1u64 << n) - 1)
    }
}

fn complement_in(m: Monomial, n: u32) -> Monomial {
    Monomial::from_mask(full(n).mask() & !m.mask())
}

// ---------------------------------------------------------------------------
// Matching

/// Flattens nested products, merges the monomial factors of each product
/// and unwraps one-element sums. `One` becomes the empty monomial.
pub fn normalize(e: &FactoredExpr) -> FactoredExpr {
    match e {
        FactoredExpr::One => FactoredExpr::Mono(Monomial::ONE),
        FactoredExpr::Mono(m) => FactoredExpr::Mono(*m),
        FactoredExpr::Sum(cs) => {
            // nested sums stay grouped: a bracketed linear sum can be one
            // half of a parity split
            let mut out: Vec<FactoredExpr> = cs.iter().map(normalize).collect();
            if out.len() == 1 {
                out.pop().unwrap()
            } else {
                FactoredExpr::Sum(out)
            }
        }
        FactoredExpr::Product(cs) => {
            let mut mono = Monomial::ONE;
            let mut rest = Vec::new();
            let mut stack: Vec<FactoredExpr> = cs.iter().rev().map(normalize).collect();
            while let Some(c) = stack.pop() {
                match c {
                    FactoredExpr::Mono(m) => mono = mono.union(m),
                    FactoredExpr::Product(inner) => stack.extend(inner.into_iter().rev()),
                    other => rest.push(other),
                }
            }
            if rest.is_empty() {
                return FactoredExpr::Mono(mono);
            }
            if mono.is_one() && rest.len() == 1 {
                return rest.pop().unwrap();
            }
            let mut factors = Vec::with_capacity(rest.len() + 1);
            if !mono.is_one() {
                factors.push(FactoredExpr::Mono(mono));
            }
            factors.extend(rest);
            FactoredExpr::Product(factors)
        }
    }
}

fn as_monomial(e: &FactoredExpr) -> Option<Monomial> {
    match e {
        FactoredExpr::Mono(m) => Some(*m),
        _ => None,
    }
}

/// A sum of distinct single variables.
fn as_linear(e: &FactoredExpr) -> Option<Monomial> {
    if !matches!(e, FactoredExpr::Sum(cs) if !cs.is_empty()) {
        return None;
    }
    let mut s = Monomial::ONE;
    for c in flat_terms(e) {
        let m = as_monomial(c)?;
        if m.degree() != 1 || !m.is_disjoint(s) {
            return None;
        }
        s = s.union(m);
    }
    Some(s)
}

/// Summands of a sum with nested sums opened up.
fn flat_terms(e: &FactoredExpr) -> Vec<&FactoredExpr> {
    match e {
        FactoredExpr::Sum(cs) => cs.iter().flat_map(flat_terms).collect(),
        other => vec![other],
    }
}

/// A sum of exactly two monomials.
fn as_pair(e: &FactoredExpr) -> Option<(Monomial, Monomial)> {
    match e {
        FactoredExpr::Sum(cs) if cs.len() == 2 => Some((as_monomial(&cs[0])?, as_monomial(&cs[1])?)),
        _ => None,
    }
}

/// `X^I * rest` with a single non-monomial factor; a bare sum has `I = {}`.
fn as_mono_times(e: &FactoredExpr) -> Option<(Monomial, &FactoredExpr)> {
    match e {
        FactoredExpr::Product(cs) if cs.len() == 2 => Some((as_monomial(&cs[0])?, &cs[1])),
        FactoredExpr::Sum(_) => Some((Monomial::ONE, e)),
        _ => None,
    }
}

fn as_mono_times_linear(e: &FactoredExpr) -> Option<(Monomial, Monomial)> {
    let (i, rest) = as_mono_times(e)?;
    let j = as_linear(rest)?;
    i.is_disjoint(j).then_some((i, j))
}

fn pairwise_disjoint(sets: &[Monomial]) -> bool {
    let mut acc = Monomial::ONE;
    for s in sets {
        if !s.is_disjoint(acc) {
            return false;
        }
        acc = acc.union(*s);
    }
    true
}

/// Classifies `e` over `n` variables. Families are tried most specific
/// first: single monomial, full linear sum, parity split, partition
/// mono-pair, pair-times-linear, mono-times-linear, padded mono-pair and
/// finally a lone linear variable.
pub fn match_family(e: &FactoredExpr, n: u32) -> Option<PatternHit> {
    if n > MAX_VARS || e.support().highest_position().is_some_and(|p| p >= n) {
        return None;
    }
    let e = normalize(e);
    let hit = |family, bindings| Some(PatternHit { family, bindings, n });
    let all = full(n);

    if let Some(i) = as_monomial(&e) {
        return hit(Family::SingleMonomial, Bindings::SingleMonomial { i });
    }
    let linear = as_linear(&e);
    if linear == Some(all) {
        return hit(Family::LinearSum, Bindings::LinearSum { s: all });
    }
    if let FactoredExpr::Sum(cs) = &e {
        if cs.len() == 2 {
            if let (Some((i, j)), Some((ip, jp))) =
                (as_mono_times_linear(&cs[0]), as_mono_times_linear(&cs[1]))
            {
                if i.union(j) == all && ip.union(jp) == all && i.degree() % 2 != ip.degree() % 2 {
                    return hit(
                        Family::ParitySplit,
                        Bindings::ParitySplit { i, j, i_prime: ip, j_prime: jp },
                    );
                }
            }
        }
    }
    // X^I (X^J + X^K), unless the pair is just two variables, which reads
    // as a linear factor.
    let mono_pair = match as_mono_times(&e) {
        Some((i, rest)) if !matches!(e, FactoredExpr::Sum(_)) => as_pair(rest)
            .filter(|&(j, k)| j != k && as_linear(rest).is_none() && pairwise_disjoint(&[i, j, k]))
            .map(|(j, k)| (i, j, k)),
        _ => None,
    };
    if let Some((i, j, k)) = mono_pair {
        if i.union(j).union(k) == all {
            return hit(Family::MonoTimesMonoPair, Bindings::MonoTimesMonoPair { i, j, k });
        }
    }
    if let FactoredExpr::Product(cs) = &e {
        if cs.len() == 2 {
            for (a, b) in [(&cs[0], &cs[1]), (&cs[1], &cs[0])] {
                if let (Some((i1, i2)), Some(j)) = (as_pair(a), as_linear(b)) {
                    if i1 != i2 && pairwise_disjoint(&[i1, j]) && pairwise_disjoint(&[i2, j]) && i1.is_disjoint(i2) {
                        return hit(
                            Family::PairTimesLinear,
                            Bindings::PairTimesLinear { i1, i2, j },
                        );
                    }
                }
            }
        }
    }
    if let Some((i, j)) = as_mono_times_linear(&e) {
        return hit(Family::MonoTimesLinear, Bindings::MonoTimesLinear { i, j });
    }
    if let Some((i, j, k)) = mono_pair {
        return hit(
            Family::PaddedMonoTimesMonoPair,
            Bindings::PaddedMonoTimesMonoPair { i, j, k },
        );
    }
    if let FactoredExpr::Sum(_) = &e {
        let cs = flat_terms(&e);
        let lone = (0..cs.len())
            .filter_map(|idx| {
                let v = as_monomial(cs[idx]).filter(|m| m.degree() == 1)?;
                let others_touch = cs
                    .iter()
                    .enumerate()
                    .any(|(o, c)| o != idx && !c.support().is_disjoint(v));
                (!others_touch).then(|| (v.highest_position().unwrap(), idx))
            })
            .max();
        if let Some((xn, idx)) = lone {
            let rest: Vec<FactoredExpr> = cs
                .iter()
                .enumerate()
                .filter(|&(o, _)| o != idx)
                .map(|(_, c)| (*c).clone())
                .collect();
            let p = FactoredExpr::Sum(rest).expand(n).ok()?;
            return hit(Family::XnPlusP, Bindings::XnPlusP { xn, p });
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Closed forms

fn check_range(sets: &[Monomial], n: u32) -> Result<()> {
    if n > MAX_VARS {
        return Err(Error::Capacity {
            what: "variable count",
            requested: n.into(),
            limit: MAX_VARS.into(),
        });
    }
    for s in sets {
        if let Some(p) = s.highest_position() {
            if p >= n {
                return Err(Error::Domain { position: p, nvars: n });
            }
        }
    }
    Ok(())
}

fn check_emit(count: u128) -> Result<()> {
    if count > MAX_EMIT {
        return Err(Error::Capacity {
            what: "closed-form term count",
            requested: u64::try_from(count).unwrap_or(u64::MAX),
            limit: MAX_EMIT as u64,
        });
    }
    Ok(())
}

fn submasks(m: Monomial) -> impl Iterator<Item = Monomial> {
    let mask = m.mask();
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some(cur.wrapping_sub(mask) & mask) };
        Some(Monomial::from_mask(cur))
    })
}

/// Terms of `X^I prod_{j in F} (1 + X_j) (sum_{K <= J, |K| odd} X^K)`.
fn emit(i: Monomial, free: Monomial, odd_of: Monomial) -> Vec<Monomial> {
    let odd: Vec<Monomial> = if odd_of.is_one() {
        vec![Monomial::ONE]
    } else {
        submasks(odd_of).filter(|k| k.degree() % 2 == 1).collect()
    };
    let mut out = Vec::with_capacity(odd.len() << free.degree());
    for l in submasks(free) {
        let base = i.union(l);
        out.extend(odd.iter().map(|k| base.union(*k)));
    }
    out
}

fn build(n: u32, parts: Vec<Vec<Monomial>>) -> Result<SparsePoly> {
    SparsePoly::from_monomials(n, parts.into_iter().flatten())
}

pub fn weight_single_monomial(i: Monomial, n: u32) -> u128 {
    pow2(n - i.degree())
}

/// `X^I prod_{j not in I} (1 + X_j)`: every superset of `I`.
pub fn mu_single_monomial(i: Monomial, n: u32) -> Result<SparsePoly> {
    check_range(&[i], n)?;
    check_emit(weight_single_monomial(i, n))?;
    build(n, vec![emit(i, complement_in(i, n), Monomial::ONE)])
}

/// The odd-degree monomials. Only defined for the sum of every variable.
pub fn mu_linear_sum(s: Monomial, n: u32) -> Result<SparsePoly> {
    check_range(&[s], n)?;
    if s != full(n) || n == 0 {
        return Err(Error::precondition(
            "the closed form needs the sum of every variable",
        ));
    }
    mu_mono_times_linear(Monomial::ONE, s, n)
}

pub fn weight_linear_sum(n: u32) -> u128 {
    pow2(n.saturating_sub(1))
}

/// `mu(X_v + P) = mu'(P) + X_v mu'(P + 1)` where `mu'` omits `X_v`.
pub fn mu_xn_plus_p(p: &SparsePoly, xn: u32) -> Result<SparsePoly> {
    let n = p.nvars().max(xn + 1);
    let p = p.with_nvars(n)?;
    if p.support().contains(xn) {
        return Err(Error::precondition(format!(
            "X{} occurs in P",
            xn + 1
        )));
    }
    let one = SparsePoly::one(n)?;
    // mu over all n variables is mu' followed by (1 + X_v); dropping the
    // X_v terms recovers mu'.
    let without = |q: &SparsePoly| -> Vec<Monomial> {
        let (image, _) = mobius_list_greedy(q);
        image.into_monomials().into_iter().filter(|m| !m.contains(xn)).collect()
    };
    let a = without(&p);
    let b = without(&p.xor_add(&one));
    build(n, vec![a, b.into_iter().map(|m| m.with(xn)).collect()])
}

pub fn weight_xn_plus_p(n: u32) -> u128 {
    pow2(n.saturating_sub(1))
}

/// `(sum_{I <= L <= [n] - J} X^L)(sum_{K <= J, |K| odd} X^K)`.
pub fn mu_mono_times_linear(i: Monomial, j: Monomial, n: u32) -> Result<SparsePoly> {
    check_range(&[i, j], n)?;
    if !i.is_disjoint(j) {
        return Err(Error::precondition("I and J overlap"));
    }
    if j.is_one() {
        return Err(Error::precondition("J is empty"));
    }
    check_emit(pow2(n - i.degree() - 1))?;
    build(n, vec![emit(i, complement_in(i.union(j), n), j)])
}

pub fn weight_mono_times_linear(i: Monomial, n: u32) -> u128 {
    pow2(n - i.degree() - 1)
}

fn weight_pair_times_linear_unchecked(n1: u32, n2: u32, n: u32) -> u128 {
    pow2(n - n1 - 1) + pow2(n - n2 - 1) - pow2(n - n1 - n2)
}

/// Inclusion-exclusion over the two halves: terms common to both cancel.
pub fn weight_pair_times_linear(i1: Monomial, i2: Monomial, j: Monomial, n: u32) -> Result<u128> {
    check_pair_times_linear(i1, i2, j, n)?;
    Ok(weight_pair_times_linear_unchecked(i1.degree(), i2.degree(), n))
}

fn check_pair_times_linear(i1: Monomial, i2: Monomial, j: Monomial, n: u32) -> Result<()> {
    check_range(&[i1, i2, j], n)?;
    if i1 == i2 {
        return Err(Error::precondition("I1 and I2 coincide"));
    }
    if !pairwise_disjoint(&[i1, i2, j]) {
        return Err(Error::precondition("I1, I2 and J must be pairwise disjoint"));
    }
    if j.is_one() {
        return Err(Error::precondition("J is empty"));
    }
    Ok(())
}

pub fn mu_pair_times_linear(i1: Monomial, i2: Monomial, j: Monomial, n: u32) -> Result<SparsePoly> {
    check_pair_times_linear(i1, i2, j, n)?;
    check_emit(pow2(n - i1.degree() - 1) + pow2(n - i2.degree() - 1))?;
    let rest = |i: Monomial| complement_in(i.union(j), n);
    build(n, vec![emit(i1, rest(i1), j), emit(i2, rest(i2), j)])
}

fn check_parity_split(i: Monomial, j: Monomial, ip: Monomial, jp: Monomial, n: u32) -> Result<()> {
    check_range(&[i, j, ip, jp], n)?;
    let all = full(n);
    if !i.is_disjoint(j) || !ip.is_disjoint(jp) || i.union(j) != all || ip.union(jp) != all {
        return Err(Error::precondition(
            "each half must split the variables into two disjoint parts",
        ));
    }
    if i.degree() % 2 == ip.degree() % 2 {
        return Err(Error::precondition("|I| and |I'| have the same parity"));
    }
    if j.is_one() || jp.is_one() {
        return Err(Error::precondition("J and J' must be non-empty"));
    }
    Ok(())
}

/// Both halves only emit degrees of a fixed parity, and the parities differ,
/// so nothing cancels.
pub fn mu_parity_split(i: Monomial, j: Monomial, ip: Monomial, jp: Monomial, n: u32) -> Result<SparsePoly> {
    check_parity_split(i, j, ip, jp, n)?;
    check_emit(pow2(n - i.degree() - 1) + pow2(n - ip.degree() - 1))?;
    build(n, vec![emit(i, Monomial::ONE, j), emit(ip, Monomial::ONE, jp)])
}

pub fn weight_parity_split(i: Monomial, j: Monomial, ip: Monomial, jp: Monomial, n: u32) -> Result<u128> {
    check_parity_split(i, j, ip, jp, n)?;
    Ok(pow2(n - i.degree() - 1) + pow2(n - ip.degree() - 1))
}

fn check_mono_pair(i: Monomial, j: Monomial, k: Monomial, n: u32, partition: bool) -> Result<()> {
    check_range(&[i, j, k], n)?;
    if !pairwise_disjoint(&[i, j, k]) {
        return Err(Error::precondition("I, J and K must be pairwise disjoint"));
    }
    if partition && i.union(j).union(k) != full(n) {
        return Err(Error::precondition("I, J and K must cover every variable"));
    }
    Ok(())
}

/// `2^(n-|L|) (2^|J| + 2^|K| - 2)`. The `X^(I+J+K)` supersets appear in
/// both halves and cancel.
fn corrected_mono_pair(l: u32, j: u32, k: u32, n: u32) -> u128 {
    pow2(n - l) * (pow2(j) + pow2(k) - 2)
}

fn mu_mono_pair(i: Monomial, j: Monomial, k: Monomial, n: u32) -> Result<SparsePoly> {
    let ij = i.union(j);
    let ik = i.union(k);
    check_emit(pow2(n - ij.degree()) + pow2(n - ik.degree()))?;
    build(
        n,
        vec![
            emit(ij, complement_in(ij, n), Monomial::ONE),
            emit(ik, complement_in(ik, n), Monomial::ONE),
        ],
    )
}

pub fn mu_mono_times_mono_pair(i: Monomial, j: Monomial, k: Monomial, n: u32) -> Result<SparsePoly> {
    check_mono_pair(i, j, k, n, true)?;
    mu_mono_pair(i, j, k, n)
}

pub fn weight_mono_times_mono_pair(i: Monomial, j: Monomial, k: Monomial, n: u32) -> Result<u128> {
    check_mono_pair(i, j, k, n, true)?;
    Ok(corrected_mono_pair(n, j.degree(), k.degree(), n))
}

pub fn mu_padded_mono_times_mono_pair(i: Monomial, j: Monomial, k: Monomial, n: u32) -> Result<SparsePoly> {
    check_mono_pair(i, j, k, n, false)?;
    mu_mono_pair(i, j, k, n)
}

pub fn weight_padded_mono_times_mono_pair(i: Monomial, j: Monomial, k: Monomial, n: u32) -> Result<u128> {
    check_mono_pair(i, j, k, n, false)?;
    let l = i.union(j).union(k).degree();
    Ok(corrected_mono_pair(l, j.degree(), k.degree(), n))
}

// ---------------------------------------------------------------------------
// Whole expressions

/// Top-level summands with the single-variable ones gathered into one
/// linear block (first), in source order otherwise.
fn blocks(e: &FactoredExpr) -> Vec<FactoredExpr> {
    let normalized = normalize(e);
    let summands: Vec<FactoredExpr> = flat_terms(&normalized).into_iter().cloned().collect();
    let (linear, rest): (Vec<_>, Vec<_>) = summands
        .into_iter()
        .partition(|s| as_monomial(s).is_some_and(|m| m.degree() == 1));
    let mut out = Vec::with_capacity(rest.len() + 1);
    match linear.len() {
        0 => {}
        1 => out.extend(linear),
        _ => out.push(FactoredExpr::Sum(linear)),
    }
    out.extend(rest);
    out
}

/// How the summands of an expression break down.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BlockStructure {
    /// Size of the linear block (single-variable summands).
    pub linear_terms: usize,
    /// Other summands, counted by the degree of their expansion.
    pub by_degree: BTreeMap<u32, usize>,
}

pub fn block_structure(e: &FactoredExpr) -> Result<BlockStructure> {
    let n = e.min_vars();
    let mut out = BlockStructure::default();
    for b in blocks(e) {
        if let Some(s) = as_linear(&b).filter(|_| matches!(b, FactoredExpr::Sum(_))) {
            out.linear_terms = s.degree() as usize;
            continue;
        }
        if as_monomial(&b).is_some_and(|m| m.degree() == 1) {
            out.linear_terms = 1;
            continue;
        }
        let d = b.expand(n)?.degree().finite().unwrap_or(0);
        *out.by_degree.entry(d).or_default() += 1;
    }
    Ok(out)
}

/// Cost attributed to one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockEstimate {
    pub block: FactoredExpr,
    /// `None` when no family applied and the bound was used.
    pub family: Option<Family>,
    pub ops: u128,
}

/// Per-block cost breakdown. Matched blocks cost their emitted term count;
/// others cost `sum 2^(n - |I|)` over their expanded monomials, what
/// expanding each monomial into its supersets would emit.
pub fn estimate_blocks(e: &FactoredExpr, n: u32) -> Result<Vec<BlockEstimate>> {
    blocks(e)
        .into_iter()
        .map(|block| {
            let hit = match_family(&block, n);
            let ops = match &hit {
                Some(h) => h.weight(),
                None => block
                    .expand(n)?
                    .monomials()
                    .iter()
                    .map(|m| pow2(n - m.degree()))
                    .sum(),
            };
            Ok(BlockEstimate {
                block,
                family: hit.map(|h| h.family),
                ops,
            })
        })
        .collect()
}

/// Terms emitted by the summand-wise closed forms.
pub fn estimate_ops(e: &FactoredExpr, n: u32) -> Result<u128> {
    Ok(estimate_blocks(e, n)?.iter().map(|b| b.ops).sum())
}

/// XOR count of a butterfly over `n` variables.
pub fn butterfly_ops(n: u32) -> u128 {
    if n == 0 {
        0
    } else {
        u128::from(n) << (n - 1)
    }
}

/// How [`fast_weight`] got its answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightRoute {
    /// One closed form for the whole expression.
    Family(Family),
    /// Per-block images merged by XOR. `fallback` blocks had no closed form
    /// and went through the general transform.
    Summandwise { matched: Vec<Family>, fallback: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastWeight {
    pub weight: u128,
    pub route: WeightRoute,
    /// The published formula, where it disagrees in form with ours.
    pub as_published: Option<u128>,
}

/// Weight of `e` over `n` variables using closed forms wherever possible.
///
/// A whole-expression match needs no materialisation. Otherwise each block
/// is transformed on its own (closed form or general algorithm) and the
/// images are XOR-merged, which is exact because the transform is linear.
pub fn fast_weight(e: &FactoredExpr, n: u32) -> Result<FastWeight> {
    if let Some(hit) = match_family(e, n) {
        return Ok(FastWeight {
            weight: hit.weight(),
            as_published: hit.weight_as_published(),
            route: WeightRoute::Family(hit.family),
        });
    }
    if e.min_vars() > n {
        return Err(Error::Domain {
            position: e.min_vars() - 1,
            nvars: n,
        });
    }
    if n > DENSE_MAX_VARS {
        return Err(Error::Capacity {
            what: "summand-wise variable count",
            requested: n.into(),
            limit: DENSE_MAX_VARS.into(),
        });
    }
    let mut image = SparsePoly::zero(n)?;
    let mut matched = Vec::new();
    let mut fallback = 0;
    for block in blocks(e) {
        let part = match match_family(&block, n) {
            Some(hit) => {
                matched.push(hit.family);
                hit.mu()?
            }
            None => {
                fallback += 1;
                mu_full(&block.expand(n)?, AlgoChoice::Auto)?.0
            }
        };
        image = image.xor_add(&part);
    }
    Ok(FastWeight {
        weight: image.len() as u128,
        route: WeightRoute::Summandwise { matched, fallback },
        as_published: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{mobius_naive, weight_naive};
    use crate::parser::{parse_poly, Indexing};

    fn m(positions: &[u32]) -> Monomial {
        Monomial::from_positions(positions.iter().copied())
    }

    fn expr(text: &str) -> FactoredExpr {
        parse_poly(text, Indexing::OneBased).unwrap()
    }

    fn check_hit(text: &str, n: u32, family: Family) -> PatternHit {
        let e = expr(text);
        let hit = match_family(&e, n).unwrap_or_else(|| panic!("{text} did not match"));
        assert_eq!(hit.family, family, "{text}");
        let p = e.expand(n).unwrap();
        assert_eq!(hit.mu().unwrap(), mobius_naive(&p).unwrap(), "{text}");
        assert_eq!(hit.weight(), u128::from(weight_naive(&p).unwrap()), "{text}");
        hit
    }

    #[test]
    fn match_family_examples() {
        let hit = check_hit("X1*X2*(X4+X5)", 5, Family::MonoTimesLinear);
        assert_eq!(hit.bindings, Bindings::MonoTimesLinear { i: m(&[0, 1]), j: m(&[3, 4]) });
        check_hit("X1+X2+X3", 3, Family::LinearSum);
        assert!(match_family(&expr("X1*X2 + X3*X4"), 4).is_none());
    }

    #[test]
    fn every_family_is_reachable() {
        check_hit("X2*X3", 4, Family::SingleMonomial);
        check_hit("1", 3, Family::SingleMonomial);
        check_hit("X4 + X1*X2", 4, Family::XnPlusP);
        check_hit("X1*X2*(X3+X4+X5)", 5, Family::MonoTimesLinear);
        check_hit("(X1*X2 + X3)*(X4+X5)", 6, Family::PairTimesLinear);
        check_hit(
            "X1*X2*X3*(X4+X5) + X2*X4*(X1+X3+X5)",
            5,
            Family::ParitySplit,
        );
        check_hit("X1*(X2*X3 + X4)", 4, Family::MonoTimesMonoPair);
        check_hit("X1*(X2*X3 + X4)", 6, Family::PaddedMonoTimesMonoPair);
        check_hit("X1*(1 + X2)", 3, Family::PaddedMonoTimesMonoPair);
    }

    #[test]
    fn normalization_sees_through_grouping() {
        check_hit("X1*(X2*(X4+X5))", 5, Family::MonoTimesLinear);
        check_hit("(X4+X5)*X2*X1", 5, Family::MonoTimesLinear);
        check_hit("X1 + (X2 + X3)", 3, Family::LinearSum);
    }

    #[test]
    fn side_conditions_block_matches() {
        assert_ne!(
            match_family(&expr("X1*(X1+X2)"), 2).map(|h| h.family),
            Some(Family::MonoTimesLinear)
        );
        assert!(match_family(&expr("(X1*X2 + X2*X3)*(X4+X5)"), 5).is_none());
        // same parity
        assert!(match_family(&expr("X1*X2*(X3+X4) + X3*X4*(X1+X2)"), 4).is_none());
        // support past n
        assert!(match_family(&expr("X5"), 4).is_none());
    }

    #[test]
    fn mono_pair_counterexample() {
        // x1 x2 + x1 x3 is 1 at (1,1,0) and (1,0,1) only
        // Written as X1*(X2 + X3) this parses as a linear factor, so build
        // the binding directly.
        let hit = PatternHit {
            family: Family::MonoTimesMonoPair,
            bindings: Bindings::MonoTimesMonoPair { i: m(&[0]), j: m(&[1]), k: m(&[2]) },
            n: 3,
        };
        let p = expr("X1*X2 + X1*X3").expand(3).unwrap();
        assert_eq!(weight_naive(&p).unwrap(), 2);
        assert_eq!(hit.weight(), 2);
        assert_eq!(hit.mu().unwrap(), mobius_naive(&p).unwrap());
        assert_eq!(hit.weight_as_published(), Some(4));
        assert_eq!(weight_mono_times_mono_pair(m(&[0]), m(&[1]), m(&[2]), 3).unwrap(), 2);
        assert_eq!(
            weight_padded_mono_times_mono_pair(m(&[0]), m(&[1]), m(&[2]), 4).unwrap(),
            4
        );
        assert_eq!(
            mu_mono_times_mono_pair(Monomial::ONE, m(&[0]), m(&[1]), 2)
                .unwrap()
                .to_string(),
            "X1 + X2"
        );
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(mu_single_monomial(m(&[0]), 2).unwrap().to_string(), "X1 + X1*X2");
        assert_eq!(mu_single_monomial(m(&[0, 1, 2]), 3).unwrap().to_string(), "X1*X2*X3");
        assert_eq!(weight_single_monomial(m(&[4]), 9), 256);
        assert_eq!(mu_linear_sum(m(&[0, 1]), 2).unwrap().to_string(), "X1 + X2");
        assert_eq!(
            mu_linear_sum(m(&[0, 1, 2]), 3).unwrap().to_string(),
            "X1 + X2 + X3 + X1*X2*X3"
        );
        assert!(mu_linear_sum(m(&[0, 1]), 3).is_err());
        assert_eq!(mu_linear_sum(full(13), 13).unwrap().len(), 4096);
        assert_eq!(
            mu_mono_times_linear(m(&[0, 1]), m(&[3, 4]), 5).unwrap(),
            expr("X1*X2*X4 + X1*X2*X5 + X1*X2*X3*X4 + X1*X2*X3*X5").expand(5).unwrap()
        );
        assert_eq!(
            mu_mono_times_linear(m(&[0, 1]), m(&[2, 3, 4]), 5).unwrap(),
            expr("X1*X2*X3 + X1*X2*X4 + X1*X2*X5 + X1*X2*X3*X4*X5").expand(5).unwrap()
        );
        assert_eq!(mu_mono_times_linear(Monomial::ONE, m(&[0]), 1).unwrap().to_string(), "X1");
        assert!(mu_mono_times_linear(m(&[0]), m(&[0, 1]), 2).is_err());
    }

    #[test]
    fn xn_plus_p_examples() {
        let x1 = SparsePoly::from_monomials(1, [m(&[0])]).unwrap();
        assert_eq!(mu_xn_plus_p(&x1, 1).unwrap().to_string(), "X1 + X2");
        let zero = SparsePoly::zero(0).unwrap();
        assert_eq!(mu_xn_plus_p(&zero, 0).unwrap().to_string(), "X1");
        let one = SparsePoly::one(0).unwrap();
        assert_eq!(mu_xn_plus_p(&one, 0).unwrap().to_string(), "1");
        assert!(mu_xn_plus_p(&x1, 0).is_err());
    }

    #[test]
    fn pair_and_parity_examples() {
        assert_eq!(
            weight_pair_times_linear(m(&[0, 1, 2]), m(&[3, 4, 5]), m(&[6, 7]), 13).unwrap(),
            896
        );
        assert_eq!(weight_pair_times_linear(m(&[0]), m(&[1]), m(&[2]), 3).unwrap(), 2);
        assert!(weight_pair_times_linear(m(&[0]), m(&[0]), m(&[2]), 3).is_err());
        let (i, j, ip, jp) = (m(&[0, 1, 2]), m(&[3, 4]), m(&[1, 3]), m(&[0, 2, 4]));
        assert_eq!(weight_parity_split(i, j, ip, jp, 5).unwrap(), 6);
        assert_eq!(
            mu_parity_split(i, j, ip, jp, 5).unwrap(),
            expr("X1*X2*X3*(X4+X5) + X2*X4*(X1+X3+X5+X1*X3*X5)").expand(5).unwrap()
        );
        assert!(weight_parity_split(i, j, m(&[0, 1, 2]), j, 5).is_err());
    }

    #[test]
    fn estimates() {
        assert_eq!(estimate_ops(&expr("X1*X2*X3"), 3).unwrap(), 1);
        assert_eq!(estimate_ops(&expr("X1+X2+X3+X4"), 4).unwrap(), 8);
        // linear block plus a fallback block X1*X2 + X2*X3: 2 + 2
        let blocks = estimate_blocks(&expr("X1 + X3 + X1*X2 + X2*X3"), 3).unwrap();
        assert_eq!(blocks.len(), 3);
        assert_eq!(blocks[0].family, Some(Family::MonoTimesLinear));
        assert_eq!(butterfly_ops(13), 53248);
    }

    #[test]
    fn fast_weight_routes() {
        let w = fast_weight(&expr("X1*X2*(X4+X5)"), 5).unwrap();
        assert_eq!((w.weight, w.route), (4, WeightRoute::Family(Family::MonoTimesLinear)));
        let e = expr("X1*X2 + X3*X4 + X2*(X3+X5)");
        let w = fast_weight(&e, 5).unwrap();
        assert_eq!(w.weight, u128::from(weight_naive(&e.expand(5).unwrap()).unwrap()));
        assert!(matches!(w.route, WeightRoute::Summandwise { .. }));
        let w = fast_weight(&expr("X1*X2 + X1*X2"), 3).unwrap();
        assert_eq!(w.weight, 0);
        assert_eq!(fast_weight(&FactoredExpr::zero(), 4).unwrap().weight, 0);
    }

    #[test]
    fn block_structure_counts() {
        let b = block_structure(&expr("X1 + X2 + X3 + X1*X2 + X2*(X3+X1) + X1*X2*X3")).unwrap();
        assert_eq!(b.linear_terms, 3);
        assert_eq!(b.by_degree, BTreeMap::from([(2, 2), (3, 1)]));
    }
}
