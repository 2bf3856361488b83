//! Monomials and sparse polynomial forms over GF(2).
//!
//! A [`SparsePoly`] is an element of `K2[X1..Xn] / <Xi^2>` stored as the
//! sorted list of its monomials. Position `i` of a [`Monomial`] mask is the
//! indeterminate written `X{i+1}` in one-based text.

use std::cmp::Ordering;
use std::fmt;
use std::ops::BitXor;

use crate::error::{Error, Result};

/// Widest monomial a [`SparsePoly`] can hold.
pub const MAX_VARS: u32 = 64;

/// Largest variable count for anything that materialises `2^n` entries.
pub const DENSE_MAX_VARS: u32 = 26;

/// A product of distinct indeterminates, encoded as a bitmask of positions.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(u64);

impl Monomial {
    /// The empty product.
    pub const ONE: Monomial = Monomial(0);

    pub const fn from_mask(mask: u64) -> Self {
        Monomial(mask)
    }

    /// The single indeterminate at `pos`. Panics if `pos >= 64`.
    pub fn var(pos: u32) -> Self {
        assert!(pos < MAX_VARS, "variable position {pos} out of range");
        Monomial(1 << pos)
    }

    pub fn from_positions<I: IntoIterator<Item = u32>>(positions: I) -> Self {
        positions
            .into_iter()
            .fold(Monomial::ONE, |m, p| m.with(p))
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_one(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, pos: u32) -> bool {
        pos < MAX_VARS && self.0 >> pos & 1 == 1
    }

    /// `self` divides `other`, i.e. its positions are a subset.
    pub const fn divides(self, other: Monomial) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Monomial) -> bool {
        self.0 & other.0 == 0
    }

    /// Product of Boolean monomials: `x_i * x_i = x_i`.
    pub const fn union(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    pub const fn without(self, pos: u32) -> Monomial {
        Monomial(self.0 & !(1u64 << pos))
    }

    pub fn with(self, pos: u32) -> Monomial {
        self.union(Monomial::var(pos))
    }

    /// Positions in ascending order.
    pub fn positions(self) -> Positions {
        Positions(self.0)
    }

    pub fn highest_position(self) -> Option<u32> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros())
    }
}

/// Iterator over the set positions of a mask.
#[derive(Debug, Clone)]
pub struct Positions(u64);

impl Iterator for Positions {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Positions {}

impl fmt::Display for Monomial {
    /// One-based, `*`-separated: `X1*X3`, or `1` for the empty product.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, p) in self.positions().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "X{}", p + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

/// Degree or valuation, with `-inf` for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Polynomial form of a Boolean function: a duplicate-free, ascending list
/// of monomials together with the declared variable count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    monomials: Vec<Monomial>,
    nvars: u32,
}

fn check_nvars(nvars: u32) -> Result<()> {
    if nvars > MAX_VARS {
        return Err(Error::Capacity {
            what: "sparse variable count",
            requested: nvars.into(),
            limit: MAX_VARS.into(),
        });
    }
    Ok(())
}

fn check_fits(m: Monomial, nvars: u32) -> Result<()> {
    match m.highest_position() {
        Some(p) if p >= nvars => Err(Error::Domain { position: p, nvars }),
        _ => Ok(()),
    }
}

impl SparsePoly {
    pub fn zero(nvars: u32) -> Result<Self> {
        check_nvars(nvars)?;
        Ok(SparsePoly {
            monomials: Vec::new(),
            nvars,
        })
    }

    pub fn one(nvars: u32) -> Result<Self> {
        Self::from_monomials(nvars, [Monomial::ONE])
    }

    /// Builds a polynomial from any monomial sequence. Repeated monomials
    /// cancel in pairs.
    pub fn from_monomials<I>(nvars: u32, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        check_nvars(nvars)?;
        let mut v: Vec<Monomial> = monomials.into_iter().collect();
        for &m in &v {
            check_fits(m, nvars)?;
        }
        v.sort_unstable();
        let mut out = Vec::with_capacity(v.len());
        let mut k = 0;
        while k < v.len() {
            let mut run = 1;
            while k + run < v.len() && v[k + run] == v[k] {
                run += 1;
            }
            if run % 2 == 1 {
                out.push(v[k]);
            }
            k += run;
        }
        Ok(SparsePoly {
            monomials: out,
            nvars,
        })
    }

    /// Caller guarantees strictly ascending monomials that fit in `nvars`.
    pub(crate) fn from_sorted_unchecked(nvars: u32, monomials: Vec<Monomial>) -> Self {
        debug_assert!(monomials.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(monomials
            .last()
            .map_or(true, |m| check_fits(*m, nvars).is_ok()));
        SparsePoly { monomials, nvars }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn into_monomials(self) -> Vec<Monomial> {
        self.monomials
    }

    pub fn nvars(&self) -> u32 {
        self.nvars
    }

    /// Number of monomials, `N(P)`.
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.monomials.binary_search(&m).is_ok()
    }

    /// Same monomials, declared over `nvars` variables.
    pub fn with_nvars(&self, nvars: u32) -> Result<Self> {
        check_nvars(nvars)?;
        if let Some(m) = self.monomials.last() {
            check_fits(*m, nvars)?;
        }
        Ok(SparsePoly {
            monomials: self.monomials.clone(),
            nvars,
        })
    }

    /// Union of all positions used.
    pub fn support(&self) -> Monomial {
        self.monomials
            .iter()
            .fold(Monomial::ONE, |acc, m| acc.union(*m))
    }

    pub fn degree(&self) -> Degree {
        self.monomials
            .iter()
            .map(|m| m.degree())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn valuation(&self) -> Degree {
        self.monomials
            .iter()
            .map(|m| m.degree())
            .min()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Addition in GF(2): symmetric difference of the monomial sets.
    pub fn xor_add(&self, other: &SparsePoly) -> SparsePoly {
        SparsePoly {
            monomials: xor_sorted(&self.monomials, &other.monomials),
            nvars: self.nvars.max(other.nvars),
        }
    }

    /// Product of the underlying Boolean functions (`x_i * x_i = x_i`).
    ///
    /// This is the product used when expanding factored expressions. The
    /// quotient-ring product, where shared indeterminates annihilate, is
    /// [`crate::transforms::exclusive_mul`].
    pub fn product(&self, other: &SparsePoly) -> SparsePoly {
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for a in &self.monomials {
            for b in &other.monomials {
                terms.push(a.union(*b));
            }
        }
        // Every position already fits in max(nvars).
        SparsePoly::from_monomials(self.nvars.max(other.nvars), terms)
            .expect("product stays within declared variables")
    }

    /// `X^m * P` for a monomial `m` disjoint from every monomial of `P`.
    pub(crate) fn shifted_disjoint(&self, m: Monomial) -> Vec<Monomial> {
        self.monomials.iter().map(|x| x.union(m)).collect()
    }

    /// Reed-Muller split in position `i`: `P = p0 + X_i * p1`.
    pub fn decompose(&self, i: u32) -> Result<RMSplit> {
        if i >= self.nvars {
            return Err(Error::Domain {
                position: i,
                nvars: self.nvars,
            });
        }
        let (with, without): (Vec<Monomial>, Vec<Monomial>) =
            self.monomials.iter().partition(|m| m.contains(i));
        // Dropping the same absent bit keeps the order strictly ascending.
        let cofactor = with.into_iter().map(|m| m.without(i)).collect();
        Ok(RMSplit {
            p0: SparsePoly::from_sorted_unchecked(self.nvars, without),
            p1: SparsePoly::from_sorted_unchecked(self.nvars, cofactor),
            i,
        })
    }

    /// The polynomial form of the complementary function, `P + prod(1 + X_i)`.
    pub fn complement(&self) -> Result<SparsePoly> {
        if self.nvars > DENSE_MAX_VARS {
            return Err(Error::Capacity {
                what: "complement variable count",
                requested: self.nvars.into(),
                limit: DENSE_MAX_VARS.into(),
            });
        }
        let full = 1u64 << self.nvars;
        let mut out = Vec::with_capacity((full as usize).saturating_sub(self.len()));
        let mut present = self.monomials.iter().peekable();
        for mask in 0..full {
            if present.peek().map(|m| m.mask()) == Some(mask) {
                present.next();
            } else {
                out.push(Monomial(mask));
            }
        }
        Ok(SparsePoly::from_sorted_unchecked(self.nvars, out))
    }

    /// Value at the point whose coordinate `i` is bit `i` of `point`.
    pub fn evaluate_mask(&self, point: u64) -> bool {
        self.monomials
            .iter()
            .filter(|m| m.mask() & point == m.mask())
            .count()
            % 2
            == 1
    }

    pub fn evaluate(&self, point: &[bool]) -> Result<bool> {
        if point.len() != self.nvars as usize {
            return Err(Error::Dimension {
                expected: self.nvars as usize,
                found: point.len(),
            });
        }
        let mask = point
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i));
        Ok(self.evaluate_mask(mask))
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly(n={}, {self})", self.nvars)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, m) in self.monomials.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl BitXor for &SparsePoly {
    type Output = SparsePoly;

    fn bitxor(self, rhs: &SparsePoly) -> SparsePoly {
        self.xor_add(rhs)
    }
}

/// The two halves of a Reed-Muller split in one position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMSplit {
    /// Monomials without `X_i`.
    pub p0: SparsePoly,
    /// Cofactor of `X_i`.
    pub p1: SparsePoly,
    pub i: u32,
}

impl RMSplit {
    /// `p0 + X_i * p1`.
    pub fn recombine(&self) -> SparsePoly {
        let lifted = SparsePoly::from_sorted_unchecked(
            self.p0.nvars,
            self.p1.shifted_disjoint(Monomial::var(self.i)),
        );
        self.p0.xor_add(&lifted)
    }
}

/// Symmetric difference of two strictly ascending slices.
pub(crate) fn xor_sorted(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
