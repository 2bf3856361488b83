//! Dense `2^n`-bit vectors: algebraic normal forms and truth tables.
//!
//! Bit `k` describes the point (or monomial) `u` with `k = sum u_i 2^(i-1)`,
//! so the index of a monomial is exactly its [`Monomial`] mask.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Monomial, SparsePoly, DENSE_MAX_VARS};

/// Which characteristic vector a [`DenseForm`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Anf,
    TruthTable,
}

impl Role {
    /// The role on the other side of the Möbius transform.
    pub fn flipped(self) -> Role {
        match self {
            Role::Anf => Role::TruthTable,
            Role::TruthTable => Role::Anf,
        }
    }

    /// Serialization prefix, without the colon.
    pub fn prefix(self) -> &'static str {
        match self {
            Role::Anf => "anf",
            Role::TruthTable => "tt",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Anf => "ANF",
            Role::TruthTable => "truth table",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseForm {
    words: Vec<u64>,
    n: u32,
    role: Role,
}

impl DenseForm {
    pub fn zeros(n: u32, role: Role) -> Result<Self> {
        if n > DENSE_MAX_VARS {
            return Err(Error::Capacity {
                what: "dense variable count",
                requested: n.into(),
                limit: DENSE_MAX_VARS.into(),
            });
        }
        let words = ((1usize << n) + 63) / 64;
        Ok(DenseForm {
            words: vec![0; words],
            n,
            role,
        })
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(n: u32, role: Role, bits: I) -> Result<Self> {
        let mut d = Self::zeros(n, role)?;
        let mut count = 0usize;
        for (k, b) in bits.into_iter().enumerate() {
            if k >= d.len() {
                return Err(Error::precondition(format!(
                    "more than 2^{n} bits supplied"
                )));
            }
            d.set(k, b);
            count += 1;
        }
        if count != d.len() {
            return Err(Error::precondition(format!(
                "expected {} bits, got {count}",
                d.len()
            )));
        }
        Ok(d)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn role(&self) -> Role {
        self.role
    }

    /// Always `2^n`.
    pub fn len(&self) -> usize {
        1usize << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    pub(crate) fn set_role(&mut self, role: Role) {
        self.role = role;
    }

    pub fn get(&self, k: usize) -> bool {
        assert!(k < self.len(), "bit index {k} out of range");
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn set(&mut self, k: usize, value: bool) {
        assert!(k < self.len(), "bit index {k} out of range");
        let bit = 1u64 << (k % 64);
        if value {
            self.words[k / 64] |= bit;
        } else {
            self.words[k / 64] &= !bit;
        }
    }

    pub fn flip(&mut self, k: usize) {
        assert!(k < self.len(), "bit index {k} out of range");
        self.words[k / 64] ^= 1u64 << (k % 64);
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Packed storage: bit `k` is bit `k % 64` of word `k / 64`. Bits past
    /// `2^n` in the last word are always zero.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }

    /// `'0'`/`'1'` characters, leftmost is `k = 0`.
    pub fn to_bitstring(&self) -> String {
        (0..self.len())
            .map(|k| if self.get(k) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for DenseForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 8 {
            write!(f, "DenseForm({}:{})", self.role.prefix(), self.to_bitstring())
        } else {
            write!(
                f,
                "DenseForm({}, n={}, weight={})",
                self.role.prefix(),
                self.n,
                self.count_ones()
            )
        }
    }
}

/// Reads an ANF vector as a polynomial form over `n` variables.
pub fn dense_to_sparse(d: &DenseForm) -> Result<SparsePoly> {
    if d.role != Role::Anf {
        return Err(Error::Representation {
            expected: Role::Anf,
            found: d.role,
        });
    }
    let monomials = d.iter_ones().map(|k| Monomial::from_mask(k as u64)).collect();
    Ok(SparsePoly::from_sorted_unchecked(d.n, monomials))
}

/// The ANF vector of a polynomial form.
pub fn sparse_to_dense(p: &SparsePoly) -> Result<DenseForm> {
    let mut d = DenseForm::zeros(p.nvars(), Role::Anf)?;
    for m in p.monomials() {
        if let Some(pos) = m.highest_position() {
            if pos >= p.nvars() {
                return Err(Error::Domain {
                    position: pos,
                    nvars: p.nvars(),
                });
            }
        }
        d.set(m.mask() as usize, true);
    }
    Ok(d)
}

/// Hamming weight: the number of ones of a truth table.
pub fn weight(d: &DenseForm) -> Result<u64> {
    if d.role != Role::TruthTable {
        return Err(Error::Representation {
            expected: Role::TruthTable,
            found: d.role,
        });
    }
    Ok(d.count_ones())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(role: Role, s: &str) -> DenseForm {
        let n = s.len().trailing_zeros();
        DenseForm::from_bits(n, role, s.chars().map(|c| c == '1')).unwrap()
    }

    fn poly(nvars: u32, terms: &[&[u32]]) -> SparsePoly {
        SparsePoly::from_monomials(
            nvars,
            terms.iter().map(|t| Monomial::from_positions(t.iter().copied())),
        )
        .unwrap()
    }

    #[test]
    fn dense_to_sparse_examples() {
        assert_eq!(
            dense_to_sparse(&dense(Role::Anf, "0101")).unwrap(),
            poly(2, &[&[0], &[0, 1]])
        );
        let z = dense_to_sparse(&dense(Role::Anf, "00000000")).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.nvars(), 3);
        assert_eq!(
            dense_to_sparse(&dense(Role::Anf, "01010000")).unwrap(),
            poly(3, &[&[0], &[0, 1]])
        );
        assert!(matches!(
            dense_to_sparse(&dense(Role::TruthTable, "0101")),
            Err(Error::Representation { .. })
        ));
    }

    #[test]
    fn sparse_to_dense_examples() {
        let d = sparse_to_dense(&poly(4, &[&[0], &[0, 1]])).unwrap();
        assert_eq!(d.to_bitstring(), "0101000000000000");
        assert_eq!(d.role(), Role::Anf);
        assert_eq!(sparse_to_dense(&poly(1, &[])).unwrap().to_bitstring(), "00");
        assert_eq!(sparse_to_dense(&poly(2, &[&[]])).unwrap().to_bitstring(), "1000");
        assert!(sparse_to_dense(&SparsePoly::zero(27).unwrap())
            .unwrap_err()
            .is_capacity());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&dense(Role::TruthTable, "0100")).unwrap(), 1);
        assert_eq!(weight(&DenseForm::zeros(7, Role::TruthTable).unwrap()).unwrap(), 0);
        assert!(weight(&dense(Role::Anf, "0100")).is_err());
    }

    #[test]
    fn wide_vectors_use_all_words() {
        let mut d = DenseForm::zeros(8, Role::Anf).unwrap();
        d.set(0, true);
        d.set(200, true);
        d.flip(255);
        assert_eq!(d.iter_ones().collect::<Vec<_>>(), vec![0, 200, 255]);
        assert_eq!(d.count_ones(), 3);
    }

    #[test]
    fn bit_count_must_match() {
        assert!(DenseForm::from_bits(2, Role::Anf, [true, false, true]).is_err());
        assert!(DenseForm::from_bits(1, Role::Anf, [true, false, true]).is_err());
    }
}
