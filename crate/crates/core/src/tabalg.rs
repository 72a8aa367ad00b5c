//! The Abelian subalgebra spanned by the `2^n` primitive idempotents, in its
//! coordinate form.
//!
//! Every element is a table of `2^n` coefficients, one per primitive
//! idempotent. Entry `a` belongs to the idempotent whose assignment has
//! `x_i = T` exactly when bit `i - 1` of `a` is set. In these coordinates the
//! algebra product is pointwise, the idempotents are the 0/1 tables, and
//! conjugation by the odd generator `γ_{2i-1}` permutes entries by flipping
//! bit `i - 1` of the index.
//!
//! [`IdemSet`] stores 0/1 tables as packed bits; [`TableElem`] stores general
//! integer coefficients with overflow checks.

use serde::{Deserialize, Serialize};

use crate::cnf::{Assignment, Cnf, Literal};
use crate::error::{Error, Result};
use crate::limits::{self, Limits};

const WORD_BITS: u32 = 64;
const LOG_WORD: u32 = 6;

/// Masks selecting indices whose bit `s` is clear, for `s < 6`.
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

fn words_for(n: u32) -> usize {
    if n <= LOG_WORD {
        1
    } else {
        1 << (n - LOG_WORD)
    }
}

/// Valid-bit mask for the (single) word of a table with `n < 6`.
fn tail_mask(n: u32) -> u64 {
    if n >= LOG_WORD {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

fn check_var(n: u32, var: u32) -> Result<()> {
    if var == 0 || var > n {
        return Err(Error::VarOutOfRange { var, n });
    }
    Ok(())
}

/// An idempotent of the subalgebra: a 0/1 coefficient table, i.e. a set of
/// assignments.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdemSet {
    n: u32,
    words: Vec<u64>,
}

impl IdemSet {
    fn raw(n: u32, fill: u64) -> Self {
        let mut words = vec![fill; words_for(n)];
        words[0] &= tail_mask(n);
        IdemSet { n, words }
    }

    pub fn zero(n: u32) -> Result<Self> {
        Self::zero_with(n, &Limits::default())
    }

    pub fn zero_with(n: u32, lim: &Limits) -> Result<Self> {
        limits::check("IdemSet", n, lim.idem_max_n)?;
        Ok(Self::raw(n, 0))
    }

    /// The unit element: every coefficient 1.
    pub fn one(n: u32) -> Result<Self> {
        Self::one_with(n, &Limits::default())
    }

    pub fn one_with(n: u32, lim: &Limits) -> Result<Self> {
        limits::check("IdemSet", n, lim.idem_max_n)?;
        Ok(Self::raw(n, u64::MAX))
    }

    /// The idempotent of a literal: `x_i` is the set of assignments with
    /// bit `i - 1` set, `¬x_i` its complement.
    pub fn literal(n: u32, lit: Literal) -> Result<Self> {
        Self::literal_with(n, lit, &Limits::default())
    }

    pub fn literal_with(n: u32, lit: Literal, lim: &Limits) -> Result<Self> {
        limits::check("IdemSet", n, lim.idem_max_n)?;
        check_var(n, lit.var())?;
        let mut s = Self::raw(n, 0);
        s.fill_literal(lit);
        Ok(s)
    }

    fn fill_literal(&mut self, lit: Literal) {
        let bit = lit.var() - 1;
        let tail = tail_mask(self.n);
        if bit < LOG_WORD {
            let set = !LOW_MASKS[bit as usize];
            let pattern = if lit.is_positive() { set } else { !set };
            for w in &mut self.words {
                *w = pattern;
            }
            self.words[0] &= tail;
        } else {
            let stride = bit - LOG_WORD;
            for (j, w) in self.words.iter_mut().enumerate() {
                let high = (j >> stride) & 1 == 1;
                *w = if high == lit.is_positive() {
                    u64::MAX
                } else {
                    0
                };
            }
        }
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(u64) -> bool) -> Result<Self> {
        let mut s = Self::zero(n)?;
        for a in 0..s.len() {
            if f(a) {
                s.set(a, true);
            }
        }
        Ok(s)
    }

    pub fn num_vars(&self) -> u32 {
        self.n
    }

    /// Number of coefficients, `2^n`.
    pub fn len(&self) -> u64 {
        1u64 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, index: u64) -> bool {
        self.words[(index / 64) as usize] >> (index % 64) & 1 == 1
    }

    pub fn set(&mut self, index: u64, value: bool) {
        let w = &mut self.words[(index / 64) as usize];
        if value {
            *w |= 1 << (index % 64);
        } else {
            *w &= !(1 << (index % 64));
        }
    }

    fn same_dim(&self, other: &IdemSet) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    fn zip(&self, other: &IdemSet, op: impl Fn(u64, u64) -> u64) -> Result<IdemSet> {
        self.same_dim(other)?;
        Ok(IdemSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    /// Algebra product (pointwise; logical AND).
    pub fn mul(&self, other: &IdemSet) -> Result<IdemSet> {
        self.zip(other, |a, b| a & b)
    }

    /// `x + y - xy` (logical OR).
    pub fn or(&self, other: &IdemSet) -> Result<IdemSet> {
        self.zip(other, |a, b| a | b)
    }

    /// `𝟙 - s` (logical NOT).
    pub fn complement(&self) -> IdemSet {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        words[0] &= tail_mask(self.n);
        IdemSet { n: self.n, words }
    }

    /// `Δ = 𝟙 - S`, the negated problem.
    pub fn delta(&self) -> IdemSet {
        self.complement()
    }

    /// Conjugation by `γ_{2i-1}`: the coefficient at `a` moves to
    /// `a XOR 2^(i-1)`.
    pub fn reflect(&self, i: u32) -> Result<IdemSet> {
        check_var(self.n, i)?;
        let bit = i - 1;
        let words = if bit < LOG_WORD {
            let s = 1u32 << bit;
            let m = LOW_MASKS[bit as usize];
            self.words
                .iter()
                .map(|&x| ((x & m) << s) | ((x >> s) & m))
                .collect()
        } else {
            let stride = 1usize << (bit - LOG_WORD);
            (0..self.words.len())
                .map(|j| self.words[j ^ stride])
                .collect()
        };
        Ok(IdemSet { n: self.n, words })
    }

    /// Invariance under the single reflection for variable `i`.
    pub fn is_symmetric_in(&self, i: u32) -> Result<bool> {
        Ok(self.reflect(i)? == *self)
    }

    /// Invariance under every odd-generator reflection. For `n ≥ 1` this
    /// holds exactly for the two constants `0` and `𝟙`.
    pub fn is_symmetric_all(&self) -> bool {
        (1..=self.n).all(|i| self.is_symmetric_in(i).expect("index in range"))
    }

    /// Component in the subspace of `lit`: `literal(lit) · s`.
    pub fn project(&self, lit: Literal) -> Result<IdemSet> {
        check_var(self.n, lit.var())?;
        let mut l = Self::raw(self.n, 0);
        l.fill_literal(lit);
        l.mul(self)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::raw(self.n, u64::MAX)
    }

    /// Number of primitive idempotents present, i.e. the model count.
    pub fn count_models(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Indices of the set coefficients, ascending.
    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(j, &w)| {
            let base = j as u64 * u64::from(WORD_BITS);
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let t = rest.trailing_zeros();
                rest &= rest - 1;
                Some(base + u64::from(t))
            })
        })
    }

    /// The full DNF: one assignment per surviving primitive idempotent.
    pub fn dnf_terms(&self) -> Vec<Assignment> {
        self.indices()
            .map(|a| Assignment::from_index(self.n, a))
            .collect()
    }

    /// Satisfiability read off the diagonal determinant of `Δ = 𝟙 - S`:
    /// the product of Δ's 0/1 coefficients is zero iff some coefficient of
    /// `S` is 1.
    pub fn satisfiable_via_det(&self) -> bool {
        let delta = self.delta();
        let tail = tail_mask(self.n);
        // det(Δ) = ∏ coefficients, each word contributes the AND of its bits
        let det_is_one = delta
            .words
            .iter()
            .enumerate()
            .all(|(j, &w)| w == if j == 0 { tail } else { u64::MAX });
        !det_is_one
    }

    pub fn to_table(&self) -> Result<TableElem> {
        self.to_table_with(&Limits::default())
    }

    pub fn to_table_with(&self, lim: &Limits) -> Result<TableElem> {
        limits::check("TableElem", self.n, lim.table_max_n)?;
        Ok(TableElem {
            n: self.n,
            coeffs: (0..self.len()).map(|a| i64::from(self.get(a))).collect(),
        })
    }

    /// Little-endian byte image as hex: byte `j` carries indices `8j..8j+8`,
    /// lowest index in the least significant bit.
    pub fn to_hex(&self) -> String {
        let nbytes = (self.len().div_ceil(8)) as usize;
        let bytes: Vec<u8> = self
            .words
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(nbytes)
            .collect();
        hex::encode(bytes)
    }

    pub fn from_hex(n: u32, text: &str) -> Result<Self> {
        let bytes = hex::decode(text)
            .map_err(|e| Error::Precondition(format!("bad bit vector hex: {e}")))?;
        let mut s = Self::zero(n)?;
        if bytes.len() as u64 != s.len().div_ceil(8) {
            return Err(Error::Precondition(format!(
                "expected {} hex bytes for n = {n}, got {}",
                s.len().div_ceil(8),
                bytes.len()
            )));
        }
        for (j, chunk) in bytes.chunks(8).enumerate() {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            s.words[j] = u64::from_le_bytes(buf);
        }
        if s.words[0] & !tail_mask(n) != 0 {
            return Err(Error::Precondition("bits set beyond 2^n".into()));
        }
        Ok(s)
    }

    pub fn to_json(&self) -> IdemSetJson {
        IdemSetJson {
            n: self.n,
            bits_hex: self.to_hex(),
        }
    }
}

/// Truth-table export envelope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdemSetJson {
    pub n: u32,
    pub bits_hex: String,
}

impl TryFrom<IdemSetJson> for IdemSet {
    type Error = Error;
    fn try_from(j: IdemSetJson) -> Result<Self> {
        IdemSet::from_hex(j.n, &j.bits_hex)
    }
}

/// Compiles a problem to its idempotent `S = ∏_j (𝟙 - z_j)`, where `z_j`
/// is the product of the complemented literals of clause `j`.
///
/// Bit `a` of the result is set iff assignment `a` satisfies `f`.
pub fn compile_cnf(f: &Cnf) -> Result<IdemSet> {
    compile_cnf_with(f, &Limits::default())
}

pub fn compile_cnf_with(f: &Cnf, lim: &Limits) -> Result<IdemSet> {
    let n = f.num_vars();
    let mut s = IdemSet::one_with(n, lim)?;
    let mut z = IdemSet::raw(n, 0);
    let mut lit = IdemSet::raw(n, 0);
    for clause in f.clauses() {
        z.words.fill(u64::MAX);
        z.words[0] &= tail_mask(n);
        for l in clause.literals() {
            lit.fill_literal(l.negated());
            for (a, b) in z.words.iter_mut().zip(&lit.words) {
                *a &= b;
            }
        }
        for (a, b) in s.words.iter_mut().zip(&z.words) {
            *a &= !b;
        }
    }
    Ok(s)
}

impl IdemSet {
    pub fn compile(f: &Cnf) -> Result<Self> {
        compile_cnf(f)
    }
}

/// A general element of the subalgebra: `2^n` integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableElem {
    n: u32,
    coeffs: Vec<i64>,
}

/// Export envelope `{n, coeffs}`.
pub type TableJson = TableElem;

impl TableElem {
    pub fn zero(n: u32) -> Result<Self> {
        Self::zero_with(n, &Limits::default())
    }

    pub fn zero_with(n: u32, lim: &Limits) -> Result<Self> {
        limits::check("TableElem", n, lim.table_max_n)?;
        Ok(TableElem {
            n,
            coeffs: vec![0; 1 << n],
        })
    }

    pub fn one(n: u32) -> Result<Self> {
        let mut t = Self::zero(n)?;
        t.coeffs.fill(1);
        Ok(t)
    }

    pub fn from_coeffs(n: u32, coeffs: Vec<i64>) -> Result<Self> {
        limits::check("TableElem", n, Limits::default().table_max_n)?;
        if coeffs.len() as u64 != 1u64 << n {
            return Err(Error::Precondition(format!(
                "table for n = {n} needs {} coefficients, got {}",
                1u64 << n,
                coeffs.len()
            )));
        }
        Ok(TableElem { n, coeffs })
    }

    pub fn literal(n: u32, lit: Literal) -> Result<Self> {
        IdemSet::literal(n, lit)?.to_table()
    }

    pub fn num_vars(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, index: u64) -> i64 {
        self.coeffs[index as usize]
    }

    fn zip(
        &self,
        other: &TableElem,
        what: &'static str,
        op: impl Fn(i64, i64) -> Option<i64>,
    ) -> Result<TableElem> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| op(a, b).ok_or(Error::Overflow(what)))
            .collect::<Result<Vec<_>>>()?;
        Ok(TableElem { n: self.n, coeffs })
    }

    pub fn add(&self, other: &TableElem) -> Result<TableElem> {
        self.zip(other, "add", i64::checked_add)
    }

    pub fn sub(&self, other: &TableElem) -> Result<TableElem> {
        self.zip(other, "sub", i64::checked_sub)
    }

    /// Algebra product; the primitive idempotents are orthogonal so it is
    /// pointwise.
    pub fn mul(&self, other: &TableElem) -> Result<TableElem> {
        self.zip(other, "mul", i64::checked_mul)
    }

    pub fn scale(&self, k: i64) -> Result<TableElem> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| a.checked_mul(k).ok_or(Error::Overflow("scale")))
            .collect::<Result<Vec<_>>>()?;
        Ok(TableElem { n: self.n, coeffs })
    }

    /// `x² = x`, i.e. every coefficient is 0 or 1.
    pub fn is_idempotent(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0 || c == 1)
    }

    pub fn to_idemset(&self) -> Option<IdemSet> {
        if !self.is_idempotent() {
            return None;
        }
        let mut s = IdemSet::raw(self.n, 0);
        for (a, &c) in self.coeffs.iter().enumerate() {
            if c == 1 {
                s.set(a as u64, true);
            }
        }
        Some(s)
    }

    /// `coeff'[a] = coeff[a XOR 2^(i-1)]`.
    pub fn reflect(&self, i: u32) -> Result<TableElem> {
        check_var(self.n, i)?;
        let flip = 1usize << (i - 1);
        Ok(TableElem {
            n: self.n,
            coeffs: (0..self.coeffs.len())
                .map(|a| self.coeffs[a ^ flip])
                .collect(),
        })
    }

    pub fn is_symmetric_all(&self) -> bool {
        (1..=self.n).all(|i| self.reflect(i).expect("in range") == *self)
    }

    /// `δ` when the table is `δ𝟙`.
    pub fn as_scalar(&self) -> Option<i64> {
        let first = self.coeffs[0];
        self.coeffs.iter().all(|&c| c == first).then_some(first)
    }

    pub fn project(&self, lit: Literal) -> Result<TableElem> {
        check_var(self.n, lit.var())?;
        TableElem::literal(self.n, lit)?.mul(self)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Determinant of the diagonal matrix with these coefficients.
    pub fn diagonal_det(&self) -> Result<i64> {
        self.coeffs.iter().try_fold(1i64, |acc, &c| {
            acc.checked_mul(c).ok_or(Error::Overflow("determinant"))
        })
    }
}
