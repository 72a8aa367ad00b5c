//! CNF data model: literals, clauses, problems and assignments.
//!
//! Variables are 1-based. A problem with no clauses is the constant true
//! (the unit element of the algebra) and a problem holding an empty clause
//! is the constant false.

mod dimacs;
mod random;

pub use dimacs::{parse_dimacs, parse_dimacs_with_warnings, write_dimacs, DimacsError};
pub use random::random_ksat;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Boolean variable or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    var: u32,
    positive: bool,
}

impl Literal {
    /// # Panics
    ///
    /// Panics if `var` is 0.
    pub fn new(var: u32, positive: bool) -> Self {
        assert!(var >= 1, "variables are 1-based");
        Literal { var, positive }
    }

    pub fn pos(var: u32) -> Self {
        Literal::new(var, true)
    }

    pub fn neg(var: u32) -> Self {
        Literal::new(var, false)
    }

    /// Builds a literal from its signed DIMACS form.
    pub fn from_dimacs(lit: i64) -> Result<Self> {
        if lit == 0 {
            return Err(Error::ZeroVariable);
        }
        let var = u32::try_from(lit.unsigned_abs()).map_err(|_| Error::VarOutOfRange {
            var: u32::MAX,
            n: u32::MAX,
        })?;
        Ok(Literal::new(var, lit > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            i64::from(self.var)
        } else {
            -i64::from(self.var)
        }
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    /// Truth value of the literal when its variable takes `value`.
    pub fn holds(self, value: bool) -> bool {
        value == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "¬x{}", self.var)
        }
    }
}

/// A disjunction of literals, kept in insertion order without duplicates.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    /// Builds a clause, dropping repeated literals.
    pub fn new<I: IntoIterator<Item = Literal>>(lits: I) -> Self {
        let mut literals: Vec<Literal> = Vec::new();
        for lit in lits {
            if !literals.contains(&lit) {
                literals.push(lit);
            }
        }
        Clause { literals }
    }

    pub fn empty() -> Self {
        Clause::default()
    }

    pub fn from_dimacs(lits: &[i64]) -> Result<Self> {
        let lits = lits
            .iter()
            .map(|&l| Literal::from_dimacs(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(Clause::new(lits))
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// True when some variable appears in both polarities.
    pub fn is_tautological(&self) -> bool {
        self.literals
            .iter()
            .any(|l| self.literals.contains(&l.negated()))
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.contains(&lit)
    }

    pub fn mentions(&self, var: u32) -> bool {
        self.literals.iter().any(|l| l.var == var)
    }

    pub fn eval(&self, a: &Assignment) -> bool {
        self.literals.iter().any(|l| l.holds(a.get(l.var)))
    }

    /// Sorted literal list, used for order-insensitive comparison.
    pub fn canonical(&self) -> Vec<i64> {
        let mut key: Vec<i64> = self.literals.iter().map(|l| l.to_dimacs()).collect();
        key.sort_unstable();
        key
    }

    fn without_var(&self, var: u32) -> Clause {
        Clause {
            literals: self
                .literals
                .iter()
                .copied()
                .filter(|l| l.var != var)
                .collect(),
        }
    }
}

impl PartialEq for Clause {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for Clause {}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return write!(f, "()");
        }
        write!(f, "(")?;
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∨ ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// A truth assignment to variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment { bits }
    }

    pub fn all_false(n: u32) -> Self {
        Assignment {
            bits: vec![false; n as usize],
        }
    }

    /// Decodes a truth-table index: bit `i - 1` of `index` is the value of `x_i`.
    pub fn from_index(n: u32, index: u64) -> Self {
        Assignment {
            bits: (0..n).map(|i| index >> i & 1 == 1).collect(),
        }
    }

    /// Inverse of [`Assignment::from_index`].
    ///
    /// # Panics
    ///
    /// Panics if the assignment has more than 64 variables.
    pub fn to_index(&self) -> u64 {
        assert!(self.bits.len() <= 64);
        self.bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i))
    }

    pub fn len(&self) -> u32 {
        self.bits.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Value of variable `var` (1-based).
    pub fn get(&self, var: u32) -> bool {
        self.bits[(var - 1) as usize]
    }

    pub fn set(&mut self, var: u32, value: bool) {
        self.bits[(var - 1) as usize] = value;
    }

    pub fn with(&self, var: u32, value: bool) -> Self {
        let mut a = self.clone();
        a.set(var, value);
        a
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Signed DIMACS literals, one per variable.
    pub fn to_dimacs(&self) -> Vec<i64> {
        self.bits
            .iter()
            .enumerate()
            .map(|(i, &b)| if b { i as i64 + 1 } else { -(i as i64 + 1) })
            .collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{}", if *b { 'T' } else { 'F' })?;
        }
        Ok(())
    }
}

/// A SAT problem: a variable count and a conjunction of clauses.
///
/// Equality is logical-syntactic: clause and literal order are ignored, as
/// are repeated clauses.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Cnf {
    n: u32,
    clauses: Vec<Clause>,
}

impl Cnf {
    /// Builds a problem, checking that every literal uses a variable in `1..=n`.
    pub fn new(n: u32, clauses: Vec<Clause>) -> Result<Self> {
        for c in &clauses {
            for l in c.literals() {
                if l.var > n {
                    return Err(Error::VarOutOfRange { var: l.var, n });
                }
            }
        }
        Ok(Cnf { n, clauses })
    }

    /// Convenience constructor from signed DIMACS literal lists.
    pub fn from_dimacs(n: u32, clauses: &[&[i64]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| Clause::from_dimacs(c))
            .collect::<Result<Vec<_>>>()?;
        Cnf::new(n, clauses)
    }

    /// The clause-free problem (always true).
    pub fn tautology(n: u32) -> Self {
        Cnf {
            n,
            clauses: Vec::new(),
        }
    }

    /// A problem holding one empty clause (always false).
    pub fn contradiction(n: u32) -> Self {
        Cnf {
            n,
            clauses: vec![Clause::empty()],
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.n
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_clause_free(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    /// Conjunction of two problems over the same variables.
    pub fn and(&self, other: &Cnf) -> Result<Cnf> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut clauses = self.clauses.clone();
        clauses.extend(other.clauses.iter().cloned());
        Ok(Cnf { n: self.n, clauses })
    }

    /// Variables that occur in at least one clause, ascending.
    pub fn occurring_vars(&self) -> Vec<u32> {
        let mut seen = vec![false; self.n as usize + 1];
        for c in &self.clauses {
            for l in c.literals() {
                seen[l.var as usize] = true;
            }
        }
        (1..=self.n).filter(|&v| seen[v as usize]).collect()
    }

    /// Removes tautological and repeated clauses.
    pub fn normalize(&self) -> Cnf {
        let mut seen = HashSet::new();
        let clauses = self
            .clauses
            .iter()
            .filter(|c| !c.is_tautological())
            .filter(|c| seen.insert(c.canonical()))
            .cloned()
            .collect();
        Cnf { n: self.n, clauses }
    }

    /// True when at least one clause survives normalization.
    pub fn is_nonempty_normalized(&self) -> bool {
        self.clauses.iter().any(|c| !c.is_tautological())
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool> {
        if a.len() != self.n {
            return Err(Error::AssignmentLength {
                expected: self.n,
                got: a.len(),
            });
        }
        Ok(self.clauses.iter().all(|c| c.eval(a)))
    }

    /// Evaluates at the assignment encoded by a truth-table index.
    pub fn eval_index(&self, index: u64) -> bool {
        self.clauses.iter().all(|c| {
            c.literals()
                .iter()
                .any(|l| l.holds(index >> (l.var - 1) & 1 == 1))
        })
    }

    fn check_var(&self, v: u32) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::VarOutOfRange { var: v, n: self.n });
        }
        Ok(())
    }

    /// Cofactor for `x_v = value`: satisfied clauses go, the literal on `v`
    /// is stripped from the others. Variable indices are kept.
    pub fn restrict(&self, v: u32, value: bool) -> Result<Cnf> {
        self.check_var(v)?;
        let sat = Literal::new(v, value);
        let clauses = self
            .clauses
            .iter()
            .filter(|c| !c.contains(sat))
            .map(|c| c.without_var(v))
            .collect();
        Ok(Cnf { n: self.n, clauses })
    }

    /// Splits the clauses by their relation to variable `v`.
    ///
    /// Returns `(rest, had_positive, had_negative)` where `rest` holds the
    /// clauses not mentioning `v`, and the other two hold the clauses that
    /// contained `x_v` (resp. `¬x_v`) with that literal removed. Then
    /// `restrict(v, false) ≡ rest ∧ had_positive` and
    /// `restrict(v, true) ≡ rest ∧ had_negative`.
    pub fn clause_split(&self, v: u32) -> Result<(Cnf, Cnf, Cnf)> {
        self.check_var(v)?;
        let (mut rest, mut with_pos, mut with_neg) = (Vec::new(), Vec::new(), Vec::new());
        for c in &self.clauses {
            let pos = c.contains(Literal::pos(v));
            let neg = c.contains(Literal::neg(v));
            match (pos, neg) {
                (false, false) => rest.push(c.clone()),
                (true, false) => with_pos.push(c.without_var(v)),
                (false, true) => with_neg.push(c.without_var(v)),
                // tautological on v: satisfied in both branches
                (true, true) => {}
            }
        }
        let n = self.n;
        Ok((
            Cnf { n, clauses: rest },
            Cnf {
                n,
                clauses: with_pos,
            },
            Cnf {
                n,
                clauses: with_neg,
            },
        ))
    }

    /// Sorted, de-duplicated clause keys.
    pub fn canonical(&self) -> Vec<Vec<i64>> {
        let mut keys: Vec<Vec<i64>> = self.clauses.iter().map(Clause::canonical).collect();
        keys.sort();
        keys.dedup();
        keys
    }
}

impl PartialEq for Cnf {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.canonical() == other.canonical()
    }
}

impl Eq for Cnf {}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "𝟙");
        }
        for c in &self.clauses {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// The five-clause, three-variable unsatisfiable instance
/// `(x1 ∨ ¬x2)(x2 ∨ x3)(¬x1 ∨ ¬x3)(¬x1 ∨ ¬x2 ∨ x3)(x1 ∨ x2 ∨ ¬x3)`.
pub fn five_clause_example() -> Cnf {
    Cnf::from_dimacs(
        3,
        &[&[1, -2], &[2, 3], &[-1, -3], &[-1, -2, 3], &[1, 2, -3]],
    )
    .expect("static instance is well formed")
}
