//! Boolean satisfiability through idempotents of an Abelian subalgebra of
//! the Clifford algebra `Cl(ℝ^{n,n})`.
//!
//! A CNF problem compiles to the idempotent whose coefficients over the
//! primitive-idempotent basis are its truth table ([`tabalg`]). A nonempty
//! problem is unsatisfiable exactly when that idempotent is invariant under
//! every generator reflection. [`symsolver`] implements the recursive
//! signed-sum symmetry algorithm built on that criterion, [`oracle`] provides
//! independent ground truth, and [`clifford`] checks the coordinate shortcuts
//! against an exact matrix model of the algebra.

pub mod clifford;
pub mod cnf;
pub mod error;
pub mod harness;
pub mod limits;
pub mod oracle;
pub mod symsolver;
pub mod tabalg;

pub use cnf::{
    five_clause_example, parse_dimacs, random_ksat, write_dimacs, Assignment, Clause, Cnf, Literal,
};
pub use error::{Error, Result};
pub use limits::Limits;
pub use oracle::{brute_force, dpll, Verdict};
pub use symsolver::{DetectorConfig, DetectorLevel, Heuristic, SignedCnf, SignedSum};
pub use tabalg::{compile_cnf, IdemSet, TableElem};
