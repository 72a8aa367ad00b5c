//! Seeded uniform random k-SAT.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Clause, Cnf, Literal};
use crate::error::{Error, Result};

/// `m` clauses, each over `k` distinct uniformly drawn variables with
/// independent fair polarities. Duplicate clauses may occur.
///
/// The stream is ChaCha8 seeded with `seed`, so output is stable for a given
/// crate version.
pub fn random_ksat(n: u32, m: usize, k: u32, seed: u64) -> Result<Cnf> {
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..m)
        .map(|_| {
            let vars = sample(&mut rng, n as usize, k as usize);
            Clause::new(
                vars.into_iter()
                    .map(|v| Literal::new(v as u32 + 1, rng.random_bool(0.5))),
            )
        })
        .collect();
    Cnf::new(n, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_clauses() {
        assert!(random_ksat(3, 0, 3, 1).unwrap().is_clause_free());
    }

    #[test]
    fn deterministic_for_seed() {
        let a = random_ksat(3, 5, 3, 99).unwrap();
        let b = random_ksat(3, 5, 3, 99).unwrap();
        assert_eq!(a.clauses(), b.clauses());
        assert_eq!(a.num_clauses(), 5);
    }

    #[test]
    fn distinct_vars_per_clause() {
        for seed in 0..20 {
            let f = random_ksat(10, 43, 3, seed).unwrap();
            assert_eq!(f.num_clauses(), 43);
            for c in f.clauses() {
                assert_eq!(c.len(), 3);
                let mut vars: Vec<u32> = c.literals().iter().map(|l| l.var()).collect();
                vars.sort_unstable();
                vars.dedup();
                assert_eq!(vars.len(), 3);
                assert!(vars.iter().all(|&v| (1..=10).contains(&v)));
            }
        }
    }

    #[test]
    fn rejects_bad_k() {
        assert_eq!(random_ksat(2, 1, 3, 0), Err(Error::InvalidK { k: 3, n: 2 }));
        assert!(random_ksat(2, 1, 0, 0).is_err());
    }
}
