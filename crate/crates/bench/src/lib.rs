//! Fixed instance sets shared by the criterion benches.

use clifsat::{random_ksat, Cnf};

/// Clause-to-variable ratio near the 3-SAT phase transition.
pub const HARD_RATIO: f64 = 4.3;

/// `count` random 3-SAT instances over `n` variables at `ratio`, seeded
/// `seed, seed + 1, ...`.
pub fn ksat_suite(n: u32, ratio: f64, count: usize, seed: u64) -> Vec<Cnf> {
    let m = (ratio * f64::from(n)).round() as usize;
    (0..count as u64)
        .map(|i| random_ksat(n, m, 3.min(n), seed + i).expect("valid parameters"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_deterministic() {
        let a = ksat_suite(6, HARD_RATIO, 3, 1);
        assert_eq!(a, ksat_suite(6, HARD_RATIO, 3, 1));
        assert!(a.iter().all(|f| f.num_clauses() == 26));
    }
}
