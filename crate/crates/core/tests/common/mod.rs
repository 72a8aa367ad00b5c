#![allow(dead_code)]

use clifsat::{Clause, Cnf, Literal};
use proptest::prelude::*;

/// Every non-tautological clause over `1..=n` with at most `k` literals,
/// including the empty clause.
pub fn clause_pool(n: u32, k: usize) -> Vec<Clause> {
    let mut pool = Vec::new();
    // each variable is absent, positive or negative
    let total = 3u32.pow(n);
    for code in 0..total {
        let mut lits = Vec::new();
        let mut c = code;
        for v in 1..=n {
            match c % 3 {
                1 => lits.push(Literal::pos(v)),
                2 => lits.push(Literal::neg(v)),
                _ => {}
            }
            c /= 3;
        }
        if lits.len() <= k {
            pool.push(Clause::new(lits));
        }
    }
    pool
}

/// Calls `visit` on every set of `1..=max_m` distinct clauses from `pool`.
pub fn for_each_clause_set(n: u32, pool: &[Clause], max_m: usize, mut visit: impl FnMut(Cnf)) {
    fn rec(
        n: u32,
        pool: &[Clause],
        start: usize,
        max_m: usize,
        chosen: &mut Vec<Clause>,
        visit: &mut dyn FnMut(Cnf),
    ) {
        if !chosen.is_empty() {
            visit(Cnf::new(n, chosen.clone()).unwrap());
        }
        if chosen.len() == max_m {
            return;
        }
        for i in start..pool.len() {
            chosen.push(pool[i].clone());
            rec(n, pool, i + 1, max_m, chosen, visit);
            chosen.pop();
        }
    }
    rec(n, pool, 0, max_m, &mut Vec::new(), &mut visit);
}

/// Brute-force truth table of `f`, computed clause by clause from the
/// literal semantics alone.
pub fn truth_table(f: &Cnf) -> Vec<bool> {
    let n = f.num_vars();
    (0..1u64 << n)
        .map(|a| {
            f.clauses().iter().all(|c| {
                c.literals()
                    .iter()
                    .any(|l| ((a >> (l.var() - 1)) & 1 == 1) == l.is_positive())
            })
        })
        .collect()
}

pub fn literal_strategy(n: u32) -> impl Strategy<Value = Literal> {
    (1..=n, any::<bool>()).prop_map(|(v, s)| Literal::new(v, s))
}

pub fn clause_strategy(n: u32) -> impl Strategy<Value = Clause> {
    prop_oneof![
        1 => Just(Clause::empty()),
        30 => prop::collection::vec(literal_strategy(n), 1..=3).prop_map(Clause::new),
    ]
}

/// Random CNF over exactly `n` variables with up to `max_m` clauses.
pub fn cnf_with_n(n: u32, max_m: usize) -> impl Strategy<Value = Cnf> {
    prop::collection::vec(clause_strategy(n), 0..=max_m)
        .prop_map(move |cs| Cnf::new(n, cs).unwrap())
}

pub fn cnf_strategy(max_n: u32, max_m: usize) -> impl Strategy<Value = Cnf> {
    (1..=max_n).prop_flat_map(move |n| cnf_with_n(n, max_m))
}
