//! Exact matrix model of `Cl(ℝ^{n,n}) ≅ ℝ(2^n)` for small `n`.
//!
//! The model exists to certify the coordinate shortcuts used by
//! [`crate::tabalg`]: that the literal idempotents `q_i p_i` and their
//! products are the diagonal primitive idempotents, and that conjugation by
//! `γ_{2i-1}` acts on them as the index bit flip.
//!
//! Generators come from a Jordan–Wigner ladder of 2×2 real matrices:
//! `γ_{2i-1} = Z^{⊗(i-1)} ⊗ X ⊗ 𝟙` and `γ_{2i} = Z^{⊗(i-1)} ⊗ J ⊗ 𝟙` with
//! `X² = 𝟙`, `J² = -𝟙` and `Z` anticommuting with both.

mod dyadic;
mod matrix;

pub use dyadic::Dyadic;
pub use matrix::Matrix;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cnf::{Cnf, Literal};
use crate::error::{Error, Result};
use crate::limits::{self, Limits};
use crate::tabalg::{compile_cnf, IdemSet, TableElem};

/// An element of the matrix model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliffordElem {
    n: u32,
    mat: Matrix,
}

impl CliffordElem {
    pub fn identity(n: u32) -> Self {
        CliffordElem {
            n,
            mat: Matrix::identity(1 << n),
        }
    }

    pub fn zero(n: u32) -> Self {
        CliffordElem {
            n,
            mat: Matrix::zeros(1 << n),
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn mul(&self, other: &CliffordElem) -> CliffordElem {
        CliffordElem {
            n: self.n,
            mat: &self.mat * &other.mat,
        }
    }

    pub fn add(&self, other: &CliffordElem) -> CliffordElem {
        CliffordElem {
            n: self.n,
            mat: &self.mat + &other.mat,
        }
    }

    pub fn sub(&self, other: &CliffordElem) -> CliffordElem {
        CliffordElem {
            n: self.n,
            mat: &self.mat - &other.mat,
        }
    }

    pub fn scale(&self, k: Dyadic) -> CliffordElem {
        CliffordElem {
            n: self.n,
            mat: self.mat.scale(k),
        }
    }

    pub fn anticomm(&self, other: &CliffordElem) -> CliffordElem {
        self.mul(other).add(&other.mul(self))
    }

    pub fn comm(&self, other: &CliffordElem) -> CliffordElem {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// Whether this is `δ𝟙` for some `δ`.
    pub fn is_scalar(&self) -> bool {
        let d = self.mat[(0, 0)];
        self.mat == Matrix::identity(self.mat.dim()).scale(d)
    }
}

/// The `2n` generators `γ_1 … γ_{2n}` satisfying
/// `γ_i γ_j + γ_j γ_i = 2 δ_ij (-1)^{i+1} 𝟙`.
pub fn build_generators(n: u32) -> Result<Vec<CliffordElem>> {
    build_generators_with(n, &Limits::default())
}

pub fn build_generators_with(n: u32, lim: &Limits) -> Result<Vec<CliffordElem>> {
    limits::check("Clifford model", n, lim.clifford_max_n)?;
    if n == 0 {
        return Err(Error::Precondition("the matrix model needs n ≥ 1".into()));
    }
    let id = Matrix::identity(2);
    let x = Matrix::from_ints(2, &[0, 1, 1, 0]);
    let j = Matrix::from_ints(2, &[0, -1, 1, 0]);
    let z = Matrix::from_ints(2, &[1, 0, 0, -1]);
    let ladder = |site: u32, center: &Matrix| {
        let mut m = Matrix::identity(1);
        for k in 0..n {
            let factor = match k.cmp(&site) {
                std::cmp::Ordering::Less => &z,
                std::cmp::Ordering::Equal => center,
                std::cmp::Ordering::Greater => &id,
            };
            m = m.kron(factor);
        }
        CliffordElem { n, mat: m }
    };
    let mut gens = Vec::with_capacity(2 * n as usize);
    for site in 0..n {
        gens.push(ladder(site, &x));
        gens.push(ladder(site, &j));
    }
    Ok(gens)
}

/// Witt (null) basis `p_i = (γ_{2i-1} + γ_{2i})/2`, `q_i = (γ_{2i-1} - γ_{2i})/2`.
pub fn witt_basis(gens: &[CliffordElem]) -> (Vec<CliffordElem>, Vec<CliffordElem>) {
    gens.chunks(2)
        .map(|pair| {
            let (odd, even) = (&pair[0], &pair[1]);
            (
                odd.add(even).scale(Dyadic::HALF),
                odd.sub(even).scale(Dyadic::HALF),
            )
        })
        .unzip()
}

/// `𝟙 = ∏ {q_i, p_i}` and `ω = ∏ [q_i, p_i]`, both computed from the Witt
/// basis.
pub fn identity_and_omega(n: u32) -> Result<(CliffordElem, CliffordElem)> {
    let gens = build_generators(n)?;
    let (p, q) = witt_basis(&gens);
    let mut one = CliffordElem::identity(n);
    let mut omega = CliffordElem::identity(n);
    for i in 0..n as usize {
        one = one.mul(&q[i].anticomm(&p[i]));
        omega = omega.mul(&q[i].comm(&p[i]));
    }
    Ok((one, omega))
}

/// Generators, Witt basis, and the location of each primitive idempotent.
#[derive(Debug, Clone)]
pub struct CliffordModel {
    n: u32,
    gens: Vec<CliffordElem>,
    p: Vec<CliffordElem>,
    q: Vec<CliffordElem>,
    /// Diagonal slot of the primitive idempotent for truth-table index `a`.
    slot: Vec<usize>,
}

impl CliffordModel {
    pub fn new(n: u32) -> Result<Self> {
        Self::with_limits(n, &Limits::default())
    }

    pub fn with_limits(n: u32, lim: &Limits) -> Result<Self> {
        let gens = build_generators_with(n, lim)?;
        let (p, q) = witt_basis(&gens);
        let dim = 1usize << n;
        // diag of q_i p_i; p_i q_i = 𝟙 - q_i p_i
        let mut literal_diag = Vec::with_capacity(n as usize);
        for i in 0..n as usize {
            let qp = q[i].mul(&p[i]);
            if !qp.mat.is_diagonal() {
                return Err(Error::Precondition(format!(
                    "q_{0} p_{0} is not diagonal in this model",
                    i + 1
                )));
            }
            literal_diag.push(qp.mat.diag());
        }
        let mut slot = Vec::with_capacity(dim);
        for a in 0..dim {
            let mut diag = vec![Dyadic::ONE; dim];
            for (i, d) in literal_diag.iter().enumerate() {
                let positive = a >> i & 1 == 1;
                for (e, &v) in diag.iter_mut().zip(d) {
                    let factor = if positive { v } else { Dyadic::ONE - v };
                    *e = *e * factor;
                }
            }
            let ones: Vec<usize> = (0..dim).filter(|&k| diag[k] == Dyadic::ONE).collect();
            let rest_zero = diag.iter().filter(|d| !d.is_zero()).count() == 1;
            match (ones.as_slice(), rest_zero) {
                ([k], true) => slot.push(*k),
                _ => {
                    return Err(Error::Precondition(format!(
                        "primitive idempotent {a} is not a diagonal unit"
                    )))
                }
            }
        }
        Ok(CliffordModel {
            n,
            gens,
            p,
            q,
            slot,
        })
    }

    pub fn num_vars(&self) -> u32 {
        self.n
    }

    pub fn generators(&self) -> &[CliffordElem] {
        &self.gens
    }

    pub fn p(&self) -> &[CliffordElem] {
        &self.p
    }

    pub fn q(&self) -> &[CliffordElem] {
        &self.q
    }

    /// 1-based generator access.
    pub fn gamma(&self, i: usize) -> Result<&CliffordElem> {
        if i == 0 || i > self.gens.len() {
            return Err(Error::GeneratorOutOfRange {
                index: i,
                max: self.gens.len(),
            });
        }
        Ok(&self.gens[i - 1])
    }

    /// The literal idempotent: `x_i ↦ q_i p_i`, `¬x_i ↦ p_i q_i`.
    pub fn literal(&self, lit: Literal) -> Result<CliffordElem> {
        let i = lit.var();
        if i == 0 || i > self.n {
            return Err(Error::VarOutOfRange { var: i, n: self.n });
        }
        let (p, q) = (&self.p[i as usize - 1], &self.q[i as usize - 1]);
        Ok(if lit.is_positive() {
            q.mul(p)
        } else {
            p.mul(q)
        })
    }

    /// The primitive idempotent for table index `a` as the genuine EFB
    /// product `ψ_1 ⋯ ψ_n`, `ψ_i ∈ {q_i p_i, p_i q_i}`.
    pub fn primitive_idempotent(&self, a: usize) -> CliffordElem {
        (1..=self.n).fold(CliffordElem::identity(self.n), |acc, i| {
            let lit = Literal::new(i, a >> (i - 1) & 1 == 1);
            acc.mul(&self.literal(lit).expect("in range"))
        })
    }

    /// Embeds a coefficient table as `Σ_a coeff[a] 𝔣_a`, using the
    /// precomputed diagonal slots.
    pub fn embed_table(&self, x: &TableElem) -> Result<CliffordElem> {
        if x.num_vars() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: x.num_vars(),
            });
        }
        let mut diag = vec![Dyadic::ZERO; 1 << self.n];
        for (a, &c) in x.coeffs().iter().enumerate() {
            diag[self.slot[a]] = Dyadic::int(c);
        }
        Ok(CliffordElem {
            n: self.n,
            mat: Matrix::diagonal(&diag),
        })
    }

    /// Same as [`CliffordModel::embed_table`] but summing full EFB products.
    pub fn embed_table_by_products(&self, x: &TableElem) -> Result<CliffordElem> {
        if x.num_vars() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: x.num_vars(),
            });
        }
        let mut acc = CliffordElem::zero(self.n);
        for (a, &c) in x.coeffs().iter().enumerate() {
            if c != 0 {
                acc = acc.add(&self.primitive_idempotent(a).scale(Dyadic::int(c)));
            }
        }
        Ok(acc)
    }

    pub fn embed_idemset(&self, s: &IdemSet) -> Result<CliffordElem> {
        self.embed_table(&s.to_table()?)
    }

    /// `γ_i x γ_i^{-1}`, with `γ_i^{-1} = ±γ_i`.
    pub fn conjugate(&self, x: &CliffordElem, i: usize) -> Result<CliffordElem> {
        let g = self.gamma(i)?;
        let conj = g.mul(x).mul(g);
        // odd generators square to +𝟙, even ones to -𝟙
        Ok(if i % 2 == 1 {
            conj
        } else {
            conj.scale(Dyadic::int(-1))
        })
    }
}

/// Pass/fail of one identity in a [`Report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub identity: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// Machine-checked list of algebra identities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn violations(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn all_pass(&self) -> bool {
        self.violations().next().is_none()
    }

    fn record(&mut self, identity: impl Into<String>, failure: Option<String>) {
        self.checks.push(Check {
            identity: identity.into(),
            status: if failure.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            counterexample: failure,
        });
    }
}

/// First failing case, if any.
fn find<I, T>(cases: I, ok: impl Fn(&T) -> bool, show: impl Fn(&T) -> String) -> Option<String>
where
    I: IntoIterator<Item = T>,
{
    cases.into_iter().find(|c| !ok(c)).map(|c| show(&c))
}

/// Number of random tables and idempotents sampled by [`verify_relations`].
pub const DEFAULT_SAMPLES: usize = 64;

/// Checks the generator, Witt-basis, identity/volume-element and
/// conjugation relations of the model, plus the centrality property on a
/// sample of idempotents.
pub fn verify_relations(n: u32) -> Result<Report> {
    verify_relations_with(n, 0, DEFAULT_SAMPLES)
}

pub fn verify_relations_with(n: u32, seed: u64, samples: usize) -> Result<Report> {
    let model = CliffordModel::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report { checks: Vec::new() };
    let dim = 1usize << n;
    let nn = n as usize;
    let one = CliffordElem::identity(n);
    let zero = CliffordElem::zero(n);
    let g = model.generators();
    let (p, q) = (model.p(), model.q());

    let pairs = |m: usize| (0..m).flat_map(move |i| (0..m).map(move |j| (i, j)));

    report.record(
        format!("n={n}: γ_i γ_j + γ_j γ_i = 2 δ_ij (-1)^(i+1) 𝟙"),
        find(
            pairs(2 * nn),
            |&(i, j)| {
                let expect = if i != j {
                    zero.clone()
                } else if i % 2 == 0 {
                    one.scale(Dyadic::int(2))
                } else {
                    one.scale(Dyadic::int(-2))
                };
                g[i].anticomm(&g[j]) == expect
            },
            |&(i, j)| format!("i={}, j={}", i + 1, j + 1),
        ),
    );
    report.record(
        format!("n={n}: {{p_i, p_j}} = 0"),
        find(
            pairs(nn),
            |&(i, j)| p[i].anticomm(&p[j]).is_zero(),
            |&(i, j)| format!("i={}, j={}", i + 1, j + 1),
        ),
    );
    report.record(
        format!("n={n}: {{q_i, q_j}} = 0"),
        find(
            pairs(nn),
            |&(i, j)| q[i].anticomm(&q[j]).is_zero(),
            |&(i, j)| format!("i={}, j={}", i + 1, j + 1),
        ),
    );
    report.record(
        format!("n={n}: {{p_i, q_j}} = δ_ij 𝟙"),
        find(
            pairs(nn),
            |&(i, j)| p[i].anticomm(&q[j]) == if i == j { one.clone() } else { zero.clone() },
            |&(i, j)| format!("i={}, j={}", i + 1, j + 1),
        ),
    );
    report.record(
        format!("n={n}: p_i² = q_i² = 0"),
        find(
            0..nn,
            |&i| p[i].mul(&p[i]).is_zero() && q[i].mul(&q[i]).is_zero(),
            |&i| format!("i={}", i + 1),
        ),
    );
    report.record(
        format!("n={n}: q_i p_i, p_i q_i orthogonal commuting idempotents"),
        find(
            pairs(nn),
            |&(i, j)| {
                let qp = q[i].mul(&p[i]);
                let pq = p[i].mul(&q[i]);
                let qpj = q[j].mul(&p[j]);
                qp.mul(&qp) == qp
                    && pq.mul(&pq) == pq
                    && qp.mul(&pq).is_zero()
                    && pq.mul(&qp).is_zero()
                    && qp.mul(&qpj) == qpj.mul(&qp)
            },
            |&(i, j)| format!("i={}, j={}", i + 1, j + 1),
        ),
    );

    let (id_efb, omega_efb) = identity_and_omega(n)?;
    report.record(
        format!("n={n}: ∏ {{q_i, p_i}} = 𝟙"),
        (id_efb != one).then(|| "product differs from the identity matrix".to_string()),
    );
    let gamma_product = g.iter().fold(one.clone(), |acc, x| acc.mul(x));
    report.record(
        format!("n={n}: ∏ [q_i, p_i] = γ_1 γ_2 ⋯ γ_2n"),
        (omega_efb != gamma_product).then(|| "volume element mismatch".to_string()),
    );
    report.record(
        format!("n={n}: γ_(2i-1) γ_(2i) = [q_i, p_i]"),
        find(
            0..nn,
            |&i| g[2 * i].mul(&g[2 * i + 1]) == q[i].comm(&p[i]),
            |&i| format!("i={}", i + 1),
        ),
    );

    // expansion of the identity into 2^n primitive idempotents
    let prims: Vec<CliffordElem> = (0..dim).map(|a| model.primitive_idempotent(a)).collect();
    let sum = prims.iter().fold(zero.clone(), |acc, x| acc.add(x));
    let idempotent = find(
        0..dim,
        |&a| prims[a].mul(&prims[a]) == prims[a],
        |&a| format!("𝔣_{a} not idempotent"),
    );
    let orthogonal = if n <= 3 {
        find(
            pairs(dim).filter(|(a, b)| a != b),
            |&(a, b)| prims[a].mul(&prims[b]).is_zero(),
            |&(a, b)| format!("𝔣_{a} 𝔣_{b} ≠ 0"),
        )
    } else {
        // diagonal units at distinct slots are pairwise orthogonal
        let mut slots = model.slot.clone();
        slots.sort_unstable();
        slots.dedup();
        (slots.len() != dim).then(|| "two primitive idempotents share a slot".to_string())
    };
    let expansion = idempotent
        .or(orthogonal)
        .or((sum != one).then(|| "Σ 𝔣_a ≠ 𝟙".to_string()));
    report.record(
        format!("n={n}: 𝟙 = Σ of {dim} orthogonal primitive idempotents"),
        expansion,
    );

    // literal reflection under each generator
    report.record(
        format!("n={n}: γ_j ρ_i γ_j⁻¹ = ρ̄_i for j ∈ {{2i-1, 2i}}, ρ_i otherwise"),
        find(
            (1..=n).flat_map(|i| (1..=2 * nn).map(move |j| (i, j))),
            |&(i, j)| {
                let rho = model.literal(Literal::pos(i)).expect("in range");
                let rho_bar = model.literal(Literal::neg(i)).expect("in range");
                let conj = model.conjugate(&rho, j).expect("in range");
                let mine = j == 2 * i as usize - 1 || j == 2 * i as usize;
                conj == if mine { rho_bar } else { rho }
            },
            |&(i, j)| format!("ρ_{i} under γ_{j}"),
        ),
    );

    // embedding of tables: literal images, diagonal fast path, homomorphism
    report.record(
        format!("n={n}: embed(ρ_i) = q_i p_i"),
        find(
            1..=n,
            |&i| {
                let t = TableElem::literal(n, Literal::pos(i)).expect("in range");
                model.embed_table(&t).ok() == model.literal(Literal::pos(i)).ok()
            },
            |&i| format!("i={i}"),
        ),
    );
    let random_table = |rng: &mut ChaCha8Rng| {
        let coeffs = (0..dim).map(|_| rng.random_range(-3..=3)).collect();
        TableElem::from_coeffs(n, coeffs).expect("sized")
    };
    let tables: Vec<TableElem> = (0..samples).map(|_| random_table(&mut rng)).collect();
    let pairs_of_tables: Vec<(TableElem, TableElem)> = (0..samples)
        .map(|_| (random_table(&mut rng), random_table(&mut rng)))
        .collect();
    if n <= 3 {
        report.record(
            format!("n={n}: diagonal embedding = Σ coeff·EFB product"),
            find(
                tables.iter(),
                |t| model.embed_table(t).ok() == model.embed_table_by_products(t).ok(),
                |t| format!("{:?}", t.coeffs()),
            ),
        );
    }
    report.record(
        format!("n={n}: embed(xy) = embed(x) embed(y)"),
        find(
            pairs_of_tables.iter(),
            |(x, y)| {
                let lhs = model.embed_table(&x.mul(y).expect("small coefficients"));
                let rhs = model
                    .embed_table(x)
                    .expect("sized")
                    .mul(&model.embed_table(y).expect("sized"));
                lhs.ok() == Some(rhs)
            },
            |(x, y)| format!("{:?} · {:?}", x.coeffs(), y.coeffs()),
        ),
    );
    report.record(
        format!("n={n}: embed(reflect(x, i)) = γ_(2i-1) embed(x) γ_(2i-1)⁻¹"),
        find(
            tables.iter().flat_map(|t| (1..=n).map(move |i| (t, i))),
            |&(t, i)| {
                let lhs = model
                    .embed_table(&t.reflect(i).expect("in range"))
                    .expect("sized");
                let rhs = model
                    .conjugate(&model.embed_table(t).expect("sized"), 2 * i as usize - 1)
                    .expect("in range");
                lhs == rhs
            },
            |&(t, i)| format!("i={i}, coeffs={:?}", t.coeffs()),
        ),
    );

    // centrality: invariant under all 2n generators iff 0 or 𝟙
    let idems: Vec<IdemSet> = if dim <= 8 {
        (0..1u64 << dim)
            .map(|mask| IdemSet::from_fn(n, |a| mask >> a & 1 == 1).expect("small"))
            .collect()
    } else {
        let mut v = vec![IdemSet::zero(n)?, IdemSet::one(n)?];
        v.extend(
            (0..samples).map(|_| IdemSet::from_fn(n, |_| rng.random_bool(0.5)).expect("small")),
        );
        v
    };
    let invariant_all = |s: &IdemSet| {
        let e = model.embed_idemset(s).expect("sized");
        (1..=2 * nn).all(|j| model.conjugate(&e, j).expect("in range") == e)
    };
    report.record(
        format!("n={n}: idempotent invariant under every γ_j ⇔ it is 0 or 𝟙"),
        find(
            idems.iter(),
            |s| invariant_all(s) == (s.is_zero() || s.is_one()),
            |s| format!("bits_hex={}", s.to_hex()),
        ),
    );

    if n >= 3 {
        let clauses = crate::cnf::five_clause_example().clauses().to_vec();
        let f = Cnf::new(n, clauses)?;
        let s = compile_cnf(&f)?;
        report.record(
            format!("n={n}: five-clause unsatisfiable instance invariant under all γ_j"),
            (!invariant_all(&s)).then(|| format!("bits_hex={}", s.to_hex())),
        );
    }
    let rho1 = IdemSet::literal(n, Literal::pos(1))?;
    let e = model.embed_idemset(&rho1)?;
    report.record(
        format!("n={n}: ρ_1 is not invariant under γ_1"),
        (model.conjugate(&e, 1)? == e).then(|| "ρ_1 fixed by γ_1".to_string()),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_squares() {
        let g = build_generators(1).unwrap();
        assert_eq!(g[0].mul(&g[0]), CliffordElem::identity(1));
        assert_eq!(
            g[1].mul(&g[1]),
            CliffordElem::identity(1).scale(Dyadic::int(-1))
        );

        let g = build_generators(2).unwrap();
        assert_eq!(g[0].mul(&g[2]), g[2].mul(&g[0]).scale(Dyadic::int(-1)));

        let g = build_generators(3).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    assert!(g[i].anticomm(&g[j]).is_zero(), "{i} {j}");
                }
            }
        }
        assert!(build_generators(8).is_err());
        assert!(build_generators(0).is_err());
    }

    #[test]
    fn witt_examples() {
        let g = build_generators(1).unwrap();
        let (p, q) = witt_basis(&g);
        assert!(p[0].mul(&p[0]).is_zero());
        assert_eq!(p[0].anticomm(&q[0]), CliffordElem::identity(1));
        let qp = q[0].mul(&p[0]);
        assert_eq!(qp.mul(&qp), qp);
    }

    #[test]
    fn identity_omega_examples() {
        let (one, _) = identity_and_omega(1).unwrap();
        assert_eq!(one, CliffordElem::identity(1));

        let (one, omega) = identity_and_omega(2).unwrap();
        assert_eq!(one, CliffordElem::identity(2));
        let g = build_generators(2).unwrap();
        assert_eq!(omega, g[0].mul(&g[1]).mul(&g[2]).mul(&g[3]));

        let model = CliffordModel::new(2).unwrap();
        let terms: Vec<CliffordElem> = (0..4).map(|a| model.primitive_idempotent(a)).collect();
        assert!(terms.iter().all(|t| t.mul(t) == *t && !t.is_zero()));
        let sum = terms
            .iter()
            .fold(CliffordElem::zero(2), |acc, t| acc.add(t));
        assert_eq!(sum, CliffordElem::identity(2));
    }

    #[test]
    fn embed_examples() {
        let model = CliffordModel::new(3).unwrap();
        assert_eq!(
            model.embed_table(&TableElem::one(3).unwrap()).unwrap(),
            CliffordElem::identity(3)
        );
        let rho1 = TableElem::literal(3, Literal::pos(1)).unwrap();
        assert_eq!(
            model.embed_table(&rho1).unwrap(),
            model.q()[0].mul(&model.p()[0])
        );
        assert_eq!(
            model.embed_table(&rho1).unwrap(),
            model.embed_table_by_products(&rho1).unwrap()
        );
    }

    #[test]
    fn conjugate_examples() {
        let model = CliffordModel::new(2).unwrap();
        let rho1 = model
            .embed_table(&TableElem::literal(2, Literal::pos(1)).unwrap())
            .unwrap();
        let rho1b = model
            .embed_table(&TableElem::literal(2, Literal::neg(1)).unwrap())
            .unwrap();
        let rho2 = model
            .embed_table(&TableElem::literal(2, Literal::pos(2)).unwrap())
            .unwrap();
        assert_eq!(model.conjugate(&rho1, 1).unwrap(), rho1b);
        assert_eq!(model.conjugate(&rho2, 1).unwrap(), rho2);
        for i in 1..=4 {
            assert_eq!(
                model.conjugate(&CliffordElem::identity(2), i).unwrap(),
                CliffordElem::identity(2)
            );
        }
        assert!(model.conjugate(&rho1, 5).is_err());
        assert!(model.conjugate(&rho1, 0).is_err());
    }

    #[test]
    fn report_n2_passes() {
        let r = verify_relations(2).unwrap();
        assert!(r.all_pass(), "{:?}", r.violations().collect::<Vec<_>>());
        let json = serde_json::to_value(&r).unwrap();
        assert!(json.is_array());
        assert_eq!(json[0]["status"], "pass");
        assert!(json[0].get("counterexample").is_none());
    }

    #[test]
    fn report_includes_five_clause_sample() {
        let r = verify_relations(3).unwrap();
        assert!(r.all_pass());
        assert!(r.checks.iter().any(|c| c.identity.contains("five-clause")));
    }

    #[test]
    fn scalar_detection() {
        assert!(CliffordElem::identity(2).scale(Dyadic::HALF).is_scalar());
        let model = CliffordModel::new(2).unwrap();
        assert!(!model.literal(Literal::pos(1)).unwrap().is_scalar());
    }
}
