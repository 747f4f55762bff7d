//! Isomorphism invariants and the necessary conditions they impose on
//! degenerations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{IdentityKind, SeriesKind, Side, StructureTensor};
use crate::error::{Error, Result};
use crate::exact::Field;
use crate::linalg::{Matrix, Subspace};

/// Dimension of the derivation algebra, from the `n³ × n²` linear system
/// `D(e_i e_j) = D(e_i) e_j + e_i D(e_j)` in the entries of `D`.
pub fn derivation_dimension<F: Field>(a: &StructureTensor<F>) -> usize {
    let n = a.dim();
    if a.is_abelian() {
        return n * n;
    }
    // unknown D[p][q] (coefficient of e_p in D(e_q)) sits at column p * n + q
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![F::zero(); n * n];
                for c in 0..n {
                    let g = a.get(i, j, c);
                    if !g.is_zero() {
                        row[k * n + c] = row[k * n + c].clone() + g;
                    }
                }
                for p in 0..n {
                    let g = a.get(p, j, k);
                    if !g.is_zero() {
                        row[p * n + i] = row[p * n + i].clone() - g;
                    }
                    let g = a.get(i, p, k);
                    if !g.is_zero() {
                        row[p * n + j] = row[p * n + j].clone() - g;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return n * n;
    }
    n * n - Matrix::from_rows(rows).expect("uniform rows").rank()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub dim_der: usize,
    pub dim_rann: usize,
    pub dim_lann: usize,
    pub dim_square: usize,
    pub lcs_dims: Vec<usize>,
    pub derived_dims: Vec<usize>,
    pub is_nilpotent: bool,
    pub is_solvable: bool,
    pub identity_flags: BTreeMap<IdentityKind, bool>,
}

pub fn fingerprint<F: Field>(a: &StructureTensor<F>) -> Fingerprint {
    let dims = |s: Vec<Subspace<F>>| s.iter().map(Subspace::dim).collect::<Vec<_>>();
    let lcs_dims = dims(a.power_series(SeriesKind::LowerCentral));
    let derived_dims = dims(a.power_series(SeriesKind::Derived));
    Fingerprint {
        dim: a.dim(),
        dim_der: derivation_dimension(a),
        dim_rann: a.annihilator(Side::Right).dim(),
        dim_lann: a.annihilator(Side::Left).dim(),
        dim_square: a.square().dim(),
        is_nilpotent: lcs_dims.last() == Some(&0),
        is_solvable: derived_dims.last() == Some(&0),
        lcs_dims,
        derived_dims,
        identity_flags: IdentityKind::ALL
            .iter()
            .map(|&k| (k, a.satisfies(k)))
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    NoObstruction,
    Obstructed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub rule_name: String,
    pub source_value: Value,
    pub target_value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub violated: Vec<Violation>,
}

impl ObstructionReport {
    pub fn is_obstructed(&self) -> bool {
        self.verdict == Verdict::Obstructed
    }

    pub fn violates(&self, rule_prefix: &str) -> bool {
        self.violated
            .iter()
            .any(|v| v.rule_name.starts_with(rule_prefix))
    }
}

/// Necessary conditions for `source` to degenerate to `target`. A report
/// without violations makes no existence claim.
pub fn obstructions(source: &Fingerprint, target: &Fingerprint) -> Result<ObstructionReport> {
    if source.dim != target.dim {
        return Err(Error::DimensionMismatch {
            expected: source.dim,
            found: target.dim,
        });
    }
    let mut violated = Vec::new();
    let mut check = |name: &str, ok: bool, s: Value, t: Value| {
        if !ok {
            violated.push(Violation {
                rule_name: name.to_string(),
                source_value: s,
                target_value: t,
            });
        }
    };
    let (s, t) = (source, target);
    check(
        "R1-nilpotent",
        !s.is_nilpotent || t.is_nilpotent,
        s.is_nilpotent.into(),
        t.is_nilpotent.into(),
    );
    check(
        "R2-solvable",
        !s.is_solvable || t.is_solvable,
        s.is_solvable.into(),
        t.is_solvable.into(),
    );
    check(
        "R3-dim-der",
        s.dim_der <= t.dim_der,
        s.dim_der.into(),
        t.dim_der.into(),
    );
    check(
        "R4-dim-rann",
        s.dim_rann <= t.dim_rann,
        s.dim_rann.into(),
        t.dim_rann.into(),
    );
    check(
        "R5-dim-lann",
        s.dim_lann <= t.dim_lann,
        s.dim_lann.into(),
        t.dim_lann.into(),
    );
    check(
        "R6-dim-square",
        s.dim_square >= t.dim_square,
        s.dim_square.into(),
        t.dim_square.into(),
    );
    for (kind, &holds) in &s.identity_flags {
        let on_target = t.identity_flags.get(kind).copied().unwrap_or(false);
        check(
            &format!("R7-identity-{}", kind.name()),
            !holds || on_target,
            holds.into(),
            on_target.into(),
        );
    }
    Ok(ObstructionReport {
        verdict: if violated.is_empty() {
            Verdict::NoObstruction
        } else {
            Verdict::Obstructed
        },
        violated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Rational};
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type T = StructureTensor<Rational>;

    fn alg(dim: usize, products: &[(usize, usize, usize, Rational)]) -> T {
        StructureTensor::from_entries(
            dim,
            products
                .iter()
                .map(|(i, j, k, c)| ((i - 1, j - 1, k - 1), c.clone())),
        )
        .unwrap()
    }

    fn one() -> Rational {
        Rational::one()
    }

    fn l4(n: usize, alpha: Rational) -> T {
        alg(n, &[(1, 1, 3, one()), (1, 2, 3, one()), (2, 2, 3, alpha)])
    }

    fn l5(n: usize) -> T {
        alg(n, &[(1, 1, 3, one()), (1, 2, 3, one()), (2, 1, 3, one())])
    }

    fn r_n(n: usize) -> T {
        alg(n, &(2..=n).map(|i| (i, 1, i, one())).collect::<Vec<_>>())
    }

    /// Rank over Z by fraction-free Bareiss elimination, choosing pivots
    /// from the last column backwards and from the bottom row upwards.
    fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in (0..cols).rev() {
            let Some(p) = (rank..rows).rev().find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..rows {
                for c in 0..cols {
                    if c == col {
                        continue;
                    }
                    m[r][c] = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Independent formulation: D is a derivation iff for all i, j the vector
    /// D(e_i e_j) - D(e_i) e_j - e_i D(e_j) vanishes, assembled by applying
    /// each elementary matrix E_pq through the product.
    fn derivation_dimension_oracle(a: &T) -> usize {
        let n = a.dim();
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v
        };
        // columns of the system, one per elementary map E_pq: e_q -> e_p
        let mut cols: Vec<Vec<Rational>> = Vec::new();
        for p in 0..n {
            for q in 0..n {
                let apply = |v: &[Rational]| {
                    let mut out = vec![Rational::zero(); n];
                    out[p] = v[q].clone();
                    out
                };
                let mut col = Vec::with_capacity(n * n * n);
                for i in 0..n {
                    for j in 0..n {
                        let prod = a.product(&unit(i), &unit(j)).unwrap();
                        let lhs = apply(&prod);
                        let r1 = a.product(&apply(&unit(i)), &unit(j)).unwrap();
                        let r2 = a.product(&unit(i), &apply(&unit(j))).unwrap();
                        for k in 0..n {
                            col.push(&lhs[k] - &r1[k] - &r2[k]);
                        }
                    }
                }
                cols.push(col);
            }
        }
        // clear denominators row by row
        let rows: Vec<Vec<BigInt>> = (0..n * n * n)
            .map(|r| {
                let lcm = cols.iter().fold(BigInt::one(), |l, c| {
                    num_integer::Integer::lcm(&l, c[r].denom())
                });
                cols.iter().map(|c| (&c[r] * &lcm).to_integer()).collect()
            })
            .collect();
        n * n - bareiss_rank(rows)
    }

    #[test]
    fn derivation_examples() {
        assert_eq!(derivation_dimension(&T::zero(4)), 16);
        assert_eq!(derivation_dimension(&r_n(4)), 9);
        assert_eq!(derivation_dimension(&l4(4, Rational::zero())), 8);
        assert_eq!(derivation_dimension(&r_n(2)), 1);
        let lie_r2 = alg(2, &[(1, 2, 2, one()), (2, 1, 2, -one())]);
        assert_eq!(derivation_dimension(&lie_r2), 2);
    }

    #[test]
    fn derivation_dimension_matches_independent_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut cases = vec![
            l5(4),
            r_n(5),
            l4(5, rat(1, 4)),
            l4(4, rat(2, 1)),
            T::zero(3),
        ];
        for _ in 0..20 {
            let n = rng.gen_range(2..=4);
            let mut t = T::zero(n);
            for _ in 0..rng.gen_range(1..=6) {
                let (i, j, k) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                t.set(i, j, k, rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
            }
            cases.push(t);
        }
        for t in &cases {
            assert_eq!(
                derivation_dimension(t),
                derivation_dimension_oracle(t),
                "{t}"
            );
        }
    }

    #[test]
    fn fingerprint_examples() {
        let fp = fingerprint(&l5(5));
        assert_eq!(fp.dim_rann, 3);
        assert!(fp.is_nilpotent);
        assert!(fp.identity_flags[&IdentityKind::LeibnizRight]);
        assert!(!fp.identity_flags[&IdentityKind::Lie]);
        assert_eq!(fingerprint(&l4(3, rat(2, 1))).dim_rann, 1);
        let ab = fingerprint(&T::zero(3));
        assert_eq!(ab.dim_der, 9);
        assert!(ab.identity_flags.values().all(|&b| b));
    }

    #[test]
    fn fingerprint_is_basis_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for a in [
            l5(4),
            r_n(4),
            l4(4, rat(1, 4)),
            alg(4, &[(1, 2, 3, one()), (2, 1, 3, -one())]),
        ] {
            let g = loop {
                let g = Matrix::from_rows(
                    (0..4)
                        .map(|_| (0..4).map(|_| rat(rng.gen_range(-2..=2), 1)).collect())
                        .collect(),
                )
                .unwrap();
                if g.rank() == 4 {
                    break g;
                }
            };
            assert_eq!(fingerprint(&a), fingerprint(&a.basis_change(&g).unwrap()));
        }
    }

    #[test]
    fn obstruction_examples() {
        let fp = |a: &T| fingerprint(a);
        let rep = obstructions(&fp(&l4(4, one())), &fp(&r_n(4))).unwrap();
        assert!(rep.is_obstructed() && rep.violates("R1"));
        let rep = obstructions(&fp(&r_n(4)), &fp(&l4(4, one()))).unwrap();
        assert!(rep.violates("R4"));
        let v = rep
            .violated
            .iter()
            .find(|v| v.rule_name.starts_with("R4"))
            .unwrap();
        assert_eq!(
            (v.source_value.clone(), v.target_value.clone()),
            (3.into(), 2.into())
        );
        let rep = obstructions(&fp(&r_n(4)), &fp(&l4(4, Rational::zero()))).unwrap();
        let v = rep
            .violated
            .iter()
            .find(|v| v.rule_name.starts_with("R3"))
            .unwrap();
        assert_eq!(
            (v.source_value.clone(), v.target_value.clone()),
            (9.into(), 8.into())
        );
        assert!(obstructions(&fp(&l5(3)), &fp(&r_n(4))).is_err());
    }

    #[test]
    fn no_obstruction_towards_abelian() {
        for a in [l5(4), r_n(4), l4(4, rat(1, 4))] {
            let rep = obstructions(&fingerprint(&a), &fingerprint(&T::zero(4))).unwrap();
            assert_eq!(rep.verdict, Verdict::NoObstruction, "{:?}", rep.violated);
        }
    }
}
