//! One-parameter basis-change families over Q(t), their `t -> 0` limits and
//! the two-stage scaling that sends an algebra to the two-generator stratum.

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::StructureTensor;
use crate::classify3::{classify, TwoGenClass};
use crate::error::{Error, Result};
use crate::exact::{Field, RatFunc, Rational};
use crate::invariants::{fingerprint, Fingerprint};
use crate::linalg::Matrix;

/// Largest dimension for which exact matching tries every relabeling.
pub const PERMUTATION_SEARCH_MAX_DIM: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Given {
    /// The matrix is `g_t`.
    #[serde(rename = "g")]
    Direct,
    /// The matrix is `g_t⁻¹`.
    #[serde(rename = "g_inverse")]
    Inverse,
}

/// A family `g_t` in `GL_n(Q(t))`. Column `j` of `matrix` holds the image of
/// `e_j`, under `g_t` or `g_t⁻¹` according to `given`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerationFamily {
    given: Given,
    matrix: Matrix<RatFunc>,
    inverse: Matrix<RatFunc>,
}

impl DegenerationFamily {
    pub fn new(given: Given, matrix: Matrix<RatFunc>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        let inverse = matrix.invert()?;
        Ok(DegenerationFamily {
            given,
            matrix,
            inverse,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Given::Direct, Matrix::identity(n)).expect("identity is invertible")
    }

    /// A constant family.
    pub fn constant(g: &Matrix<Rational>) -> Result<Self> {
        Self::new(Given::Direct, g.map(|q| RatFunc::constant(q.clone())))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn given(&self) -> Given {
        self.given
    }

    /// The matrix as supplied.
    pub fn matrix(&self) -> &Matrix<RatFunc> {
        &self.matrix
    }

    /// `g_t`.
    pub fn direct(&self) -> &Matrix<RatFunc> {
        match self.given {
            Given::Direct => &self.matrix,
            Given::Inverse => &self.inverse,
        }
    }

    /// `g_t⁻¹`.
    pub fn inverse(&self) -> &Matrix<RatFunc> {
        match self.given {
            Given::Direct => &self.inverse,
            Given::Inverse => &self.matrix,
        }
    }

    /// The same family re-expressed as `g_t`.
    pub fn to_direct(&self) -> Self {
        DegenerationFamily {
            given: Given::Direct,
            matrix: self.direct().clone(),
            inverse: self.inverse().clone(),
        }
    }

    /// The family `g_{t^m}`.
    pub fn reparametrized(&self, m: usize) -> Self {
        let sub = |x: &RatFunc| x.substitute_power(m);
        DegenerationFamily {
            given: self.given,
            matrix: self.matrix.map(sub),
            inverse: self.inverse.map(sub),
        }
    }

    /// A bound `K` such that transporting any tensor whose entries have
    /// valuation `v` yields entries of valuation at least `v - K`.
    pub fn pole_bound(&self) -> i64 {
        let worst = |m: &Matrix<RatFunc>| -> i64 {
            let mut w = 0;
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    if let Some(v) = m[(i, j)].valuation() {
                        w = w.max(-v);
                    }
                }
            }
            w
        };
        worst(self.direct()) + 2 * worst(self.inverse())
    }
}

/// The transported tensor `g_t * a`, whose entries lie in Q(t).
pub fn transport(
    a: &StructureTensor<Rational>,
    fam: &DegenerationFamily,
) -> Result<StructureTensor<RatFunc>> {
    transport_qt(&lift(a), fam)
}

/// Transport of a tensor that already lives over Q(t).
pub fn transport_qt(
    a: &StructureTensor<RatFunc>,
    fam: &DegenerationFamily,
) -> Result<StructureTensor<RatFunc>> {
    if a.dim() != fam.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: fam.dim(),
        });
    }
    Ok(a.transport_with(fam.direct(), fam.inverse()))
}

pub fn lift(a: &StructureTensor<Rational>) -> StructureTensor<RatFunc> {
    a.map(|q| RatFunc::constant(q.clone()))
}

/// Entrywise limit at `t = 0`.
pub fn limit_algebra(a_t: &StructureTensor<RatFunc>) -> Result<StructureTensor<Rational>> {
    let mut out = StructureTensor::zero(a_t.dim());
    for (&(i, j, k), c) in a_t.entries() {
        let v = c.limit_at_zero().map_err(|_| Error::LimitDiverges {
            at: Some((i, j, k)),
        })?;
        out.set(i, j, k, v);
    }
    Ok(out)
}

/// `lim_{t->0} g_t * a`.
pub fn degenerate(
    a: &StructureTensor<Rational>,
    fam: &DegenerationFamily,
) -> Result<StructureTensor<Rational>> {
    limit_algebra(&transport(a, fam)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "result")]
pub enum Comparison {
    /// The limit equals the target after relabeling the basis by
    /// `permutation` (old index to new index, zero-based), or directly when
    /// the permutation is the identity.
    ExactMatch { permutation: Vec<usize> },
    /// Fingerprints agree but no relabeling matches exactly.
    FingerprintMatch,
    /// First entry, in lexicographic order, where limit and target differ
    /// (zero-based).
    Mismatch {
        at: (usize, usize, usize),
        limit_value: String,
        target_value: String,
    },
}

impl Comparison {
    pub fn is_match(&self) -> bool {
        !matches!(self, Comparison::Mismatch { .. })
    }

    /// Human-readable form with one-based indices.
    pub fn describe(&self) -> String {
        match self {
            Comparison::ExactMatch { permutation } => format!(
                "ExactMatch, relabeling {}",
                permutation.iter().map(|p| (p + 1).to_string()).join(" ")
            ),
            Comparison::FingerprintMatch => "FingerprintMatch".to_string(),
            Comparison::Mismatch {
                at,
                limit_value,
                target_value,
            } => format!(
                "Mismatch at product ({}, {}, {}): limit {limit_value}, target {target_value}",
                at.0 + 1,
                at.1 + 1,
                at.2 + 1
            ),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Comparison::ExactMatch { .. } => "ExactMatch",
            Comparison::FingerprintMatch => "FingerprintMatch",
            Comparison::Mismatch { .. } => "Mismatch",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Verification {
    pub limit: StructureTensor<Rational>,
    pub comparison: Comparison,
    pub limit_fingerprint: Fingerprint,
}

/// Relabeling of `a` that makes it equal to `b`, if one exists.
pub fn find_permutation<F: Field>(
    a: &StructureTensor<F>,
    b: &StructureTensor<F>,
) -> Option<Vec<usize>> {
    let n = a.dim();
    if n != b.dim() || a.nnz() != b.nnz() {
        return None;
    }
    let ident: Vec<usize> = (0..n).collect();
    if a == b {
        return Some(ident);
    }
    if n > PERMUTATION_SEARCH_MAX_DIM {
        return None;
    }
    (0..n).permutations(n).find(|p| a.permuted(p) == *b)
}

/// Compares the limit of `source` along `fam` with `target`.
pub fn verify_degeneration(
    source: &StructureTensor<Rational>,
    fam: &DegenerationFamily,
    target: &StructureTensor<Rational>,
) -> Result<Verification> {
    if source.dim() != target.dim() {
        return Err(Error::DimensionMismatch {
            expected: source.dim(),
            found: target.dim(),
        });
    }
    let limit = degenerate(source, fam)?;
    Ok(compare_limit(limit, target))
}

pub fn compare_limit(
    limit: StructureTensor<Rational>,
    target: &StructureTensor<Rational>,
) -> Verification {
    let limit_fingerprint = fingerprint(&limit);
    let comparison = if let Some(permutation) = find_permutation(&limit, target) {
        Comparison::ExactMatch { permutation }
    } else if limit_fingerprint == fingerprint(target) {
        Comparison::FingerprintMatch
    } else {
        let at = first_difference(&limit, target).expect("tensors differ");
        Comparison::Mismatch {
            at,
            limit_value: limit.get(at.0, at.1, at.2).to_string(),
            target_value: target.get(at.0, at.1, at.2).to_string(),
        }
    };
    Verification {
        limit,
        comparison,
        limit_fingerprint,
    }
}

fn first_difference<F: Field>(
    a: &StructureTensor<F>,
    b: &StructureTensor<F>,
) -> Option<(usize, usize, usize)> {
    let keys = a
        .entries()
        .map(|(k, _)| *k)
        .merge(b.entries().map(|(k, _)| *k));
    keys.into_iter()
        .find(|&(i, j, k)| a.get(i, j, k) != b.get(i, j, k))
}

/// Diagonal family with `g_t(e_i) = t^{exponents[i]} e_i`.
pub fn scaling_family(exponents: &[i64]) -> DegenerationFamily {
    let diag = exponents
        .iter()
        .map(|&e| RatFunc::monomial(Rational::one(), e))
        .collect();
    DegenerationFamily::new(Given::Direct, Matrix::diagonal(diag)).expect("monomials are units")
}

/// A single family whose limit on `a` is the limit of `outer` applied to
/// the limit of `inner` on `a`: `outer(t) · inner(t^m)` with `m` large enough
/// that the error terms of the first stage vanish after the second.
pub fn compose(
    outer: &DegenerationFamily,
    inner: &DegenerationFamily,
) -> Result<DegenerationFamily> {
    let m = outer.pole_bound() + 1;
    compose_with_exponent(outer, inner, m as usize)
}

pub fn compose_with_exponent(
    outer: &DegenerationFamily,
    inner: &DegenerationFamily,
    m: usize,
) -> Result<DegenerationFamily> {
    let slowed = inner.reparametrized(m);
    let g = outer.direct().mul(slowed.direct())?;
    let h = slowed.inverse().mul(outer.inverse())?;
    Ok(DegenerationFamily {
        given: Given::Direct,
        matrix: g,
        inverse: h,
    })
}

/// Which excluded set a coefficient tuple falls into, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Excluded {
    /// `(0, β, -β, 0)`: an antisymmetric form.
    Antisymmetric,
    /// `(δ, β, β, β²/δ)` with `δ ≠ 0`: a rank-one symmetric form.
    RankOneSymmetric,
    /// `(0, 0, 0, δ)` with `δ ≠ 0`: the remaining rank-one symmetric forms.
    RankOneSymmetricEdge,
}

/// The two excluded families exactly as they are usually stated.
pub fn printed_exclusion(t: &[Rational; 4]) -> Option<Excluded> {
    if t[0].is_zero() && t[3].is_zero() && t[1] == -t[2].clone() {
        return Some(Excluded::Antisymmetric);
    }
    if !t[0].is_zero() && t[1] == t[2] && t[3] == &t[1] * &t[1] / &t[0] {
        return Some(Excluded::RankOneSymmetric);
    }
    None
}

/// The full exclusion: the stated families plus `(0, 0, 0, δ)`, which is
/// also a rank-one symmetric form and therefore leads to `λ₂`.
pub fn exclusion(t: &[Rational; 4]) -> Option<Excluded> {
    printed_exclusion(t).or_else(|| {
        (t[0].is_zero() && t[1].is_zero() && t[2].is_zero() && !t[3].is_zero())
            .then_some(Excluded::RankOneSymmetricEdge)
    })
}

/// Distinct indices `i, j, k` (zero-based) and the tuple
/// `(γ(i,i,k), γ(i,j,k), γ(j,i,k), γ(j,j,k))`.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaHypothesis {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub tuple: [Rational; 4],
}

impl LemmaHypothesis {
    pub fn read(a: &StructureTensor<Rational>, i: usize, j: usize, k: usize) -> Result<Self> {
        let n = a.dim();
        if i == j || j == k || i == k {
            return Err(Error::HypothesisViolated(format!(
                "indices ({}, {}, {}) are not distinct",
                i + 1,
                j + 1,
                k + 1
            )));
        }
        if i.max(j).max(k) >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: i.max(j).max(k) + 1,
            });
        }
        Ok(LemmaHypothesis {
            i,
            j,
            k,
            tuple: [
                a.get(i, i, k),
                a.get(i, j, k),
                a.get(j, i, k),
                a.get(j, j, k),
            ],
        })
    }

    pub fn check(&self) -> Result<()> {
        match exclusion(&self.tuple) {
            None => Ok(()),
            Some(e) => Err(Error::HypothesisViolated(format!(
                "tuple ({}) lies in the excluded set {e:?}",
                self.tuple.iter().map(ToString::to_string).join(", ")
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LemmaOutcome {
    /// The algebra relabeled so that `(i, j, k)` becomes `(1, 2, 3)`.
    pub relabeled: StructureTensor<Rational>,
    /// Limit after the first scaling stage.
    pub stage1: StructureTensor<Rational>,
    /// Limit after the second stage: only `e1e1, e1e2, e2e1, e2e2` survive,
    /// all in `span(e3)`.
    pub limit: StructureTensor<Rational>,
    pub label: TwoGenClass,
}

/// Weights of the first scaling stage: `(-1, -1, -2, ..., -2)`.
pub fn lemma_stage1_exponents(n: usize) -> Vec<i64> {
    (0..n).map(|i| if i < 2 { -1 } else { -2 }).collect()
}

/// Weights of the second scaling stage: `(-1, -1, -2, -1, ..., -1)`.
pub fn lemma_stage2_exponents(n: usize) -> Vec<i64> {
    (0..n).map(|i| if i == 2 { -2 } else { -1 }).collect()
}

/// Sends `a` to an algebra of the two-generator stratum by two successive
/// scalings and classifies the result.
pub fn lemma_degenerate(
    a: &StructureTensor<Rational>,
    hyp: &LemmaHypothesis,
) -> Result<LemmaOutcome> {
    let n = a.dim();
    let fresh = LemmaHypothesis::read(a, hyp.i, hyp.j, hyp.k)?;
    if fresh.tuple != hyp.tuple {
        return Err(Error::HypothesisViolated(
            "tuple does not match the algebra".into(),
        ));
    }
    fresh.check()?;

    let mut perm = vec![usize::MAX; n];
    perm[hyp.i] = 0;
    perm[hyp.j] = 1;
    perm[hyp.k] = 2;
    for (p, next) in perm.iter_mut().filter(|p| **p == usize::MAX).zip(3..) {
        *p = next;
    }
    let relabeled = a.permuted(&perm);
    let stage1 = degenerate(&relabeled, &scaling_family(&lemma_stage1_exponents(n)))?;
    let limit = degenerate(&stage1, &scaling_family(&lemma_stage2_exponents(n)))?;
    let m = [
        [limit.get(0, 0, 2), limit.get(0, 1, 2)],
        [limit.get(1, 0, 2), limit.get(1, 1, 2)],
    ];
    Ok(LemmaOutcome {
        relabeled,
        stage1,
        limit,
        label: classify(&m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type T = StructureTensor<Rational>;

    fn alg(dim: usize, products: &[(usize, usize, usize, i64)]) -> T {
        StructureTensor::from_entries(
            dim,
            products
                .iter()
                .map(|&(i, j, k, c)| ((i - 1, j - 1, k - 1), rat(c, 1))),
        )
        .unwrap()
    }

    fn rf(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    fn family(given: Given, cols: &[&[&str]]) -> DegenerationFamily {
        let cols = cols
            .iter()
            .map(|c| c.iter().map(|s| rf(s)).collect())
            .collect();
        DegenerationFamily::new(given, Matrix::from_columns(cols).unwrap()).unwrap()
    }

    /// g⁻¹(x1) = t x1, g⁻¹(x2) = t(x1 + x3), g⁻¹(x3) = t² x2, g⁻¹(x4) = t(x2 + x4)
    fn two_lambda_family() -> DegenerationFamily {
        family(
            Given::Inverse,
            &[
                &["t", "0", "0", "0"],
                &["t", "0", "t", "0"],
                &["0", "t^2", "0", "0"],
                &["0", "t", "0", "t"],
            ],
        )
    }

    fn two_lambda() -> T {
        alg(4, &[(1, 1, 2, 1), (3, 3, 4, 1)])
    }

    fn eval_tensor(a: &StructureTensor<RatFunc>, x: &Rational) -> T {
        a.map(|c| c.eval(x).unwrap())
    }

    #[test]
    fn identity_family_embeds() {
        let a = two_lambda();
        let lifted = transport(&a, &DegenerationFamily::identity(4)).unwrap();
        assert_eq!(lifted, lift(&a));
        assert_eq!(limit_algebra(&lifted).unwrap(), a);
    }

    #[test]
    fn constant_family_matches_basis_change() {
        let a = alg(3, &[(1, 1, 3, 1), (1, 2, 3, 1), (2, 1, 3, 1)]);
        let g = Matrix::from_rows(vec![
            vec![rat(1, 1), rat(2, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
            vec![rat(1, 1), rat(0, 1), rat(3, 1)],
        ])
        .unwrap();
        let fam = DegenerationFamily::constant(&g).unwrap();
        assert_eq!(
            transport(&a, &fam).unwrap(),
            lift(&a.basis_change(&g).unwrap())
        );
        assert_eq!(degenerate(&a, &fam).unwrap(), a.basis_change(&g).unwrap());
    }

    #[test]
    fn moving_frame_agrees_with_pointwise_evaluation() {
        let fam = two_lambda_family();
        let moving = transport(&two_lambda(), &fam).unwrap();
        for x in [rat(1, 2), rat(1, 3)] {
            let g = fam.direct().map(|c| c.eval(&x).unwrap());
            let pointwise = two_lambda().basis_change(&g).unwrap();
            assert_eq!(eval_tensor(&moving, &x), pointwise);
        }
        // the (2,2) product carries a factor t along x4
        assert_eq!(moving.get(1, 1, 3), rf("t"));
    }

    #[test]
    fn inverse_is_exact() {
        let fam = two_lambda_family();
        let prod = fam.matrix().mul(fam.direct()).unwrap();
        assert_eq!(prod, Matrix::identity(4));
        let singular =
            Matrix::from_rows(vec![vec![rf("t"), rf("t")], vec![rf("1"), rf("1")]]).unwrap();
        assert_eq!(
            DegenerationFamily::new(Given::Direct, singular),
            Err(Error::Singular)
        );
    }

    #[test]
    fn two_lambda_limit_is_l5_plus_a1() {
        let target = alg(4, &[(1, 1, 3, 1), (1, 2, 3, 1), (2, 1, 3, 1)]);
        let v = verify_degeneration(&two_lambda(), &two_lambda_family(), &target).unwrap();
        assert_eq!(v.limit, target);
        assert_eq!(
            v.comparison,
            Comparison::ExactMatch {
                permutation: vec![0, 1, 2, 3]
            }
        );
    }

    #[test]
    fn limits_with_poles_report_their_index() {
        let a = alg(2, &[(1, 1, 2, 1)]);
        // g(e2) = t⁻¹ e2 while e1 stays fixed: e1e1 picks up t⁻¹
        let err = degenerate(&a, &scaling_family(&[0, -1])).unwrap_err();
        assert_eq!(
            err,
            Error::LimitDiverges {
                at: Some((0, 0, 1))
            }
        );
    }

    #[test]
    fn mismatch_reports_first_entry() {
        let lam = alg(2, &[(1, 1, 2, 1)]);
        let v = verify_degeneration(&lam, &DegenerationFamily::identity(2), &T::zero(2)).unwrap();
        assert_eq!(
            v.comparison,
            Comparison::Mismatch {
                at: (0, 0, 1),
                limit_value: "1".into(),
                target_value: "0".into()
            }
        );
    }

    #[test]
    fn relabeled_limits_match_exactly() {
        let l5 = alg(4, &[(1, 1, 3, 1), (1, 2, 3, 1), (2, 1, 3, 1)]);
        let moved = l5.permuted(&[2, 0, 3, 1]);
        let v = verify_degeneration(&moved, &DegenerationFamily::identity(4), &l5).unwrap();
        let Comparison::ExactMatch { permutation } = v.comparison else {
            panic!("expected an exact match");
        };
        assert_eq!(moved.permuted(&permutation), l5);
    }

    #[test]
    fn scaling_family_examples() {
        let f = scaling_family(&lemma_stage1_exponents(5));
        assert_eq!(f.direct()[(2, 2)], rf("(1)/(t^2)"));
        assert_eq!(f.direct()[(1, 1)], rf("(1)/(t)"));
        let f = scaling_family(&lemma_stage2_exponents(5));
        assert_eq!(f.direct()[(3, 3)], rf("(1)/(t)"));
        assert_eq!(f.direct()[(2, 2)], rf("(1)/(t^2)"));
        assert_eq!(scaling_family(&[0, 0, 0]), DegenerationFamily::identity(3));
    }

    fn random_tensor(rng: &mut ChaCha8Rng, n: usize, density: f64) -> T {
        let mut t = T::zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if rng.gen_bool(density) {
                        t.set(i, j, k, rat(rng.gen_range(-3..=3), 1));
                    }
                }
            }
        }
        t
    }

    #[test]
    fn composition_equals_sequential_limits() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let n = 4;
            let a = random_tensor(&mut rng, n, 0.3);
            let w1: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=0)).collect();
            let w2: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=0)).collect();
            let (f1, f2) = (scaling_family(&w1), scaling_family(&w2));
            let Ok(mid) = degenerate(&a, &f1) else {
                continue;
            };
            let Ok(end) = degenerate(&mid, &f2) else {
                continue;
            };
            let composite = compose(&f2, &f1).unwrap();
            assert_eq!(degenerate(&a, &composite).unwrap(), end);
        }
        // a non-diagonal chain: scale into λ₂ ⊕ λ₂ then continue to L5
        let src = alg(4, &[(1, 1, 2, 1), (3, 3, 4, 1), (1, 2, 4, 1)]);
        let first = scaling_family(&[-1, -2, -1, -2]);
        let mid = degenerate(&src, &first).unwrap();
        assert_eq!(mid, two_lambda());
        let end = degenerate(&mid, &two_lambda_family()).unwrap();
        let composite = compose(&two_lambda_family(), &first).unwrap();
        assert_eq!(degenerate(&src, &composite).unwrap(), end);
    }

    #[test]
    fn lemma_examples() {
        // (0, 0, 1, 0) plus unrelated products
        let mut a = alg(
            5,
            &[(2, 1, 3, 1), (4, 5, 1, 2), (1, 4, 4, -1), (3, 3, 5, 1)],
        );
        a.set(0, 0, 3, rat(3, 1));
        let hyp = LemmaHypothesis::read(&a, 0, 1, 2).unwrap();
        let out = lemma_degenerate(&a, &hyp).unwrap();
        assert!(matches!(out.label, TwoGenClass::L4(_) | TwoGenClass::L5));
        let m = alg(5, &[(2, 1, 3, 1)]);
        assert_eq!(out.limit, m);

        let anti = alg(3, &[(1, 2, 3, 1), (2, 1, 3, -1)]);
        let hyp = LemmaHypothesis::read(&anti, 0, 1, 2).unwrap();
        assert!(matches!(
            lemma_degenerate(&anti, &hyp),
            Err(Error::HypothesisViolated(_))
        ));

        let sym = alg(3, &[(1, 1, 3, 1), (1, 2, 3, 2), (2, 1, 3, 2), (2, 2, 3, 4)]);
        let hyp = LemmaHypothesis::read(&sym, 0, 1, 2).unwrap();
        assert!(matches!(
            lemma_degenerate(&sym, &hyp),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn printed_exclusion_misses_a_rank_one_form() {
        let t = [rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)];
        assert_eq!(printed_exclusion(&t), None);
        assert_eq!(exclusion(&t), Some(Excluded::RankOneSymmetricEdge));
        // left unexcluded, this tuple leads to λ₂
        let m = [[t[0].clone(), t[1].clone()], [t[2].clone(), t[3].clone()]];
        assert_eq!(classify(&m), TwoGenClass::Lambda2);
    }

    #[test]
    fn lemma_never_lands_outside_l4_l5() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut done = 0;
        while done < 500 {
            let a = random_tensor(&mut rng, 5, 0.35);
            let idx: Vec<usize> = rand::seq::index::sample(&mut rng, 5, 3).into_vec();
            let hyp = LemmaHypothesis::read(&a, idx[0], idx[1], idx[2]).unwrap();
            if hyp.check().is_err() {
                continue;
            }
            done += 1;
            let out = lemma_degenerate(&a, &hyp).unwrap();
            assert!(
                matches!(out.label, TwoGenClass::L4(_) | TwoGenClass::L5),
                "{a} -> {}",
                out.label
            );
            assert!(out.limit.is_nilpotent());
        }
    }
}
