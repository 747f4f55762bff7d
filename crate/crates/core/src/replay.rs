//! Concrete instances of the degenerations used in the level-two proofs.
//!
//! Each proof case is stated over algebras with free parameters. An instance
//! fixes the parameters with a seeded generator; every claim checked here is
//! a polynomial identity in those parameters, so agreement on many random
//! points is strong evidence of agreement everywhere.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::algebra::StructureTensor;
use crate::catalog;
use crate::classify3::{classify_core, TwoGenClass};
use crate::degeneration::{
    compose, degenerate, exclusion, scaling_family, DegenerationFamily, Excluded, Given,
    LemmaHypothesis,
};
use crate::error::{Error, Result};
use crate::exact::{rat, RatFunc, Rational};
use crate::invariants::fingerprint;
use crate::linalg::Matrix;

type T = StructureTensor<Rational>;

/// Builds an `n×n` matrix over Q(t) column by column; column `j` is the
/// image of `e_j`.
struct Columns {
    cols: Vec<Vec<RatFunc>>,
}

impl Columns {
    fn new(n: usize) -> Self {
        Columns {
            cols: vec![vec![RatFunc::zero(); n]; n],
        }
    }

    /// Adds `c · t^power · e_row` to the image of `e_col` (zero-based).
    fn add(&mut self, col: usize, row: usize, c: Rational, power: i64) -> &mut Self {
        let cell = &mut self.cols[col][row];
        *cell = cell.clone() + RatFunc::monomial(c, power);
        self
    }

    fn family(&self, given: Given) -> DegenerationFamily {
        let m = Matrix::from_columns(self.cols.clone()).expect("square by construction");
        DegenerationFamily::new(given, m).expect("replay families are invertible")
    }
}

fn one() -> Rational {
    Rational::one()
}

fn table(n: usize, products: &[(usize, usize, usize, Rational)]) -> T {
    T::from_entries(
        n,
        products
            .iter()
            .map(|(i, j, k, c)| ((i - 1, j - 1, k - 1), c.clone())),
    )
    .expect("indices in range")
}

fn padded(name: &str, n: usize, alpha: Option<Rational>) -> T {
    catalog::make(name, n, alpha.as_ref()).expect("catalog entry fits")
}

/// One of the three printed families, with its source and claimed limit.
#[derive(Debug, Clone)]
pub struct ExampleFamily {
    pub source: T,
    pub family: DegenerationFamily,
    pub target: T,
    /// Class of the three-dimensional core the limit should carry.
    pub core: TwoGenClass,
}

/// The first printed family: from `x1x1 = x2, x3x4 = x5, x4x3 = -x5`, the
/// table as printed, to `L4(1/4) ⊕ a2`.
pub fn example1_family1() -> ExampleFamily {
    let source = table(5, &[(1, 1, 2, one()), (3, 4, 5, one()), (4, 3, 5, -one())]);
    let mut g = Columns::new(5);
    g.add(0, 0, one(), 1).add(0, 2, one(), 1);
    g.add(1, 0, rat(1, 2), 1).add(1, 3, rat(1, 2), 1);
    g.add(2, 1, one(), 2);
    g.add(3, 0, one(), 2);
    g.add(4, 4, one(), 1).add(4, 1, one(), 1);
    ExampleFamily {
        source,
        family: g.family(Given::Inverse),
        target: padded("L4", 5, Some(rat(1, 4))),
        core: TwoGenClass::L4(rat(1, 4)),
    }
}

/// The second printed family: `λ2 ⊕ λ2` to `L5 ⊕ a1`.
pub fn example1_family2() -> ExampleFamily {
    let source = table(4, &[(1, 1, 2, one()), (3, 3, 4, one())]);
    ExampleFamily {
        source,
        family: example1_family2_matrix().family(Given::Inverse),
        target: padded("L5", 4, None),
        core: TwoGenClass::L5,
    }
}

fn example1_family2_matrix() -> Columns {
    let mut g = Columns::new(4);
    g.add(0, 0, one(), 1);
    g.add(1, 0, one(), 1).add(1, 2, one(), 1);
    g.add(2, 1, one(), 2);
    g.add(3, 1, one(), 1).add(3, 3, one(), 1);
    g
}

/// Source of the third printed family: `x1x1 = x2, xi x3 = xi, x3 xi = -xi`
/// for `4 <= i <= n`.
pub fn example1_family3_source(n: usize) -> T {
    let mut p = vec![(1, 1, 2, one())];
    for i in 4..=n {
        p.push((i, 3, i, one()));
        p.push((3, i, i, -one()));
    }
    table(n, &p)
}

/// The third printed family: `λ2 ⊕ p_n⁻` toward `L4(1/4) ⊕ a_{n-3}`.
pub fn example1_family3(n: usize) -> ExampleFamily {
    assert!(n >= 5);
    let mut g = Columns::new(n);
    g.add(0, 0, one(), 1).add(0, 3, one(), 1);
    g.add(1, 0, rat(1, 2), 1).add(1, 2, one(), 1);
    g.add(2, 1, one(), 2);
    g.add(3, 3, one(), 1).add(3, 1, rat(1, 2), 1);
    for i in 4..n {
        g.add(i, i, one(), 1);
    }
    ExampleFamily {
        source: example1_family3_source(n),
        family: g.family(Given::Inverse),
        target: padded("L4", n, Some(rat(1, 4))),
        core: TwoGenClass::L4(rat(1, 4)),
    }
}

/// The third family followed by `g_t(e4) = t⁻¹ e4`, which removes the skew
/// pair `e2e4 = -e4e2` the printed family leaves behind.
pub fn example1_family3_rescaled(n: usize) -> Result<ExampleFamily> {
    let printed = example1_family3(n);
    let mut e = vec![0; n];
    e[3] = -1;
    Ok(ExampleFamily {
        family: compose(&scaling_family(&e), &printed.family)?,
        ..printed
    })
}

/// Proof cases replayed with random parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Case {
    /// `dim A² = 1`, the quotient part Lie.
    C111,
    /// `dim A² = 1`, the quotient part not Lie.
    C112,
    /// Generators with one square outside `span(e_{k+1})`.
    C123,
    /// Skew pair `e2e3 = -e3e2` outside `span(e_{k+1})`, printed weights.
    C124,
    /// As `C124` with `e_{k+2}` given the weight that keeps `e2e3`.
    C124Corrected,
    /// Antisymmetric with `dim A² >= 2`.
    C2,
}

impl Case {
    pub const ALL: [Case; 6] = [
        Case::C111,
        Case::C112,
        Case::C123,
        Case::C124,
        Case::C124Corrected,
        Case::C2,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Case::C111 => "1.1.1",
            Case::C112 => "1.1.2",
            Case::C123 => "1.2.3",
            Case::C124 => "1.2.4",
            Case::C124Corrected => "1.2.4-corrected",
            Case::C2 => "2",
        }
    }

    /// Smallest dimension the case's normal form fits in.
    pub fn min_dim(self) -> usize {
        match self {
            Case::C111 | Case::C112 => 4,
            Case::C123 => 4,
            Case::C124 | Case::C124Corrected => 5,
            Case::C2 => 5,
        }
    }
}

/// A random algebra satisfying a case's hypothesis together with the
/// family the proof applies to it.
#[derive(Debug, Clone)]
pub struct CaseInstance {
    pub case: Case,
    pub n: usize,
    /// `A² = span(e_{k+1}, ..., e_n)` where the case uses it.
    pub k: Option<usize>,
    /// Algebra as generated, before any normalizing change of basis.
    pub source: T,
    /// Algebra in the basis the family is written for.
    pub prepared: T,
    pub family: DegenerationFamily,
    /// Parameters `(γ4, γ5)` of the surviving `e2e3` in the antisymmetric case.
    pub gammas: Option<(Rational, Rational)>,
}

#[derive(Debug, Clone)]
pub struct CaseResult {
    pub ok: bool,
    pub detail: String,
    pub limit: T,
}

/// Nonzero rational `p/q` with `|p| <= 5`, `1 <= q <= 4`.
pub fn random_nonzero<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-5..=5);
        if p != 0 {
            return rat(p, rng.gen_range(1..=4));
        }
    }
}

/// Rational that is zero with probability about one half.
pub fn random_sparse<R: Rng>(rng: &mut R) -> Rational {
    if rng.gen_bool(0.5) {
        Rational::zero()
    } else {
        random_nonzero(rng)
    }
}

pub fn instantiate<R: Rng>(case: Case, n: usize, rng: &mut R) -> Result<CaseInstance> {
    if n < case.min_dim() {
        return Err(Error::DimTooSmall {
            name: case.id().to_string(),
            min: case.min_dim(),
            got: n,
        });
    }
    match case {
        Case::C111 => case_1_1(n, true, rng),
        Case::C112 => case_1_1(n, false, rng),
        Case::C123 => case_1_2_3(n, rng),
        Case::C124 => case_1_2_4(n, 5, rng),
        Case::C124Corrected => case_1_2_4(n, 6, rng),
        Case::C2 => case_2(n, rng),
    }
}

/// `A² = span(e_n)`. For the Lie subcase the table is generated in a basis
/// where `e1 ei = ei e1 = a_i e_n`, `ei ei = a_i² e_n`, so the normalizing
/// change `e_i' = e_i - a_i e1` has real work to do.
#[allow(clippy::needless_range_loop)] // fills both (i, j) and (j, i)
fn case_1_1<R: Rng>(n: usize, lie: bool, rng: &mut R) -> Result<CaseInstance> {
    let top = n - 1;
    let inner = 1..top;
    // Reduced coefficients α'_ij on e2..e_{n-1}.
    let mut reduced = vec![vec![Rational::zero(); n]; n];
    if lie {
        for i in inner.clone() {
            for j in (i + 1)..top {
                let a = random_sparse(rng);
                reduced[i][j] = a.clone();
                reduced[j][i] = -a;
            }
        }
        reduced[1][2] = one();
        reduced[2][1] = -one();
    } else {
        for i in inner.clone() {
            for j in inner.clone() {
                reduced[i][j] = random_sparse(rng);
            }
        }
        reduced[1][1] = one();
    }

    let mut prepared = T::zero(n);
    prepared.set(0, 0, top, one());
    for i in inner.clone() {
        for j in inner.clone() {
            prepared.set(i, j, top, reduced[i][j].clone());
        }
    }

    let source = if lie {
        let a: Vec<Rational> = (0..n)
            .map(|i| {
                if (1..top).contains(&i) {
                    random_sparse(rng)
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let mut s = prepared.clone();
        for i in inner.clone() {
            s.set(0, i, top, a[i].clone());
            s.set(i, 0, top, a[i].clone());
            for j in inner.clone() {
                s.set(
                    i,
                    j,
                    top,
                    reduced[i][j].clone() + a[i].clone() * a[j].clone(),
                );
            }
        }
        let mut basis = Matrix::identity(n);
        for i in inner.clone() {
            basis[(0, i)] = -a[i].clone();
        }
        let normalized = s.in_basis(&basis)?;
        if normalized != prepared {
            return Err(Error::HypothesisViolated(
                "normalizing change of basis did not reach the reduced form".into(),
            ));
        }
        s
    } else {
        prepared.clone()
    };

    let family = if lie {
        let mut g = Columns::new(n);
        g.add(0, top, one(), -2);
        g.add(1, 1, rat(2, 1), -1).add(1, top, -one(), -2);
        g.add(2, 0, one(), -1).add(2, top, -one(), -2);
        g.add(top, 2, one(), -2);
        for i in 3..top {
            g.add(i, i, one(), -2);
        }
        g.family(Given::Direct)
    } else {
        let e: Vec<i64> = (0..n)
            .map(|i| if i <= 1 || i == top { 0 } else { -1 })
            .collect();
        scaling_family(&e)
    };
    Ok(CaseInstance {
        case: if lie { Case::C111 } else { Case::C112 },
        n,
        k: Some(n - 1),
        source,
        prepared,
        family,
        gammas: None,
    })
}

fn case_1_2_3<R: Rng>(n: usize, rng: &mut R) -> Result<CaseInstance> {
    let k = rng.gen_range(2..=n - 2);
    let mut a = T::zero(n);
    a.set(0, 0, k, one());
    a.set(1, 1, k + 1, one());
    for i in 2..k {
        a.set(i, 0, k, random_sparse(rng));
        a.set(0, i, k, random_sparse(rng));
    }
    for i in 2..k {
        for j in 2..k {
            for l in k..n {
                a.set(i, j, l, random_sparse(rng));
            }
        }
    }
    Ok(CaseInstance {
        case: Case::C123,
        n,
        k: Some(k),
        source: a.clone(),
        prepared: a,
        family: scaling_family(&crate::degeneration::lemma_stage1_exponents(n)),
        gammas: None,
    })
}

/// Weights of the scaling in the skew-pair case; `e_{k+2}` gets
/// `top_weight`, which is 5 as printed.
pub fn case_1_2_4_weights(n: usize, k: usize, top_weight: i64) -> Vec<i64> {
    (0..n)
        .map(|i| match i {
            0 => 2,
            1 | 2 => 3,
            _ if i == k => 4,
            _ if i == k + 1 => top_weight,
            _ => 5,
        })
        .collect()
}

fn case_1_2_4<R: Rng>(n: usize, top_weight: i64, rng: &mut R) -> Result<CaseInstance> {
    let k = rng.gen_range(3..=n - 2);
    let mut a = T::zero(n);
    a.set(0, 0, k, one());
    for (i, j) in [(0, 1), (1, 0), (1, 1), (0, 2), (2, 0), (2, 2)] {
        a.set(i, j, k, random_sparse(rng));
    }
    a.set(1, 2, k + 1, one());
    a.set(2, 1, k + 1, -one());
    let w: Vec<i64> = case_1_2_4_weights(n, k, top_weight)
        .into_iter()
        .map(|x| -x)
        .collect();
    Ok(CaseInstance {
        case: if top_weight == 5 {
            Case::C124
        } else {
            Case::C124Corrected
        },
        n,
        k: Some(k),
        source: a.clone(),
        prepared: a,
        family: scaling_family(&w),
        gammas: None,
    })
}

fn case_2<R: Rng>(n: usize, rng: &mut R) -> Result<CaseInstance> {
    let mut a = T::zero(n);
    let put = |a: &mut T, i: usize, j: usize, l: usize, c: Rational| {
        a.set(i, j, l, c.clone());
        a.set(j, i, l, -c);
    };
    put(&mut a, 0, 1, 3, one());
    put(&mut a, 0, 2, 4, one());
    let g4 = random_sparse(rng);
    let g5 = random_sparse(rng);
    put(&mut a, 1, 2, 3, g4.clone());
    put(&mut a, 1, 2, 4, g5.clone());
    for l in 5..n {
        put(&mut a, 1, 2, l, random_sparse(rng));
    }
    // Remaining products land strictly above both factors and inside A².
    for i in 0..n {
        for j in (i + 1)..n {
            if j <= 2 {
                continue;
            }
            for l in (j + 1).max(3)..n {
                put(&mut a, i, j, l, random_sparse(rng));
            }
        }
    }
    let w: Vec<i64> = (0..n)
        .map(|i| match i {
            0..=2 => -2,
            3 | 4 => -4,
            _ => -3,
        })
        .collect();
    Ok(CaseInstance {
        case: Case::C2,
        n,
        k: None,
        source: a.clone(),
        prepared: a,
        family: scaling_family(&w),
        gammas: Some((g4, g5)),
    })
}

/// Direct sum `λ2 ⊕ λ2 ⊕ a_{n-4}`.
pub fn double_lambda2(n: usize) -> T {
    let l = padded("lambda2", 2, None);
    l.direct_sum(&l).direct_sum(&T::zero(n - 4))
}

/// The skew-pair target `e1e1 = e_{k+1}, e2e3 = e_{k+2}, e3e2 = -e_{k+2}`.
pub fn skew_pair_target(n: usize, k: usize) -> T {
    let mut t = T::zero(n);
    t.set(0, 0, k, one());
    t.set(1, 2, k + 1, one());
    t.set(2, 1, k + 1, -one());
    t
}

/// Example-1 family 2 acting on `e1, e_{k+1}, e2, e_{k+2}` and fixing the
/// rest of the basis.
pub fn embedded_family2(n: usize, k: usize) -> DegenerationFamily {
    let slots = [0, k, 1, k + 1];
    let small = example1_family2_matrix();
    let mut g = Columns::new(n);
    for i in 0..n {
        if !slots.contains(&i) {
            g.add(i, i, one(), 0);
        }
    }
    for (c, &col) in slots.iter().enumerate() {
        for (r, &row) in slots.iter().enumerate() {
            let v = &small.cols[c][r];
            if !v.is_zero() {
                let cell = &mut g.cols[col][row];
                *cell = cell.clone() + v.clone();
            }
        }
    }
    g.family(Given::Inverse)
}

/// Runs the proof's family on an instance and checks the claimed outcome.
pub fn run_case(inst: &CaseInstance) -> Result<CaseResult> {
    let n = inst.n;
    let limit = degenerate(&inst.prepared, &inst.family)?;
    let (ok, detail) = match inst.case {
        Case::C111 | Case::C112 => {
            let want = if inst.case == Case::C111 {
                TwoGenClass::L4(rat(1, 4))
            } else {
                TwoGenClass::L5
            };
            let got = classify_core(&limit);
            let ok = got.as_ref() == Some(&want);
            (ok, format!("core class {}", describe(&got)))
        }
        Case::C123 => {
            let k = inst.k.expect("case sets k");
            let first = fingerprint(&limit) == fingerprint(&double_lambda2(n));
            let outer = embedded_family2(n, k);
            let second = degenerate(&limit, &outer)?;
            let composed = compose(&outer, &inst.family)?;
            let direct = degenerate(&inst.prepared, &composed)?;
            let got = classify_core(&direct);
            let ok = first && direct == second && got == Some(TwoGenClass::L5);
            (
                ok,
                format!(
                    "first stage fingerprint-equal to λ2⊕λ2⊕a: {first}; composed limit equals \
                     sequential limit: {}; core class {}",
                    direct == second,
                    describe(&got)
                ),
            )
        }
        Case::C124 | Case::C124Corrected => {
            let k = inst.k.expect("case sets k");
            let target = skew_pair_target(n, k);
            let ok = limit == target;
            let detail = if ok {
                "limit equals the skew-pair algebra".to_string()
            } else {
                format!("limit is `{limit}`, expected `{target}`")
            };
            (ok, detail)
        }
        Case::C2 => {
            let (g4, g5) = inst.gammas.clone().expect("case sets gammas");
            let target = padded("n5_2", n, None);
            let fp = fingerprint(&limit) == fingerprint(&target);
            let mut basis = Matrix::identity(n);
            basis[(0, 1)] = -g5;
            basis[(0, 2)] = g4;
            let exact = limit.in_basis(&basis)? == target;
            (
                fp && exact,
                format!(
                    "fingerprint-equal to n5_2⊕a: {fp}; equal after the change of basis: {exact}"
                ),
            )
        }
    };
    Ok(CaseResult { ok, detail, limit })
}

fn describe(c: &Option<TwoGenClass>) -> String {
    c.as_ref()
        .map_or_else(|| "none".to_string(), ToString::to_string)
}

/// Uniform on `{-3, ..., 3}`.
pub fn small_entry<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-3..=3), 1)
}

fn distinct_triple<R: Rng>(n: usize, rng: &mut R) -> (usize, usize, usize) {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    (idx[0], idx[1], idx[2])
}

fn random_dense<R: Rng>(n: usize, rng: &mut R) -> T {
    let mut a = T::zero(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                a.set(i, j, k, small_entry(rng));
            }
        }
    }
    a
}

/// A dense random tensor satisfying the lemma hypothesis at a random triple,
/// resampled until it does.
pub fn lemma_sample<R: Rng>(n: usize, rng: &mut R) -> (T, LemmaHypothesis) {
    loop {
        let a = random_dense(n, rng);
        let (i, j, k) = distinct_triple(n, rng);
        let hyp = LemmaHypothesis::read(&a, i, j, k).expect("indices are distinct and in range");
        if hyp.check().is_ok() {
            return (a, hyp);
        }
    }
}

/// A dense random tensor whose tuple at a random triple lies in `family`.
pub fn lemma_excluded_sample<R: Rng>(
    n: usize,
    family: Excluded,
    rng: &mut R,
) -> (T, (usize, usize, usize)) {
    let mut a = random_dense(n, rng);
    let (i, j, k) = distinct_triple(n, rng);
    let nonzero = |rng: &mut R| loop {
        let v = small_entry(rng);
        if !v.is_zero() {
            return v;
        }
    };
    let tuple = match family {
        Excluded::Antisymmetric => {
            let b = small_entry(rng);
            [Rational::zero(), b.clone(), -b, Rational::zero()]
        }
        Excluded::RankOneSymmetric => {
            let d = nonzero(rng);
            let b = small_entry(rng);
            [d.clone(), b.clone(), b.clone(), b.clone() * b / d]
        }
        Excluded::RankOneSymmetricEdge => [
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            nonzero(rng),
        ],
    };
    let [aii, aij, aji, ajj] = tuple;
    a.set(i, i, k, aii);
    a.set(i, j, k, aij);
    a.set(j, i, k, aji);
    a.set(j, j, k, ajj);
    debug_assert_eq!(
        exclusion(&LemmaHypothesis::read(&a, i, j, k).unwrap().tuple),
        Some(family)
    );
    (a, (i, j, k))
}
