//! Finite-dimensional algebras given by structure constants.
//!
//! A [`StructureTensor`] stores `γ(i, j, k)`, the coefficient of `e_k` in
//! `e_i e_j`. Indices are zero-based in this API; the file format and all
//! human-facing reports are one-based.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Field, FieldTag};
use crate::linalg::{Matrix, Subspace};

/// Polynomial identities that can be checked on basis elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    /// `x(yz) = (xy)z - (xz)y`
    LeibnizRight,
    /// `(xy)z = x(yz) - y(xz)`
    LeibnizLeft,
    /// `xy = -yx`
    #[serde(rename = "antisym")]
    Antisymmetric,
    /// `x(yz) + y(zx) + z(xy) = 0`
    Jacobi,
    /// antisymmetric and Jacobi
    Lie,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 5] = [
        IdentityKind::LeibnizRight,
        IdentityKind::LeibnizLeft,
        IdentityKind::Antisymmetric,
        IdentityKind::Jacobi,
        IdentityKind::Lie,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::LeibnizRight => "leibniz-right",
            IdentityKind::LeibnizLeft => "leibniz-left",
            IdentityKind::Antisymmetric => "antisym",
            IdentityKind::Jacobi => "jacobi",
            IdentityKind::Lie => "lie",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "leibniz-right" => IdentityKind::LeibnizRight,
            "leibniz-left" => IdentityKind::LeibnizLeft,
            "antisym" | "antisymmetric" => IdentityKind::Antisymmetric,
            "jacobi" => IdentityKind::Jacobi,
            "lie" => IdentityKind::Lie,
            other => return Err(Error::Parse(format!("unknown identity `{other}`"))),
        })
    }
}

/// Outcome of [`StructureTensor::check_identity`].
#[derive(Debug, Clone, PartialEq)]
pub enum IdentityVerdict<F> {
    Holds,
    /// First failing basis tuple in lexicographic order (zero-based); the
    /// third index is absent for two-argument identities.
    Fails {
        at: (usize, usize, Option<usize>),
        residual: Vec<F>,
    },
}

impl<F> IdentityVerdict<F> {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityVerdict::Holds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureTensor<F> {
    dim: usize,
    gamma: BTreeMap<(usize, usize, usize), F>,
}

impl<F: Field> StructureTensor<F> {
    /// The abelian (zero) algebra of dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        StructureTensor {
            dim,
            gamma: BTreeMap::new(),
        }
    }

    /// Builds a tensor from `((i, j, k), c)` entries, zero-based. Repeated
    /// entries are summed.
    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = ((usize, usize, usize), F)>,
    ) -> Result<Self> {
        let mut t = Self::zero(dim);
        for ((i, j, k), c) in entries {
            t.check_index(i)?;
            t.check_index(j)?;
            t.check_index(k)?;
            let cur = t.get(i, j, k);
            t.set(i, j, k, cur + c);
        }
        Ok(t)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: i + 1,
            });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field_tag(&self) -> FieldTag {
        F::TAG
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> F {
        self.gamma.get(&(i, j, k)).cloned().unwrap_or_else(F::zero)
    }

    /// Sets one structure constant; zero removes the entry.
    pub fn set(&mut self, i: usize, j: usize, k: usize, c: F) {
        assert!(
            i < self.dim && j < self.dim && k < self.dim,
            "index out of range"
        );
        if c.is_zero() {
            self.gamma.remove(&(i, j, k));
        } else {
            self.gamma.insert((i, j, k), c);
        }
    }

    /// Nonzero entries in lexicographic index order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &F)> {
        self.gamma.iter()
    }

    pub fn nnz(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.gamma.is_empty()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> StructureTensor<G> {
        let mut out = StructureTensor::zero(self.dim);
        for (&(i, j, k), c) in &self.gamma {
            out.set(i, j, k, f(c));
        }
        out
    }

    /// `e_i e_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        for (&(_, _, k), c) in self.gamma.range((i, j, 0)..=(i, j, self.dim)) {
            v[k] = c.clone();
        }
        v
    }

    /// Dense multiplication table, `table[i * n + j] = e_i e_j`.
    fn table(&self) -> Vec<Vec<F>> {
        let n = self.dim;
        let mut t = vec![vec![F::zero(); n]; n * n];
        for (&(i, j, k), c) in &self.gamma {
            t[i * n + j][k] = c.clone();
        }
        t
    }

    /// Bilinear product of two coordinate vectors.
    pub fn product(&self, x: &[F], y: &[F]) -> Result<Vec<F>> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        let mut out = vec![F::zero(); self.dim];
        for (&(i, j, k), c) in &self.gamma {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            out[k] = out[k].clone() + x[i].clone() * y[j].clone() * c.clone();
        }
        Ok(out)
    }

    /// Matrix of left multiplication `y -> x y`.
    pub fn left_mult(&self, x: &[F]) -> Result<Matrix<F>> {
        let cols = (0..self.dim)
            .map(|j| self.product(x, &unit(self.dim, j)))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(cols)
    }

    /// Matrix of right multiplication `y -> y x`.
    pub fn right_mult(&self, x: &[F]) -> Result<Matrix<F>> {
        let cols = (0..self.dim)
            .map(|j| self.product(&unit(self.dim, j), x))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(cols)
    }

    /// Decides an identity on all basis tuples; by multilinearity this
    /// decides it on the whole algebra.
    pub fn check_identity(&self, kind: IdentityKind) -> IdentityVerdict<F> {
        let n = self.dim;
        let t = self.table();
        // x * v for a basis element x and a coordinate vector v
        let left = |i: usize, v: &[F]| -> Vec<F> {
            let mut out = vec![F::zero(); n];
            for (c, vc) in v.iter().enumerate() {
                if vc.is_zero() {
                    continue;
                }
                for (k, g) in t[i * n + c].iter().enumerate() {
                    if !g.is_zero() {
                        out[k] = out[k].clone() + vc.clone() * g.clone();
                    }
                }
            }
            out
        };
        let right = |v: &[F], j: usize| -> Vec<F> {
            let mut out = vec![F::zero(); n];
            for (c, vc) in v.iter().enumerate() {
                if vc.is_zero() {
                    continue;
                }
                for (k, g) in t[c * n + j].iter().enumerate() {
                    if !g.is_zero() {
                        out[k] = out[k].clone() + vc.clone() * g.clone();
                    }
                }
            }
            out
        };
        let combine = |parts: [(&Vec<F>, i64); 3]| -> Vec<F> {
            (0..n)
                .map(|k| {
                    parts.iter().fold(F::zero(), |acc, (v, s)| match s {
                        1 => acc + v[k].clone(),
                        _ => acc - v[k].clone(),
                    })
                })
                .collect()
        };
        let nonzero = |v: &[F]| v.iter().any(|x| !x.is_zero());

        match kind {
            IdentityKind::Antisymmetric => {
                for i in 0..n {
                    for j in 0..=i {
                        let r: Vec<F> = t[i * n + j]
                            .iter()
                            .zip(&t[j * n + i])
                            .map(|(a, b)| a.clone() + b.clone())
                            .collect();
                        if nonzero(&r) {
                            return IdentityVerdict::Fails {
                                at: (i, j, None),
                                residual: r,
                            };
                        }
                    }
                }
                IdentityVerdict::Holds
            }
            IdentityKind::Lie => match self.check_identity(IdentityKind::Antisymmetric) {
                IdentityVerdict::Holds => self.check_identity(IdentityKind::Jacobi),
                fail => fail,
            },
            _ => {
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let r = match kind {
                                IdentityKind::LeibnizRight => {
                                    // x(yz) - (xy)z + (xz)y
                                    let a = left(i, &t[j * n + k]);
                                    let b = right(&t[i * n + j], k);
                                    let c = right(&t[i * n + k], j);
                                    combine([(&a, 1), (&b, -1), (&c, 1)])
                                }
                                IdentityKind::LeibnizLeft => {
                                    // (xy)z - x(yz) + y(xz)
                                    let a = right(&t[i * n + j], k);
                                    let b = left(i, &t[j * n + k]);
                                    let c = left(j, &t[i * n + k]);
                                    combine([(&a, 1), (&b, -1), (&c, 1)])
                                }
                                _ => {
                                    // x(yz) + y(zx) + z(xy)
                                    let a = left(i, &t[j * n + k]);
                                    let b = left(j, &t[k * n + i]);
                                    let c = left(k, &t[i * n + j]);
                                    combine([(&a, 1), (&b, 1), (&c, 1)])
                                }
                            };
                            if nonzero(&r) {
                                return IdentityVerdict::Fails {
                                    at: (i, j, Some(k)),
                                    residual: r,
                                };
                            }
                        }
                    }
                }
                IdentityVerdict::Holds
            }
        }
    }

    pub fn satisfies(&self, kind: IdentityKind) -> bool {
        self.check_identity(kind).holds()
    }

    /// Span of all products of a basis vector of `a` with one of `b`.
    pub fn subspace_product(&self, a: &Subspace<F>, b: &Subspace<F>) -> Subspace<F> {
        let mut vs = Vec::new();
        for u in a.basis_vectors() {
            for v in b.basis_vectors() {
                let p = self.product(&u, &v).expect("ambient dims match");
                if p.iter().any(|x| !x.is_zero()) {
                    vs.push(p);
                }
            }
        }
        Subspace::span(self.dim, vs).expect("ambient dims match")
    }

    /// `A²`, the span of all basis products.
    pub fn square(&self) -> Subspace<F> {
        let vs = (0..self.dim)
            .flat_map(|i| (0..self.dim).map(move |j| (i, j)))
            .map(|(i, j)| self.basis_product(i, j))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        Subspace::span(self.dim, vs).expect("ambient dims match")
    }

    /// Lower central series `A¹ = A, A^m = Σ_{i+j=m} A^i A^j`, or the derived
    /// series `A^(0) = A, A^(m+1) = A^(m) A^(m)`, up to and including the
    /// first stable term (zero for nilpotent / solvable algebras).
    pub fn power_series(&self, kind: SeriesKind) -> Vec<Subspace<F>> {
        let full = Subspace::full(self.dim);
        match kind {
            SeriesKind::Derived => {
                let mut terms = vec![full];
                loop {
                    let last = terms.last().expect("nonempty");
                    let next = self.subspace_product(last, last);
                    if &next == last {
                        break;
                    }
                    let done = next.is_zero();
                    terms.push(next);
                    if done {
                        break;
                    }
                }
                terms
            }
            SeriesKind::LowerCentral => {
                // powers[m - 1] = A^m. Once A^m = ... = A^{2m} the sequence is
                // constant from m on, since every A^i A^j with i + j = k > 2m
                // has a factor whose index lies in the constant window.
                let mut powers = vec![full];
                let mut run_start = 1;
                loop {
                    let m = powers.len() + 1;
                    if powers[m - 2].is_zero() || m > 2 * run_start {
                        break;
                    }
                    let mut next = Subspace::zero(self.dim);
                    for i in 1..m {
                        let p = self.subspace_product(&powers[i - 1], &powers[m - i - 1]);
                        next = next.sum(&p).expect("ambient dims match");
                    }
                    if next != powers[m - 2] {
                        run_start = m;
                    }
                    powers.push(next);
                }
                powers.truncate(run_start);
                powers
            }
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.power_series(SeriesKind::LowerCentral)
            .last()
            .is_some_and(Subspace::is_zero)
    }

    pub fn is_solvable(&self) -> bool {
        self.power_series(SeriesKind::Derived)
            .last()
            .is_some_and(Subspace::is_zero)
    }

    /// Right annihilator `{v : e_i v = 0 ∀i}`, left annihilator
    /// `{v : v e_i = 0 ∀i}`, or their intersection.
    pub fn annihilator(&self, side: Side) -> Subspace<F> {
        let n = self.dim;
        let mut rows = Vec::new();
        let mut push = |right: bool| {
            for i in 0..n {
                for k in 0..n {
                    let row: Vec<F> = (0..n)
                        .map(|j| {
                            if right {
                                self.get(i, j, k)
                            } else {
                                self.get(j, i, k)
                            }
                        })
                        .collect();
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        };
        match side {
            Side::Right => push(true),
            Side::Left => push(false),
            Side::TwoSided => {
                push(true);
                push(false);
            }
        }
        if rows.is_empty() {
            return Subspace::full(n);
        }
        Matrix::from_rows(rows)
            .expect("rows share length")
            .solve_homogeneous()
    }

    /// Matrix of `y -> yx + xy`.
    pub fn phi_matrix(&self, x: &[F]) -> Result<Matrix<F>> {
        self.left_mult(x)?.add(&self.right_mult(x)?)
    }

    /// Block direct sum; cross products vanish.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let off = self.dim;
        let mut out = Self::zero(self.dim + other.dim);
        out.gamma = self.gamma.clone();
        for (&(i, j, k), c) in &other.gamma {
            out.gamma.insert((i + off, j + off, k + off), c.clone());
        }
        out
    }

    /// Relabels the basis: old `e_i` becomes new `e_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim, "permutation length");
        let mut out = Self::zero(self.dim);
        for (&(i, j, k), c) in &self.gamma {
            out.gamma.insert((perm[i], perm[j], perm[k]), c.clone());
        }
        out
    }

    /// The transported product `(g * λ)(x, y) = g(λ(g⁻¹x, g⁻¹y))`.
    ///
    /// `g[(i, j)]` is the coefficient of `e_i` in `g(e_j)`.
    pub fn basis_change(&self, g: &Matrix<F>) -> Result<Self> {
        if g.rows() != self.dim || g.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: g.rows().max(g.cols()),
            });
        }
        let h = g.invert()?;
        Ok(self.transport_with(g, &h))
    }

    /// Structure constants of the same algebra in the basis whose `j`-th
    /// vector has coordinates `basis.column(j)`.
    pub fn in_basis(&self, basis: &Matrix<F>) -> Result<Self> {
        let g = basis.invert()?;
        Ok(self.transport_with(&g, basis))
    }

    /// Transport with a precomputed inverse `h = g⁻¹`:
    /// `μ(i, j, k) = Σ h[a][i] h[b][j] γ(a, b, c) g[k][c]`.
    pub(crate) fn transport_with(&self, g: &Matrix<F>, h: &Matrix<F>) -> Self {
        let n = self.dim;
        let nz_row = |m: &Matrix<F>, r: usize| -> Vec<(usize, F)> {
            (0..n)
                .filter(|&c| !m[(r, c)].is_zero())
                .map(|c| (c, m[(r, c)].clone()))
                .collect()
        };
        let h_rows: Vec<_> = (0..n).map(|a| nz_row(h, a)).collect();
        let g_cols: Vec<Vec<(usize, F)>> = (0..n)
            .map(|c| {
                (0..n)
                    .filter(|&k| !g[(k, c)].is_zero())
                    .map(|k| (k, g[(k, c)].clone()))
                    .collect()
            })
            .collect();
        let mut acc: BTreeMap<(usize, usize, usize), F> = BTreeMap::new();
        for (&(a, b, c), gamma) in &self.gamma {
            for (i, hai) in &h_rows[a] {
                let x = hai.clone() * gamma.clone();
                for (j, hbj) in &h_rows[b] {
                    let y = x.clone() * hbj.clone();
                    for (k, gkc) in &g_cols[c] {
                        let term = y.clone() * gkc.clone();
                        let slot = acc.entry((*i, *j, *k)).or_insert_with(F::zero);
                        *slot = slot.clone() + term;
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        StructureTensor { dim: n, gamma: acc }
    }
}

pub(crate) fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

impl<F: Field> fmt::Display for StructureTensor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gamma.is_empty() {
            return write!(f, "abelian({})", self.dim);
        }
        // group by (i, j): e_i e_j = Σ c e_k
        let mut first = true;
        let mut cur: Option<(usize, usize)> = None;
        for (&(i, j, k), c) in &self.gamma {
            if cur != Some((i, j)) {
                if !first {
                    f.write_str(", ")?;
                }
                write!(f, "e{}e{} = ", i + 1, j + 1)?;
                cur = Some((i, j));
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "e{}", k + 1)?;
            } else {
                write!(f, "({c})e{}", k + 1)?;
            }
        }
        Ok(())
    }
}
