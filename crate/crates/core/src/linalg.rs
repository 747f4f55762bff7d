//! Dense exact linear algebra over any [`Field`].
//!
//! Elimination always pivots on the first nonzero entry in column order, so
//! the reduced row echelon form (and hence [`Subspace`] equality) is a pure
//! function of the input.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn diagonal(entries: Vec<F>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: Vec<Vec<F>>) -> Result<Self> {
        Ok(Self::from_rows(columns)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-F::one()))
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// Reduced row echelon form and rank.
    pub fn rref(&self) -> (Self, usize) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        (m, rank)
    }

    /// Gauss–Jordan in place; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self[(r, c)].inv().expect("pivot is nonzero");
            for j in c..self.cols {
                if !self[(r, j)].is_zero() {
                    self[(r, j)] = self[(r, j)].clone() * inv.clone();
                }
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    let x = &self.data[r * self.cols + j];
                    if !x.is_zero() {
                        let v = self[(i, j)].clone() - f.clone() * x.clone();
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Exact inverse of a square matrix.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(F::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            let inv = pivot.inv().expect("pivot is nonzero");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * inv.clone();
                for j in c..n {
                    let v = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                    m[(i, j)] = v;
                }
            }
            det = det * pivot;
        }
        Ok(det)
    }

    /// Null space `{v : self * v = 0}`.
    pub fn solve_homogeneous(&self) -> Subspace<F> {
        let (r, _) = self.rref();
        let mut pivot_of_row = Vec::new();
        for i in 0..r.rows {
            match (0..r.cols).find(|&j| !r[(i, j)].is_zero()) {
                Some(j) => pivot_of_row.push(j),
                None => break,
            }
        }
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivot_of_row {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (i, &p) in pivot_of_row.iter().enumerate() {
                let x = &r[(i, free)];
                if !x.is_zero() {
                    v[p] = -x.clone();
                }
            }
            basis.push(v);
        }
        Subspace::span(self.cols, basis).expect("vectors have ambient length")
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

pub(crate) fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x.clone() * y.clone()
        }
    })
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Free-function form of [`Matrix::rref`].
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, usize) {
    m.rref()
}

pub fn invert<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    m.invert()
}

pub fn solve_homogeneous<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    m.solve_homogeneous()
}

/// A linear subspace of `F^n`, stored as the nonzero rows of an RREF basis
/// matrix. Two subspaces are equal exactly when their representations are.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F> {
    ambient_dim: usize,
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    /// Span of arbitrary (possibly dependent or zero) vectors.
    pub fn span(ambient_dim: usize, vectors: Vec<Vec<F>>) -> Result<Self> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: bad.len(),
            });
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let m = Matrix::from_rows(vectors)?;
        let (r, rank) = m.rref();
        let rows = (0..rank).map(|i| r.row(i).to_vec()).collect::<Vec<_>>();
        let basis = if rows.is_empty() {
            Matrix::zeros(0, ambient_dim)
        } else {
            Matrix::from_rows(rows)?
        };
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F>> {
        self.basis.to_rows()
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Self::span(self.ambient_dim, vs)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        if v.iter().all(F::is_zero) {
            return true;
        }
        let mut vs = self.basis_vectors();
        vs.push(v.to_vec());
        Self::span(self.ambient_dim, vs).is_ok_and(|s| s.dim() == self.dim())
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis_vectors().iter().all(|v| other.contains(v))
    }

    /// Intersection computed as the null space of `[A; B]`-style coordinates:
    /// `x` in both iff `x = a·A = b·B`.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Ok(Self::zero(self.ambient_dim));
        }
        // columns: coefficients (a, b); rows: ambient coordinates of a·A − b·B
        let mut m = Matrix::zeros(self.ambient_dim, da + db);
        for c in 0..self.ambient_dim {
            for i in 0..da {
                m[(c, i)] = self.basis[(i, c)].clone();
            }
            for i in 0..db {
                m[(c, da + i)] = -other.basis[(i, c)].clone();
            }
        }
        let coeffs = m.solve_homogeneous();
        let vectors = coeffs
            .basis_vectors()
            .into_iter()
            .map(|ab| {
                (0..self.ambient_dim)
                    .map(|c| dot(&ab[..da], &self.basis.column(c)))
                    .collect()
            })
            .collect();
        Self::span(self.ambient_dim, vectors)
    }
}

pub fn subspace_sum<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>> {
    a.sum(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, RatFunc, Rational};
    use num_traits::{One, Zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Cofactor expansion, independent of the elimination code.
    fn cofactor_det(m: &Matrix<Rational>) -> Rational {
        let n = m.rows();
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let minor: Vec<Vec<Rational>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[(i, c)].clone())
                        .collect()
                })
                .collect();
            let term = m[(0, j)].clone() * cofactor_det(&Matrix::from_rows(minor).unwrap());
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::<Rational>::identity(3);
        assert_eq!(rref(&id), (id.clone(), 3));
        assert_eq!(rref(&q(&[&[1, 2], &[2, 4]])), (q(&[&[1, 2], &[0, 0]]), 1));
        let z = Matrix::<Rational>::zeros(2, 3);
        assert_eq!(rref(&z), (z.clone(), 0));
    }

    #[test]
    fn invert_examples() {
        let t = RatFunc::t();
        let d = Matrix::diagonal(vec![t.clone(), t.clone() * t.clone(), t.clone()]);
        let inv = invert(&d).unwrap();
        let it = t.inv().unwrap();
        assert_eq!(
            inv,
            Matrix::diagonal(vec![it.clone(), it.clone() * it.clone(), it])
        );
        assert_eq!(invert(&q(&[&[1, 1], &[1, 1]])), Err(Error::Singular));
        assert!(invert(&q(&[&[1, 1, 1]])).is_err());
    }

    #[test]
    fn null_space_examples() {
        assert!(solve_homogeneous(&Matrix::<Rational>::identity(3)).is_zero());
        assert_eq!(solve_homogeneous(&Matrix::<Rational>::zeros(2, 5)).dim(), 5);
        let ns = solve_homogeneous(&q(&[&[1, 1, 0]]));
        assert_eq!(ns.dim(), 2);
        for v in ns.basis_vectors() {
            assert!(q(&[&[1, 1, 0]]).mul_vec(&v).unwrap()[0].is_zero());
        }
    }

    #[test]
    fn subspace_sum_examples() {
        let e1 = Subspace::span(3, vec![vec![rat(1, 1), rat(0, 1), rat(0, 1)]]).unwrap();
        let e2 = Subspace::span(3, vec![vec![rat(0, 1), rat(1, 1), rat(0, 1)]]).unwrap();
        let both = subspace_sum(&e1, &e2).unwrap();
        assert_eq!(both.dim(), 2);
        assert_eq!(subspace_sum(&both, &both).unwrap(), both);
        assert_eq!(subspace_sum(&both, &Subspace::zero(3)).unwrap(), both);
        assert!(subspace_sum(&both, &Subspace::zero(4)).is_err());
        assert_eq!(both.intersection(&e2).unwrap(), e2);
        assert!(e1.intersection(&e2).unwrap().is_zero());
    }

    #[test]
    fn random_inverse_and_singularity_agree_with_cofactor_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut singular = 0;
        for trial in 0..500 {
            let n = 1 + trial % 4;
            // small entry range on a few trials so singular cases actually occur
            let hi = if trial % 5 == 0 { 1 } else { 9 };
            let m = Matrix::from_rows(
                (0..n)
                    .map(|_| (0..n).map(|_| rat(rng.gen_range(-hi..=hi), 1)).collect())
                    .collect(),
            )
            .unwrap();
            let det = cofactor_det(&m);
            assert_eq!(m.determinant().unwrap(), det);
            match invert(&m) {
                Ok(inv) => {
                    assert!(!det.is_zero());
                    assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(n));
                    assert_eq!(m.rank(), n);
                }
                Err(Error::Singular) => {
                    assert!(det.is_zero());
                    singular += 1;
                }
                Err(e) => panic!("unexpected {e}"),
            }
            assert_eq!(m.rank(), m.transpose().rank());
        }
        assert!(singular > 0);
    }

    #[test]
    fn rank_of_rectangular_matches_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let (r, c) = (rng.gen_range(1..6), rng.gen_range(1..6));
            let m = Matrix::from_rows(
                (0..r)
                    .map(|_| (0..c).map(|_| rat(rng.gen_range(-2..=2), 1)).collect())
                    .collect(),
            )
            .unwrap();
            assert_eq!(m.rank(), m.transpose().rank());
            let ns = m.solve_homogeneous();
            assert_eq!(ns.dim(), c - m.rank());
        }
    }

    fn random_subspace(rng: &mut ChaCha8Rng) -> Subspace<Rational> {
        let k = rng.gen_range(0..4);
        let vs = (0..k)
            .map(|_| (0..4).map(|_| rat(rng.gen_range(-2..=2), 1)).collect())
            .collect();
        Subspace::span(4, vs).unwrap()
    }

    #[test]
    fn subspace_sum_is_a_semilattice() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let (a, b, c) = (
                random_subspace(&mut rng),
                random_subspace(&mut rng),
                random_subspace(&mut rng),
            );
            assert_eq!(a.sum(&b).unwrap(), b.sum(&a).unwrap());
            assert_eq!(
                a.sum(&b).unwrap().sum(&c).unwrap(),
                a.sum(&b.sum(&c).unwrap()).unwrap()
            );
            assert_eq!(a.sum(&a).unwrap(), a);
            let i = a.intersection(&b).unwrap();
            assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
            assert_eq!(a.dim() + b.dim(), a.sum(&b).unwrap().dim() + i.dim());
        }
    }

    #[test]
    fn one_is_identity_for_ratfunc_matrices() {
        let m = Matrix::from_rows(vec![
            vec![RatFunc::t(), RatFunc::one()],
            vec![RatFunc::zero(), RatFunc::t()],
        ])
        .unwrap();
        let inv = m.invert().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
    }
}
