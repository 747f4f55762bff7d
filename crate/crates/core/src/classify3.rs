//! Isomorphism classes of the 3-dimensional algebras whose products all lie in
//! a one-dimensional square that annihilates the algebra.
//!
//! Such an algebra is a bilinear form `M` on a 2-dimensional space of
//! generators, taken up to `M -> s·PᵀMP`. Writing `M = S + K` with `S`
//! symmetric and `K` antisymmetric, `K` scales by `s·det P` and `S` by
//! congruence, so `det S / det K` is invariant whenever `K ≠ 0`.

use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{Side, StructureTensor};
use crate::exact::{format_rational, rat, Rational};
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TwoGenClass {
    Abelian,
    Lambda2,
    N3Minus,
    L4(Rational),
    L5,
}

impl TwoGenClass {
    pub fn label(&self) -> &'static str {
        match self {
            TwoGenClass::Abelian => "Abelian",
            TwoGenClass::Lambda2 => "Lambda2",
            TwoGenClass::N3Minus => "N3minus",
            TwoGenClass::L4(_) => "L4",
            TwoGenClass::L5 => "L5",
        }
    }

    pub fn alpha(&self) -> Option<&Rational> {
        match self {
            TwoGenClass::L4(a) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for TwoGenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoGenClass::L4(a) => write!(f, "L4({})", format_rational(a)),
            other => f.write_str(other.label()),
        }
    }
}

impl Serialize for TwoGenClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("TwoGenClass", 2)?;
        s.serialize_field("label", self.label())?;
        s.serialize_field("alpha", &self.alpha().map(format_rational))?;
        s.end()
    }
}

fn det2(m: &[[Rational; 2]; 2]) -> Rational {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

/// Classifies the form `M[a][b] = γ(a, b, 3)`.
pub fn classify(m: &[[Rational; 2]; 2]) -> TwoGenClass {
    let half = rat(1, 2);
    let mut s: [[Rational; 2]; 2] = Default::default();
    let mut k: [[Rational; 2]; 2] = Default::default();
    for a in 0..2 {
        for b in 0..2 {
            s[a][b] = (&m[a][b] + &m[b][a]) * &half;
            k[a][b] = (&m[a][b] - &m[b][a]) * &half;
        }
    }
    let s_zero = s.iter().flatten().all(Zero::is_zero);
    let k_zero = k[0][1].is_zero();
    match (s_zero, k_zero) {
        (true, true) => TwoGenClass::Abelian,
        (false, true) if det2(&s).is_zero() => TwoGenClass::Lambda2,
        (false, true) => TwoGenClass::L5,
        (true, false) => TwoGenClass::N3Minus,
        (false, false) => {
            let inv = det2(&s) / det2(&k);
            TwoGenClass::L4((inv + Rational::one()) / rat(4, 1))
        }
    }
}

/// Convenience wrapper over a 2×2 [`Matrix`].
pub fn classify_matrix(m: &Matrix<Rational>) -> Option<TwoGenClass> {
    if m.rows() != 2 || m.cols() != 2 {
        return None;
    }
    Some(classify(&[
        [m[(0, 0)].clone(), m[(0, 1)].clone()],
        [m[(1, 0)].clone(), m[(1, 1)].clone()],
    ]))
}

/// Classifies an algebra of any dimension that splits as a member of the
/// stratum plus an abelian summand. Returns `None` outside that situation:
/// `dim A² > 1`, a square that does not annihilate, or more than two
/// generators carrying the form.
pub fn classify_core(a: &StructureTensor<Rational>) -> Option<TwoGenClass> {
    let n = a.dim();
    let sq = a.square();
    if sq.is_zero() {
        return Some(TwoGenClass::Abelian);
    }
    if sq.dim() > 1 || !sq.is_subspace_of(&a.annihilator(Side::TwoSided)) {
        return None;
    }
    let z = &sq.basis_vectors()[0];
    let pivot = z
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero basis row");
    // B(e_i, e_j) is the z-coordinate of e_i e_j; z has a unit pivot
    let b = Matrix::from_rows(
        (0..n)
            .map(|i| (0..n).map(|j| a.get(i, j, pivot)).collect())
            .collect(),
    )
    .ok()?;
    let mut stacked = b.to_rows();
    stacked.extend(b.transpose().to_rows());
    let radical = Matrix::from_rows(stacked).ok()?.solve_homogeneous();
    let codim = n - radical.dim();
    if codim > 2 {
        return None;
    }
    let w = complement(&radical);
    let mut m: [[Rational; 2]; 2] = Default::default();
    for (p, u) in w.iter().enumerate() {
        for (q, v) in w.iter().enumerate() {
            m[p][q] = dot(&b.mul_vec(v).ok()?, u);
        }
    }
    Some(classify(&m))
}

fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Unit vectors on the non-pivot columns of `s`, completing its basis.
fn complement(s: &Subspace<Rational>) -> Vec<Vec<Rational>> {
    let n = s.ambient_dim();
    let pivots: Vec<usize> = s
        .basis_vectors()
        .iter()
        .map(|r| r.iter().position(|c| !c.is_zero()).expect("nonzero row"))
        .collect();
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|c| {
            let mut v = vec![Rational::zero(); n];
            v[c] = Rational::one();
            v
        })
        .collect()
}
