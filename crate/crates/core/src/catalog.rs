//! Named algebras with their canonical multiplication tables.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{IdentityKind, StructureTensor};
use crate::error::{Error, Result};
use crate::exact::{format_rational, Rational};

type T = StructureTensor<Rational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaParam {
    None,
    Required,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub min_dim: usize,
    pub alpha: AlphaParam,
    /// Where the table comes from.
    pub source: &'static str,
    /// Identity the source asserts for the algebra, if any.
    pub asserted: Option<IdentityKind>,
    pub variant_note: Option<&'static str>,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "abelian",
        min_dim: 1,
        alpha: AlphaParam::None,
        source: "a_n, zero product",
        asserted: Some(IdentityKind::Lie),
        variant_note: None,
    },
    CatalogEntry {
        name: "p_minus",
        min_dim: 2,
        alpha: AlphaParam::None,
        source: "Theorem 1 (level one)",
        asserted: Some(IdentityKind::Lie),
        variant_note: None,
    },
    CatalogEntry {
        name: "n3_minus",
        min_dim: 3,
        alpha: AlphaParam::None,
        source: "Theorem 1 (level one)",
        asserted: Some(IdentityKind::Lie),
        variant_note: None,
    },
    CatalogEntry {
        name: "lambda2",
        min_dim: 2,
        alpha: AlphaParam::None,
        source: "Theorem 1 (level one)",
        asserted: Some(IdentityKind::LeibnizRight),
        variant_note: None,
    },
    CatalogEntry {
        name: "nu",
        min_dim: 2,
        alpha: AlphaParam::Required,
        source: "Theorem 1 (level one)",
        asserted: None,
        variant_note: Some(
            "e1e1 = e1 is idempotent, so neither Leibniz identity holds; no identity is asserted",
        ),
    },
    CatalogEntry {
        name: "n5_1",
        min_dim: 5,
        alpha: AlphaParam::None,
        source: "Theorem 4 (nilpotent level two), antisymmetric table",
        asserted: Some(IdentityKind::Lie),
        variant_note: Some(
            "other printed tables: e1e3 = e5, e2e4 = e5 with a stray 2 <= i <= n; \
             e1e3 = e5, e2e1 = e5",
        ),
    },
    CatalogEntry {
        name: "n5_2",
        min_dim: 5,
        alpha: AlphaParam::None,
        source: "Theorem 2 (Lie level two)",
        asserted: Some(IdentityKind::Lie),
        variant_note: None,
    },
    CatalogEntry {
        name: "r2",
        min_dim: 2,
        alpha: AlphaParam::None,
        source: "Theorem 2 (Lie level two)",
        asserted: Some(IdentityKind::Lie),
        variant_note: Some(
            "printed as e1e1 = e2, which is not antisymmetric; the two-dimensional \
             non-abelian Lie algebra e1e2 = e2 is used",
        ),
    },
    CatalogEntry {
        name: "g1",
        min_dim: 3,
        alpha: AlphaParam::Required,
        source: "Theorem 2 (Lie level two)",
        asserted: Some(IdentityKind::Lie),
        variant_note: None,
    },
    CatalogEntry {
        name: "g2",
        min_dim: 3,
        alpha: AlphaParam::None,
        source: "Theorem 2 (Lie level two)",
        asserted: Some(IdentityKind::Lie),
        variant_note: Some("right-hand side of e1ei missing in print; completed as e1ei = ei"),
    },
    CatalogEntry {
        name: "L4",
        min_dim: 3,
        alpha: AlphaParam::Required,
        source: "Theorem 4 (nilpotent level two)",
        asserted: Some(IdentityKind::LeibnizRight),
        variant_note: Some("the e2e1 = e3 presentation is available as L4_thm3"),
    },
    CatalogEntry {
        name: "L4_thm3",
        min_dim: 3,
        alpha: AlphaParam::Required,
        source: "Theorem 3 (Leibniz level two)",
        asserted: Some(IdentityKind::LeibnizRight),
        variant_note: None,
    },
    CatalogEntry {
        name: "L5",
        min_dim: 3,
        alpha: AlphaParam::None,
        source: "Theorem 3 (Leibniz level two)",
        asserted: Some(IdentityKind::LeibnizRight),
        variant_note: None,
    },
    CatalogEntry {
        name: "r",
        min_dim: 2,
        alpha: AlphaParam::None,
        source: "Theorem 3 (Leibniz level two)",
        asserted: Some(IdentityKind::LeibnizRight),
        variant_note: None,
    },
    CatalogEntry {
        name: "ell",
        min_dim: 2,
        alpha: AlphaParam::None,
        source: "Remark 1 (left Leibniz)",
        asserted: Some(IdentityKind::LeibnizLeft),
        variant_note: None,
    },
];

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// Builder over one-based indices, mirroring the printed tables.
struct Table {
    t: T,
    antisymmetric: bool,
}

impl Table {
    fn new(n: usize) -> Self {
        Table {
            t: T::zero(n),
            antisymmetric: false,
        }
    }

    fn lie(n: usize) -> Self {
        Table {
            t: T::zero(n),
            antisymmetric: true,
        }
    }

    fn put(&mut self, i: usize, j: usize, k: usize, c: Rational) -> &mut Self {
        if self.antisymmetric {
            self.t.set(j - 1, i - 1, k - 1, -c.clone());
        }
        self.t.set(i - 1, j - 1, k - 1, c);
        self
    }

    fn one(&mut self, i: usize, j: usize, k: usize) -> &mut Self {
        self.put(i, j, k, Rational::one())
    }

    fn done(&mut self) -> T {
        std::mem::replace(&mut self.t, T::zero(0))
    }
}

/// Builds a named algebra of dimension `dim`, padded with an abelian summand
/// where the family has fixed size.
pub fn make(name: &str, dim: usize, alpha: Option<&Rational>) -> Result<T> {
    let e = entry(name)?;
    if dim < e.min_dim {
        return Err(Error::DimTooSmall {
            name: name.to_string(),
            min: e.min_dim,
            got: dim,
        });
    }
    let alpha = match (e.alpha, alpha) {
        (AlphaParam::Required, None) => return Err(Error::MissingParam(name.to_string())),
        (AlphaParam::None, Some(a)) => {
            return Err(Error::ForbiddenParam {
                name: name.to_string(),
                reason: format!("`{name}` takes no alpha (got {})", format_rational(a)),
            })
        }
        (_, a) => a.cloned(),
    };
    let n = dim;
    let one = Rational::one;
    Ok(match name {
        "abelian" => T::zero(n),
        "p_minus" => {
            let mut t = Table::new(n);
            for i in 2..=n {
                t.one(1, i, i).put(i, 1, i, -one());
            }
            t.done()
        }
        "n3_minus" => Table::lie(n).one(1, 2, 3).done(),
        "lambda2" => Table::new(n).one(1, 1, 2).done(),
        "nu" => {
            let a = alpha.expect("checked above");
            let mut t = Table::new(n);
            t.one(1, 1, 1);
            for i in 2..=n {
                t.put(1, i, i, a.clone()).put(i, 1, i, one() - &a);
            }
            t.done()
        }
        "n5_1" => Table::lie(n).one(1, 2, 5).one(3, 4, 5).done(),
        "n5_2" => Table::lie(n).one(1, 2, 4).one(1, 3, 5).done(),
        "r2" => Table::lie(n).one(1, 2, 2).done(),
        "g1" => {
            let a = alpha.expect("checked above");
            if a.is_zero() || a.is_one() {
                return Err(Error::ForbiddenParam {
                    name: name.to_string(),
                    reason: "alpha must differ from 0 and 1".into(),
                });
            }
            let mut t = Table::lie(n);
            t.put(1, 2, 2, a);
            for i in 3..=n {
                t.one(1, i, i);
            }
            t.done()
        }
        "g2" => {
            let mut t = Table::lie(n);
            t.one(1, 2, 2).one(1, 2, 3);
            for i in 3..=n {
                t.one(1, i, i);
            }
            t.done()
        }
        "L4" => {
            let a = alpha.expect("checked above");
            Table::new(n)
                .one(1, 1, 3)
                .one(1, 2, 3)
                .put(2, 2, 3, a)
                .done()
        }
        "L4_thm3" => {
            let a = alpha.expect("checked above");
            Table::new(n)
                .one(1, 1, 3)
                .one(2, 1, 3)
                .put(2, 2, 3, a)
                .done()
        }
        "L5" => Table::new(n).one(1, 1, 3).one(1, 2, 3).one(2, 1, 3).done(),
        "r" => {
            let mut t = Table::new(n);
            for i in 2..=n {
                t.one(i, 1, i);
            }
            t.done()
        }
        "ell" => {
            let mut t = Table::new(n);
            for i in 2..=n {
                t.one(1, i, i);
            }
            t.done()
        }
        _ => unreachable!("every entry has a constructor"),
    })
}

/// Entries whose asserted identity implies the right Leibniz identity.
pub fn right_leibniz_entries() -> impl Iterator<Item = &'static CatalogEntry> {
    ENTRIES.iter().filter(|e| {
        matches!(
            e.asserted,
            Some(IdentityKind::LeibnizRight) | Some(IdentityKind::Lie)
        )
    })
}

/// A default parameter for families that need one, chosen generic.
pub fn sample_alpha(name: &str) -> Option<Rational> {
    match entry(name).ok()?.alpha {
        AlphaParam::Required => Some(Rational::from_integer(2.into())),
        AlphaParam::None => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify3::{classify_core, TwoGenClass};
    use crate::exact::rat;
    use crate::invariants::fingerprint;

    #[test]
    fn make_examples() {
        let nu = make("nu", 3, Some(&rat(1, 2))).unwrap();
        assert_eq!(nu.get(0, 0, 0), rat(1, 1));
        assert_eq!(nu.get(0, 1, 1), rat(1, 2));
        assert_eq!(nu.get(1, 0, 1), rat(1, 2));
        assert_eq!(nu.get(2, 0, 2), rat(1, 2));
        assert!(make("abelian", 4, None).unwrap().is_abelian());
        let l4 = make("L4", 5, Some(&rat(0, 1))).unwrap();
        let expected =
            T::from_entries(5, [((0, 0, 2), rat(1, 1)), ((0, 1, 2), rat(1, 1))]).unwrap();
        assert_eq!(l4, expected);
    }

    #[test]
    fn errors() {
        assert_eq!(make("foo", 3, None), Err(Error::UnknownName("foo".into())));
        assert!(matches!(
            make("n5_1", 4, None),
            Err(Error::DimTooSmall { min: 5, .. })
        ));
        assert_eq!(make("L4", 3, None), Err(Error::MissingParam("L4".into())));
        assert!(matches!(
            make("L5", 3, Some(&rat(1, 1))),
            Err(Error::ForbiddenParam { .. })
        ));
        assert!(matches!(
            make("g1", 3, Some(&rat(1, 1))),
            Err(Error::ForbiddenParam { .. })
        ));
        assert!(matches!(
            make("g1", 3, Some(&rat(0, 1))),
            Err(Error::ForbiddenParam { .. })
        ));
    }

    #[test]
    fn every_entry_passes_its_asserted_identity() {
        for e in ENTRIES {
            for n in e.min_dim.max(3)..=6 {
                let t = make(e.name, n, sample_alpha(e.name).as_ref()).unwrap();
                if let Some(kind) = e.asserted {
                    assert!(t.satisfies(kind), "{} at n = {n}", e.name);
                }
            }
        }
    }

    #[test]
    fn nu_satisfies_neither_leibniz_identity() {
        for a in [rat(0, 1), rat(1, 3), rat(1, 2), rat(1, 1)] {
            let nu = make("nu", 4, Some(&a)).unwrap();
            assert!(!nu.satisfies(IdentityKind::LeibnizRight));
            assert!(!nu.satisfies(IdentityKind::LeibnizLeft));
        }
    }

    #[test]
    fn l4_presentations_share_a_class() {
        for a in [rat(0, 1), rat(1, 1), rat(1, 4), rat(2, 1)] {
            let x = classify_core(&make("L4", 4, Some(&a)).unwrap());
            let y = classify_core(&make("L4_thm3", 4, Some(&a)).unwrap());
            assert_eq!(x, Some(TwoGenClass::L4(a)));
            assert_eq!(x, y);
        }
        assert_eq!(
            classify_core(&make("L5", 5, None).unwrap()),
            Some(TwoGenClass::L5)
        );
    }

    #[test]
    fn level_one_fingerprints_are_pairwise_distinct_at_n4() {
        let mut list = vec![
            ("p_minus", make("p_minus", 4, None).unwrap()),
            ("n3_minus", make("n3_minus", 4, None).unwrap()),
            ("lambda2", make("lambda2", 4, None).unwrap()),
        ];
        for a in [rat(0, 1), rat(1, 3), rat(1, 1)] {
            list.push(("nu", make("nu", 4, Some(&a)).unwrap()));
        }
        let fps: Vec<_> = list.iter().map(|(_, t)| fingerprint(t)).collect();
        let mut collisions = Vec::new();
        for i in 0..fps.len() {
            for j in i + 1..fps.len() {
                if fps[i] == fps[j] {
                    collisions.push((i, j));
                }
            }
        }
        assert!(
            collisions.is_empty(),
            "fingerprint collisions: {collisions:?}"
        );
    }

    #[test]
    fn level_two_leibniz_fingerprints_separate() {
        let n = 5;
        let mut fps = vec![
            fingerprint(&make("L5", n, None).unwrap()),
            fingerprint(&make("r", n, None).unwrap()),
        ];
        for a in [rat(0, 1), rat(1, 1), rat(1, 4)] {
            fps.push(fingerprint(&make("L4", n, Some(&a)).unwrap()));
        }
        let key = |f: &crate::invariants::Fingerprint| (f.is_nilpotent, f.dim_rann, f.dim_der);
        // L4(1) and L4(1/4) agree on these three invariants; only the pairs
        // the separation argument uses must differ
        assert_ne!(key(&fps[0]).0, key(&fps[1]).0);
        for f in &fps[2..] {
            assert_ne!(key(f), key(&fps[1]));
        }
        assert_ne!(key(&fps[2]), key(&fps[0]));
    }
}
