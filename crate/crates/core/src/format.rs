//! JSON file formats for algebras and degeneration families.
//!
//! Indices in files are one-based and scalars use the shared text syntax
//! (`p`, `p/q`, or a rational function of `t`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::StructureTensor;
use crate::degeneration::{DegenerationFamily, Given};
use crate::error::{Error, Result};
use crate::exact::{format_rational, Field, FieldTag, RatFunc, Rational};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Closure {
    #[default]
    None,
    /// Each listed `(i, j, k, c)` also defines `(j, i, k, -c)`.
    Antisymmetric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductRecord {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub field: FieldTag,
    #[serde(default)]
    pub closure: Closure,
    pub products: Vec<ProductRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub dim: usize,
    pub given: Given,
    pub matrix: Vec<Vec<String>>,
}

/// A tensor over either supported field.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyTensor {
    Q(StructureTensor<Rational>),
    Qt(StructureTensor<RatFunc>),
}

impl AnyTensor {
    pub fn field(&self) -> FieldTag {
        match self {
            AnyTensor::Q(_) => FieldTag::Q,
            AnyTensor::Qt(_) => FieldTag::Qt,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyTensor::Q(t) => t.dim(),
            AnyTensor::Qt(t) => t.dim(),
        }
    }

    pub fn into_q(self) -> Result<StructureTensor<Rational>> {
        match self {
            AnyTensor::Q(t) => Ok(t),
            AnyTensor::Qt(_) => Err(Error::FieldMismatch(
                "expected an algebra over Q, got one over Qt".into(),
            )),
        }
    }

    pub fn direct_sum(&self, other: &AnyTensor) -> Result<AnyTensor> {
        match (self, other) {
            (AnyTensor::Q(a), AnyTensor::Q(b)) => Ok(AnyTensor::Q(a.direct_sum(b))),
            (AnyTensor::Qt(a), AnyTensor::Qt(b)) => Ok(AnyTensor::Qt(a.direct_sum(b))),
            (a, b) => Err(Error::FieldMismatch(format!(
                "cannot add a {} algebra to a {} algebra",
                a.field(),
                b.field()
            ))),
        }
    }
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn build<F: Field>(file: &AlgebraFile) -> Result<StructureTensor<F>> {
    let n = file.dim;
    let mut explicit: BTreeMap<(usize, usize, usize), F> = BTreeMap::new();
    for p in &file.products {
        for idx in [p.i, p.j, p.k] {
            if idx == 0 || idx > n {
                return Err(Error::Parse(format!("index {idx} outside 1..={n}")));
            }
        }
        let key = (p.i - 1, p.j - 1, p.k - 1);
        if explicit.contains_key(&key) {
            return Err(Error::Parse(format!(
                "product ({}, {}, {}) listed twice",
                p.i, p.j, p.k
            )));
        }
        explicit.insert(key, F::parse_scalar(&p.c)?);
    }
    let mut t = StructureTensor::zero(n);
    for (&(i, j, k), c) in &explicit {
        t.set(i, j, k, c.clone());
    }
    if file.closure == Closure::Antisymmetric {
        for (&(i, j, k), c) in &explicit {
            let mirrored = -c.clone();
            match explicit.get(&(j, i, k)) {
                Some(v) if *v != mirrored => {
                    return Err(Error::Parse(format!(
                        "antisymmetric closure of ({}, {}, {}) conflicts with an explicit entry",
                        i + 1,
                        j + 1,
                        k + 1
                    )))
                }
                Some(_) => {}
                None => t.set(j, i, k, mirrored),
            }
        }
    }
    Ok(t)
}

/// Parses an algebra file into a tensor over the field it declares.
pub fn parse_algebra(json: &str) -> Result<(String, AnyTensor)> {
    let file: AlgebraFile = serde_json::from_str(json).map_err(parse_err)?;
    if file.dim == 0 {
        return Err(Error::Parse("dimension must be at least 1".into()));
    }
    let t = match file.field {
        FieldTag::Q => AnyTensor::Q(build(&file)?),
        FieldTag::Qt => AnyTensor::Qt(build(&file)?),
    };
    Ok((file.name, t))
}

pub fn parse_algebra_q(json: &str) -> Result<(String, StructureTensor<Rational>)> {
    let (name, t) = parse_algebra(json)?;
    Ok((name, t.into_q()?))
}

fn format_scalar<F: Field>(c: &F) -> String {
    c.to_string()
}

/// The algebra file of a tensor, listing every nonzero product.
pub fn algebra_file<F: Field>(name: &str, t: &StructureTensor<F>) -> AlgebraFile {
    AlgebraFile {
        name: name.to_string(),
        dim: t.dim(),
        field: F::TAG,
        closure: Closure::None,
        products: t
            .entries()
            .map(|(&(i, j, k), c)| ProductRecord {
                i: i + 1,
                j: j + 1,
                k: k + 1,
                c: format_scalar(c),
            })
            .collect(),
    }
}

pub fn algebra_to_json<F: Field>(name: &str, t: &StructureTensor<F>) -> String {
    serde_json::to_string_pretty(&algebra_file(name, t)).expect("plain data serializes")
}

pub fn parse_family(json: &str) -> Result<DegenerationFamily> {
    let file: FamilyFile = serde_json::from_str(json).map_err(parse_err)?;
    family_from_file(&file)
}

pub fn family_from_file(file: &FamilyFile) -> Result<DegenerationFamily> {
    let n = file.dim;
    if n == 0 {
        return Err(Error::Parse("dimension must be at least 1".into()));
    }
    if file.matrix.len() != n || file.matrix.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("family matrix must be {n}x{n}")));
    }
    let rows = file
        .matrix
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| RatFunc::parse(s))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    DegenerationFamily::new(file.given, Matrix::from_rows(rows)?)
}

pub fn family_to_json(fam: &DegenerationFamily) -> String {
    let m = fam.matrix();
    let file = FamilyFile {
        dim: fam.dim(),
        given: fam.given(),
        matrix: m
            .to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

/// Parses `"a,b;c,d"` into a 2×2 rational matrix.
pub fn parse_matrix2(s: &str) -> Result<[[Rational; 2]; 2]> {
    let rows: Vec<&str> = s.split(';').collect();
    let bad = || Error::Parse(format!("expected \"a,b;c,d\", got `{s}`"));
    if rows.len() != 2 {
        return Err(bad());
    }
    let mut m: [[Rational; 2]; 2] = Default::default();
    for (r, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 2 {
            return Err(bad());
        }
        for (c, cell) in cells.iter().enumerate() {
            m[r][c] = crate::exact::parse_rational(cell)?;
        }
    }
    Ok(m)
}

pub fn rational_string(q: &Rational) -> String {
    format_rational(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn round_trip() {
        let t = crate::catalog::make("L4", 4, Some(&rat(-1, 3))).unwrap();
        let json = algebra_to_json("L4", &t);
        let (name, back) = parse_algebra_q(&json).unwrap();
        assert_eq!(name, "L4");
        assert_eq!(back, t);
    }

    #[test]
    fn antisymmetric_closure() {
        let json = r#"{"name":"n52","dim":5,"field":"Q","closure":"antisymmetric",
            "products":[{"i":1,"j":2,"k":4,"c":"1"},{"i":1,"j":3,"k":5,"c":"1"}]}"#;
        let (_, t) = parse_algebra_q(json).unwrap();
        assert_eq!(t, crate::catalog::make("n5_2", 5, None).unwrap());

        let consistent = r#"{"name":"x","dim":3,"field":"Q","closure":"antisymmetric",
            "products":[{"i":1,"j":2,"k":3,"c":"1"},{"i":2,"j":1,"k":3,"c":"-1"}]}"#;
        assert!(parse_algebra_q(consistent).is_ok());
        let conflict = r#"{"name":"x","dim":3,"field":"Q","closure":"antisymmetric",
            "products":[{"i":1,"j":2,"k":3,"c":"1"},{"i":2,"j":1,"k":3,"c":"1"}]}"#;
        assert!(matches!(parse_algebra_q(conflict), Err(Error::Parse(_))));
        let diagonal = r#"{"name":"x","dim":2,"field":"Q","closure":"antisymmetric",
            "products":[{"i":1,"j":1,"k":2,"c":"1"}]}"#;
        assert!(matches!(parse_algebra_q(diagonal), Err(Error::Parse(_))));
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            r#"{"name":"x","dim":0,"field":"Q","products":[]}"#,
            r#"{"name":"x","dim":2,"field":"Q","products":[{"i":3,"j":1,"k":1,"c":"1"}]}"#,
            r#"{"name":"x","dim":2,"field":"Q","products":[{"i":1,"j":1,"k":1,"c":"1/0"}]}"#,
            r#"{"name":"x","dim":2,"field":"R","products":[]}"#,
            r#"{"name":"x","dim":2,"field":"Q","products":[{"i":1,"j":1,"k":1,"c":"1"},{"i":1,"j":1,"k":1,"c":"2"}]}"#,
            "not json",
        ] {
            assert!(parse_algebra(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn field_tags() {
        let json =
            r#"{"name":"x","dim":2,"field":"Qt","products":[{"i":1,"j":1,"k":2,"c":"(t)/(t+1)"}]}"#;
        let (_, t) = parse_algebra(json).unwrap();
        assert_eq!(t.field(), FieldTag::Qt);
        let q = AnyTensor::Q(StructureTensor::zero(1));
        assert!(matches!(q.direct_sum(&t), Err(Error::FieldMismatch(_))));
        assert!(t.clone().into_q().is_err());
        assert_eq!(t.direct_sum(&t).unwrap().dim(), 4);
    }

    #[test]
    fn family_round_trip() {
        let json = r#"{"dim":2,"given":"g_inverse","matrix":[["t","0"],["0","(1)/(t^2)"]]}"#;
        let fam = parse_family(json).unwrap();
        assert_eq!(fam.given(), Given::Inverse);
        assert_eq!(fam.direct()[(1, 1)], RatFunc::parse("t^2").unwrap());
        let again = parse_family(&family_to_json(&fam)).unwrap();
        assert_eq!(again, fam);
        let singular = r#"{"dim":2,"given":"g","matrix":[["1","1"],["1","1"]]}"#;
        assert_eq!(parse_family(singular), Err(Error::Singular));
        let ragged = r#"{"dim":2,"given":"g","matrix":[["1","1"]]}"#;
        assert!(matches!(parse_family(ragged), Err(Error::Parse(_))));
    }

    #[test]
    fn matrix_argument() {
        let m = parse_matrix2("1,1;0,1/4").unwrap();
        assert_eq!(m[1][1], rat(1, 4));
        assert!(parse_matrix2("1,2,3;4,5").is_err());
        assert!(parse_matrix2("1,x;0,1").is_err());
    }
}
