//! The JSON algebra file: name, dimension, labels, bracket table, named
//! gradings and optional reference fixtures.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::Rat;
use crate::lie_core::{default_labels, LieAlgebra};

/// An index written either as a JSON number or a numeric string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Index {
    Num(i64),
    Str(String),
}

impl Index {
    /// Zero-based index checked against `1..=dim`.
    pub fn resolve(&self, dim: usize) -> Result<usize> {
        let (raw, text) = match self {
            Index::Num(v) => (Some(*v), v.to_string()),
            Index::Str(s) => (s.trim().parse::<i64>().ok(), s.clone()),
        };
        match raw {
            Some(v) if v >= 1 && (v as usize) <= dim => Ok(v as usize - 1),
            _ => Err(Error::IndexOutOfRange { index: text, dim }),
        }
    }
}

/// A rational written as `"p/q"`, `"p"` or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatText {
    Int(i64),
    Str(String),
}

impl RatText {
    pub fn value(&self) -> Result<Rat> {
        match self {
            RatText::Int(v) => Ok(Rat::from_int(*v)),
            RatText::Str(s) => s.trim().parse().map_err(|_| Error::BadRational(s.clone())),
        }
    }
}

impl From<&Rat> for RatText {
    fn from(r: &Rat) -> RatText {
        RatText::Str(r.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: Index,
    pub right: Index,
    pub result: BTreeMap<String, RatText>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DcRowFixture {
    pub form: String,
    pub coeff: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DcFixture {
    pub degree: usize,
    pub rows: Vec<DcRowFixture>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormWeightFixture {
    pub form: String,
    pub weight: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LqpFixture {
    pub homogeneous_dimension: String,
    #[serde(default)]
    pub covector_weights: Vec<String>,
    /// Degree → threshold.
    #[serde(default)]
    pub thresholds: BTreeMap<String, String>,
    /// Degree → weights of the listed Rumin forms.
    #[serde(default)]
    pub form_weights: BTreeMap<String, Vec<FormWeightFixture>>,
}

/// Reference values stored with catalog entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixtures {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
    /// Spanning forms of `F_1, …, F_s`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub filtration: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub asymptotic_weights: Vec<String>,
    /// Covector → its `d_g` image.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub dg: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub e0_dims: Vec<usize>,
    /// Degree → ordered basis of `E_0`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub e0_bases: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dc: Vec<DcFixture>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lqp: BTreeMap<String, LqpFixture>,
}

impl Fixtures {
    pub fn is_empty(&self) -> bool {
        *self == Fixtures::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub gradings: BTreeMap<String, Vec<RatText>>,
    #[serde(default, skip_serializing_if = "Fixtures::is_empty")]
    pub fixtures: Fixtures,
}

/// Parses and checks a document; every index and rational is resolved.
pub fn parse_algebra_text(text: &str) -> Result<AlgebraFile> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.to_algebra()?;
    file.gradings()?;
    Ok(file)
}

pub fn parse_algebra_file(path: &Path) -> Result<AlgebraFile> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_algebra_text(&text)
}

impl AlgebraFile {
    pub fn labels(&self) -> Vec<String> {
        if self.basis.is_empty() {
            default_labels(self.dim)
        } else {
            self.basis.clone()
        }
    }

    /// Builds the structure-constant table; Jacobi is not checked here.
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        let n = self.dim;
        if !self.basis.is_empty() && self.basis.len() != n {
            return Err(Error::InvalidInput(format!(
                "{} basis labels for dimension {n}",
                self.basis.len()
            )));
        }
        let mut table: BTreeMap<(usize, usize), Vec<(usize, Rat)>> = BTreeMap::new();
        for b in &self.brackets {
            let i = b.left.resolve(n)?;
            let j = b.right.resolve(n)?;
            if i == j {
                return Err(Error::InvalidInput(format!("bracket of X{} with itself", i + 1)));
            }
            let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
            if table.contains_key(&(lo, hi)) {
                return Err(Error::DuplicateBracket(lo, hi));
            }
            let mut terms = Vec::new();
            for (k, c) in &b.result {
                let k = Index::Str(k.clone()).resolve(n)?;
                terms.push((k, &c.value()? * &Rat::from_int(sign)));
            }
            table.insert((lo, hi), terms);
        }
        LieAlgebra::from_brackets(&self.name, self.labels(), &table)
    }

    /// Named gradings with parsed weights (validity against the bracket is
    /// checked by the caller).
    pub fn gradings(&self) -> Result<Vec<(String, Vec<Rat>)>> {
        self.gradings
            .iter()
            .map(|(name, w)| Ok((name.clone(), w.iter().map(RatText::value).collect::<Result<_>>()?)))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N632: &str = r#"{
        "name": "n632", "dim": 6,
        "brackets": [
            {"left": 1, "right": 2, "result": {"3": "1"}},
            {"left": "1", "right": "3", "result": {"4": 1}},
            {"left": 5, "right": 6, "result": {"4": "1"}}
        ],
        "gradings": {"V1": ["1","2","3","4","2","2"]}
    }"#;

    #[test]
    fn parses_n632() {
        let f = parse_algebra_text(N632).unwrap();
        assert_eq!(f.dim, 6);
        assert_eq!(f.brackets.len(), 3);
        let g = f.to_algebra().unwrap();
        assert_eq!(g.c(4, 5, 3), Rat::one());
        assert_eq!(f.gradings().unwrap()[0].1[3], Rat::from_int(4));
    }

    #[test]
    fn rejects_bad_input() {
        let bad_index = N632.replace(r#""right": 6"#, r#""right": 7"#);
        assert!(matches!(parse_algebra_text(&bad_index), Err(Error::IndexOutOfRange { .. })));
        let bad_rat = N632.replace(r#"{"3": "1"}"#, r#"{"3": "1/0"}"#);
        assert!(matches!(parse_algebra_text(&bad_rat), Err(Error::BadRational(_))));
        let dup = N632.replace(r#""left": 5, "right": 6"#, r#""left": 2, "right": 1"#);
        assert!(matches!(parse_algebra_text(&dup), Err(Error::DuplicateBracket(0, 1))));
        match parse_algebra_text("{\n  \"name\": \"x\",\n  \"dim\": }") {
            Err(Error::ParseError { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reversed_pair_flips_sign() {
        let t = r#"{"name": "h", "dim": 3, "brackets": [{"left": 2, "right": 1, "result": {"3": "1"}}]}"#;
        let g = parse_algebra_text(t).unwrap().to_algebra().unwrap();
        assert_eq!(g.c(0, 1, 2), Rat::from_int(-1));
    }

    #[test]
    fn round_trip() {
        let f = parse_algebra_text(N632).unwrap();
        assert_eq!(parse_algebra_text(&f.to_json()).unwrap(), f);
    }
}
