//! JSON file formats for algebras and embeddings.
//!
//! Rationals are always written as strings (`"3"`, `"-1/2"`). Bracket keys
//! are `"i,j"` with zero-based `i < j`; each maps output index `"k"` to the
//! coefficient of `e_k` in `[e_i, e_j]`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{format_rational, parse_rational, Matrix, Rational};
use crate::liealg::{LieAlgebra, StructureConstants};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Nilpotent,
    CharacteristicallyNilpotent,
    CompletelySolvable,
}

impl Claim {
    pub fn as_str(self) -> &'static str {
        match self {
            Claim::Nilpotent => "nilpotent",
            Claim::CharacteristicallyNilpotent => "characteristically_nilpotent",
            Claim::CompletelySolvable => "completely_solvable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub claims: Vec<Claim>,
}

fn parse_index(s: &str, dim: usize, what: &str) -> Result<usize> {
    let i: usize = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid {what} index `{s}`")))?;
    if i >= dim {
        return Err(Error::Parse(format!("{what} index {i} out of range for dimension {dim}")));
    }
    Ok(i)
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("algebra files serialize");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// Parses the bracket table without checking the Jacobi identity.
    pub fn structure_constants(&self) -> Result<StructureConstants> {
        let mut sc = StructureConstants::new(self.name.clone(), self.dim);
        if let Some(basis) = &self.basis {
            sc = sc.with_labels(basis.clone()).map_err(|_| {
                Error::Parse(format!("basis has {} labels, expected {}", basis.len(), self.dim))
            })?;
        }
        for (key, terms) in &self.brackets {
            let (i, j) = key
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bracket key `{key}` is not of the form \"i,j\"")))?;
            let i = parse_index(i, self.dim, "bracket")?;
            let j = parse_index(j, self.dim, "bracket")?;
            if i >= j {
                return Err(Error::Parse(format!("bracket key `{key}` must satisfy i < j")));
            }
            for (k, value) in terms {
                let k = parse_index(k, self.dim, "output")?;
                sc.add(i, j, k, parse_rational(value)?)?;
            }
        }
        Ok(sc)
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        LieAlgebra::new(self.structure_constants()?)
    }

    pub fn from_algebra(l: &LieAlgebra, claims: Vec<Claim>) -> Self {
        let brackets = l
            .structure_constants()
            .entries()
            .iter()
            .map(|(&(i, j), terms)| {
                let t = terms.iter().map(|(k, c)| (k.to_string(), format_rational(c))).collect();
                (format!("{i},{j}"), t)
            })
            .collect();
        AlgebraFile {
            name: l.name().to_string(),
            dim: l.dim(),
            basis: l.labels().map(<[String]>::to_vec),
            brackets,
            claims,
        }
    }
}

/// An algebra given inline or by catalog key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Key(String),
    Inline(AlgebraFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingFile {
    pub domain: AlgebraRef,
    pub codomain: AlgebraRef,
    /// `dim(codomain)` rows by `dim(domain)` columns; column `j` is the image
    /// of the `j`-th domain basis vector.
    pub matrix: Vec<Vec<String>>,
}

impl EmbeddingFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("embedding files serialize");
        s.push('\n');
        s
    }

    pub fn parse_matrix(&self, rows: usize, cols: usize) -> Result<Matrix> {
        if self.matrix.len() != rows {
            return Err(Error::Parse(format!(
                "matrix has {} rows, expected dim(codomain) = {rows}",
                self.matrix.len()
            )));
        }
        let mut parsed: Vec<Vec<Rational>> = Vec::with_capacity(rows);
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Parse(format!(
                    "matrix row {i} has {} entries, expected dim(domain) = {cols}",
                    row.len()
                )));
            }
            parsed.push(row.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?);
        }
        if rows == 0 {
            return Ok(Matrix::zeros(0, cols));
        }
        Matrix::from_rows(parsed)
    }

    pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
        (0..m.rows())
            .map(|i| m.row(i).iter().map(format_rational).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEISENBERG: &str = r#"{
        "name": "heisenberg", "dim": 3, "basis": ["x", "y", "z"],
        "brackets": { "0,1": { "2": "1" } }
    }"#;

    #[test]
    fn parses_heisenberg() {
        let f = AlgebraFile::from_json(HEISENBERG).unwrap();
        let l = f.to_algebra().unwrap();
        assert_eq!(l.dim(), 3);
        assert_eq!(l.label(2), "z");
        assert_eq!(AlgebraFile::from_algebra(&l, vec![]), f);
    }

    #[test]
    fn rejects_malformed_input() {
        let bad_index = HEISENBERG.replace("\"2\": \"1\"", "\"3\": \"1\"");
        assert!(matches!(AlgebraFile::from_json(&bad_index).unwrap().to_algebra(), Err(Error::Parse(_))));
        let bad_order = HEISENBERG.replace("\"0,1\"", "\"1,0\"");
        assert!(AlgebraFile::from_json(&bad_order).unwrap().to_algebra().is_err());
        let bad_rational = HEISENBERG.replace("\"2\": \"1\"", "\"2\": \"1/0\"");
        assert!(AlgebraFile::from_json(&bad_rational).unwrap().to_algebra().is_err());
        assert!(AlgebraFile::from_json("{\"name\": 3}").is_err());
    }

    #[test]
    fn rejects_jacobi_failure() {
        let corrupted = HEISENBERG.replace("\"0,1\": { \"2\": \"1\" }", "\"0,1\": { \"2\": \"1\" }, \"1,2\": { \"1\": \"1\" }");
        assert!(matches!(AlgebraFile::from_json(&corrupted).unwrap().to_algebra(), Err(Error::Jacobi(_))));
    }

    #[test]
    fn embedding_matrix_shape_is_checked() {
        let e = EmbeddingFile::from_json(
            r#"{ "domain": "abelian(1)", "codomain": "heisenberg", "matrix": [["0"], ["0"], ["1"]] }"#,
        )
        .unwrap();
        assert!(matches!(e.domain, AlgebraRef::Key(_)));
        assert_eq!(e.parse_matrix(3, 1).unwrap().column(0)[2], crate::exactla::rat(1));
        assert!(e.parse_matrix(2, 1).is_err());
        assert!(e.parse_matrix(3, 2).is_err());
    }
}
