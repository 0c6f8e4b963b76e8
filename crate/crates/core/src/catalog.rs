//! Generators for the algebra families used throughout the toolkit, and a
//! loader that re-verifies every property a data file claims.
//!
//! Catalog keys are small expressions: `heisenberg`, `ladder(4)`,
//! `abelian(3)`, `solvable-line`, `euclidean2`, `dixmier-lister`,
//! `der-semidirect(<key>)` and `sum(<key>, <key>)`.

use std::path::Path;

use crate::derivations::{derivation_algebra, is_characteristically_nilpotent, semidirect};
use crate::error::{Error, Result};
use crate::format::{AlgebraFile, Claim};
use crate::liealg::{completely_solvable_flag, is_nilpotent, FlagStatus, LieAlgebra, StructureConstants};

/// Structure constants of the 8-dimensional characteristically nilpotent
/// algebra of Dixmier and Lister. Trusted only after [`verify_claims`].
pub const DIXMIER_LISTER_JSON: &str = include_str!("../data/dixmier_lister8.json");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Generated,
    DataFile(String),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: String,
    pub params: Vec<i64>,
    pub algebra: LieAlgebra,
    pub provenance: Provenance,
    /// Claims that were declared and re-verified.
    pub claims: Vec<Claim>,
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(format!("{what} requires n >= 1")));
    }
    Ok(())
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn make_abelian(n: usize) -> Result<LieAlgebra> {
    positive(n, "abelian")?;
    LieAlgebra::new(StructureConstants::new(format!("abelian({n})"), n))
}

/// Basis `(x, y, z)` with `[x, y] = z`.
pub fn make_heisenberg() -> LieAlgebra {
    let sc = StructureConstants::new("heisenberg", 3)
        .with_labels(labels(&["x", "y", "z"]))
        .and_then(|sc| sc.with(0, 1, 2, 1))
        .expect("static constants");
    LieAlgebra::new(sc).expect("Heisenberg algebra satisfies Jacobi")
}

/// The ladder algebra `R sigma ⋉ R^n` where `sigma` shifts coordinates:
/// basis `(sigma, e_0, ..., e_{n-1})`, `[sigma, e_i] = e_{i+1}` for
/// `i < n - 1`, all other brackets zero.
pub fn make_ladder(n: usize) -> Result<LieAlgebra> {
    positive(n, "ladder")?;
    let mut names = vec!["s".to_string()];
    names.extend((0..n).map(|i| format!("e{i}")));
    let mut sc = StructureConstants::new(format!("ladder({n})"), n + 1).with_labels(names)?;
    for i in 0..n.saturating_sub(1) {
        sc.add(0, i + 1, i + 2, crate::exactla::rat(1))?;
    }
    LieAlgebra::new(sc)
}

/// `[t, x] = x`
pub fn make_solvable_line() -> LieAlgebra {
    let sc = StructureConstants::new("solvable-line", 2)
        .with_labels(labels(&["t", "x"]))
        .and_then(|sc| sc.with(0, 1, 1, 1))
        .expect("static constants");
    LieAlgebra::new(sc).expect("2-dimensional algebra satisfies Jacobi")
}

/// Euclidean algebra `e(2)`: `[r, x] = y`, `[r, y] = -x`.
pub fn make_euclidean2() -> LieAlgebra {
    let sc = StructureConstants::new("euclidean2", 3)
        .with_labels(labels(&["r", "x", "y"]))
        .and_then(|sc| sc.with(0, 1, 2, 1))
        .and_then(|sc| sc.with(0, 2, 1, -1))
        .expect("static constants");
    LieAlgebra::new(sc).expect("e(2) satisfies Jacobi")
}

/// `Der(L) ⋉ L`, derivations first in the basis.
pub fn make_der_semidirect(l: &LieAlgebra) -> Result<LieAlgebra> {
    let g = semidirect(&derivation_algebra(l), l)?;
    Ok(g.renamed(format!("der-semidirect({})", l.name())))
}

/// Checks each claim with the corresponding toolkit procedure.
pub fn verify_claims(l: &LieAlgebra, claims: &[Claim]) -> Result<()> {
    for &claim in claims {
        let fail = |detail: String| Error::ClaimFailed {
            claim: claim.as_str().to_string(),
            detail,
        };
        match claim {
            Claim::Nilpotent => {
                if !is_nilpotent(l) {
                    return Err(fail("lower central series does not reach zero".into()));
                }
            }
            Claim::CompletelySolvable => {
                let v = completely_solvable_flag(l);
                if v.status != FlagStatus::Yes {
                    return Err(fail(format!("flag search returned {:?}", v.status)));
                }
            }
            Claim::CharacteristicallyNilpotent => {
                let r = is_characteristically_nilpotent(l).map_err(|e| fail(e.to_string()))?;
                if !r.agree {
                    return Err(Error::Internal(format!("characteristic nilpotency checks disagree: {r:?}")));
                }
                if !r.via_der_nilpotent {
                    return Err(fail(format!(
                        "Der has dimension {} and is not nilpotent (derivation algebra {}, all-nilpotent {}, semidirect {})",
                        r.der_dim, r.via_der_nilpotent, r.via_all_elements_nilpotent, r.via_semidirect_nilpotent
                    )));
                }
            }
        }
    }
    Ok(())
}

fn entry_from_file(file: AlgebraFile, provenance: Provenance) -> Result<CatalogEntry> {
    let algebra = file.to_algebra()?;
    verify_claims(&algebra, &file.claims)?;
    Ok(CatalogEntry {
        key: file.name.clone(),
        params: Vec::new(),
        algebra,
        provenance,
        claims: file.claims,
    })
}

/// Reads, Jacobi-validates and claim-verifies an algebra file.
pub fn load_entry(path: &Path) -> Result<CatalogEntry> {
    let file = AlgebraFile::read(path)?;
    entry_from_file(file, Provenance::DataFile(path.display().to_string()))
}

pub fn load_entry_str(text: &str, origin: &str) -> Result<CatalogEntry> {
    entry_from_file(AlgebraFile::from_json(text)?, Provenance::DataFile(origin.to_string()))
}

pub fn dixmier_lister() -> Result<CatalogEntry> {
    load_entry_str(DIXMIER_LISTER_JSON, "data/dixmier_lister8.json")
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum KeyExpr {
    Int(i64),
    Call(String, Vec<KeyExpr>),
}

struct KeyParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl KeyParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<KeyExpr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() {
            let c = self.s[self.pos];
            if c.is_ascii_alphanumeric() || c == b'-' || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let word = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        if word.is_empty() {
            return Err(Error::Parse(format!("expected catalog key at offset {start}")));
        }
        if let Ok(n) = word.parse::<i64>() {
            return Ok(KeyExpr::Int(n));
        }
        let mut args = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            loop {
                args.push(self.expr()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(Error::Parse(format!("expected `,` or `)` at offset {}", self.pos))),
                }
            }
        }
        Ok(KeyExpr::Call(word.to_string(), args))
    }
}

fn parse_key(key: &str) -> Result<KeyExpr> {
    let mut p = KeyParser { s: key.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(Error::Parse(format!("trailing input in catalog key `{key}`")));
    }
    Ok(e)
}

fn int_arg(name: &str, args: &[KeyExpr]) -> Result<usize> {
    match args {
        [KeyExpr::Int(n)] if *n >= 1 => Ok(*n as usize),
        _ => Err(Error::InvalidParameter(format!("`{name}` takes one positive integer"))),
    }
}

fn build(e: &KeyExpr) -> Result<(LieAlgebra, Provenance, Vec<i64>)> {
    let KeyExpr::Call(name, args) = e else {
        return Err(Error::Parse("an integer is not an algebra".into()));
    };
    let no_args = |l: LieAlgebra| {
        if args.is_empty() {
            Ok((l, Provenance::Generated, Vec::new()))
        } else {
            Err(Error::InvalidParameter(format!("`{name}` takes no parameters")))
        }
    };
    match name.as_str() {
        "abelian" => {
            let n = int_arg(name, args)?;
            Ok((make_abelian(n)?, Provenance::Generated, vec![n as i64]))
        }
        "ladder" => {
            let n = int_arg(name, args)?;
            Ok((make_ladder(n)?, Provenance::Generated, vec![n as i64]))
        }
        "heisenberg" => no_args(make_heisenberg()),
        "solvable-line" => no_args(make_solvable_line()),
        "euclidean2" => no_args(make_euclidean2()),
        "dixmier-lister" => {
            if !args.is_empty() {
                return Err(Error::InvalidParameter("`dixmier-lister` takes no parameters".into()));
            }
            let entry = dixmier_lister()?;
            Ok((entry.algebra, entry.provenance, Vec::new()))
        }
        "der-semidirect" => match args.as_slice() {
            [inner] => {
                let (l, _, params) = build(inner)?;
                Ok((make_der_semidirect(&l)?, Provenance::Generated, params))
            }
            _ => Err(Error::InvalidParameter("`der-semidirect` takes one algebra".into())),
        },
        "sum" => match args.as_slice() {
            [a, b] => {
                let (a, _, mut pa) = build(a)?;
                let (b, _, pb) = build(b)?;
                pa.extend(pb);
                let name = format!("sum({}, {})", a.name(), b.name());
                Ok((a.direct_sum(&b).renamed(name), Provenance::Generated, pa))
            }
            _ => Err(Error::InvalidParameter("`sum` takes two algebras".into())),
        },
        other => Err(Error::InvalidParameter(format!("unknown catalog key `{other}`"))),
    }
}

/// Builds the algebra named by a catalog key expression.
pub fn resolve(key: &str) -> Result<CatalogEntry> {
    let expr = parse_key(key)?;
    let (algebra, provenance, params) = build(&expr)?;
    Ok(CatalogEntry {
        key: key.trim().to_string(),
        params,
        algebra,
        provenance,
        claims: Vec::new(),
    })
}

/// `name` followed by positional integer parameters, as on the command line.
pub fn resolve_with_params(name: &str, params: &[i64]) -> Result<CatalogEntry> {
    if params.is_empty() {
        return resolve(name);
    }
    let args: Vec<String> = params.iter().map(i64::to_string).collect();
    resolve(&format!("{name}({})", args.join(",")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{center, lower_central_series};

    #[test]
    fn generated_algebras_validate() {
        for n in 1..=6 {
            assert!(make_abelian(n).unwrap().structure_constants().validate_jacobi().is_empty());
            assert!(make_ladder(n).unwrap().structure_constants().validate_jacobi().is_empty());
        }
        assert_eq!(make_heisenberg().dim(), 3);
        assert_eq!(center(&make_heisenberg()).dim(), 1);
        assert!(matches!(make_ladder(0), Err(Error::InvalidParameter(_))));
        assert!(make_abelian(0).is_err());
    }

    #[test]
    fn ladder_one_is_abelian() {
        let l = make_ladder(1).unwrap();
        assert_eq!(l.dim(), 2);
        assert!(l.is_abelian());
    }

    #[test]
    fn ladder_four_has_class_four() {
        let l = make_ladder(4).unwrap();
        assert_eq!(l.dim(), 5);
        assert_eq!(lower_central_series(&l).length(), Some(4));
    }

    #[test]
    fn der_semidirect_dimensions() {
        let h = make_heisenberg();
        let g = make_der_semidirect(&h).unwrap();
        assert_eq!(g.dim(), 9);
        assert!(!is_nilpotent(&g));
        for n in 1..=3 {
            assert_eq!(make_der_semidirect(&make_abelian(n).unwrap()).unwrap().dim(), n * n + n);
        }
        let line = make_der_semidirect(&make_abelian(1).unwrap()).unwrap();
        assert_eq!(line.structure_constants().entries(), make_solvable_line().structure_constants().entries());
    }

    #[test]
    fn dixmier_lister_loads_and_verifies() {
        let e = dixmier_lister().unwrap();
        assert_eq!(e.algebra.dim(), 8);
        assert!(e.claims.contains(&Claim::CharacteristicallyNilpotent));
    }

    #[test]
    fn false_claims_are_rejected() {
        let mut f = AlgebraFile::from_algebra(&make_heisenberg(), vec![Claim::CharacteristicallyNilpotent]);
        let err = entry_from_file(f.clone(), Provenance::Generated).unwrap_err();
        assert!(matches!(err, Error::ClaimFailed { .. }), "{err}");
        f.claims = vec![Claim::Nilpotent, Claim::CompletelySolvable];
        assert!(entry_from_file(f, Provenance::Generated).is_ok());
        let e2 = AlgebraFile::from_algebra(&make_euclidean2(), vec![Claim::CompletelySolvable]);
        assert!(matches!(entry_from_file(e2, Provenance::Generated), Err(Error::ClaimFailed { .. })));
    }

    #[test]
    fn key_expressions() {
        assert_eq!(resolve("ladder(4)").unwrap().algebra.dim(), 5);
        assert_eq!(resolve_with_params("abelian", &[3]).unwrap().algebra.dim(), 3);
        assert_eq!(resolve("sum(heisenberg, abelian(1))").unwrap().algebra.dim(), 4);
        assert_eq!(resolve("der-semidirect(abelian(2))").unwrap().algebra.dim(), 6);
        assert!(resolve("ladder").is_err());
        assert!(resolve("ladder(0)").is_err());
        assert!(resolve("nonsense").is_err());
        assert!(resolve("sum(heisenberg").is_err());
        assert!(resolve("heisenberg(2)").is_err());
    }
}
