//! Lie algebras given by structure constants over the rationals, and the
//! structural decision procedures built on them.

mod flag;
mod series;

pub use flag::{completely_solvable_flag, FlagStatus, FlagVerdict, FlagWitness};
pub use series::{derived_series, is_nilpotent, is_solvable, lower_central_series, SeriesKind, SeriesReport};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{self, check_len, is_zero_vec, unit_vec, zero_vec, Matrix, Rational, Subspace};

/// Raw, unvalidated bracket table: `[e_i, e_j] = sum_k c_ij^k e_k`, stored
/// only for `i < j`.
#[derive(Clone, PartialEq, Eq)]
pub struct StructureConstants {
    name: String,
    dim: usize,
    labels: Option<Vec<String>>,
    brackets: BTreeMap<(usize, usize), BTreeMap<usize, Rational>>,
}

/// A basis triple on which the Jacobi sum does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: Vec<Rational>,
}

impl StructureConstants {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        StructureConstants {
            name: name.into(),
            dim,
            labels: None,
            brackets: BTreeMap::new(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `value * e_k` to `[e_i, e_j]`. Pairs with `i > j` are stored
    /// negated; `i == j` is rejected.
    pub fn add(&mut self, i: usize, j: usize, k: usize, value: Rational) -> Result<()> {
        for idx in [i, j, k] {
            if idx >= self.dim {
                return Err(Error::InvalidParameter(format!(
                    "basis index {idx} out of range for dimension {}",
                    self.dim
                )));
            }
        }
        if i == j {
            return Err(Error::InvalidParameter(format!("bracket [e{i}, e{i}] is zero by antisymmetry")));
        }
        let (key, value) = if i < j { ((i, j), value) } else { ((j, i), -value) };
        let entry = self.brackets.entry(key).or_default();
        let slot = entry.entry(k).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            entry.remove(&k);
        }
        if entry.is_empty() {
            self.brackets.remove(&key);
        }
        Ok(())
    }

    pub fn with(mut self, i: usize, j: usize, k: usize, value: i64) -> Result<Self> {
        self.add(i, j, k, exactla::rat(value))?;
        Ok(self)
    }

    /// Nonzero brackets `(i, j) -> {k -> c_ij^k}` with `i < j`.
    pub fn entries(&self) -> &BTreeMap<(usize, usize), BTreeMap<usize, Rational>> {
        &self.brackets
    }

    fn table(&self) -> BracketTable {
        BracketTable::new(self)
    }

    /// All basis triples `i < j < k` whose Jacobi sum is nonzero.
    pub fn validate_jacobi(&self) -> Vec<JacobiViolation> {
        let table = self.table();
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut r = zero_vec(n);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        // [e_a, [e_b, e_c]]
                        for (m, coeff) in &table.entries[b * n + c] {
                            for (t, c2) in &table.entries[a * n + m] {
                                r[*t] += coeff * c2;
                            }
                        }
                    }
                    if !is_zero_vec(&r) {
                        out.push(JacobiViolation {
                            triple: (i, j, k),
                            residual: r,
                        });
                    }
                }
            }
        }
        out
    }
}

/// Dense index over both orders of each basis pair.
#[derive(Clone, PartialEq, Eq)]
struct BracketTable {
    dim: usize,
    entries: Vec<Vec<(usize, Rational)>>,
}

impl BracketTable {
    fn new(sc: &StructureConstants) -> Self {
        let n = sc.dim;
        let mut entries = vec![Vec::new(); n * n];
        for (&(i, j), terms) in &sc.brackets {
            entries[i * n + j] = terms.iter().map(|(&k, c)| (k, c.clone())).collect();
            entries[j * n + i] = terms.iter().map(|(&k, c)| (k, -c.clone())).collect();
        }
        BracketTable { dim: n, entries }
    }

    fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = zero_vec(n);
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let terms = &self.entries[i * n + j];
                if terms.is_empty() {
                    continue;
                }
                let s = ui * vj;
                for (k, c) in terms {
                    out[*k] += &s * c;
                }
            }
        }
        out
    }
}

/// A Lie algebra whose structure constants passed Jacobi validation.
///
/// The only way to obtain one is [`LieAlgebra::new`], so every function
/// taking a `&LieAlgebra` can rely on the Jacobi identity.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    constants: StructureConstants,
    table: BracketTable,
}

impl LieAlgebra {
    pub fn new(constants: StructureConstants) -> Result<Self> {
        let violations = constants.validate_jacobi();
        if !violations.is_empty() {
            return Err(Error::Jacobi(violations));
        }
        let table = constants.table();
        Ok(LieAlgebra { constants, table })
    }

    pub fn name(&self) -> &str {
        &self.constants.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.constants.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.constants.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.constants.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.constants.labels {
            Some(l) => l[i].clone(),
            None => format!("e{i}"),
        }
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        check_len(u, self.dim())?;
        check_len(v, self.dim())?;
        Ok(self.table.bracket(u, v))
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (k, c) in &self.table.entries[i * n + j] {
            out[*k] = c.clone();
        }
        out
    }

    pub(crate) fn bracket_unchecked(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        self.table.bracket(u, v)
    }

    /// Matrix of `ad x = [x, -]`.
    pub fn ad(&self, x: &[Rational]) -> Result<Matrix> {
        check_len(x, self.dim())?;
        let n = self.dim();
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| self.table.bracket(x, &unit_vec(n, j))).collect();
        Matrix::from_columns(n, &cols)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| self.bracket_basis(i, j)).collect();
        Matrix::from_columns(n, &cols).expect("columns have dimension n")
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.brackets.is_empty()
    }

    fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: s.ambient_dim(),
            });
        }
        Ok(())
    }

    /// `span{[a, b] : a in A, b in B}`
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check_subspace(a)?;
        self.check_subspace(b)?;
        let mut vecs = Vec::new();
        for u in a.basis() {
            for v in b.basis() {
                let w = self.table.bracket(u, v);
                if !is_zero_vec(&w) {
                    vecs.push(w);
                }
            }
        }
        Subspace::span(self.dim(), &vecs)
    }

    /// `{x : [x, s] = 0 for all s in S}`
    pub fn centralizer(&self, s: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        let n = self.dim();
        let mut rows = Vec::new();
        for v in s.basis() {
            // x -> [x, v] has columns [e_i, v]
            let cols: Vec<Vec<Rational>> = (0..n).map(|i| self.table.bracket(&unit_vec(n, i), v)).collect();
            let m = Matrix::from_columns(n, &cols)?;
            rows.extend(m.row_vecs());
        }
        if rows.is_empty() {
            return Ok(Subspace::full(n));
        }
        Ok(Matrix::from_rows(rows)?.nullspace())
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.dim()))
            .expect("full space has the right ambient dimension")
    }

    /// `{x : [x, S] is contained in S}`
    pub fn normalizer_subalgebra(&self, s: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        let n = self.dim();
        let ann = s.annihilator();
        if ann.is_zero() {
            return Ok(Subspace::full(n));
        }
        let mut rows = Vec::new();
        for v in s.basis() {
            let cols: Vec<Vec<Rational>> = (0..n).map(|i| self.table.bracket(&unit_vec(n, i), v)).collect();
            // w . [x, v] = 0 for every annihilating functional w
            for w in ann.basis() {
                let row: Vec<Rational> = (0..n)
                    .map(|i| {
                        cols[i]
                            .iter()
                            .zip(w)
                            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                            .map(|(a, b)| a * b)
                            .sum()
                    })
                    .collect();
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return Ok(Subspace::full(n));
        }
        Ok(Matrix::from_rows(rows)?.nullspace())
    }

    pub fn is_subalgebra(&self, w: &Subspace) -> Result<bool> {
        self.check_subspace(w)?;
        let b = w.basis();
        for (i, u) in b.iter().enumerate() {
            for v in &b[i + 1..] {
                if !w.contains(&self.table.bracket(u, v))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_ideal(&self, w: &Subspace) -> Result<bool> {
        self.check_subspace(w)?;
        let n = self.dim();
        for i in 0..n {
            for v in w.basis() {
                if !w.contains(&self.table.bracket(&unit_vec(n, i), v))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_abelian_subspace(&self, w: &Subspace) -> Result<bool> {
        self.check_subspace(w)?;
        let b = w.basis();
        for (i, u) in b.iter().enumerate() {
            for v in &b[i + 1..] {
                if !is_zero_vec(&self.table.bracket(u, v)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `L / I` on the basis given by the standard coordinates completing the
    /// echelon basis of `I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        if !self.is_ideal(ideal)? {
            return Err(Error::NotAnIdeal);
        }
        let coords = ideal.complement_coordinates();
        let n = self.dim();
        let mut sc = StructureConstants::new(format!("{}/I{}", self.name(), ideal.dim()), coords.len());
        if let Some(labels) = &self.constants.labels {
            sc.labels = Some(coords.iter().map(|&c| labels[c].clone()).collect());
        }
        for (a, &ca) in coords.iter().enumerate() {
            for (b, &cb) in coords.iter().enumerate().skip(a + 1) {
                let r = ideal.reduce(&self.bracket_basis(ca, cb))?;
                for (k, &ck) in coords.iter().enumerate() {
                    if !r[ck].is_zero() {
                        sc.add(a, b, k, r[ck].clone())?;
                    }
                }
                debug_assert!(ideal.pivots().iter().all(|&p| r[p].is_zero()));
            }
        }
        let algebra = LieAlgebra::new(sc).map_err(|e| Error::Internal(format!("quotient failed Jacobi validation: {e}")))?;
        debug_assert_eq!(algebra.dim(), n - ideal.dim());
        Ok(Quotient {
            algebra,
            ideal: ideal.clone(),
            coordinates: coords,
        })
    }

    /// `self ⊕ other`, basis of `self` first.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim();
        let mut sc = StructureConstants::new(format!("{}+{}", self.name(), other.name()), n + other.dim());
        for (&(i, j), terms) in self.constants.entries() {
            for (&k, c) in terms {
                sc.add(i, j, k, c.clone()).expect("indices in range");
            }
        }
        for (&(i, j), terms) in other.constants.entries() {
            for (&k, c) in terms {
                sc.add(n + i, n + j, n + k, c.clone()).expect("indices in range");
            }
        }
        LieAlgebra::new(sc).expect("direct sum of Lie algebras satisfies Jacobi")
    }
}

/// Quotient algebra together with the data needed to map back.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    pub ideal: Subspace,
    /// Standard coordinates of the parent whose classes form the quotient basis.
    pub coordinates: Vec<usize>,
}

impl Quotient {
    /// Image of a parent vector in quotient coordinates.
    pub fn project(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        let r = self.ideal.reduce(v)?;
        Ok(self.coordinates.iter().map(|&c| r[c].clone()).collect())
    }

    /// Representative in the parent spanned by the complement coordinates.
    pub fn lift(&self, w: &[Rational]) -> Vec<Rational> {
        let mut v = zero_vec(self.ideal.ambient_dim());
        for (x, &c) in w.iter().zip(&self.coordinates) {
            v[c] = x.clone();
        }
        v
    }
}

pub fn validate_jacobi(sc: &StructureConstants) -> Vec<JacobiViolation> {
    sc.validate_jacobi()
}

pub fn center(l: &LieAlgebra) -> Subspace {
    l.center()
}

pub fn centralizer(l: &LieAlgebra, s: &Subspace) -> Result<Subspace> {
    l.centralizer(s)
}

pub fn normalizer_subalgebra(l: &LieAlgebra, s: &Subspace) -> Result<Subspace> {
    l.normalizer_subalgebra(s)
}

pub fn is_subalgebra(l: &LieAlgebra, w: &Subspace) -> Result<bool> {
    l.is_subalgebra(w)
}

pub fn is_ideal(l: &LieAlgebra, w: &Subspace) -> Result<bool> {
    l.is_ideal(w)
}

pub fn quotient(l: &LieAlgebra, ideal: &Subspace) -> Result<LieAlgebra> {
    Ok(l.quotient(ideal)?.algebra)
}

impl fmt::Debug for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim)?;
        for (&(i, j), terms) in &self.brackets {
            let t: Vec<String> = terms
                .iter()
                .map(|(k, c)| format!("{}*e{k}", exactla::format_rational(c)))
                .collect();
            write!(f, "; [e{i},e{j}]={}", t.join("+"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.constants, f)
    }
}

impl fmt::Debug for BracketTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BracketTable(dim {})", self.dim)
    }
}
