use serde::Serialize;

use super::LieAlgebra;
use crate::exactla::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// Terms of a central or derived series, listed until the dimension stops
/// dropping. The last term is the stable one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub stabilized_dim: usize,
}

impl SeriesReport {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    pub fn terminates(&self) -> bool {
        self.stabilized_dim == 0
    }

    /// Nilpotency class (resp. derived length) when the series reaches zero.
    /// The zero algebra has length 0.
    pub fn length(&self) -> Option<usize> {
        self.terminates().then(|| self.terms.len() - 1)
    }
}

fn series(l: &LieAlgebra, kind: SeriesKind) -> SeriesReport {
    let mut terms = vec![Subspace::full(l.dim())];
    loop {
        let last = terms.last().expect("series starts with L");
        if last.is_zero() {
            break;
        }
        let next = match kind {
            SeriesKind::LowerCentral => l.bracket_subspaces(&Subspace::full(l.dim()), last),
            SeriesKind::Derived => l.bracket_subspaces(last, last),
        }
        .expect("series terms live in L");
        if next.dim() == last.dim() {
            break;
        }
        terms.push(next);
    }
    let stabilized_dim = terms.last().map_or(0, Subspace::dim);
    SeriesReport {
        kind,
        terms,
        stabilized_dim,
    }
}

/// `C^1 = L`, `C^{k+1} = [L, C^k]`.
pub fn lower_central_series(l: &LieAlgebra) -> SeriesReport {
    series(l, SeriesKind::LowerCentral)
}

/// `D^1 = L`, `D^{k+1} = [D^k, D^k]`.
pub fn derived_series(l: &LieAlgebra) -> SeriesReport {
    series(l, SeriesKind::Derived)
}

pub fn is_nilpotent(l: &LieAlgebra) -> bool {
    lower_central_series(l).terminates()
}

pub fn is_solvable(l: &LieAlgebra) -> bool {
    derived_series(l).terminates()
}
