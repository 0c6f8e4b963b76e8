//! Search for a full flag of ideals using rational eigenvalues only.
//!
//! At each stage the current ideal `a_i` is factored out and a common
//! eigenvector of all `ad` operators of `L / a_i` is sought; its lift
//! extends the flag by one dimension. Failure of the search is turned into
//! a certificate of non-complete-solvability when some `ad` operator has a
//! non-real eigenvalue, and into `Undecided` otherwise.

use serde::Serialize;

use super::{is_solvable, LieAlgebra};
use crate::exactla::{Matrix, Poly, Rational, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FlagStatus {
    Yes,
    No,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlagWitness {
    /// The derived series does not reach zero.
    NotSolvable,
    /// `ad(e_element)` has a characteristic factor without rational roots
    /// and with at least one non-real root. `factor` is that factor on the
    /// quotient where the search stopped; it is irreducible whenever its
    /// degree is at most 3.
    NonRealEigenvalue { element: usize, factor: Poly },
}

impl FlagWitness {
    pub fn factor_degree(&self) -> Option<usize> {
        match self {
            FlagWitness::NotSolvable => None,
            FlagWitness::NonRealEigenvalue { factor, .. } => Some(factor.degree()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVerdict {
    pub status: FlagStatus,
    /// Ideals of dimensions `0, 1, ..., n` when the status is `Yes`.
    pub flag: Option<Vec<Subspace>>,
    pub witness: Option<FlagWitness>,
}

pub fn completely_solvable_flag(l: &LieAlgebra) -> FlagVerdict {
    let n = l.dim();
    if !is_solvable(l) {
        return FlagVerdict {
            status: FlagStatus::No,
            flag: None,
            witness: Some(FlagWitness::NotSolvable),
        };
    }
    let mut flag = vec![Subspace::zero(n)];
    while flag.len() <= n {
        let current = flag.last().expect("flag is nonempty");
        let q = l.quotient(current).expect("flag members are ideals");
        let ops: Vec<Matrix> = (0..q.algebra.dim()).map(|i| q.algebra.ad_basis(i)).collect();
        match common_eigenvector(&ops) {
            Some(w) => {
                let lifted = q.lift(&w);
                let next = current
                    .sum(&Subspace::span(n, &[lifted]).expect("lift has ambient length"))
                    .expect("same ambient space");
                debug_assert_eq!(next.dim(), current.dim() + 1);
                flag.push(next);
            }
            None => {
                for (i, op) in ops.iter().enumerate() {
                    let split = op.rational_eigen_split().expect("ad operators are square");
                    if split.has_nonreal_roots() {
                        return FlagVerdict {
                            status: FlagStatus::No,
                            flag: None,
                            witness: Some(FlagWitness::NonRealEigenvalue {
                                element: q.coordinates[i],
                                factor: split.residual,
                            }),
                        };
                    }
                }
                return FlagVerdict {
                    status: FlagStatus::Undecided,
                    flag: None,
                    witness: None,
                };
            }
        }
    }
    FlagVerdict {
        status: FlagStatus::Yes,
        flag: Some(flag),
        witness: None,
    }
}

/// A vector that is an eigenvector with rational eigenvalue for every
/// operator. Eigenvalues are tried in ascending order, operators in order.
pub(crate) fn common_eigenvector(ops: &[Matrix]) -> Option<Vec<Rational>> {
    let m = ops.first().map(Matrix::rows)?;
    if m == 0 {
        return None;
    }
    search(ops, Subspace::full(m)).map(|s| s.basis()[0].clone())
}

fn search(ops: &[Matrix], v: Subspace) -> Option<Subspace> {
    let Some((op, rest)) = ops.split_first() else {
        return Some(v);
    };
    if op.is_zero() {
        return search(rest, v);
    }
    let (u, restricted) = invariant_core(op, &v);
    if u.is_zero() {
        return None;
    }
    let split = restricted.rational_eigen_split().expect("restriction is square");
    for (lambda, _) in split.rational_roots {
        let shifted = op - &Matrix::identity(op.rows()).scale(&lambda);
        let eigen = shifted.nullspace().intersect(&u).expect("same ambient space");
        if !eigen.is_zero() {
            if let Some(found) = search(rest, eigen) {
                return Some(found);
            }
        }
    }
    None
}

/// Largest `op`-invariant subspace `U` of `v`, with the matrix of `op|U` in
/// the echelon basis of `U`. Every eigenvector of `op` lying in `v` lies in `U`.
fn invariant_core(op: &Matrix, v: &Subspace) -> (Subspace, Matrix) {
    let mut u = v.clone();
    loop {
        let ann = u.annihilator();
        // {x in U : op x in U}
        let images: Vec<Vec<Rational>> = u.basis().iter().map(|b| op.mul_vec(b)).collect();
        let rows: Vec<Vec<Rational>> = ann
            .basis()
            .iter()
            .map(|w| images.iter().map(|img| dot(w, img)).collect())
            .collect();
        let coeffs = if rows.is_empty() || u.is_zero() {
            Subspace::full(u.dim())
        } else {
            Matrix::from_rows(rows).expect("uniform rows").nullspace()
        };
        if coeffs.dim() == u.dim() {
            break;
        }
        let vecs: Vec<Vec<Rational>> = coeffs
            .basis()
            .iter()
            .map(|c| combine(u.basis(), c, op.rows()))
            .collect();
        u = Subspace::span(op.rows(), &vecs).expect("combinations have ambient length");
    }
    let d = u.dim();
    let cols: Vec<Vec<Rational>> = u
        .basis()
        .iter()
        .map(|b| {
            u.coordinates(&op.mul_vec(b))
                .expect("same ambient space")
                .expect("U is invariant")
        })
        .collect();
    let restricted = Matrix::from_columns(d, &cols).expect("coordinate columns have length d");
    (u, restricted)
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combine(basis: &[Vec<Rational>], coeffs: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = crate::exactla::zero_vec(n);
    for (b, c) in basis.iter().zip(coeffs) {
        crate::exactla::axpy(&mut out, c, b);
    }
    out
}
