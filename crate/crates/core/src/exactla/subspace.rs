use std::fmt;

use num_traits::Zero;

use super::echelon::{reduced_echelon, Echelon};
use super::{check_len, format_vec, Matrix, Rational};
use crate::error::{Error, Result};

/// A subspace of `Q^n` stored by its reduced echelon basis.
///
/// The representation is canonical: two spans of the same space compare
/// equal with `==`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        let basis = (0..n).map(|i| super::unit_vec(n, i)).collect();
        Subspace {
            ambient_dim: n,
            basis,
            pivots: (0..n).collect(),
        }
    }

    pub fn span(n: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        for v in vectors {
            check_len(v, n)?;
        }
        Ok(Self::from_echelon(reduced_echelon(vectors, n)))
    }

    /// Span of standard basis vectors.
    pub fn coordinate(n: usize, indices: &[usize]) -> Result<Self> {
        let vectors = indices
            .iter()
            .map(|&i| {
                if i >= n {
                    Err(Error::InvalidParameter(format!("basis index {i} out of range for dimension {n}")))
                } else {
                    Ok(super::unit_vec(n, i))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::span(n, &vectors)
    }

    pub(crate) fn from_echelon(e: Echelon) -> Self {
        Subspace {
            ambient_dim: e.ncols,
            basis: e.rows,
            pivots: e.pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Reduced echelon basis vectors.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Standard coordinates not used as pivots; their unit vectors complete
    /// the basis to one of the ambient space.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        Echelon {
            ncols: self.ambient_dim,
            rows: Vec::new(),
            pivots: self.pivots.clone(),
        }
        .free_columns()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// `v` minus its projection along the echelon basis; zero iff `v` is in the span.
    /// The residual vanishes on every pivot coordinate.
    pub fn reduce(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        check_len(v, self.ambient_dim)?;
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let a = -r[p].clone();
                super::axpy(&mut r, &a, b);
            }
        }
        Ok(r)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(super::is_zero_vec(&self.reduce(v)?))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &vectors)
    }

    /// Orthogonal complement for the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient_dim);
        }
        Matrix::from_rows(self.basis.clone())
            .expect("echelon rows share a length")
            .nullspace()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First basis vector (in echelon order) that is not contained in `other`.
    pub fn first_outside(&self, other: &Subspace) -> Result<Option<Vec<Rational>>> {
        self.check_ambient(other)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(Some(b.clone()));
            }
        }
        Ok(None)
    }

    /// Image under a linear map given by a matrix with `ambient_dim` columns.
    pub fn map(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: m.cols(),
            });
        }
        let images: Vec<Vec<Rational>> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Subspace::span(m.rows(), &images)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(|b| format_vec(b)).collect();
        write!(f, "Subspace(dim {} in Q^{}: [{}])", self.dim(), self.ambient_dim, parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, unit_vec};
    use proptest::prelude::*;

    #[test]
    fn lattice_examples() {
        let a = Subspace::span(3, &[vec![rat(1), rat(2), rat(0)]]).unwrap();
        assert_eq!(a.intersect(&a).unwrap(), a);

        let e1 = Subspace::span(2, &[unit_vec(2, 0)]).unwrap();
        let e2 = Subspace::span(2, &[unit_vec(2, 1)]).unwrap();
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(2));

        let diag = Subspace::span(2, &[vec![rat(1), rat(1)]]).unwrap();
        assert_eq!(diag.intersect(&e1).unwrap(), Subspace::zero(2));
        assert!(diag.contains(&[rat(-3), rat(-3)]).unwrap());
        assert!(!diag.contains(&[rat(1), rat(0)]).unwrap());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.intersect(&b).is_err());
        assert!(a.contains(&[rat(1)]).is_err());
    }

    #[test]
    fn complement_and_coordinates() {
        let s = Subspace::span(4, &[vec![rat(0), rat(1), rat(1), rat(0)], vec![rat(0), rat(0), rat(1), rat(1)]]).unwrap();
        assert_eq!(s.pivots(), &[1, 2]);
        assert_eq!(s.complement_coordinates(), vec![0, 3]);
        let v = vec![rat(0), rat(2), rat(5), rat(3)];
        assert_eq!(s.coordinates(&v).unwrap(), Some(vec![rat(2), rat(5)]));
    }

    fn small_vectors(n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=max)
            .prop_map(|vs| vs.into_iter().map(|v| v.into_iter().map(rat).collect()).collect())
    }

    proptest! {
        #[test]
        fn grassmann_identity((n, a, b) in (1usize..=8).prop_flat_map(|n| (Just(n), small_vectors(n, 5), small_vectors(n, 5)))) {
            let a = Subspace::span(n, &a).unwrap();
            let b = Subspace::span(n, &b).unwrap();
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
            prop_assert!(i.is_subspace_of(&a).unwrap() && i.is_subspace_of(&b).unwrap());
        }

        #[test]
        fn span_is_canonical((n, vs, c) in (1usize..=6).prop_flat_map(|n| (Just(n), small_vectors(n, 4), prop::collection::vec(-4i64..=4, 16)))) {
            let s = Subspace::span(n, &vs).unwrap();
            // Re-span using random combinations plus the original vectors.
            let mut mixed: Vec<Vec<Rational>> = Vec::new();
            for (k, v) in vs.iter().enumerate() {
                let mut w = v.clone();
                if let Some(u) = vs.get(k + 1) {
                    crate::exactla::axpy(&mut w, &rat(c[k % c.len()]), u);
                }
                mixed.push(w);
            }
            mixed.extend(vs.iter().rev().cloned());
            prop_assert_eq!(Subspace::span(n, &mixed).unwrap(), s);
        }
    }
}
