//! Derivation algebras, Engel's nilpotency test on operator families, and
//! semidirect products with a Lie algebra of derivations.
//!
//! Linear maps `l -> g` are flattened column-major: the entry in row `p`,
//! column `a` sits at index `a * dim(g) + p`. The same coordinatization is
//! used for operator spans here and for cocycle spaces in `rigidity`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{self, is_zero_vec, zero_vec, EchelonBuilder, Matrix, Rational, Subspace};
use crate::liealg::{is_nilpotent, LieAlgebra, StructureConstants};

/// A Lie subalgebra of `gl(n)` given by a canonical basis of operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorAlgebra {
    n: usize,
    ops: Vec<Matrix>,
    span: Subspace,
}

impl OperatorAlgebra {
    /// Canonicalizes the span of `ops` and checks commutator closure.
    pub fn new(n: usize, ops: &[Matrix]) -> Result<Self> {
        for op in ops {
            if op.rows() != n || op.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: if op.rows() != n { op.rows() } else { op.cols() },
                });
            }
        }
        let flat: Vec<Vec<Rational>> = ops.iter().map(Matrix::to_col_major).collect();
        let a = Self::from_span(n, Subspace::span(n * n, &flat)?);
        if !a.is_closed() {
            return Err(Error::NotClosed);
        }
        Ok(a)
    }

    /// Smallest commutator-closed family containing `ops`.
    pub fn generated_by(n: usize, ops: &[Matrix]) -> Result<Self> {
        let flat: Vec<Vec<Rational>> = ops.iter().map(Matrix::to_col_major).collect();
        let mut span = Subspace::span(n * n, &flat)?;
        loop {
            let current = Self::from_span(n, span.clone());
            let mut vecs = span.basis().to_vec();
            for (i, a) in current.ops.iter().enumerate() {
                for b in &current.ops[i + 1..] {
                    vecs.push(a.commutator(b).to_col_major());
                }
            }
            let next = Subspace::span(n * n, &vecs)?;
            if next.dim() == span.dim() {
                return Ok(current);
            }
            span = next;
        }
    }

    pub(crate) fn from_span(n: usize, span: Subspace) -> Self {
        let ops = span
            .basis()
            .iter()
            .map(|v| Matrix::from_col_major(n, n, v).expect("flattened operator has n^2 entries"))
            .collect();
        OperatorAlgebra { n, ops, span }
    }

    /// Size of the operators.
    pub fn space_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[Matrix] {
        &self.ops
    }

    /// The span inside the flattened `n^2`-dimensional space of operators.
    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn contains(&self, op: &Matrix) -> bool {
        op.rows() == self.n && op.cols() == self.n && self.span.contains(&op.to_col_major()).expect("n^2 entries")
    }

    pub fn coordinates(&self, op: &Matrix) -> Option<Vec<Rational>> {
        if op.rows() != self.n || op.cols() != self.n {
            return None;
        }
        self.span.coordinates(&op.to_col_major()).expect("n^2 entries")
    }

    pub fn is_closed(&self) -> bool {
        self.ops.iter().enumerate().all(|(i, a)| {
            self.ops[i + 1..]
                .iter()
                .all(|b| self.contains(&a.commutator(b)))
        })
    }

    /// The family as an abstract Lie algebra: `[D_i, D_j]` expanded in the
    /// canonical operator basis.
    pub fn to_lie_algebra(&self, name: impl Into<String>) -> Result<LieAlgebra> {
        let d = self.dim();
        let mut sc = StructureConstants::new(name, d);
        for i in 0..d {
            for j in i + 1..d {
                let c = self
                    .coordinates(&self.ops[i].commutator(&self.ops[j]))
                    .ok_or(Error::NotClosed)?;
                for (k, x) in c.into_iter().enumerate() {
                    if !x.is_zero() {
                        sc.add(i, j, k, x)?;
                    }
                }
            }
        }
        LieAlgebra::new(sc)
    }
}

/// Solution space of the linear system cutting out the 1-cocycles of
/// `phi: l -> g`, i.e. linear `c` with `c[x,y] = [c x, phi y] + [phi x, c y]`,
/// in the column-major coordinates of `Hom(l, g)`. Equations are streamed
/// into the eliminator one at a time.
pub(crate) fn cocycle_kernel(l: &LieAlgebra, g: &LieAlgebra, phi: &Matrix) -> Subspace {
    let nl = l.dim();
    let ng = g.dim();
    let ad_images: Vec<Matrix> = (0..nl)
        .map(|a| g.ad(&phi.column(a)).expect("phi has dim(g) rows"))
        .collect();
    let mut builder = EchelonBuilder::new(nl * ng);
    'pairs: for a in 0..nl {
        for b in a + 1..nl {
            let lab = l.bracket_basis(a, b);
            let (ad_a, ad_b) = (&ad_images[a], &ad_images[b]);
            for k in 0..ng {
                let mut row = zero_vec(nl * ng);
                // c([e_a, e_b])_k
                for (m, coeff) in lab.iter().enumerate() {
                    if !coeff.is_zero() {
                        row[m * ng + k] += coeff;
                    }
                }
                for p in 0..ng {
                    // -[c e_a, phi e_b]_k = (ad(phi e_b) c e_a)_k
                    let x = &ad_b[(k, p)];
                    if !x.is_zero() {
                        row[a * ng + p] += x;
                    }
                    // -[phi e_a, c e_b]_k
                    let y = &ad_a[(k, p)];
                    if !y.is_zero() {
                        row[b * ng + p] -= y;
                    }
                }
                if !is_zero_vec(&row) {
                    builder.push(&row);
                    if builder.is_full() {
                        break 'pairs;
                    }
                }
            }
        }
    }
    builder.kernel()
}

/// A basis pair together with the nonzero residual found on it.
pub type Defect = ((usize, usize), Vec<Rational>);

/// Residual `D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j]` on the first failing pair.
pub fn derivation_defect(l: &LieAlgebra, d: &Matrix) -> Result<Option<Defect>> {
    let n = l.dim();
    if d.rows() != n || d.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.rows(),
        });
    }
    let cols: Vec<Vec<Rational>> = d.columns();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.mul_vec(&l.bracket_basis(i, j));
            let mut r = lhs;
            let t1 = l.bracket_unchecked(&cols[i], &exactla::unit_vec(n, j));
            let t2 = l.bracket_unchecked(&exactla::unit_vec(n, i), &cols[j]);
            for k in 0..n {
                r[k] -= &t1[k];
                r[k] -= &t2[k];
            }
            if !is_zero_vec(&r) {
                return Ok(Some(((i, j), r)));
            }
        }
    }
    Ok(None)
}

pub fn is_derivation(l: &LieAlgebra, d: &Matrix) -> bool {
    matches!(derivation_defect(l, d), Ok(None))
}

/// `Der(L)`: the solution space of `D[e_i,e_j] = [D e_i, e_j] + [e_i, D e_j]`.
pub fn derivation_algebra(l: &LieAlgebra) -> OperatorAlgebra {
    let n = l.dim();
    let id = Matrix::identity(n);
    let span = cocycle_kernel(l, l, &id);
    OperatorAlgebra::from_span(n, span)
}

/// `span{ad e_i}`.
pub fn inner_derivations(l: &LieAlgebra) -> OperatorAlgebra {
    let n = l.dim();
    let flat: Vec<Vec<Rational>> = (0..n).map(|i| l.ad_basis(i).to_col_major()).collect();
    OperatorAlgebra::from_span(n, Subspace::span(n * n, &flat).expect("n^2 entries"))
}

pub fn outer_derivation_dim(l: &LieAlgebra) -> usize {
    derivation_algebra(l).dim() - inner_derivations(l).dim()
}

/// Engel's criterion on a family: iterate `V <- span{D v}` from the whole
/// space; the family acts nilpotently iff the chain reaches zero.
pub fn engel_all_nilpotent(a: &OperatorAlgebra) -> bool {
    let n = a.space_dim();
    let mut v = Subspace::full(n);
    while !v.is_zero() {
        let images: Vec<Vec<Rational>> = a
            .ops()
            .iter()
            .flat_map(|d| v.basis().iter().map(move |b| d.mul_vec(b)))
            .collect();
        let next = Subspace::span(n, &images).expect("operators are n x n");
        if next.dim() == v.dim() {
            return false;
        }
        v = next;
    }
    true
}

/// `h ⋉ L` on the basis `(D_1, ..., D_d, e_1, ..., e_n)` with
/// `[D, D'] = DD' - D'D`, `[D, v] = D v` and `[v, w]` from `L`.
pub fn semidirect(h: &OperatorAlgebra, l: &LieAlgebra) -> Result<LieAlgebra> {
    let n = l.dim();
    if h.space_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: h.space_dim(),
        });
    }
    for (index, op) in h.ops().iter().enumerate() {
        if !is_derivation(l, op) {
            return Err(Error::NotDerivation { index });
        }
    }
    let d = h.dim();
    let mut labels: Vec<String> = (0..d).map(|i| format!("D{i}")).collect();
    labels.extend((0..n).map(|i| l.label(i)));
    let mut sc = StructureConstants::new(format!("h{d}⋉{}", l.name()), d + n).with_labels(labels)?;
    for i in 0..d {
        for j in i + 1..d {
            let c = h
                .coordinates(&h.ops()[i].commutator(&h.ops()[j]))
                .ok_or(Error::NotClosed)?;
            for (k, x) in c.into_iter().enumerate() {
                if !x.is_zero() {
                    sc.add(i, j, k, x)?;
                }
            }
        }
        for a in 0..n {
            for (k, x) in h.ops()[i].column(a).into_iter().enumerate() {
                if !x.is_zero() {
                    sc.add(i, d + a, d + k, x)?;
                }
            }
        }
    }
    for (&(a, b), terms) in l.structure_constants().entries() {
        for (&k, x) in terms {
            sc.add(d + a, d + b, d + k, x.clone())?;
        }
    }
    LieAlgebra::new(sc).map_err(|e| Error::Internal(format!("semidirect product failed Jacobi validation: {e}")))
}

/// The three equivalent characterizations of characteristic nilpotency,
/// each evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharNilpotencyReport {
    pub der_dim: usize,
    /// `Der(L)` is a nilpotent Lie algebra (lower central series of its
    /// structure constants).
    pub via_der_nilpotent: bool,
    /// Every derivation is a nilpotent operator (Engel chain).
    pub via_all_elements_nilpotent: bool,
    /// `Der(L) ⋉ L` is nilpotent.
    pub via_semidirect_nilpotent: bool,
    pub agree: bool,
}

impl CharNilpotencyReport {
    /// Common verdict when the three checks agree.
    pub fn verdict(&self) -> Option<bool> {
        self.agree.then_some(self.via_der_nilpotent)
    }
}

pub fn is_characteristically_nilpotent(l: &LieAlgebra) -> Result<CharNilpotencyReport> {
    if l.dim() <= 1 {
        return Err(Error::DimensionTooSmall(l.dim()));
    }
    let der = derivation_algebra(l);
    let der_algebra = der.to_lie_algebra(format!("Der({})", l.name()))?;
    let via_der_nilpotent = is_nilpotent(&der_algebra);
    let via_all_elements_nilpotent = engel_all_nilpotent(&der);
    let via_semidirect_nilpotent = is_nilpotent(&semidirect(&der, l)?);
    Ok(CharNilpotencyReport {
        der_dim: der.dim(),
        via_der_nilpotent,
        via_all_elements_nilpotent,
        via_semidirect_nilpotent,
        agree: via_der_nilpotent == via_all_elements_nilpotent
            && via_all_elements_nilpotent == via_semidirect_nilpotent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_abelian, make_heisenberg, make_ladder, make_solvable_line};
    use crate::exactla::rat;

    #[test]
    fn abelian_derivations_are_all_maps() {
        for n in 1..=4 {
            let a = make_abelian(n).unwrap();
            assert_eq!(derivation_algebra(&a).dim(), n * n);
            assert_eq!(inner_derivations(&a).dim(), 0);
            assert_eq!(outer_derivation_dim(&a), n * n);
        }
    }

    #[test]
    fn heisenberg_derivations() {
        let h = make_heisenberg();
        let der = derivation_algebra(&h);
        assert_eq!(der.dim(), 6);
        assert_eq!(inner_derivations(&h).dim(), 2);
        assert_eq!(outer_derivation_dim(&h), 4);
        for d in der.ops() {
            assert!(is_derivation(&h, d));
        }
        assert!(der.is_closed());
        // x -> x, y -> 0, z -> z
        let diag = Matrix::diagonal(&[rat(1), rat(0), rat(1)]);
        assert!(der.contains(&diag));
    }

    #[test]
    fn ladder_grading_derivation() {
        for n in 2..=5 {
            let l = make_ladder(n).unwrap();
            // weight 1 on sigma, weight k+1 on e_k
            let mut w = vec![rat(1)];
            w.extend((0..n).map(|k| rat(k as i64 + 1)));
            let d = Matrix::diagonal(&w);
            assert!(is_derivation(&l, &d));
            let der = derivation_algebra(&l);
            assert!(der.contains(&d));
            assert!(!engel_all_nilpotent(&der));
        }
    }

    #[test]
    fn engel_small_families() {
        let shift = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let fam = OperatorAlgebra::generated_by(3, &[shift.clone(), &shift * &shift]).unwrap();
        assert!(engel_all_nilpotent(&fam));
        let fam = OperatorAlgebra::generated_by(3, &[shift, Matrix::identity(3)]).unwrap();
        assert!(!engel_all_nilpotent(&fam));
    }

    #[test]
    fn semidirect_of_line() {
        let r1 = make_abelian(1).unwrap();
        let g = semidirect(&derivation_algebra(&r1), &r1).unwrap();
        assert_eq!(g.dim(), 2);
        // [D0, e0] = e0, same as [t, x] = x
        assert_eq!(g.structure_constants().entries(), make_solvable_line().structure_constants().entries());
    }

    #[test]
    fn semidirect_rejects_non_derivations() {
        let h = make_heisenberg();
        let bad = OperatorAlgebra::new(3, &[Matrix::diagonal(&[rat(1), rat(0), rat(0)])]).unwrap();
        assert!(matches!(semidirect(&bad, &h), Err(Error::NotDerivation { index: 0 })));
    }

    #[test]
    fn non_closed_family_is_rejected() {
        let e12 = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        let e21 = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
        assert!(matches!(OperatorAlgebra::new(2, &[e12, e21]), Err(Error::NotClosed)));
    }

    #[test]
    fn char_nilpotency_of_small_algebras() {
        let r = is_characteristically_nilpotent(&make_abelian(2).unwrap()).unwrap();
        assert_eq!(
            (r.via_der_nilpotent, r.via_all_elements_nilpotent, r.via_semidirect_nilpotent),
            (false, false, false)
        );
        let r = is_characteristically_nilpotent(&make_heisenberg()).unwrap();
        assert!(r.agree && !r.via_der_nilpotent);
        assert!(matches!(
            is_characteristically_nilpotent(&make_abelian(1).unwrap()),
            Err(Error::DimensionTooSmall(1))
        ));
    }
}
