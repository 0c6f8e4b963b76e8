//! Embeddings `phi: l -> g` and first-order rigidity.
//!
//! All rigidity verdicts here are tangent-level: they compare the cocycle
//! space `Z1` of `phi`, the coboundaries `B1 = {ad(X) o phi}` and the
//! vertical space `{phi o D : D in Der(l)}` inside `Hom(l, g)`, flattened
//! column-major as in [`crate::derivations`].

use serde::Serialize;

use crate::derivations::{cocycle_kernel, derivation_algebra, is_derivation, OperatorAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{format_vec, is_zero_vec, sub_vec, unit_vec, Matrix, Rational, Subspace};
use crate::liealg::{completely_solvable_flag, is_nilpotent, FlagStatus, LieAlgebra};

/// An injective homomorphism, certified at construction.
#[derive(Clone, Debug)]
pub struct Embedding {
    domain: LieAlgebra,
    codomain: LieAlgebra,
    matrix: Matrix,
    image: Subspace,
}

pub fn check_embedding(domain: &LieAlgebra, codomain: &LieAlgebra, matrix: Matrix) -> Result<Embedding> {
    let (nl, ng) = (domain.dim(), codomain.dim());
    if matrix.rows() != ng {
        return Err(Error::DimensionMismatch {
            expected: ng,
            found: matrix.rows(),
        });
    }
    if matrix.cols() != nl {
        return Err(Error::DimensionMismatch {
            expected: nl,
            found: matrix.cols(),
        });
    }
    let rank = matrix.rank();
    if rank != nl {
        return Err(Error::NotInjective { rank, dim: nl });
    }
    let images = matrix.columns();
    for i in 0..nl {
        for j in i + 1..nl {
            let lhs = matrix.mul_vec(&domain.bracket_basis(i, j));
            let rhs = codomain.bracket(&images[i], &images[j])?;
            let residual = sub_vec(&lhs, &rhs);
            if !is_zero_vec(&residual) {
                return Err(Error::NotHomomorphism {
                    i,
                    j,
                    residual: format_vec(&residual),
                });
            }
        }
    }
    let image = Subspace::span(ng, &images)?;
    Ok(Embedding {
        domain: domain.clone(),
        codomain: codomain.clone(),
        matrix,
        image,
    })
}

impl Embedding {
    pub fn identity(g: &LieAlgebra) -> Embedding {
        check_embedding(g, g, Matrix::identity(g.dim())).expect("identity is an embedding")
    }

    /// `l -> Der(l) ⋉ l`, with the semidirect product built on the spot.
    pub fn into_der_semidirect(l: &LieAlgebra) -> Result<Embedding> {
        let g = crate::catalog::make_der_semidirect(l)?;
        let d = g.dim() - l.dim();
        let m = Matrix::from_fn(g.dim(), l.dim(), |r, c| {
            if r == d + c {
                Rational::from_integer(1.into())
            } else {
                Rational::from_integer(0.into())
            }
        });
        check_embedding(l, &g, m)
    }

    pub fn domain(&self) -> &LieAlgebra {
        &self.domain
    }

    pub fn codomain(&self) -> &LieAlgebra {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `phi(l)` as a subspace of `g`.
    pub fn image(&self) -> &Subspace {
        &self.image
    }

    /// Domain coordinates of a vector of `phi(l)`.
    fn preimage(&self, w: &[Rational]) -> Option<Vec<Rational>> {
        self.matrix.solve(w)
    }

    fn hom_dim(&self) -> usize {
        self.domain.dim() * self.codomain.dim()
    }
}

/// `n_g(phi(l)) = {X : [X, phi(l)] ⊆ phi(l)}`.
pub fn normalizer_of_image(e: &Embedding) -> Subspace {
    e.codomain
        .normalizer_subalgebra(&e.image)
        .expect("image lives in the codomain")
}

pub fn is_ideal_image(e: &Embedding) -> bool {
    normalizer_of_image(e).is_full()
}

/// `X -> phi^{-1} o ad(X) o phi` on a basis of the normalizer.
#[derive(Clone, Debug)]
pub struct GoingThrough {
    pub normalizer: Subspace,
    /// `D_X` for each echelon basis vector `X` of the normalizer.
    pub maps: Vec<Matrix>,
    /// Span of the `D_X` inside the flattened `dim(l)^2` operator space.
    pub image: Subspace,
    pub kernel_dim: usize,
}

pub fn going_through_differential(e: &Embedding) -> Result<GoingThrough> {
    let normalizer = normalizer_of_image(e);
    let nl = e.domain.dim();
    let mut maps = Vec::with_capacity(normalizer.dim());
    for x in normalizer.basis() {
        let ad = e.codomain.ad(x)?;
        let cols = (0..nl)
            .map(|a| {
                e.preimage(&ad.mul_vec(&e.matrix.column(a))).ok_or_else(|| {
                    Error::Internal("normalizer element does not stabilize the image".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let d = Matrix::from_columns(nl, &cols)?;
        if !is_derivation(&e.domain, &d) {
            return Err(Error::Internal("going-through map produced a non-derivation".into()));
        }
        maps.push(d);
    }
    let flat: Vec<Vec<Rational>> = maps.iter().map(Matrix::to_col_major).collect();
    let image = Subspace::span(nl * nl, &flat)?;
    let kernel_dim = normalizer.dim() - image.dim();
    let centralizer = e.codomain.centralizer(&e.image)?;
    if centralizer.dim() != kernel_dim {
        return Err(Error::Internal(format!(
            "going-through kernel has dimension {kernel_dim}, centralizer has {}",
            centralizer.dim()
        )));
    }
    Ok(GoingThrough {
        normalizer,
        maps,
        image,
        kernel_dim,
    })
}

fn require_inside(inner: &Subspace, outer: &Subspace, what: &str) -> Result<()> {
    if inner.is_subspace_of(outer)? {
        Ok(())
    } else {
        Err(Error::Internal(format!("{what} is not contained in the cocycle space")))
    }
}

/// 1-cocycles `c[x,y] = [c x, phi y] + [phi x, c y]`.
pub fn cocycle_space(e: &Embedding) -> Subspace {
    cocycle_kernel(&e.domain, &e.codomain, &e.matrix)
}

/// `span{ad(X) o phi : X basis of g}`.
pub fn coboundary_space(e: &Embedding) -> Subspace {
    let vecs: Vec<Vec<Rational>> = (0..e.codomain.dim())
        .map(|k| (&e.codomain.ad_basis(k) * &e.matrix).to_col_major())
        .collect();
    Subspace::span(e.hom_dim(), &vecs).expect("hom-space coordinates")
}

fn vertical_from(e: &Embedding, der: &OperatorAlgebra) -> Subspace {
    let vecs: Vec<Vec<Rational>> = der.ops().iter().map(|d| (&e.matrix * d).to_col_major()).collect();
    Subspace::span(e.hom_dim(), &vecs).expect("hom-space coordinates")
}

/// `span{phi o D : D basis of Der(l)}`.
pub fn vertical_subspace(e: &Embedding) -> Subspace {
    vertical_from(e, &derivation_algebra(&e.domain))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A derivation whose composite with `phi` is not a coboundary.
    Derivation { derivation: Matrix, cocycle: Vec<Rational> },
    /// A cocycle outside the subspace the verdict compares against.
    Cocycle { cocycle: Vec<Rational> },
}

impl Witness {
    /// The witness as a vector of the flattened `Hom(l, g)`.
    pub fn cocycle(&self) -> &[Rational] {
        match self {
            Witness::Derivation { cocycle, .. } | Witness::Cocycle { cocycle } => cocycle,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    RigidInfinitesimally,
    NotRigid(Witness),
    /// Not produced by the tangent-level comparisons, which always decide.
    Undecided,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::RigidInfinitesimally => "RigidInfinitesimally",
            Verdict::NotRigid(_) => "NotRigid",
            Verdict::Undecided => "Undecided",
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::NotRigid(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_rigid(&self) -> bool {
        matches!(self, Verdict::RigidInfinitesimally)
    }
}

#[derive(Clone, Debug)]
pub struct RigidityReport {
    pub is_ideal: bool,
    pub normalizer_dim: usize,
    pub centralizer_dim: usize,
    pub der_dim: usize,
    pub gtd_image_dim: usize,
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub vertical_subspace_dim: usize,
    /// `dim(B1 + vertical)`.
    pub b1_plus_vertical_dim: usize,
    pub vertical: Verdict,
    pub horizontal: Verdict,
    pub local: Verdict,
    /// First witness among the vertical, horizontal and local verdicts.
    pub witness: Option<Witness>,
}

/// Full set of spaces a report is computed from.
#[derive(Clone, Debug)]
pub struct RigiditySpaces {
    pub der: OperatorAlgebra,
    pub going_through: GoingThrough,
    pub z1: Subspace,
    pub b1: Subspace,
    pub vertical: Subspace,
}

pub fn rigidity_spaces(e: &Embedding) -> Result<RigiditySpaces> {
    let der = derivation_algebra(&e.domain);
    let going_through = going_through_differential(e)?;
    let z1 = cocycle_space(e);
    let b1 = coboundary_space(e);
    let vertical = vertical_from(e, &der);
    require_inside(&b1, &z1, "coboundary space")?;
    require_inside(&vertical, &z1, "vertical space")?;
    if !going_through.image.is_subspace_of(der.span())? {
        return Err(Error::Internal("going-through image is not inside Der".into()));
    }
    Ok(RigiditySpaces {
        der,
        going_through,
        z1,
        b1,
        vertical,
    })
}

pub fn rigidity_report(e: &Embedding) -> Result<RigidityReport> {
    let s = rigidity_spaces(e)?;
    let centralizer_dim = e.codomain.centralizer(&e.image)?.dim();

    let vertical = match s.der.ops().iter().find_map(|d| {
        let c = (&e.matrix * d).to_col_major();
        (!s.b1.contains(&c).expect("hom-space coordinates")).then(|| (d.clone(), c))
    }) {
        Some((derivation, cocycle)) => Verdict::NotRigid(Witness::Derivation { derivation, cocycle }),
        None => Verdict::RigidInfinitesimally,
    };
    let surjective = s.going_through.image.dim() == s.der.dim();
    if vertical.is_rigid() != surjective {
        return Err(Error::Internal(format!(
            "vertical containment ({}) disagrees with going-through surjectivity ({surjective})",
            vertical.is_rigid()
        )));
    }

    let b1_plus_vertical = s.b1.sum(&s.vertical)?;
    let horizontal = match s.z1.first_outside(&b1_plus_vertical)? {
        Some(cocycle) => Verdict::NotRigid(Witness::Cocycle { cocycle }),
        None => Verdict::RigidInfinitesimally,
    };
    let local = match s.z1.first_outside(&s.b1)? {
        Some(cocycle) => Verdict::NotRigid(Witness::Cocycle { cocycle }),
        None => Verdict::RigidInfinitesimally,
    };
    let witness = [&vertical, &horizontal, &local]
        .into_iter()
        .find_map(|v| v.witness().cloned());

    Ok(RigidityReport {
        is_ideal: s.going_through.normalizer.is_full(),
        normalizer_dim: s.going_through.normalizer.dim(),
        centralizer_dim,
        der_dim: s.der.dim(),
        gtd_image_dim: s.going_through.image.dim(),
        z1_dim: s.z1.dim(),
        b1_dim: s.b1.dim(),
        vertical_subspace_dim: s.vertical.dim(),
        b1_plus_vertical_dim: b1_plus_vertical.dim(),
        vertical,
        horizontal,
        local,
        witness,
    })
}

/// Why an obstruction was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionReason {
    /// `g` is nilpotent and `Der(l)` is not.
    NilpotentAmbient,
    /// `g` is completely solvable and `Der(l)` is not.
    CompletelySolvableAmbient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason")]
pub enum Obstruction {
    Obstructed(ObstructionReason),
    NoObstruction,
    Undecided,
}

/// Structural criterion ruling out vertical rigidity of every embedding
/// `l -> g`: `Der(l)` fails to be nilpotent (resp. completely solvable)
/// while `g` is.
pub fn theorem_obstruction(l: &LieAlgebra, g: &LieAlgebra) -> Result<Obstruction> {
    let der = derivation_algebra(l).to_lie_algebra(format!("Der({})", l.name()))?;
    if is_nilpotent(g) && !is_nilpotent(&der) {
        return Ok(Obstruction::Obstructed(ObstructionReason::NilpotentAmbient));
    }
    let g_flag = completely_solvable_flag(g).status;
    if g_flag == FlagStatus::No {
        return Ok(Obstruction::NoObstruction);
    }
    let der_flag = completely_solvable_flag(&der).status;
    Ok(match (g_flag, der_flag) {
        (FlagStatus::Yes, FlagStatus::No) => Obstruction::Obstructed(ObstructionReason::CompletelySolvableAmbient),
        (_, FlagStatus::Yes) => Obstruction::NoObstruction,
        _ => Obstruction::Undecided,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianUniqueness {
    pub unique: bool,
    /// `dim ker(ad x0 |_A)`.
    pub kernel_dim: usize,
    /// The chosen `x0`, a standard basis vector outside `A`.
    pub x0: Vec<Rational>,
    /// A codimension-one abelian subalgebra different from `A`, when one exists.
    pub alternative: Option<Subspace>,
}

/// Decides whether the abelian ideal `A` of codimension one is the only
/// abelian subalgebra of that codimension.
///
/// A codimension-one `W ≠ A` is `span(x0 + a) ⊕ (W ∩ A)` with `W ∩ A` of
/// codimension one in `A`, and it is abelian iff `W ∩ A ⊆ ker(ad x0 |_A)`.
pub fn unique_codim1_abelian(l: &LieAlgebra, a: &Subspace) -> Result<AbelianUniqueness> {
    if a.ambient_dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: a.ambient_dim(),
        });
    }
    if a.codim() != 1 {
        return Err(Error::WrongCodimension {
            expected: 1,
            found: a.codim(),
        });
    }
    if !l.is_ideal(a)? {
        return Err(Error::NotAnIdeal);
    }
    if !l.is_abelian_subspace(a)? {
        return Err(Error::NotAbelian);
    }
    let x0 = unit_vec(l.dim(), a.complement_coordinates()[0]);
    let kernel = l.ad(&x0)?.nullspace().intersect(a)?;
    let kernel_dim = kernel.dim();
    let unique = a.dim() == 0 || kernel_dim + 1 < a.dim();
    let alternative = if unique {
        None
    } else {
        let mut vecs = vec![x0.clone()];
        vecs.extend(kernel.basis()[..a.dim() - 1].iter().cloned());
        let w = Subspace::span(l.dim(), &vecs)?;
        if w.codim() != 1 || !l.is_abelian_subspace(&w)? || &w == a {
            return Err(Error::Internal("constructed alternative is not a second abelian subalgebra".into()));
        }
        Some(w)
    };
    Ok(AbelianUniqueness {
        unique,
        kernel_dim,
        x0,
        alternative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_abelian, make_heisenberg, make_ladder};
    use crate::derivations::{inner_derivations, outer_derivation_dim};

    fn column_embedding(ng: usize, cols: &[usize]) -> Matrix {
        let columns: Vec<Vec<Rational>> = cols.iter().map(|&c| unit_vec(ng, c)).collect();
        Matrix::from_columns(ng, &columns).unwrap()
    }

    #[test]
    fn embedding_checks() {
        let h = make_heisenberg();
        let r3 = make_abelian(3).unwrap();
        assert!(matches!(
            check_embedding(&h, &r3, Matrix::identity(3)),
            Err(Error::NotHomomorphism { i: 0, j: 1, .. })
        ));
        let r2 = make_abelian(2).unwrap();
        let degenerate = Matrix::from_i64(&[&[1, 2], &[0, 0], &[0, 0]]);
        assert!(matches!(check_embedding(&r2, &h, degenerate), Err(Error::NotInjective { rank: 1, dim: 2 })));
        assert!(matches!(
            check_embedding(&r2, &h, Matrix::identity(2)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(check_embedding(&r2, &h, column_embedding(3, &[1, 2])).is_ok());
    }

    #[test]
    fn identity_embedding() {
        let h = make_heisenberg();
        let e = Embedding::identity(&h);
        assert!(is_ideal_image(&e));
        let gt = going_through_differential(&e).unwrap();
        assert_eq!(gt.image, *inner_derivations(&h).span());
        let r = rigidity_report(&e).unwrap();
        assert_eq!(r.z1_dim, 6);
        assert_eq!(r.b1_dim, 2);
        assert!(r.horizontal.is_rigid());
        assert!(!r.local.is_rigid());
        assert_eq!(r.z1_dim - r.b1_dim, outer_derivation_dim(&h));
    }

    #[test]
    fn central_line_has_trivial_going_through() {
        let h = make_heisenberg();
        let e = check_embedding(&make_abelian(1).unwrap(), &h, column_embedding(3, &[2])).unwrap();
        let gt = going_through_differential(&e).unwrap();
        assert!(gt.image.is_zero());
        assert_eq!(gt.kernel_dim, 3);
    }

    #[test]
    fn abelian_into_abelian() {
        let e = check_embedding(&make_abelian(2).unwrap(), &make_abelian(3).unwrap(), column_embedding(3, &[0, 1])).unwrap();
        assert!(cocycle_space(&e).is_full());
        assert!(coboundary_space(&e).is_zero());
    }

    #[test]
    fn sigma_line_is_not_an_ideal() {
        let l = make_ladder(3).unwrap();
        let e = check_embedding(&make_abelian(1).unwrap(), &l, column_embedding(4, &[0])).unwrap();
        assert!(!is_ideal_image(&e));
        assert_eq!(normalizer_of_image(&e).dim(), 2);
    }

    #[test]
    fn heisenberg_into_sum_is_not_vertically_rigid() {
        let h = make_heisenberg();
        let g = h.direct_sum(&make_abelian(1).unwrap());
        let e = check_embedding(&h, &g, column_embedding(4, &[0, 1, 2])).unwrap();
        let r = rigidity_report(&e).unwrap();
        let Verdict::NotRigid(Witness::Derivation { derivation, cocycle }) = &r.vertical else {
            panic!("expected a derivation witness, got {:?}", r.vertical);
        };
        assert!(is_derivation(&h, derivation));
        assert!(!derivation.is_nilpotent().unwrap());
        assert!(cocycle_space(&e).contains(cocycle).unwrap());
        assert!(!coboundary_space(&e).contains(cocycle).unwrap());
        assert_eq!(theorem_obstruction(&h, &g).unwrap(), Obstruction::Obstructed(ObstructionReason::NilpotentAmbient));
    }

    #[test]
    fn obstruction_cases() {
        let h = make_heisenberg();
        let r2 = make_abelian(2).unwrap();
        assert!(matches!(theorem_obstruction(&r2, &h).unwrap(), Obstruction::Obstructed(_)));
        // A completely solvable, non-nilpotent ambient whose derivations are not completely solvable.
        let e2 = crate::catalog::make_euclidean2();
        let line = crate::catalog::make_solvable_line();
        assert_eq!(
            theorem_obstruction(&e2, &line).unwrap(),
            Obstruction::Obstructed(ObstructionReason::CompletelySolvableAmbient)
        );
        assert_eq!(theorem_obstruction(&line, &e2).unwrap(), Obstruction::NoObstruction);
    }

    #[test]
    fn abelian_uniqueness_on_ladders() {
        for n in 2..=6 {
            let l = make_ladder(n).unwrap();
            let a = Subspace::coordinate(n + 1, &(1..=n).collect::<Vec<_>>()).unwrap();
            let u = unique_codim1_abelian(&l, &a).unwrap();
            assert_eq!(u.kernel_dim, 1);
            assert_eq!(u.unique, n >= 3, "ladder {n}");
        }
        let r3 = make_abelian(3).unwrap();
        let plane = Subspace::coordinate(3, &[0, 1]).unwrap();
        let u = unique_codim1_abelian(&r3, &plane).unwrap();
        assert!(!u.unique);
        assert_eq!(u.alternative.unwrap().dim(), 2);
    }

    #[test]
    fn abelian_uniqueness_preconditions() {
        let h = make_heisenberg();
        assert!(matches!(
            unique_codim1_abelian(&h, &Subspace::coordinate(3, &[2]).unwrap()),
            Err(Error::WrongCodimension { .. })
        ));
        assert!(matches!(
            unique_codim1_abelian(&h, &Subspace::coordinate(3, &[0, 1]).unwrap()),
            Err(Error::NotAnIdeal)
        ));
        let g = h.direct_sum(&make_abelian(1).unwrap());
        assert!(matches!(
            unique_codim1_abelian(&g, &Subspace::coordinate(4, &[0, 1, 2]).unwrap()),
            Err(Error::NotAbelian)
        ));
        let sl = crate::catalog::make_solvable_line();
        // Every line is abelian, so span(t) is a second choice.
        let u = unique_codim1_abelian(&sl, &Subspace::coordinate(2, &[1]).unwrap()).unwrap();
        assert!(!u.unique);
        assert_eq!(u.alternative, Some(Subspace::coordinate(2, &[0]).unwrap()));
    }
}
