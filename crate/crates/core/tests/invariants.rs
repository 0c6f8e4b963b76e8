use lierigid::catalog::{dixmier_lister, make_abelian, make_der_semidirect, make_euclidean2, make_heisenberg, make_ladder, make_solvable_line};
use lierigid::derivations::{
    derivation_algebra, inner_derivations, is_characteristically_nilpotent, is_derivation, semidirect, OperatorAlgebra,
};
use lierigid::exactla::{Matrix, Rational};
use lierigid::liealg::{
    completely_solvable_flag, derived_series, is_nilpotent, lower_central_series, FlagStatus, LieAlgebra,
    StructureConstants,
};
use lierigid::rigidity::{
    check_embedding, coboundary_space, cocycle_space, going_through_differential, rigidity_report, theorem_obstruction,
    vertical_subspace, Embedding, Obstruction, Verdict,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn catalog() -> Vec<LieAlgebra> {
    let mut v = vec![make_heisenberg(), make_euclidean2(), make_solvable_line()];
    for n in 1..=4 {
        v.push(make_abelian(n).unwrap());
    }
    for n in 1..=6 {
        v.push(make_ladder(n).unwrap());
    }
    v.push(dixmier_lister().unwrap().algebra);
    v
}

/// Same algebra in the basis given by the columns of `p`.
fn change_basis(l: &LieAlgebra, p: &Matrix) -> LieAlgebra {
    let n = l.dim();
    let cols = p.columns();
    let mut sc = StructureConstants::new(format!("{}'", l.name()), n);
    for i in 0..n {
        for j in i + 1..n {
            let b = l.bracket(&cols[i], &cols[j]).unwrap();
            let coords = p.solve(&b).expect("p is invertible");
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    sc.add(i, j, k, c).unwrap();
                }
            }
        }
    }
    LieAlgebra::new(sc).unwrap()
}

/// Product of a few elementary shears `I + c E_ij`.
fn random_shear(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut p = Matrix::identity(n);
    for _ in 0..3 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let mut e = Matrix::identity(n);
            e[(i, j)] = q(rng.gen_range(-2..=2));
            p = &p * &e;
        }
    }
    p
}

#[test]
fn derivation_invariants_on_catalog() {
    for l in catalog() {
        let der = derivation_algebra(&l);
        for d in der.ops() {
            assert!(is_derivation(&l, d), "{}", l.name());
        }
        assert!(der.is_closed(), "{}", l.name());
        let inner = inner_derivations(&l);
        assert!(inner.span().is_subspace_of(der.span()).unwrap());
        assert_eq!(inner.dim(), l.dim() - l.center().dim(), "{}", l.name());
    }
}

#[test]
fn three_way_agreement_on_perturbed_nilpotent_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    for trial in 0..50 {
        let n = rng.gen_range(2..=4);
        let gens: Vec<Matrix> = (0..rng.gen_range(1..=2))
            .map(|_| Matrix::from_fn(n, n, |r, c| if c > r { q(rng.gen_range(-3..=3)) } else { q(0) }))
            .collect();
        let h = OperatorAlgebra::generated_by(n, &gens).unwrap();
        let base = semidirect(&h, &make_abelian(n).unwrap()).unwrap();
        let l = change_basis(&base, &random_shear(&mut rng, base.dim()));
        assert!(is_nilpotent(&l));
        let r = is_characteristically_nilpotent(&l).unwrap();
        assert!(r.agree, "trial {trial}: {r:?}");
    }
}

#[test]
fn series_and_quotients_on_catalog() {
    for l in catalog() {
        for series in [lower_central_series(&l), derived_series(&l)] {
            for pair in series.terms.windows(2) {
                assert!(pair[1].dim() < pair[0].dim());
            }
            for t in &series.terms {
                let q = l.quotient(t).unwrap();
                assert!(q.algebra.structure_constants().validate_jacobi().is_empty());
                assert_eq!(q.algebra.dim(), l.dim() - t.dim());
            }
        }
        if is_nilpotent(&l) {
            let v = completely_solvable_flag(&l);
            assert_eq!(v.status, FlagStatus::Yes, "{}", l.name());
            let flag = v.flag.unwrap();
            for pair in flag.windows(2) {
                assert_eq!(pair[1].dim(), pair[0].dim() + 1);
                assert!(pair[0].is_subspace_of(&pair[1]).unwrap());
                assert!(l.is_ideal(&pair[1]).unwrap());
            }
        }
    }
}

#[test]
fn ladder_class_and_semidirect_dimensions() {
    for n in 2..=8 {
        assert_eq!(lower_central_series(&make_ladder(n).unwrap()).length(), Some(n));
    }
    for n in 1..=4 {
        assert_eq!(make_der_semidirect(&make_abelian(n).unwrap()).unwrap().dim(), n * n + n);
    }
    // The shift as a derivation of R^n rebuilds the ladder.
    for n in 2..=5 {
        let shift = Matrix::from_fn(n, n, |r, c| if r == c + 1 { q(1) } else { q(0) });
        let h = OperatorAlgebra::new(n, &[shift]).unwrap();
        let l = semidirect(&h, &make_abelian(n).unwrap()).unwrap();
        assert_eq!(l.structure_constants().entries(), make_ladder(n).unwrap().structure_constants().entries());
    }
}

#[test]
fn der_semidirect_of_char_nilpotent_is_nilpotent() {
    let l = dixmier_lister().unwrap().algebra;
    assert!(is_nilpotent(&make_der_semidirect(&l).unwrap()));
    assert!(!is_nilpotent(&make_der_semidirect(&make_heisenberg()).unwrap()));
}

fn coordinate(l: &LieAlgebra, g: &LieAlgebra, cols: &[usize]) -> Embedding {
    let m = Matrix::from_fn(g.dim(), l.dim(), |r, c| if r == cols[c] { q(1) } else { q(0) });
    check_embedding(l, g, m).unwrap()
}

fn embeddings() -> Vec<Embedding> {
    let h = make_heisenberg();
    let mut v = vec![
        Embedding::identity(&h),
        Embedding::identity(&make_ladder(4).unwrap()),
        Embedding::identity(&make_euclidean2()),
        coordinate(&h, &h.direct_sum(&make_abelian(1).unwrap()), &[0, 1, 2]),
        coordinate(&make_abelian(2).unwrap(), &h, &[1, 2]),
        coordinate(&make_abelian(1).unwrap(), &h, &[2]),
        coordinate(&make_abelian(1).unwrap(), &make_ladder(3).unwrap(), &[0]),
        Embedding::into_der_semidirect(&h).unwrap(),
        Embedding::into_der_semidirect(&dixmier_lister().unwrap().algebra).unwrap(),
    ];
    for n in 2..=5 {
        v.push(coordinate(&make_abelian(n).unwrap(), &make_ladder(n).unwrap(), &(1..=n).collect::<Vec<_>>()));
    }
    v
}

#[test]
fn rigidity_invariants() {
    for e in embeddings() {
        let name = format!("{} -> {}", e.domain().name(), e.codomain().name());
        let r = rigidity_report(&e).unwrap();
        assert!(r.b1_dim <= r.z1_dim && r.vertical_subspace_dim <= r.z1_dim, "{name}");
        assert_eq!(r.gtd_image_dim, r.normalizer_dim - r.centralizer_dim, "{name}");
        assert_eq!(r.vertical.is_rigid(), r.gtd_image_dim == r.der_dim, "{name}");
        assert_eq!(going_through_differential(&e).unwrap().kernel_dim, r.centralizer_dim);

        let z1 = cocycle_space(&e);
        let b1 = coboundary_space(&e);
        let vert = vertical_subspace(&e);
        assert!(b1.is_subspace_of(&z1).unwrap() && vert.is_subspace_of(&z1).unwrap());
        if let Verdict::NotRigid(w) = &r.vertical {
            assert!(z1.contains(w.cocycle()).unwrap() && !b1.contains(w.cocycle()).unwrap(), "{name}");
        }
        if let Verdict::NotRigid(w) = &r.horizontal {
            let sum = b1.sum(&vert).unwrap();
            assert!(z1.contains(w.cocycle()).unwrap() && !sum.contains(w.cocycle()).unwrap(), "{name}");
        }
        if let Verdict::NotRigid(w) = &r.local {
            assert!(z1.contains(w.cocycle()).unwrap() && !b1.contains(w.cocycle()).unwrap(), "{name}");
        }
        assert_eq!(r.local.is_rigid(), r.z1_dim == r.b1_dim);

        if let Obstruction::Obstructed(_) = theorem_obstruction(e.domain(), e.codomain()).unwrap() {
            assert!(!r.vertical.is_rigid(), "{name}: obstructed but vertically rigid");
        }
    }
}

#[test]
fn identity_embeddings_match_derivations() {
    for g in catalog() {
        let r = rigidity_report(&Embedding::identity(&g)).unwrap();
        assert_eq!(r.z1_dim, derivation_algebra(&g).dim(), "{}", g.name());
        assert_eq!(r.b1_dim, inner_derivations(&g).dim(), "{}", g.name());
        assert!(r.horizontal.is_rigid());
        assert!(r.is_ideal);
    }
}

#[test]
fn obstruction_examples() {
    let dl = dixmier_lister().unwrap().algebra;
    let g = make_der_semidirect(&dl).unwrap();
    assert_eq!(theorem_obstruction(&dl, &g).unwrap(), Obstruction::NoObstruction);
    assert!(matches!(
        theorem_obstruction(&make_heisenberg(), &make_ladder(3).unwrap()).unwrap(),
        Obstruction::Obstructed(_)
    ));
    // g with irrational real eigenvalues leaves the flag search undecided.
    let sc = StructureConstants::new("sqrt2", 3).with(0, 1, 2, 1).unwrap().with(0, 2, 1, 2).unwrap();
    let g = LieAlgebra::new(sc).unwrap();
    assert_eq!(theorem_obstruction(&make_euclidean2(), &g).unwrap(), Obstruction::Undecided);
}
