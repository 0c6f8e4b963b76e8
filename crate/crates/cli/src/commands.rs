use std::fmt::Write as _;
use std::path::Path;

use lierigid::catalog::{load_entry, resolve, resolve_with_params, verify_claims, CatalogEntry, Provenance};
use lierigid::derivations::{derivation_algebra, inner_derivations, is_characteristically_nilpotent};
use lierigid::exactla::{Matrix, Subspace};
use lierigid::format::{AlgebraFile, AlgebraRef, EmbeddingFile};
use lierigid::liealg::{completely_solvable_flag, derived_series, lower_central_series, FlagStatus, FlagWitness, LieAlgebra};
use lierigid::rigidity::{check_embedding, rigidity_report, theorem_obstruction, unique_codim1_abelian, Obstruction, Verdict, Witness};
use lierigid::{Error, Result};
use serde_json::{json, Value};

use crate::render::{element_text, matrix_json, matrix_text, poly_json, span_text, subspace_json, vec_json};

/// A finished report in both renderings.
pub struct Output {
    pub text: String,
    pub machine: Value,
}

/// An algebra file, or `catalog:<key>`.
fn load(arg: &str) -> Result<CatalogEntry> {
    match arg.strip_prefix("catalog:") {
        Some(key) => resolve(key),
        None => load_entry(Path::new(arg)),
    }
}

fn load_ref(r: &AlgebraRef) -> Result<LieAlgebra> {
    match r {
        AlgebraRef::Key(key) => Ok(resolve(key)?.algebra),
        AlgebraRef::Inline(file) => {
            let l = file.to_algebra()?;
            verify_claims(&l, &file.claims)?;
            Ok(l)
        }
    }
}

fn provenance_json(p: &Provenance) -> Value {
    match p {
        Provenance::Generated => json!("generated"),
        Provenance::DataFile(path) => json!({ "data_file": path }),
    }
}

fn status_word(s: FlagStatus) -> &'static str {
    match s {
        FlagStatus::Yes => "yes",
        FlagStatus::No => "no",
        FlagStatus::Undecided => "undecided",
    }
}

pub fn check(arg: &str) -> Result<Output> {
    let entry = load(arg)?;
    let l = &entry.algebra;
    let lcs = lower_central_series(l);
    let ds = derived_series(l);
    let flag = completely_solvable_flag(l);
    let center = l.center();

    let nilpotent = match lcs.length() {
        Some(c) => format!("true (class {c})"),
        None => "false".into(),
    };
    let solvable = match ds.length() {
        Some(c) => format!("true (derived length {c})"),
        None => "false".into(),
    };
    let mut text = format!(
        "jacobi: ok, nilpotent: {nilpotent}, completely_solvable: {}\n",
        status_word(flag.status)
    );
    let dims = |d: Vec<usize>| d.iter().map(usize::to_string).collect::<Vec<_>>().join(", ");
    writeln!(text, "name: {}, dim: {}, solvable: {solvable}", l.name(), l.dim()).unwrap();
    writeln!(text, "lower central series dims: {}", dims(lcs.dims())).unwrap();
    writeln!(text, "derived series dims: {}", dims(ds.dims())).unwrap();
    writeln!(text, "center: {}", span_text(l, &center)).unwrap();

    let generators: Vec<Vec<_>> = flag
        .flag
        .as_ref()
        .map(|f| {
            f.windows(2)
                .map(|w| w[1].first_outside(&w[0]).expect("same ambient").expect("flag grows"))
                .collect()
        })
        .unwrap_or_default();
    if !generators.is_empty() {
        let g: Vec<String> = generators.iter().map(|v| element_text(l, v)).collect();
        writeln!(text, "flag generators: {}", g.join(", ")).unwrap();
    }
    let witness = match &flag.witness {
        Some(FlagWitness::NotSolvable) => {
            writeln!(text, "witness: derived series does not reach 0").unwrap();
            json!({ "kind": "not_solvable" })
        }
        Some(FlagWitness::NonRealEigenvalue { element, factor }) => {
            writeln!(text, "witness: ad({}) has characteristic factor {factor} with non-real roots", l.label(*element)).unwrap();
            json!({ "kind": "non_real_eigenvalue", "element": element, "label": l.label(*element), "factor": poly_json(factor) })
        }
        None => Value::Null,
    };
    if !entry.claims.is_empty() {
        let c: Vec<&str> = entry.claims.iter().map(|c| c.as_str()).collect();
        writeln!(text, "claims verified: {}", c.join(", ")).unwrap();
    }

    let machine = json!({
        "name": l.name(),
        "dim": l.dim(),
        "provenance": provenance_json(&entry.provenance),
        "jacobi": "ok",
        "nilpotent": lcs.terminates(),
        "nilpotency_class": lcs.length(),
        "solvable": ds.terminates(),
        "derived_length": ds.length(),
        "lower_central_dims": lcs.dims(),
        "derived_dims": ds.dims(),
        "center": subspace_json(&center),
        "completely_solvable": {
            "status": status_word(flag.status),
            "flag_generators": generators.iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
            "witness": witness,
        },
        "claims_verified": entry.claims,
        "brackets": AlgebraFile::from_algebra(l, Vec::new()).brackets,
    });
    Ok(Output { text, machine })
}

pub fn derivations(arg: &str) -> Result<Output> {
    let l = load(arg)?.algebra;
    let der = derivation_algebra(&l);
    let inner = inner_derivations(&l);
    let outer = der.dim() - inner.dim();
    let mut text = format!("dim Der: {}, inner: {}, outer: {outer}\n", der.dim(), inner.dim());
    for (i, d) in der.ops().iter().enumerate() {
        writeln!(text, "D{i} = {}", matrix_text(d)).unwrap();
    }
    let machine = json!({
        "name": l.name(),
        "dim": l.dim(),
        "der_dim": der.dim(),
        "inner_dim": inner.dim(),
        "outer_dim": outer,
        "basis": der.ops().iter().map(matrix_json).collect::<Vec<_>>(),
        "inner_basis": inner.ops().iter().map(matrix_json).collect::<Vec<_>>(),
    });
    Ok(Output { text, machine })
}

pub fn char_nilpotent(arg: &str) -> Result<Output> {
    let l = load(arg)?.algebra;
    let r = is_characteristically_nilpotent(&l)?;
    if !r.agree {
        return Err(Error::Internal(format!("characteristic nilpotency checks disagree: {r:?}")));
    }
    let text = format!(
        "characteristically_nilpotent: {}\nDer nilpotent: {}, all derivations nilpotent: {}, Der ⋉ L nilpotent: {}, dim Der: {}\n",
        r.via_der_nilpotent, r.via_der_nilpotent, r.via_all_elements_nilpotent, r.via_semidirect_nilpotent, r.der_dim
    );
    let machine = json!({
        "name": l.name(),
        "dim": l.dim(),
        "characteristically_nilpotent": r.via_der_nilpotent,
        "report": r,
    });
    Ok(Output { text, machine })
}

fn emit_algebra(g: &LieAlgebra, out: Option<&Path>, extra: Value) -> Result<Output> {
    let file = AlgebraFile::from_algebra(g, Vec::new());
    let text = match out {
        Some(path) => {
            file.write(path)?;
            format!("wrote {}: {} (dim {})\n", path.display(), g.name(), g.dim())
        }
        None => file.to_json(),
    };
    let mut machine = json!({
        "name": g.name(),
        "dim": g.dim(),
        "out": out.map(|p| p.display().to_string()),
        "algebra": serde_json::to_value(&file).expect("algebra files serialize"),
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut machine, extra) {
        m.extend(e);
    }
    Ok(Output { text, machine })
}

pub fn semidirect(arg: &str, out: Option<&Path>) -> Result<Output> {
    let l = load(arg)?.algebra;
    let g = lierigid::catalog::make_der_semidirect(&l)?;
    emit_algebra(&g, out, json!({ "der_dim": g.dim() - l.dim() }))
}

pub fn catalog(key: &str, params: &[i64], out: Option<&Path>) -> Result<Output> {
    let entry = resolve_with_params(key, params)?;
    emit_algebra(&entry.algebra, out, json!({ "key": entry.key, "params": entry.params }))
}

fn verdict_json(v: &Verdict, ng: usize, nl: usize) -> Value {
    let witness = v.witness().map(|w| {
        let cocycle = Matrix::from_col_major(ng, nl, w.cocycle()).expect("witness lives in Hom(l, g)");
        match w {
            Witness::Derivation { derivation, .. } => json!({
                "kind": "derivation",
                "derivation": matrix_json(derivation),
                "cocycle": matrix_json(&cocycle),
            }),
            Witness::Cocycle { .. } => json!({ "kind": "cocycle", "cocycle": matrix_json(&cocycle) }),
        }
    });
    json!({ "status": v.name(), "witness": witness })
}

fn verdict_text(name: &str, v: &Verdict, ng: usize, nl: usize) -> String {
    match v.witness() {
        None => format!("{name}: {}\n", v.name()),
        Some(Witness::Derivation { derivation, .. }) => {
            format!("{name}: NotRigid\n  witness derivation D with phi∘D not a coboundary: {}\n", matrix_text(derivation))
        }
        Some(w @ Witness::Cocycle { .. }) => {
            let c = Matrix::from_col_major(ng, nl, w.cocycle()).expect("witness lives in Hom(l, g)");
            format!("{name}: NotRigid\n  witness cocycle: {}\n", matrix_text(&c))
        }
    }
}

pub fn rigidity(path: &Path) -> Result<Output> {
    let file = EmbeddingFile::read(path)?;
    let l = load_ref(&file.domain)?;
    let g = load_ref(&file.codomain)?;
    let m = file.parse_matrix(g.dim(), l.dim())?;
    let e = check_embedding(&l, &g, m)?;
    let r = rigidity_report(&e)?;
    let obstruction = theorem_obstruction(&l, &g)?;
    let (ng, nl) = (g.dim(), l.dim());

    let mut text = format!("embedding: {} -> {}\n", l.name(), g.name());
    writeln!(
        text,
        "is_ideal: {}, normalizer_dim: {}, centralizer_dim: {}",
        r.is_ideal, r.normalizer_dim, r.centralizer_dim
    )
    .unwrap();
    writeln!(text, "dim Der: {}, gtd_image_dim: {}", r.der_dim, r.gtd_image_dim).unwrap();
    writeln!(
        text,
        "z1_dim: {}, b1_dim: {}, vertical_subspace_dim: {}, b1_plus_vertical_dim: {}",
        r.z1_dim, r.b1_dim, r.vertical_subspace_dim, r.b1_plus_vertical_dim
    )
    .unwrap();
    text += &verdict_text("vertical", &r.vertical, ng, nl);
    text += &verdict_text("horizontal", &r.horizontal, ng, nl);
    text += &verdict_text("local", &r.local, ng, nl);
    let obstruction_text = match obstruction {
        Obstruction::Obstructed(reason) => format!("obstructed ({})", serde_json::to_value(reason).expect("serializes").as_str().unwrap_or("")),
        Obstruction::NoObstruction => "none".into(),
        Obstruction::Undecided => "undecided".into(),
    };
    writeln!(text, "structural obstruction to vertical rigidity: {obstruction_text}").unwrap();

    let machine = json!({
        "domain": l.name(),
        "codomain": g.name(),
        "is_ideal": r.is_ideal,
        "normalizer_dim": r.normalizer_dim,
        "centralizer_dim": r.centralizer_dim,
        "der_dim": r.der_dim,
        "gtd_image_dim": r.gtd_image_dim,
        "z1_dim": r.z1_dim,
        "b1_dim": r.b1_dim,
        "vertical_subspace_dim": r.vertical_subspace_dim,
        "b1_plus_vertical_dim": r.b1_plus_vertical_dim,
        "vertical": verdict_json(&r.vertical, ng, nl),
        "horizontal": verdict_json(&r.horizontal, ng, nl),
        "local": verdict_json(&r.local, ng, nl),
        "obstruction": obstruction,
    });
    Ok(Output { text, machine })
}

fn parse_ideal(spec: &str, dim: usize) -> Result<Subspace> {
    let indices: Vec<usize> = if spec == "last-n" {
        if dim == 0 {
            return Err(Error::InvalidParameter("`last-n` needs a nonzero dimension".into()));
        }
        (1..dim).collect()
    } else {
        spec.split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("invalid ideal index `{s}`")))
            })
            .collect::<Result<_>>()?
    };
    if let Some(&bad) = indices.iter().find(|&&i| i >= dim) {
        return Err(Error::InvalidParameter(format!("ideal index {bad} out of range for dimension {dim}")));
    }
    Subspace::coordinate(dim, &indices)
}

pub fn abelian_unique(arg: &str, ideal: &str) -> Result<Output> {
    let l = load(arg)?.algebra;
    let a = parse_ideal(ideal, l.dim())?;
    let u = unique_codim1_abelian(&l, &a)?;
    let mut text = format!("unique: {}, kernel_dim: {}\n", u.unique, u.kernel_dim);
    writeln!(text, "ideal: {}, x0: {}", span_text(&l, &a), element_text(&l, &u.x0)).unwrap();
    if let Some(w) = &u.alternative {
        writeln!(text, "second abelian subalgebra: {}", span_text(&l, w)).unwrap();
    }
    let machine = json!({
        "name": l.name(),
        "dim": l.dim(),
        "ideal": subspace_json(&a),
        "unique": u.unique,
        "kernel_dim": u.kernel_dim,
        "x0": vec_json(&u.x0),
        "alternative": u.alternative.as_ref().map(subspace_json),
    });
    Ok(Output { text, machine })
}
