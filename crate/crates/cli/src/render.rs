//! Exact values as JSON strings and compact text.

use lierigid::exactla::{format_rational, Matrix, Poly, Rational, Subspace};
use lierigid::liealg::LieAlgebra;
use num_traits::{One, Zero};
use serde_json::{json, Value};

pub fn vec_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_rational(x))).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vec_json(m.row(i))).collect())
}

pub fn subspace_json(s: &Subspace) -> Value {
    json!({
        "dim": s.dim(),
        "basis": s.basis().iter().map(|b| vec_json(b)).collect::<Vec<_>>(),
    })
}

pub fn poly_json(p: &Poly) -> Value {
    json!({
        "degree": p.degree(),
        "coefficients_low_to_high": vec_json(p.coeffs()),
    })
}

pub fn matrix_text(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

/// `2*x - 1/2*z` style rendering in the algebra's labels.
pub fn element_text(l: &LieAlgebra, v: &[Rational]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            if c.is_one() {
                l.label(i)
            } else if (-c).is_one() {
                format!("-{}", l.label(i))
            } else {
                format!("{}*{}", format_rational(c), l.label(i))
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

pub fn span_text(l: &LieAlgebra, s: &Subspace) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = s.basis().iter().map(|b| element_text(l, b)).collect();
    format!("span({})", parts.join(", "))
}
