//! Exact linear algebra over the rationals.
//!
//! Everything here works on [`Rational`] entries; there is no floating point
//! anywhere in the crate. Row reduction is fraction free: rows are scaled to
//! primitive integer vectors before elimination, and only the final reduced
//! echelon form is converted back to rationals.

mod echelon;
mod matrix;
mod poly;
mod subspace;

pub use echelon::{reduced_echelon, Echelon, EchelonBuilder};
pub use matrix::Matrix;
pub use poly::{EigenSplit, Poly};
pub use subspace::Subspace;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational scalar.
pub type Rational = num_rational::BigRational;

/// Parses `"p/q"` or `"p"` into a rational. Denominators must be nonzero.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += a * x`
pub fn axpy(y: &mut [Rational], a: &Rational, x: &[Rational]) {
    debug_assert_eq!(y.len(), x.len());
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn format_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

pub(crate) fn check_len(v: &[Rational], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    Ok(())
}

/// Solution space of the homogeneous system whose equations are `rows`.
/// Rows are consumed one at a time, so large sparse systems never need to be
/// materialized as a matrix.
pub fn kernel_of_rows<I>(rows: I, ncols: usize) -> Subspace
where
    I: IntoIterator<Item = Vec<Rational>>,
{
    let mut builder = EchelonBuilder::new(ncols);
    for row in rows {
        if is_zero_vec(&row) {
            continue;
        }
        builder.push(&row);
        if builder.is_full() {
            break;
        }
    }
    builder.kernel()
}

/// Rank of a matrix.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Kernel of a matrix as a canonical subspace of the column space.
pub fn nullspace(m: &Matrix) -> Subspace {
    m.nullspace()
}

pub fn is_nilpotent_matrix(m: &Matrix) -> Result<bool> {
    m.is_nilpotent()
}

pub fn rational_eigen_split(m: &Matrix) -> Result<EigenSplit> {
    m.rational_eigen_split()
}

pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

pub fn contains(a: &Subspace, v: &[Rational]) -> Result<bool> {
    a.contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational(" -4 ").unwrap(), rat(-4));
        assert_eq!(format_rational(&parse_rational("-6/4").unwrap()), "-3/2");
        assert_eq!(format_rational(&rat(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }
}
