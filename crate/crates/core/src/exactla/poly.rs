use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::echelon::integer_row;
use super::{format_rational, Rational};

/// Univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

/// Rational roots of a characteristic polynomial with multiplicities, plus
/// the factor left over once they are divided out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenSplit {
    /// Distinct rational roots in ascending order.
    pub rational_roots: Vec<(Rational, usize)>,
    /// Product of the remaining factors; has no rational roots.
    pub residual: Poly,
}

impl EigenSplit {
    pub fn residual_degree(&self) -> usize {
        self.residual.degree()
    }

    /// True when the residual factor has a root outside the reals.
    pub fn has_nonreal_roots(&self) -> bool {
        self.residual.has_nonreal_roots()
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn one() -> Self {
        Poly::new(vec![Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lead = d.leading();
        if r.len() < d.coeffs.len() {
            return (Poly::new(Vec::new()), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    fn monic(&self) -> Poly {
        let l = self.leading();
        Poly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Number of distinct real roots, by a Sturm sequence evaluated at the
    /// two infinities.
    pub fn real_root_count(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(Poly::new(r.coeffs.iter().map(|c| -c).collect()));
        }
        let sign_changes = |signs: Vec<bool>| signs.windows(2).filter(|w| w[0] != w[1]).count();
        let at_pos: Vec<bool> = seq.iter().map(|p| p.leading().is_positive()).collect();
        let at_neg: Vec<bool> = seq
            .iter()
            .map(|p| p.leading().is_positive() == (p.degree() % 2 == 0))
            .collect();
        sign_changes(at_neg) - sign_changes(at_pos)
    }

    pub fn has_nonreal_roots(&self) -> bool {
        let sf = self.squarefree_part();
        sf.real_root_count() < sf.degree()
    }

    /// Splits off all rational roots.
    ///
    /// Roots of the primitive integer multiple `a_d x^d + ... + a_0` with
    /// `a_0 != 0` have the form `p/q` with `p | a_0` and `q | a_d`; every
    /// candidate is tested exactly and divided out as often as it vanishes.
    pub fn eigen_split(&self) -> EigenSplit {
        assert!(!self.is_zero(), "zero polynomial has no root decomposition");
        let mut roots = Vec::new();
        let zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let mut rest = Poly::new(self.coeffs[zeros..].to_vec());
        if zeros > 0 {
            roots.push((Rational::zero(), zeros));
        }
        if rest.degree() > 0 {
            let ints = integer_row(&rest.coeffs);
            let a0 = ints[0].abs().to_biguint().expect("absolute value");
            let ad = ints[ints.len() - 1].abs().to_biguint().expect("absolute value");
            let mut candidates: Vec<Rational> = Vec::new();
            for p in divisors(&a0) {
                for q in divisors(&ad) {
                    let r = Rational::new(BigInt::from(p.clone()), BigInt::from(q));
                    candidates.push(-r.clone());
                    candidates.push(r);
                }
            }
            candidates.sort();
            candidates.dedup();
            for r in candidates {
                let mut mult = 0;
                while rest.degree() > 0 && rest.eval(&r).is_zero() {
                    rest = rest.div_rem(&Poly::new(vec![-r.clone(), Rational::one()])).0;
                    mult += 1;
                }
                if mult > 0 {
                    roots.push((r, mult));
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        EigenSplit {
            rational_roots: roots,
            residual: rest.monic(),
        }
    }
}

/// All positive divisors, ascending, by trial division.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    if n.is_zero() {
        return Vec::new();
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    match n.to_u128() {
        Some(mut m) => {
            let mut d: u128 = 2;
            while d * d <= m {
                let mut e = 0;
                while m % d == 0 {
                    m /= d;
                    e += 1;
                }
                if e > 0 {
                    factors.push((BigUint::from(d), e));
                }
                d += if d == 2 { 1 } else { 2 };
            }
            if m > 1 {
                factors.push((BigUint::from(m), 1));
            }
        }
        None => {
            let mut m = n.clone();
            let mut d = BigUint::from(2u32);
            while &d * &d <= m {
                let mut e = 0;
                while (&m % &d).is_zero() {
                    m /= &d;
                    e += 1;
                }
                if e > 0 {
                    factors.push((d.clone(), e));
                }
                d += 1u32;
            }
            if m > BigUint::one() {
                factors.push((m, 1));
            }
        }
    }
    let mut out = vec![BigUint::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    debug_assert!(out.iter().all(|d| n.is_multiple_of(d)));
    out
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            let coeff = if a.is_one() && k > 0 { String::new() } else { format_rational(&a) };
            let var = match k {
                0 => String::new(),
                1 => "λ".to_string(),
                _ => format!("λ^{k}"),
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&coeff);
            out.push_str(&var);
        }
        f.write_str(&out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn divisor_lists() {
        let d: Vec<u32> = divisors(&BigUint::from(12u32)).iter().map(|x| x.to_u32().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(&BigUint::from(1u32)), vec![BigUint::one()]);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (2x - 1)^2 (x + 3) (x^2 + 1)
        let f = p(&[-1, 2]).mul(&p(&[-1, 2])).mul(&p(&[3, 1])).mul(&p(&[1, 0, 1]));
        let s = f.eigen_split();
        assert_eq!(s.rational_roots, vec![(rat(-3), 1), (Rational::new(1.into(), 2.into()), 2)]);
        assert_eq!(s.residual, p(&[1, 0, 1]));
        assert!(s.has_nonreal_roots());
    }

    #[test]
    fn irrational_real_roots_are_not_nonreal() {
        // x^2 - 2
        let s = p(&[-2, 0, 1]).eigen_split();
        assert!(s.rational_roots.is_empty());
        assert_eq!(s.residual_degree(), 2);
        assert!(!s.has_nonreal_roots());
        assert_eq!(p(&[-2, 0, 1]).real_root_count(), 2);
    }

    #[test]
    fn sturm_counts() {
        // (x^2 + 1)(x - 1)(x - 2)
        let f = p(&[1, 0, 1]).mul(&p(&[-1, 1])).mul(&p(&[-2, 1]));
        assert_eq!(f.real_root_count(), 2);
        // x^3 - 3x + 1 has three real roots
        assert_eq!(p(&[1, -3, 0, 1]).real_root_count(), 3);
        assert_eq!(p(&[1, 0, 0, 1]).squarefree_part().real_root_count(), 1);
    }

    #[test]
    fn squarefree_of_powers() {
        let f = p(&[1, 0, 1]).mul(&p(&[1, 0, 1])).mul(&p(&[-1, 1]));
        assert_eq!(f.squarefree_part(), p(&[1, 0, 1]).mul(&p(&[-1, 1])));
    }
}
