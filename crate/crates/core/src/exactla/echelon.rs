use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, Subspace};

/// Reduced row echelon form of a row list: every pivot is 1, pivot columns
/// are strictly increasing and all other entries in a pivot column vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub ncols: usize,
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut it = self.pivots.iter().peekable();
        (0..self.ncols)
            .filter(|c| {
                if it.peek() == Some(&c) {
                    it.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }
}

/// Incremental fraction-free elimination.
///
/// Rows are stored as primitive integer vectors keyed by their leading
/// column. Each inserted row is reduced against the stored rows with the
/// cross-multiplication step `r <- p[c] r - r[c] p` (divided by the gcd of
/// the two leading entries) and then divided by its content, so entries stay
/// integral and small. Reduction to rational RREF happens once in
/// [`EchelonBuilder::finish`].
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    ncols: usize,
    rows: BTreeMap<usize, Vec<BigInt>>,
}

impl EchelonBuilder {
    pub fn new(ncols: usize) -> Self {
        EchelonBuilder {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn push(&mut self, row: &[Rational]) -> bool {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        self.push_int(integer_row(row))
    }

    /// Inserts an integer row; returns true if the rank grew.
    pub fn push_int(&mut self, mut row: Vec<BigInt>) -> bool {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        let mut start = 0;
        loop {
            let Some(lead) = (start..self.ncols).find(|&c| !row[c].is_zero()) else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(pivot_row) => {
                    eliminate(&mut row, pivot_row, lead, lead);
                    make_primitive(&mut row, lead + 1);
                    start = lead + 1;
                }
                None => {
                    make_primitive(&mut row, lead);
                    if row[lead].is_negative() {
                        for x in row[lead..].iter_mut() {
                            *x = -std::mem::take(x);
                        }
                    }
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Solution space of the homogeneous system formed by the inserted rows.
    pub fn kernel(self) -> Subspace {
        let e = self.finish();
        let ncols = e.ncols;
        let vectors: Vec<Vec<Rational>> = e
            .free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Rational::zero(); ncols];
                v[f] = Rational::one();
                for (row, &p) in e.rows.iter().zip(&e.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect();
        Subspace::span(ncols, &vectors).expect("kernel vectors have ambient length")
    }

    pub fn finish(self) -> Echelon {
        let ncols = self.ncols;
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut int_rows: Vec<Vec<BigInt>> = self.rows.into_values().collect();
        // Back substitution, bottom row first, still fraction free.
        for i in (0..int_rows.len()).rev() {
            let (upper, lower) = int_rows.split_at_mut(i + 1);
            let row = &mut upper[i];
            for (k, pivot_row) in lower.iter().enumerate() {
                let c = pivots[i + 1 + k];
                if !row[c].is_zero() {
                    eliminate(row, pivot_row, c, pivots[i]);
                }
            }
            make_primitive(row, pivots[i]);
        }
        let rows = int_rows
            .into_iter()
            .zip(&pivots)
            .map(|(row, &p)| {
                let lead = row[p].clone();
                row.into_iter()
                    .map(|x| Rational::new(x, lead.clone()))
                    .collect()
            })
            .collect();
        Echelon {
            ncols,
            rows,
            pivots,
        }
    }
}

/// Reduced row echelon form of the given rows.
pub fn reduced_echelon(rows: &[Vec<Rational>], ncols: usize) -> Echelon {
    let mut builder = EchelonBuilder::new(ncols);
    for row in rows {
        builder.push(row);
        if builder.is_full() {
            break;
        }
    }
    builder.finish()
}

/// Scales a rational row by the lcm of its denominators.
pub(crate) fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                x.numer() * (&lcm / x.denom())
            }
        })
        .collect()
}

/// `row <- a*row - b*pivot_row` with `a, b` chosen to cancel column `c`.
/// `row` is zero before `from` and `pivot_row` is zero before `c`.
fn eliminate(row: &mut [BigInt], pivot_row: &[BigInt], c: usize, from: usize) {
    let g = row[c].gcd(&pivot_row[c]);
    let a = &pivot_row[c] / &g;
    let b = &row[c] / &g;
    let a_is_one = a.is_one();
    if !a_is_one {
        for x in row[from..c].iter_mut() {
            if !x.is_zero() {
                *x *= &a;
            }
        }
    }
    for k in c..row.len() {
        let p = &pivot_row[k];
        if p.is_zero() {
            if !a_is_one && !row[k].is_zero() {
                row[k] *= &a;
            }
        } else if a_is_one {
            row[k] -= &b * p;
        } else {
            row[k] = &a * &row[k] - &b * p;
        }
    }
    debug_assert!(row[c].is_zero());
}

fn make_primitive(row: &mut [BigInt], from: usize) {
    let mut g = BigInt::zero();
    for x in row[from..].iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row[from..].iter_mut() {
        if !x.is_zero() {
            *x /= &g;
        }
    }
}
