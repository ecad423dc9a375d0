//! Fraction-free row reduction.
//!
//! Rows are scaled to primitive integer vectors and eliminated over `Z`,
//! pivoting on the entry of smallest magnitude. Exactness never depends on the
//! pivot choice; only intermediate entry growth does.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::RationalMatrix;
use super::rational::Rational;

/// An integer echelon form: `pivots[k] = (row, col)` with rows `0..pivots.len()`
/// holding the pivot rows in order of increasing pivot column.
pub(crate) struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

fn primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

fn integer_rows(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| {
            let lcm = (0..m.cols()).fold(BigInt::one(), |l, c| l.lcm(m.get(r, c).denom()));
            let mut row: Vec<BigInt> = (0..m.cols())
                .map(|c| {
                    let x = m.get(r, c);
                    x.numer() * (&lcm / x.denom())
                })
                .collect();
            primitive(&mut row);
            row
        })
        .collect()
}

/// Row-echelon form of `m`, choosing pivots only among the first `pivot_cols` columns.
pub(crate) fn echelon(m: &RationalMatrix, pivot_cols: usize) -> Echelon {
    let mut rows = integer_rows(m);
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        let best = (r..nrows)
            .filter(|&i| !rows[i][c].is_zero())
            .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot.gcd(&row[c]);
            let row_mul = pivot / &g;
            let piv_mul = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                *x = &*x * &row_mul - y * &piv_mul;
            }
            primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { rows, pivots }
}

impl Echelon {
    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Back-substitute for the unknowns in columns `0..ncols`, with right-hand side
    /// taken from column `rhs` (or zero) and the listed free variable set to one.
    pub(crate) fn back_substitute(&self, ncols: usize, rhs: Option<usize>, free: Option<usize>) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); ncols];
        if let Some(f) = free {
            x[f] = Rational::one();
        }
        for (k, &c) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[k];
            let mut acc = match rhs {
                Some(col) => Rational::from_integer(row[col].clone()),
                None => Rational::zero(),
            };
            for j in c + 1..ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc -= &x[j] * Rational::from_integer(row[j].clone());
                }
            }
            x[c] = acc / Rational::from_integer(row[c].clone());
        }
        x
    }
}
