//! Exact Gaussian elimination over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A reduced row echelon form built one row at a time.
///
/// Rows are inserted in the caller's order; each new row is reduced against
/// the existing pivots and, if independent, becomes a pivot row at its first
/// nonzero column. The stored rows are always fully reduced, so the result is
/// the unique RREF of the rows inserted so far.
#[derive(Debug, Clone)]
pub struct Echelon {
    cols: usize,
    // sorted by pivot column
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Inserts an integer row; returns `true` when it raised the rank.
    pub fn insert_integer_row(&mut self, row: &[BigInt]) -> bool {
        let row = row
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        self.insert(row)
    }

    pub fn insert(&mut self, mut row: Vec<BigRational>) -> bool {
        assert_eq!(row.len(), self.cols, "row length must match column count");
        for (pivot, prow) in &self.rows {
            if row[*pivot].is_zero() {
                continue;
            }
            let factor = row[*pivot].clone();
            axpy(&mut row, &factor, prow, *pivot);
        }
        let Some(pivot) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[pivot].recip();
        for x in row.iter_mut().skip(pivot) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, prow) in self.rows.iter_mut() {
            if prow[pivot].is_zero() {
                continue;
            }
            let factor = prow[pivot].clone();
            axpy(prow, &factor, &row, pivot);
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, row));
        true
    }

    /// Basis of `{x : R x = 0}`, one vector per free column in ascending order.
    ///
    /// The vector for free column `f` has `x_f = 1`, zero on the other free
    /// columns, and `x_p = -R[p][f]` on each pivot column `p`.
    pub fn nullspace_basis(&self) -> Vec<Vec<BigRational>> {
        let mut is_pivot = vec![false; self.cols];
        for (p, _) in &self.rows {
            is_pivot[*p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (p, prow) in &self.rows {
                    v[*p] = -prow[f].clone();
                }
                v
            })
            .collect()
    }
}

// row -= factor * other, for columns from `start` on (other is zero before it)
fn axpy(row: &mut [BigRational], factor: &BigRational, other: &[BigRational], start: usize) {
    for (x, y) in row.iter_mut().zip(other).skip(start) {
        if !y.is_zero() {
            *x -= factor * y;
        }
    }
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Rational basis of the solution space of `rows · x = 0` over `cols` unknowns.
pub fn nullspace(rows: &[Vec<BigInt>], cols: usize) -> (Vec<Vec<BigRational>>, usize) {
    let mut ech = Echelon::new(cols);
    for row in rows {
        ech.insert_integer_row(row);
    }
    (ech.nullspace_basis(), ech.rank())
}
