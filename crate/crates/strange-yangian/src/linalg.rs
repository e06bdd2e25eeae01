//! Exact linear algebra over the rationals: just enough Gaussian machinery
//! for Gram inversion, rank counts, and expanding elements in a chosen basis.

use crate::scalars::Rational;
use num_traits::{One, Zero};

/// Dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> RatMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        RatMatrix { rows: r, cols: c, data }
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut s = Rational::zero();
                for c in 0..self.cols {
                    let a = self.at(r, c);
                    if !a.is_zero() && !x[c].is_zero() {
                        s += a * &x[c];
                    }
                }
                s
            })
            .collect()
    }

    /// In-place row echelon reduction; returns the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            for c in 0..self.cols {
                let a = self.at(row, c).clone();
                let b = self.at(p, c).clone();
                *self.at_mut(row, c) = b;
                *self.at_mut(p, c) = a;
            }
            let inv = self.at(row, col).recip();
            for c in col..self.cols {
                let v = self.at(row, c) * &inv;
                *self.at_mut(row, c) = v;
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let f = self.at(r, col).clone();
                    for c in col..self.cols {
                        let v = self.at(r, c) - &f * self.at(row, c);
                        *self.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    /// Exact inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = Rational::one();
        }
        let pivots = aug.echelon();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                *inv.at_mut(r, c) = aug.at(r, n + c).clone();
            }
        }
        Some(inv)
    }
}

/// Indices of a maximal linearly independent subset of `vecs`, in order.
pub fn independent_subset(vecs: &[Vec<Rational>]) -> Vec<usize> {
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    let mut lead: Vec<usize> = Vec::new();
    let mut kept = Vec::new();
    for (idx, v) in vecs.iter().enumerate() {
        let mut v = v.clone();
        for (row, &lc) in echelon.iter().zip(lead.iter()) {
            if !v[lc].is_zero() {
                let f = v[lc].clone();
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(lc) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[lc].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            echelon.push(v);
            lead.push(lc);
            kept.push(idx);
        }
    }
    kept
}

/// Expands vectors in the span of a fixed independent column family.
///
/// Precomputes the inverse of the pivot-row square block once so repeated
/// expansions are cheap; `expand` returns `None` when the vector is outside
/// the span.
pub struct SpanSolver {
    dim: usize,
    columns: Vec<Vec<Rational>>,
    pivot_rows: Vec<usize>,
    block_inverse: RatMatrix,
}

impl SpanSolver {
    /// `columns` must be linearly independent; panics otherwise.
    pub fn new(columns: Vec<Vec<Rational>>) -> SpanSolver {
        let m = columns.len();
        let dim = columns.first().map_or(0, |c| c.len());
        let rows: Vec<Vec<Rational>> = (0..dim)
            .map(|r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        let pivot_rows = independent_subset(&rows);
        assert_eq!(pivot_rows.len(), m, "span columns are linearly dependent");
        let mut block = RatMatrix::zeros(m, m);
        for (i, &r) in pivot_rows.iter().enumerate() {
            for j in 0..m {
                *block.at_mut(i, j) = columns[j][r].clone();
            }
        }
        let block_inverse = block.inverse().expect("pivot block is invertible");
        SpanSolver { dim, columns, pivot_rows, block_inverse }
    }

    pub fn expand(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(x.len(), self.dim);
        let rhs: Vec<Rational> = self.pivot_rows.iter().map(|&r| x[r].clone()).collect();
        let coords = self.block_inverse.apply(&rhs);
        // Verify membership: the pivot rows determine the candidate uniquely,
        // the remaining rows must agree.
        for r in 0..self.dim {
            let mut s = Rational::zero();
            for (j, col) in self.columns.iter().enumerate() {
                if !coords[j].is_zero() {
                    s += &coords[j] * &col[r];
                }
            }
            if s != x[r] {
                return None;
            }
        }
        Some(coords)
    }
}
