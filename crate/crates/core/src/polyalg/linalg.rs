//! Gaussian elimination over the ground field.

use super::field::{Field, Scalar};
use super::matrix::Matrix;

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix<Scalar>,
    pub pivots: Vec<usize>,
}

impl Matrix<Scalar> {
    pub fn rref(&self) -> Rref {
        let mut a = self.clone();
        let (rows, cols) = a.shape();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a[(r, c)].inv().expect("pivot is nonzero");
            for j in c..cols {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
            for i in 0..rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let factor = a[(i, c)].clone();
                for j in c..cols {
                    let sub = &factor * &a[(r, j)];
                    a[(i, j)] = &a[(i, j)] - &sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let field = self.field();
        let cols = self.cols();
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![field.zero(); cols];
                v[fc] = field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -matrix[(r, fc)].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `M v = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let field = self.field();
        let aug = self.hstack(&Matrix::from_cols(field, self.rows(), &[b.to_vec()])).ok()?;
        let Rref { matrix, pivots } = aug.rref();
        let n = self.cols();
        if pivots.contains(&n) {
            return None;
        }
        let mut v = vec![field.zero(); n];
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = matrix[(r, n)].clone();
        }
        Some(v)
    }
}

/// Rank of a list of vectors of a common length.
pub fn span_rank(field: Field, len: usize, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_cols(field, len, vectors).rank()
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span(field: Field, len: usize, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    let ra = span_rank(field, len, a);
    let rb = span_rank(field, len, b);
    let mut joint = a.to_vec();
    joint.extend_from_slice(b);
    ra == rb && span_rank(field, len, &joint) == ra
}
