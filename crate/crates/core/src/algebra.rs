//! Finite-dimensional associative algebras over `k` given by structure constants.

use crate::error::{Error, Result};
use crate::polyalg::linalg::span_rank;
use crate::polyalg::{Field, Matrix, Scalar};

/// `table[i][j]` holds the coordinates of `basis_i * basis_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAlgebra {
    field: Field,
    dim: usize,
    table: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
}

impl FiniteAlgebra {
    pub fn new(field: Field, table: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Self> {
        let dim = table.len();
        let well_formed = unit.len() == dim
            && table.iter().all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim));
        if !well_formed {
            return Err(Error::Shape(format!("structure constants must be {dim} x {dim} x {dim}")));
        }
        Ok(FiniteAlgebra { field, dim, table, unit })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.table
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (o, s) in out.iter_mut().zip(&self.table[i][j]) {
                    if !s.is_zero() {
                        *o = &*o + &(&c * s);
                    }
                }
            }
        }
        out
    }

    /// Exhaustive check of `(b_i b_j) b_k = b_i (b_j b_k)`.
    pub fn is_associative(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                (0..self.dim).all(|k| {
                    let left = self.mul(&self.table[i][j], &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), &self.table[j][k]);
                    left == right
                })
            })
        })
    }

    pub fn unit_law_holds(&self) -> bool {
        (0..self.dim).all(|i| {
            let b = self.basis_vector(i);
            self.mul(&self.unit, &b) == b && self.mul(&b, &self.unit) == b
        })
    }

    /// A basis of the two-sided ideal generated by `g`, as a span closed under
    /// left and right multiplication by basis elements.
    pub fn ideal_closure(&self, g: &[Scalar]) -> Vec<Vec<Scalar>> {
        let mut span: Vec<Vec<Scalar>> = Vec::new();
        let mut frontier = vec![g.to_vec()];
        let mut rank = 0;
        while let Some(v) = frontier.pop() {
            span.push(v);
            let r = span_rank(self.field, self.dim, &span);
            if r == rank {
                span.pop();
                continue;
            }
            rank = r;
            let v = span.last().expect("just pushed").clone();
            for i in 0..self.dim {
                let b = self.basis_vector(i);
                frontier.push(self.mul(&b, &v));
                frontier.push(self.mul(&v, &b));
            }
        }
        span
    }

    pub fn ideal_dimension(&self, g: &[Scalar]) -> usize {
        self.ideal_closure(g).len()
    }

    /// Every element of `test` generates the whole algebra as a two-sided ideal.
    pub fn generates_whole_algebra(&self, test: &[Vec<Scalar>]) -> bool {
        test.iter().all(|g| self.ideal_dimension(g) == self.dim)
    }

    /// The basis-element criterion: each basis element generates the whole algebra.
    pub fn basis_generates(&self) -> bool {
        let basis: Vec<Vec<Scalar>> = (0..self.dim).map(|i| self.basis_vector(i)).collect();
        self.generates_whole_algebra(&basis)
    }

    /// Left multiplication by `a` as a `dim x dim` matrix on coordinates.
    pub fn left_mul_matrix(&self, a: &[Scalar]) -> Matrix<Scalar> {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Matrix::from_cols(self.field, self.dim, &cols)
    }

    /// Whether the center is `k * 1`.
    pub fn center_is_scalars(&self) -> bool {
        let mut rows = Matrix::zeros(self.field, self.dim * self.dim, self.dim);
        for g in 0..self.dim {
            for j in 0..self.dim {
                let zg = self.mul(&self.basis_vector(j), &self.basis_vector(g));
                let gz = self.mul(&self.basis_vector(g), &self.basis_vector(j));
                for k in 0..self.dim {
                    rows[(g * self.dim + k, j)] = &zg[k] - &gz[k];
                }
            }
        }
        let ns = rows.nullspace();
        ns.len() == 1 && span_rank(self.field, self.dim, &[ns[0].clone(), self.unit.clone()]) == 1
    }
}
