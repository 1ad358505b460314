//! Dense matrices over a [`Ring`], with determinants and characteristic
//! polynomials that avoid division where the ring has none.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use super::field::{Field, Scalar};
use super::poly::{Poly, XPoly, XTPoly};
use super::ring::{ExactDiv, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<R>,
}

/// A matrix over `k[x]`.
pub type PolyMatrix = Matrix<XPoly>;

impl<R: Ring> Matrix<R> {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, data: vec![R::zero(field); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = R::one(field);
        }
        m
    }

    /// Build from row vectors; every row must have the same length.
    pub fn from_rows(field: Field, rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, field, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, field, data }
    }

    /// Build from column vectors of equal length `rows`.
    pub fn from_cols(field: Field, rows: usize, cols: &[Vec<R>]) -> Self {
        Self::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<R> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data: self.data.iter().map(f).collect() }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let acc = std::mem::replace(&mut out[(i, j)], R::zero(self.field));
                    out[(i, j)] = acc + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a.clone() - b.clone())
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&R, &R) -> R) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::Shape(format!("{:?} vs {:?}", self.shape(), rhs.shape())));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, field: self.field, data })
    }

    pub fn mul_elem(&self, c: &R) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(R::zero(self.field), |acc, j| acc + self[(i, j)].clone() * v[j].clone())
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Block matrix `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        Ok(Self::from_fn(self.field, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        }))
    }

    /// Block matrix `[self ; rhs]`.
    pub fn vstack(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.cols {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        Ok(Self::from_fn(self.field, self.rows + rhs.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                rhs[(i - self.rows, j)].clone()
            }
        }))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.field, rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Determinant by Laplace expansion along the first row. Exponential;
    /// meant for small matrices and as an independent check.
    pub fn det_cofactor(&self) -> Result<R> {
        self.require_square()?;
        Ok(laplace(self, &(0..self.cols).collect::<Vec<_>>(), 0))
    }

    /// Characteristic polynomial `det(t*I - M)` by Berkowitz's algorithm,
    /// which uses only ring operations. Ascending coefficients, monic.
    pub fn char_poly_coeffs(&self) -> Result<Vec<R>> {
        self.require_square()?;
        let n = self.rows;
        let f = self.field;
        // c holds the coefficients of the char poly of the leading r x r block,
        // in descending order.
        let mut c: Vec<R> = vec![R::one(f)];
        for r in 0..n {
            // partition leading (r+1)x(r+1) block as [[A, R],[C, a]]
            let a = self[(r, r)].clone();
            let row: Vec<R> = (0..r).map(|j| self[(r, j)].clone()).collect();
            let col: Vec<R> = (0..r).map(|i| self[(i, r)].clone()).collect();
            let block = self.submatrix(&(0..r).collect::<Vec<_>>(), &(0..r).collect::<Vec<_>>());
            // Toeplitz column: 1, -a, -R C, -R A C, ..., -R A^{r-1} C
            let mut toe = vec![R::one(f), -a];
            let mut v = col;
            for _ in 0..r {
                let dot = row.iter().zip(&v).fold(R::zero(f), |acc, (x, y)| acc + x.clone() * y.clone());
                toe.push(-dot);
                v = block.mul_vec(&v);
            }
            let mut next = vec![R::zero(f); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut acc = R::zero(f);
                for (j, cj) in c.iter().enumerate() {
                    if i >= j {
                        acc = acc + toe[i - j].clone() * cj.clone();
                    }
                }
                *slot = acc;
            }
            c = next;
        }
        c.reverse();
        Ok(c)
    }

    /// `f(M)` for a polynomial with coefficients in the entry ring.
    pub fn eval_poly(&self, f: &Poly<R>) -> Result<Self> {
        self.require_square()?;
        let mut acc = Self::zeros(self.field, self.rows, self.cols);
        for c in f.coeffs().iter().rev() {
            acc = acc.try_mul(self)?;
            for i in 0..self.rows {
                let cur = std::mem::replace(&mut acc[(i, i)], R::zero(self.field));
                acc[(i, i)] = cur + c.clone();
            }
        }
        Ok(acc)
    }
}

fn laplace<R: Ring>(m: &Matrix<R>, cols: &[usize], row: usize) -> R {
    if cols.is_empty() {
        return R::one(m.field);
    }
    let mut acc = R::zero(m.field);
    for (k, &c) in cols.iter().enumerate() {
        let e = &m[(row, c)];
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = e.clone() * laplace(m, &rest, row + 1);
        acc = if k % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

impl<R: ExactDiv> Matrix<R> {
    /// Fraction-free Gaussian elimination (Bareiss) determinant.
    pub fn det(&self) -> Result<R> {
        self.require_square()?;
        let n = self.rows;
        let f = self.field;
        if n == 0 {
            return Ok(R::one(f));
        }
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = R::one(f);
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(R::zero(f)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[(i, k)] = R::zero(f);
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        Ok(if sign_flip { -d } else { d })
    }

    /// Classical adjugate: `adj(M) * M = det(M) * I`.
    pub fn adjugate(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(self.field, 1));
        }
        let mut adj = Self::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.submatrix(&rows, &cols).det()?;
                adj[(i, j)] = if (i + j) % 2 == 0 { minor } else { -minor };
            }
        }
        Ok(adj)
    }

    /// Divide every entry exactly; `None` if some entry is not divisible.
    pub fn div_exact(&self, d: &R) -> Option<Self> {
        let data = self.data.iter().map(|e| e.div_exact(d)).collect::<Option<Vec<_>>>()?;
        Some(Matrix { rows: self.rows, cols: self.cols, field: self.field, data })
    }
}

impl Matrix<XPoly> {
    /// `det(t*I - M)` as a monic polynomial in `t` over `k[x]`.
    pub fn char_poly(&self) -> Result<XTPoly> {
        Ok(XTPoly::from_coeffs(self.field, self.char_poly_coeffs()?))
    }

    /// Substitute `x = x0` in every entry.
    pub fn eval_x(&self, x0: &Scalar) -> Matrix<Scalar> {
        self.map(|e| e.eval(x0))
    }

    /// Apply `c(M)` for `c` in `k[x][t]` with `t` acting as `M`.
    pub fn eval_t_poly(&self, c: &XTPoly) -> Result<Self> {
        self.eval_poly(&Poly::from_coeffs(self.field, c.coeffs().to_vec()))
    }

    /// Constant matrices (all entries in `k`) lifted to `k[x]`.
    pub fn from_scalars(m: &Matrix<Scalar>) -> Self {
        m.map(|s| XPoly::constant(s.clone()))
    }

    pub fn max_degree(&self) -> usize {
        self.data.iter().filter_map(|e| e.degree()).max().unwrap_or(0)
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<'a, R: Ring> Mul<&'a Matrix<R>> for &'a Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, rhs: &Matrix<R>) -> Matrix<R> {
        self.try_mul(rhs).expect("matrix shapes")
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}
