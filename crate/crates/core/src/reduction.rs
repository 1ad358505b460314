//! The central reduction `Â(m)`: a free `R[t]`-algebra of rank `m^2`.
//!
//! `b(i,j)` is the class of the path `v_j -> v_i` of length `(i - j) mod m`.
//! Every path factors as a loop power times such a short path and loops act
//! as `t`, so products obey
//! `b(i,j) b(j,k) = t^w b(i,k)` with `w = 1` exactly when the two lengths
//! wrap past `m`.

use std::collections::BTreeMap;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::polyalg::linalg::same_span;
use crate::polyalg::{Field, Matrix, Ring, Scalar, XPoly, XTPoly};

/// Length of the short path underlying `b(i,j)`.
pub fn short_length(m: usize, i: usize, j: usize) -> usize {
    (i + m - j) % m
}

/// Position of `b(i,j)` in the ordered basis.
pub fn basis_index(m: usize, i: usize, j: usize) -> usize {
    i * m + j
}

/// All `(i, j)` in basis order.
pub fn basis_symbols(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).collect()
}

/// `b(i,j) * b(k,l)` as `Some((w, (i,l)))` meaning `t^w b(i,l)`, or `None` for zero.
pub fn basis_product(m: usize, (i, j): (usize, usize), (k, l): (usize, usize)) -> Option<(usize, (usize, usize))> {
    if j != k {
        return None;
    }
    let total = short_length(m, i, j) + short_length(m, j, l);
    let w = usize::from(total >= m);
    assert!(total < 2 * m, "two short paths wrap at most once");
    assert_eq!(total, short_length(m, i, l) + w * m);
    Some((w, (i, l)))
}

/// An element of `Â(m)` with coefficients in `k[x][t]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedElement {
    m: usize,
    field: Field,
    coeffs: BTreeMap<(usize, usize), XTPoly>,
}

impl ReducedElement {
    pub fn zero(field: Field, m: usize) -> Self {
        ReducedElement { m, field, coeffs: BTreeMap::new() }
    }

    /// `Σ_j b(j,j)`
    pub fn unit(field: Field, m: usize) -> Self {
        let mut out = Self::zero(field, m);
        for j in 0..m {
            out.add_term((j, j), XTPoly::one(field));
        }
        out
    }

    pub fn basis(field: Field, m: usize, i: usize, j: usize) -> Self {
        Self::term(field, m, (i, j), XTPoly::one(field))
    }

    pub fn term(field: Field, m: usize, sym: (usize, usize), coeff: XTPoly) -> Self {
        let mut out = Self::zero(field, m);
        out.add_term(sym, coeff);
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &BTreeMap<(usize, usize), XTPoly> {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> XTPoly {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(|| XTPoly::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, sym: (usize, usize), coeff: XTPoly) {
        assert!(sym.0 < self.m && sym.1 < self.m, "basis symbol out of range");
        let cur = self.coeffs.remove(&sym).unwrap_or_else(|| XTPoly::zero(self.field));
        let next = &cur + &coeff;
        if !next.is_zero() {
            self.coeffs.insert(sym, next);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_m(other)?;
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.add_term(*s, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&XTPoly::constant(XPoly::constant(self.field.from_i64(-1)))))
    }

    pub fn scale(&self, c: &XTPoly) -> Self {
        let mut out = Self::zero(self.field, self.m);
        for (s, a) in &self.coeffs {
            out.add_term(*s, a * c);
        }
        out
    }

    fn same_m(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::MismatchedQuiver(self.m, other.m));
        }
        Ok(())
    }

    /// Bilinear extension of [`basis_product`].
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_m(other)?;
        let t = XTPoly::t(self.field);
        let mut out = Self::zero(self.field, self.m);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if let Some((w, sym)) = basis_product(self.m, *a, *b) {
                    let mut c = ca * cb;
                    if w == 1 {
                        c = &c * &t;
                    }
                    out.add_term(sym, c);
                }
            }
        }
        Ok(out)
    }

    /// Evaluate at `(x0, t0)` into coordinates on the basis order.
    pub fn eval(&self, x0: &Scalar, t0: &Scalar) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.m * self.m];
        for ((i, j), c) in &self.coeffs {
            v[basis_index(self.m, *i, *j)] = c.eval_x(x0).eval(t0);
        }
        v
    }
}

/// `reduced_multiply` as a free function.
pub fn reduced_multiply(a: &ReducedElement, b: &ReducedElement) -> Result<ReducedElement> {
    a.multiply(b)
}

/// Number of basis symbols, one per short path.
pub fn rank_check(m: usize) -> usize {
    basis_symbols(m).into_iter().filter(|&(i, j)| short_length(m, i, j) < m.max(1)).count()
}

/// The class of the arrow `a_i`. For `m = 1` the arrow is the loop itself.
pub fn arrow_element(field: Field, m: usize, i: usize) -> ReducedElement {
    let sym = ((i + 1) % m, i % m);
    if m == 1 {
        ReducedElement::term(field, m, sym, XTPoly::t(field))
    } else {
        ReducedElement::basis(field, m, sym.0, sym.1)
    }
}

/// The product `a_{i-1} ... a_{i+1} a_i` once around the cycle from `v_i`.
pub fn loop_product(field: Field, m: usize, i: usize) -> Result<ReducedElement> {
    let mut acc = ReducedElement::basis(field, m, i, i);
    for step in 0..m {
        acc = arrow_element(field, m, (i + step) % m).multiply(&acc)?;
    }
    Ok(acc)
}

/// `Â(m)` specialized at a point `(x0, t0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberAlgebra {
    pub m: usize,
    pub x0: Scalar,
    pub t0: Scalar,
    pub algebra: FiniteAlgebra,
}

pub fn fiber_at(m: usize, x0: &Scalar, t0: &Scalar) -> FiberAlgebra {
    let field = t0.field();
    let n = m * m;
    let mut table = vec![vec![vec![field.zero(); n]; n]; n];
    for a in basis_symbols(m) {
        for b in basis_symbols(m) {
            if let Some((w, (i, l))) = basis_product(m, a, b) {
                table[basis_index(m, a.0, a.1)][basis_index(m, b.0, b.1)][basis_index(m, i, l)] = t0.pow(w as u64);
            }
        }
    }
    let mut unit = vec![field.zero(); n];
    for j in 0..m {
        unit[basis_index(m, j, j)] = field.one();
    }
    let algebra = FiniteAlgebra::new(field, table, unit).expect("square table");
    FiberAlgebra { m, x0: x0.clone(), t0: t0.clone(), algebra }
}

/// The basis map `b(i,j) ↦ s0^{(i-j) mod m} E(i,j)` and whether it is multiplicative.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixIso {
    pub s0: Scalar,
    /// `scales[basis_index(i,j)]` is the coefficient of `E(i,j)`.
    pub scales: Vec<Scalar>,
    pub verified: bool,
}

pub fn matrix_iso(fiber: &FiberAlgebra, s0: &Scalar) -> Result<MatrixIso> {
    let m = fiber.m;
    if fiber.t0.is_zero() {
        return Err(Error::DegenerateFiber);
    }
    if s0.pow(m as u64) != fiber.t0 {
        return Err(Error::NotARoot { root: s0.to_string(), t0: fiber.t0.to_string(), m });
    }
    let scales: Vec<Scalar> = basis_symbols(m).iter().map(|&(i, j)| s0.pow(short_length(m, i, j) as u64)).collect();
    // f(b_a) f(b_b) must equal f(b_a b_b); compare coefficients on matrix units
    let mut verified = true;
    for a in basis_symbols(m) {
        for b in basis_symbols(m) {
            let (ia, ib) = (basis_index(m, a.0, a.1), basis_index(m, b.0, b.1));
            let mut lhs = vec![fiber.t0.field().zero(); m * m];
            if a.1 == b.0 {
                lhs[basis_index(m, a.0, b.1)] = &scales[ia] * &scales[ib];
            }
            let mut rhs = vec![fiber.t0.field().zero(); m * m];
            for (k, c) in fiber.algebra.table()[ia][ib].iter().enumerate() {
                rhs[k] = &rhs[k] + &(c * &scales[k]);
            }
            verified &= lhs == rhs;
        }
    }
    Ok(MatrixIso { s0: s0.clone(), scales, verified })
}

/// Each basis element generates the whole fiber as a two-sided ideal.
pub fn simplicity_check(fiber: &FiberAlgebra) -> bool {
    fiber.algebra.basis_generates()
}

/// Solve `z b = b z` for every basis `b` with `z = Σ z_{ij,a,d} x^d t^a b(i,j)`
/// under the caps; true iff the solutions are the `k[x][t]`-multiples of the unit.
pub fn reduced_center_check(field: Field, m: usize, t_cap: usize, x_cap: usize) -> bool {
    let syms = basis_symbols(m);
    let unknowns: Vec<((usize, usize), usize, usize)> = syms
        .iter()
        .flat_map(|s| (0..=t_cap).flat_map(move |a| (0..=x_cap).map(move |d| (*s, a, d))))
        .collect();
    let mut rows: BTreeMap<(usize, (usize, usize), usize, usize), usize> = BTreeMap::new();
    let mut entries = Vec::new();
    for (col, (s, a, d)) in unknowns.iter().enumerate() {
        for g in &syms {
            // z contributes b_s * b_g - b_g * b_s, each shifting t by its wrap
            let mut push = |prod: Option<(usize, (usize, usize))>, sign: i64| {
                if let Some((w, out)) = prod {
                    let next = rows.len();
                    let r = *rows.entry((basis_index(m, g.0, g.1), out, a + w, *d)).or_insert(next);
                    entries.push((r, col, field.from_i64(sign)));
                }
            };
            push(basis_product(m, *s, *g), 1);
            push(basis_product(m, *g, *s), -1);
        }
    }
    let mut mat = Matrix::zeros(field, rows.len().max(1), unknowns.len());
    for (r, c, v) in entries {
        mat[(r, c)] = &mat[(r, c)] + &v;
    }
    let ns = mat.nullspace();
    let expected: Vec<Vec<Scalar>> = (0..=t_cap)
        .flat_map(|a| (0..=x_cap).map(move |d| (a, d)))
        .map(|(a, d)| {
            unknowns
                .iter()
                .map(|(s, a2, d2)| if s.0 == s.1 && *a2 == a && *d2 == d { field.one() } else { field.zero() })
                .collect()
        })
        .collect();
    same_span(field, unknowns.len(), &ns, &expected)
}
