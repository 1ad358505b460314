//! Effective divisors on the affine spectral curve as ideal lattices of
//! `S = k[x][t]/(c)`, written on the `k[x]`-basis `1, t, …, t^{p-1}`.

use crate::error::{Error, Result};
use crate::higgs::SLattice;
use crate::polyalg::normal_form::{colength, hermite_normal_form, kernel_basis};
use crate::polyalg::{Field, Matrix, PolyMatrix, Ring, Var, XPoly, XTPoly};

fn degree_t(c: &XTPoly) -> Result<usize> {
    match c.degree() {
        Some(n) if n >= 1 && c.is_monic() => Ok(n),
        _ => Err(Error::Verification("spectral curve must be monic of positive degree in t".into())),
    }
}

/// `f mod c` for `c` monic in `t`.
pub fn reduce_mod(f: &XTPoly, c: &XTPoly) -> XTPoly {
    let n = c.degree().expect("nonzero curve");
    let mut r = f.clone();
    while let Some(d) = r.degree() {
        if d < n {
            break;
        }
        let term = XTPoly::monomial(r.leading(), d - n).with_var(Var::T);
        r = &r - &(&term * c);
    }
    r
}

/// Coordinates of `f mod c` on `1, t, …, t^{n-1}`.
pub fn coords(f: &XTPoly, c: &XTPoly) -> Vec<XPoly> {
    let n = c.degree().expect("nonzero curve");
    let r = reduce_mod(f, c);
    (0..n).map(|j| r.coeff(j)).collect()
}

pub fn from_coords(field: Field, v: &[XPoly]) -> XTPoly {
    XTPoly::new(field, Var::T, v.to_vec())
}

/// Multiplication by `t` on `S`.
pub fn companion(c: &XTPoly) -> PolyMatrix {
    let field = c.base_field();
    let n = c.degree().expect("nonzero curve");
    Matrix::from_fn(field, n, n, |i, j| {
        if j + 1 < n {
            if i == j + 1 { XPoly::one(field) } else { XPoly::zero(field) }
        } else {
            -c.coeff(i)
        }
    })
}

/// `S` itself as a rank-`deg c` lattice.
pub fn structure_lattice(c: &XTPoly) -> Result<SLattice> {
    degree_t(c)?;
    SLattice::new(companion(c))
}

/// Multiplication by `f` on `S` in the monomial basis.
pub fn multiplication_matrix(f: &XTPoly, c: &XTPoly) -> PolyMatrix {
    let field = c.base_field();
    let n = c.degree().expect("nonzero curve");
    let cols: Vec<Vec<XPoly>> = (0..n)
        .map(|j| coords(&(f * &XTPoly::monomial(XPoly::one(field), j).with_var(Var::T)), c))
        .collect();
    Matrix::from_cols(field, n, &cols)
}

/// A finite-colength ideal of `S`, canonical via its Hermite form.
#[derive(Clone, Debug, PartialEq)]
pub struct EffectiveDivisor {
    lattice: PolyMatrix,
    length: usize,
}

impl EffectiveDivisor {
    /// Normalizes the columns of `generators` (coordinates in `S`) to Hermite form.
    pub fn from_generators(generators: &PolyMatrix) -> Result<Self> {
        let lattice = hermite_normal_form(generators)?;
        let length = colength(&lattice)?;
        Ok(EffectiveDivisor { lattice, length })
    }

    /// The unit ideal: the zero divisor.
    pub fn zero(field: Field, n: usize) -> Self {
        EffectiveDivisor { lattice: Matrix::identity(field, n), length: 0 }
    }

    pub fn lattice(&self) -> &PolyMatrix {
        &self.lattice
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_zero(&self) -> bool {
        self.length == 0
    }

    /// The generators as elements of `S`.
    pub fn generators(&self) -> Vec<XTPoly> {
        (0..self.lattice.cols()).map(|j| from_coords(self.lattice.field(), &self.lattice.col(j))).collect()
    }

    /// The ideal is stable under multiplication by `t`.
    pub fn is_t_stable(&self, c: &XTPoly) -> bool {
        let t = XTPoly::t(c.base_field());
        self.generators().iter().all(|g| {
            let v = coords(&(g * &t), c);
            contains(&self.lattice, &v)
        })
    }
}

/// Whether `v` lies in the column span of the upper-triangular Hermite basis `h`.
fn contains(h: &PolyMatrix, v: &[XPoly]) -> bool {
    let mut r = v.to_vec();
    for j in (0..h.cols()).rev() {
        let (q, rem) = r[j].div_rem(&h[(j, j)]).expect("monic diagonal");
        if !rem.is_zero() {
            return false;
        }
        for (i, ri) in r.iter_mut().enumerate().take(j + 1) {
            *ri = &*ri - &(&q * &h[(i, j)]);
        }
    }
    true
}

/// `Ann_S(coker ψ)` for a `t`-equivariant injective `ψ: F -> G`.
///
/// Solves `s(T_G) e_k = ψ u_k` for all basis vectors `e_k` of `G`; the
/// `s`-coordinates of the solution module form the annihilator lattice.
pub fn divisor_of_map(psi: &PolyMatrix, f: &SLattice, g: &SLattice) -> Result<EffectiveDivisor> {
    let field = psi.field();
    if psi.shape() != (g.rank(), f.rank()) || !psi.is_square() {
        return Err(Error::Shape(format!("map is {:?} between ranks {} and {}", psi.shape(), f.rank(), g.rank())));
    }
    if &psi.try_mul(f.t_matrix())? != &g.t_matrix().try_mul(psi)? {
        return Err(Error::NotEquivariant);
    }
    let det = psi.det()?;
    if det.is_zero() {
        return Err(Error::SingularMap);
    }
    let c = g.t_matrix().char_poly()?;
    let n = c.degree().expect("monic");
    let p = g.rank();
    // columns: s_0..s_{n-1}, then u_k for each k
    let cols = n + p * f.rank();
    let mut sys = Matrix::zeros(field, p * p, cols);
    let mut power: PolyMatrix = Matrix::identity(field, p);
    for j in 0..n {
        for k in 0..p {
            for r in 0..p {
                sys[(k * p + r, j)] = power[(r, k)].clone();
            }
        }
        power = &power * g.t_matrix();
    }
    for k in 0..p {
        for r in 0..p {
            for s in 0..f.rank() {
                sys[(k * p + r, n + k * f.rank() + s)] = -psi[(r, s)].clone();
            }
        }
    }
    let ker = kernel_basis(&sys);
    let projected: Vec<Vec<XPoly>> = ker.iter().map(|v| v[..n].to_vec()).collect();
    let gens = Matrix::from_cols(field, n, &projected);
    let d = EffectiveDivisor::from_generators(&gens)?;
    let expected = det.degree().expect("nonzero");
    if d.length != expected {
        return Err(Error::Unsupported(format!(
            "cokernel of length {expected} is not cyclic (annihilator colength {})",
            d.length
        )));
    }
    Ok(d)
}

/// `div(f)` for `f ∈ S`; `f` must not be a zero divisor.
pub fn divisor_of_function(f: &XTPoly, c: &XTPoly) -> Result<EffectiveDivisor> {
    let s = structure_lattice(c)?;
    let psi = multiplication_matrix(f, c);
    match divisor_of_map(&psi, &s, &s) {
        Err(Error::SingularMap) => Err(Error::ZeroDivisor),
        other => other,
    }
}

/// `I_D · I_{D'}`: spanned over `k[x]` by products of lattice generators.
pub fn sum_divisors(d: &EffectiveDivisor, e: &EffectiveDivisor, c: &XTPoly) -> Result<EffectiveDivisor> {
    let field = c.base_field();
    let n = degree_t(c)?;
    let mut cols = Vec::new();
    for a in d.generators() {
        for b in e.generators() {
            cols.push(coords(&(&a * &b), c));
        }
    }
    EffectiveDivisor::from_generators(&Matrix::from_cols(field, n, &cols))
}

/// `Σ D_i` over a list, starting from the zero divisor.
pub fn sum_all(ds: &[EffectiveDivisor], c: &XTPoly) -> Result<EffectiveDivisor> {
    let n = degree_t(c)?;
    ds.iter().try_fold(EffectiveDivisor::zero(c.base_field(), n), |acc, d| sum_divisors(&acc, d, c))
}
