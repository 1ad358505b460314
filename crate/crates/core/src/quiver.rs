//! The cyclic quiver `Q(m)` and its path algebra `A(m)` on a trivializing chart.
//!
//! Every twist line bundle is trivial on the chart, so `A(m)` is the path
//! algebra with coefficients in `R = k[x]`, graded by path length. Paths
//! compose right to left: `p * q` is defined when `q` ends where `p` starts.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::polyalg::linalg::same_span;
use crate::polyalg::{Field, Matrix, Ring, Scalar, XPoly};

/// `Q(m)`: vertices `v_0..v_{m-1}`, arrows `a_i: v_i -> v_{i+1 mod m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicQuiver {
    m: usize,
}

/// The unique path of a given length from `source` to `target`.
/// Length-0 paths are the idempotents `e_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub length: usize,
}

impl CyclicQuiver {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Shape("the cyclic quiver needs m >= 1".into()));
        }
        Ok(CyclicQuiver { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Path of `length` starting at `source`.
    pub fn path(&self, source: usize, length: usize) -> Path {
        let source = source % self.m;
        Path { source, target: (source + length) % self.m, length }
    }

    /// Checked constructor: `length ≡ target - source (mod m)`.
    pub fn path_between(&self, source: usize, target: usize, length: usize) -> Result<Path> {
        let p = self.path(source, length);
        if source >= self.m || target >= self.m || p.target != target {
            return Err(Error::Shape(format!("no path of length {length} from v{source} to v{target}")));
        }
        Ok(p)
    }

    pub fn idempotent(&self, i: usize) -> Path {
        self.path(i, 0)
    }

    pub fn arrow(&self, i: usize) -> Path {
        self.path(i, 1)
    }

    /// `c_i^power`, the loop at `v_i` of length `m * power`.
    pub fn loop_at(&self, i: usize, power: usize) -> Path {
        self.path(i, self.m * power)
    }

    /// All paths of length at most `max_len`, ordered by (source, length).
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        (0..self.m)
            .flat_map(|s| (0..=max_len).map(move |l| (s, l)))
            .map(|(s, l)| self.path(s, l))
            .collect()
    }
}

/// `p * q`: `q` first, then `p`. `None` is the zero of the path algebra.
pub fn compose_paths(p: &Path, q: &Path) -> Option<Path> {
    if q.target != p.source {
        return None;
    }
    Some(Path { source: q.source, target: p.target, length: p.length + q.length })
}

/// A finite `k[x]`-linear combination of paths.
#[derive(Clone, Debug, PartialEq)]
pub struct PathAlgebraElement {
    quiver: CyclicQuiver,
    field: Field,
    terms: BTreeMap<Path, XPoly>,
}

impl PathAlgebraElement {
    pub fn zero(quiver: CyclicQuiver, field: Field) -> Self {
        PathAlgebraElement { quiver, field, terms: BTreeMap::new() }
    }

    /// `Σ e_i`
    pub fn unit(quiver: CyclicQuiver, field: Field) -> Self {
        let mut out = Self::zero(quiver, field);
        for i in 0..quiver.m {
            out.add_term(quiver.idempotent(i), XPoly::one(field));
        }
        out
    }

    pub fn from_path(quiver: CyclicQuiver, field: Field, path: Path, coeff: XPoly) -> Self {
        let mut out = Self::zero(quiver, field);
        out.add_term(path, coeff);
        out
    }

    pub fn quiver(&self) -> CyclicQuiver {
        self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Path, XPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Path) -> XPoly {
        self.terms.get(p).cloned().unwrap_or_else(|| XPoly::zero(self.field))
    }

    pub fn add_term(&mut self, path: Path, coeff: XPoly) {
        let cur = self.terms.remove(&path).unwrap_or_else(|| XPoly::zero(self.field));
        let next = &cur + &coeff;
        if !next.is_zero() {
            self.terms.insert(path, next);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.quiver, other.quiver, "mismatched quivers");
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*p, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&XPoly::constant(self.field.from_i64(-1))))
    }

    pub fn scale(&self, c: &XPoly) -> Self {
        let mut out = Self::zero(self.quiver, self.field);
        for (p, a) in &self.terms {
            out.add_term(*p, a * c);
        }
        out
    }

    /// Bilinear extension of [`compose_paths`].
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.quiver, other.quiver, "mismatched quivers");
        let mut out = Self::zero(self.quiver, self.field);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = compose_paths(p, q) {
                    out.add_term(pq, a * b);
                }
            }
        }
        out
    }

    /// The components `e_i * a * e_j` keyed by `(i, j)` = (target, source).
    pub fn idempotent_decompose(&self) -> BTreeMap<(usize, usize), PathAlgebraElement> {
        let mut out: BTreeMap<(usize, usize), PathAlgebraElement> = BTreeMap::new();
        for i in 0..self.quiver.m {
            for j in 0..self.quiver.m {
                out.insert((i, j), Self::zero(self.quiver, self.field));
            }
        }
        for (p, c) in &self.terms {
            out.get_mut(&(p.target, p.source)).expect("all pairs present").add_term(*p, c.clone());
        }
        out
    }

    /// Lengths carrying a nonzero term.
    pub fn lengths(&self) -> Vec<usize> {
        let mut ls: Vec<usize> = self.terms.keys().map(|p| p.length).collect();
        ls.dedup();
        ls.sort_unstable();
        ls.dedup();
        ls
    }

    pub fn max_length(&self) -> Option<usize> {
        self.terms.keys().map(|p| p.length).max()
    }

    fn constant_coeffs(&self, index: &BTreeMap<Path, usize>) -> Option<Vec<Scalar>> {
        let mut v = vec![self.field.zero(); index.len()];
        for (p, c) in &self.terms {
            if c.degree() != Some(0) {
                return None;
            }
            v[*index.get(p)?] = c.coeff(0);
        }
        Some(v)
    }
}

/// `coeff * Σ_i c_i^ell`: the image of `coeff * t^ell` under the diagonal map.
pub fn diagonal_embed(quiver: CyclicQuiver, field: Field, ell: usize, coeff: &XPoly) -> PathAlgebraElement {
    let mut out = PathAlgebraElement::zero(quiver, field);
    for i in 0..quiver.m {
        out.add_term(quiver.loop_at(i, ell), coeff.clone());
    }
    out
}

/// The generators `e_0..e_{m-1}, a_0..a_{m-1}`.
pub fn generators(quiver: CyclicQuiver, field: Field) -> Vec<PathAlgebraElement> {
    let one = XPoly::one(field);
    (0..quiver.m)
        .map(|i| quiver.idempotent(i))
        .chain((0..quiver.m).map(|i| quiver.arrow(i)))
        .map(|p| PathAlgebraElement::from_path(quiver, field, p, one.clone()))
        .collect()
}

/// Default cap on the `x`-degree of unknown coefficients in center solves.
pub const DEFAULT_X_DEGREE_CAP: usize = 2;

/// Result of a degree-truncated center computation.
#[derive(Clone, Debug)]
pub struct TruncatedCenter {
    /// A `k[x]`-basis of the central elements of length at most `N`.
    pub basis: Vec<PathAlgebraElement>,
    /// Dimension over `k` of the solution space with `x`-degrees up to the cap.
    pub k_dimension: usize,
    pub x_degree_cap: usize,
}

impl TruncatedCenter {
    /// The solution space is the free `k[x]`-module on `basis`, cut at the cap.
    pub fn is_free_over_cap(&self) -> bool {
        self.k_dimension == self.basis.len() * (self.x_degree_cap + 1)
    }
}

/// Solve `z g = g z` for every generator `g`, with `z` supported on paths of
/// length at most `n_max` and coefficients `Σ_{d <= cap} z_{p,d} x^d`.
fn center_nullspace(quiver: CyclicQuiver, field: Field, n_max: usize, cap: usize) -> (Vec<(Path, usize)>, Vec<Vec<Scalar>>) {
    let paths = quiver.paths_up_to(n_max);
    let unknowns: Vec<(Path, usize)> = paths.iter().flat_map(|p| (0..=cap).map(move |d| (*p, d))).collect();
    let gens = generators(quiver, field);
    let mut rows: BTreeMap<(usize, Path, usize), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (col, (p, d)) in unknowns.iter().enumerate() {
        let monomial = XPoly::monomial(field.one(), *d);
        let u = PathAlgebraElement::from_path(quiver, field, *p, monomial);
        for (gi, g) in gens.iter().enumerate() {
            let comm = u.multiply(g).sub(&g.multiply(&u));
            for (path, c) in comm.terms() {
                for (deg, s) in c.coeffs().iter().enumerate() {
                    if s.is_zero() {
                        continue;
                    }
                    let next = rows.len();
                    let r = *rows.entry((gi, *path, deg)).or_insert(next);
                    entries.push((r, col, s.clone()));
                }
            }
        }
    }
    let mut mat = Matrix::zeros(field, rows.len(), unknowns.len());
    for (r, c, s) in entries {
        mat[(r, c)] = &mat[(r, c)] + &s;
    }
    let ns = mat.nullspace();
    (unknowns, ns)
}

/// `k[x]`-basis of the central elements of `A(m)` of length at most `n_max`,
/// with the default `x`-degree cap.
pub fn truncated_center(quiver: CyclicQuiver, field: Field, n_max: usize) -> TruncatedCenter {
    truncated_center_with_cap(quiver, field, n_max, DEFAULT_X_DEGREE_CAP)
}

pub fn truncated_center_with_cap(quiver: CyclicQuiver, field: Field, n_max: usize, cap: usize) -> TruncatedCenter {
    // the commutation equations preserve x-degree, so the degree-0 slice
    // already carries a k[x]-basis
    let (unknowns0, ns0) = center_nullspace(quiver, field, n_max, 0);
    let basis = ns0
        .iter()
        .map(|v| {
            let mut z = PathAlgebraElement::zero(quiver, field);
            for ((p, _), s) in unknowns0.iter().zip(v) {
                if !s.is_zero() {
                    z.add_term(*p, XPoly::constant(s.clone()));
                }
            }
            z
        })
        .collect();
    let (_, ns) = center_nullspace(quiver, field, n_max, cap);
    TruncatedCenter { basis, k_dimension: ns.len(), x_degree_cap: cap }
}

/// Whether `basis` spans the same `k`-space as `{Δ(t^ell) : m*ell <= n_max}`.
/// All elements must have constant coefficients.
pub fn spans_diagonal_image(quiver: CyclicQuiver, field: Field, n_max: usize, basis: &[PathAlgebraElement]) -> bool {
    let index: BTreeMap<Path, usize> =
        quiver.paths_up_to(n_max).into_iter().enumerate().map(|(i, p)| (p, i)).collect();
    let one = XPoly::one(field);
    let diag: Option<Vec<Vec<Scalar>>> = (0..=n_max / quiver.m)
        .map(|ell| diagonal_embed(quiver, field, ell, &one).constant_coeffs(&index))
        .collect();
    let found: Option<Vec<Vec<Scalar>>> = basis.iter().map(|z| z.constant_coeffs(&index)).collect();
    match (diag, found) {
        (Some(d), Some(f)) => same_span(field, index.len(), &d, &f),
        _ => false,
    }
}

/// Outcome of comparing `ker(R[t] ⊗ A(m) -> A(m))` with the two-sided ideal
/// generated by `1 ⊗ Δ(t) - t ⊗ 1`, inside a truncation box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushforwardReport {
    pub box_dimension: usize,
    pub kernel_dimension: usize,
    pub ideal_dimension: usize,
    pub ideal_in_kernel: bool,
}

impl PushforwardReport {
    pub fn holds(&self) -> bool {
        self.ideal_in_kernel && self.kernel_dimension == self.ideal_dimension
    }
}

type TensorElement = BTreeMap<(usize, Path), Scalar>;

fn tensor_mul(a: &TensorElement, b: &TensorElement) -> TensorElement {
    let mut out = TensorElement::new();
    for ((s, p), x) in a {
        for ((u, q), y) in b {
            if let Some(pq) = compose_paths(p, q) {
                let key = (s + u, pq);
                let cur = out.remove(&key).unwrap_or_else(|| x.field().zero());
                let next = &cur + &(x * y);
                if !next.is_zero() {
                    out.insert(key, next);
                }
            }
        }
    }
    out
}

/// Compare the kernel of the multiplication map `t^s ⊗ p ↦ Δ(t)^s p` with the
/// two-sided ideal `⟨1 ⊗ Δ(t) - t ⊗ 1⟩`, both cut to `t`-degree at most
/// `n_max / m` and path length at most `n_max`, as graded `k`-spaces.
///
/// Both sides are `R`-modules with `R`-bases of constant-coefficient
/// elements, so the comparison is made with coefficients in `k`.
pub fn pushforward_kernel_check(quiver: CyclicQuiver, field: Field, n_max: usize) -> Result<PushforwardReport> {
    let m = quiver.m;
    if n_max < m {
        return Err(Error::TruncationTooSmall(format!(
            "the generator has path length {m} but the box stops at {n_max}"
        )));
    }
    let t_max = n_max / m;
    let paths = quiver.paths_up_to(n_max);
    let basis: Vec<(usize, Path)> = (0..=t_max).flat_map(|s| paths.iter().map(move |p| (s, *p))).collect();
    let index: BTreeMap<(usize, Path), usize> = basis.iter().enumerate().map(|(i, k)| (*k, i)).collect();

    // multiplication map into A(m)
    let image_paths = quiver.paths_up_to(n_max + m * t_max);
    let image_index: BTreeMap<Path, usize> = image_paths.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut mu = Matrix::zeros(field, image_paths.len(), basis.len());
    for (col, (s, p)) in basis.iter().enumerate() {
        let img = quiver.path(p.source, p.length + m * s);
        mu[(image_index[&img], col)] = field.one();
    }
    let kernel_dimension = mu.nullspace().len();

    // the generator 1⊗Δ(t) - t⊗1
    let mut gen = TensorElement::new();
    for i in 0..m {
        gen.insert((0, quiver.loop_at(i, 1)), field.one());
        gen.insert((1, quiver.idempotent(i)), field.from_i64(-1));
    }
    let singles: Vec<TensorElement> = basis.iter().map(|k| TensorElement::from([(*k, field.one())])).collect();
    let mut ideal_vectors: Vec<Vec<Scalar>> = Vec::new();
    for left in &singles {
        let lg = tensor_mul(left, &gen);
        if lg.is_empty() {
            continue;
        }
        for right in &singles {
            let prod = tensor_mul(&lg, right);
            if prod.is_empty() {
                continue;
            }
            let mut v = vec![field.zero(); basis.len()];
            let mut inside = true;
            for (k, c) in &prod {
                match index.get(k) {
                    Some(&i) => v[i] = c.clone(),
                    None => {
                        inside = false;
                        break;
                    }
                }
            }
            if inside {
                ideal_vectors.push(v);
            }
        }
    }
    let ideal_in_kernel = ideal_vectors.iter().all(|v| mu.mul_vec(v).iter().all(Scalar::is_zero));
    let ideal_dimension = crate::polyalg::linalg::span_rank(field, basis.len(), &ideal_vectors);
    Ok(PushforwardReport { box_dimension: basis.len(), kernel_dimension, ideal_dimension, ideal_in_kernel })
}
