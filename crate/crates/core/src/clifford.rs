//! `Â(2)` as an even Clifford algebra.
//!
//! With `q(α, β, γ) = tα² + βγ` the even part `Cℓ₀(q)` has basis
//! `{1, v12, v13, v23}` with `vij = g_i g_j`, and
//! `e0 ↦ v23, e1 ↦ 1 - v23, b(0,1) ↦ -v12, b(1,0) ↦ v13`
//! is an isomorphism `Â(2) → Cℓ₀(q)` over `k[x][t]`. The discriminant
//! `det(2B) = -2t` vanishes exactly on the zero section.

use std::collections::BTreeMap;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::polyalg::linalg::same_span;
use crate::polyalg::{Field, Matrix, Ring, Scalar, XPoly, XTPoly};
use crate::reduction::{basis_symbols, fiber_at, simplicity_check, ReducedElement};

/// Coordinates on `{1, v12, v13, v23}`.
pub type CliffordElement = Vec<XTPoly>;

/// Sorted generator words spanning the even part, in basis order.
pub const EVEN_BASIS: [&[usize]; 4] = [&[], &[0, 1], &[0, 2], &[1, 2]];
pub const EVEN_BASIS_NAMES: [&str; 4] = ["1", "v12", "v13", "v23"];

fn require_odd_characteristic(field: Field) -> Result<()> {
    if field.characteristic() == 2 {
        Err(Error::CharacteristicTwo)
    } else {
        Ok(())
    }
}

fn half(field: Field) -> Result<Scalar> {
    require_odd_characteristic(field)?;
    field.from_ratio(1, 2)
}

/// The symmetric bilinear form `B` with `q(v) = vᵀ B v`.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryQuadraticForm {
    gram: Matrix<XTPoly>,
}

impl TernaryQuadraticForm {
    pub fn new(gram: Matrix<XTPoly>) -> Result<Self> {
        if gram.shape() != (3, 3) {
            return Err(Error::Shape(format!("Gram matrix must be 3x3, got {:?}", gram.shape())));
        }
        if gram != gram.transpose() {
            return Err(Error::Shape("Gram matrix is not symmetric".into()));
        }
        require_odd_characteristic(gram.field())?;
        Ok(TernaryQuadraticForm { gram })
    }

    pub fn gram(&self) -> &Matrix<XTPoly> {
        &self.gram
    }

    pub fn field(&self) -> Field {
        self.gram.field()
    }

    pub fn eval(&self, v: &[XTPoly; 3]) -> XTPoly {
        let bv = self.gram.mul_vec(v);
        v.iter().zip(&bv).fold(XTPoly::zero(self.field()), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// `det(2B)`.
    pub fn discriminant(&self) -> Result<XTPoly> {
        self.gram.mul_elem(&XTPoly::from_scalar(self.field().from_i64(2))).det()
    }
}

/// `B = [[t,0,0],[0,0,1/2],[0,1/2,0]]`.
pub fn build_quadratic_form(field: Field) -> Result<TernaryQuadraticForm> {
    let h = XTPoly::from_scalar(half(field)?);
    let z = || XTPoly::zero(field);
    let gram = Matrix::from_rows(
        field,
        vec![vec![XTPoly::t(field), z(), z()], vec![z(), z(), h.clone()], vec![z(), h, z()]],
    )?;
    TernaryQuadraticForm::new(gram)
}

/// `c · t` with `c` a nonzero constant.
pub fn is_unit_times_t(d: &XTPoly) -> bool {
    d.degree() == Some(1) && d.coeff(0).is_zero() && d.coeff(1).degree() == Some(0)
}

/// Rewrite `coeff · g_{w_0} ⋯ g_{w_r}` into sorted words using
/// `g_i² = B_ii` and `g_j g_i = -g_i g_j + 2B_ij`.
fn normalize_word(word: Vec<usize>, coeff: XTPoly, gram: &Matrix<XTPoly>, out: &mut BTreeMap<Vec<usize>, XTPoly>) {
    if coeff.is_zero() {
        return;
    }
    let Some(k) = (0..word.len().saturating_sub(1)).find(|&k| word[k] >= word[k + 1]) else {
        let entry = out.entry(word).or_insert_with(|| XTPoly::zero(coeff.field()));
        *entry = entry.clone() + coeff;
        return;
    };
    let (i, j) = (word[k], word[k + 1]);
    let mut shorter = word[..k].to_vec();
    shorter.extend_from_slice(&word[k + 2..]);
    if i == j {
        normalize_word(shorter, coeff * gram[(i, i)].clone(), gram, out);
    } else {
        let mut swapped = word.clone();
        swapped.swap(k, k + 1);
        let two = XTPoly::from_scalar(coeff.field().from_i64(2));
        normalize_word(shorter, coeff.clone() * two * gram[(i, j)].clone(), gram, out);
        normalize_word(swapped, -coeff, gram, out);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvenCliffordAlgebra {
    form: TernaryQuadraticForm,
    /// `table[a][b]` holds the coordinates of `v_a v_b`.
    table: Vec<Vec<CliffordElement>>,
}

pub fn even_clifford(form: &TernaryQuadraticForm) -> Result<EvenCliffordAlgebra> {
    let field = form.field();
    let mut table = vec![vec![Vec::new(); 4]; 4];
    for (a, wa) in EVEN_BASIS.iter().enumerate() {
        for (b, wb) in EVEN_BASIS.iter().enumerate() {
            let mut out = BTreeMap::new();
            normalize_word([*wa, *wb].concat(), XTPoly::one(field), form.gram(), &mut out);
            let mut coords = vec![XTPoly::zero(field); 4];
            for (word, c) in out {
                let k = EVEN_BASIS
                    .iter()
                    .position(|w| *w == word.as_slice())
                    .ok_or_else(|| Error::Verification(format!("odd word {word:?} in an even product")))?;
                coords[k] = c;
            }
            table[a][b] = coords;
        }
    }
    Ok(EvenCliffordAlgebra { form: form.clone(), table })
}

impl EvenCliffordAlgebra {
    pub fn field(&self) -> Field {
        self.form.field()
    }

    pub fn form(&self) -> &TernaryQuadraticForm {
        &self.form
    }

    pub fn table(&self) -> &[Vec<CliffordElement>] {
        &self.table
    }

    pub fn basis(&self, k: usize) -> CliffordElement {
        let mut v = vec![XTPoly::zero(self.field()); 4];
        v[k] = XTPoly::one(self.field());
        v
    }

    pub fn unit(&self) -> CliffordElement {
        self.basis(0)
    }

    pub fn mul(&self, a: &[XTPoly], b: &[XTPoly]) -> CliffordElement {
        let mut out = vec![XTPoly::zero(self.field()); 4];
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let ab = ai.clone() * bj.clone();
                for (k, c) in self.table[i][j].iter().enumerate() {
                    out[k] = out[k].clone() + ab.clone() * c.clone();
                }
            }
        }
        out
    }

    /// All 64 basis triples.
    pub fn is_associative(&self) -> bool {
        (0..4).all(|a| {
            (0..4).all(|b| {
                (0..4).all(|c| {
                    let (va, vb, vc) = (self.basis(a), self.basis(b), self.basis(c));
                    self.mul(&self.mul(&va, &vb), &vc) == self.mul(&va, &self.mul(&vb, &vc))
                })
            })
        })
    }

    pub fn fiber(&self, x0: &Scalar, t0: &Scalar) -> FiniteAlgebra {
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|c| c.eval_x(x0).eval(t0)).collect()).collect())
            .collect();
        let unit = (0..4).map(|k| if k == 0 { self.field().one() } else { self.field().zero() }).collect();
        FiniteAlgebra::new(self.field(), table, unit).expect("4x4x4 table")
    }
}

fn require_m2(a: &ReducedElement) -> Result<()> {
    if a.m() == 2 {
        Ok(())
    } else {
        Err(Error::MismatchedQuiver(a.m(), 2))
    }
}

/// `α₀e₀ + α₁e₁ + α_{01}b(0,1) + α_{10}b(1,0) ↦ α₀ + α₁`.
pub fn trace_map(a: &ReducedElement) -> Result<XTPoly> {
    require_m2(a)?;
    Ok(a.coeff(0, 0) + a.coeff(1, 1))
}

/// `a = (scalar/2)(e₀ + e₁) + traceless` with `Tr(traceless) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceDecomposition {
    pub scalar: XTPoly,
    pub traceless: ReducedElement,
}

impl TraceDecomposition {
    pub fn reassemble(&self) -> Result<ReducedElement> {
        let field = self.traceless.field();
        let h = XTPoly::from_scalar(half(field)?);
        ReducedElement::unit(field, 2).scale(&(self.scalar.clone() * h)).add(&self.traceless)
    }
}

pub fn traceless_decompose(a: &ReducedElement) -> Result<TraceDecomposition> {
    let scalar = trace_map(a)?;
    let h = XTPoly::from_scalar(half(a.field())?);
    let traceless = a.sub(&ReducedElement::unit(a.field(), 2).scale(&(scalar.clone() * h)))?;
    Ok(TraceDecomposition { scalar, traceless })
}

/// `Tr([a, b]) = 0` on all 16 basis pairs and on every sample.
pub fn commutator_trace_check(field: Field, samples: &[(ReducedElement, ReducedElement)]) -> Result<bool> {
    let basis: Vec<ReducedElement> = basis_symbols(2).into_iter().map(|(i, j)| ReducedElement::basis(field, 2, i, j)).collect();
    let pairs = basis.iter().flat_map(|a| basis.iter().map(move |b| (a, b)));
    for (a, b) in pairs.chain(samples.iter().map(|(a, b)| (a, b))) {
        let comm = a.multiply(b)?.sub(&b.multiply(a)?)?;
        if !trace_map(&comm)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Images of `b(i,j)` under the candidate isomorphism, keyed by basis symbol.
pub fn candidate_images(field: Field) -> BTreeMap<(usize, usize), CliffordElement> {
    let c = |v: [i64; 4]| v.iter().map(|&n| XTPoly::from_scalar(field.from_i64(n))).collect::<Vec<_>>();
    BTreeMap::from([
        ((0, 0), c([0, 0, 0, 1])),
        ((1, 1), c([1, 0, 0, -1])),
        ((0, 1), c([0, -1, 0, 0])),
        ((1, 0), c([0, 0, 1, 0])),
    ])
}

/// Apply the candidate map to an element of `Â(2)`.
pub fn apply_iso(a: &ReducedElement) -> Result<CliffordElement> {
    require_m2(a)?;
    let field = a.field();
    let images = candidate_images(field);
    let mut out = vec![XTPoly::zero(field); 4];
    for (sym, coeff) in a.coeffs() {
        for (k, c) in images[sym].iter().enumerate() {
            out[k] = out[k].clone() + coeff.clone() * c.clone();
        }
    }
    Ok(out)
}

/// `f(a) f(b)` against `f(ab)` for one basis pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductCheck {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub expected: CliffordElement,
    pub actual: CliffordElement,
}

impl ProductCheck {
    pub fn holds(&self) -> bool {
        self.expected == self.actual
    }
}

/// Peirce components `v23 · Cℓ₀ · (1 - v23)` and `(1 - v23) · Cℓ₀ · v23`,
/// searched among elements with coefficients of `t`-degree at most 1.
#[derive(Clone, Debug, PartialEq)]
pub struct PeirceSearch {
    pub dim_01: usize,
    pub dim_10: usize,
    /// Both components are `k[t]_{≤1} v12` and `k[t]_{≤1} v13`, and
    /// `v12 v13` is a nonzero multiple of `t v23`, so the images of
    /// `b(0,1), b(1,0)` are fixed up to `(u, u^{-1})` with `u ∈ k^×`.
    pub unique_up_to_units: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CliffordIsoReport {
    pub field: Field,
    pub discriminant: XTPoly,
    pub discriminant_is_unit_t: bool,
    pub associative: bool,
    pub unit_preserved: bool,
    pub bijective: bool,
    pub products: Vec<ProductCheck>,
    pub peirce: PeirceSearch,
}

impl CliffordIsoReport {
    pub fn holds(&self) -> bool {
        self.discriminant_is_unit_t
            && self.associative
            && self.unit_preserved
            && self.bijective
            && self.products.iter().all(ProductCheck::holds)
            && self.peirce.unique_up_to_units
    }

    pub fn first_failure(&self) -> Option<&ProductCheck> {
        self.products.iter().find(|p| !p.holds())
    }
}

/// Flatten into `(basis, t-degree, x-degree) ↦ coefficient`.
fn flatten(v: &[XTPoly]) -> BTreeMap<(usize, usize, usize), Scalar> {
    let mut out = BTreeMap::new();
    for (k, c) in v.iter().enumerate() {
        for (dt, cx) in c.coeffs().iter().enumerate() {
            for (dx, s) in cx.coeffs().iter().enumerate() {
                if !s.is_zero() {
                    out.insert((k, dt, dx), s.clone());
                }
            }
        }
    }
    out
}

/// Solutions `X = Σ c_{k,d} t^d v_k` (`d ≤ 1`) of `eX = X`, `Xe = 0` up to swapping sides.
fn peirce_component(alg: &EvenCliffordAlgebra, e: &[XTPoly], left_fixed: bool) -> Vec<CliffordElement> {
    let field = alg.field();
    let unknowns: Vec<CliffordElement> = (0..4)
        .flat_map(|k| (0..2).map(move |d| (k, d)))
        .map(|(k, d)| {
            let mut v = vec![XTPoly::zero(field); 4];
            v[k] = XTPoly::monomial(XPoly::one(field), d);
            v
        })
        .collect();
    let conditions: Vec<BTreeMap<(u8, (usize, usize, usize)), Scalar>> = unknowns
        .iter()
        .map(|u| {
            let (fix, kill) = if left_fixed { (alg.mul(e, u), alg.mul(u, e)) } else { (alg.mul(u, e), alg.mul(e, u)) };
            let fix_minus: Vec<XTPoly> = fix.iter().zip(u).map(|(a, b)| a.clone() - b.clone()).collect();
            let mut rows = BTreeMap::new();
            for (key, s) in flatten(&fix_minus) {
                rows.insert((0, key), s);
            }
            for (key, s) in flatten(&kill) {
                rows.insert((1, key), s);
            }
            rows
        })
        .collect();
    let keys: Vec<_> = conditions.iter().flat_map(|r| r.keys().cloned()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let mut sys = Matrix::zeros(field, keys.len().max(1), unknowns.len());
    for (col, rows) in conditions.iter().enumerate() {
        for (key, s) in rows {
            let r = keys.iter().position(|k| k == key).expect("collected key");
            sys[(r, col)] = s.clone();
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|v| {
            let mut out = vec![XTPoly::zero(field); 4];
            for (u, c) in unknowns.iter().zip(&v) {
                for k in 0..4 {
                    out[k] = out[k].clone() + u[k].scale(c);
                }
            }
            out
        })
        .collect()
}

fn to_flat_vec(v: &[XTPoly], field: Field) -> Vec<Scalar> {
    let mut out = vec![field.zero(); 8];
    for ((k, dt, dx), s) in flatten(v) {
        if dx == 0 && dt < 2 {
            out[k * 2 + dt] = s;
        }
    }
    out
}

fn peirce_search(alg: &EvenCliffordAlgebra) -> PeirceSearch {
    let field = alg.field();
    let e0 = alg.basis(3);
    let sol_01 = peirce_component(alg, &e0, true);
    let sol_10 = peirce_component(alg, &e0, false);
    let span_of = |k: usize| -> Vec<Vec<Scalar>> {
        (0..2)
            .map(|d| {
                let mut v = vec![XTPoly::zero(field); 4];
                v[k] = XTPoly::monomial(XPoly::one(field), d);
                to_flat_vec(&v, field)
            })
            .collect()
    };
    let flat = |s: &[CliffordElement]| s.iter().map(|v| to_flat_vec(v, field)).collect::<Vec<_>>();
    let product = alg.mul(&alg.basis(1), &alg.basis(2));
    let product_ok = product[..3].iter().all(Ring::is_zero) && is_unit_times_t(&product[3]);
    PeirceSearch {
        dim_01: sol_01.len(),
        dim_10: sol_10.len(),
        unique_up_to_units: same_span(field, 8, &flat(&sol_01), &span_of(1))
            && same_span(field, 8, &flat(&sol_10), &span_of(2))
            && product_ok,
    }
}

/// Verify the candidate map as a polynomial identity in `(x, t)`.
pub fn clifford_iso_check(field: Field) -> Result<CliffordIsoReport> {
    let form = build_quadratic_form(field)?;
    let alg = even_clifford(&form)?;
    let discriminant = form.discriminant()?;
    let images = candidate_images(field);
    let mut products = Vec::new();
    for a in basis_symbols(2) {
        for b in basis_symbols(2) {
            let ab = ReducedElement::basis(field, 2, a.0, a.1).multiply(&ReducedElement::basis(field, 2, b.0, b.1))?;
            products.push(ProductCheck {
                left: a,
                right: b,
                expected: apply_iso(&ab)?,
                actual: alg.mul(&images[&a], &images[&b]),
            });
        }
    }
    let map = Matrix::from_fn(field, 4, 4, |r, c| images[&basis_symbols(2)[c]][r].clone());
    let det = map.det()?;
    Ok(CliffordIsoReport {
        field,
        discriminant_is_unit_t: is_unit_times_t(&discriminant),
        discriminant,
        associative: alg.is_associative(),
        unit_preserved: apply_iso(&ReducedElement::unit(field, 2))? == alg.unit(),
        bijective: det.degree() == Some(0) && det.coeff(0).degree() == Some(0),
        products,
        peirce: peirce_search(&alg),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberCliffordReport {
    pub t0: Scalar,
    pub reduced_simple: bool,
    pub clifford_simple: bool,
    pub iso_specializes: bool,
}

impl FiberCliffordReport {
    /// Both fibers are simple exactly off the zero section and the map specializes.
    pub fn consistent(&self) -> bool {
        let expected = !self.t0.is_zero();
        self.reduced_simple == expected && self.clifford_simple == expected && self.iso_specializes
    }
}

pub fn fiber_clifford_report(t0: &Scalar) -> Result<FiberCliffordReport> {
    let field = t0.field();
    let x0 = field.zero();
    let alg = even_clifford(&build_quadratic_form(field)?)?;
    let cl = alg.fiber(&x0, t0);
    let red = fiber_at(2, &x0, t0);
    let images: Vec<Vec<Scalar>> = basis_symbols(2)
        .iter()
        .map(|s| candidate_images(field)[s].iter().map(|c| c.eval_x(&x0).eval(t0)).collect())
        .collect();
    let mut iso_specializes = true;
    for a in 0..4 {
        for b in 0..4 {
            let lhs = cl.mul(&images[a], &images[b]);
            let mut rhs = vec![field.zero(); 4];
            for (k, c) in red.algebra.table()[a][b].iter().enumerate() {
                for (r, img) in rhs.iter_mut().zip(&images[k]) {
                    *r = &*r + &(c * img);
                }
            }
            iso_specializes &= lhs == rhs;
        }
    }
    Ok(FiberCliffordReport {
        t0: t0.clone(),
        reduced_simple: simplicity_check(&red),
        clifford_simple: cl.basis_generates(),
        iso_specializes,
    })
}

pub fn fiber_clifford_check(t0: &Scalar) -> Result<bool> {
    Ok(fiber_clifford_report(t0)?.consistent())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> [Field; 3] {
        [Field::Rationals, Field::default_prime(), Field::prime(7).unwrap()]
    }

    fn k(field: Field, n: i64) -> XTPoly {
        XTPoly::from_scalar(field.from_i64(n))
    }

    #[test]
    fn quadratic_form_values() {
        for f in fields() {
            let q = build_quadratic_form(f).unwrap();
            assert_eq!(q.eval(&[k(f, 1), k(f, 0), k(f, 0)]), XTPoly::t(f));
            assert_eq!(q.eval(&[k(f, 0), k(f, 1), k(f, 1)]), k(f, 1));
            assert_eq!(q.discriminant().unwrap(), XTPoly::t(f).scale(&f.from_i64(-2)));
        }
        assert_eq!(build_quadratic_form(Field::prime(2).unwrap()), Err(Error::CharacteristicTwo));
    }

    #[test]
    fn even_clifford_structure_constants() {
        let f = Field::Rationals;
        let alg = even_clifford(&build_quadratic_form(f).unwrap()).unwrap();
        let [one, v12, v13, v23] = [0, 1, 2, 3].map(|i| alg.basis(i));
        let neg = |v: &CliffordElement| v.iter().map(|c| -c.clone()).collect::<Vec<_>>();
        let times_t = |v: &CliffordElement| v.iter().map(|c| c.clone() * XTPoly::t(f)).collect::<Vec<_>>();
        assert_eq!(alg.mul(&v23, &v23), v23);
        assert_eq!(alg.mul(&v12, &v12), vec![XTPoly::zero(f); 4]);
        assert_eq!(alg.mul(&v12, &v13), neg(&times_t(&v23)));
        assert_eq!(alg.mul(&v23, &v12), v12);
        let one_minus = (0..4).map(|i| one[i].clone() - v23[i].clone()).collect::<Vec<_>>();
        assert_eq!(alg.mul(&v13, &v12), neg(&times_t(&one_minus)));
        assert!(alg.is_associative());
    }

    /// Table derived by hand from `g1² = t`, `g2² = g3² = 0`, `g2g3 + g3g2 = 1`.
    #[test]
    fn structure_table_matches_hand_derivation() {
        let f = Field::prime(10007).unwrap();
        let alg = even_clifford(&build_quadratic_form(f).unwrap()).unwrap();
        let t = XTPoly::t(f);
        let z = XTPoly::zero(f);
        let o = XTPoly::one(f);
        let e = |a: [XTPoly; 4]| a.to_vec();
        // rows: 1, v12, v13, v23
        let expected = [
            [e([o.clone(), z.clone(), z.clone(), z.clone()]), e([z.clone(), o.clone(), z.clone(), z.clone()]), e([z.clone(), z.clone(), o.clone(), z.clone()]), e([z.clone(), z.clone(), z.clone(), o.clone()])],
            [e([z.clone(), o.clone(), z.clone(), z.clone()]), e([z.clone(), z.clone(), z.clone(), z.clone()]), e([z.clone(), z.clone(), z.clone(), -t.clone()]), e([z.clone(), z.clone(), z.clone(), z.clone()])],
            [e([z.clone(), z.clone(), o.clone(), z.clone()]), e([-t.clone(), z.clone(), z.clone(), t.clone()]), e([z.clone(), z.clone(), z.clone(), z.clone()]), e([z.clone(), z.clone(), o.clone(), z.clone()])],
            [e([z.clone(), z.clone(), z.clone(), o.clone()]), e([z.clone(), o.clone(), z.clone(), z.clone()]), e([z.clone(), z.clone(), z.clone(), z.clone()]), e([z.clone(), z.clone(), z.clone(), o.clone()])],
        ];
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(alg.table()[a][b], expected[a][b], "{} * {}", EVEN_BASIS_NAMES[a], EVEN_BASIS_NAMES[b]);
            }
        }
    }

    #[test]
    fn trace_examples() {
        let f = Field::Rationals;
        assert_eq!(trace_map(&ReducedElement::unit(f, 2)).unwrap(), k(f, 2));
        assert!(trace_map(&ReducedElement::basis(f, 2, 0, 1)).unwrap().is_zero());
        let mut a = ReducedElement::term(f, 2, (0, 0), XTPoly::t(f));
        a.add_term((1, 1), -XTPoly::t(f));
        assert!(trace_map(&a).unwrap().is_zero());
        assert_eq!(trace_map(&ReducedElement::unit(f, 3)), Err(Error::MismatchedQuiver(3, 2)));
    }

    #[test]
    fn traceless_examples() {
        let f = Field::Rationals;
        let d = traceless_decompose(&ReducedElement::basis(f, 2, 0, 0)).unwrap();
        assert_eq!(d.scalar, k(f, 1));
        let h = XTPoly::from_scalar(f.from_ratio(1, 2).unwrap());
        let mut expected = ReducedElement::term(f, 2, (0, 0), h.clone());
        expected.add_term((1, 1), -h);
        assert_eq!(d.traceless, expected);
        let d = traceless_decompose(&ReducedElement::basis(f, 2, 1, 0)).unwrap();
        assert!(d.scalar.is_zero());
        assert_eq!(d.traceless, ReducedElement::basis(f, 2, 1, 0));
    }

    #[test]
    fn commutator_traces_vanish() {
        for f in fields() {
            let b01 = ReducedElement::basis(f, 2, 0, 1);
            let b10 = ReducedElement::basis(f, 2, 1, 0);
            assert!(commutator_trace_check(f, &[(b01, b10)]).unwrap());
        }
    }

    #[test]
    fn iso_holds_identically() {
        for f in [Field::Rationals, Field::default_prime()] {
            let r = clifford_iso_check(f).unwrap();
            assert_eq!(r.products.len(), 16);
            assert!(r.holds(), "{:?}", r.first_failure());
            assert_eq!((r.peirce.dim_01, r.peirce.dim_10), (2, 2));
        }
    }

    #[test]
    fn iso_examples() {
        let f = Field::Rationals;
        let r = clifford_iso_check(f).unwrap();
        let t = XTPoly::t(f);
        let z = XTPoly::zero(f);
        let find = |a, b| r.products.iter().find(|p| p.left == a && p.right == b).unwrap().actual.clone();
        assert_eq!(find((0, 1), (1, 0)), vec![z.clone(), z.clone(), z.clone(), t.clone()]);
        assert_eq!(find((1, 0), (0, 1)), vec![t.clone(), z.clone(), z.clone(), -t.clone()]);
        assert_eq!(find((0, 0), (0, 1)), vec![z.clone(), -XTPoly::one(f), z.clone(), z]);
    }

    #[test]
    fn fiber_verdicts_over_f7() {
        let f = Field::prime(7).unwrap();
        for t0 in f.elements().unwrap() {
            let r = fiber_clifford_report(&t0).unwrap();
            assert!(r.consistent(), "{r:?}");
        }
        assert!(fiber_clifford_check(&Field::Rationals.from_i64(1)).unwrap());
        assert!(fiber_clifford_check(&Field::Rationals.zero()).unwrap());
    }
}
