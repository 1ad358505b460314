//! Cyclic Higgs data on the chart, spectral curves, and the dictionary with
//! quiver modules over the spectral surface.
//!
//! `phi[i]: E_i -> E_{i+1}` is a `p_{i+1} x p_i` matrix over `k[x]`. The loop
//! composite at `v_i` is `Φ_i = phi[i-1] ⋯ phi[i+1] phi[i]`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::polyalg::bivariate::squarefree_part_t;
use crate::polyalg::{Field, Matrix, PolyMatrix, Scalar, XPoly, XTPoly};
use crate::quiver::Path;

/// A monic polynomial in `t` over `k[x]`.
pub type SpectralCurve = XTPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct CyclicHiggsData {
    field: Field,
    dims: Vec<usize>,
    phi: Vec<PolyMatrix>,
}

impl CyclicHiggsData {
    /// Validates that the shape chain closes: `phi[i]` is `p_{i+1} x p_i`.
    pub fn new(field: Field, dims: Vec<usize>, phi: Vec<PolyMatrix>) -> Result<Self> {
        let m = dims.len();
        if m == 0 || phi.len() != m {
            return Err(Error::Shape(format!("{} dims but {} arrow matrices", m, phi.len())));
        }
        if dims.contains(&0) {
            return Err(Error::Shape("dimensions must be positive".into()));
        }
        for (i, f) in phi.iter().enumerate() {
            let want = (dims[(i + 1) % m], dims[i]);
            if f.shape() != want {
                return Err(Error::Shape(format!("phi[{i}] is {:?}, expected {want:?}", f.shape())));
            }
            if f.field() != field {
                return Err(Error::InvalidField(format!("phi[{i}] is over {}", f.field())));
            }
        }
        Ok(CyclicHiggsData { field, dims, phi })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn m(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn phi(&self) -> &[PolyMatrix] {
        &self.phi
    }

    pub fn has_equal_dims(&self) -> bool {
        self.dims.iter().all(|&p| p == self.dims[0])
    }

    /// `Φ_i`, a `p_i x p_i` matrix.
    pub fn loop_composite(&self, i: usize) -> PolyMatrix {
        let m = self.m();
        let mut acc = self.phi[i % m].clone();
        for step in 1..m {
            acc = &self.phi[(i + step) % m] * &acc;
        }
        acc
    }

    /// `det(t I - Φ_i)`.
    pub fn spectral_curve(&self, i: usize) -> SpectralCurve {
        self.loop_composite(i).char_poly().expect("loop composite is square")
    }

    pub fn spectral_curves(&self) -> Vec<SpectralCurve> {
        (0..self.m()).map(|i| self.spectral_curve(i)).collect()
    }

    /// The action of a path `E_source -> E_target`.
    pub fn path_action(&self, p: &Path) -> PolyMatrix {
        let m = self.m();
        let mut acc = Matrix::identity(self.field, self.dims[p.source % m]);
        for step in 0..p.length {
            acc = &self.phi[(p.source + step) % m] * &acc;
        }
        acc
    }

    /// The `(Σ p_i)`-square block matrix with `phi[i]` in block `(i+1, i)`.
    pub fn block_cyclic_matrix(&self) -> PolyMatrix {
        let m = self.m();
        let offsets: Vec<usize> = self.dims.iter().scan(0, |acc, &p| Some(std::mem::replace(acc, *acc + p))).collect();
        let n: usize = self.dims.iter().sum();
        let mut out = Matrix::zeros(self.field, n, n);
        for i in 0..m {
            let (r0, c0) = (offsets[(i + 1) % m], offsets[i]);
            for r in 0..self.phi[i].rows() {
                for c in 0..self.phi[i].cols() {
                    out[(r0 + r, c0 + c)] = &out[(r0 + r, c0 + c)] + &self.phi[i][(r, c)];
                }
            }
        }
        out
    }
}

/// The `t`-adic shape of the spectral curves.
#[derive(Clone, Debug, PartialEq)]
pub struct CommonComponentReport {
    pub curves: Vec<SpectralCurve>,
    /// `q_i`, the multiplicity of the zero section in `c_i`.
    pub q: Vec<usize>,
    /// `c_i / t^{q_i}`.
    pub stripped: Vec<SpectralCurve>,
    /// All stripped curves are equal as polynomials.
    pub strict: bool,
    /// All stripped curves have the same squarefree part.
    pub squarefree_match: bool,
    /// The common curve: the stripped curve if strict, else the shared squarefree part.
    pub common: Option<SpectralCurve>,
}

impl CommonComponentReport {
    pub fn holds(&self) -> bool {
        self.common.is_some()
    }
}

pub fn common_component_check(h: &CyclicHiggsData) -> CommonComponentReport {
    let curves = h.spectral_curves();
    let mut q = Vec::new();
    let mut stripped = Vec::new();
    for c in &curves {
        let v = c.valuation().expect("monic curve is nonzero");
        q.push(v);
        let tail: Vec<XPoly> = c.coeffs()[v..].to_vec();
        stripped.push(XTPoly::from_coeffs(h.field, tail));
    }
    let strict = stripped.iter().all(|s| *s == stripped[0]);
    let sq: Vec<SpectralCurve> = stripped.iter().map(|s| squarefree_part_t(s).expect("monic in t")).collect();
    let squarefree_match = sq.iter().all(|s| *s == sq[0]);
    let common = if strict {
        Some(stripped[0].clone())
    } else if squarefree_match {
        Some(sq[0].clone())
    } else {
        None
    };
    CommonComponentReport { curves, q, stripped, strict, squarefree_match, common }
}

/// A free `k[x]`-module of rank `p` with `t` acting by `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct SLattice {
    t: PolyMatrix,
}

impl SLattice {
    pub fn new(t: PolyMatrix) -> Result<Self> {
        if !t.is_square() {
            return Err(Error::NonSquare { rows: t.rows(), cols: t.cols() });
        }
        Ok(SLattice { t })
    }

    pub fn rank(&self) -> usize {
        self.t.rows()
    }

    pub fn t_matrix(&self) -> &PolyMatrix {
        &self.t
    }

    pub fn field(&self) -> Field {
        self.t.field()
    }

    /// `c(T) = 0`.
    pub fn is_supported_on(&self, c: &XTPoly) -> bool {
        self.t.eval_t_poly(c).is_ok_and(|m| m.is_zero())
    }
}

/// Quiver modules over the spectral surface: `psi[i]: F_i -> F_{i+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralQuiverData {
    pub modules: Vec<SLattice>,
    pub psi: Vec<PolyMatrix>,
}

impl SpectralQuiverData {
    pub fn m(&self) -> usize {
        self.modules.len()
    }

    /// `psi[i] T_i = T_{i+1} psi[i]` for every `i`.
    pub fn is_equivariant(&self) -> bool {
        let m = self.m();
        (0..m).all(|i| {
            let lhs = self.psi[i].try_mul(self.modules[i].t_matrix());
            let rhs = self.modules[(i + 1) % m].t_matrix().try_mul(&self.psi[i]);
            matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
        })
    }

    /// The composite of the arrows once around the loop from `v_i`.
    pub fn loop_map(&self, i: usize) -> Result<PolyMatrix> {
        let m = self.m();
        let mut acc = self.psi[i % m].clone();
        for step in 1..m {
            acc = self.psi[(i + step) % m].try_mul(&acc)?;
        }
        Ok(acc)
    }
}

pub fn to_spectral_module(h: &CyclicHiggsData) -> SpectralQuiverData {
    let modules = (0..h.m()).map(|i| SLattice::new(h.loop_composite(i)).expect("square")).collect();
    SpectralQuiverData { modules, psi: h.phi.clone() }
}

/// `psi[i-1] ⋯ psi[i] = T_i` at every vertex.
pub fn verify_loop_relation(s: &SpectralQuiverData) -> bool {
    first_loop_failure(s).is_none()
}

fn first_loop_failure(s: &SpectralQuiverData) -> Option<usize> {
    (0..s.m()).find(|&i| s.loop_map(i).map_or(true, |l| &l != s.modules[i].t_matrix()))
}

/// `c_i(T_i) = 0` with `c_i` the characteristic polynomial of `T_i`.
pub fn verify_support(s: &SpectralQuiverData, i: usize) -> bool {
    let f = &s.modules[i];
    f.t_matrix().char_poly().is_ok_and(|c| f.is_supported_on(&c))
}

pub fn from_spectral_module(s: &SpectralQuiverData) -> Result<CyclicHiggsData> {
    if s.m() == 0 || s.psi.len() != s.m() {
        return Err(Error::Shape("one arrow per vertex required".into()));
    }
    if let Some(i) = first_loop_failure(s) {
        return Err(Error::LoopRelation(i));
    }
    let dims = s.modules.iter().map(SLattice::rank).collect();
    CyclicHiggsData::new(s.modules[0].field(), dims, s.psi.clone())
}

/// A random coefficient: uniform residue over `F_p`, an integer in `[-9, 9]` over `Q`.
pub fn random_scalar<G: Rng + ?Sized>(field: Field, rng: &mut G) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
        Field::Rationals => field.from_i64(rng.gen_range(-9..=9)),
    }
}

pub fn random_poly<G: Rng + ?Sized>(field: Field, max_degree: usize, rng: &mut G) -> XPoly {
    XPoly::from_coeffs(field, (0..=max_degree).map(|_| random_scalar(field, rng)).collect())
}

/// Cyclic data with every entry of degree at most `max_degree`.
pub fn random_cyclic_data<G: Rng + ?Sized>(field: Field, dims: &[usize], max_degree: usize, rng: &mut G) -> Result<CyclicHiggsData> {
    let m = dims.len();
    let phi = (0..m)
        .map(|i| Matrix::from_fn(field, dims[(i + 1) % m], dims[i], |_, _| random_poly(field, max_degree, rng)))
        .collect();
    CyclicHiggsData::new(field, dims.to_vec(), phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::CyclicQuiver;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::Rationals
    }

    fn xp(c: &[i64]) -> XPoly {
        XPoly::from_i64s(q(), c)
    }

    fn mat(rows: Vec<Vec<XPoly>>) -> PolyMatrix {
        Matrix::from_rows(q(), rows).unwrap()
    }

    fn xt(coeffs: Vec<XPoly>) -> XTPoly {
        XTPoly::from_coeffs(q(), coeffs)
    }

    fn pair_example() -> CyclicHiggsData {
        CyclicHiggsData::new(q(), vec![1, 1], vec![mat(vec![vec![xp(&[0, 1])]]), mat(vec![vec![xp(&[-1, 1])]])]).unwrap()
    }

    fn uneven_example() -> CyclicHiggsData {
        let phi0 = mat(vec![vec![xp(&[1]), xp(&[0, 1])]]);
        let phi1 = mat(vec![vec![xp(&[1])], vec![xp(&[1])]]);
        CyclicHiggsData::new(q(), vec![2, 1], vec![phi0, phi1]).unwrap()
    }

    #[test]
    fn shape_chain_is_validated() {
        let bad = CyclicHiggsData::new(q(), vec![2, 1], vec![mat(vec![vec![xp(&[1])]]), mat(vec![vec![xp(&[1])]])]);
        assert!(matches!(bad, Err(Error::Shape(_))));
    }

    #[test]
    fn loop_composite_examples() {
        let h = pair_example();
        assert_eq!(h.loop_composite(0), mat(vec![vec![xp(&[0, -1, 1])]]));
        assert_eq!(h.loop_composite(1), mat(vec![vec![xp(&[0, -1, 1])]]));

        let h = uneven_example();
        assert_eq!(h.loop_composite(1), mat(vec![vec![xp(&[1, 1])]]));
        assert_eq!(h.loop_composite(0), mat(vec![vec![xp(&[1]), xp(&[0, 1])], vec![xp(&[1]), xp(&[0, 1])]]));

        let single = CyclicHiggsData::new(q(), vec![1], vec![mat(vec![vec![xp(&[3, 1])]])]).unwrap();
        assert_eq!(single.loop_composite(0), single.phi()[0]);
    }

    #[test]
    fn spectral_curve_examples() {
        let h = pair_example();
        let c = xt(vec![xp(&[0, 1, -1]), xp(&[1])]);
        assert_eq!(h.spectral_curve(0), c);
        assert_eq!(h.spectral_curve(1), c);

        let h = uneven_example();
        assert_eq!(h.spectral_curve(1), xt(vec![xp(&[-1, -1]), xp(&[1])]));
        assert_eq!(h.spectral_curve(0), xt(vec![xp(&[]), xp(&[-1, -1]), xp(&[1])]));

        let swap = mat(vec![vec![xp(&[]), xp(&[1])], vec![xp(&[1]), xp(&[])]]);
        let h = CyclicHiggsData::new(q(), vec![2], vec![swap]).unwrap();
        assert_eq!(h.spectral_curve(0), xt(vec![xp(&[-1]), xp(&[]), xp(&[1])]));
    }

    #[test]
    fn common_component_examples() {
        let r = common_component_check(&uneven_example());
        assert!(r.strict);
        assert_eq!(r.q, vec![1, 0]);
        assert_eq!(r.common, Some(xt(vec![xp(&[-1, -1]), xp(&[1])])));

        let h = CyclicHiggsData::new(q(), vec![1, 1], vec![mat(vec![vec![xp(&[])]]), mat(vec![vec![xp(&[0, 1])]])]).unwrap();
        let r = common_component_check(&h);
        assert!(r.strict);
        assert_eq!(r.q, vec![1, 1]);
        assert_eq!(r.common, Some(xt(vec![xp(&[1])])));

        let f = Field::prime(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dims in [vec![2, 2], vec![3, 3, 3], vec![1, 1, 1, 1]] {
            let h = random_cyclic_data(f, &dims, 2, &mut rng).unwrap();
            let r = common_component_check(&h);
            assert!(r.strict);
            assert!(r.q.iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn path_action_examples() {
        let h = uneven_example();
        let quiver = CyclicQuiver::new(2).unwrap();
        assert_eq!(h.path_action(&quiver.idempotent(0)), Matrix::identity(q(), 2));
        let f = Field::prime(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h3 = random_cyclic_data(f, &[2, 1, 3], 2, &mut rng).unwrap();
        let q3 = CyclicQuiver::new(3).unwrap();
        assert_eq!(h3.path_action(&q3.path(0, 2)), &h3.phi()[1] * &h3.phi()[0]);
        for i in 0..3 {
            assert_eq!(h3.path_action(&q3.loop_at(i, 1)), h3.loop_composite(i));
        }
    }

    #[test]
    fn spectral_module_examples() {
        let h = pair_example();
        let s = to_spectral_module(&h);
        assert_eq!(s.modules[0].t_matrix(), &mat(vec![vec![xp(&[0, -1, 1])]]));
        assert_eq!(s.psi, h.phi().to_vec());
        assert!(s.is_equivariant() && verify_loop_relation(&s));
        assert_eq!(from_spectral_module(&s).unwrap(), h);

        let mut bad = s.clone();
        bad.psi[0][(0, 0)] = &bad.psi[0][(0, 0)] + &xp(&[1]);
        assert!(!verify_loop_relation(&bad));
        assert!(matches!(from_spectral_module(&bad), Err(Error::LoopRelation(0))));

        let single = CyclicHiggsData::new(q(), vec![1], vec![mat(vec![vec![xp(&[2, 0, 1])]])]).unwrap();
        let s = to_spectral_module(&single);
        assert_eq!(s.modules[0].t_matrix(), &single.phi()[0]);
    }

    #[test]
    fn support_examples() {
        let nil = SLattice::new(mat(vec![vec![xp(&[]), xp(&[1])], vec![xp(&[]), xp(&[])]])).unwrap();
        assert!(nil.is_supported_on(&xt(vec![xp(&[]), xp(&[]), xp(&[1])])));
        assert!(!nil.is_supported_on(&xt(vec![xp(&[]), xp(&[1])])));
        let s = to_spectral_module(&uneven_example());
        assert!(verify_support(&s, 0) && verify_support(&s, 1));
    }

    #[test]
    fn random_round_trips_and_invariants() {
        let f = Field::prime(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let m = rng.gen_range(1..=4);
            let dims: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=3)).collect();
            let h = random_cyclic_data(f, &dims, 2, &mut rng).unwrap();
            let s = to_spectral_module(&h);
            assert!(s.is_equivariant());
            assert!(verify_loop_relation(&s));
            assert!((0..m).all(|i| verify_support(&s, i)));
            assert_eq!(from_spectral_module(&s).unwrap(), h);
            for (i, c) in h.spectral_curves().iter().enumerate() {
                assert!(c.is_monic() && c.degree() == Some(dims[i]));
            }
        }
    }

    #[test]
    fn curves_invariant_under_constant_conjugation() {
        let f = Field::prime(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let dims = [2, 3, 2];
        let h = random_cyclic_data(f, &dims, 2, &mut rng).unwrap();
        let g: Vec<Matrix<Scalar>> = dims
            .iter()
            .map(|&p| loop {
                let g = Matrix::from_fn(f, p, p, |_, _| random_scalar(f, &mut rng));
                if !g.det().unwrap().is_zero() {
                    break g;
                }
            })
            .collect();
        let phi = (0..3)
            .map(|i| {
                let gi_inv = g[i].adjugate().unwrap().mul_elem(&g[i].det().unwrap().inv().unwrap());
                &(&PolyMatrix::from_scalars(&g[(i + 1) % 3]) * &h.phi()[i]) * &PolyMatrix::from_scalars(&gi_inv)
            })
            .collect();
        let h2 = CyclicHiggsData::new(f, dims.to_vec(), phi).unwrap();
        assert_eq!(h.spectral_curves(), h2.spectral_curves());
    }

    /// `det(s I - Φ)^m = Π_i c_i(s^m)` pointwise, with `det(s I - Φ) = c_0(s^m)` for equal dims.
    #[test]
    fn block_cyclic_determinant_identity() {
        let f = Field::prime(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for m in 1..=3usize {
            let h = random_cyclic_data(f, &vec![2; m], 1, &mut rng).unwrap();
            let big = h.block_cyclic_matrix();
            for _ in 0..5 {
                let (x0, s0) = (random_scalar(f, &mut rng), random_scalar(f, &mut rng));
                let shifted = Matrix::from_fn(f, big.rows(), big.cols(), |r, c| {
                    let e = big[(r, c)].eval(&x0);
                    if r == c { &s0 - &e } else { -e }
                });
                let d = shifted.det().unwrap();
                let sm = s0.pow(m as u64);
                let prod = h.spectral_curves().iter().fold(f.one(), |acc, c| &acc * &c.eval_x(&x0).eval(&sm));
                assert_eq!(d.pow(m as u64), prod);
                assert_eq!(d, h.spectral_curve(0).eval_x(&x0).eval(&sm));
            }
        }
    }
}
