//! From `(c, L_0, D_0, …, D_{m-1})` back to cyclic data, and round trips.
//!
//! All lattices live in `V = L_0 ⊗ k(x)` with `t` acting by `T_0`, stored as
//! `N / d` with `N` in Hermite form and `d` the least monic denominator.
//! `L_{i+1} = (L_i : I_{D_i})` and `φ_i` is the inclusion `L_i ⊆ L_{i+1}`;
//! the relation `Π I_{D_i} = (t)` forces `L_m = t^{-1} L_0`, and the last
//! arrow is `L_{m-1} ⊆ t^{-1} L_0 --t--> L_0`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::divisor::EffectiveDivisor;
use super::{check_divisor_relation, forward_spectral_data, require_supported_curve, SpectralData};
use crate::error::{Error, Result};
use crate::higgs::{random_scalar, CyclicHiggsData};
use crate::polyalg::normal_form::{hermite_normal_form, kernel_basis};
use crate::polyalg::{ExactDiv, Field, Matrix, PolyMatrix, Ring, Scalar, XPoly, XTPoly};

/// A full-rank `k[x]`-lattice `N / d` in `k(x)^p`.
#[derive(Clone, Debug, PartialEq)]
struct FracLattice {
    num: PolyMatrix,
    den: XPoly,
}

impl FracLattice {
    fn new(num: &PolyMatrix, den: &XPoly) -> Result<Self> {
        let mut g = den.clone();
        for i in 0..num.rows() {
            for j in 0..num.cols() {
                g = g.gcd(&num[(i, j)])?;
            }
        }
        let scale = den.leading().inv().ok_or(Error::DivisionByZero)?;
        let g = g.scale(&scale).monic();
        let num = num.div_exact(&g).expect("gcd divides every entry").mul_elem(&XPoly::constant(scale.clone()));
        let den = den.div_exact(&g).expect("gcd divides").scale(&scale);
        Ok(FracLattice { num: hermite_normal_form(&num)?, den })
    }

    fn identity(field: Field, p: usize) -> Self {
        FracLattice { num: Matrix::identity(field, p), den: XPoly::one(field) }
    }
}

fn element_of(g: &XTPoly, t: &PolyMatrix) -> Result<PolyMatrix> {
    t.eval_poly(&crate::polyalg::Poly::from_coeffs(t.field(), g.coeffs().to_vec()))
}

/// `(L : I) = {v : I v ⊆ L}` for `L = N/d` in `V`.
fn colon(l: &FracLattice, ideal: &EffectiveDivisor, t0: &PolyMatrix) -> Result<FracLattice> {
    let field = t0.field();
    let p = t0.rows();
    let det_n = l.num.det()?;
    // t in the basis of L
    let t_l = (&(&l.num.adjugate()? * t0) * &l.num).div_exact(&det_n).ok_or(Error::NotEquivariant)?;
    let delta = ideal.lattice().det()?;
    let gens = ideal.generators();
    let r = gens.len();
    // u with g(T_L) u ≡ 0 mod δ for every generator g
    let mut sys = Matrix::zeros(field, r * p, p + r * p);
    for (k, g) in gens.iter().enumerate() {
        let gm = element_of(g, &t_l)?;
        for a in 0..p {
            for b in 0..p {
                sys[(k * p + a, b)] = gm[(a, b)].clone();
            }
            sys[(k * p + a, p + k * p + a)] = -delta.clone();
        }
    }
    let ker = kernel_basis(&sys);
    let cols: Vec<Vec<XPoly>> = ker.iter().map(|v| v[..p].to_vec()).collect();
    let u = hermite_normal_form(&Matrix::from_cols(field, p, &cols))?;
    FracLattice::new(&(&l.num * &u), &(&l.den * &delta))
}

/// `B_{i+1}^{-1} B_i` for lattices `N_i / d_i`.
fn inclusion_matrix(from: &FracLattice, to: &FracLattice) -> Result<PolyMatrix> {
    let numer = (&to.num.adjugate()? * &from.num).mul_elem(&to.den);
    let denom = &from.den * &to.num.det()?;
    numer
        .div_exact(&denom)
        .ok_or_else(|| Error::Verification("lattice inclusion is not integral".into()))
}

pub fn reverse_construct(sd: &SpectralData) -> Result<CyclicHiggsData> {
    let c = &sd.c;
    let field = c.base_field();
    let m = sd.m();
    let p = sd.l0.rank();
    if m == 0 {
        return Err(Error::Shape("at least one divisor is required".into()));
    }
    require_supported_curve(c)?;
    if c.degree() != Some(p) || sd.l0.t_matrix().char_poly()? != *c {
        return Err(Error::Unsupported("L0 is not an invertible module on the curve".into()));
    }
    if sd.divisors.iter().any(|d| d.lattice().rows() != p) || !check_divisor_relation(&sd.divisors, c)? {
        return Err(Error::DivisorRelation);
    }
    let t0 = sd.l0.t_matrix();
    let mut lattices = vec![FracLattice::identity(field, p)];
    for d in &sd.divisors {
        let next = colon(lattices.last().expect("nonempty"), d, t0)?;
        lattices.push(next);
    }
    let t_inv = FracLattice::new(&t0.adjugate()?, &t0.det()?)?;
    if lattices[m] != t_inv {
        return Err(Error::DivisorRelation);
    }
    let mut phi = Vec::with_capacity(m);
    for i in 0..m - 1 {
        phi.push(inclusion_matrix(&lattices[i], &lattices[i + 1])?);
    }
    let last = &lattices[m - 1];
    let closing = (t0 * &last.num)
        .div_exact(&last.den)
        .ok_or_else(|| Error::Verification("t L_{m-1} is not inside L_0".into()))?;
    phi.push(closing);
    CyclicHiggsData::new(field, vec![p; m], phi)
}

pub const DEFAULT_INTERTWINER_DEGREE: usize = 2;
const RANDOM_ATTEMPTS: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct RoundTripReport {
    pub reconstructed: CyclicHiggsData,
    pub curves_equal: bool,
    pub l0_equal: bool,
    pub divisors_equal: bool,
    pub spectral_invariants_equal: bool,
    pub intertwiner: Option<Vec<PolyMatrix>>,
}

impl RoundTripReport {
    pub fn intertwiner_found(&self) -> bool {
        self.intertwiner.is_some()
    }
}

/// `forward ∘ reverse ∘ forward`, plus a search for `X_i` with
/// `X_{i+1} φ_i = φ'_i X_i` and constant nonzero `det X_i`.
pub fn round_trip(h: &CyclicHiggsData, max_degree: usize) -> Result<RoundTripReport> {
    let sd = forward_spectral_data(h)?;
    let reconstructed = reverse_construct(&sd)?;
    let sd2 = forward_spectral_data(&reconstructed)?;
    let curves_equal = sd.c == sd2.c;
    let l0_equal = sd.l0 == sd2.l0;
    let divisors_equal = sd.divisors == sd2.divisors;
    let intertwiner = (0..=max_degree).find_map(|d| find_intertwiner(h, &reconstructed, d));
    Ok(RoundTripReport {
        reconstructed,
        curves_equal,
        l0_equal,
        divisors_equal,
        spectral_invariants_equal: curves_equal && divisors_equal,
        intertwiner,
    })
}

/// Solve the intertwining equations with entries of degree at most `cap`
/// and look for a solution with unimodular components.
pub fn find_intertwiner(h: &CyclicHiggsData, h2: &CyclicHiggsData, cap: usize) -> Option<Vec<PolyMatrix>> {
    if h.dims() != h2.dims() {
        return None;
    }
    let field = h.field();
    let m = h.m();
    let dims = h.dims();
    let offsets: Vec<usize> = dims.iter().scan(0, |acc, &p| Some(std::mem::replace(acc, *acc + p * p * (cap + 1)))).collect();
    let unknown = |i: usize, r: usize, c: usize, d: usize| offsets[i] + (r * dims[i] + c) * (cap + 1) + d;
    let n_unknowns = offsets[m - 1] + dims[m - 1] * dims[m - 1] * (cap + 1);
    let max_phi = h.phi().iter().chain(h2.phi()).map(PolyMatrix::max_degree).max().unwrap_or(0);
    let deg_rows = max_phi + cap + 1;
    let mut row_offsets = Vec::new();
    let mut rows = 0;
    for i in 0..m {
        row_offsets.push(rows);
        rows += dims[(i + 1) % m] * dims[i] * deg_rows;
    }
    let mut sys = Matrix::zeros(field, rows.max(1), n_unknowns);
    for i in 0..m {
        let j = (i + 1) % m;
        let (phi, phi2) = (&h.phi()[i], &h2.phi()[i]);
        let row = |r: usize, c: usize, e: usize| row_offsets[i] + (r * dims[i] + c) * deg_rows + e;
        for r in 0..dims[j] {
            for c in 0..dims[i] {
                // (X_j φ)_{rc} = Σ_s X_j[r,s] φ[s,c]
                for s in 0..dims[j] {
                    for d in 0..=cap {
                        for (e, a) in phi[(s, c)].coeffs().iter().enumerate() {
                            let (rr, cc) = (row(r, c, d + e), unknown(j, r, s, d));
                            sys[(rr, cc)] = &sys[(rr, cc)] + a;
                        }
                    }
                }
                // (φ' X_i)_{rc} = Σ_s φ'[r,s] X_i[s,c]
                for s in 0..dims[i] {
                    for d in 0..=cap {
                        for (e, a) in phi2[(r, s)].coeffs().iter().enumerate() {
                            let (rr, cc) = (row(r, c, d + e), unknown(i, s, c, d));
                            sys[(rr, cc)] = &sys[(rr, cc)] - a;
                        }
                    }
                }
            }
        }
    }
    let basis = sys.nullspace();
    if basis.is_empty() {
        return None;
    }
    let assemble = |v: &[Scalar]| -> Vec<PolyMatrix> {
        (0..m)
            .map(|i| {
                Matrix::from_fn(field, dims[i], dims[i], |r, c| {
                    XPoly::from_coeffs(field, (0..=cap).map(|d| v[unknown(i, r, c, d)].clone()).collect())
                })
            })
            .collect()
    };
    let unimodular = |xs: &[PolyMatrix]| xs.iter().all(|x| x.det().is_ok_and(|d| d.degree() == Some(0)));
    for v in &basis {
        let xs = assemble(v);
        if unimodular(&xs) {
            return Some(xs);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..RANDOM_ATTEMPTS {
        let mut v = vec![field.zero(); n_unknowns];
        for b in &basis {
            let coef = random_scalar(field, &mut rng);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = &*vi + &(&coef * bi);
            }
        }
        let xs = assemble(&v);
        if unimodular(&xs) {
            return Some(xs);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::divisor::structure_lattice;
    use crate::higgs::random_cyclic_data;

    fn one_by_one(f: Field, a: &[i64]) -> PolyMatrix {
        Matrix::from_rows(f, vec![vec![XPoly::from_i64s(f, a)]]).unwrap()
    }

    #[test]
    fn reverse_pair_example() {
        let q = Field::Rationals;
        let c = XTPoly::from_coeffs(q, vec![XPoly::from_i64s(q, &[0, 1, -1]), XPoly::one(q)]);
        let s = structure_lattice(&c).unwrap();
        let dx = super::super::divisor_of_map(&one_by_one(q, &[0, 1]), &s, &s).unwrap();
        let dx1 = super::super::divisor_of_map(&one_by_one(q, &[-1, 1]), &s, &s).unwrap();
        let sd = SpectralData { c, l0: s, divisors: vec![dx, dx1] };
        let h = reverse_construct(&sd).unwrap();
        assert_eq!(h.phi(), &[one_by_one(q, &[0, 1]), one_by_one(q, &[-1, 1])]);
    }

    #[test]
    fn reverse_rejects_broken_relation() {
        let q = Field::Rationals;
        let c = XTPoly::from_coeffs(q, vec![XPoly::from_i64s(q, &[0, 1, -1]), XPoly::one(q)]);
        let s = structure_lattice(&c).unwrap();
        let sd = SpectralData { c, l0: s, divisors: vec![EffectiveDivisor::zero(q, 1); 2] };
        assert!(matches!(reverse_construct(&sd), Err(Error::DivisorRelation)));
    }

    #[test]
    fn round_trip_examples() {
        let q = Field::Rationals;
        let h = CyclicHiggsData::new(q, vec![1, 1], vec![one_by_one(q, &[0, 1]), one_by_one(q, &[-1, 1])]).unwrap();
        let r = round_trip(&h, 2).unwrap();
        assert!(r.spectral_invariants_equal && r.intertwiner_found());

        let single = CyclicHiggsData::new(q, vec![1], vec![one_by_one(q, &[5, 1])]).unwrap();
        let r = round_trip(&single, 2).unwrap();
        assert!(r.spectral_invariants_equal && r.intertwiner_found());
        assert_eq!(r.reconstructed.loop_composite(0), single.loop_composite(0));

        let f7 = Field::prime(7).unwrap();
        let phi = (0..3).map(|i| one_by_one(f7, &[i, 1])).collect();
        let h = CyclicHiggsData::new(f7, vec![1, 1, 1], phi).unwrap();
        let r = round_trip(&h, 2).unwrap();
        assert!(r.spectral_invariants_equal && r.intertwiner_found());
    }

    #[test]
    fn rank_one_reverse_from_div_t() {
        let f = Field::prime(10007).unwrap();
        let c = XTPoly::from_coeffs(f, vec![XPoly::from_i64s(f, &[0, -1]), XPoly::zero(f), XPoly::one(f)]);
        let s = structure_lattice(&c).unwrap();
        let div_t = super::super::divisor_of_function(&XTPoly::t(f), &c).unwrap();
        let h = reverse_construct(&SpectralData { c: c.clone(), l0: s, divisors: vec![div_t] }).unwrap();
        assert_eq!(h.spectral_curve(0), c);
    }

    #[test]
    fn random_rank_two_round_trips() {
        let f = Field::prime(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut done = 0;
        while done < 4 {
            let h = random_cyclic_data(f, &[2, 2], 1, &mut rng).unwrap();
            let Ok(r) = round_trip(&h, 1) else { continue };
            assert!(r.spectral_invariants_equal && r.l0_equal);
            assert_eq!(r.reconstructed.loop_composite(0), h.loop_composite(0));
            done += 1;
        }
    }
}
