//! Smoothness and irreducibility certificates for affine spectral curves `c(x, t) = 0`.

use crate::error::{Error, Result};
use crate::polyalg::bivariate::{is_squarefree_t, resultant};
use crate::polyalg::normal_form::{colength, hermite_normal_form};
use crate::polyalg::roots::is_irreducible;
use crate::polyalg::{Field, Matrix, Ring, Scalar, Var, XPoly, XTPoly};

use super::divisor::coords;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Smooth,
    Singular,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SmoothWitness {
    /// `gcd(Res_t(c, c_t), Res_t(c, c_x))` is this nonzero constant.
    ResultantGcd(XPoly),
    /// `c`, `c_t`, `c_x` share the factor `factor(t)` over `x = x0`; `t0` is a root in `k` if any.
    JacobianPoint { x0: Scalar, factor: XPoly, t0: Option<Scalar> },
    /// `(c_t, c_x)` is the unit ideal of `S`.
    JacobianUnit,
    /// `S / (c_t, c_x)` has this positive `k`-dimension: singular points off `k`.
    JacobianColength(usize),
    /// `(c_t, c_x)` has infinite colength: `c` has a repeated component.
    NonReduced,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothCertificate {
    pub verdict: Verdict,
    pub resultant_gcd: XPoly,
    pub witness: SmoothWitness,
}

impl SmoothCertificate {
    pub fn is_smooth(&self) -> bool {
        self.verdict == Verdict::Smooth
    }
}

fn validate(c: &XTPoly) -> Result<usize> {
    match c.degree() {
        Some(n) if n >= 1 && c.is_monic() => Ok(n),
        _ => Err(Error::Verification("curve must be monic of positive degree in t".into())),
    }
}

/// The resultant certificate first, then an explicit point scan over `k`,
/// then the colength of the Jacobian ideal in `S`, which decides every case.
pub fn smoothness_certificate(c: &XTPoly) -> Result<SmoothCertificate> {
    let n = validate(c)?;
    let field = c.base_field();
    let ct = c.derivative();
    let cx = c.derivative_x();
    let r1 = resultant(c, &ct)?;
    let r2 = if cx.is_zero() { XPoly::zero(field) } else { resultant(c, &cx)? };
    let g = r1.gcd(&r2)?;
    if g.degree() == Some(0) {
        return Ok(SmoothCertificate { verdict: Verdict::Smooth, resultant_gcd: g.clone(), witness: SmoothWitness::ResultantGcd(g) });
    }
    let singular = |witness| Ok(SmoothCertificate { verdict: Verdict::Singular, resultant_gcd: g.clone(), witness });
    if !g.is_zero() {
        for x0 in g.roots_in_field() {
            let h = c.eval_x(&x0).gcd(&ct.eval_x(&x0))?.gcd(&cx.eval_x(&x0))?;
            if h.degree().is_some_and(|d| d >= 1) {
                let t0 = h.roots_in_field().into_iter().next();
                return singular(SmoothWitness::JacobianPoint { x0, factor: h, t0 });
            }
        }
    }
    let cols: Vec<Vec<XPoly>> = (0..n)
        .flat_map(|j| {
            let tj = XTPoly::monomial(XPoly::one(field), j).with_var(Var::T);
            [coords(&(&ct * &tj), c), coords(&(&cx * &tj), c)]
        })
        .collect();
    let Ok(h) = hermite_normal_form(&Matrix::from_cols(field, n, &cols)) else {
        return singular(SmoothWitness::NonReduced);
    };
    match colength(&h)? {
        0 => Ok(SmoothCertificate { verdict: Verdict::Smooth, resultant_gcd: g.clone(), witness: SmoothWitness::JacobianUnit }),
        len => singular(SmoothWitness::JacobianColength(len)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Irreducibility {
    Irreducible,
    /// A witness factor of positive degree, if one was found.
    Reducible(Option<XTPoly>),
    Undetermined,
}

/// Sample points of `k`: `0, 1, 2, …` over `F_p`, `0, 1, -1, 2, -2, …` over `Q`.
fn sample_points(field: Field, count: usize) -> Vec<Scalar> {
    match field {
        Field::Prime(p) => (0..count.min(p as usize) as i64).map(|v| field.from_i64(v)).collect(),
        Field::Rationals => (0..count as i64).map(|k| field.from_i64(if k % 2 == 1 { k / 2 + 1 } else { -(k / 2) })).collect(),
    }
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> XPoly {
    let field = xs[0].field();
    let mut acc = XPoly::zero(field);
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = XPoly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let inv = (xi - xj).inv().expect("distinct nodes");
                basis = &basis * &XPoly::from_coeffs(field, vec![-(xj * &inv), inv]);
            }
        }
        acc = &acc + &basis;
    }
    acc
}

/// `c(x, r(x))` in `k[x]`.
fn substitute(c: &XTPoly, r: &XPoly) -> XPoly {
    c.coeffs().iter().rev().fold(XPoly::zero(c.base_field()), |acc, a| &(&acc * r) + a)
}

const MAX_ROOT_COMBINATIONS: usize = 100_000;

/// A root `r ∈ k[x]` of `c`, searched by interpolating fiberwise roots.
/// `Ok(None)` proves there is none; `Err(())` means the search was not exhaustive.
fn linear_factor(c: &XTPoly) -> std::result::Result<Option<XPoly>, ()> {
    let n = c.degree().expect("positive degree");
    let field = c.base_field();
    let bound = (0..n).filter_map(|j| c.coeff(j).degree().map(|d| d / (n - j))).max().unwrap_or(0);
    let xs = sample_points(field, bound + 1);
    if xs.len() < bound + 1 {
        return Err(());
    }
    let mut fibers = Vec::new();
    for x0 in &xs {
        let roots = c.eval_x(x0).roots_in_field();
        if roots.is_empty() {
            return Ok(None);
        }
        fibers.push(roots);
    }
    if fibers.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.len())).is_none_or(|total| total > MAX_ROOT_COMBINATIONS) {
        return Err(());
    }
    let mut choice = vec![0usize; fibers.len()];
    loop {
        let ys: Vec<Scalar> = choice.iter().zip(&fibers).map(|(&k, f)| f[k].clone()).collect();
        let r = interpolate(&xs, &ys);
        if substitute(c, &r).is_zero() {
            return Ok(Some(r));
        }
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(None);
            }
            choice[pos] += 1;
            if choice[pos] < fibers[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Irreducibility of a `t`-monic `c` over `k(x)`, equivalently in `k[x][t]`.
///
/// Degree 1 is irreducible; a repeated factor is reducible; an irreducible
/// specialization `c(x0, t)` proves irreducibility; in degrees 2 and 3 a
/// factorization must have a linear factor, found or excluded by interpolation.
pub fn irreducibility(c: &XTPoly) -> Result<Irreducibility> {
    let n = validate(c)?;
    if n == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    if !is_squarefree_t(c) {
        return Ok(Irreducibility::Reducible(None));
    }
    for x0 in sample_points(c.base_field(), 32) {
        if is_irreducible(&c.eval_x(&x0)) == Some(true) {
            return Ok(Irreducibility::Irreducible);
        }
    }
    if n <= 3 {
        return Ok(match linear_factor(c) {
            Ok(Some(r)) => Irreducibility::Reducible(Some(&XTPoly::t(c.base_field()) - &XTPoly::from_x(r))),
            Ok(None) => Irreducibility::Irreducible,
            Err(()) => Irreducibility::Undetermined,
        });
    }
    Ok(Irreducibility::Undetermined)
}

pub fn is_irreducible_curve(c: &XTPoly) -> Result<bool> {
    Ok(irreducibility(c)? == Irreducibility::Irreducible)
}

/// `char_poly(T) = c` for a lattice over a smooth irreducible curve.
pub fn invertibility_certificate(f: &crate::higgs::SLattice, c: &XTPoly) -> Result<bool> {
    let cert = smoothness_certificate(c)?;
    if !cert.is_smooth() {
        return Err(Error::Unsupported("the spectral curve is singular".into()));
    }
    match irreducibility(c)? {
        Irreducibility::Irreducible => {}
        Irreducibility::Reducible(_) => return Err(Error::Unsupported("the spectral curve is reducible".into())),
        Irreducibility::Undetermined => {
            return Err(Error::Unsupported("irreducibility of the spectral curve is undetermined".into()))
        }
    }
    Ok(f.t_matrix().char_poly()? == *c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::divisor::companion;
    use crate::higgs::SLattice;

    fn xt(f: Field, coeffs: &[&[i64]]) -> XTPoly {
        XTPoly::from_coeffs(f, coeffs.iter().map(|c| XPoly::from_i64s(f, c)).collect())
    }

    #[test]
    fn smooth_examples() {
        let q = Field::Rationals;
        let graph = xt(q, &[&[-1, 0, 3], &[1]]);
        let cert = smoothness_certificate(&graph).unwrap();
        assert!(cert.is_smooth());
        assert!(matches!(cert.witness, SmoothWitness::ResultantGcd(_)));

        let node = xt(q, &[&[0, 0, -1], &[], &[1]]);
        let cert = smoothness_certificate(&node).unwrap();
        assert_eq!(cert.verdict, Verdict::Singular);
        match cert.witness {
            SmoothWitness::JacobianPoint { x0, t0, .. } => {
                assert_eq!(x0, q.zero());
                assert_eq!(t0, Some(q.zero()));
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    /// `F_49 = F_7[i]/(i^2 - 3)` as pairs; 3 is a non-residue mod 7.
    fn f49_all() -> Vec<(i64, i64)> {
        (0..7).flat_map(|a| (0..7).map(move |b| (a, b))).collect()
    }

    fn f49_mul(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
        ((a.0 * b.0 + 3 * a.1 * b.1).rem_euclid(7), (a.0 * b.1 + a.1 * b.0).rem_euclid(7))
    }

    fn f49_add(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
        ((a.0 + b.0).rem_euclid(7), (a.1 + b.1).rem_euclid(7))
    }

    fn f49_eval(coeffs: &[&[i64]], x: (i64, i64), t: (i64, i64)) -> (i64, i64) {
        let mut acc = (0, 0);
        let mut tp = (1, 0);
        for cj in coeffs {
            let mut cx = (0, 0);
            let mut xp = (1, 0);
            for &a in cj.iter() {
                cx = f49_add(cx, f49_mul((a.rem_euclid(7), 0), xp));
                xp = f49_mul(xp, x);
            }
            acc = f49_add(acc, f49_mul(cx, tp));
            tp = f49_mul(tp, t);
        }
        acc
    }

    /// Singular points of `t^2 - x^3 + x` and of a nodal cubic, by scanning `F_49^2`.
    #[test]
    fn verdict_matches_point_scan_over_f49() {
        let f7 = Field::prime(7).unwrap();
        let cases: [(&[&[i64]], &[&[i64]], &[&[i64]]); 2] = [
            // c, c_t, c_x
            (&[&[0, 1, 0, -1], &[], &[1]], &[&[], &[2]], &[&[1, 0, -3]]),
            (&[&[0, 0, -1, -1], &[], &[1]], &[&[], &[2]], &[&[0, -2, -3]]),
        ];
        for (c, ct, cx) in cases {
            let scan_singular = f49_all().into_iter().any(|x| {
                f49_all().into_iter().any(|t| {
                    f49_eval(c, x, t) == (0, 0) && f49_eval(ct, x, t) == (0, 0) && f49_eval(cx, x, t) == (0, 0)
                })
            });
            let cert = smoothness_certificate(&xt(f7, c)).unwrap();
            assert_eq!(cert.is_smooth(), !scan_singular);
        }
    }

    #[test]
    fn singular_points_off_the_ground_field() {
        // t^2 - (x^2 - 3)^2 over F_7 is singular at x^2 = 3, t = 0 only
        let f7 = Field::prime(7).unwrap();
        let c = xt(f7, &[&[-9, 0, 6, 0, -1], &[], &[1]]);
        let cert = smoothness_certificate(&c).unwrap();
        assert_eq!(cert.verdict, Verdict::Singular);
        assert_eq!(cert.witness, SmoothWitness::JacobianColength(2));
        // (t - 1)^2 over F_7 is non-reduced
        let cert = smoothness_certificate(&xt(f7, &[&[1], &[-2], &[1]])).unwrap();
        assert_eq!(cert.verdict, Verdict::Singular);
    }

    #[test]
    fn irreducibility_examples() {
        let q = Field::Rationals;
        assert_eq!(irreducibility(&xt(q, &[&[0, 1], &[1]])).unwrap(), Irreducibility::Irreducible);
        assert_eq!(irreducibility(&xt(q, &[&[0, -1], &[], &[1]])).unwrap(), Irreducibility::Irreducible);
        // (t - x)(t + x + 1)
        let c = &xt(q, &[&[0, -1], &[1]]) * &xt(q, &[&[1, 1], &[1]]);
        match irreducibility(&c).unwrap() {
            Irreducibility::Reducible(Some(factor)) => assert!(crate::correspondence::divisor::reduce_mod(&c, &factor).is_zero()),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(irreducibility(&xt(q, &[&[1], &[2], &[1]])).unwrap(), Irreducibility::Reducible(None));

        // every fiber of t^2 - x^3 + x over F_3 is t^2, yet the curve is irreducible
        let f3 = Field::prime(3).unwrap();
        assert_eq!(irreducibility(&xt(f3, &[&[0, 1, 0, -1], &[], &[1]])).unwrap(), Irreducibility::Irreducible);
        // (t - x^2)(t - x^2 - 1)(t + 1) over F_5
        let f5 = Field::prime(5).unwrap();
        let c = &(&xt(f5, &[&[0, 0, -1], &[1]]) * &xt(f5, &[&[-1, 0, -1], &[1]])) * &xt(f5, &[&[1], &[1]]);
        assert!(matches!(irreducibility(&c).unwrap(), Irreducibility::Reducible(Some(_))));
    }

    #[test]
    fn invertibility_examples() {
        let q = Field::Rationals;
        let c = xt(q, &[&[0, 1, -1], &[1]]);
        let f = SLattice::new(Matrix::from_rows(q, vec![vec![XPoly::from_i64s(q, &[0, -1, 1])]]).unwrap()).unwrap();
        assert!(invertibility_certificate(&f, &c).unwrap());

        let quad = xt(q, &[&[0, -1], &[], &[1]]);
        let f = SLattice::new(companion(&quad)).unwrap();
        assert!(invertibility_certificate(&f, &quad).unwrap());

        let fx = XPoly::from_i64s(q, &[0, 1]);
        let diag = Matrix::from_rows(q, vec![vec![fx.clone(), XPoly::zero(q)], vec![XPoly::zero(q), fx]]).unwrap();
        let doubled = xt(q, &[&[0, 0, 1], &[0, -2], &[1]]);
        assert!(matches!(invertibility_certificate(&SLattice::new(diag).unwrap(), &doubled), Err(Error::Unsupported(_))));
    }
}
