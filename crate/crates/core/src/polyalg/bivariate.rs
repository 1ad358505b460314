//! Polynomials in `t` over `k[x]`: resultants, primitive gcds, squarefree parts.

use super::field::Field;
use super::matrix::Matrix;
use super::poly::{Var, XPoly, XTPoly};
use super::ring::{ExactDiv, Ring};
use crate::error::{Error, Result};

/// Sylvester resultant `Res_t(f, g)` in `k[x]`.
pub fn resultant(f: &XTPoly, g: &XTPoly) -> Result<XPoly> {
    let field = f.base_field();
    let (Some(n), Some(k)) = (f.degree(), g.degree()) else {
        if f.is_zero() && g.is_zero() {
            return Err(Error::Verification("resultant of two zero polynomials".into()));
        }
        return Ok(XPoly::zero(field));
    };
    let size = n + k;
    if size == 0 {
        return Ok(XPoly::one(field));
    }
    let mut syl: Matrix<XPoly> = Matrix::zeros(field, size, size);
    for r in 0..k {
        for (i, c) in f.coeffs().iter().rev().enumerate() {
            syl[(r, r + i)] = c.clone();
        }
    }
    for r in 0..n {
        for (i, c) in g.coeffs().iter().rev().enumerate() {
            syl[(k + r, r + i)] = c.clone();
        }
    }
    syl.det()
}

/// Monic gcd in `k[x]` of all `t`-coefficients.
pub fn content(f: &XTPoly) -> XPoly {
    let field = f.base_field();
    f.coeffs()
        .iter()
        .try_fold(XPoly::zero(field), |acc, c| acc.gcd(c))
        .expect("all coefficients live in k[x]")
}

/// `f / content(f)`, normalized so the top scalar coefficient is 1.
pub fn primitive_part(f: &XTPoly) -> XTPoly {
    if f.is_zero() {
        return f.clone();
    }
    let c = content(f);
    let pp = f.map(|a| a.div_exact(&c).expect("content divides"));
    let top = pp.leading().leading();
    pp.scale(&top.inv().expect("nonzero"))
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`.
pub fn pseudo_rem(a: &XTPoly, b: &XTPoly) -> XTPoly {
    let db = b.degree().expect("nonzero divisor");
    let lb = b.leading();
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lr = r.leading();
        let term = XTPoly::monomial(lr, dr - db).with_var(Var::T);
        r = &r.mul_coeff(&lb) - &(&term * b);
    }
    r
}

/// Greatest common divisor in `k(x)[t]`, returned primitive in `k[x][t]`.
pub fn gcd_t(f: &XTPoly, g: &XTPoly) -> XTPoly {
    let mut a = primitive_part(f);
    let mut b = primitive_part(g);
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive_part(&r);
    }
    a
}

/// Squarefree part in `k(x)[t]` of a polynomial monic in `t`.
pub fn squarefree_part_t(c: &XTPoly) -> Result<XTPoly> {
    if !c.is_monic() {
        return Err(Error::Verification("squarefree part needs a t-monic polynomial".into()));
    }
    if c.degree().unwrap_or(0) == 0 {
        return Ok(c.clone());
    }
    let g = gcd_t(c, &c.derivative());
    if g.degree() == Some(0) {
        return Ok(c.clone());
    }
    let h = c
        .div_exact(&g)
        .ok_or_else(|| Error::Verification("gcd does not divide".into()))?;
    let lc = h.leading();
    if lc.degree() != Some(0) {
        return Err(Error::Verification("non-constant leading coefficient in cofactor".into()));
    }
    Ok(h.scale(&lc.leading().inv().expect("nonzero")))
}

pub fn is_squarefree_t(c: &XTPoly) -> bool {
    gcd_t(c, &c.derivative()).degree() == Some(0)
}

/// The `t`-polynomial `t^k` over `k[x]`.
pub fn t_pow(field: Field, k: usize) -> XTPoly {
    XTPoly::monomial(XPoly::one(field), k).with_var(Var::T)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn xp(f: Field, c: &[i64]) -> XPoly {
        XPoly::from_i64s(f, c)
    }

    fn tpoly(f: Field, coeffs: &[&[i64]]) -> XTPoly {
        XTPoly::from_coeffs(f, coeffs.iter().map(|c| xp(f, c)).collect())
    }

    #[test]
    fn linear_resultant() {
        let q = Field::Rationals;
        let a = xp(q, &[1, 2]);
        let b = xp(q, &[0, 0, 3]);
        let f = &XTPoly::t(q) - &XTPoly::from_x(a.clone());
        let g = &XTPoly::t(q) - &XTPoly::from_x(b.clone());
        let r = resultant(&f, &g).unwrap();
        assert!(r == &a - &b || r == &b - &a);
    }

    #[test]
    fn resultant_of_t2_minus_x_and_2t() {
        // Sylvester matrix [[1,0,-x],[2,0,0],[0,2,0]] has determinant -4x.
        let q = Field::Rationals;
        let f = tpoly(q, &[&[0, -1], &[], &[1]]);
        let g = tpoly(q, &[&[], &[2]]);
        assert_eq!(resultant(&f, &g).unwrap(), xp(q, &[0, -4]));
    }

    #[test]
    fn common_factor_gives_zero() {
        let q = Field::Rationals;
        let f = tpoly(q, &[&[1, 1], &[0, 2], &[1]]);
        assert!(resultant(&f, &f).unwrap().is_zero());
    }

    fn random_tpoly(f: Field, rng: &mut ChaCha8Rng, dt: usize, dx: usize) -> XTPoly {
        let p = f.characteristic() as i64;
        XTPoly::from_coeffs(
            f,
            (0..=dt)
                .map(|_| xp(f, &(0..=dx).map(|_| rng.gen_range(0..p)).collect::<Vec<_>>()))
                .collect(),
        )
    }

    #[test]
    fn resultant_is_multiplicative() {
        let f = Field::prime(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let a = random_tpoly(f, &mut rng, 2, 1);
            let b = random_tpoly(f, &mut rng, 1, 2);
            let h = random_tpoly(f, &mut rng, 2, 1);
            let lhs = resultant(&(&a * &b), &h).unwrap();
            let rhs = &resultant(&a, &h).unwrap() * &resultant(&b, &h).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn gcd_and_squarefree() {
        let q = Field::Rationals;
        let a = tpoly(q, &[&[0, -1], &[1]]); // t - x
        let b = tpoly(q, &[&[1], &[1]]); // t + 1
        let g = gcd_t(&(&a * &b), &(&a * &a));
        assert_eq!(g, a);
        let sq = &(&a * &a) * &b;
        assert!(!is_squarefree_t(&sq));
        assert_eq!(squarefree_part_t(&sq).unwrap(), &a * &b);
        assert!(is_squarefree_t(&(&a * &b)));
    }
}
