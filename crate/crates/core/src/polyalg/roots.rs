//! Roots and irreducibility of univariate polynomials over the ground field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Field, Scalar};
use super::poly::XPoly;

/// Divisor enumeration is skipped for integers above this bound.
const DIVISOR_LIMIT: u64 = 1 << 40;

fn positive_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots by the rational-root theorem. Returns the roots found;
/// when the integer coefficients are too large to enumerate divisors only
/// the root `0` (if any) is reported.
pub fn rational_roots(f: &XPoly) -> Vec<Scalar> {
    let field = Field::Rationals;
    let coeffs: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational polynomial").clone())
        .collect();
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    let mut roots = Vec::new();
    let lead_zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(field.zero());
    }
    let ints = &ints[lead_zeros..];
    if ints.len() <= 1 {
        return roots;
    }
    let (Some(num_divs), Some(den_divs)) =
        (positive_divisors(&ints[0]), positive_divisors(ints.last().unwrap()))
    else {
        return roots;
    };
    let mut cands: Vec<BigRational> = Vec::new();
    for &a in &num_divs {
        for &b in &den_divs {
            for sign in [1i64, -1] {
                let r = BigRational::new(BigInt::from(sign) * BigInt::from(a), BigInt::from(b));
                if !cands.contains(&r) {
                    cands.push(r);
                }
            }
        }
    }
    cands.sort();
    for r in cands {
        let s = Scalar::Q(r);
        if f.eval(&s).is_zero() {
            roots.push(s);
        }
    }
    roots
}

/// `base^e mod modulus` over `F_p`.
pub fn pow_mod(base: &XPoly, mut e: u128, modulus: &XPoly) -> XPoly {
    let mut acc = XPoly::from_i64s(base.base_field(), &[1]).with_var(modulus.var());
    let mut b = base.rem(modulus).expect("nonzero modulus");
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &b).rem(modulus).expect("nonzero modulus");
        }
        b = (&b * &b).rem(modulus).expect("nonzero modulus");
        e >>= 1;
    }
    acc
}

/// Irreducibility over a prime field (Ben-Or): `f` of degree `n` is
/// irreducible iff `gcd(f, z^(p^i) - z) = 1` for all `1 <= i <= n/2`.
/// Returns `None` over the rationals unless the degree is at most 3.
pub fn is_irreducible(f: &XPoly) -> Option<bool> {
    let n = f.degree()?;
    if n == 0 {
        return Some(false);
    }
    if n == 1 {
        return Some(true);
    }
    match f.base_field() {
        Field::Rationals => {
            if n <= 3 {
                Some(rational_roots(f).is_empty())
            } else {
                None
            }
        }
        Field::Prime(p) => {
            let f = f.monic();
            let z = XPoly::from_i64s(f.base_field(), &[0, 1]).with_var(f.var());
            let mut power = z.clone();
            for _ in 1..=n / 2 {
                power = pow_mod(&power, p as u128, &f);
                let g = f.gcd(&(&power - &z)).expect("same variable");
                if g.degree() != Some(0) {
                    return Some(false);
                }
            }
            Some(true)
        }
    }
}

/// All `s` in a prime field with `s^m = t0`, by exhaustive scan.
pub fn mth_roots(t0: &Scalar, m: usize) -> Option<Vec<Scalar>> {
    let field = t0.field();
    let elems = field.elements()?;
    Some(elems.filter(|s| s.pow(m as u64) == *t0).collect())
}
