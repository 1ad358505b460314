//! Dense univariate polynomials over a [`Ring`].
//!
//! `Poly<Scalar>` is `k[x]` (or `k[t]` when tagged with [`Var::T`]);
//! `Poly<Poly<Scalar>>` is `k[x][t]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Scalar};
use super::ring::{ExactDiv, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    T,
}

impl Var {
    fn default_for(nesting: u8) -> Var {
        if nesting <= 1 {
            Var::X
        } else {
            Var::T
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::T => "t",
        }
    }
}

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, Debug)]
pub struct Poly<R> {
    field: Field,
    var: Var,
    coeffs: Vec<R>,
}

/// `k[x]`
pub type XPoly = Poly<Scalar>;
/// `k[x][t]`
pub type XTPoly = Poly<XPoly>;

impl<R: Ring> Poly<R> {
    pub fn new(field: Field, var: Var, mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, var, coeffs }
    }

    /// Polynomial in the default variable for this nesting depth.
    pub fn from_coeffs(field: Field, coeffs: Vec<R>) -> Self {
        Self::new(field, Var::default_for(R::NESTING + 1), coeffs)
    }

    pub fn zero_in(field: Field, var: Var) -> Self {
        Poly { field, var, coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        let field = c.field();
        Self::from_coeffs(field, vec![c])
    }

    /// `c * var^k`
    pub fn monomial(c: R, k: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![R::zero(field); k];
        coeffs.push(c);
        Self::from_coeffs(field, coeffs)
    }

    /// The variable itself.
    pub fn var_poly(field: Field) -> Self {
        Self::monomial(R::one(field), 1)
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn base_field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(|| R::zero(self.field))
    }

    pub fn leading(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(|| R::zero(self.field))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == R::one(self.field))
    }

    /// Horner evaluation at a ring element.
    pub fn eval(&self, at: &R) -> R {
        let mut acc = R::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc * at.clone() + c.clone();
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.field, self.var, self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&self.field.from_i64(i as i64)))
            .collect();
        Self::new(self.field, self.var, coeffs)
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(self.field); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.field, self.var, coeffs)
    }

    pub fn mul_coeff(&self, c: &R) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        Self::new(self.field, self.var, coeffs)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(R::one(self.field)).with_var(self.var);
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Number of leading zero coefficients (the `var`-adic valuation); `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn joint_var(&self, other: &Self) -> Var {
        if self.is_constant() {
            other.var
        } else {
            self.var
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::new(self.field, self.joint_var(other), coeffs)
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Self::new(self.field, self.joint_var(other), coeffs)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let var = self.joint_var(other);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero_in(self.field, var);
        }
        let mut out = vec![R::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = a.clone() * b.clone();
                let slot = std::mem::replace(&mut out[i + j], R::zero(self.field));
                out[i + j] = slot + prod;
            }
        }
        Self::new(self.field, var, out)
    }
}

impl<R: Ring> PartialEq for Poly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.coeffs == other.coeffs
            && (self.var == other.var || self.coeffs.len() <= 1)
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<'a, R: Ring> Add<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: &Poly<R>) -> Poly<R> {
        self.add_ref(rhs)
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl<'a, R: Ring> Sub<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: &Poly<R>) -> Poly<R> {
        self.sub_ref(rhs)
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<'a, R: Ring> Mul<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: &Poly<R>) -> Poly<R> {
        self.mul_ref(rhs)
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        let coeffs = self.coeffs.into_iter().map(|c| -c).collect();
        Self::new(self.field, self.var, coeffs)
    }
}

impl<R: Ring> Ring for Poly<R> {
    const NESTING: u8 = R::NESTING + 1;

    fn zero(field: Field) -> Self {
        Self::zero_in(field, Var::default_for(Self::NESTING))
    }
    fn one(field: Field) -> Self {
        Self::constant(R::one(field))
    }
    fn from_scalar(s: Scalar) -> Self {
        Self::constant(R::from_scalar(s))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn field(&self) -> Field {
        self.field
    }
    fn scale(&self, s: &Scalar) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.scale(s)).collect();
        Self::new(self.field, self.var, coeffs)
    }
}

impl<R: ExactDiv> ExactDiv for Poly<R> {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let lc = d.leading();
        let mut rem = self.clone();
        let var = self.joint_var(d);
        let Some(top) = rem.degree() else {
            return Some(Self::zero_in(self.field, var));
        };
        if top < dd {
            return None;
        }
        let mut quot = vec![R::zero(self.field); top - dd + 1];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                return None;
            }
            let q = rem.leading().div_exact(&lc)?;
            let term = Self::monomial(q.clone(), rd - dd).with_var(var);
            rem = rem - term * d.clone();
            quot[rd - dd] = q;
        }
        Some(Self::new(self.field, var, quot))
    }
}

impl Poly<Scalar> {
    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// Division with remainder over the ground field.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.leading().inv().ok_or(Error::DivisionByZero)?;
        let var = self.joint_var(d);
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return Ok((Self::zero_in(self.field, var), self.clone().with_var(var)));
        }
        let mut quot = vec![self.field.zero(); n - dd];
        for k in (0..n - dd).rev() {
            let q = &rem[k + dd] * &inv;
            if !q.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&q * dc);
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(self.field, var, quot), Self::new(self.field, var, rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Scale to leading coefficient 1; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if !self.is_constant() && !other.is_constant() && self.var != other.var {
            return Err(Error::MixedVariables);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns `(g, s, u)` with `s*self + u*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        let f = self.field;
        let var = self.joint_var(other);
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f).with_var(var), Self::zero_in(f, var));
        let (mut u0, mut u1) = (Self::zero_in(f, var), Self::one(f).with_var(var));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            let u2 = &u0 - &(&q * &u1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            u0 = std::mem::replace(&mut u1, u2);
        }
        match r0.coeffs.last() {
            None => Ok((r0, s0, u0)),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero");
                Ok((r0.scale(&inv), s0.scale(&inv), u0.scale(&inv)))
            }
        }
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_constant() {
            return Ok(self.monic());
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.div_rem(&g)?.0.monic())
    }

    /// Roots lying in the ground field. Exhaustive over `F_p`; rational-root
    /// test over `Q` (subject to the integer size of the coefficients).
    pub fn roots_in_field(&self) -> Vec<Scalar> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        match self.field {
            Field::Prime(_) => self
                .field
                .elements()
                .expect("finite field")
                .filter(|a| self.eval(a).is_zero())
                .collect(),
            Field::Rationals => super::roots::rational_roots(self),
        }
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let v = self.var.symbol();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let nested = R::NESTING > 0 && cs.contains(' ');
            match (i, nested) {
                (0, false) => write!(f, "{cs}")?,
                (_, true) => write!(f, "({cs})")?,
                _ if c == &R::one(self.field) => {}
                _ if c == &-R::one(self.field) => write!(f, "-")?,
                _ => write!(f, "{cs}")?,
            }
            match i {
                0 => {}
                1 => write!(f, "{v}")?,
                _ => write!(f, "{v}^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly<XPoly> {
    /// Partial derivative in `x` of a polynomial in `k[x][t]`.
    pub fn derivative_x(&self) -> Self {
        self.map(|c| c.derivative())
    }

    /// Substitute `x = x0`, giving a polynomial in `t` over `k`.
    pub fn eval_x(&self, x0: &Scalar) -> XPoly {
        Poly::new(self.field, Var::T, self.coeffs.iter().map(|c| c.eval(x0)).collect())
    }

    /// Maximum `x`-degree over all coefficients.
    pub fn degree_x(&self) -> usize {
        self.coeffs.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
    }

    /// The element `a(x)` viewed as a constant polynomial in `t`.
    pub fn from_x(a: XPoly) -> Self {
        Self::constant(a)
    }

    /// The polynomial `t` over `k[x]`.
    pub fn t(field: Field) -> Self {
        Self::var_poly(field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn xp(c: &[i64]) -> XPoly {
        XPoly::from_i64s(q(), c)
    }

    #[test]
    fn gcd_examples() {
        // (x^2 - 1, x - 1) -> x - 1
        assert_eq!(xp(&[-1, 0, 1]).gcd(&xp(&[-1, 1])).unwrap(), xp(&[-1, 1]));
        // gcd with zero is the monic input
        assert_eq!(xp(&[4, 2]).gcd(&xp(&[])).unwrap(), xp(&[2, 1]));
        assert_eq!(xp(&[]).gcd(&xp(&[])).unwrap(), xp(&[]));
    }

    #[test]
    fn gcd_mixed_vars_is_an_error() {
        let a = xp(&[0, 1]);
        let b = xp(&[0, 1]).with_var(Var::T);
        assert_eq!(a.gcd(&b), Err(Error::MixedVariables));
        // constants carry no variable
        assert!(a.gcd(&xp(&[3]).with_var(Var::T)).is_ok());
    }

    /// Every monic divisor of `f` over `F_p`, by trying all monic
    /// polynomials up to `deg f`.
    fn monic_divisors(f: &XPoly, p: u64) -> Vec<XPoly> {
        let field = f.base_field();
        let n = f.degree().unwrap();
        let mut out = Vec::new();
        for d in 0..=n {
            let count = p.pow(d as u32);
            for code in 0..count {
                let mut c = Vec::with_capacity(d + 1);
                let mut r = code;
                for _ in 0..d {
                    c.push(field.from_i64((r % p) as i64));
                    r /= p;
                }
                c.push(field.one());
                let cand = XPoly::from_coeffs(field, c);
                if f.rem(&cand).unwrap().is_zero() {
                    out.push(cand);
                }
            }
        }
        out
    }

    #[test]
    fn gcd_over_f5_matches_divisor_search() {
        let f5 = Field::prime(5).unwrap();
        let a = XPoly::from_i64s(f5, &[1, 0, 1]);
        let b = XPoly::from_i64s(f5, &[-1, 0, 1]);
        let da = monic_divisors(&a, 5);
        let db = monic_divisors(&b, 5);
        let common: Vec<_> = da.iter().filter(|d| db.contains(d)).collect();
        let best = common.iter().max_by_key(|d| d.degree()).unwrap();
        assert_eq!(&&a.gcd(&b).unwrap(), best);
        // x^2+1 = (x-2)(x-3) and x^2-1 = (x-1)(x+1) over F5: coprime
        assert_eq!(best.degree(), Some(0));
    }

    #[test]
    fn division_identity() {
        let a = xp(&[1, 2, 3, 4]);
        let b = xp(&[1, 0, 2]);
        let (qq, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&qq * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn exact_division_in_two_variables() {
        let f = q();
        let t = XTPoly::t(f);
        let a = &t - &XTPoly::from_x(xp(&[0, 1]));
        let b = &t + &XTPoly::from_x(xp(&[1, 1]));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!((&prod + &XTPoly::one(f)).div_exact(&a), None);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = xp(&[-1, 0, 1]);
        let b = xp(&[2, 1]);
        let (g, s, u) = a.ext_gcd(&b).unwrap();
        assert_eq!(&(&s * &a) + &(&u * &b), g);
        assert!(g.is_monic());
    }

    #[test]
    fn display() {
        assert_eq!(xp(&[-1, 0, 1]).to_string(), "x^2 + -1");
        let t = XTPoly::t(q());
        let c = &t - &XTPoly::from_x(xp(&[0, -1, 1]));
        assert_eq!(c.to_string(), "t + (-x^2 + x)");
    }
}
