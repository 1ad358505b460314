//! Exact ground fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for a prime field. Products of two residues must fit in `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// The ground field `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// The prime field `F_p`; rejects composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    /// The default field of the tools, `F_10007`.
    pub fn default_prime() -> Field {
        Field::Prime(10007)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp {
                v: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.from_i64(num) / d)
    }

    /// Every element of a prime field, in increasing order of representative.
    /// Rationals have no finite enumeration, so this returns `None` there.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match *self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..p).map(move |v| Scalar::Fp { v, p })),
        }
    }

    /// Parse a coefficient string in this field: `"n"` or `"n/d"`.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?;
        let den = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        match *self {
            Field::Rationals => Ok(Scalar::Q(BigRational::new(num, den))),
            Field::Prime(p) => {
                let reduce = |z: &BigInt| {
                    let r = z.mod_floor(&BigInt::from(p));
                    Scalar::Fp { v: r.to_u64().expect("residue fits"), p }
                };
                let d = reduce(&den);
                if d.is_zero() {
                    return Err(Error::Parse(format!("denominator of {s:?} vanishes mod {p}")));
                }
                Ok(reduce(&num) / d)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `Fp` (meaning `F_10007`), `F7`, `F_7` or a bare prime.
    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(Field::Rationals);
        }
        if t.eq_ignore_ascii_case("fp") {
            return Ok(Field::default_prime());
        }
        let digits = t.trim_start_matches(['F', 'f']).trim_start_matches('_');
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(format!("unknown field {s:?}")))?;
        Field::prime(p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`Field`]. Prime-field elements carry their modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { v, p } => Scalar::Fp { v: pow_mod(*v, p - 2, *p), p: *p },
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// The residue in `[0, p)` for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp { v, .. } => Some(*v),
            Scalar::Q(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    /// Rational with numerator and denominator below `2^62`, for reporting only.
    pub fn to_small_ratio(&self) -> Option<(i64, i64)> {
        match self {
            Scalar::Q(q) => Some((q.numer().to_i64()?, q.denom().to_i64()?)),
            Scalar::Fp { v, .. } => Some((*v as i64, 1)),
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Q(q) if q.is_negative())
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn same_prime(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "mixed prime fields F{a} and F{b}");
    a
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                let p = same_prime(*p, *q);
                Scalar::Fp { v: (a + b) % p, p }
            }
            _ => panic!("mixed fields Q and F_p"),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                let p = same_prime(*p, *q);
                Scalar::Fp { v: (a + p - b) % p, p }
            }
            _ => panic!("mixed fields Q and F_p"),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                let p = same_prime(*p, *q);
                Scalar::Fp { v: a * b % p, p }
            }
            _ => panic!("mixed fields Q and F_p"),
        }
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self * rhs.inv().expect("division by zero in field")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp { v: (p - v) % p, p },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Q(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}
