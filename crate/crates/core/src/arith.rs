//! Exact scalars: prime fields GF(p) and the rationals.
//!
//! [`Rational`] doubles as the type of membership levels. Levels are compared
//! exactly, so two flags with "the same" grades are equal only if the grades
//! are the same fraction in lowest terms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// True for valid membership grades.
    pub fn in_unit_interval(&self) -> bool {
        !self.0.is_negative() && self.0 <= BigRational::one()
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational> {
        Rational::one().checked_div(self)
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }
}

/// Total order on levels; equality coincides with equality of normalized forms.
pub fn level_cmp(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::syntax(0, format!("invalid rational `{s}`"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => Ok(Rational::from_integer(
                s.parse::<BigInt>().map_err(|_| bad())?,
            )),
        }
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    /// Panics on division by zero; use [`Rational::checked_div`] otherwise.
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("division by zero rational")
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The scalar field: GF(p) for a prime p, or the rationals.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldSpec {
    // 0 encodes the rationals (characteristic zero).
    characteristic: u64,
}

impl FieldSpec {
    pub fn gf(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { characteristic: p })
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// `Some(p)` for GF(p), `None` for the rationals.
    pub fn prime(&self) -> Option<u64> {
        (self.characteristic != 0).then_some(self.characteristic)
    }

    pub fn is_prime_field(&self) -> bool {
        self.characteristic != 0
    }

    pub fn zero(&self) -> FieldScalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldScalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldScalar {
        match self.prime() {
            Some(p) => FieldScalar(Repr::Mod {
                p,
                r: v.rem_euclid(p as i64) as u64,
            }),
            None => FieldScalar(Repr::Rat(Rational::from(v))),
        }
    }

    /// Residue constructor for prime fields; `r` is reduced mod p.
    pub fn residue(&self, r: u64) -> FieldScalar {
        match self.prime() {
            Some(p) => FieldScalar(Repr::Mod { p, r: r % p }),
            None => FieldScalar(Repr::Rat(Rational::from_integer(r))),
        }
    }

    /// Embeds a rational; in GF(p) a/b maps to a·b⁻¹, failing when p | b.
    pub fn from_rational(&self, q: &Rational) -> Result<FieldScalar> {
        match self.prime() {
            None => Ok(FieldScalar(Repr::Rat(q.clone()))),
            Some(p) => {
                let big_p = BigInt::from(p);
                let reduce = |n: &BigInt| n.mod_floor(&big_p).to_u64().expect("residue fits u64");
                let num = self.residue(reduce(q.numer()));
                let den = self.residue(reduce(q.denom()));
                num.checked_div(&den)
            }
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<FieldScalar> {
        let q: Rational = s.parse()?;
        self.from_rational(&q)
    }

    /// Every element in a fixed order (0, 1, …, p−1); `None` for the rationals.
    pub fn elements(&self) -> Option<Vec<FieldScalar>> {
        self.prime().map(|p| (0..p).map(|r| self.residue(r)).collect())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.prime() {
            Some(p) => write!(f, "gf {p}"),
            None => write!(f, "rationals"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let words: Vec<&str> = s.split_whitespace().collect();
        match words.as_slice() {
            ["rationals"] => Ok(FieldSpec::rationals()),
            ["gf", p] => {
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::syntax(0, format!("invalid prime `{p}`")))?;
                FieldSpec::gf(p)
            }
            _ => Err(Error::syntax(0, format!("invalid field spec `{s}`"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
enum Repr {
    Mod { p: u64, r: u64 },
    Rat(Rational),
}

/// An exact element of GF(p) or of the rationals.
///
/// The `std::ops` impls panic when the operands come from different fields;
/// the `checked_*` methods report [`Error::FieldMismatch`] instead.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldScalar(Repr);

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(p as i128) as u64)
}

impl FieldScalar {
    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Mod { p, .. } => FieldSpec { characteristic: *p },
            Repr::Rat(_) => FieldSpec::rationals(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Mod { r, .. } => *r == 0,
            Repr::Rat(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Mod { r, .. } => *r == 1,
            Repr::Rat(q) => q.is_one(),
        }
    }

    /// The residue in `[0, p)`, for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Mod { r, .. } => Some(*r),
            Repr::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.0 {
            Repr::Rat(q) => Some(q),
            Repr::Mod { .. } => None,
        }
    }

    fn same_field(&self, other: &FieldScalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::field_mismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        self.same_field(rhs)?;
        Ok(FieldScalar(match (&self.0, &rhs.0) {
            (Repr::Mod { p, r: a }, Repr::Mod { r: b, .. }) => Repr::Mod {
                p: *p,
                r: ((*a as u128 + *b as u128) % *p as u128) as u64,
            },
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            _ => unreachable!(),
        }))
    }

    pub fn checked_sub(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        self.same_field(rhs)?;
        Ok(FieldScalar(match (&self.0, &rhs.0) {
            (Repr::Mod { p, r: a }, Repr::Mod { r: b, .. }) => Repr::Mod {
                p: *p,
                r: ((*a as u128 * *b as u128) % *p as u128) as u64,
            },
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            _ => unreachable!(),
        }))
    }

    pub fn checked_div(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        self.same_field(rhs)?;
        self.checked_mul(&rhs.inv()?)
    }

    /// Multiplicative inverse; [`Error::ZeroInverse`] for zero.
    pub fn inv(&self) -> Result<FieldScalar> {
        match &self.0 {
            Repr::Mod { p, r } => mod_inverse(*r, *p)
                .map(|r| FieldScalar(Repr::Mod { p: *p, r }))
                .ok_or(Error::ZeroInverse),
            Repr::Rat(q) => q
                .recip()
                .map(|q| FieldScalar(Repr::Rat(q)))
                .map_err(|_| Error::ZeroInverse),
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Mod { r, .. } => write!(f, "{r}"),
            Repr::Rat(q) => write!(f, "{q}"),
        }
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar(match &self.0 {
            Repr::Mod { p, r } => Repr::Mod {
                p: *p,
                r: (*p - *r) % *p,
            },
            Repr::Rat(q) => Repr::Rat(-q),
        })
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldScalar> for &FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: &FieldScalar) -> FieldScalar {
                self.$checked(rhs).expect("field mismatch")
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
