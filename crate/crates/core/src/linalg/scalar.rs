//! Field elements for exact arithmetic over ℚ and GF(p).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field. Prime fields carry their characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldSpec {
    Rationals,
    PrimeField { characteristic: u32 },
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// Prime field GF(p). Fails unless `p` is prime.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField { characteristic: p })
    }

    pub fn gf5() -> Self {
        FieldSpec::PrimeField { characteristic: 5 }
    }

    pub fn gf7() -> Self {
        FieldSpec::PrimeField { characteristic: 7 }
    }

    pub fn characteristic(&self) -> Option<u32> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField { characteristic } => Some(*characteristic),
        }
    }

    /// Checks the invariant that a declared characteristic is prime.
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField { characteristic } if is_prime(*characteristic) => Ok(()),
            FieldSpec::PrimeField { characteristic } => Err(Error::NotPrime(*characteristic)),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(Box::new(BigRational::from_integer(BigInt::from(n)))),
            FieldSpec::PrimeField { characteristic: p } => Scalar::Fp {
                value: n.rem_euclid(*p as i64) as u32,
                modulus: *p,
            },
        }
    }

    /// Parses `"3/4"`, `"-2"` and the like. Fractions are accepted over GF(p) too.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::Format(format!("bad scalar {s:?}"));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Q(Box::new(BigRational::new(num, den)))),
            FieldSpec::PrimeField { characteristic: p } => {
                let pb = BigInt::from(*p);
                let reduce = |x: &BigInt| -> u32 {
                    let r = ((x % &pb) + &pb) % &pb;
                    u32::try_from(r).unwrap_or(0)
                };
                let d = Scalar::Fp { value: reduce(&den), modulus: *p };
                let n = Scalar::Fp { value: reduce(&num), modulus: *p };
                let inv = d.inv().ok_or_else(bad)?;
                Ok(n * inv)
            }
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match (self, x) {
            (FieldSpec::Rationals, Scalar::Q(_)) => true,
            (FieldSpec::PrimeField { characteristic }, Scalar::Fp { modulus, .. }) => {
                characteristic == modulus
            }
            _ => false,
        }
    }

    /// Short tag used on the command line: `q`, `gf5`, `gf7`, ...
    pub fn tag(&self) -> String {
        match self {
            FieldSpec::Rationals => "q".into(),
            FieldSpec::PrimeField { characteristic } => format!("gf{characteristic}"),
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "q" | "Q" => Ok(FieldSpec::Rationals),
            t => {
                let p = t
                    .strip_prefix("gf")
                    .and_then(|x| x.parse::<u32>().ok())
                    .ok_or_else(|| Error::Format(format!("unknown field tag {t:?}")))?;
                FieldSpec::prime(p)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField { characteristic } => write!(f, "GF({characteristic})"),
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`FieldSpec`]. Mixing fields in one operation is a bug and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { value: u32, modulus: u32 },
    Q(Box<BigRational>),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Fp { modulus, .. } => FieldSpec::PrimeField { characteristic: *modulus },
            Scalar::Q(_) => FieldSpec::Rationals,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Fp { value, modulus } => {
                let p = *modulus as u64;
                let mut base = *value as u64;
                let mut exp = p - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Scalar::Fp { value: acc as u32, modulus: *modulus }
            }
            Scalar::Q(q) => Scalar::Q(Box::new(q.recip())),
        })
    }

    pub fn add_ref(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { value: a, modulus }, Scalar::Fp { value: b, modulus: m2 }) => {
                debug_assert_eq!(modulus, m2);
                let s = (*a as u64 + *b as u64) % *modulus as u64;
                Scalar::Fp { value: s as u32, modulus: *modulus }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(a.as_ref() + b.as_ref())),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub_ref(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { value: a, modulus }, Scalar::Fp { value: b, .. }) => {
                let m = *modulus as u64;
                let s = (*a as u64 + m - *b as u64) % m;
                Scalar::Fp { value: s as u32, modulus: *modulus }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(a.as_ref() - b.as_ref())),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn mul_ref(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { value: a, modulus }, Scalar::Fp { value: b, .. }) => {
                let s = (*a as u64 * *b as u64) % *modulus as u64;
                Scalar::Fp { value: s as u32, modulus: *modulus }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(a.as_ref() * b.as_ref())),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Fp { value, modulus } => Scalar::Fp {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            Scalar::Q(q) => Scalar::Q(Box::new(-q.as_ref())),
        }
    }

    /// `self += a * b`, the inner loop of every elimination.
    pub fn add_mul_assign(&mut self, a: &Scalar, b: &Scalar) {
        match (&mut *self, a, b) {
            (Scalar::Fp { value, modulus }, Scalar::Fp { value: x, .. }, Scalar::Fp { value: y, .. }) => {
                let m = *modulus as u64;
                *value = ((*value as u64 + (*x as u64 * *y as u64) % m) % m) as u32;
            }
            (Scalar::Q(q), Scalar::Q(x), Scalar::Q(y)) => {
                **q += x.as_ref() * y.as_ref();
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { value, .. } => write!(f, "{value}"),
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.add_ref(&rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.sub_ref(&rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.mul_ref(&rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.sub_ref(rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_ref(rhs)
    }
}
