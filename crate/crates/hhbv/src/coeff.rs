//! Exact scalars for the coefficient rings Z, Q and Z/m.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{parse_err, Error, Result};

/// The ground ring R.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    Integers,
    Rationals,
    /// Z/m with m >= 2.
    IntegersMod(BigInt),
}

/// A bare ring value. Which variant is meaningful depends on the ring:
/// `Int` for Z and Z/m (reduced into `[0, m)`), `Rat` for Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
}

impl Scalar {
    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Scalar::Int(v) => Some(v),
            Scalar::Rat(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

/// Binary/unary ring operations exposed through [`coeff_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
}

impl CoeffRing {
    pub fn modular(m: u64) -> CoeffRing {
        assert!(m >= 2, "modulus must be at least 2");
        CoeffRing::IntegersMod(BigInt::from(m))
    }

    /// Parses "Z", "Q", "Z/4", "F_5" (the last is an alias for Z/5).
    pub fn parse(input: &str) -> Result<CoeffRing> {
        let s = input.trim();
        let upper = s.to_ascii_uppercase();
        match upper.as_str() {
            "Z" => return Ok(CoeffRing::Integers),
            "Q" => return Ok(CoeffRing::Rationals),
            _ => {}
        }
        let (digits, offset) = if let Some(rest) = upper.strip_prefix("Z/") {
            (rest, 2)
        } else if let Some(rest) = upper.strip_prefix("F_") {
            (rest, 2)
        } else if let Some(rest) = upper.strip_prefix('F') {
            (rest, 1)
        } else {
            return Err(parse_err(input, 0, "expected Z, Q, Z/m or F_p"));
        };
        let lead = input.len() - input.trim_start().len();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(parse_err(input, lead + offset, "expected a positive modulus"));
        }
        let m: BigInt = digits.parse().map_err(|_| parse_err(input, lead + offset, "bad modulus"))?;
        if m < BigInt::from(2) {
            return Err(parse_err(input, lead + offset, "modulus must be at least 2"));
        }
        if upper.starts_with('F') && !is_prime(&m) {
            return Err(parse_err(input, lead + offset, "F_p needs a prime p"));
        }
        Ok(CoeffRing::IntegersMod(m))
    }

    /// 0 for Z and Q, m for Z/m.
    pub fn characteristic(&self) -> BigInt {
        match self {
            CoeffRing::IntegersMod(m) => m.clone(),
            _ => BigInt::zero(),
        }
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match self {
            CoeffRing::IntegersMod(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            CoeffRing::Integers => false,
            CoeffRing::Rationals => true,
            CoeffRing::IntegersMod(m) => is_prime(m),
        }
    }

    pub fn is_integral_domain(&self) -> bool {
        !matches!(self, CoeffRing::IntegersMod(m) if !is_prime(m))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            CoeffRing::Rationals => Scalar::Rat(BigRational::zero()),
            _ => Scalar::Int(BigInt::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(&self, v: BigInt) -> Scalar {
        match self {
            CoeffRing::Integers => Scalar::Int(v),
            CoeffRing::Rationals => Scalar::Rat(BigRational::from_integer(v)),
            CoeffRing::IntegersMod(m) => Scalar::Int(v.mod_floor(m)),
        }
    }

    pub fn from_ratio(&self, n: BigInt, d: BigInt) -> Result<Scalar> {
        match self {
            CoeffRing::Rationals => Ok(Scalar::Rat(BigRational::new(n, d))),
            _ => {
                let inv = self.invert(&self.from_bigint(d))?;
                Ok(self.mul(&self.from_bigint(n), &inv))
            }
        }
    }

    fn int<'a>(&self, s: &'a Scalar) -> &'a BigInt {
        match s {
            Scalar::Int(v) => v,
            Scalar::Rat(_) => panic!("rational scalar used in {self}"),
        }
    }

    fn rat<'a>(&self, s: &'a Scalar) -> &'a BigRational {
        match s {
            Scalar::Rat(v) => v,
            Scalar::Int(_) => panic!("integer scalar used in Q"),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(v) => v.is_one(),
            Scalar::Rat(q) => q.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            CoeffRing::Integers => Scalar::Int(self.int(a) + self.int(b)),
            CoeffRing::Rationals => Scalar::Rat(self.rat(a) + self.rat(b)),
            CoeffRing::IntegersMod(m) => {
                let mut s = self.int(a) + self.int(b);
                if &s >= m {
                    s -= m;
                }
                Scalar::Int(s)
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            CoeffRing::Integers => Scalar::Int(-self.int(a)),
            CoeffRing::Rationals => Scalar::Rat(-self.rat(a)),
            CoeffRing::IntegersMod(m) => {
                let v = self.int(a);
                if v.is_zero() {
                    Scalar::Int(BigInt::zero())
                } else {
                    Scalar::Int(m - v)
                }
            }
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            CoeffRing::Integers => Scalar::Int(self.int(a) * self.int(b)),
            CoeffRing::Rationals => Scalar::Rat(self.rat(a) * self.rat(b)),
            CoeffRing::IntegersMod(m) => Scalar::Int((self.int(a) * self.int(b)).mod_floor(m)),
        }
    }

    pub fn mul_i64(&self, a: &Scalar, k: i64) -> Scalar {
        self.mul(a, &self.from_i64(k))
    }

    /// Multiplicative inverse, or `NonUnit`.
    pub fn invert(&self, a: &Scalar) -> Result<Scalar> {
        let fail = || Error::NonUnit(a.to_string(), self.to_string());
        match self {
            CoeffRing::Integers => {
                let v = self.int(a);
                if v.abs().is_one() {
                    Ok(Scalar::Int(v.clone()))
                } else {
                    Err(fail())
                }
            }
            CoeffRing::Rationals => {
                let q = self.rat(a);
                if q.is_zero() {
                    Err(fail())
                } else {
                    Ok(Scalar::Rat(q.recip()))
                }
            }
            CoeffRing::IntegersMod(m) => {
                let e = self.int(a).extended_gcd(m);
                if e.gcd.is_one() {
                    Ok(Scalar::Int(e.x.mod_floor(m)))
                } else {
                    Err(fail())
                }
            }
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        self.invert(a).is_ok()
    }

    /// Lifts a value to an integer when that makes sense (Z, Z/m, integral rationals).
    pub fn to_bigint(&self, a: &Scalar) -> Option<BigInt> {
        match a {
            Scalar::Int(v) => Some(v.clone()),
            Scalar::Rat(q) if q.is_integer() => Some(q.to_integer()),
            Scalar::Rat(_) => None,
        }
    }

    pub fn coefficient(&self, value: Scalar) -> Coefficient {
        Coefficient { ring: self.clone(), value }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Integers => write!(f, "Z"),
            CoeffRing::Rationals => write!(f, "Q"),
            CoeffRing::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

pub fn is_prime(m: &BigInt) -> bool {
    if m < &BigInt::from(2) {
        return false;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= *m {
        if (m % &d).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

/// A scalar tagged with its ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coefficient {
    pub ring: CoeffRing,
    pub value: Scalar,
}

impl Coefficient {
    pub fn new(ring: &CoeffRing, v: i64) -> Coefficient {
        ring.coefficient(ring.from_i64(v))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn coeff_arith(op: ArithOp, x: &Coefficient, y: &Coefficient) -> Result<Coefficient> {
    if op != ArithOp::Neg && x.ring != y.ring {
        return Err(Error::RingMismatch(x.ring.to_string(), y.ring.to_string()));
    }
    let r = &x.ring;
    let value = match op {
        ArithOp::Add => r.add(&x.value, &y.value),
        ArithOp::Mul => r.mul(&x.value, &y.value),
        ArithOp::Neg => r.neg(&x.value),
    };
    Ok(r.coefficient(value))
}

pub fn coeff_invert(x: &Coefficient) -> Result<Coefficient> {
    Ok(x.ring.coefficient(x.ring.invert(&x.value)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let z = CoeffRing::Integers;
        let s = coeff_arith(ArithOp::Add, &Coefficient::new(&z, 2), &Coefficient::new(&z, 3)).unwrap();
        assert_eq!(s, Coefficient::new(&z, 5));
        let z4 = CoeffRing::modular(4);
        let p = coeff_arith(ArithOp::Mul, &Coefficient::new(&z4, 2), &Coefficient::new(&z4, 2)).unwrap();
        assert!(p.is_zero());
        // (n-1)n/2 at n = 5, as ((n-1)/2) * n
        let n = 5i64;
        let c = coeff_arith(ArithOp::Mul, &Coefficient::new(&z, (n - 1) / 2), &Coefficient::new(&z, n)).unwrap();
        assert_eq!(c, Coefficient::new(&z, 10));
    }

    #[test]
    fn inverses() {
        let z7 = CoeffRing::modular(7);
        let inv = coeff_invert(&Coefficient::new(&z7, 3)).unwrap();
        // brute-force oracle
        let want = (0..7).find(|v| (3 * v) % 7 == 1).unwrap();
        assert_eq!(inv, Coefficient::new(&z7, want));
        let z = CoeffRing::Integers;
        assert_eq!(coeff_invert(&Coefficient::new(&z, -1)).unwrap(), Coefficient::new(&z, -1));
        assert!(matches!(coeff_invert(&Coefficient::new(&z, 2)), Err(Error::NonUnit(..))));
        let z6 = CoeffRing::modular(6);
        assert!(coeff_invert(&Coefficient::new(&z6, 3)).is_err());
    }

    #[test]
    fn mismatch() {
        let a = Coefficient::new(&CoeffRing::Integers, 1);
        let b = Coefficient::new(&CoeffRing::modular(3), 1);
        assert!(matches!(coeff_arith(ArithOp::Add, &a, &b), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn parse_specs() {
        assert_eq!(CoeffRing::parse("Z").unwrap(), CoeffRing::Integers);
        assert_eq!(CoeffRing::parse("q").unwrap(), CoeffRing::Rationals);
        assert_eq!(CoeffRing::parse("Z/4").unwrap(), CoeffRing::modular(4));
        assert_eq!(CoeffRing::parse("F_5").unwrap(), CoeffRing::modular(5));
        assert!(CoeffRing::parse("F_4").is_err());
        assert!(CoeffRing::parse("Z/1").is_err());
        match CoeffRing::parse("Z/x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
    }
}
