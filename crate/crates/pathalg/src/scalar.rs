//! Exact field scalars: rationals and prime fields.

use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// The coefficient field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

impl FieldSpec {
    /// Builds a prime-field spec, checking primality by trial division.
    pub fn fp(p: u64) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Fp(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::zero()),
            FieldSpec::Fp(p) => Scalar::Fp { p, v: 0 },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::one()),
            FieldSpec::Fp(p) => Scalar::Fp { p, v: 1 },
        }
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::from(BigInt::from(n))),
            FieldSpec::Fp(p) => {
                let v = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { p, v }
            }
        }
    }

    /// Parses the wire form: `a/b` or an integer for Q, a residue for Fp.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        match self {
            FieldSpec::Q => {
                let r = if let Some((a, b)) = s.split_once('/') {
                    let a = BigInt::from_str(a.trim())
                        .map_err(|_| Error::Invalid(format!("bad rational {s:?}")))?;
                    let b = BigInt::from_str(b.trim())
                        .map_err(|_| Error::Invalid(format!("bad rational {s:?}")))?;
                    if b.is_zero() {
                        return Err(Error::Invalid("zero denominator".into()));
                    }
                    BigRational::new(a, b)
                } else {
                    BigRational::from(
                        BigInt::from_str(s.trim())
                            .map_err(|_| Error::Invalid(format!("bad integer {s:?}")))?,
                    )
                };
                Ok(Scalar::Q(r))
            }
            FieldSpec::Fp(p) => {
                let n = i128::from_str(s.trim())
                    .map_err(|_| Error::Invalid(format!("bad residue {s:?}")))?;
                Ok(Scalar::Fp { p, v: n.rem_euclid(p as i128) as u64 })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "q"),
            FieldSpec::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.checked_mul(d).map_or(false, |s| s <= n) {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. All arithmetic panics on mixed fields;
/// callers check field compatibility at the API boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { p: u64, v: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Q,
            Scalar::Fp { p, .. } => FieldSpec::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { p: q, v: b }) if p == q => {
                Scalar::Fp { p: *p, v: add_mod(*a, *b, *p) }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: if *v == 0 { 0 } else { p - v } },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { p: q, v: b }) if p == q => {
                Scalar::Fp { p: *p, v: mul_mod(*a, *b, *p) }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        Ok(match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: inv_mod(*v, *p) },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// Wire form: reduced `a/b` (or plain integer) for Q, residue for Fp.
    pub fn to_wire(&self) -> String {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => v.to_string(),
        }
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_wire())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(7919));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
        assert!(FieldSpec::fp(4).is_err());
    }

    #[test]
    fn rational_wire_round_trip() {
        let f = FieldSpec::Q;
        let x = f.parse("3/2").unwrap();
        assert_eq!(x.to_wire(), "3/2");
        let y = f.parse("-4/6").unwrap();
        assert_eq!(y.to_wire(), "-2/3");
        let z = f.parse("6/3").unwrap();
        assert_eq!(z.to_wire(), "2");
        // positive denominator is enforced by reduction
        let w = f.parse("1/-2").unwrap();
        assert_eq!(w.to_wire(), "-1/2");
    }

    #[test]
    fn fp_arithmetic() {
        let f = FieldSpec::fp(7).unwrap();
        let a = f.from_i64(5);
        let b = f.from_i64(4);
        assert_eq!(a.add(&b).to_wire(), "2");
        assert_eq!(a.mul(&b).to_wire(), "6");
        assert_eq!(a.inv().unwrap().mul(&a).to_wire(), "1");
        assert_eq!(f.from_i64(-1).to_wire(), "6");
    }

    #[test]
    fn field_axioms_sampled() {
        // a(b+c) = ab+ac and inverses, 200 samples per field
        let fields = [FieldSpec::Q, FieldSpec::fp(13).unwrap()];
        for f in fields {
            let mut state = 12345u64;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) as i64 % 50) - 25
            };
            for _ in 0..200 {
                let a = f.from_i64(next());
                let b = f.from_i64(next());
                let c = f.from_i64(next());
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                if !a.is_zero() {
                    assert_eq!(a.mul(&a.inv().unwrap()), f.one());
                }
            }
        }
    }
}
