//! Exact scalars over ℚ and prime fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Ground field descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Q,
    Fp(u64),
}

/// A field element. F_p values are kept in `0..p`; rationals in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp(u64, u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        // moduli stay below 2^31 so products fit in u64
        if is_prime(p) && p < (1 << 31) {
            Ok(Field::Fp(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::zero()),
            Field::Fp(p) => Scalar::Fp(0, *p),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::one()),
            Field::Fp(p) => Scalar::Fp(1 % *p, *p),
        }
    }

    pub fn int(&self, n: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => Scalar::Fp(n.rem_euclid(*p as i64) as u64, *p),
        }
    }

    /// `(-1)^e`.
    pub fn sign(&self, e: i64) -> Scalar {
        if e.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.int(-1)
        }
    }

    pub fn ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator(format!("{num}/{den}")));
        }
        match self {
            Field::Q => Ok(Scalar::Q(BigRational::new(num.clone(), den.clone()))),
            Field::Fp(p) => {
                let pb = BigInt::from(*p);
                let n = ((num % &pb) + &pb) % &pb;
                let d = ((den % &pb) + &pb) % &pb;
                if d.is_zero() {
                    return Err(FieldError::ZeroDenominator(format!("{num}/{den} mod {p}")));
                }
                let n: u64 = n.try_into().expect("reduced mod p");
                let d: u64 = d.try_into().expect("reduced mod p");
                let s = Scalar::Fp(n, *p);
                Ok(s * Scalar::Fp(d, *p).inv().expect("nonzero mod p"))
            }
        }
    }

    /// Parses `"3"`, `"-1"`, `"3/2"`.
    pub fn parse(&self, s: &str) -> Result<Scalar, FieldError> {
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let num: BigInt = n.parse().map_err(|_| FieldError::Parse(s.to_string()))?;
        let den: BigInt = d.parse().map_err(|_| FieldError::Parse(s.to_string()))?;
        self.ratio(&num, &den)
    }

    /// All elements, for prime fields only.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Q => None,
            Field::Fp(p) => Some((0..*p).map(|v| Scalar::Fp(v, *p)).collect()),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => *p,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Field::Q => "Q".to_string(),
            Field::Fp(p) => format!("F{p}"),
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp(v, _) => *v == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp(_, p) => Field::Fp(*p),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(r) => Scalar::Q(r.recip()),
            Scalar::Fp(v, p) => Scalar::Fp(pow_mod(*v, *p - 2, *p), *p),
        })
    }

    pub fn add_assign_ref(&mut self, o: &Scalar) {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => *a += b,
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) => {
                debug_assert_eq!(p, q);
                *a = (*a + *b) % *p;
            }
            _ => panic!("mixed fields"),
        }
    }

    /// `self += a * b`.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        match (self, a, b) {
            (Scalar::Q(s), Scalar::Q(x), Scalar::Q(y)) => *s += x * y,
            (Scalar::Fp(s, p), Scalar::Fp(x, _), Scalar::Fp(y, _)) => *s = (*s + x * y) % *p,
            _ => panic!("mixed fields"),
        }
    }

    /// Integer value if this is a small rational integer; used for compact output.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(r) if r.is_integer() => r.to_integer().try_into().ok(),
            Scalar::Q(_) => None,
            Scalar::Fp(v, _) => Some(*v as i64),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_negative(),
            Scalar::Fp(..) => false,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(v, _) => write!(f, "{v}"),
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let mut s = self.clone();
        s.add_assign_ref(o);
        s
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, o: Scalar) -> Scalar {
        self.add_assign_ref(&o);
        self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp(a, p) => Scalar::Fp((*p - *a) % *p, *p),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) => {
                debug_assert_eq!(p, q);
                Scalar::Fp(a * b % p, *p)
            }
            _ => panic!("mixed fields"),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        let q = Field::Q;
        assert_eq!(q.parse("6/4").unwrap(), q.ratio(&3.into(), &2.into()).unwrap());
        assert_eq!(q.parse("-1").unwrap(), q.int(-1));
        let f = Field::prime(5).unwrap();
        assert_eq!(f.parse("3/2").unwrap(), f.int(4));
        assert_eq!(f.int(-1), Scalar::Fp(4, 5));
        assert!(Field::prime(6).is_err());
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn fp_inverse() {
        let f = Field::prime(7).unwrap();
        for x in f.elements().unwrap().into_iter().skip(1) {
            assert!((&x * &x.inv().unwrap()).is_one());
        }
    }
}
