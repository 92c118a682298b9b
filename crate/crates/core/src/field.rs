//! Exact coefficient arithmetic over the rationals or a prime field GF(p).
//!
//! All arithmetic is exact; there is no floating point anywhere in the kernel.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default prime characteristic, the usual choice for generic-characteristic checks.
pub const DEFAULT_PRIME: u32 = 32003;

/// The base field of a polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// The field of rational numbers.
    Rationals,
    /// The prime field GF(p), p an odd prime below 2^31.
    Prime(u32),
}

impl FieldSpec {
    /// Builds a field spec from a characteristic, validating primality.
    /// Characteristic 0 selects the rationals.
    pub fn from_char(ch: u32) -> Result<FieldSpec> {
        if ch == 0 {
            return Ok(FieldSpec::Rationals);
        }
        if ch < 2 || !is_prime(ch) {
            return Err(Error::InvalidRing(format!("{ch} is not prime")));
        }
        Ok(FieldSpec::Prime(ch))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(Box::new(BigRational::zero())),
            FieldSpec::Prime(_) => Coeff::Fp(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(Box::new(BigRational::from_integer(BigInt::from(n)))),
            FieldSpec::Prime(p) => {
                let p = *p as i64;
                Coeff::Fp(n.rem_euclid(p) as u64)
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                let s = x + y;
                let p = *p as u64;
                Coeff::Fp(if s >= p { s - p } else { s })
            }
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => {
                Coeff::Rat(Box::new(x.as_ref() + y.as_ref()))
            }
            _ => panic!("coefficient does not match field"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldSpec::Prime(p), Coeff::Fp(x)) => {
                Coeff::Fp(if *x == 0 { 0 } else { *p as u64 - x })
            }
            (FieldSpec::Rationals, Coeff::Rat(x)) => Coeff::Rat(Box::new(-x.as_ref())),
            _ => panic!("coefficient does not match field"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(x * y % *p as u64),
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => {
                Coeff::Rat(Box::new(x.as_ref() * y.as_ref()))
            }
            _ => panic!("coefficient does not match field"),
        }
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldSpec::Prime(p), Coeff::Fp(x)) => {
                assert!(*x != 0, "inverse of zero");
                Coeff::Fp(mod_inverse(*x, *p as u64))
            }
            (FieldSpec::Rationals, Coeff::Rat(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Coeff::Rat(Box::new(x.recip()))
            }
            _ => panic!("coefficient does not match field"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }
}

/// An exact field element. Prime-field values are stored reduced to [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Fp(u64),
    Rat(Box<BigRational>),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Fp(x) => *x == 0,
            Coeff::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Fp(x) => *x == 1,
            Coeff::Rat(x) => x.is_one(),
        }
    }

    /// Renders the coefficient for display. Prime-field elements above p/2
    /// print as their negative representative, which reads better and
    /// round-trips through the parser.
    pub fn render(&self, field: &FieldSpec) -> String {
        match (self, field) {
            (Coeff::Fp(x), FieldSpec::Prime(p)) => {
                let p = *p as u64;
                if *x > p / 2 {
                    format!("-{}", p - x)
                } else {
                    format!("{x}")
                }
            }
            (Coeff::Rat(x), _) => {
                if x.is_integer() {
                    format!("{}", x.numer())
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            _ => panic!("coefficient does not match field"),
        }
    }

    /// True when the displayed form starts with a minus sign.
    pub fn render_is_negative(&self, field: &FieldSpec) -> bool {
        match (self, field) {
            (Coeff::Fp(x), FieldSpec::Prime(p)) => *x > *p as u64 / 2,
            (Coeff::Rat(x), _) => x.is_negative(),
            _ => panic!("coefficient does not match field"),
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    let n = n as u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Extended Euclid; p is prime and a is nonzero mod p.
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "element not invertible");
    t.rem_euclid(p as i64) as u64
}
