//! Arithmetic in prime fields GF(p).
//!
//! Elements are kept as canonical representatives in `[0, p)`, so equality
//! is plain value equality.  The modulus is restricted to `p < 2^31`, which
//! keeps every intermediate product inside a `u64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

/// A verified prime modulus defining a field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus(u64);

impl Modulus {
    /// Builds a modulus, verifying primality by trial division.
    pub fn new(p: u64) -> Result<Self> {
        if !(2..MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Modulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn zero(self) -> Scalar {
        Scalar { value: 0, modulus: self }
    }

    pub fn one(self) -> Scalar {
        Scalar { value: 1 % self.0, modulus: self }
    }

    /// Canonical scalar for an arbitrary integer, reduced mod p.
    pub fn scalar(self, value: u64) -> Scalar {
        Scalar { value: value % self.0, modulus: self }
    }

    /// The first `k` field elements `0, 1, ..., k-1` in that order.
    ///
    /// This is the deterministic trial order used wherever the algorithms
    /// scan candidate field elements.
    pub fn enumerate(self, k: u64) -> Result<Vec<Scalar>> {
        if k > self.0 {
            return Err(Error::EnumerationExceedsField { requested: k, field_size: self.0 });
        }
        Ok((0..k).map(|v| Scalar { value: v, modulus: self }).collect())
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of GF(p), stored as its canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u64,
    modulus: Modulus,
}

impl Scalar {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse.  Fails on zero.
    pub fn inv(self) -> Result<Scalar> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: a^(p-2) is the inverse in GF(p).
        Ok(self.pow(self.modulus.0 - 2))
    }

    pub fn pow(self, mut exp: u64) -> Scalar {
        let p = self.modulus.0;
        let mut base = self.value;
        let mut acc = 1 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Scalar { value: acc, modulus: self.modulus }
    }

    fn require_same_modulus(self, other: Scalar) {
        assert_eq!(
            self.modulus, other.modulus,
            "field modulus mismatch: {} vs {}",
            self.modulus, other.modulus
        );
    }
}

impl Add for Scalar {
    type Output = Scalar;

    fn add(self, rhs: Scalar) -> Scalar {
        self.require_same_modulus(rhs);
        let p = self.modulus.0;
        let mut v = self.value + rhs.value;
        if v >= p {
            v -= p;
        }
        Scalar { value: v, modulus: self.modulus }
    }
}

impl Sub for Scalar {
    type Output = Scalar;

    fn sub(self, rhs: Scalar) -> Scalar {
        self.require_same_modulus(rhs);
        let p = self.modulus.0;
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + p - rhs.value
        };
        Scalar { value: v, modulus: self.modulus }
    }
}

impl Mul for Scalar {
    type Output = Scalar;

    fn mul(self, rhs: Scalar) -> Scalar {
        self.require_same_modulus(rhs);
        Scalar { value: self.value * rhs.value % self.modulus.0, modulus: self.modulus }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        let v = if self.value == 0 { 0 } else { self.modulus.0 - self.value };
        Scalar { value: v, modulus: self.modulus }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    if n.is_multiple_of(3) {
        return n == 3;
    }
    let mut d = 5;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}
