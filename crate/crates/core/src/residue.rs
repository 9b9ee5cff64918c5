//! Residues modulo a prime.

use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::{Error, ExactRational};

/// Trial division; moduli here are at most a few thousand.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduces `value` into `[0, p)`. `p` must be prime.
    pub fn new(value: i64, modulus: u64) -> Result<Self, Error> {
        if !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        Ok(Self::reduce(value.rem_euclid(modulus as i64) as u64, modulus))
    }

    #[inline]
    pub(crate) fn reduce(value: u64, modulus: u64) -> Self {
        Self { value: value % modulus, modulus }
    }

    /// Image of a rational in `F_p`; fails when `p` divides the denominator.
    pub fn from_rational(q: &ExactRational, modulus: u64) -> Result<Self, Error> {
        if !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        let m = BigInt::from(modulus);
        let num = q.numer().mod_floor(&m).to_u64().expect("reduced below modulus");
        let den = q.denom().mod_floor(&m).to_u64().expect("reduced below modulus");
        let inv = Self::reduce(den, modulus)
            .inverse()
            .ok_or_else(|| Error::NotInvertible { value: alloc::format!("{q}"), modulus })?;
        Ok(Self::reduce(num, modulus) * inv)
    }

    pub fn zero(modulus: u64) -> Self {
        Self { value: 0, modulus }
    }

    pub fn one(modulus: u64) -> Self {
        Self::reduce(1, modulus)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Fermat inverse; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        (!self.is_zero()).then(|| self.pow(self.modulus - 2))
    }

    /// Multiplicative order in `F_p^*`; `None` for zero.
    pub fn order(self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let one = Self::one(self.modulus);
        let mut x = self;
        let mut k = 1;
        while x != one {
            x = x * self;
            k += 1;
        }
        Some(k)
    }
}

impl core::ops::Add for Residue {
    type Output = Residue;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self::reduce(self.value + rhs.value, self.modulus)
    }
}

impl core::ops::Mul for Residue {
    type Output = Residue;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Self { value: v as u64, modulus: self.modulus }
    }
}

impl core::ops::Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Self {
        Self::reduce(self.modulus - self.value, self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}
