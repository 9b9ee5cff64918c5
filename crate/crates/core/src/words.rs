//! Binary words and the integer families `p_k`, `q_k`, `u_n`, `v_n`.
//!
//! A [`BinaryWord`] keeps its bits explicitly, most significant first, so
//! words with leading zeros such as `(01)^k` are ordinary values. Their
//! numeric value ignores leading zeros.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{BitIndex, Error};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BinaryWord {
    bits: Vec<bool>,
}

impl BinaryWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// `len` copies of `bit`.
    pub fn run(bit: bool, len: usize) -> Self {
        Self { bits: alloc::vec![bit; len] }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Drops leading zeros. The canonical form of any word of value 0 is `"0"`.
    pub fn canonical(&self) -> Self {
        match self.bits.iter().position(|&b| b) {
            Some(i) => Self { bits: self.bits[i..].to_vec() },
            None => Self { bits: alloc::vec![false] },
        }
    }

    /// `w^k`: `k` copies of `self` concatenated.
    pub fn power(&self, k: usize) -> Self {
        let mut bits = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            bits.extend_from_slice(&self.bits);
        }
        Self { bits }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Self { bits }
    }

    /// Numeric value; leading zeros do not matter.
    pub fn value(&self) -> BigUint {
        let mut acc = BigUint::zero();
        for &b in &self.bits {
            acc <<= 1u32;
            if b {
                acc += 1u32;
            }
        }
        acc
    }

    pub fn ends_with(&self, suffix: &Self) -> bool {
        self.bits.ends_with(&suffix.bits)
    }
}

impl Add<&BinaryWord> for BinaryWord {
    type Output = BinaryWord;
    fn add(mut self, rhs: &BinaryWord) -> BinaryWord {
        self.bits.extend_from_slice(&rhs.bits);
        self
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::ParseWord(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_bits)
    }
}

fn word(s: &str) -> BinaryWord {
    s.parse().expect("literal binary word")
}

/// `bin(n)`: binary digits without leading zeros; `bin(0) = "0"`.
pub fn to_bits<N: BitIndex>(n: N) -> BinaryWord {
    let len = n.bit_len();
    if len == 0 {
        return BinaryWord::from_bits(alloc::vec![false]);
    }
    BinaryWord::from_bits((0..len).rev().map(|i| n.bit_at(i)).collect())
}

/// The value of a word, leading zeros ignored.
pub fn from_bits(w: &BinaryWord) -> BigUint {
    w.value()
}

pub fn power_concat(w: &BinaryWord, k: usize) -> BinaryWord {
    w.power(k)
}

/// `p_k = (4^k − 1)/3`; `p_0 = 0`.
pub fn p_val(k: u32) -> BigUint {
    ((BigUint::one() << (2 * k)) - 1u32) / 3u32
}

/// `q_k = (5·4^k − 2)/3`.
pub fn q_val(k: u32) -> BigUint {
    ((BigUint::from(5u32) << (2 * k)) - 2u32) / 3u32
}

/// `u_0 = 1`, `u_n = 2^{8n−2}·u_{n−1} + 2^{4n} − 1`.
pub fn u_val(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |u, i| (u << (8 * i - 2)) + (BigUint::one() << (4 * i)) - 1u32)
}

/// `v_0 = 5`, `v_n = 2^{8n+2}·v_{n−1} − 2^{4n+2} + 1`.
pub fn v_val(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(5u32), |v, i| (v << (8 * i + 2)) + 1u32 - (BigUint::one() << (4 * i + 2)))
}

/// `1(01)^{k−1}`, the binary expansion of `p_k` for `k ≥ 1`.
pub fn p_pattern(k: usize) -> BinaryWord {
    word("1") + &word("01").power(k.saturating_sub(1))
}

/// `1(10)^k`, the binary expansion of `q_k` for `k ≥ 1`.
pub fn q_pattern(k: usize) -> BinaryWord {
    word("1") + &word("10").power(k)
}

/// `1 0^2 1^4 0^6 … 0^{4n−2} 1^{4n}`: a single 1 followed by alternating runs
/// of lengths 2, 4, …, 4n.
pub fn u_pattern(n: usize) -> BinaryWord {
    (1..=2 * n).fold(word("1"), |w, j| w + &BinaryWord::run(j % 2 == 0, 2 * j))
}

/// `1 0^2 1^4 … 1^{4n} 0^{4n+1} 1`.
pub fn v_pattern(n: usize) -> BinaryWord {
    u_pattern(n) + &BinaryWord::run(false, 4 * n + 1) + &word("1")
}

/// Which integer family a [`FamilyIndex`] refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    P,
    Q,
    U,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyIndex {
    pub family: Family,
    pub index: u32,
}

impl FamilyIndex {
    pub fn value(self) -> BigUint {
        match self.family {
            Family::P => p_val(self.index),
            Family::Q => q_val(self.index),
            Family::U => u_val(self.index),
            Family::V => v_val(self.index),
        }
    }

    /// The binary pattern predicted for this member.
    pub fn pattern(self) -> BinaryWord {
        let i = self.index as usize;
        match self.family {
            Family::P => p_pattern(i),
            Family::Q => q_pattern(i),
            Family::U => u_pattern(i),
            Family::V => v_pattern(i),
        }
    }
}

impl fmt::Display for FamilyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::P => "p",
            Family::Q => "q",
            Family::U => "u",
            Family::V => "v",
        };
        write!(f, "{name}_{}", self.index)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "p" | "P" => Ok(Family::P),
            "q" | "Q" => Ok(Family::Q),
            "u" | "U" => Ok(Family::U),
            "v" | "V" => Ok(Family::V),
            _ => Err(Error::Range(String::from("family must be one of p, q, u, v"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    #[test]
    fn bits_of_small_numbers() {
        assert_eq!(format!("{}", to_bits(1u64)), "1");
        assert_eq!(format!("{}", to_bits(79u64)), "1001111");
        assert_eq!(format!("{}", to_bits(6u64)), "110");
        assert_eq!(format!("{}", to_bits(0u64)), "0");
    }

    #[test]
    fn leading_zeros_are_ignored() {
        assert_eq!(from_bits(&word("0101")), BigUint::from(5u8));
        assert_eq!(from_bits(&word("01").power(2)), p_val(2));
        assert_eq!(from_bits(&word("11010")), q_val(2));
        assert_eq!(q_val(2), BigUint::from(26u8));
        assert_eq!(word("0101").canonical(), word("101"));
        assert_eq!(word("000").canonical(), word("0"));
    }

    #[test]
    fn powers() {
        assert_eq!(word("10").power(3), word("101010"));
        assert!(word("01").power(0).is_empty());
        assert_eq!(word("1").power(4), word("1111"));
    }

    #[test]
    fn family_values() {
        assert_eq!(p_val(0), BigUint::zero());
        assert_eq!(p_val(1), BigUint::one());
        assert_eq!(p_val(2), BigUint::from(5u8));
        assert_eq!(q_val(1), BigUint::from(6u8));
        assert_eq!(u_val(0), BigUint::one());
        assert_eq!(v_val(0), BigUint::from(5u8));
        assert_eq!(u_val(1), BigUint::from(79u8));
        assert_eq!(v_val(1), BigUint::from(5057u32));
        assert_eq!(format!("{}", to_bits(v_val(1))), "1001111000001");
    }

    #[test]
    fn patterns_match_families() {
        for k in 1..=12u32 {
            assert_eq!(p_pattern(k as usize).value(), p_val(k), "p_{k}");
            assert_eq!(q_pattern(k as usize).value(), q_val(k), "q_{k}");
            assert_eq!(to_bits(p_val(k)), p_pattern(k as usize));
        }
        for n in 0..=4u32 {
            let u = u_val(n);
            let v = v_val(n);
            assert_eq!(u.bits(), u64::from(4 * n * n + 2 * n + 1), "len u_{n}");
            assert_eq!(v.bits(), u64::from(4 * n * n + 6 * n + 3), "len v_{n}");
            assert_eq!(to_bits(u), u_pattern(n as usize), "pattern u_{n}");
            assert_eq!(to_bits(v), v_pattern(n as usize), "pattern v_{n}");
        }
    }

    #[test]
    fn family_index_dispatch() {
        let f = FamilyIndex { family: Family::V, index: 1 };
        assert_eq!(f.value(), BigUint::from(5057u32));
        assert_eq!(f.pattern().value(), f.value());
        assert_eq!(format!("{f}"), "v_1");
    }
}
