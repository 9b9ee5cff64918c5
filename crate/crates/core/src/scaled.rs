//! Exact evaluation at `t = −1/k` with integers instead of fractions.
//!
//! With a depth `D` no smaller than any degree involved, `z_n = k^D · B_n(−1/k)`
//! is an integer, and the recurrence becomes `z_{2n} = −z_n / k` (exact) and
//! `z_{2n+1} = z_n + z_{n+1}`. All values share the denominator `k^D`, so
//! comparisons and zero tests need no normalization. The `i128` path detects
//! overflow and the callers fall back to [`BigInt`].

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::descent::{checked_pair_descent, CheckedDescent};
use crate::{eval_exact, BitIndex, ExactRational};

/// Integer arithmetic needed by the scaled recurrence.
pub trait ScaledInt: Clone + Ord + core::fmt::Debug {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_mul_i64(&self, m: i64) -> Option<Self>;
    /// `−self / k`, or `None` when the division is inexact or overflows.
    fn neg_div_exact(&self, k: i64) -> Option<Self>;
    fn abs(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn to_bigint(&self) -> BigInt;
}

impl ScaledInt for i128 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i128::checked_add(*self, *other)
    }
    fn checked_mul_i64(&self, m: i64) -> Option<Self> {
        i128::checked_mul(*self, m as i128)
    }
    fn neg_div_exact(&self, k: i64) -> Option<Self> {
        let k = k as i128;
        (self % k == 0).then(|| -(self / k))
    }
    fn abs(&self) -> Self {
        i128::abs(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_positive(&self) -> bool {
        *self > 0
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ScaledInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_mul_i64(&self, m: i64) -> Option<Self> {
        Some(self * m)
    }
    fn neg_div_exact(&self, k: i64) -> Option<Self> {
        let (q, r) = self.div_rem(&BigInt::from(k));
        Zero::is_zero(&r).then(|| -q)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

fn checked_pow<T: ScaledInt>(k: i64, depth: u32) -> Option<T> {
    (0..depth).try_fold(T::from_i64(1), |acc, _| acc.checked_mul_i64(k))
}

/// Pair-descent domain for `z_n = k^D · B_n(−1/k)`.
pub struct ScaledPoint<T> {
    k: i64,
    unit: T,
}

impl<T: ScaledInt> ScaledPoint<T> {
    pub fn new(k: u64, depth: u32) -> Option<Self> {
        let k = i64::try_from(k).ok()?;
        Some(Self { k, unit: checked_pow(k, depth)? })
    }
}

impl<T: ScaledInt> CheckedDescent for ScaledPoint<T> {
    type Value = T;

    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        self.unit.clone()
    }
    fn add(&self, a: &T, b: &T) -> Option<T> {
        a.checked_add(b)
    }
    fn times_t(&self, a: &T) -> Option<T> {
        a.neg_div_exact(self.k)
    }
}

fn to_rational(z: BigInt, k: u64, depth: u32) -> ExactRational {
    let denom = num_traits::pow(BigInt::from(k), depth as usize);
    ExactRational::new(z, denom).expect("nonzero denominator")
}

/// `B_n(−1/k)` through the `i128` scaled descent, falling back to
/// rational descent when the scaled values do not fit.
pub fn eval_minus_inverse<N: BitIndex + Copy>(n: N, k: u64) -> ExactRational {
    assert!(k >= 1, "k must be positive");
    // Degrees along the walk never exceed bit_len(n + 1) ≤ bit_len(n) + 1.
    let depth = n.bit_len() as u32 + 1;
    if let Some(dom) = ScaledPoint::<i128>::new(k, depth) {
        if let Some((z, _)) = checked_pair_descent(&dom, n) {
            return to_rational(BigInt::from(z), k, depth);
        }
    }
    eval_exact(n, &ExactRational::minus_inverse(k))
}

/// Bottom-up table of `z_0, …, z_max` with a shared depth.
#[derive(Clone, Debug)]
pub struct ScaledTable {
    k: u64,
    depth: u32,
    values: Values,
}

#[derive(Clone, Debug)]
enum Values {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

fn build<T: ScaledInt>(k: u64, depth: u32, max: usize) -> Option<Vec<T>> {
    let ki = i64::try_from(k).ok()?;
    let mut z: Vec<T> = Vec::with_capacity(max + 1);
    z.push(T::zero());
    if max >= 1 {
        z.push(checked_pow(ki, depth)?);
    }
    for n in 2..=max {
        let next =
            if n % 2 == 0 { z[n / 2].neg_div_exact(ki)? } else { z[n / 2].checked_add(&z[n / 2 + 1])? };
        z.push(next);
    }
    Some(z)
}

impl ScaledTable {
    pub fn new(k: u64, max: usize) -> Self {
        assert!(k >= 2, "table needs k >= 2");
        let depth = (max as u64).bit_len() as u32;
        let values = match build::<i128>(k, depth, max) {
            Some(v) => Values::Small(v),
            None => Values::Big(build::<BigInt>(k, depth, max).expect("BigInt never overflows")),
        };
        Self { k, depth, values }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn len(&self) -> usize {
        match &self.values {
            Values::Small(v) => v.len(),
            Values::Big(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether the `i128` fast path held for the whole table.
    pub fn is_small(&self) -> bool {
        matches!(self.values, Values::Small(_))
    }

    pub fn is_zero(&self, n: usize) -> bool {
        match &self.values {
            Values::Small(v) => v[n] == 0,
            Values::Big(v) => Zero::is_zero(&v[n]),
        }
    }

    pub fn value(&self, n: usize) -> ExactRational {
        let z = match &self.values {
            Values::Small(v) => BigInt::from(v[n]),
            Values::Big(v) => v[n].clone(),
        };
        to_rational(z, self.k, self.depth)
    }

    /// `b_{2n+1} > ½·max(|b_n|, |b_{n+1}|) > 0`, decided on the scaled integers.
    pub fn odd_dominates(&self, n: usize) -> bool {
        fn check<T: ScaledInt>(z: &[T], n: usize) -> bool {
            let m = z[n].abs().max(z[n + 1].abs());
            let odd = &z[2 * n + 1];
            odd.checked_add(odd).is_some_and(|twice| twice > m) && m.is_positive()
        }
        match &self.values {
            Values::Small(v) => check(v, n),
            Values::Big(v) => check(v, n),
        }
    }
}

/// Counts zeros of the first component over the pair tree, depth-first:
/// entry `L − 1` counts indices `n ∈ [2^{L−1}, 2^L)` for `L = 1..=max_len`.
/// Memory stays proportional to `max_len`.
pub(crate) fn walk_zero_counts<D>(dom: &D, max_len: u32) -> Option<Vec<u64>>
where
    D: CheckedDescent,
    D::Value: ScaledInt,
{
    let mut counts = vec![0u64; max_len as usize];
    if max_len == 0 {
        return Some(counts);
    }
    let one = dom.one();
    let two = dom.times_t(&one)?;
    let mut stack = vec![(1u32, one, two)];
    while let Some((len, lo, hi)) = stack.pop() {
        if lo.is_zero() {
            counts[len as usize - 1] += 1;
        }
        if len == max_len {
            continue;
        }
        let mid = dom.add(&lo, &hi)?;
        stack.push((len + 1, mid.clone(), dom.times_t(&hi)?));
        stack.push((len + 1, dom.times_t(&lo)?, mid));
    }
    Some(counts)
}

/// Number of zeros of `B_n(−1/k)` among the indices of each bit length, as in
/// [`walk_zero_counts`].
pub fn zero_counts_by_length(k: u64, max_len: u32) -> Vec<u64> {
    let depth = max_len + 1;
    ScaledPoint::<i128>::new(k, depth)
        .and_then(|dom| walk_zero_counts(&dom, max_len))
        .or_else(|| walk_zero_counts(&ScaledPoint::<BigInt>::new(k, depth)?, max_len))
        .expect("BigInt walk cannot overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_rational_descent() {
        for k in [2u64, 3, 4, 10] {
            let q = ExactRational::minus_inverse(k);
            let table = ScaledTable::new(k, 2000);
            assert!(table.is_small());
            for n in 0..=2000u64 {
                let exact = eval_exact(n, &q);
                assert_eq!(eval_minus_inverse(n, k), exact, "k={k} n={n}");
                assert_eq!(table.value(n as usize), exact, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn falls_back_when_i128_is_too_small() {
        // 1000^14 overflows i128, so this goes through BigInt.
        let table = ScaledTable::new(1000, 1 << 13);
        assert!(!table.is_small());
        let q = ExactRational::minus_inverse(1000);
        for n in [0usize, 1, 77, 4095, 8191] {
            assert_eq!(table.value(n), eval_exact(n as u64, &q));
        }
        let n = (1u64 << 40) - 3;
        assert_eq!(eval_minus_inverse(n, 1000), eval_exact(n, &q));
    }

    #[test]
    fn zero_counts_match_table() {
        for k in [2u64, 3] {
            let table = ScaledTable::new(k, 1 << 12);
            let counts = zero_counts_by_length(k, 12);
            for len in 1..=12u32 {
                let brute =
                    ((1usize << (len - 1))..(1usize << len)).filter(|&n| table.is_zero(n)).count() as u64;
                assert_eq!(counts[len as usize - 1], brute, "k={k} len={len}");
            }
        }
    }
}
