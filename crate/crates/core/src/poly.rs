//! Coefficient vectors of Stern polynomials.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::descent::{pair_descent, Descent};
use crate::{BitIndex, ExactRational};

/// One Stern polynomial `B_n(t)`.
///
/// `coeffs[i]` is the coefficient of `t^i`; trailing zeros are trimmed, so the
/// zero polynomial `B_0` has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SternPoly {
    index: BigUint,
    coeffs: Vec<BigUint>,
}

impl SternPoly {
    pub(crate) fn from_parts(index: BigUint, mut coeffs: Vec<BigUint>) -> Self {
        trim(&mut coeffs);
        Self { index, coeffs }
    }

    pub fn index(&self) -> &BigUint {
        &self.index
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigUint> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `v` with `t^v` dividing the polynomial; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Sum of the coefficients, i.e. the value at `t = 1`.
    pub fn coeff_sum(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Horner evaluation at an exact rational.
    pub fn eval(&self, q: &ExactRational) -> ExactRational {
        self.coeffs.iter().rev().fold(ExactRational::zero(), |acc, c| {
            &(&acc * q) + &ExactRational::from_integer(BigInt::from(c.clone()))
        })
    }

    /// Horner evaluation at an integer.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + BigInt::from(c.clone()))
    }

    /// Whether the coefficient vector reads the same in both directions.
    pub fn is_palindrome(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl fmt::Display for SternPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{c}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn add_coeffs(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

fn shift_coeffs(a: &[BigUint]) -> Vec<BigUint> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(a.len() + 1);
    out.push(BigUint::zero());
    out.extend_from_slice(a);
    out
}

/// Polynomial coefficient vectors with `t` acting as a shift.
pub struct PolyDomain;

impl Descent for PolyDomain {
    type Value = Vec<BigUint>;

    fn zero(&self) -> Self::Value {
        Vec::new()
    }
    fn one(&self) -> Self::Value {
        vec![BigUint::one()]
    }
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        add_coeffs(a, b)
    }
    fn times_t(&self, a: &Self::Value) -> Self::Value {
        shift_coeffs(a)
    }
}

/// `B_n(t)` straight from the defining recurrence, memoized over the
/// (at most two per level) indices the recursion visits.
pub fn stern_poly(n: impl Into<BigUint>) -> SternPoly {
    let n = n.into();
    let mut memo = BTreeMap::new();
    let coeffs = recurse(&n, &mut memo);
    SternPoly::from_parts(n, coeffs)
}

fn recurse(n: &BigUint, memo: &mut BTreeMap<BigUint, Vec<BigUint>>) -> Vec<BigUint> {
    if n.is_zero() {
        return Vec::new();
    }
    if n.is_one() {
        return vec![BigUint::one()];
    }
    if let Some(c) = memo.get(n) {
        return c.clone();
    }
    let half: BigUint = n >> 1u32;
    let c = if n.bit(0) {
        let a = recurse(&half, memo);
        let b = recurse(&(&half + 1u32), memo);
        add_coeffs(&a, &b)
    } else {
        shift_coeffs(&recurse(&half, memo))
    };
    memo.insert(n.clone(), c.clone());
    c
}

/// `(B_n, B_{n+1})` by pair descent, in `O(log n)` polynomial operations.
pub fn stern_pair<N: BitIndex + Into<BigUint> + Clone>(n: N) -> (SternPoly, SternPoly) {
    let (lo, hi) = pair_descent(&PolyDomain, n.clone());
    let n: BigUint = n.into();
    let next = &n + 1u32;
    (SternPoly::from_parts(n, lo), SternPoly::from_parts(next, hi))
}

/// Every `B_0, …, B_{max}` built bottom-up. Memory grows like `max·log(max)`,
/// so this is meant for oracles and modest tables.
pub fn stern_table(max: usize) -> Vec<SternPoly> {
    let mut coeffs: Vec<Vec<BigUint>> = Vec::with_capacity(max + 1);
    for n in 0..=max {
        let c = match n {
            0 => Vec::new(),
            1 => vec![BigUint::one()],
            _ if n % 2 == 0 => shift_coeffs(&coeffs[n / 2]),
            _ => add_coeffs(&coeffs[n / 2], &coeffs[n / 2 + 1]),
        };
        coeffs.push(c);
    }
    coeffs.into_iter().enumerate().map(|(n, c)| SternPoly::from_parts(BigUint::from(n), c)).collect()
}

/// Maximum number of coefficients in a [`SmallPoly`]; enough for
/// `B_{n+1}` with `n < 2^64`.
pub const SMALL_CAP: usize = 66;

/// Stack-allocated Stern polynomial with `u64` coefficients, used by the
/// exhaustive sweeps. Coefficients of `B_n` for `n < 2^64` are bounded by the
/// diatomic number `s_n ≤ F_65`, so the checked adds never fail in that range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallPoly {
    len: u8,
    coeffs: [u64; SMALL_CAP],
}

impl SmallPoly {
    pub const ZERO: Self = Self { len: 0, coeffs: [0; SMALL_CAP] };

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs[..self.len as usize]
    }

    pub fn degree(&self) -> Option<usize> {
        (self.len as usize).checked_sub(1)
    }

    pub fn is_palindrome(&self) -> bool {
        let c = self.coeffs();
        c.iter().eq(c.iter().rev())
    }

    pub fn to_stern_poly(&self, index: u64) -> SternPoly {
        SternPoly::from_parts(BigUint::from(index), self.coeffs().iter().map(|&c| BigUint::from(c)).collect())
    }
}

/// [`SmallPoly`] arithmetic with overflow detection.
pub struct SmallPolyDomain;

impl crate::descent::CheckedDescent for SmallPolyDomain {
    type Value = SmallPoly;

    fn zero(&self) -> SmallPoly {
        SmallPoly::ZERO
    }
    fn one(&self) -> SmallPoly {
        let mut p = SmallPoly::ZERO;
        p.len = 1;
        p.coeffs[0] = 1;
        p
    }
    fn add(&self, a: &SmallPoly, b: &SmallPoly) -> Option<SmallPoly> {
        let mut out = *a;
        out.len = a.len.max(b.len);
        for i in 0..b.len as usize {
            out.coeffs[i] = out.coeffs[i].checked_add(b.coeffs[i])?;
        }
        Some(out)
    }
    fn times_t(&self, a: &SmallPoly) -> Option<SmallPoly> {
        if a.len == 0 {
            return Some(*a);
        }
        if a.len as usize >= SMALL_CAP {
            return None;
        }
        let mut out = SmallPoly::ZERO;
        out.len = a.len + 1;
        out.coeffs[1..=a.len as usize].copy_from_slice(a.coeffs());
        Some(out)
    }
}

/// `(B_n, B_{n+1})` with `u64` coefficients.
pub fn small_pair(n: u64) -> (SmallPoly, SmallPoly) {
    crate::descent::checked_pair_descent(&SmallPolyDomain, n)
        .expect("coefficients of B_n fit in u64 for n < 2^64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn coeffs(p: &SternPoly) -> Vec<u64> {
        p.coeffs().iter().map(|c| u64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn recurrence_examples() {
        assert!(stern_poly(0u32).is_zero());
        assert_eq!(coeffs(&stern_poly(1u32)), [1]);
        // B_7 = B_3 + B_4 = (1 + t) + t²
        assert_eq!(coeffs(&stern_poly(7u32)), [1, 1, 1]);
        // B_11 = B_5 + B_6 = (1 + 2t) + (t + t²)
        assert_eq!(coeffs(&stern_poly(11u32)), [1, 3, 1]);
        assert_eq!(format!("{}", stern_poly(11u32)), "1 + 3t + t^2");
    }

    #[test]
    fn pair_examples() {
        let (a, b) = stern_pair(0u64);
        assert!(a.is_zero());
        assert_eq!(coeffs(&b), [1]);
        let (a, b) = stern_pair(10u64);
        assert_eq!(coeffs(&a), [0, 1, 2]);
        assert_eq!(coeffs(&b), [1, 3, 1]);
        // 49 = 2^7 - u_1
        let (_, b) = stern_pair(49u64);
        assert_eq!(b, stern_poly(50u32));
    }

    #[test]
    fn table_matches_recurrence_and_descent() {
        let table = stern_table(1 << 10);
        for (n, p) in table.iter().enumerate() {
            assert_eq!(p, &stern_poly(n as u64), "n={n}");
            let (lo, hi) = stern_pair(n as u64);
            assert_eq!(&lo, p);
            if n + 1 < table.len() {
                assert_eq!(hi, table[n + 1]);
            }
            let (slo, _) = small_pair(n as u64);
            assert_eq!(slo.to_stern_poly(n as u64), *p);
        }
    }

    #[test]
    fn huge_index_descends() {
        let n = (BigUint::one() << 200u32) - 79u32;
        let (lo, hi) = stern_pair(n.clone());
        assert_eq!(lo.index(), &n);
        assert_eq!(hi.index(), &(&n + 1u32));
        assert_eq!(lo.eval_int(&BigInt::from(2)), BigInt::from(n));
    }

    #[test]
    fn small_pair_at_top_of_range() {
        let (lo, hi) = small_pair(u64::MAX);
        assert_eq!(lo.degree(), Some(63));
        assert_eq!(hi.degree(), Some(64));
    }

    #[test]
    fn valuation_and_palindrome() {
        let p = stern_poly(12u32);
        assert_eq!(p.valuation(), Some(2));
        assert!(!p.is_palindrome());
        assert!(stern_poly(15u32).is_palindrome());
        assert_eq!(stern_poly(0u32).valuation(), None);
    }
}
