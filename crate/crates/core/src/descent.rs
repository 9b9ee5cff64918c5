//! Logarithmic pair descent.
//!
//! The pair `(B_n, B_{n+1})` determines both children pairs:
//!
//! ```text
//! (B_{2n},   B_{2n+1}) = (t·B_n,          B_n + B_{n+1})
//! (B_{2n+1}, B_{2n+2}) = (B_n + B_{n+1},  t·B_{n+1})
//! ```
//!
//! so reading the bits of `n` from the most significant one takes
//! `(B_0, B_1) = (0, 1)` to `(B_n, B_{n+1})` in `bit_len(n)` steps. The same
//! walk works in any commutative domain where "multiply by `t`" makes sense:
//! polynomials (shift), a rational evaluation point, a residue, and so on.

use crate::BitIndex;

/// A coefficient domain together with the action of `t`.
pub trait Descent {
    type Value: Clone;

    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn times_t(&self, a: &Self::Value) -> Self::Value;
}

/// Returns `(B_n, B_{n+1})` in the domain `dom`.
pub fn pair_descent<D: Descent, N: BitIndex>(dom: &D, n: N) -> (D::Value, D::Value) {
    let mut lo = dom.zero();
    let mut hi = dom.one();
    for i in (0..n.bit_len()).rev() {
        let mid = dom.add(&lo, &hi);
        if n.bit_at(i) {
            hi = dom.times_t(&hi);
            lo = mid;
        } else {
            lo = dom.times_t(&lo);
            hi = mid;
        }
    }
    (lo, hi)
}

/// Fallible variant for domains with bounded representations (for example a
/// scaled `i128`); `None` signals an overflow somewhere along the walk.
pub trait CheckedDescent {
    type Value: Clone;

    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Option<Self::Value>;
    fn times_t(&self, a: &Self::Value) -> Option<Self::Value>;
}

pub fn checked_pair_descent<D: CheckedDescent, N: BitIndex>(dom: &D, n: N) -> Option<(D::Value, D::Value)> {
    let mut lo = dom.zero();
    let mut hi = dom.one();
    for i in (0..n.bit_len()).rev() {
        let mid = dom.add(&lo, &hi)?;
        if n.bit_at(i) {
            hi = dom.times_t(&hi)?;
            lo = mid;
        } else {
            lo = dom.times_t(&lo)?;
            hi = mid;
        }
    }
    Some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `t = 1` in the integers gives the diatomic sequence.
    struct Diatomic;

    impl Descent for Diatomic {
        type Value = u64;
        fn zero(&self) -> u64 {
            0
        }
        fn one(&self) -> u64 {
            1
        }
        fn add(&self, a: &u64, b: &u64) -> u64 {
            a + b
        }
        fn times_t(&self, a: &u64) -> u64 {
            *a
        }
    }

    #[test]
    fn diatomic_prefix() {
        let got: alloc::vec::Vec<u64> = (0u64..16).map(|n| pair_descent(&Diatomic, n).0).collect();
        assert_eq!(got, [0, 1, 1, 2, 1, 3, 2, 3, 1, 4, 3, 5, 2, 5, 3, 4]);
    }

    #[test]
    fn second_component_is_successor() {
        for n in 0u64..200 {
            assert_eq!(pair_descent(&Diatomic, n).1, pair_descent(&Diatomic, n + 1).0);
        }
    }
}
