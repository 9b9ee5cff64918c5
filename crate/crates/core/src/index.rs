//! Bit access for the index types that pair descent can walk over.

use num_bigint::BigUint;

/// A non-negative integer whose binary digits can be read one at a time.
///
/// Pair descent reads the bits of `n` most-significant first, so indices far
/// beyond `u64` (for instance `2^80 − v_3`) are handled through [`BigUint`].
pub trait BitIndex {
    /// Number of significant bits; zero for the value 0.
    fn bit_len(&self) -> u64;
    /// Bit `i`, counting from the least significant bit.
    fn bit_at(&self, i: u64) -> bool;
}

macro_rules! prim_index {
    ($($t:ty),*) => {$(
        impl BitIndex for $t {
            #[inline]
            fn bit_len(&self) -> u64 {
                (<$t>::BITS - self.leading_zeros()) as u64
            }
            #[inline]
            fn bit_at(&self, i: u64) -> bool {
                i < <$t>::BITS as u64 && (self >> i) & 1 == 1
            }
        }
    )*};
}

prim_index!(u32, u64, u128, usize);

impl BitIndex for BigUint {
    fn bit_len(&self) -> u64 {
        self.bits()
    }
    fn bit_at(&self, i: u64) -> bool {
        self.bit(i)
    }
}

impl<T: BitIndex + ?Sized> BitIndex for &T {
    fn bit_len(&self) -> u64 {
        (**self).bit_len()
    }
    fn bit_at(&self, i: u64) -> bool {
        (**self).bit_at(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_lengths() {
        assert_eq!(0u64.bit_len(), 0);
        assert_eq!(1u64.bit_len(), 1);
        assert_eq!(79u64.bit_len(), 7);
        assert_eq!(BigUint::from(1u8).bit_len(), 1);
        assert_eq!((BigUint::from(1u8) << 200u32).bit_len(), 201);
    }

    #[test]
    fn bits_agree_across_types() {
        for n in [0u64, 1, 6, 79, 5057, u64::MAX] {
            let big = BigUint::from(n);
            for i in 0..70 {
                assert_eq!(n.bit_at(i), big.bit_at(i), "n={n} i={i}");
                assert_eq!(n.bit_at(i), (n as u128).bit_at(i));
            }
        }
    }
}
