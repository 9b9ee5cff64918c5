//! Evaluation of `B_n` without materializing the polynomial.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::descent::{pair_descent, Descent};
use crate::{BitIndex, Error, ExactRational, Residue, VerificationReport};

/// Evaluation at a fixed rational point.
pub struct RationalPoint<'a>(pub &'a ExactRational);

impl Descent for RationalPoint<'_> {
    type Value = ExactRational;

    fn zero(&self) -> ExactRational {
        ExactRational::zero()
    }
    fn one(&self) -> ExactRational {
        ExactRational::one()
    }
    fn add(&self, a: &ExactRational, b: &ExactRational) -> ExactRational {
        a + b
    }
    fn times_t(&self, a: &ExactRational) -> ExactRational {
        a * self.0
    }
}

/// Evaluation at a point of `F_p`.
pub struct ResiduePoint(pub Residue);

impl Descent for ResiduePoint {
    type Value = Residue;

    fn zero(&self) -> Residue {
        Residue::zero(self.0.modulus())
    }
    fn one(&self) -> Residue {
        Residue::one(self.0.modulus())
    }
    fn add(&self, a: &Residue, b: &Residue) -> Residue {
        *a + *b
    }
    fn times_t(&self, a: &Residue) -> Residue {
        *a * self.0
    }
}

/// Evaluation at `t = 1`.
struct AtOne;

impl Descent for AtOne {
    type Value = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one()
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a + b
    }
    fn times_t(&self, a: &BigUint) -> BigUint {
        a.clone()
    }
}

/// `B_n(q)` as a reduced fraction.
pub fn eval_exact<N: BitIndex>(n: N, q: &ExactRational) -> ExactRational {
    pair_descent(&RationalPoint(q), n).0
}

/// `B_n(t) mod p`, in `O(log n)` field operations.
pub fn eval_mod<N: BitIndex>(n: N, t: Residue) -> Residue {
    pair_descent(&ResiduePoint(t), n).0
}

/// The Stern diatomic number `s_n = B_n(1)`.
pub fn stern_number<N: BitIndex>(n: N) -> BigUint {
    pair_descent(&AtOne, n).0
}

/// `e(n) = deg B_n` from the recurrence
/// `e(2n) = e(n) + 1`, `e(4n+1) = e(n) + 1`, `e(4n+3) = e(n+1) + 1`
/// with bases `e(1) = 0`, `e(2) = e(3) = 1`.
///
/// Each step of the recurrence has a single recursive call, so it unrolls into
/// a loop. `B_0 = 0` has no degree.
pub fn degree(n: u128) -> Result<u32, Error> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut n = n;
    let mut acc = 0u32;
    loop {
        match n {
            1 => return Ok(acc),
            2 | 3 => return Ok(acc + 1),
            _ => {}
        }
        acc += 1;
        n = match n % 4 {
            0 | 2 => n / 2,
            1 => n / 4,
            _ => n / 4 + 1,
        };
    }
}

/// [`degree`] for indices beyond `u128`.
pub fn degree_big(n: &BigUint) -> Result<u64, Error> {
    if let Ok(small) = u128::try_from(n) {
        return degree(small).map(u64::from);
    }
    let mut n = n.clone();
    let mut acc = 0u64;
    while u128::try_from(&n).is_err() {
        acc += 1;
        n = if !n.bit(0) {
            n >> 1u32
        } else if !n.bit(1) {
            n >> 2u32
        } else {
            (n >> 2u32) + 1u32
        };
    }
    Ok(acc + u64::from(degree(u128::try_from(&n).expect("fits"))?))
}

/// `B_n(1)` against the diatomic recurrence `s_{2n} = s_n`,
/// `s_{2n+1} = s_n + s_{n+1}`, and `B_n(2) = n`, for `n ≤ max`.
pub fn verify_special_values(max: u64) -> VerificationReport {
    let claim = "B_n(1) is the Stern diatomic sequence and B_n(2) = n";
    let range = alloc::format!("0 <= n <= {max}");
    let len = max as usize + 2;
    let mut diatomic = alloc::vec![0u64; len];
    if len > 1 {
        diatomic[1] = 1;
    }
    for n in 2..len {
        diatomic[n] = if n % 2 == 0 { diatomic[n / 2] } else { diatomic[n / 2] + diatomic[n / 2 + 1] };
    }
    let two = ExactRational::from(2);
    for n in 0..=max {
        let at_one = stern_number(n);
        let at_two = eval_exact(n, &two);
        if at_one != BigUint::from(diatomic[n as usize]) || at_two != ExactRational::from(n as i64) {
            return VerificationReport::fail(
                claim,
                range,
                witness![
                    ("n", n),
                    ("diatomic", diatomic[n as usize]),
                    ("at_one", alloc::format!("{at_one}")),
                    ("at_two", at_two),
                ],
            );
        }
    }
    VerificationReport::pass(claim, range).with_stat("checked", max + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::stern_table;
    use num_bigint::BigInt;

    fn q(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    #[test]
    fn exact_examples() {
        assert!(eval_exact(5u64, &q("-1/2")).is_zero());
        assert_eq!(eval_exact(95u64, &q("-1/2")), q("-5/32"));
        assert!(eval_exact(21u64, &q("-1/3")).is_zero());
    }

    #[test]
    fn mod_examples() {
        let t = Residue::new(3, 7).unwrap();
        assert_eq!(eval_mod(6u64, t).value(), 5);
        assert!(eval_mod(0u64, t).is_zero());
        let two = Residue::new(2, 5).unwrap();
        for n in 0u64..500 {
            assert_eq!(eval_mod(n, two).value(), n % 5);
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(0), Err(Error::ZeroDegree));
        assert_eq!(degree(1), Ok(0));
        assert_eq!(degree(2), Ok(1));
        assert_eq!(degree(9), Ok(2));
        assert_eq!(degree(49), Ok(4));
        assert!(verify_special_values(5000).passed());
    }

    #[test]
    fn stern_numbers() {
        assert_eq!(stern_number(0u64), BigUint::zero());
        assert_eq!(stern_number(7u64), BigUint::from(3u8));
        assert_eq!(stern_number(11u64), BigUint::from(5u8));
    }

    #[test]
    fn agrees_with_table() {
        let table = stern_table(4096);
        for (n, p) in table.iter().enumerate().skip(1) {
            assert_eq!(degree(n as u128).unwrap() as usize, p.degree().unwrap());
            assert_eq!(degree_big(&BigUint::from(n)).unwrap() as usize, p.degree().unwrap());
            assert_eq!(stern_number(n as u64), p.coeff_sum());
            for point in ["1", "2", "-1/2", "-1/3", "-1"] {
                assert_eq!(eval_exact(n as u64, &q(point)), p.eval(&q(point)));
            }
        }
    }

    #[test]
    fn degree_big_matches_descent_past_u128() {
        let n = (BigUint::one() << 150u32) - 5057u32;
        let (p, _) = crate::stern_pair(n.clone());
        assert_eq!(degree_big(&n).unwrap() as usize, p.degree().unwrap());
        assert_eq!(p.eval_int(&BigInt::from(2)), BigInt::from(n));
    }
}
