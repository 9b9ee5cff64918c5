use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use stern_core::automaton::Dfao;
use stern_core::degrees::{classify_case, pair_set_member, triple_set_member};
use stern_core::poly::stern_table;
use stern_core::reciprocal::is_reciprocal;
use stern_core::scaled::eval_minus_inverse;
use stern_core::words::{from_bits, to_bits};
use stern_core::{
    degree, eval_exact, eval_mod, stern_number, stern_pair, stern_poly, ExactRational, Residue,
};

const PRIMES: [u64; 4] = [5, 7, 11, 13];

fn q(a: i64, b: i64) -> ExactRational {
    ExactRational::new(a, b).unwrap()
}

#[test]
fn values_at_zero_and_minus_one() {
    let zero = ExactRational::zero();
    let minus_one = q(-1, 1);
    for n in 0..=(1u64 << 16) {
        assert_eq!(eval_exact(n, &zero), ExactRational::from(n as i64 % 2), "B_{n}(0)");
        let expected = ((n + 1) % 3) as i64 - 1;
        assert_eq!(eval_exact(n, &minus_one), ExactRational::from(expected), "B_{n}(-1)");
    }
}

#[test]
fn modular_evaluation_matches_exact() {
    let points = [q(-1, 2), q(-1, 3), q(2, 1), q(3, 4)];
    for p in PRIMES {
        for point in &points {
            let Ok(t) = Residue::from_rational(point, p) else { continue };
            for n in (0..=(1u64 << 16)).step_by(7) {
                let exact = eval_exact(n, point);
                assert_eq!(
                    Residue::from_rational(&exact, p).unwrap(),
                    eval_mod(n, t),
                    "n={n} p={p} q={point}"
                );
            }
        }
    }
}

#[test]
fn table_degrees_match_recurrence() {
    let table = stern_table(1 << 14);
    for (n, poly) in table.iter().enumerate().skip(1) {
        assert_eq!(poly.degree(), Some(degree(n as u128).unwrap() as usize), "n={n}");
        assert_eq!(poly.is_palindrome(), is_reciprocal(n as u64));
    }
}

#[test]
fn minus_half_scaling_identity() {
    // B_{5·2^k ± n}(−1/2) = ∓ B_n(−1/2)/4 for 2^k > n
    let half = q(-1, 2);
    let quarter = q(1, 4);
    for n in 1..300u64 {
        let k = 64 - n.leading_zeros() + 1;
        let base = eval_exact(n, &half) * quarter.clone();
        assert_eq!(eval_exact((5 << k) + n, &half), -base.clone());
        assert_eq!(eval_exact((5 << k) - n, &half), base);
    }
}

proptest! {
    #[test]
    fn bits_round_trip(n in any::<u128>()) {
        prop_assert_eq!(from_bits(&to_bits(n)), BigUint::from(n));
    }

    #[test]
    fn pair_descent_matches_recursion(n in 0u64..(1 << 24)) {
        let (lo, hi) = stern_pair(n);
        prop_assert_eq!(lo, stern_poly(n));
        prop_assert_eq!(hi, stern_poly(n + 1));
    }

    #[test]
    fn special_values(n in any::<u64>()) {
        prop_assert_eq!(eval_exact(n, &ExactRational::from(2)), ExactRational::from_integer(BigInt::from(n)));
        prop_assert_eq!(
            eval_exact(n, &ExactRational::one()),
            ExactRational::from_integer(BigInt::from(stern_number(n)))
        );
    }

    #[test]
    fn degree_matches_descent(n in 1u64..) {
        let poly = stern_pair(n).0;
        prop_assert_eq!(poly.degree(), Some(degree(n as u128).unwrap() as usize));
    }

    #[test]
    fn closed_forms_match_degrees(n in 1u64..(u64::MAX - 4)) {
        let e = |m: u64| degree(m as u128).unwrap();
        let pair = e(n) == e(n + 1);
        let triple = pair && e(n + 1) == e(n + 2);
        prop_assert_eq!(pair_set_member(n as u128), pair);
        prop_assert_eq!(triple_set_member(n as u128), triple);
        prop_assert!(!(triple && e(n + 2) == e(n + 3)));
        let case = classify_case(n as u128);
        prop_assert!(case.is_ok());
        prop_assert_eq!(case.unwrap().has_equal_successor_degree(), pair);
    }

    #[test]
    fn scaled_evaluation_matches_exact(n in any::<u64>(), k in 2u64..50) {
        prop_assert_eq!(eval_minus_inverse(n, k), eval_exact(n, &ExactRational::minus_inverse(k)));
    }

    #[test]
    fn automaton_computes_residues(n in any::<u64>(), pi in 0usize..4, point in 0usize..2) {
        let p = PRIMES[pi];
        let target = [q(-1, 2), q(-1, 3)][point].clone();
        let Ok(dfao) = Dfao::build(p, &target) else { return Ok(()) };
        let t = Residue::from_rational(&target, p).unwrap();
        prop_assert_eq!(dfao.run(n), eval_mod(n, t));
    }
}

#[test]
fn triples_are_consecutive_pairs() {
    use stern_core::degrees::triples_from_intersection;
    let max = 1u64 << 18;
    let direct: Vec<u64> = (1..max).filter(|&n| triple_set_member(n as u128)).collect();
    assert_eq!(triples_from_intersection(max), direct);
}

#[test]
fn reciprocal_census_at_two_to_the_twenty() {
    use stern_core::reciprocal::rec_census;
    let census = rec_census(1 << 20);
    assert_eq!(census.total, 108);
    assert_eq!(census.family_count, 59);
    assert_eq!(census.family_pairs, 60);
    assert!(census.missing_family.is_empty());
    assert_eq!(&census.members[..12], [1, 3, 7, 9, 11, 15, 27, 31, 49, 59, 63, 123]);
}
