//! Reciprocal (palindromic) Stern polynomials and the families `2^k − u_m`,
//! `2^k − v_m`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::eval::degree_big;
use crate::poly::small_pair;
use crate::words::{u_val, v_val};
use crate::{stern_pair, Error, VerificationReport};

/// `B_n` equals its coefficient reversal, zero low-order coefficients included.
pub fn is_reciprocal(n: u64) -> bool {
    small_pair(n).0.is_palindrome()
}

/// [`is_reciprocal`] for arbitrary indices.
pub fn is_reciprocal_big(n: &BigUint) -> bool {
    stern_pair(n.clone()).0.is_palindrome()
}

/// The two offset sequences subtracted from powers of two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReciprocalFamily {
    U,
    V,
}

impl ReciprocalFamily {
    pub const ALL: [ReciprocalFamily; 2] = [ReciprocalFamily::U, ReciprocalFamily::V];

    pub fn offset(self, m: u32) -> BigUint {
        match self {
            ReciprocalFamily::U => u_val(m),
            ReciprocalFamily::V => v_val(m),
        }
    }

    /// Smallest `k` in the family: the bit length of the offset.
    pub fn threshold(self, m: u32) -> u32 {
        match self {
            ReciprocalFamily::U => 4 * m * m + 2 * m + 1,
            ReciprocalFamily::V => 4 * m * m + 6 * m + 3,
        }
    }

    /// `k − e(2^k − offset)`.
    pub fn degree_drop(self, m: u32) -> u32 {
        match self {
            ReciprocalFamily::U => 2 * m + 1,
            ReciprocalFamily::V => 2 * m + 2,
        }
    }

    /// `2^k − offset(m)`, or `None` when that is not positive.
    pub fn index(self, m: u32, k: u32) -> Option<BigUint> {
        let power = BigUint::one() << k;
        let offset = self.offset(m);
        (power > offset).then(|| power - offset)
    }
}

impl fmt::Display for ReciprocalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReciprocalFamily::U => "u",
            ReciprocalFamily::V => "v",
        })
    }
}

impl FromStr for ReciprocalFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "u" | "U" => Ok(ReciprocalFamily::U),
            "v" | "V" => Ok(ReciprocalFamily::V),
            _ => Err(Error::Range(format!("unknown family {s:?}"))),
        }
    }
}

/// One `(family, m, k)` instance of the family statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyCase {
    pub family: ReciprocalFamily,
    pub m: u32,
    pub k: u32,
}

/// Outcome of checking one [`FamilyCase`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCheck {
    pub case: FamilyCase,
    pub index: BigUint,
    pub reciprocal: bool,
    pub degree: u64,
    pub expected_degree: u64,
}

impl FamilyCheck {
    pub fn holds(&self) -> bool {
        self.reciprocal && self.degree == self.expected_degree
    }
}

/// All cases with `m ≤ m_max` and `threshold ≤ k ≤ k_max`, ordered by
/// family, then `m`, then `k`.
pub fn family_cases(m_max: u32, k_max: u32) -> Vec<FamilyCase> {
    let mut out = Vec::new();
    for family in ReciprocalFamily::ALL {
        for m in 0..=m_max {
            for k in family.threshold(m)..=k_max {
                out.push(FamilyCase { family, m, k });
            }
        }
    }
    out
}

pub fn check_family_case(case: FamilyCase) -> FamilyCheck {
    let index = case.family.index(case.m, case.k).expect("k at or above the threshold");
    let (poly, _) = stern_pair(index.clone());
    let degree = poly.degree().expect("B_n is nonzero for n >= 1") as u64;
    debug_assert_eq!(Ok(degree), degree_big(&index));
    FamilyCheck {
        case,
        reciprocal: poly.is_palindrome(),
        degree,
        expected_degree: (case.k - case.family.degree_drop(case.m)) as u64,
        index,
    }
}

/// Folds per-case checks (in case order) into a report.
pub fn family_report(checks: &[FamilyCheck], m_max: u32, k_max: u32) -> VerificationReport {
    let claim = "B_{2^k-u_m} and B_{2^k-v_m} are reciprocal of degree k-2m-1 and k-2m-2";
    let range = format!("m <= {m_max}, threshold <= k <= {k_max}");
    let report = match checks.iter().find(|c| !c.holds()) {
        None => VerificationReport::pass(claim, range),
        Some(c) => VerificationReport::fail(
            claim,
            range,
            witness![
                ("family", format!("{}", c.case.family)),
                ("m", c.case.m),
                ("k", c.case.k),
                ("n", format!("{}", c.index)),
                ("reciprocal", c.reciprocal),
                ("degree", c.degree),
                ("expected_degree", c.expected_degree),
            ],
        ),
    };
    report.with_stat("cases", checks.len())
}

pub fn verify_family_reciprocity(m_max: u32, k_max: u32) -> VerificationReport {
    let checks: Vec<FamilyCheck> = family_cases(m_max, k_max).into_iter().map(check_family_case).collect();
    family_report(&checks, m_max, k_max)
}

/// Family indices `2^i − u_m`, `2^i − v_m` in `[1, bound]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyIndices {
    /// Number of `(family, i, m)` triples landing in range.
    pub pairs: u64,
    /// Distinct indices.
    pub distinct: BTreeSet<u64>,
}

pub fn family_indices(bound: u64) -> FamilyIndices {
    let mut pairs = 0;
    let mut distinct = BTreeSet::new();
    for family in ReciprocalFamily::ALL {
        for m in 0.. {
            if family.threshold(m) > 64 {
                break;
            }
            let offset = u64::try_from(family.offset(m)).expect("bit length at most 64");
            if offset >= bound {
                break;
            }
            for i in family.threshold(m)..128 {
                let power = 1u128 << i;
                let n = power - offset as u128;
                if n > bound as u128 {
                    break;
                }
                pairs += 1;
                distinct.insert(n as u64);
            }
        }
    }
    FamilyIndices { pairs, distinct }
}

/// `Σ (k − t)` over family thresholds `t < k`, counting `(i, m)` with
/// `i < k`. With `u_only` the `v` family is left out.
pub fn threshold_sum(k: u32, u_only: bool) -> u64 {
    let families: &[ReciprocalFamily] = if u_only { &[ReciprocalFamily::U] } else { &ReciprocalFamily::ALL };
    let mut total = 0u64;
    for &family in families {
        for m in 0.. {
            let t = family.threshold(m);
            if t >= k {
                break;
            }
            total += (k - t) as u64;
        }
    }
    total
}

/// Reciprocal indices found by exhaustive scan of a range.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecScan {
    pub checked: u64,
    pub members: Vec<u64>,
}

impl RecScan {
    pub fn scan(range: Range<u64>) -> Self {
        let members: Vec<u64> = range.clone().filter(|&n| n >= 1 && is_reciprocal(n)).collect();
        RecScan { checked: range.end.saturating_sub(range.start), members }
    }

    /// Appends a scan of the range directly after this one.
    pub fn merge(mut self, other: Self) -> Self {
        self.checked += other.checked;
        self.members.extend(other.members);
        self
    }
}

/// Reciprocal indices in `[1, bound]` against the family indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecCensus {
    pub bound: u64,
    pub total: u64,
    pub family_count: u64,
    pub family_pairs: u64,
    pub members: Vec<u64>,
    /// Family indices that failed the scan; empty when the families are reciprocal.
    pub missing_family: Vec<u64>,
}

impl RecCensus {
    pub fn from_scan(bound: u64, scan: RecScan) -> Self {
        let families = family_indices(bound);
        let missing_family =
            families.distinct.iter().copied().filter(|n| scan.members.binary_search(n).is_err()).collect();
        RecCensus {
            bound,
            total: scan.members.len() as u64,
            family_count: families.distinct.len() as u64,
            family_pairs: families.pairs,
            members: scan.members,
            missing_family,
        }
    }

    pub fn surplus(&self) -> u64 {
        self.total - self.family_count.min(self.total)
    }

    /// Members `≤ x`.
    pub fn total_upto(&self, x: u64) -> u64 {
        self.members.partition_point(|&n| n <= x) as u64
    }

    /// Checks `total ≥ family_count` and, when the bound is `2^k`, that
    /// `family_count` equals the threshold sum over both families.
    pub fn into_report(self) -> VerificationReport {
        let range = format!("1 <= n <= {}", self.bound);
        let exponent = self.bound.is_power_of_two().then(|| self.bound.trailing_zeros());
        let proof_count = exponent.map(|k| threshold_sum(k, false));
        let covered = self.missing_family.is_empty() && self.total >= self.family_count;
        let count_matches = proof_count.is_none_or(|c| c == self.family_count);
        let claim = "reciprocal count covers the families and family count equals the threshold sum";
        let report = if covered && count_matches {
            VerificationReport::pass(claim, range)
        } else {
            let mut w = witness![
                ("total", self.total),
                ("family_count", self.family_count),
                ("family_pairs", self.family_pairs),
            ];
            if let Some(c) = proof_count {
                w.push(("threshold_sum".into(), c.into()));
            }
            if let Some(&n) = self.missing_family.first() {
                w.push(("missing".into(), n.into()));
            }
            VerificationReport::fail(claim, range, w)
        };
        let mut report = report
            .with_stat("total", self.total)
            .with_stat("family_count", self.family_count)
            .with_stat("family_pairs", self.family_pairs)
            .with_stat("surplus", self.surplus());
        if let Some(c) = proof_count {
            report = report.with_stat("threshold_sum", c);
        }
        if let Some(k) = exponent {
            report = report.with_stat("threshold_sum_u", threshold_sum(k, true));
        }
        report
    }
}

pub fn rec_census(bound: u64) -> RecCensus {
    RecCensus::from_scan(bound, RecScan::scan(1..bound + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stern_poly;

    #[test]
    fn examples() {
        assert!(is_reciprocal(7));
        assert!(is_reciprocal(11));
        assert!(!is_reciprocal(2));
        assert!(!is_reciprocal(5));
        let small: Vec<u64> = (1..=16).filter(|&n| is_reciprocal(n)).collect();
        assert_eq!(small, [1, 3, 7, 9, 11, 15]);
    }

    #[test]
    fn agrees_with_table() {
        for n in 1..2000u64 {
            assert_eq!(is_reciprocal(n), stern_poly(n).is_palindrome(), "{n}");
            assert_eq!(is_reciprocal(n), is_reciprocal_big(&BigUint::from(n)));
        }
    }

    #[test]
    fn family_examples() {
        let c = check_family_case(FamilyCase { family: ReciprocalFamily::U, m: 1, k: 7 });
        assert_eq!(c.index, BigUint::from(49u32));
        assert!(c.holds());
        assert_eq!(c.degree, 4);
        let c = check_family_case(FamilyCase { family: ReciprocalFamily::V, m: 1, k: 13 });
        assert_eq!(c.index, BigUint::from(3135u32));
        assert!(c.holds());
        assert_eq!(c.degree, 9);
        for k in 1..40 {
            let c = check_family_case(FamilyCase { family: ReciprocalFamily::U, m: 0, k });
            assert!(c.holds());
            assert!(stern_pair(c.index).0.coeffs().iter().all(|x| x.is_one()));
        }
    }

    #[test]
    fn thresholds_are_bit_lengths() {
        for m in 0..5 {
            for f in ReciprocalFamily::ALL {
                assert_eq!(f.offset(m).bits(), f.threshold(m) as u64);
            }
        }
    }

    #[test]
    fn family_statement_small() {
        assert!(verify_family_reciprocity(2, 40).passed());
    }

    #[test]
    fn powers_minus_one_and_five() {
        let census = rec_census(1 << 10);
        for k in 1..=10 {
            assert!(census.members.contains(&((1 << k) - 1)));
            if k >= 4 {
                assert!(census.members.contains(&((1 << k) - 5)));
            }
        }
        assert!(census.missing_family.is_empty());
    }

    #[test]
    fn family_counts() {
        // 2^i - 1, 2^i - 79, 2^i - 5 and 2^i - 5057 up to 2^20; 3 = 4 - 1 = 8 - 5.
        let f = family_indices(1 << 20);
        assert_eq!(f.pairs, 20 + 14 + 18 + 8);
        assert_eq!(f.distinct.len(), 59);
        assert_eq!(threshold_sum(20, false), 56);
        assert_eq!(threshold_sum(20, true), 19 + 13);
    }

    #[test]
    fn scan_merge_matches_whole() {
        let whole = RecScan::scan(1..5000);
        let split = RecScan::scan(1..1234).merge(RecScan::scan(1234..5000));
        assert_eq!(whole, split);
    }
}
