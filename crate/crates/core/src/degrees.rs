//! Consecutive Stern polynomials of equal degree.
//!
//! With `p_k = (4^k − 1)/3` and `q_k = (5·4^k − 2)/3`, the indices with
//! `e(n) = e(n+1)` are
//!
//! ```text
//! {2^{2k+1}·m + p_k : k, m ≥ 1} ∪ {2·p_k : k ≥ 1} ∪ {2^{2k+1}·m + q_k : k ≥ 1, m ≥ 0}
//! ```
//!
//! and the indices with `e(n) = e(n+1) = e(n+2)` are
//!
//! ```text
//! {2^{2k+1}·m + p_k : k ≥ 2, m ≥ 1} ∪ {2·p_k − 1 : k ≥ 2} ∪ {2^{2k+1}·m + q_k − 1 : k ≥ 2, m ≥ 0}
//! ```
//!
//! The shift parameter is called `m` throughout; `n` is always the index.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::{degree, BitIndex, VerificationReport};

fn p_small(k: u32) -> u128 {
    ((1u128 << (2 * k)) - 1) / 3
}

fn q_small(k: u32) -> u128 {
    5 * p_small(k) + 1
}

/// `k` values whose families can contain `n`: `2·p_k ≤ n + 1` is the
/// smallest element over all six families.
fn feasible_k(n: u128, from: u32) -> impl Iterator<Item = u32> {
    (from..=63).take_while(move |&k| 2 * p_small(k) <= n.saturating_add(1))
}

/// Closed-form membership in `{n : e(n) = e(n+1)}`.
pub fn pair_set_member(n: u128) -> bool {
    feasible_k(n, 1).any(|k| {
        let modulus = 1u128 << (2 * k + 1);
        let (p, q) = (p_small(k), q_small(k));
        (n % modulus == p && n > p) || n == 2 * p || (n % modulus == q && n >= q)
    })
}

/// Closed-form membership in `{n : e(n) = e(n+1) = e(n+2)}`.
pub fn triple_set_member(n: u128) -> bool {
    feasible_k(n, 2).any(|k| {
        let modulus = 1u128 << (2 * k + 1);
        let (p, q) = (p_small(k), q_small(k));
        (n % modulus == p && n > p) || n == 2 * p - 1 || (n % modulus == q - 1 && n >= q - 1)
    })
}

/// Which binary shape `n` has. `m` is the value of the leading `bin(m)` block
/// (0 when the block is empty) and `k` the repetition count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseTag {
    /// `n = 4k`
    I { k: u128 },
    /// `n = 4k + 3`
    II { k: u128 },
    /// `bin(m) 0 (01)^k`, `m ≥ 1`
    III { m: u128, k: u32 },
    /// `bin(m) 11 (01)^k`, `m ≥ 0`
    IV { m: u128, k: u32 },
    /// `(01)^k`
    V { k: u32 },
    /// `bin(m) 00 (10)^k`, `m ≥ 1`
    VI { m: u128, k: u32 },
    /// `(10)^k`
    VII { k: u32 },
    /// `bin(m) 1 (10)^k`, `m ≥ 0`
    VIII { m: u128, k: u32 },
}

impl CaseTag {
    pub fn label(&self) -> &'static str {
        match self {
            CaseTag::I { .. } => "i",
            CaseTag::II { .. } => "ii",
            CaseTag::III { .. } => "iii",
            CaseTag::IV { .. } => "iv",
            CaseTag::V { .. } => "v",
            CaseTag::VI { .. } => "vi",
            CaseTag::VII { .. } => "vii",
            CaseTag::VIII { .. } => "viii",
        }
    }

    /// Cases (iii), (vii) and (viii) are exactly the ones with `e(n) = e(n+1)`.
    pub fn has_equal_successor_degree(&self) -> bool {
        matches!(self, CaseTag::III { .. } | CaseTag::VII { .. } | CaseTag::VIII { .. })
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CaseTag::I { k } | CaseTag::II { k } => write!(f, "({}) k={k}", self.label()),
            CaseTag::V { k } | CaseTag::VII { k } => write!(f, "({}) k={k}", self.label()),
            CaseTag::III { m, k } | CaseTag::IV { m, k } | CaseTag::VI { m, k } | CaseTag::VIII { m, k } => {
                write!(f, "({}) m={m} k={k}", self.label())
            }
        }
    }
}

/// `bits` consists of `unit` repeated.
fn is_repeat(bits: &[bool], unit: [bool; 2]) -> bool {
    bits.len().is_multiple_of(2) && bits.chunks_exact(2).all(|c| c == unit)
}

fn value(bits: &[bool]) -> u128 {
    bits.iter().fold(0u128, |acc, &b| (acc << 1) | b as u128)
}

const ZERO_ONE: [bool; 2] = [false, true];
const ONE_ZERO: [bool; 2] = [true, false];

/// Every case pattern that matches `bin(n)`. Each pattern is tested on its
/// own, so a correct case split yields exactly one entry for `n ≥ 1`.
pub fn matching_cases(n: u128) -> Vec<CaseTag> {
    let bits: Vec<bool> = (0..n.bit_len()).rev().map(|i| n.bit_at(i)).collect();
    let len = bits.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    if len >= 3 && bits.ends_with(&[false, false]) {
        out.push(CaseTag::I { k: n >> 2 });
    }
    if bits.ends_with(&[true, true]) {
        out.push(CaseTag::II { k: n >> 2 });
    }
    for k in 1..=(len / 2) as u32 {
        let tail = 2 * k as usize;
        let suffix = &bits[len - tail..];
        let head = &bits[..len - tail];
        if is_repeat(suffix, ZERO_ONE) {
            // bin(m) 0 (01)^k with a nonempty bin(m)
            if head.len() >= 2 && head.ends_with(&[false]) {
                out.push(CaseTag::III { m: value(&head[..head.len() - 1]), k });
            }
            // bin(m) 11 (01)^k, bin(m) possibly empty
            if head.ends_with(&[true, true]) {
                out.push(CaseTag::IV { m: value(&head[..head.len() - 2]), k });
            }
        }
        if is_repeat(suffix, ONE_ZERO) {
            if head.len() >= 3 && head.ends_with(&[false, false]) {
                out.push(CaseTag::VI { m: value(&head[..head.len() - 2]), k });
            }
            if head.is_empty() {
                out.push(CaseTag::VII { k });
            }
            if head.ends_with(&[true]) {
                out.push(CaseTag::VIII { m: value(&head[..head.len() - 1]), k });
            }
        }
    }
    // Case (v): the word (01)^k has value p_k and canonical form 1 (01)^{k-1}.
    if len % 2 == 1 && bits[0] && is_repeat(&bits[1..], ZERO_ONE) {
        out.push(CaseTag::V { k: (len as u32).div_ceil(2) });
    }
    out
}

/// The unique case of `n ≥ 1`; `Err` carries every match when there is not
/// exactly one.
pub fn classify_case(n: u128) -> Result<CaseTag, Vec<CaseTag>> {
    let cases = matching_cases(n);
    match cases.as_slice() {
        [only] => Ok(*only),
        _ => Err(cases),
    }
}

/// Result of one brute-force sweep over `n` in a range, comparing the closed
/// forms and the case split against degrees from the recurrence. Sweeps over
/// disjoint ranges combine with [`DegreeSweep::merge`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeSweep {
    pub checked: u64,
    pub pair_count: u64,
    pub triple_count: u64,
    pub quad_count: u64,
    pub first_pair_mismatch: Option<u64>,
    pub first_triple_mismatch: Option<u64>,
    pub first_quad: Option<u64>,
    pub first_case_mismatch: Option<u64>,
}

fn min_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

/// Which comparisons a sweep performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeClaim {
    Pair,
    Triple,
    NoQuad,
}

impl DegreeSweep {
    /// Checks `claim` for every `n` in `range` (which must not contain 0).
    pub fn scan(range: Range<u64>, claim: DegreeClaim) -> Self {
        let mut out = Self::default();
        if range.is_empty() {
            return out;
        }
        assert!(range.start >= 1, "degrees start at n = 1");
        let e = |n: u64| degree(n as u128).expect("n >= 1");
        let mut window = [e(range.start), e(range.start + 1), e(range.start + 2), e(range.start + 3)];
        for n in range {
            out.checked += 1;
            let pair = window[0] == window[1];
            let triple = pair && window[1] == window[2];
            let quad = triple && window[2] == window[3];
            out.pair_count += pair as u64;
            out.triple_count += triple as u64;
            out.quad_count += quad as u64;
            match claim {
                DegreeClaim::Pair => {
                    if pair_set_member(n as u128) != pair {
                        out.first_pair_mismatch.get_or_insert(n);
                    }
                    let case_ok =
                        classify_case(n as u128).is_ok_and(|c| c.has_equal_successor_degree() == pair);
                    if !case_ok {
                        out.first_case_mismatch.get_or_insert(n);
                    }
                }
                DegreeClaim::Triple => {
                    if triple_set_member(n as u128) != triple {
                        out.first_triple_mismatch.get_or_insert(n);
                    }
                }
                DegreeClaim::NoQuad => {
                    if quad {
                        out.first_quad.get_or_insert(n);
                    }
                }
            }
            window = [window[1], window[2], window[3], e(n + 4)];
        }
        out
    }

    pub fn merge(self, other: Self) -> Self {
        Self {
            checked: self.checked + other.checked,
            pair_count: self.pair_count + other.pair_count,
            triple_count: self.triple_count + other.triple_count,
            quad_count: self.quad_count + other.quad_count,
            first_pair_mismatch: min_opt(self.first_pair_mismatch, other.first_pair_mismatch),
            first_triple_mismatch: min_opt(self.first_triple_mismatch, other.first_triple_mismatch),
            first_quad: min_opt(self.first_quad, other.first_quad),
            first_case_mismatch: min_opt(self.first_case_mismatch, other.first_case_mismatch),
        }
    }

    pub fn into_report(self, claim: DegreeClaim, max: u64) -> VerificationReport {
        let range = format!("1 <= n <= {max}");
        let base = |n: u64| {
            witness![
                ("n", n),
                ("e(n)", degree(n as u128).unwrap()),
                ("e(n+1)", degree(n as u128 + 1).unwrap()),
                ("e(n+2)", degree(n as u128 + 2).unwrap()),
                ("e(n+3)", degree(n as u128 + 3).unwrap()),
            ]
        };
        match claim {
            DegreeClaim::Pair => {
                let text = "closed form and case split agree with e(n) = e(n+1)";
                let report = match (self.first_pair_mismatch, self.first_case_mismatch) {
                    (None, None) => VerificationReport::pass(text, range),
                    (Some(n), _) => {
                        let mut w = base(n);
                        w.push(("member".into(), pair_set_member(n as u128).into()));
                        VerificationReport::fail(text, range, w)
                    }
                    (None, Some(n)) => {
                        let mut w = base(n);
                        let cases: Vec<alloc::string::String> =
                            matching_cases(n as u128).iter().map(|c| format!("{c}")).collect();
                        w.push(("cases".into(), cases.into()));
                        VerificationReport::fail(text, range, w)
                    }
                };
                report.with_stat("checked", self.checked).with_stat("members", self.pair_count)
            }
            DegreeClaim::Triple => {
                let text = "closed form agrees with e(n) = e(n+1) = e(n+2)";
                let report = match self.first_triple_mismatch {
                    None => VerificationReport::pass(text, range),
                    Some(n) => {
                        let mut w = base(n);
                        w.push(("member".into(), triple_set_member(n as u128).into()));
                        VerificationReport::fail(text, range, w)
                    }
                };
                report.with_stat("checked", self.checked).with_stat("members", self.triple_count)
            }
            DegreeClaim::NoQuad => {
                let text = "no four consecutive Stern polynomials share a degree";
                let report = match self.first_quad {
                    None => VerificationReport::pass(text, range),
                    Some(n) => VerificationReport::fail(text, range, base(n)),
                };
                report.with_stat("checked", self.checked)
            }
        }
    }
}

pub fn verify_pair(max: u64) -> VerificationReport {
    DegreeSweep::scan(1..max + 1, DegreeClaim::Pair).into_report(DegreeClaim::Pair, max)
}

pub fn verify_triple(max: u64) -> VerificationReport {
    DegreeSweep::scan(1..max + 1, DegreeClaim::Triple).into_report(DegreeClaim::Triple, max)
}

pub fn verify_no_quad(max: u64) -> VerificationReport {
    DegreeSweep::scan(1..max + 1, DegreeClaim::NoQuad).into_report(DegreeClaim::NoQuad, max)
}

/// The union of the three pair families, generated element by element (not
/// by the membership test) as a mask over `[0, max]`.
pub fn pair_families_mask(max: u64) -> Vec<bool> {
    let mut mask = vec![false; max as usize + 1];
    let mut mark = |x: u128| {
        if x <= max as u128 {
            mask[x as usize] = true;
        }
    };
    for k in feasible_k(max as u128, 1) {
        let step = 1u128 << (2 * k + 1);
        let (p, q) = (p_small(k), q_small(k));
        mark(2 * p);
        let mut x = step + p;
        while x <= max as u128 {
            mark(x);
            x += step;
        }
        let mut x = q;
        while x <= max as u128 {
            mark(x);
            x += step;
        }
    }
    mask
}

/// Starts of triples obtained as `{x − 1 : x ∈ S ∩ (S + 1)}` for the
/// generated pair set `S`, restricted to `[1, max − 1]`.
pub fn triples_from_intersection(max: u64) -> Vec<u64> {
    let s = pair_families_mask(max);
    (2..=max as usize).filter(|&x| s[x] && s[x - 1]).map(|x| x as u64 - 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: u128) -> u32 {
        degree(n).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(pair_set_member(2));
        assert!(pair_set_member(6));
        assert!(!pair_set_member(4));
        assert!(triple_set_member(9));
        assert!(triple_set_member(25));
        assert!(!triple_set_member(2));
    }

    #[test]
    fn small_sets_by_brute_force() {
        let pairs: Vec<u128> = (1..=12).filter(|&n| e(n) == e(n + 1)).collect();
        assert_eq!(pairs, [2, 6, 9, 10]);
        let closed: Vec<u128> = (1..=12).filter(|&n| pair_set_member(n)).collect();
        assert_eq!(closed, pairs);
        let triples: Vec<u128> = (1..=40).filter(|&n| e(n) == e(n + 1) && e(n + 1) == e(n + 2)).collect();
        assert_eq!(triples, [9, 25, 37]);
        let closed: Vec<u128> = (1..=40).filter(|&n| triple_set_member(n)).collect();
        assert_eq!(closed, triples);
    }

    #[test]
    fn case_examples() {
        assert_eq!(classify_case(5), Ok(CaseTag::V { k: 2 }));
        assert_eq!(classify_case(10), Ok(CaseTag::VII { k: 2 }));
        assert_eq!(classify_case(9), Ok(CaseTag::III { m: 1, k: 1 }));
        assert_eq!(classify_case(1), Ok(CaseTag::V { k: 1 }));
        assert_eq!(classify_case(6), Ok(CaseTag::VIII { m: 0, k: 1 }));
        assert_eq!(classify_case(13), Ok(CaseTag::IV { m: 0, k: 1 }));
        assert_eq!(classify_case(0), Err(Vec::new()));
    }

    #[test]
    fn case_parameters_rebuild_n() {
        for n in 1..5000u128 {
            let c = classify_case(n).unwrap();
            let rebuilt = match c {
                CaseTag::I { k } => 4 * k,
                CaseTag::II { k } => 4 * k + 3,
                CaseTag::III { m, k } => (m << (2 * k + 1)) + p_small(k),
                CaseTag::IV { m, k } => (((m << 2) | 3) << (2 * k)) + p_small(k),
                CaseTag::V { k } => p_small(k),
                CaseTag::VI { m, k } => (m << (2 * k + 2)) + 2 * p_small(k),
                CaseTag::VII { k } => 2 * p_small(k),
                CaseTag::VIII { m, k } => (m << (2 * k + 1)) + q_small(k),
            };
            assert_eq!(rebuilt, n, "{c}");
        }
    }

    #[test]
    fn sweeps_pass_and_merge() {
        assert!(verify_pair(1 << 12).passed());
        assert!(verify_triple(1 << 12).passed());
        assert!(verify_no_quad(1 << 12).passed());
        let whole = DegreeSweep::scan(1..3000, DegreeClaim::Pair);
        let split = DegreeSweep::scan(1..1000, DegreeClaim::Pair)
            .merge(DegreeSweep::scan(1000..3000, DegreeClaim::Pair));
        assert_eq!(whole, split);
    }

    #[test]
    fn intersection_identity_small() {
        let triples: Vec<u64> = (1..(1 << 12) - 1).filter(|&n| triple_set_member(n as u128)).collect();
        assert_eq!(triples_from_intersection((1 << 12) - 1), triples);
    }

    #[test]
    fn huge_indices() {
        // 2^{2k+1}·m + p_k with k = 30, m = 2^60 + 1.
        let k = 30;
        let n = (((1u128 << 60) + 1) << (2 * k + 1)) + p_small(k);
        assert!(pair_set_member(n));
        assert!(triple_set_member(n));
        assert!(classify_case(n).unwrap().has_equal_successor_degree());
    }
}
