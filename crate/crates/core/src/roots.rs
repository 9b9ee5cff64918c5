//! Rational roots of Stern polynomials and the zero sets `R_a`.
//!
//! The only rational roots are `0`, `−1`, `−1/2` and `−1/3`. The first two
//! zero sets are `2ℕ` and `3ℕ`; the last two live inside `5ℕ` and `21ℕ`, are
//! closed under doubling, and are stable under `m ↦ f·2^k ± m` with `f = 5`
//! (resp. `21`).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::descent::CheckedDescent;
use crate::poly::small_pair;
use crate::scaled::{eval_minus_inverse, ScaledTable};
use crate::{Error, ExactRational, VerificationReport};

/// One of the four admissible rational roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootSetId {
    Zero,
    MinusOne,
    MinusHalf,
    MinusThird,
}

impl RootSetId {
    pub const ALL: [RootSetId; 4] =
        [RootSetId::Zero, RootSetId::MinusOne, RootSetId::MinusHalf, RootSetId::MinusThird];

    pub fn point(self) -> ExactRational {
        match self {
            RootSetId::Zero => ExactRational::zero(),
            RootSetId::MinusOne => ExactRational::from(-1),
            RootSetId::MinusHalf => ExactRational::minus_inverse(2),
            RootSetId::MinusThird => ExactRational::minus_inverse(3),
        }
    }

    /// Every member of `R_a` is a multiple of this.
    pub fn filter_modulus(self) -> u64 {
        match self {
            RootSetId::Zero => 2,
            RootSetId::MinusOne => 3,
            RootSetId::MinusHalf => 5,
            RootSetId::MinusThird => 21,
        }
    }

    /// `B_{f·2^k ± n}(a) = ∓c·B_n(a)`: returns `(f, c)` for the two fractional roots.
    pub fn scaling(self) -> Option<(u64, ExactRational)> {
        match self {
            RootSetId::MinusHalf => Some((5, ExactRational::new(1, 4).unwrap())),
            RootSetId::MinusThird => Some((21, ExactRational::new(1, 27).unwrap())),
            _ => None,
        }
    }

    fn minus_inverse_k(self) -> Option<u64> {
        match self {
            RootSetId::MinusHalf => Some(2),
            RootSetId::MinusThird => Some(3),
            _ => None,
        }
    }
}

impl TryFrom<&ExactRational> for RootSetId {
    type Error = Error;
    fn try_from(q: &ExactRational) -> Result<Self, Error> {
        RootSetId::ALL
            .into_iter()
            .find(|a| &a.point() == q)
            .ok_or_else(|| Error::NotAdmissibleRoot(format!("{q}")))
    }
}

impl FromStr for RootSetId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        RootSetId::try_from(&s.parse::<ExactRational>()?)
    }
}

impl fmt::Display for RootSetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.point())
    }
}

/// Whether `B_n(a) = 0`. `0` belongs to every `R_a`.
pub fn root_membership(n: u64, a: RootSetId) -> bool {
    match a {
        RootSetId::Zero => n.is_multiple_of(2),
        RootSetId::MinusOne => n.is_multiple_of(3),
        RootSetId::MinusHalf | RootSetId::MinusThird => {
            n.is_multiple_of(a.filter_modulus()) && root_membership_exact(n, a)
        }
    }
}

/// Membership by exact evaluation only, with no divisibility shortcut.
pub fn root_membership_exact(n: u64, a: RootSetId) -> bool {
    match a.minus_inverse_k() {
        Some(k) => eval_minus_inverse(n, k).is_zero(),
        None => crate::eval_exact(n, &a.point()).is_zero(),
    }
}

/// Evaluation at an integer point `t`.
struct IntPoint(i128);

impl CheckedDescent for IntPoint {
    type Value = i128;
    fn zero(&self) -> i128 {
        0
    }
    fn one(&self) -> i128 {
        1
    }
    fn add(&self, a: &i128, b: &i128) -> Option<i128> {
        a.checked_add(*b)
    }
    fn times_t(&self, a: &i128) -> Option<i128> {
        a.checked_mul(self.0)
    }
}

/// `zero[n] = (B_n(a) = 0)` for `0 ≤ n ≤ max`, by a bottom-up exact scan.
pub fn zero_table(a: RootSetId, max: usize) -> Vec<bool> {
    match a.minus_inverse_k() {
        Some(k) => {
            let table = ScaledTable::new(k, max);
            (0..=max).map(|n| table.is_zero(n)).collect()
        }
        None => {
            let t: i64 = if a == RootSetId::Zero { 0 } else { -1 };
            let mut vals: Vec<i64> = Vec::with_capacity(max + 1);
            for n in 0..=max {
                vals.push(match n {
                    0 => 0,
                    1 => 1,
                    _ if n % 2 == 0 => t * vals[n / 2],
                    _ => vals[n / 2] + vals[n / 2 + 1],
                });
            }
            vals.into_iter().map(|v| v == 0).collect()
        }
    }
}

/// Sorted members of `R_a ∩ [0, max]`.
pub fn r_members(a: RootSetId, max: u64) -> Vec<u64> {
    zero_table(a, max as usize).into_iter().enumerate().filter_map(|(n, z)| z.then_some(n as u64)).collect()
}

/// Zeros of `B_n(a)` per bit length of `n`: entry `L − 1` counts
/// `n ∈ [2^{L−1}, 2^L)`. Walks the pair tree depth-first in `O(max_len)` memory.
pub fn zero_counts_by_length(a: RootSetId, max_len: u32) -> Vec<u64> {
    match a.minus_inverse_k() {
        Some(k) => crate::scaled::zero_counts_by_length(k, max_len),
        None => {
            let t = if a == RootSetId::Zero { 0 } else { -1 };
            crate::scaled::walk_zero_counts(&IntPoint(t), max_len).expect("values stay in {-1, 0, 1}")
        }
    }
}

/// `d_{2^i} = #(R_a ∩ [0, 2^i)) / 2^i` for `i = 0..=imax`, exact.
pub fn density_at_powers(a: RootSetId, imax: u32) -> Vec<ExactRational> {
    zero_count_at_powers(a, imax)
        .into_iter()
        .enumerate()
        .map(|(i, c)| ExactRational::new(c, BigInt::from(1u8) << i).unwrap())
        .collect()
}

/// `#(R_a ∩ [0, 2^i))` for `i = 0..=imax`; index 0 always counts.
pub fn zero_count_at_powers(a: RootSetId, imax: u32) -> Vec<u64> {
    let by_len = zero_counts_by_length(a, imax);
    let mut out = Vec::with_capacity(imax as usize + 1);
    let mut acc = 1u64;
    out.push(acc);
    for c in by_len {
        acc += c;
        out.push(acc);
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `b^deg · Q(−a/b)` by homogeneous Horner; `None` on overflow.
fn homogeneous_at(coeffs: &[u64], a: u64, b: u64) -> Option<i128> {
    let (&lead, rest) = coeffs.split_last()?;
    let mut acc = lead as i128;
    let mut pow: i128 = 1;
    for &c in rest.iter().rev() {
        pow = pow.checked_mul(b as i128)?;
        acc = acc.checked_mul(-(a as i128))?.checked_add((c as i128).checked_mul(pow)?)?;
    }
    Some(acc)
}

fn vanishes_at(coeffs: &[u64], a: u64, b: u64) -> bool {
    match homogeneous_at(coeffs, a, b) {
        Some(v) => v == 0,
        None => {
            let q = ExactRational::new(-(a as i64), b as i64).unwrap();
            let poly = crate::SternPoly::from_parts(
                num_bigint::BigUint::from(0u8),
                coeffs.iter().map(|&c| num_bigint::BigUint::from(c)).collect(),
            );
            poly.eval(&q).is_zero()
        }
    }
}

/// All distinct rational roots of `B_n`, as `(numerator, denominator)` pairs in
/// lowest terms.
///
/// After dividing out `t^v`, the constant term is nonzero and every coefficient
/// is non-negative, so no positive number is a root and every candidate is
/// `−a/b` with `a | c_0` and `b | c_lead`.
pub fn rational_roots(n: u64) -> Vec<(i64, u64)> {
    let (poly, _) = small_pair(n);
    let coeffs = poly.coeffs();
    let mut roots = Vec::new();
    let Some(v) = coeffs.iter().position(|&c| c != 0) else {
        return roots;
    };
    if v > 0 {
        roots.push((0, 1));
    }
    let q = &coeffs[v..];
    if q.len() == 1 {
        return roots;
    }
    for a in divisors(q[0]) {
        for b in divisors(q[q.len() - 1]) {
            if a.gcd(&b) == 1 && vanishes_at(q, a, b) {
                roots.push((-(a as i64), b));
            }
        }
    }
    roots
}

/// Partial result of [`rational_root_scan`] over one index range; partial
/// scans over disjoint ranges combine with [`RootScan::merge`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootScan {
    pub checked: u64,
    /// Root → (number of indices having it, smallest such index).
    pub hits: BTreeMap<(i64, u64), (u64, u64)>,
    /// Smallest index with a root outside the admissible four.
    pub violation: Option<(u64, (i64, u64))>,
}

fn admissible(root: (i64, u64)) -> bool {
    matches!(root, (0, 1) | (-1, 1) | (-1, 2) | (-1, 3))
}

impl RootScan {
    pub fn scan(range: core::ops::Range<u64>) -> Self {
        let mut out = Self::default();
        for n in range {
            out.checked += 1;
            for root in rational_roots(n) {
                let e = out.hits.entry(root).or_insert((0, n));
                e.0 += 1;
                e.1 = e.1.min(n);
                if !admissible(root) && out.violation.is_none_or(|(m, _)| n < m) {
                    out.violation = Some((n, root));
                }
            }
        }
        out
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.checked += other.checked;
        for (root, (count, first)) in other.hits {
            let e = self.hits.entry(root).or_insert((0, first));
            e.0 += count;
            e.1 = e.1.min(first);
        }
        self.violation = match (self.violation, other.violation) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }

    pub fn into_report(self, max: u64) -> VerificationReport {
        let claim = "rational roots of B_n lie in {0, -1, -1/2, -1/3}";
        let range = format!("1 <= n <= {max}");
        let mut report = match self.violation {
            None => VerificationReport::pass(claim, range),
            Some((n, (a, b))) => VerificationReport::fail(
                claim,
                range,
                witness![("n", n), ("root", ExactRational::new(a, b as i64).unwrap())],
            ),
        };
        report = report.with_stat("checked", self.checked);
        for (root, (count, first)) in &self.hits {
            let name = ExactRational::new(root.0, root.1 as i64).unwrap();
            report =
                report.with_stat(format!("hits({name})"), *count).with_stat(format!("first({name})"), *first);
        }
        report
    }
}

/// Every rational root of `B_1, …, B_max` is one of the admissible four.
pub fn rational_root_scan(max: u64) -> VerificationReport {
    RootScan::scan(1..max + 1).into_report(max)
}

/// `b_{2n+1} > ½·max(|b_n|, |b_{n+1}|) > 0` for `b_m = B_m(−1/k)`, `0 ≤ n ≤ max`.
pub fn verify_ineq1(k: u64, max: u64) -> Result<VerificationReport, Error> {
    if k < 4 {
        return Err(Error::Range(format!("inequality needs k >= 4, got {k}")));
    }
    let claim = format!("b(2n+1) > max(|b(n)|, |b(n+1)|)/2 > 0 at t = -1/{k}");
    let range = format!("0 <= n <= {max}");
    let table = ScaledTable::new(k, 2 * max as usize + 2);
    for n in 0..=max as usize {
        if !table.odd_dominates(n) {
            return Ok(VerificationReport::fail(
                claim,
                range,
                witness![
                    ("n", n),
                    ("b(n)", table.value(n)),
                    ("b(n+1)", table.value(n + 1)),
                    ("b(2n+1)", table.value(2 * n + 1)),
                ],
            ));
        }
    }
    Ok(VerificationReport::pass(claim, range)
        .with_stat("checked", max + 1)
        .with_stat("i128_fast_path", table.is_small()))
}

fn fractional(a: RootSetId) -> Result<(u64, ExactRational, u64), Error> {
    let (f, c) =
        a.scaling().ok_or_else(|| Error::Range(format!("only -1/2 and -1/3 are supported, got {a}")))?;
    Ok((f, c, a.minus_inverse_k().expect("fractional root")))
}

/// `k` with `2^k > x`, smallest first.
fn exponents_above(x: u64) -> impl Iterator<Item = u32> {
    let first = 64 - x.leading_zeros();
    first..
}

/// Structure of `R_a` for `a ∈ {−1/2, −1/3}` over its members in `[1, max]`:
/// (a) doubling closure, (b) divisibility by `f = 5` (resp. 21), and (c) for the
/// three smallest `k` with `2^k > m`, both `f·2^k ± m` are members.
pub fn verify_closure(a: RootSetId, max: u64) -> Result<VerificationReport, Error> {
    let (f, _, k) = fractional(a)?;
    let claim = format!("closure of R({a}) under doubling and f*2^k +- m, f = {f}");
    let range = format!("members m of R({a}) in [1, {max}]");
    let zeros = zero_table(a, max as usize);
    let mut members = 0u64;
    for m in (1..=max).filter(|&m| zeros[m as usize]) {
        members += 1;
        if m % f != 0 {
            return Ok(VerificationReport::fail(claim, range, witness![("m", m), ("part", "b")]));
        }
        if !eval_minus_inverse(2 * m, k).is_zero() {
            return Ok(VerificationReport::fail(claim, range, witness![("m", m), ("part", "a")]));
        }
        for e in exponents_above(m).take(3) {
            let base = f << e;
            for (sign, idx) in [("+", base + m), ("-", base - m)] {
                if !eval_minus_inverse(idx, k).is_zero() {
                    return Ok(VerificationReport::fail(
                        claim,
                        range,
                        witness![("m", m), ("k", e), ("sign", sign), ("index", idx), ("part", "c")],
                    ));
                }
            }
        }
    }
    Ok(VerificationReport::pass(claim, range).with_stat("members", members))
}

/// `B_{f·2^k + n}(a) = −c·B_n(a)` for `2^k ≥ n` and `B_{f·2^k − n}(a) = +c·B_n(a)`
/// for `2^k > n`, over `1 ≤ n ≤ max`, `k ≤ kmax`.
pub fn verify_scaling(a: RootSetId, max: u64, kmax: u32) -> Result<VerificationReport, Error> {
    let (f, c, k) = fractional(a)?;
    if kmax > 56 {
        return Err(Error::Range(format!("kmax {kmax} too large")));
    }
    let claim = format!("B(f*2^k +- n)({a}) = -+ {c} * B(n)({a}), f = {f}");
    let range = format!("1 <= n <= {max}, k <= {kmax}");
    let mut checked = 0u64;
    for n in 1..=max {
        let base_val = eval_minus_inverse(n, k);
        let expect_plus = -(&c * &base_val);
        let expect_minus = &c * &base_val;
        for e in 0..=kmax {
            let pow = 1u64 << e;
            let mut branches: Vec<(&str, u64, &ExactRational)> = Vec::with_capacity(2);
            if pow >= n {
                branches.push(("+", (f << e) + n, &expect_plus));
            }
            if pow > n {
                branches.push(("-", (f << e) - n, &expect_minus));
            }
            for (sign, idx, want) in branches {
                checked += 1;
                let got = eval_minus_inverse(idx, k);
                if &got != want {
                    return Ok(VerificationReport::fail(
                        claim,
                        range,
                        witness![
                            ("n", n),
                            ("k", e),
                            ("sign", sign),
                            ("got", got),
                            ("expected", want.clone()),
                        ],
                    ));
                }
            }
        }
    }
    Ok(VerificationReport::pass(claim, range).with_stat("identities", checked))
}

/// `B_{15 + 5·2^m}(−1/2) = −5/32` for `mmin ≤ m ≤ mmax`.
pub fn verify_aperiodicity_witness(mmin: u32, mmax: u32) -> VerificationReport {
    let claim = "B(15 + 5*2^m)(-1/2) = -5/32";
    let range = format!("{mmin} <= m <= {mmax}");
    let want = ExactRational::new(-5, 32).unwrap();
    for m in mmin..=mmax {
        let n = 15u128 + (5u128 << m);
        let got = crate::eval_exact(n, &ExactRational::minus_inverse(2));
        if got != want {
            return VerificationReport::fail(claim, range, witness![("m", m), ("value", got)]);
        }
    }
    VerificationReport::pass(claim, range)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::stern_table;
    use crate::Stat;

    #[test]
    fn membership_examples() {
        assert!(root_membership(6, RootSetId::Zero));
        assert!(root_membership(5, RootSetId::MinusHalf));
        assert!(root_membership(21, RootSetId::MinusThird));
        assert!(!root_membership(7, RootSetId::MinusHalf));
        for a in RootSetId::ALL {
            assert!(root_membership(0, a));
        }
        assert!("-1/5".parse::<RootSetId>().is_err());
        assert_eq!("-1/3".parse::<RootSetId>().unwrap(), RootSetId::MinusThird);
    }

    #[test]
    fn filtered_membership_agrees_with_exact() {
        for a in RootSetId::ALL {
            for n in 0..3000 {
                assert_eq!(root_membership(n, a), root_membership_exact(n, a), "{a} n={n}");
            }
        }
    }

    #[test]
    fn roots_of_first_polynomials() {
        // B_1..B_11 factored by hand: B_3 = 1+t, B_5 = 1+2t, B_9 = (1+t)^2, B_10 = t(1+2t)...
        let with = |root| (1..=11).filter(|&n| rational_roots(n).contains(&root)).collect::<Vec<_>>();
        assert_eq!(with((0, 1)), [2, 4, 6, 8, 10]);
        assert_eq!(with((-1, 1)), [3, 6, 9]);
        assert_eq!(with((-1, 2)), [5, 10]);
        assert!(with((-1, 3)).is_empty());
        assert!(rational_roots(1).is_empty());
        let first_third = (1..).find(|&n| rational_roots(n).contains(&(-1, 3))).unwrap();
        assert_eq!(first_third, 21);
    }

    #[test]
    fn root_candidates_agree_with_brute_evaluation() {
        // Oracle: evaluate every -a/b with small a, b directly on the full polynomial.
        let table = stern_table(600);
        for (n, p) in table.iter().enumerate().skip(1) {
            let mut brute = Vec::new();
            if p.coeffs()[0] == 0u8.into() {
                brute.push((0, 1));
            }
            for b in 1..=40u64 {
                for a in 1..=40u64 {
                    if a.gcd(&b) == 1 && p.eval(&ExactRational::new(-(a as i64), b as i64).unwrap()).is_zero()
                    {
                        brute.push((-(a as i64), b));
                    }
                }
            }
            let mut got = rational_roots(n as u64);
            got.sort();
            brute.sort();
            assert_eq!(got, brute, "n={n}");
        }
    }

    #[test]
    fn scan_report() {
        let r = rational_root_scan(11);
        assert!(r.passed());
        assert_eq!(r.stat("hits(-1)"), Some(&Stat::Int(3)));
        assert_eq!(r.stat("hits(-1/2)"), Some(&Stat::Int(2)));
        assert_eq!(r.stat("hits(0)"), Some(&Stat::Int(5)));
        assert!(rational_root_scan(1).statistics.iter().all(|(n, _)| n == "checked"));
        let whole = RootScan::scan(1..3000);
        let split = RootScan::scan(1..1234).merge(RootScan::scan(1234..3000));
        assert_eq!(whole, split);
    }

    #[test]
    fn inadmissible_root_is_reported() {
        let mut scan = RootScan::scan(1..10);
        scan.violation = Some((7, (-1, 5)));
        let r = scan.into_report(9);
        assert!(!r.passed());
        assert!(r.witness.is_some());
    }

    #[test]
    fn ineq1_small() {
        assert!(verify_ineq1(4, 0).unwrap().passed());
        assert!(verify_ineq1(4, 2000).unwrap().passed());
        assert!(verify_ineq1(10, 2000).unwrap().passed());
        assert!(verify_ineq1(3, 10).is_err());
    }

    #[test]
    fn closure_and_scaling_small() {
        let half = r_members(RootSetId::MinusHalf, 50);
        for m in [5u64, 10, 20, 35, 40, 45] {
            assert!(half.contains(&m), "{m}");
        }
        assert!(verify_closure(RootSetId::MinusHalf, 5000).unwrap().passed());
        assert!(verify_closure(RootSetId::MinusThird, 5000).unwrap().passed());
        assert!(verify_closure(RootSetId::Zero, 10).is_err());
        assert!(verify_scaling(RootSetId::MinusHalf, 64, 12).unwrap().passed());
        assert!(verify_scaling(RootSetId::MinusThird, 64, 12).unwrap().passed());
    }

    #[test]
    fn scaling_examples() {
        let h = |n: u64| eval_minus_inverse(n, 2);
        assert_eq!(h(41), ExactRational::new(-1, 4).unwrap());
        assert_eq!(h(78), ExactRational::new(-1, 8).unwrap());
        assert_eq!(eval_minus_inverse(673u64, 3), ExactRational::new(-1, 27).unwrap());
    }

    #[test]
    fn members_of_integer_roots() {
        assert_eq!(r_members(RootSetId::Zero, 7), [0, 2, 4, 6]);
        assert_eq!(r_members(RootSetId::MinusOne, 10), [0, 3, 6, 9]);
        let n = 1 << 14;
        assert_eq!(r_members(RootSetId::Zero, n), (0..=n).step_by(2).collect::<Vec<_>>());
        assert_eq!(r_members(RootSetId::MinusOne, n), (0..=n).step_by(3).collect::<Vec<_>>());
    }

    #[test]
    fn densities() {
        for (i, d) in density_at_powers(RootSetId::Zero, 12).into_iter().enumerate().skip(1) {
            assert_eq!(d, ExactRational::new(1, 2).unwrap(), "i={i}");
        }
        for (i, c) in zero_count_at_powers(RootSetId::MinusOne, 12).into_iter().enumerate() {
            // multiples of 3 in [0, 2^i)
            assert_eq!(c, ((1u64 << i) - 1) / 3 + 1);
        }
        for a in RootSetId::ALL {
            let members = r_members(a, (1 << 12) - 1);
            let counts = zero_count_at_powers(a, 12);
            for (i, &count) in counts.iter().enumerate() {
                let brute = members.iter().filter(|&&m| m < (1 << i)).count() as u64;
                assert_eq!(count, brute, "{a} i={i}");
            }
        }
    }

    #[test]
    fn aperiodicity_witness() {
        assert!(verify_aperiodicity_witness(4, 20).passed());
        assert!(!verify_aperiodicity_witness(2, 3).passed());
    }
}
