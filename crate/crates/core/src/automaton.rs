//! The pair-state automaton computing `B_n(t) mod p`.
//!
//! A state `(α, β) ∈ F_p²` stands for the sequence `α·b_n + β·b_{n+1}`, where
//! `b_n = B_n(t) mod p`. Taking even and odd subsequences maps this family to
//! itself:
//!
//! ```text
//! (α, β) --0--> (tα + β, β)
//! (α, β) --1--> (α, α + tβ)
//! ```
//!
//! Starting from `(1, 0)` and reading the bits of `n` least significant first,
//! the `β` of the final state is `b_n`. Both maps are invertible linear maps of
//! `F_p²`, and 0-edges never change `β`, so leading zeros are harmless.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::residue::is_prime;
use crate::roots::{zero_count_at_powers, RootSetId};
use crate::{eval_mod, BitIndex, Error, ExactRational, Residue, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairState {
    pub alpha: u64,
    pub beta: u64,
}

impl fmt::Display for PairState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

pub type StateId = u32;

/// Deterministic finite automaton with output over the full `p²` state set.
#[derive(Clone, Debug)]
pub struct Dfao {
    p: u64,
    t: Residue,
    edge0: Vec<StateId>,
    edge1: Vec<StateId>,
    initial: StateId,
}

impl Dfao {
    /// The automaton for `t = target mod p`, started at `(1, 0)`.
    pub fn build(p: u64, target: &ExactRational) -> Result<Self, Error> {
        Self::build_with_initial(p, target, PairState { alpha: 1, beta: 0 })
    }

    /// Same transitions, different start state. Starting at `(0, 0)` gives
    /// the constant-zero control machine.
    pub fn build_with_initial(p: u64, target: &ExactRational, initial: PairState) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p <= 3 {
            return Err(Error::SmallModulus(p));
        }
        if p > 65_000 {
            return Err(Error::Range(format!("modulus {p} too large for a full p^2 state set")));
        }
        if initial.alpha >= p || initial.beta >= p {
            return Err(Error::Range(format!("initial state {initial} is not reduced mod {p}")));
        }
        let t = Residue::from_rational(target, p)?;
        let tv = t.value();
        let n = (p * p) as usize;
        let mut edge0 = Vec::with_capacity(n);
        let mut edge1 = Vec::with_capacity(n);
        for alpha in 0..p {
            for beta in 0..p {
                let a0 = (tv * alpha + beta) % p;
                let b1 = (alpha + tv * beta) % p;
                edge0.push((a0 * p + beta) as StateId);
                edge1.push((alpha * p + b1) as StateId);
            }
        }
        let initial = (initial.alpha * p + initial.beta) as StateId;
        Ok(Self { p, t, edge0, edge1, initial })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn t(&self) -> Residue {
        self.t
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn state_count(&self) -> usize {
        self.edge0.len()
    }

    pub fn state(&self, id: StateId) -> PairState {
        let id = id as u64;
        PairState { alpha: id / self.p, beta: id % self.p }
    }

    pub fn id(&self, s: PairState) -> StateId {
        (s.alpha * self.p + s.beta) as StateId
    }

    #[inline]
    pub fn step(&self, id: StateId, bit: bool) -> StateId {
        if bit {
            self.edge1[id as usize]
        } else {
            self.edge0[id as usize]
        }
    }

    /// The output projection `π(α, β) = β`.
    pub fn output(&self, id: StateId) -> u64 {
        id as u64 % self.p
    }

    /// `b_n`, reading the bits of `n` least significant first.
    pub fn run<N: BitIndex>(&self, n: N) -> Residue {
        let end = (0..n.bit_len()).fold(self.initial, |s, i| self.step(s, n.bit_at(i)));
        Residue::reduce(self.output(end), self.p)
    }

    /// States reachable from the initial state, in increasing id order.
    pub fn reachable(&self) -> Vec<StateId> {
        let seen = self.reachable_mask();
        (0..self.state_count() as StateId).filter(|&s| seen[s as usize]).collect()
    }

    fn reachable_mask(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial as usize] = true;
        while let Some(s) = queue.pop_front() {
            for next in [self.edge0[s as usize], self.edge1[s as usize]] {
                if !seen[next as usize] {
                    seen[next as usize] = true;
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    fn is_permutation(edges: &[StateId]) -> bool {
        let mut hit = vec![false; edges.len()];
        edges.iter().all(|&e| !core::mem::replace(&mut hit[e as usize], true))
    }

    /// Structural analysis of the reachable component.
    pub fn analyze(&self) -> DfaoAnalysis {
        let reach = self.reachable_mask();
        let k = reach.iter().filter(|&&r| r).count();

        // Reverse reachability to the initial state inside the component.
        let n = self.state_count();
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        let mut indeg = vec![0u32; n];
        for s in (0..n).filter(|&s| reach[s]) {
            for e in [self.edge0[s], self.edge1[s]] {
                preds[e as usize].push(s as StateId);
                indeg[e as usize] += 1;
            }
        }
        let mut back = vec![false; n];
        let mut queue = VecDeque::from([self.initial]);
        back[self.initial as usize] = true;
        while let Some(s) = queue.pop_front() {
            for &pr in &preds[s as usize] {
                if !back[pr as usize] {
                    back[pr as usize] = true;
                    queue.push_back(pr);
                }
            }
        }
        let strongly_connected = (0..n).all(|s| !reach[s] || back[s]);
        let regular_2in_2out = (0..n).all(|s| !reach[s] || indeg[s] == 2);

        let zero_output_count = (0..n).filter(|&s| reach[s] && self.output(s as StateId) == 0).count();
        let zero_one = self.id(PairState { alpha: 0, beta: 1 });
        let swap_symmetric = (0..n).all(|s| {
            let st = self.state(s as StateId);
            reach[s] == reach[self.id(PairState { alpha: st.beta, beta: st.alpha }) as usize]
        });

        let tv = self.t.value();
        let edge0_order = matrix_order([[tv, 1], [0, 1]], self.p);
        let edge1_order = matrix_order([[1, 0], [1, tv]], self.p);

        DfaoAnalysis {
            p: self.p,
            t: tv,
            reachable_count: k,
            strongly_connected,
            regular_2in_2out,
            zero_output_count,
            ord_t: self.t.order().unwrap_or(0),
            zero_one_reachable: reach[zero_one as usize],
            swap_symmetric,
            edges_are_permutations: Self::is_permutation(&self.edge0) && Self::is_permutation(&self.edge1),
            edge0_order,
            edge1_order,
        }
    }

    /// Number of length-`i` paths from the initial state that end on a state
    /// with `β = 0`, for `i = 0..=imax`; equivalently
    /// `#{0 ≤ n < 2^i : b_n ≡ 0}`. Exact integer path counting.
    pub fn zero_path_counts(&self, imax: u32) -> Result<Vec<u128>, Error> {
        if imax > 126 {
            return Err(Error::Range(format!("imax {imax} exceeds the u128 path-count range")));
        }
        let n = self.state_count();
        let mut counts = vec![0u128; n];
        counts[self.initial as usize] = 1;
        let mut out = Vec::with_capacity(imax as usize + 1);
        for i in 0..=imax {
            out.push((0..n).filter(|&s| self.output(s as StateId) == 0).map(|s| counts[s]).sum());
            if i == imax {
                break;
            }
            let mut next = vec![0u128; n];
            for (s, &c) in counts.iter().enumerate().filter(|(_, &c)| c > 0) {
                next[self.edge0[s] as usize] += c;
                next[self.edge1[s] as usize] += c;
            }
            counts = next;
        }
        Ok(out)
    }

    /// `d_{2^i,p} = #{0 ≤ n < 2^i : b_n ≡ 0} / 2^i` for `i = 0..=imax`.
    pub fn density_counts(&self, imax: u32) -> Result<Vec<ExactRational>, Error> {
        Ok(self
            .zero_path_counts(imax)?
            .into_iter()
            .enumerate()
            .map(|(i, c)| ExactRational::new(c, num_bigint::BigInt::from(1u8) << i).unwrap())
            .collect())
    }

    /// Cesàro average of `I, A, …, A^T` for `A = ½·adjacency` of the
    /// reachable component, compared entrywise against `1/K`; also checks that
    /// the average `G` satisfies `AG ≈ GA ≈ G`.
    pub fn cesaro_check(&self, iterations: u32, tol: f64) -> VerificationReport {
        let claim = "Cesaro average of A = adjacency/2 converges to the all-1/K matrix";
        let range = format!("p = {}, t = {}, T = {iterations}, tol = {tol}", self.p, self.t.value());
        let analysis = self.analyze();
        if !(analysis.strongly_connected && analysis.regular_2in_2out) {
            return VerificationReport::fail(
                claim,
                range,
                witness![
                    ("strongly_connected", analysis.strongly_connected),
                    ("regular_2in_2out", analysis.regular_2in_2out),
                ],
            );
        }
        let states = self.reachable();
        let k = states.len();
        let mut local = vec![usize::MAX; self.state_count()];
        for (i, &s) in states.iter().enumerate() {
            local[s as usize] = i;
        }
        let succ: Vec<[usize; 2]> = states
            .iter()
            .map(|&s| [local[self.edge0[s as usize] as usize], local[self.edge1[s as usize] as usize]])
            .collect();

        // P_j = A^j, row-major; P_{j+1} = P_j · A only touches two columns per row entry.
        let mut power = vec![0.0f64; k * k];
        for i in 0..k {
            power[i * k + i] = 1.0;
        }
        let mut sum = power.clone();
        let mut next = vec![0.0f64; k * k];
        for _ in 0..iterations {
            next.iter_mut().for_each(|x| *x = 0.0);
            for r in 0..k {
                let row = &power[r * k..(r + 1) * k];
                let out = &mut next[r * k..(r + 1) * k];
                for (s, &v) in row.iter().enumerate() {
                    if v != 0.0 {
                        let half = 0.5 * v;
                        out[succ[s][0]] += half;
                        out[succ[s][1]] += half;
                    }
                }
            }
            core::mem::swap(&mut power, &mut next);
            for (acc, &v) in sum.iter_mut().zip(&power) {
                *acc += v;
            }
        }
        let scale = 1.0 / (iterations as f64 + 1.0);
        sum.iter_mut().for_each(|x| *x *= scale);

        let target = 1.0 / k as f64;
        let max_dev = sum.iter().map(|&g| (g - target).abs()).fold(0.0, f64::max);
        let row_sum_dev =
            (0..k).map(|r| (sum[r * k..(r + 1) * k].iter().sum::<f64>() - 1.0).abs()).fold(0.0, f64::max);
        // (A·G)[r][c] = ½(G[s0][c] + G[s1][c]); (G·A)[r][c] = Σ over preds of c.
        let mut ag_dev = 0.0f64;
        let mut ga = vec![0.0f64; k * k];
        for r in 0..k {
            for c in 0..k {
                let ag = 0.5 * (sum[succ[r][0] * k + c] + sum[succ[r][1] * k + c]);
                ag_dev = ag_dev.max((ag - sum[r * k + c]).abs());
            }
            for s in 0..k {
                let half = 0.5 * sum[r * k + s];
                ga[r * k + succ[s][0]] += half;
                ga[r * k + succ[s][1]] += half;
            }
        }
        let ga_dev = ga.iter().zip(&sum).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);

        let mut report = if max_dev <= tol && ag_dev <= tol && ga_dev <= tol {
            VerificationReport::pass(claim, range)
        } else {
            VerificationReport::fail(
                claim,
                range,
                witness![("max_deviation", max_dev), ("ag_deviation", ag_dev), ("ga_deviation", ga_dev)],
            )
        };
        report = report
            .with_stat("K", k)
            .with_stat("max_deviation", max_dev)
            .with_stat("ag_deviation", ag_dev)
            .with_stat("ga_deviation", ga_dev)
            .with_stat("row_sum_deviation", row_sum_dev);
        report
    }

    /// Compares the Cesàro average of `d_{2^0,p}, …, d_{2^{terms−1},p}` with
    /// `Z/K` and with the bound `2/log₂ p`.
    pub fn density_check(&self, terms: u32, tol: f64) -> Result<VerificationReport, Error> {
        if terms == 0 {
            return Err(Error::Range("need at least one term".into()));
        }
        let claim = "Cesaro average of d(2^i, p) approaches Z/K <= 2/log2(p)";
        let range = format!("p = {}, t = {}, i < {terms}, tol = {tol}", self.p, self.t.value());
        let analysis = self.analyze();
        let counts = self.zero_path_counts(terms - 1)?;
        let densities: Vec<f64> =
            counts.iter().enumerate().map(|(i, &c)| c as f64 / libm::exp2(i as f64)).collect();
        let avg = densities.iter().sum::<f64>() / terms as f64;
        let ratio = analysis.zero_output_count as f64 / analysis.reachable_count as f64;
        let bound = 2.0 / libm::log2(self.p as f64);
        let deviation = (avg - ratio).abs();
        let ok = deviation <= tol && avg <= bound;
        let report = if ok {
            VerificationReport::pass(claim, range)
        } else {
            VerificationReport::fail(
                claim,
                range,
                witness![("cesaro_average", avg), ("z_over_k", ratio), ("bound", bound)],
            )
        };
        Ok(report
            .with_stat("cesaro_average", avg)
            .with_stat("z_over_k", ratio)
            .with_stat("deviation", deviation)
            .with_stat("bound", bound)
            .with_stat("last_density", *densities.last().expect("terms >= 1")))
    }

    /// The automaton output agrees with [`eval_mod`] for `0 ≤ n ≤ max`.
    pub fn verify_run(&self, max: u64) -> VerificationReport {
        let claim = "automaton output equals B_n(t) mod p";
        let range = format!("p = {}, t = {}, 0 <= n <= {max}", self.p, self.t.value());
        match (0..=max).find(|&n| self.run(n) != eval_mod(n, self.t)) {
            None => VerificationReport::pass(claim, range).with_stat("checked", max + 1),
            Some(n) => VerificationReport::fail(
                claim,
                range,
                witness![("n", n), ("automaton", self.run(n).value()), ("eval", eval_mod(n, self.t).value())],
            ),
        }
    }

    /// `b_0, …, b_{len−1}` as residues' values.
    pub fn output_prefix(&self, len: usize) -> Vec<u64> {
        (0..len as u64).map(|n| self.run(n).value()).collect()
    }

    /// Searches for an eventual period of the output sequence, see
    /// [`periodicity_search`].
    pub fn periodicity_search(
        &self,
        max_preperiod: usize,
        max_period: usize,
        prefix_len: usize,
    ) -> Result<VerificationReport, Error> {
        if prefix_len < max_preperiod + 2 * max_period {
            return Err(Error::Range(format!(
                "prefix {prefix_len} shorter than preperiod + 2*period = {}",
                max_preperiod + 2 * max_period
            )));
        }
        let seq = self.output_prefix(prefix_len);
        let mut report = periodicity_search(&seq, max_preperiod, max_period);
        report.range = format!("p = {}, t = {}, {}", self.p, self.t.value(), report.range);
        Ok(report)
    }
}

/// Compares the exact densities `d_{2^i}` of `R_a` with the modular
/// densities `d_{2^i,p}` for `i ≤ imax`: a rational zero is a zero mod `p`, so
/// `d_{2^i} ≤ d_{2^i,p}` termwise. Also checks that the Cesàro average of
/// `d_{2^0}, …, d_{2^imax}` is at most `min_p 2/log₂ p`.
pub fn compare_densities(a: RootSetId, primes: &[u64], imax: u32) -> Result<VerificationReport, Error> {
    let claim = "exact zero densities are bounded by the modular densities";
    let range = format!("R_{a}, i <= {imax}, p in {primes:?}");
    let exact = zero_count_at_powers(a, imax);
    let mut min_bound = f64::INFINITY;
    let mut witness = None;
    for &p in primes {
        let dfao = Dfao::build(p, &a.point())?;
        let modular = dfao.zero_path_counts(imax)?;
        min_bound = min_bound.min(2.0 / libm::log2(p as f64));
        // Both counts share the denominator 2^i.
        if let Some(i) = (0..=imax as usize).find(|&i| exact[i] as u128 > modular[i]) {
            if witness.is_none() {
                witness =
                    Some(witness![("p", p), ("i", i), ("exact", exact[i]), ("modular", modular[i] as u64)]);
            }
        }
    }
    let average = exact.iter().enumerate().map(|(i, &c)| c as f64 / libm::exp2(i as f64)).sum::<f64>()
        / (imax as f64 + 1.0);
    if witness.is_none() && average > min_bound {
        witness = Some(witness![("cesaro_average", average), ("bound", min_bound)]);
    }
    let report = match witness {
        None => VerificationReport::pass(claim, range),
        Some(w) => VerificationReport::fail(claim, range, w),
    };
    Ok(report
        .with_stat("cesaro_average", average)
        .with_stat("bound", min_bound)
        .with_stat("last_density", exact[imax as usize] as f64 / libm::exp2(imax as f64)))
}

/// For every preperiod `u ≤ max_preperiod` and period `1 ≤ q ≤ max_period`,
/// looks for `n > u` with `seq[n] ≠ seq[n + q]`. Passes when every candidate
/// is broken inside the prefix; otherwise the witness is the first unbroken
/// `(u, q)`.
pub fn periodicity_search(seq: &[u64], max_preperiod: usize, max_period: usize) -> VerificationReport {
    let claim = "output sequence is not eventually periodic";
    let range = format!("preperiod <= {max_preperiod}, period <= {max_period}, prefix {}", seq.len());
    for q in 1..=max_period.min(seq.len()) {
        // Last n with seq[n] != seq[n+q]; every u below it is broken.
        let last = (0..seq.len() - q).rev().find(|&n| seq[n] != seq[n + q]);
        let first_unbroken = match last {
            Some(n) if n > max_preperiod => continue,
            Some(n) => n,
            None => 0,
        };
        return VerificationReport::fail(
            claim,
            range,
            witness![("preperiod", first_unbroken), ("period", q)],
        );
    }
    VerificationReport::pass(claim, range)
}

/// Order of a 2×2 matrix in `GL_2(F_p)`; `None` if singular.
fn matrix_order(m: [[u64; 2]; 2], p: u64) -> Option<u64> {
    let det = (m[0][0] * m[1][1] % p + p * p - m[0][1] * m[1][0] % p) % p;
    if det == 0 {
        return None;
    }
    let mul = |a: [[u64; 2]; 2], b: [[u64; 2]; 2]| {
        let mut c = [[0u64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % p;
            }
        }
        c
    };
    let id = [[1, 0], [0, 1]];
    let mut x = m;
    let mut k = 1;
    while x != id {
        x = mul(x, m);
        k += 1;
    }
    Some(k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfaoAnalysis {
    pub p: u64,
    pub t: u64,
    /// `K`: size of the reachable component.
    pub reachable_count: usize,
    pub strongly_connected: bool,
    pub regular_2in_2out: bool,
    /// `Z`: reachable states with `β = 0`.
    pub zero_output_count: usize,
    pub ord_t: u64,
    pub zero_one_reachable: bool,
    /// `(α, β)` reachable iff `(β, α)` reachable.
    pub swap_symmetric: bool,
    pub edges_are_permutations: bool,
    pub edge0_order: Option<u64>,
    pub edge1_order: Option<u64>,
}

impl DfaoAnalysis {
    /// `Z/K ≤ 2/log₂ p`, decided exactly as `p^Z ≤ 4^K`.
    pub fn zero_ratio_bound_holds(&self) -> bool {
        BigUint::from(self.p).pow(self.zero_output_count as u32)
            <= BigUint::from(4u8).pow(self.reachable_count as u32)
    }

    /// `ord(t) ≥ ½·log₂ p − 1`, decided exactly as `4^{ord+1} ≥ p`.
    pub fn order_bound_holds(&self) -> bool {
        self.ord_t > 0 && BigUint::from(4u8).pow(self.ord_t as u32 + 1) >= BigUint::from(self.p)
    }

    pub fn into_report(self) -> VerificationReport {
        let claim = "reachable component is strongly connected, 2-in/2-out, and Z/K <= 2/log2(p)";
        let range = format!("p = {}, t = {}", self.p, self.t);
        let checks = [
            ("strongly_connected", self.strongly_connected),
            ("regular_2in_2out", self.regular_2in_2out),
            ("zero_one_reachable", self.zero_one_reachable),
            ("swap_symmetric", self.swap_symmetric),
            ("edges_are_permutations", self.edges_are_permutations),
            ("edge_orders_finite", self.edge0_order.is_some() && self.edge1_order.is_some()),
            ("zero_ratio_bound", self.zero_ratio_bound_holds()),
            ("order_bound", self.order_bound_holds()),
        ];
        let mut report = match checks.iter().find(|(_, ok)| !ok) {
            None => VerificationReport::pass(claim, range),
            Some((name, _)) => VerificationReport::fail(claim, range, witness![("failed_check", *name)]),
        };
        report = report
            .with_stat("K", self.reachable_count)
            .with_stat("Z", self.zero_output_count)
            .with_stat("ord_t", self.ord_t)
            .with_stat("z_over_k", self.zero_output_count as f64 / self.reachable_count as f64)
            .with_stat("bound", 2.0 / libm::log2(self.p as f64))
            .with_stat("edge0_order", self.edge0_order.unwrap_or(0))
            .with_stat("edge1_order", self.edge1_order.unwrap_or(0));
        for (name, ok) in checks {
            report = report.with_stat(name, ok);
        }
        report
    }
}
