//! Distinct integer partitions in logistic-weight order, their counts, and the
//! shift-register schedule cost model built on them.
//!
//! A partition `λ = (λ₁ > λ₂ > … > λ_P) ⊢ m` selects the `λᵢ`-th least
//! reliable bits, so `m` is the logistic weight and `P` the Hamming weight of
//! the induced test error pattern.
//!
//! Canonical order: ascending `P`, then ascending lexicographic order on the
//! suffix `(λ_P, λ_{P−1}, …, λ₂)`, with `λ₁ = m − Σ_{i≥2} λᵢ` implied. For
//! `m = 12, P = 3` this lists `(9,2,1) (8,3,1) (7,4,1) (6,5,1) (7,3,2) (6,4,2) (5,4,3)`.
//!
//! Each `λᵢ` for `i ≥ 2` is bounded by [`lambda_upper`], which is tight: every
//! value in range extends to at least one partition, so the odometer below
//! never visits dead branches.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parts of a distinct partition, strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "partition {parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidParameter(format!(
                "partition {parts:?} is not strictly decreasing"
            )));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// `(λ₁, …, λ_P)`, largest first.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Logistic weight `m`.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts `P`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Largest `λᵢ` admissible given the tail `λ_{i+1}, …, λ_P` whose sum is
/// `suffix_sum`: the largest integer strictly below
/// `(2m − i(i−1) + 2 − 2·suffix_sum) / (2i)`.
///
/// The result may be zero or negative, meaning no admissible value exists.
#[inline]
pub fn lambda_upper_sum(i: usize, m: usize, suffix_sum: usize) -> i64 {
    debug_assert!(i >= 2);
    let i = i as i64;
    let numer = 2 * m as i64 - i * (i - 1) + 2 - 2 * suffix_sum as i64;
    // t < numer / 2i  ⇔  t ≤ ⌊(numer − 1) / 2i⌋
    (numer - 1).div_euclid(2 * i)
}

/// [`lambda_upper_sum`] with the tail given explicitly as `(λ_{i+1}, …, λ_P)`.
///
/// `λ₁` is never bounded here; it is `m − Σ_{j≥2} λⱼ`.
pub fn lambda_upper(i: usize, m: usize, suffix: &[usize]) -> Result<i64> {
    if i < 2 {
        return Err(Error::InvalidParameter(format!(
            "lambda_upper is defined for i ≥ 2, got {i}"
        )));
    }
    if suffix.contains(&0) || suffix.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidParameter(format!(
            "suffix {suffix:?} must be strictly decreasing positive integers"
        )));
    }
    Ok(lambda_upper_sum(i, m, suffix.iter().sum()))
}

/// Streams the distinct partitions of one logistic weight in canonical order.
///
/// [`advance`](Self::advance) is allocation free and is what the decoder uses;
/// the [`Iterator`] impl clones each partition.
#[derive(Clone, Debug)]
pub struct PartitionCursor {
    m: usize,
    p_max: usize,
    n_cap: usize,
    /// Part count of the current partition.
    p: usize,
    /// `(λ_P, …, λ₂)`.
    suffix: Vec<usize>,
    /// `(λ₁, …, λ_P)` of the last emitted partition.
    current: Vec<usize>,
    /// 1-based index of the current `(λ_P, …, λ₄)` group within this `P`.
    step: u64,
    started: bool,
    done: bool,
}

impl PartitionCursor {
    /// Partitions of `m` with at most `p_max` parts, each at most `n_cap`.
    pub fn new(m: usize, p_max: usize, n_cap: usize) -> Self {
        Self {
            m,
            p_max,
            n_cap,
            p: 0,
            suffix: Vec::with_capacity(p_max.min(64)),
            current: Vec::with_capacity(p_max.min(64)),
            step: 0,
            started: false,
            done: false,
        }
    }

    pub fn weight(&self) -> usize {
        self.m
    }

    /// Part count of the partition last returned by `advance`.
    pub fn part_count(&self) -> usize {
        self.p
    }

    /// For `P ≥ 4`, the 1-based index of the controller step (distinct
    /// `(λ_P, …, λ₄)` value) holding the last partition; 1 otherwise.
    pub fn step_index(&self) -> u64 {
        self.step.max(1)
    }

    /// Moves to the next partition and returns its parts, largest first.
    pub fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        loop {
            let moved = if !self.started {
                self.started = true;
                if self.m == 0 {
                    // the empty pattern is the only partition of zero
                    self.current.clear();
                    self.done = true;
                    return Some(&self.current);
                }
                self.start_part_count(1)
            } else {
                (self.p >= 2 && self.step_suffix()) || self.start_part_count(self.p + 1)
            };
            if !moved {
                self.done = true;
                return None;
            }
            if self.fill_current() {
                return Some(&self.current);
            }
        }
    }

    /// Starts enumeration for `p` parts; false once no partition with `p`
    /// (or more) parts exists.
    fn start_part_count(&mut self, p: usize) -> bool {
        if p > self.p_max || p * (p + 1) / 2 > self.m {
            return false;
        }
        self.p = p;
        self.step = 1;
        self.suffix.clear();
        // minimal tail λ_P = 1, λ_{P−1} = 2, …; admissible because P(P+1)/2 ≤ m
        self.suffix.extend(1..p);
        true
    }

    /// Odometer step on the suffix, `λ₂` fastest.
    fn step_suffix(&mut self) -> bool {
        let p = self.p;
        for j in (0..p - 1).rev() {
            let i = p - j;
            let prefix: usize = self.suffix[..j].iter().sum();
            let next = self.suffix[j] + 1;
            if (next as i64) <= lambda_upper_sum(i, self.m, prefix) {
                self.suffix[j] = next;
                for t in j + 1..p - 1 {
                    self.suffix[t] = self.suffix[t - 1] + 1;
                }
                if j + 4 <= p {
                    self.step += 1;
                }
                return true;
            }
        }
        false
    }

    /// Materializes the current state into `current`; false if `λ₁` exceeds the cap.
    fn fill_current(&mut self) -> bool {
        self.current.clear();
        if self.p == 0 {
            return true;
        }
        let tail: usize = self.suffix.iter().sum();
        let first = self.m - tail;
        if first > self.n_cap {
            return false;
        }
        self.current.push(first);
        self.current.extend(self.suffix.iter().rev());
        true
    }
}

impl Iterator for PartitionCursor {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        self.advance().map(|parts| Partition {
            parts: parts.to_vec(),
        })
    }
}

/// All distinct partitions of `m` with `1 ≤ P ≤ p_max` parts, each `≤ n_cap`,
/// in canonical order. `m = 0` yields the empty partition alone.
pub fn enumerate_partitions(m: usize, p_max: usize, n_cap: usize) -> Vec<Partition> {
    PartitionCursor::new(m, p_max, n_cap).collect()
}

/// Exact counts of distinct partitions by weight and part count.
///
/// `count(m, P)` is the number of partitions of `m` into exactly `P` distinct
/// parts, each at most `n_cap`, computed by a 0/1 knapsack over part values.
#[derive(Clone, Debug)]
pub struct PartitionCounts {
    n_cap: usize,
    max_weight: usize,
    max_parts: usize,
    /// `table[P][m]`
    table: Vec<Vec<BigUint>>,
}

impl PartitionCounts {
    pub fn new(max_weight: usize, max_parts: usize, n_cap: usize) -> Self {
        // at most ⌊√(2m)⌋ distinct parts fit in m
        let feasible = {
            let mut p = 0;
            while (p + 1) * (p + 2) / 2 <= max_weight {
                p += 1;
            }
            p
        };
        let max_parts = max_parts.min(feasible).min(n_cap);
        let mut table = vec![vec![BigUint::zero(); max_weight + 1]; max_parts + 1];
        table[0][0] = BigUint::from(1u8);
        for part in 1..=n_cap.min(max_weight) {
            for p in (1..=max_parts).rev() {
                let (lower, upper) = table.split_at_mut(p);
                let prev = &lower[p - 1];
                let row = &mut upper[0];
                for m in (part..=max_weight).rev() {
                    if !prev[m - part].is_zero() {
                        let add = prev[m - part].clone();
                        row[m] += add;
                    }
                }
            }
        }
        Self {
            n_cap,
            max_weight,
            max_parts,
            table,
        }
    }

    pub fn n_cap(&self) -> usize {
        self.n_cap
    }

    pub fn count(&self, m: usize, p: usize) -> BigUint {
        assert!(
            m <= self.max_weight,
            "weight {m} beyond table limit {}",
            self.max_weight
        );
        if p > self.max_parts {
            return BigUint::zero();
        }
        self.table[p][m].clone()
    }

    /// `Σ_{P ≤ p_max} count(m, P)`, including the empty partition when `m = 0`.
    pub fn count_weight(&self, m: usize, p_max: usize) -> BigUint {
        (0..=p_max.min(self.max_parts))
            .map(|p| &self.table[p][m])
            .sum()
    }
}

/// Number of distinct partitions in the `P`-part slice of [`enumerate_partitions`].
pub fn count_partitions(m: usize, p: usize, n_cap: usize) -> BigUint {
    if p == 0 {
        return BigUint::from(u8::from(m == 0));
    }
    PartitionCounts::new(m, p, n_cap).count(m, p)
}

/// `LW_max ≤ n(n+1)/2`, the largest logistic weight any pattern can reach.
pub fn max_logistic_weight(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Number of membership queries when every pattern with logistic weight
/// `≤ lw_max` and at most `p_max` ones is tested, including the all-zero pattern.
pub fn total_queries(n: usize, lw_max: usize, p_max: usize) -> Result<BigUint> {
    if lw_max > max_logistic_weight(n) {
        return Err(Error::InvalidParameter(format!(
            "LWmax {lw_max} exceeds n(n+1)/2 = {}",
            max_logistic_weight(n)
        )));
    }
    let counts = PartitionCounts::new(lw_max, p_max, n);
    Ok((0..=lw_max).map(|m| counts.count_weight(m, p_max)).sum())
}

/// Controller steps for `P ≥ 4` parts at weight `m`:
/// the number of admissible tails `(λ_P, …, λ₄)`.
pub fn suffix_steps(m: usize, p: usize) -> u64 {
    fn rec(m: usize, i: usize, lo: usize, sum: usize) -> u64 {
        if i < 4 {
            return 1;
        }
        let hi = lambda_upper_sum(i, m, sum);
        if hi < lo as i64 {
            return 0;
        }
        (lo..=hi as usize)
            .map(|v| rec(m, i - 1, v + 1, sum + v))
            .sum()
    }
    if p < 4 {
        return 0;
    }
    rec(m, p, 1, 0)
}

/// Time-step cost of one logistic weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeSteps {
    /// One step checks every `P = 2` and `P = 3` pattern; present when `m ≥ 3`.
    pub bank: u64,
    /// `(P, steps)` for `P ∈ [4, p_max]`.
    pub per_part_count: Vec<(usize, u64)>,
    pub total: u64,
}

impl TimeSteps {
    pub fn steps_for(&self, p: usize) -> u64 {
        match p {
            0 | 1 => 0,
            2 | 3 => self.bank,
            _ => self
                .per_part_count
                .iter()
                .find(|(q, _)| *q == p)
                .map_or(0, |(_, s)| *s),
        }
    }
}

pub fn time_steps(m: usize, p_max: usize) -> TimeSteps {
    let bank = u64::from(m >= 3 && p_max >= 2);
    let per_part_count: Vec<(usize, u64)> = (4..=p_max).map(|p| (p, suffix_steps(m, p))).collect();
    let total = bank + per_part_count.iter().map(|(_, s)| s).sum::<u64>();
    TimeSteps {
        bank,
        per_part_count,
        total,
    }
}

/// What one time step of the shift-register schedule checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScheduleStep {
    /// All `P = 2` patterns on the first bus and all `P = 3` patterns on the
    /// remaining `λ₃max` buses.
    Bank {
        m: usize,
        lambda3_max: usize,
        buses: usize,
    },
    /// The controller fixes `(λ_P, …, λ₄)` and emits
    /// `s_comp = s_c ⊕ s_{λ₄} ⊕ … ⊕ s_{λ_P}`; the shift registers sweep
    /// `λ₃` and `λ₂` in one step.
    Controller {
        m: usize,
        /// `(λ_P, …, λ₄)`
        tail: Vec<usize>,
        lambda3_range: (usize, usize),
    },
}

impl ScheduleStep {
    /// Syndrome indices the controller folds into `s_comp` (besides `s_c`).
    pub fn controller_syndromes(&self) -> &[usize] {
        match self {
            ScheduleStep::Bank { .. } => &[],
            ScheduleStep::Controller { tail, .. } => tail,
        }
    }

    /// `λ₂` range for a given `λ₃`, bounded by the suffix-sum inequality.
    pub fn lambda2_range(&self, lambda3: usize) -> (usize, usize) {
        let (m, tail_sum) = match self {
            ScheduleStep::Bank { m, .. } => (*m, 0),
            ScheduleStep::Controller { m, tail, .. } => (*m, tail.iter().sum()),
        };
        let hi = lambda_upper_sum(2, m, tail_sum + lambda3).max(0) as usize;
        (lambda3 + 1, hi)
    }

    /// Every partition this step checks.
    pub fn covered(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        match self {
            ScheduleStep::Bank { m, lambda3_max, .. } => {
                let hi2 = lambda_upper_sum(2, *m, 0);
                for l2 in 1..=hi2.max(0) as usize {
                    out.push(Partition {
                        parts: vec![m - l2, l2],
                    });
                }
                for l3 in 1..=*lambda3_max {
                    let (lo, hi) = self.lambda2_range(l3);
                    for l2 in lo..=hi {
                        out.push(Partition {
                            parts: vec![m - l2 - l3, l2, l3],
                        });
                    }
                }
            }
            ScheduleStep::Controller {
                m,
                tail,
                lambda3_range: (lo3, hi3),
            } => {
                let tail_sum: usize = tail.iter().sum();
                for l3 in *lo3..=*hi3 {
                    let (lo, hi) = self.lambda2_range(l3);
                    for l2 in lo..=hi {
                        let mut parts = vec![m - tail_sum - l3 - l2, l2, l3];
                        parts.extend(tail.iter().rev());
                        out.push(Partition { parts });
                    }
                }
            }
        }
        out
    }
}

/// Step sequence for weight `m`: the `P ≤ 3` bank, then one controller step
/// per tail `(λ_P, …, λ₄)` for `P = 4, …, p_max`, tails in ascending
/// lexicographic order.
pub fn schedule_trace(m: usize, p_max: usize) -> Vec<ScheduleStep> {
    let mut steps = Vec::new();
    if m >= 3 && p_max >= 2 {
        let lambda3_max = if p_max >= 3 {
            lambda_upper_sum(3, m, 0).max(0) as usize
        } else {
            0
        };
        steps.push(ScheduleStep::Bank {
            m,
            lambda3_max,
            buses: lambda3_max + 1,
        });
    }
    for p in 4..=p_max {
        let mut tail = Vec::with_capacity(p - 3);
        push_tails(m, p, 1, 0, &mut tail, &mut steps);
    }
    steps
}

/// Recursively walks `λ_i` from `i = p` down to 4; `tail` holds `(λ_P, …, λ_{i+1})`.
fn push_tails(
    m: usize,
    i: usize,
    lo: usize,
    sum: usize,
    tail: &mut Vec<usize>,
    out: &mut Vec<ScheduleStep>,
) {
    if i < 4 {
        let lambda4 = *tail.last().expect("P ≥ 4 has a λ₄");
        let hi3 = lambda_upper_sum(3, m, sum).max(0) as usize;
        out.push(ScheduleStep::Controller {
            m,
            tail: tail.clone(),
            lambda3_range: (lambda4 + 1, hi3),
        });
        return;
    }
    let hi = lambda_upper_sum(i, m, sum);
    if hi < lo as i64 {
        return;
    }
    for v in lo..=hi as usize {
        tail.push(v);
        push_tails(m, i - 1, v + 1, sum + v, tail, out);
        tail.pop();
    }
}

/// Fixed pipeline overhead plus schedule steps, in clock cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleModel {
    pub overhead: u64,
}

/// Published worst case used to calibrate the overhead: `(n, LW_max, P_max, cycles)`.
pub const CALIBRATION_ANCHOR: (usize, usize, usize, u64) = (128, 64, 6, 4226);

/// Second published worst case, to be reproduced with the same overhead.
pub const VALIDATION_ANCHOR: (usize, usize, usize, u64) = (128, 96, 8, 93417);

impl CycleModel {
    /// Overhead fitted so that the calibration anchor is met exactly.
    pub fn calibrated() -> Self {
        let (_, lw, p, cycles) = CALIBRATION_ANCHOR;
        Self {
            overhead: cycles - schedule_step_sum(lw, p),
        }
    }

    /// `⌈log₂ n⌉` pipelined sorter stages, the first of which also performs the
    /// initial syndrome check, plus one step testing all weight-1 patterns.
    /// Matches [`calibrated`](Self::calibrated) at `n = 128`.
    pub fn for_length(n: usize) -> Self {
        Self {
            overhead: u64::from(usize::BITS - (n.max(1) - 1).leading_zeros()) + 1,
        }
    }

    pub fn worst_case(&self, lw_max: usize, p_max: usize) -> CycleBreakdown {
        let mut bank_steps = 0;
        let mut per: Vec<(usize, u64)> = (4..=p_max).map(|p| (p, 0)).collect();
        for m in 3..=lw_max {
            let ts = time_steps(m, p_max);
            bank_steps += ts.bank;
            for (slot, (_, s)) in per.iter_mut().zip(ts.per_part_count) {
                slot.1 += s;
            }
        }
        let step_total = bank_steps + per.iter().map(|(_, s)| s).sum::<u64>();
        CycleBreakdown {
            overhead: self.overhead,
            bank_steps,
            per_part_count: per,
            step_total,
            total: self.overhead + step_total,
        }
    }
}

/// Itemized worst-case cycle count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBreakdown {
    pub overhead: u64,
    /// Steps spent on the `P ≤ 3` bank, one per weight `m ∈ [3, LW_max]`.
    pub bank_steps: u64,
    /// Controller steps per part count `P ≥ 4`.
    pub per_part_count: Vec<(usize, u64)>,
    pub step_total: u64,
    pub total: u64,
}

/// Schedule steps needed to exhaust all weights `3..=lw_max`, without overhead.
pub fn schedule_step_sum(lw_max: usize, p_max: usize) -> u64 {
    (3..=lw_max).map(|m| time_steps(m, p_max).total).sum()
}

/// Worst-case decoding cycles using the calibrated overhead.
pub fn worst_case_cycles(_n: usize, lw_max: usize, p_max: usize) -> CycleBreakdown {
    CycleModel::calibrated().worst_case(lw_max, p_max)
}

/// Convenience: a `BigUint` count as `u64`, if it fits.
pub fn count_as_u64(c: &BigUint) -> Option<u64> {
    c.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(v: &[Partition]) -> Vec<Vec<usize>> {
        v.iter().map(|p| p.parts().to_vec()).collect()
    }

    #[test]
    fn upper_sum_bounds_at_weight_20() {
        assert_eq!(lambda_upper(3, 20, &[]).unwrap(), 5);
        assert_eq!(lambda_upper(5, 20, &[]).unwrap(), 2);
        assert_eq!(lambda_upper(4, 20, &[1]).unwrap(), 3);
        assert_eq!(lambda_upper(4, 20, &[2]).unwrap(), 3);
        assert_eq!(lambda_upper(3, 20, &[1]).unwrap(), 5);
        assert_eq!(lambda_upper(3, 20, &[3]).unwrap(), 4);
        assert!(lambda_upper(1, 20, &[]).is_err());
        assert!(lambda_upper(3, 20, &[1, 2]).is_err());
    }

    #[test]
    fn odd_weight_two_part_bound_is_ceiling() {
        // (7,6) ⊢ 13 is admitted: ⌈13/2⌉ − 1 = 6
        assert_eq!(lambda_upper_sum(2, 13, 0), 6);
        assert_eq!(lambda_upper_sum(2, 12, 0), 5);
    }

    #[test]
    fn weight_twelve_catalog() {
        let got = parts(&enumerate_partitions(12, usize::MAX, 128));
        let want: Vec<Vec<usize>> = vec![
            vec![12],
            vec![11, 1],
            vec![10, 2],
            vec![9, 3],
            vec![8, 4],
            vec![7, 5],
            vec![9, 2, 1],
            vec![8, 3, 1],
            vec![7, 4, 1],
            vec![6, 5, 1],
            vec![7, 3, 2],
            vec![6, 4, 2],
            vec![5, 4, 3],
            vec![6, 3, 2, 1],
            vec![5, 4, 2, 1],
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn trivial_weights() {
        assert_eq!(
            parts(&enumerate_partitions(0, 5, 10)),
            vec![Vec::<usize>::new()]
        );
        assert_eq!(parts(&enumerate_partitions(1, 5, 10)), vec![vec![1]]);
        assert_eq!(
            parts(&enumerate_partitions(3, 5, 10)),
            vec![vec![3], vec![2, 1]]
        );
        assert!(enumerate_partitions(4, 0, 10).is_empty());
        assert_eq!(
            parts(&enumerate_partitions(0, 0, 10)),
            vec![Vec::<usize>::new()]
        );
    }

    #[test]
    fn n_cap_filters_largest_part() {
        let got = parts(&enumerate_partitions(12, 3, 8));
        assert_eq!(got[0], vec![8, 4]);
        assert!(got.iter().all(|p| p[0] <= 8));
        assert_eq!(got.len(), 2 + 6);
    }

    #[test]
    fn counts_at_weight_twelve() {
        assert_eq!(count_partitions(12, 2, 128), BigUint::from(5u8));
        assert_eq!(count_partitions(12, 3, 128), BigUint::from(7u8));
        assert_eq!(count_partitions(12, 4, 128), BigUint::from(2u8));
        assert_eq!(count_partitions(12, 1, 128), BigUint::from(1u8));
        assert_eq!(count_partitions(12, 1, 11), BigUint::from(0u8));
        assert_eq!(count_partitions(0, 1, 11), BigUint::from(0u8));
    }

    #[test]
    fn zero_weight_budget_is_one_query() {
        assert_eq!(
            total_queries(16, 0, usize::MAX).unwrap(),
            BigUint::from(1u8)
        );
        assert!(total_queries(4, 11, 4).is_err());
        // every subset of 4 positions
        assert_eq!(
            total_queries(4, 10, usize::MAX).unwrap(),
            BigUint::from(16u8)
        );
    }

    #[test]
    fn time_steps_at_weight_20() {
        assert_eq!(suffix_steps(20, 4), 3);
        assert_eq!(suffix_steps(20, 5), 3);
        let ts = time_steps(20, 5);
        assert_eq!(ts.bank, 1);
        assert_eq!(ts.total, 7);
        assert_eq!(ts.steps_for(3), 1);
        assert_eq!(ts.steps_for(5), 3);
    }

    #[test]
    fn bank_for_weight_20() {
        let trace = schedule_trace(20, 4);
        assert_eq!(
            trace[0],
            ScheduleStep::Bank {
                m: 20,
                lambda3_max: 5,
                buses: 6
            }
        );
        let ranges: Vec<(Vec<usize>, (usize, usize))> = trace[1..]
            .iter()
            .map(|s| match s {
                ScheduleStep::Controller {
                    tail,
                    lambda3_range,
                    ..
                } => (tail.clone(), *lambda3_range),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(
            ranges,
            vec![(vec![1], (2, 5)), (vec![2], (3, 5)), (vec![3], (4, 4))]
        );
    }

    #[test]
    fn cursor_reports_controller_steps() {
        let mut cur = PartitionCursor::new(20, 4, 128);
        let mut seen = Vec::new();
        while let Some(p) = cur.advance() {
            if p.len() == 4 {
                seen.push((p[3], cur.step_index()));
            }
        }
        assert!(seen.iter().all(|&(l4, step)| l4 as u64 == step));
    }

    #[test]
    fn cycle_calibration() {
        let model = CycleModel::calibrated();
        assert_eq!(model.overhead, 8);
        assert_eq!(model, CycleModel::for_length(128));
        assert_eq!(model.worst_case(64, 6).total, 4226);
        assert_eq!(model.worst_case(96, 8).total, 93417);
        assert_eq!(schedule_step_sum(96, 8) - schedule_step_sum(64, 6), 89191);
        let b = model.worst_case(64, 6);
        assert_eq!(b.bank_steps, 62);
        assert_eq!(b.overhead + b.step_total, b.total);
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![3, 3]).is_err());
        assert!(Partition::new(vec![3, 0]).is_err());
        assert!(Partition::new(vec![1, 3]).is_err());
        let p = Partition::new(vec![5, 2]).unwrap();
        assert_eq!((p.weight(), p.len()), (7, 2));
        assert_eq!(p.to_string(), "(5,2)");
    }
}
