use std::collections::BTreeSet;

use num_bigint::BigUint;
use orbgrand_core::partition::{
    count_partitions, enumerate_partitions, lambda_upper, schedule_trace, suffix_steps, time_steps,
    total_queries, PartitionCounts, PartitionCursor, ScheduleStep,
};
use proptest::prelude::*;

/// Every set of distinct positive integers summing to `m`, each at most `cap`,
/// as descending vectors, by plain subset recursion.
fn brute_force(m: usize, cap: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for v in (1..=max.min(rem)).rev() {
            cur.push(v);
            rec(rem - v, v - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        rec(m, cap, &mut Vec::new(), &mut out);
    }
    out
}

/// Canonical order: fewer parts first, then lexicographic on (λ_P, …, λ₂).
fn canonical(mut v: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    v.sort_by_key(|p| (p.len(), p[1..].iter().rev().copied().collect::<Vec<_>>()));
    v
}

fn to_lists(v: &[orbgrand_core::Partition]) -> Vec<Vec<usize>> {
    v.iter().map(|p| p.parts().to_vec()).collect()
}

#[test]
fn enumeration_matches_brute_force_in_canonical_order() {
    for m in 1..=40 {
        for p_max in [1, 2, 3, 4, 6, 9] {
            for cap in [m, 12, 7] {
                let expected = canonical(
                    brute_force(m, cap)
                        .into_iter()
                        .filter(|p| p.len() <= p_max)
                        .collect(),
                );
                let got = to_lists(&enumerate_partitions(m, p_max, cap));
                assert_eq!(got, expected, "m={m} P≤{p_max} cap={cap}");
            }
        }
    }
}

#[test]
fn enumeration_complete_up_to_sixty() {
    for m in 41..=60 {
        let all = brute_force(m, m);
        let got = enumerate_partitions(m, m, m);
        assert_eq!(got.len(), all.len(), "m={m}");
        let set: BTreeSet<Vec<usize>> = to_lists(&got).into_iter().collect();
        assert_eq!(set, all.into_iter().collect::<BTreeSet<_>>());
    }
}

#[test]
fn dp_counts_agree_with_enumeration() {
    let counts = PartitionCounts::new(60, 12, 20);
    for m in 0..=60 {
        for p in 1..=12 {
            let enumerated = brute_force(m, 20).iter().filter(|x| x.len() == p).count();
            assert_eq!(counts.count(m, p), BigUint::from(enumerated), "m={m} P={p}");
            assert_eq!(count_partitions(m, p, 20), BigUint::from(enumerated));
        }
    }
}

#[test]
fn query_totals_equal_summed_enumerations() {
    for (n, lw, p) in [(16, 40, 5), (10, 55, 10), (32, 30, 3), (8, 20, 8)] {
        let by_enum: usize = 1
            + (1..=lw)
                .map(|m| enumerate_partitions(m, p, n).len())
                .sum::<usize>();
        assert_eq!(total_queries(n, lw, p).unwrap(), BigUint::from(by_enum));
    }
    // LWmax = n(n+1)/2 and no part bound reaches every subset
    assert_eq!(total_queries(12, 78, 12).unwrap(), BigUint::from(4096u32));
    assert_eq!(
        total_queries(128, 8256, 128).unwrap(),
        BigUint::from(1u8) << 128
    );
}

#[test]
fn upper_sum_bound_is_tight() {
    for m in 1..=45 {
        for p in brute_force(m, m) {
            // every λ_i respects its bound for i ≥ 2
            for i in 2..=p.len() {
                let suffix: Vec<usize> = p[i..].to_vec();
                let bound = lambda_upper(i, m, &suffix).unwrap();
                assert!(p[i - 1] as i64 <= bound, "{p:?} λ{i}");
            }
        }
        // and each bound value is attained by some partition
        for i in 2..=9 {
            let mut attained = std::collections::BTreeMap::<Vec<usize>, usize>::new();
            for p in brute_force(m, m).into_iter().filter(|p| p.len() >= i) {
                let e = attained.entry(p[i..].to_vec()).or_insert(0);
                *e = (*e).max(p[i - 1]);
            }
            for (suffix, best) in attained {
                assert_eq!(
                    lambda_upper(i, m, &suffix).unwrap(),
                    best as i64,
                    "m={m} i={i} {suffix:?}"
                );
            }
        }
    }
}

#[test]
fn schedule_covers_each_pattern_exactly_once() {
    for m in 3..=36 {
        for p_max in [2, 3, 4, 5, 7] {
            let mut seen = Vec::new();
            for step in schedule_trace(m, p_max) {
                seen.extend(to_lists(&step.covered()));
            }
            let expected: Vec<Vec<usize>> = brute_force(m, m)
                .into_iter()
                .filter(|p| (2..=p_max).contains(&p.len()))
                .collect();
            assert_eq!(seen.len(), expected.len(), "m={m}");
            let set: BTreeSet<Vec<usize>> = seen.into_iter().collect();
            assert_eq!(set, expected.into_iter().collect::<BTreeSet<_>>());
        }
    }
}

#[test]
fn step_counts_equal_distinct_tails() {
    for m in 3..=50 {
        for p in 4..=8 {
            let tails: BTreeSet<Vec<usize>> = brute_force(m, m)
                .into_iter()
                .filter(|x| x.len() == p)
                .map(|x| x[3..].to_vec())
                .collect();
            assert_eq!(suffix_steps(m, p), tails.len() as u64, "m={m} P={p}");
            assert_eq!(time_steps(m, 8).steps_for(p), tails.len() as u64);
        }
        let controller = schedule_trace(m, 8)
            .iter()
            .filter(|s| matches!(s, ScheduleStep::Controller { .. }))
            .count();
        assert_eq!(controller as u64 + 1, time_steps(m, 8).total);
    }
}

#[test]
fn cursor_step_index_tracks_tail_changes() {
    for m in 10..=30 {
        let mut cursor = PartitionCursor::new(m, 6, m);
        let mut last: Option<(usize, Vec<usize>, u64)> = None;
        while let Some(parts) = cursor.advance() {
            let (p, tail, step) = (
                parts.len(),
                parts[3.min(parts.len())..].to_vec(),
                cursor.step_index(),
            );
            if let Some((lp, ltail, lstep)) = &last {
                if p == *lp && p >= 4 {
                    assert_eq!(step, lstep + u64::from(tail != *ltail));
                } else if p != *lp {
                    assert_eq!(step, 1);
                }
            }
            last = Some((p, tail, step));
        }
    }
}

proptest! {
    #[test]
    fn partitions_are_distinct_and_sum(m in 0usize..120, p_max in 0usize..10, cap in 1usize..130) {
        for p in PartitionCursor::new(m, p_max, cap) {
            prop_assert_eq!(p.weight(), m);
            prop_assert!(p.len() <= p_max || m == 0);
            prop_assert!(p.parts().windows(2).all(|w| w[0] > w[1]));
            prop_assert!(p.parts().iter().all(|&x| x >= 1 && x <= cap));
        }
    }
}
