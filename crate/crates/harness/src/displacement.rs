//! How far a segmented sorter moves each element relative to a full sort.

use std::fmt::Write as _;

use orbgrand_core::{rank_reliabilities, segmented_rank};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;

pub const THRESHOLDS: [usize; 8] = [0, 1, 2, 3, 5, 10, 20, 30];
pub const DEFAULT_TRIALS: u64 = 100_000;

#[derive(Clone, Debug, PartialEq)]
pub struct DisplacementTable {
    pub n: usize,
    pub segments: usize,
    pub trials: u64,
    /// Cumulative percentage of elements displaced by at most each threshold.
    pub cumulative_pct: [f64; THRESHOLDS.len()],
}

impl DisplacementTable {
    pub fn at(&self, threshold: usize) -> Option<f64> {
        THRESHOLDS
            .iter()
            .position(|&t| t == threshold)
            .map(|i| self.cumulative_pct[i])
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,segments,trials,threshold,cumulative_pct\n");
        for (t, p) in THRESHOLDS.iter().zip(self.cumulative_pct) {
            let _ = writeln!(s, "{},{},{},{t},{p}", self.n, self.segments, self.trials);
        }
        s
    }
}

/// Histogram of `|segmented position − full position|` over `trials` frames of
/// i.i.d. uniform reliabilities. Ranks are distribution free, so the uniform
/// choice loses nothing.
pub fn displacement_study(
    n: usize,
    segments: usize,
    trials: u64,
    seed: u64,
) -> Result<DisplacementTable> {
    // validates divisibility up front
    segmented_rank(&vec![0.0; n], segments)?;
    let hist = (0..trials)
        .into_par_iter()
        .fold(
            || vec![0u64; n],
            |mut h, t| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(t);
                let v: Vec<f64> = (0..n).map(|_| rng.random()).collect();
                let full = rank_reliabilities(&v).ranks();
                let seg = segmented_rank(&v, segments).expect("checked").ranks();
                for i in 1..=n {
                    h[full[i].abs_diff(seg[i])] += 1;
                }
                h
            },
        )
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let total = (trials * n as u64).max(1) as f64;
    let mut cumulative_pct = [0.0; THRESHOLDS.len()];
    for (slot, &t) in cumulative_pct.iter_mut().zip(&THRESHOLDS) {
        let c: u64 = hist.iter().take(t + 1).sum();
        *slot = 100.0 * c as f64 / total;
    }
    Ok(DisplacementTable {
        n,
        segments,
        trials,
        cumulative_pct,
    })
}
