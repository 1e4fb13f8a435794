//! CSV dumps of the partition engine: enumerations, query counts, cycle
//! counts and throughput.

use std::fmt::Write as _;

use num_bigint::BigUint;
use orbgrand_core::partition::{
    enumerate_partitions, max_logistic_weight, time_steps, CycleModel, PartitionCounts,
};

use crate::error::{config_err, Result};

/// Every distinct partition of `m` in test order, one per row.
pub fn partitions_audit(m: usize, p_max: usize, n_cap: usize) -> String {
    let mut s = String::from("index,weight,parts,hamming_weight\n");
    for (i, p) in enumerate_partitions(m, p_max, n_cap).iter().enumerate() {
        let parts: Vec<String> = p.parts().iter().map(usize::to_string).collect();
        let _ = writeln!(s, "{},{m},{},{}", i + 1, parts.join(" "), p.len());
    }
    s
}

/// Exact query counts per logistic weight with running totals.
pub fn queries_audit(n: usize, lw_max: usize, p_max: usize) -> Result<(String, BigUint)> {
    if lw_max > max_logistic_weight(n) {
        return Err(config_err(
            "lwmax",
            format!("exceeds n(n+1)/2 = {}", max_logistic_weight(n)),
        ));
    }
    let counts = PartitionCounts::new(lw_max, p_max, n);
    let mut s = String::from("logistic_weight,patterns,cumulative_queries\n");
    let mut total = BigUint::from(0u8);
    for m in 0..=lw_max {
        let c = counts.count_weight(m, p_max);
        total += &c;
        let _ = writeln!(s, "{m},{c},{total}");
    }
    Ok((s, total))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThroughputReport {
    pub k: usize,
    pub freq_mhz: f64,
    pub latency_cycles: f64,
    pub latency_ns: f64,
    pub throughput_gbps: f64,
}

pub fn throughput_report(k: usize, freq_mhz: f64, latency_cycles: f64) -> Result<ThroughputReport> {
    if k == 0
        || freq_mhz.is_nan()
        || freq_mhz <= 0.0
        || latency_cycles.is_nan()
        || latency_cycles <= 0.0
    {
        return Err(config_err(
            "throughput",
            "k, frequency and latency must be positive",
        ));
    }
    let latency_ns = latency_cycles / freq_mhz * 1e3;
    Ok(ThroughputReport {
        k,
        freq_mhz,
        latency_cycles,
        latency_ns,
        throughput_gbps: throughput_gbps(k, latency_ns),
    })
}

/// Information throughput for a latency already expressed in nanoseconds.
pub fn throughput_gbps(k: usize, latency_ns: f64) -> f64 {
    k as f64 / latency_ns
}

/// Per-weight schedule steps and the worst-case latency curve: row `m`
/// gives the worst case for `LWmax = m`.
pub fn cycles_audit(
    n: usize,
    lw_max: usize,
    p_max: usize,
    k: usize,
    freq_mhz: f64,
) -> Result<(String, u64)> {
    if lw_max > max_logistic_weight(n) {
        return Err(config_err(
            "lwmax",
            format!("exceeds n(n+1)/2 = {}", max_logistic_weight(n)),
        ));
    }
    let model = CycleModel::for_length(n);
    let mut s = String::from("logistic_weight,bank_steps");
    for p in 4..=p_max {
        let _ = write!(s, ",steps_p{p}");
    }
    s.push_str(",weight_steps,worst_case_cycles,latency_ns,throughput_gbps\n");
    let mut cycles = model.overhead;
    for m in 3..=lw_max {
        let ts = time_steps(m, p_max);
        cycles += ts.total;
        let _ = write!(s, "{m},{}", ts.bank);
        for (_, steps) in &ts.per_part_count {
            let _ = write!(s, ",{steps}");
        }
        let r = throughput_report(k.max(1), freq_mhz, cycles as f64)?;
        let _ = writeln!(
            s,
            ",{},{cycles},{},{}",
            ts.total, r.latency_ns, r.throughput_gbps
        );
    }
    Ok((s, cycles))
}
