//! GRANDAB and ORBGRAND noise-guessing decoders.
//!
//! Both decoders test error patterns `e` one at a time by checking
//! `H·(ŷ ⊕ e)ᵀ = 0`. The check is done incrementally: the syndrome of `ŷ` is
//! computed once and each pattern XORs in the precomputed syndromes of its
//! one bits. `queries` counts every such membership test, including `e = 0`.
//!
//! `modeled_cycles` is an independent cost estimate from the hardware
//! schedule model in [`crate::partition`]; it does not influence decoding.

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::partition::{max_logistic_weight, time_steps, CycleModel, Partition, PartitionCursor};

/// LLR sign convention: positive favours bit 0. Zero maps to 0.
pub fn hard_decision(llr: &[f64]) -> BitVector {
    let mut v = BitVector::zeros(llr.len());
    for (i, &l) in llr.iter().enumerate() {
        if l < 0.0 {
            v.set(i + 1, true);
        }
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SortSource {
    Full,
    Segmented(usize),
}

/// Reliability ranking: `perm[j]` is the 1-based original index of the
/// `(j+1)`-th least reliable bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortPermutation {
    perm: Vec<usize>,
    source: SortSource,
}

impl SortPermutation {
    /// Wraps an explicit ranking after checking it is a permutation of `1..=n`.
    pub fn from_indices(perm: Vec<usize>, source: SortSource) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n + 1];
        for &p in &perm {
            if p == 0 || p > n || seen[p] {
                return Err(Error::InvalidParameter(format!(
                    "{perm:?} is not a permutation of 1..={n}"
                )));
            }
            seen[p] = true;
        }
        Ok(Self { perm, source })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Original index at 1-based rank `r`.
    pub fn at(&self, rank: usize) -> usize {
        self.perm[rank - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn source(&self) -> SortSource {
        self.source
    }

    /// Inverse map: 1-based rank of each original index (index 0 unused).
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.perm.len() + 1];
        for (j, &p) in self.perm.iter().enumerate() {
            r[p] = j + 1;
        }
        r
    }
}

fn stable_ascending(values: &[f64], indices: &mut [usize]) {
    // sort_by is stable, so equal magnitudes keep ascending index order
    indices.sort_by(|&a, &b| values[a - 1].total_cmp(&values[b - 1]));
}

/// Ascending stable sort of reliabilities, ties by ascending index.
pub fn rank_reliabilities(abs_llr: &[f64]) -> SortPermutation {
    let mut perm: Vec<usize> = (1..=abs_llr.len()).collect();
    stable_ascending(abs_llr, &mut perm);
    SortPermutation {
        perm,
        source: SortSource::Full,
    }
}

/// `S` independent sorts of contiguous `n/S` blocks, interleaved round-robin:
/// output rank `(r−1)·S + s` holds the `r`-th least reliable bit of block `s`.
pub fn segmented_rank(abs_llr: &[f64], segments: usize) -> Result<SortPermutation> {
    let n = abs_llr.len();
    if segments == 0 || !n.is_multiple_of(segments) {
        return Err(Error::InvalidParameter(format!(
            "{segments} segments do not divide length {n}"
        )));
    }
    if segments == 1 {
        return Ok(rank_reliabilities(abs_llr));
    }
    let block = n / segments;
    let sorted_blocks: Vec<Vec<usize>> = (0..segments)
        .map(|s| {
            let mut idx: Vec<usize> = (s * block + 1..=(s + 1) * block).collect();
            stable_ascending(abs_llr, &mut idx);
            idx
        })
        .collect();
    let mut perm = Vec::with_capacity(n);
    for r in 0..block {
        for blk in &sorted_blocks {
            perm.push(blk[r]);
        }
    }
    Ok(SortPermutation {
        perm,
        source: SortSource::Segmented(segments),
    })
}

/// Bit positions flipped by partition `parts` under ranking `perm`:
/// `{perm[λᵢ]}`.
pub fn pattern_positions(parts: &[usize], perm: &SortPermutation) -> Result<Vec<usize>> {
    parts
        .iter()
        .map(|&l| {
            if l == 0 || l > perm.len() {
                Err(Error::IndexOutOfRange {
                    index: l,
                    len: perm.len(),
                })
            } else {
                Ok(perm.at(l))
            }
        })
        .collect()
}

/// Same as [`pattern_positions`] for a [`Partition`].
pub fn partition_positions(p: &Partition, perm: &SortPermutation) -> Result<Vec<usize>> {
    pattern_positions(p.parts(), perm)
}

/// Result of one decoding attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub codeword: BitVector,
    pub message: BitVector,
    pub noise: BitVector,
    pub queries: u64,
    pub modeled_cycles: u64,
    pub abandoned: bool,
}

/// Column syndromes `s_j = H·𝟙_jᵀ`, packed for fast XOR accumulation.
#[derive(Clone, Debug)]
struct SyndromeTable {
    words: usize,
    data: Vec<u64>,
}

impl SyndromeTable {
    fn new(code: &LinearCode) -> Self {
        let ht = code.parity_check().transpose();
        let words = code.parity_check().num_rows().div_ceil(64).max(1);
        let mut data = Vec::with_capacity(words * code.n());
        for col in ht.rows() {
            let w = col.words();
            data.extend((0..words).map(|i| w.get(i).copied().unwrap_or(0)));
        }
        Self { words, data }
    }

    fn column(&self, j: usize) -> &[u64] {
        &self.data[(j - 1) * self.words..j * self.words]
    }

    /// Column syndromes reordered by rank: entry `r` is `s_{perm[r]}`.
    fn permuted(&self, perm: &SortPermutation, out: &mut Vec<u64>) {
        out.clear();
        for &p in perm.as_slice() {
            out.extend_from_slice(self.column(p));
        }
    }

    fn syndrome_words(&self, code: &LinearCode, v: &BitVector) -> Vec<u64> {
        let s = code.syndrome(v).expect("length checked by caller");
        let mut w = s.words().to_vec();
        w.resize(self.words, 0);
        w
    }
}

/// `s ⊕ ⊕_{j ∈ positions} table[j−1] == 0`, with 1-based positions.
#[inline]
fn restores_codeword(s: &[u64], table: &[u64], words: usize, positions: &[usize]) -> bool {
    for w in 0..words {
        let mut acc = s[w];
        for &p in positions {
            acc ^= table[(p - 1) * words + w];
        }
        if acc != 0 {
            return false;
        }
    }
    true
}

fn finish(
    code: &LinearCode,
    hard: &BitVector,
    flips: &[usize],
    queries: u64,
    cycles: u64,
) -> DecodeOutcome {
    let mut noise = BitVector::zeros(hard.len());
    for &p in flips {
        noise.set(p, true);
    }
    let codeword = hard.xor(&noise).expect("same length");
    let message = code.unencode(&codeword).expect("length n");
    DecodeOutcome {
        codeword,
        message,
        noise,
        queries,
        modeled_cycles: cycles,
        abandoned: false,
    }
}

fn abandon(code: &LinearCode, hard: &BitVector, queries: u64, cycles: u64) -> DecodeOutcome {
    DecodeOutcome {
        codeword: hard.clone(),
        message: code.unencode(hard).expect("length n"),
        noise: BitVector::zeros(hard.len()),
        queries,
        modeled_cycles: cycles,
        abandoned: true,
    }
}

fn check_len(code: &LinearCode, len: usize) -> Result<()> {
    if len != code.n() {
        return Err(Error::DimensionMismatch {
            context: "received frame length",
            expected: code.n(),
            found: len,
        });
    }
    Ok(())
}

/// ORBGRAND search limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbgrandParams {
    /// Largest logistic weight tested.
    pub lw_max: usize,
    /// Largest Hamming weight tested.
    pub p_max: usize,
    /// Reliability sorter segments; 1 is a full sort.
    pub segments: usize,
}

impl OrbgrandParams {
    pub fn new(lw_max: usize, p_max: usize) -> Self {
        Self {
            lw_max,
            p_max,
            segments: 1,
        }
    }

    pub fn with_segments(mut self, segments: usize) -> Self {
        self.segments = segments;
        self
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.lw_max > max_logistic_weight(n) {
            return Err(Error::InvalidParameter(format!(
                "LWmax {} exceeds n(n+1)/2 = {}",
                self.lw_max,
                max_logistic_weight(n)
            )));
        }
        if self.p_max > n {
            return Err(Error::InvalidParameter(format!(
                "Pmax {} exceeds n = {n}",
                self.p_max
            )));
        }
        if self.segments == 0 || !n.is_multiple_of(self.segments) {
            return Err(Error::InvalidParameter(format!(
                "{} sorter segments do not divide n = {n}",
                self.segments
            )));
        }
        Ok(())
    }
}

/// Per-weight schedule offsets, built lazily as the search reaches each weight.
#[derive(Clone, Debug, Default)]
struct ScheduleCosts {
    /// `before[m]`: steps for all weights `3..m`.
    before: Vec<u64>,
    /// `offsets[m][P]`: steps inside weight `m` that precede part count `P`.
    offsets: Vec<Vec<u64>>,
}

impl ScheduleCosts {
    fn ensure(&mut self, m: usize, p_max: usize) {
        if self.before.is_empty() {
            self.before.push(0);
        }
        while self.offsets.len() <= m {
            let w = self.offsets.len();
            let ts = time_steps(w, p_max);
            let mut off = vec![0u64; p_max.max(3) + 1];
            let mut acc = ts.bank;
            for (p, slot) in off.iter_mut().enumerate().skip(4) {
                *slot = acc;
                acc += ts.steps_for(p);
            }
            self.offsets.push(off);
            let last = *self.before.last().unwrap();
            self.before.push(last.saturating_add(ts.total));
        }
    }
}

/// Reusable ORBGRAND decoder bound to one code.
#[derive(Clone, Debug)]
pub struct OrbgrandDecoder<'c> {
    code: &'c LinearCode,
    params: OrbgrandParams,
    table: SyndromeTable,
    sorted: Vec<u64>,
    cycles: CycleModel,
    costs: ScheduleCosts,
    flips: Vec<usize>,
}

impl<'c> OrbgrandDecoder<'c> {
    pub fn new(code: &'c LinearCode, params: OrbgrandParams) -> Result<Self> {
        params.validate(code.n())?;
        Ok(Self {
            code,
            params,
            table: SyndromeTable::new(code),
            sorted: Vec::new(),
            cycles: CycleModel::for_length(code.n()),
            costs: ScheduleCosts::default(),
            flips: Vec::with_capacity(params.p_max),
        })
    }

    pub fn params(&self) -> OrbgrandParams {
        self.params
    }

    pub fn code(&self) -> &LinearCode {
        self.code
    }

    /// Ranking used for `llr` under the configured sorter.
    pub fn rank(&self, llr: &[f64]) -> Result<SortPermutation> {
        let abs: Vec<f64> = llr.iter().map(|l| l.abs()).collect();
        segmented_rank(&abs, self.params.segments)
    }

    pub fn decode(&mut self, llr: &[f64]) -> Result<DecodeOutcome> {
        check_len(self.code, llr.len())?;
        let perm = self.rank(llr)?;
        self.decode_with_permutation(llr, &perm)
    }

    /// Decodes with an externally supplied reliability ranking.
    pub fn decode_with_permutation(
        &mut self,
        llr: &[f64],
        perm: &SortPermutation,
    ) -> Result<DecodeOutcome> {
        let code = self.code;
        check_len(code, llr.len())?;
        if perm.len() != code.n() {
            return Err(Error::DimensionMismatch {
                context: "reliability permutation length",
                expected: code.n(),
                found: perm.len(),
            });
        }
        let hard = hard_decision(llr);
        let s = self.table.syndrome_words(code, &hard);
        let words = self.table.words;
        let mut queries = 1u64;
        if s.iter().all(|&w| w == 0) {
            return Ok(finish(code, &hard, &[], queries, 1));
        }
        self.table.permuted(perm, &mut self.sorted);
        let OrbgrandParams { lw_max, p_max, .. } = self.params;
        let n = code.n();
        for m in 1..=lw_max {
            let mut cursor = PartitionCursor::new(m, p_max, n);
            while let Some(parts) = cursor.advance() {
                queries += 1;
                if restores_codeword(&s, &self.sorted, words, parts) {
                    let p = parts.len();
                    self.flips.clear();
                    self.flips.extend(parts.iter().map(|&l| perm.at(l)));
                    let cycles = self.hit_cycles(m, p, cursor.step_index());
                    return Ok(finish(code, &hard, &self.flips, queries, cycles));
                }
            }
        }
        let cycles = self.abandon_cycles();
        Ok(abandon(code, &hard, queries, cycles))
    }

    fn hit_cycles(&mut self, m: usize, p: usize, step: u64) -> u64 {
        let base = self.cycles.overhead;
        if p <= 1 {
            return base;
        }
        let p_max = self.params.p_max;
        self.costs.ensure(m, p_max);
        let within = if p <= 3 {
            1
        } else {
            self.costs.offsets[m][p] + step
        };
        base + self.costs.before[m] + within
    }

    fn abandon_cycles(&mut self) -> u64 {
        let lw = self.params.lw_max;
        self.costs.ensure(lw, self.params.p_max);
        self.cycles.overhead + self.costs.before[lw + 1]
    }
}

/// One-shot ORBGRAND decode.
pub fn orbgrand_decode(
    llr: &[f64],
    code: &LinearCode,
    params: OrbgrandParams,
) -> Result<DecodeOutcome> {
    OrbgrandDecoder::new(code, params)?.decode(llr)
}

/// Reusable GRANDAB decoder: hard input, patterns by increasing Hamming
/// weight up to `ab`, ascending lexicographic positions within a weight.
///
/// Modeled cycles assume one step for the initial check and then `n`
/// patterns per step.
#[derive(Clone, Debug)]
pub struct GrandabDecoder<'c> {
    code: &'c LinearCode,
    ab: usize,
    table: SyndromeTable,
}

impl<'c> GrandabDecoder<'c> {
    pub fn new(code: &'c LinearCode, ab: usize) -> Result<Self> {
        if ab > code.n() {
            return Err(Error::InvalidParameter(format!(
                "abandonment weight {ab} exceeds n = {}",
                code.n()
            )));
        }
        Ok(Self {
            code,
            ab,
            table: SyndromeTable::new(code),
        })
    }

    pub fn abandonment_weight(&self) -> usize {
        self.ab
    }

    fn cycles(&self, queries: u64) -> u64 {
        1 + (queries - 1).div_ceil(self.code.n() as u64)
    }

    pub fn decode(&self, hard: &BitVector) -> Result<DecodeOutcome> {
        let code = self.code;
        check_len(code, hard.len())?;
        let n = code.n();
        let s = self.table.syndrome_words(code, hard);
        let words = self.table.words;
        let mut queries = 1u64;
        if s.iter().all(|&w| w == 0) {
            return Ok(finish(code, hard, &[], queries, 1));
        }
        let mut combo: Vec<usize> = Vec::with_capacity(self.ab);
        for w in 1..=self.ab {
            combo.clear();
            combo.extend(1..=w);
            loop {
                queries += 1;
                if restores_codeword(&s, &self.table.data, words, &combo) {
                    return Ok(finish(code, hard, &combo, queries, self.cycles(queries)));
                }
                if !next_combination(&mut combo, n) {
                    break;
                }
            }
        }
        Ok(abandon(code, hard, queries, self.cycles(queries)))
    }
}

/// Advances a strictly increasing 1-based combination over `1..=n` in
/// lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let w = c.len();
    for i in (0..w).rev() {
        if c[i] < n - (w - 1 - i) {
            c[i] += 1;
            for j in i + 1..w {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// One-shot GRANDAB decode.
pub fn grandab_decode(hard: &BitVector, code: &LinearCode, ab: usize) -> Result<DecodeOutcome> {
    GrandabDecoder::new(code, ab)?.decode(hard)
}
