//! Monte-Carlo frame error rate and complexity estimation.

use std::fmt::Write as _;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use orbgrand_core::channel::{llr, quantize, transmit, ChannelConfig};
use orbgrand_core::{hard_decision, BitVector, GrandabDecoder, LinearCode, OrbgrandDecoder};
use rand::Rng;
use rayon::prelude::*;

use crate::config::{DecoderKind, SimConfig};
use crate::error::{HarnessError, Result};

pub const CSV_VERSION_LINE: &str = "# orbgrand-fer-csv v1";
pub const CSV_HEADER: &str =
    "ebn0_db,frames,frame_errors,fer,ber,avg_queries,max_queries,avg_cycles,abandon_rate,censored";

#[derive(Clone, Debug, PartialEq)]
pub struct FerRow {
    pub ebn0_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub fer: f64,
    pub ber: f64,
    pub avg_queries: f64,
    pub max_queries: u64,
    pub avg_cycles: f64,
    pub abandon_rate: f64,
    pub censored: bool,
    /// Standard error of `avg_queries`; not part of the CSV.
    pub queries_sem: Option<f64>,
}

impl FerRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.ebn0_db,
            self.frames,
            self.frame_errors,
            self.fer,
            self.ber,
            self.avg_queries,
            self.max_queries,
            self.avg_cycles,
            self.abandon_rate,
            u8::from(self.censored)
        )
    }

    pub fn parse_csv(line: &str, line_no: usize) -> Result<Self> {
        let err = |message: String| HarnessError::Csv {
            line: line_no,
            message,
        };
        let f: Vec<&str> = line.trim().split(',').collect();
        if f.len() != 10 {
            return Err(err(format!("expected 10 fields, found {}", f.len())));
        }
        fn num<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
            s.parse().map_err(|_| HarnessError::Csv {
                line,
                message: format!("bad number {s:?}"),
            })
        }
        let censored = match f[9] {
            "0" => false,
            "1" => true,
            other => return Err(err(format!("bad censored flag {other:?}"))),
        };
        Ok(Self {
            ebn0_db: num(f[0], line_no)?,
            frames: num(f[1], line_no)?,
            frame_errors: num(f[2], line_no)?,
            fer: num(f[3], line_no)?,
            ber: num(f[4], line_no)?,
            avg_queries: num(f[5], line_no)?,
            max_queries: num(f[6], line_no)?,
            avg_cycles: num(f[7], line_no)?,
            abandon_rate: num(f[8], line_no)?,
            censored,
            queries_sem: None,
        })
    }

    /// Binomial standard error of the FER estimate.
    pub fn fer_std_err(&self) -> f64 {
        (self.fer * (1.0 - self.fer) / self.frames as f64).sqrt()
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct FrameResult {
    frame_error: bool,
    bit_errors: u32,
    queries: u64,
    cycles: u64,
    abandoned: bool,
}

#[derive(Clone, Debug, Default)]
struct Accumulator {
    frames: u64,
    frame_errors: u64,
    bit_errors: u64,
    queries: u128,
    queries_sq: f64,
    max_queries: u64,
    cycles: u128,
    abandoned: u64,
}

impl Accumulator {
    fn push(&mut self, r: &FrameResult) {
        self.frames += 1;
        self.frame_errors += u64::from(r.frame_error);
        self.bit_errors += u64::from(r.bit_errors);
        self.queries += u128::from(r.queries);
        self.queries_sq += (r.queries as f64).powi(2);
        self.max_queries = self.max_queries.max(r.queries);
        self.cycles += u128::from(r.cycles);
        self.abandoned += u64::from(r.abandoned);
    }

    fn row(&self, ebn0_db: f64, k: usize, min_errors: u64) -> FerRow {
        let n = self.frames.max(1) as f64;
        let mean = self.queries as f64 / n;
        let var = (self.queries_sq / n - mean * mean).max(0.0);
        FerRow {
            ebn0_db,
            frames: self.frames,
            frame_errors: self.frame_errors,
            fer: self.frame_errors as f64 / n,
            ber: self.bit_errors as f64 / (n * k as f64),
            avg_queries: mean,
            max_queries: self.max_queries,
            avg_cycles: self.cycles as f64 / n,
            abandon_rate: self.abandoned as f64 / n,
            censored: self.frame_errors < min_errors,
            queries_sem: Some((var / n).sqrt()),
        }
    }
}

enum Worker<'c> {
    Orb(OrbgrandDecoder<'c>),
    Ab(GrandabDecoder<'c>),
}

impl<'c> Worker<'c> {
    fn new(code: &'c LinearCode, kind: DecoderKind) -> Self {
        match kind {
            DecoderKind::Orbgrand(p) => {
                Worker::Orb(OrbgrandDecoder::new(code, p).expect("validated"))
            }
            DecoderKind::Grandab { ab } => {
                Worker::Ab(GrandabDecoder::new(code, ab).expect("validated"))
            }
        }
    }

    fn run_frame(
        &mut self,
        code: &LinearCode,
        cfg: &SimConfig,
        channel: &ChannelConfig,
        index: u64,
    ) -> FrameResult {
        let mut rng = channel.frame_rng(index);
        let bits: Vec<bool> = (0..code.k()).map(|_| rng.random()).collect();
        let u = BitVector::from_bits(&bits);
        let c = code.encode(&u).expect("length k");
        let sigma = channel.sigma();
        let y = transmit(&c, sigma, &mut rng);
        let mut l = llr(&y, sigma).expect("positive sigma");
        if let Some(q) = &cfg.quantizer {
            l = quantize(&l, q);
        }
        let out = match self {
            Worker::Orb(d) => d.decode(&l),
            Worker::Ab(d) => d.decode(&hard_decision(&l)),
        }
        .expect("frame length matches code");
        let diff = out.message.xor(&u).expect("length k");
        FrameResult {
            frame_error: !diff.is_zero(),
            bit_errors: diff.weight() as u32,
            queries: out.queries,
            cycles: out.modeled_cycles,
            abandoned: out.abandoned,
        }
    }
}

fn validate(cfg: &SimConfig, code: &LinearCode) -> Result<()> {
    match cfg.decoder {
        DecoderKind::Orbgrand(p) => {
            OrbgrandDecoder::new(code, p)?;
        }
        DecoderKind::Grandab { ab } => {
            GrandabDecoder::new(code, ab)?;
        }
    }
    Ok(())
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()?)
}

/// Simulates one operating point.
///
/// Frames are evaluated in parallel batches but accumulated in frame order,
/// stopping exactly at the frame that meets the stop rule, so the row is
/// identical for any worker count.
pub fn run_fer_point(cfg: &SimConfig, code: &LinearCode, ebn0_db: f64) -> Result<FerRow> {
    validate(cfg, code)?;
    let channel = ChannelConfig::new(ebn0_db, code.rate(), cfg.seed)?;
    let pool = pool(cfg.workers)?;
    let mut acc = Accumulator::default();
    let mut batch = 1024u64;
    let mut next = 0u64;
    'outer: while next < cfg.max_frames {
        let end = (next + batch).min(cfg.max_frames);
        let results: Vec<FrameResult> = pool.install(|| {
            (next..end)
                .into_par_iter()
                .map_init(
                    || Worker::new(code, cfg.decoder),
                    |w, i| w.run_frame(code, cfg, &channel, i),
                )
                .collect()
        });
        for r in &results {
            acc.push(r);
            if acc.frame_errors >= cfg.min_errors {
                break 'outer;
            }
        }
        next = end;
        batch = (batch * 2).min(1 << 18);
    }
    Ok(acc.row(ebn0_db, code.k(), cfg.min_errors))
}

/// Reads the rows of an existing sweep file; `None` if the file is absent.
pub fn read_csv(path: &Path) -> Result<Option<Vec<FerRow>>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut rows = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        match i {
            0 if line != CSV_VERSION_LINE => {
                return Err(HarnessError::Csv {
                    line: 1,
                    message: format!("expected {CSV_VERSION_LINE:?}"),
                })
            }
            1 if line != CSV_HEADER => {
                return Err(HarnessError::Csv {
                    line: 2,
                    message: "header mismatch".into(),
                })
            }
            0 | 1 => {}
            _ if line.trim().is_empty() => {}
            _ => rows.push(FerRow::parse_csv(&line, i + 1)?),
        }
    }
    Ok(Some(rows))
}

pub fn csv_text(rows: &[FerRow]) -> String {
    let mut s = format!("{CSV_VERSION_LINE}\n{CSV_HEADER}\n");
    for r in rows {
        let _ = writeln!(s, "{}", r.to_csv());
    }
    s
}

/// Runs every sweep point, skipping points already present in `cfg.out` and
/// appending each new row as soon as it completes. Returns all rows in sweep order.
pub fn run_sweep(cfg: &SimConfig) -> Result<Vec<FerRow>> {
    let code = cfg.code.build()?;
    validate(cfg, &code)?;
    let existing = match &cfg.out {
        Some(p) => read_csv(p)?,
        None => None,
    };
    let mut out_file = match &cfg.out {
        Some(p) => {
            let mut f = OpenOptions::new().create(true).append(true).open(p)?;
            if existing.is_none() {
                write!(f, "{CSV_VERSION_LINE}\n{CSV_HEADER}\n")?;
            }
            Some(f)
        }
        None => None,
    };
    let done = existing.unwrap_or_default();
    let mut rows = Vec::with_capacity(cfg.ebn0_db.len());
    for &e in &cfg.ebn0_db {
        if let Some(r) = done.iter().find(|r| r.ebn0_db == e) {
            rows.push(r.clone());
            continue;
        }
        let row = run_fer_point(cfg, &code, e)?;
        if let Some(f) = out_file.as_mut() {
            writeln!(f, "{}", row.to_csv())?;
            f.flush()?;
        }
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Fer,
    AvgQueries,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub metric: Metric,
    pub from_db: f64,
    pub to_db: f64,
    /// Increase measured in combined standard errors.
    pub sigmas: f64,
}

/// Pairs of consecutive points (by Eb/N0) where FER or average queries rise
/// by more than three combined standard errors.
pub fn monotonicity_violations(rows: &[FerRow]) -> Vec<Violation> {
    let mut sorted: Vec<&FerRow> = rows.iter().collect();
    sorted.sort_by(|a, b| a.ebn0_db.total_cmp(&b.ebn0_db));
    let mut out = Vec::new();
    for w in sorted.windows(2) {
        let (a, b) = (w[0], w[1]);
        let checks = [
            (
                Metric::Fer,
                a.fer,
                b.fer,
                a.fer_std_err().hypot(b.fer_std_err()),
            ),
            (
                Metric::AvgQueries,
                a.avg_queries,
                b.avg_queries,
                a.queries_sem
                    .unwrap_or(0.0)
                    .hypot(b.queries_sem.unwrap_or(0.0)),
            ),
        ];
        for (metric, lo, hi, se) in checks {
            let rise = hi - lo;
            if rise > 3.0 * se && rise > 0.0 {
                out.push(Violation {
                    metric,
                    from_db: a.ebn0_db,
                    to_db: b.ebn0_db,
                    sigmas: if se > 0.0 { rise / se } else { f64::INFINITY },
                });
            }
        }
    }
    out
}

/// Eb/N0 at which the FER curve crosses `target`, by linear interpolation of
/// `log10(FER)` between the bracketing points.
pub fn snr_at_fer(rows: &[FerRow], target: f64) -> Option<f64> {
    let mut pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.fer > 0.0)
        .map(|r| (r.ebn0_db, r.fer))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let t = target.log10();
    pts.windows(2).find_map(|w| {
        let ((x0, f0), (x1, f1)) = (w[0], w[1]);
        let (y0, y1) = (f0.log10(), f1.log10());
        if y0 >= t && t >= y1 && y0 != y1 {
            Some(x0 + (t - y0) / (y1 - y0) * (x1 - x0))
        } else {
            None
        }
    })
}
