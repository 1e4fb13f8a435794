//! Simulation configuration: flat `key = value` files plus overrides.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use orbgrand_core::channel::QuantizerConfig;
use orbgrand_core::{CodeSpec, OrbgrandParams};

use crate::error::{config_err, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecoderKind {
    Orbgrand(OrbgrandParams),
    Grandab { ab: usize },
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoderKind::Orbgrand(p) => write!(
                f,
                "orbgrand(lw={},p={},s={})",
                p.lw_max, p.p_max, p.segments
            ),
            DecoderKind::Grandab { ab } => write!(f, "grandab(ab={ab})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub code: CodeSpec,
    pub decoder: DecoderKind,
    pub ebn0_db: Vec<f64>,
    pub min_errors: u64,
    pub max_frames: u64,
    pub seed: u64,
    /// 0 lets the thread pool pick.
    pub workers: usize,
    pub quantizer: Option<QuantizerConfig>,
    pub out: Option<PathBuf>,
}

pub const KEYS: &[&str] = &[
    "code",
    "decoder",
    "lwmax",
    "pmax",
    "segments",
    "ab",
    "ebn0",
    "min_errors",
    "max_frames",
    "seed",
    "workers",
    "quantize",
    "quant_bits",
    "quant_frac",
    "out",
];

/// Unvalidated key/value settings. Later `set` calls win.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawConfig {
    values: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn new() -> Self {
        Self::default()
    }

    /// `key = value` lines; `#` starts a comment; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw = Self::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| config_err(line, format!("line {} is not key = value", i + 1)))?;
            raw.set(k.trim(), v.trim())?;
        }
        Ok(raw)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        let key = key.replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(config_err(&key, "unknown key"));
        }
        self.values.insert(key, value.into());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Overlays `other` on top of `self`.
    pub fn merge(&mut self, other: &RawConfig) {
        for (k, v) in &other.values {
            self.values.insert(k.clone(), v.clone());
        }
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|e: T::Err| config_err(key, e.to_string())),
        }
    }

    pub fn build(&self) -> Result<SimConfig> {
        let code: CodeSpec = self
            .get("code")
            .ok_or_else(|| config_err("code", "missing"))?
            .parse()
            .map_err(|e: orbgrand_core::Error| config_err("code", e.to_string()))?;
        let decoder = match self.get("decoder").unwrap_or("orbgrand") {
            "orbgrand" => DecoderKind::Orbgrand(OrbgrandParams {
                lw_max: self.parsed("lwmax", 64)?,
                p_max: self.parsed("pmax", 6)?,
                segments: self.parsed("segments", 1)?,
            }),
            "grandab" => DecoderKind::Grandab {
                ab: self.parsed("ab", 3)?,
            },
            other => {
                return Err(config_err(
                    "decoder",
                    format!("{other:?} is not orbgrand or grandab"),
                ))
            }
        };
        let ebn0_db = parse_ebn0_list(
            self.get("ebn0")
                .ok_or_else(|| config_err("ebn0", "missing"))?,
        )?;
        let min_errors: u64 = self.parsed("min_errors", 100)?;
        let max_frames: u64 = self.parsed("max_frames", 10_000_000)?;
        if min_errors == 0 || max_frames == 0 {
            return Err(config_err("min_errors", "stop rule must be positive"));
        }
        let quantizer = if parse_bool("quantize", self.get("quantize").unwrap_or("false"))? {
            let total = self.parsed("quant_bits", 5)?;
            let frac = self.parsed("quant_frac", 3)?;
            Some(
                QuantizerConfig::new(total, frac)
                    .map_err(|e| config_err("quant_bits", e.to_string()))?,
            )
        } else {
            None
        };
        Ok(SimConfig {
            code,
            decoder,
            ebn0_db,
            min_errors,
            max_frames,
            seed: self.parsed("seed", 1)?,
            workers: self.parsed("workers", 0)?,
            quantizer,
            out: self.get("out").map(PathBuf::from),
        })
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(config_err(key, format!("{v:?} is not a boolean"))),
    }
}

/// Comma-separated values and/or `start:step:stop` ranges (inclusive).
pub fn parse_ebn0_list(s: &str) -> Result<Vec<f64>> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| config_err("ebn0", format!("{t:?} is not a number")))
    };
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let fields: Vec<&str> = item.split(':').collect();
        match fields.as_slice() {
            [v] => out.push(num(v)?),
            [a, step, b] => {
                let (a, step, b) = (num(a)?, num(step)?, num(b)?);
                if step <= 0.0 || b < a {
                    return Err(config_err("ebn0", format!("bad range {item:?}")));
                }
                let count = ((b - a) / step + 1e-9).floor() as usize;
                // recompute each point from the start to avoid accumulated drift
                out.extend((0..=count).map(|i| ((a + i as f64 * step) * 1e9).round() / 1e9));
            }
            _ => return Err(config_err("ebn0", format!("bad item {item:?}"))),
        }
    }
    if out.is_empty() {
        return Err(config_err("ebn0", "sweep is empty"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_override() {
        let mut raw = RawConfig::parse(
            "code = crc:128:B2B117\n# comment\ndecoder=grandab\nab = 2\nebn0 = 4:0.5:5\n",
        )
        .unwrap();
        let mut cli = RawConfig::new();
        cli.set("ab", "3").unwrap();
        cli.set("min-errors", "7").unwrap();
        raw.merge(&cli);
        let cfg = raw.build().unwrap();
        assert_eq!(cfg.decoder, DecoderKind::Grandab { ab: 3 });
        assert_eq!(cfg.ebn0_db, vec![4.0, 4.5, 5.0]);
        assert_eq!(cfg.min_errors, 7);
        assert_eq!(cfg.quantizer, None);
    }

    #[test]
    fn defaults_and_quantizer() {
        let raw = RawConfig::parse("code=rlc:32:16:1\nebn0=3\nquantize=on\n").unwrap();
        let cfg = raw.build().unwrap();
        assert_eq!(
            cfg.decoder,
            DecoderKind::Orbgrand(OrbgrandParams::new(64, 6))
        );
        assert_eq!(cfg.min_errors, 100);
        assert_eq!(cfg.quantizer, Some(QuantizerConfig::default()));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RawConfig::parse("nonsense").is_err());
        assert!(RawConfig::parse("colour = blue").is_err());
        assert!(RawConfig::parse("code=crc:16:07").unwrap().build().is_err());
        assert!(RawConfig::parse("code=crc:16:07\nebn0=1\nmin_errors=0")
            .unwrap()
            .build()
            .is_err());
        assert!(RawConfig::parse("code=crc:16:07\nebn0=1\ndecoder=ml")
            .unwrap()
            .build()
            .is_err());
        assert!(parse_ebn0_list("").is_err());
        assert!(parse_ebn0_list("5:0.5:4").is_err());
    }

    #[test]
    fn mixed_sweep_list() {
        assert_eq!(
            parse_ebn0_list("1, 2:0.25:2.5, 7").unwrap(),
            vec![1.0, 2.0, 2.25, 2.5, 7.0]
        );
        assert_eq!(parse_ebn0_list("0:0.1:0.3").unwrap().len(), 4);
    }
}
