//! BPSK over AWGN, LLR computation and fixed-point LLR quantization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Noise standard deviation for unit-energy BPSK at `Eb/N0` (dB) and code rate `k/n`.
pub fn sigma_from_ebn0(ebn0_db: f64, rate: f64) -> f64 {
    let ebn0 = 10f64.powf(ebn0_db / 10.0);
    (1.0 / (2.0 * rate * ebn0)).sqrt()
}

/// `y = (1 − 2c) + w`, `w ~ N(0, σ²)`.
pub fn transmit<R: Rng + ?Sized>(c: &BitVector, sigma: f64, rng: &mut R) -> Vec<f64> {
    let noise = Normal::new(0.0, sigma).expect("finite non-negative sigma");
    c.to_bits()
        .into_iter()
        .map(|b| if b { -1.0 } else { 1.0 } + noise.sample(rng))
        .collect()
}

/// `ℓ = 2y/σ²`.
pub fn llr(y: &[f64], sigma: f64) -> Result<Vec<f64>> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "noise sigma must be positive and finite, got {sigma}"
        )));
    }
    let scale = 2.0 / (sigma * sigma);
    Ok(y.iter().map(|v| v * scale).collect())
}

/// Signed fixed-point format with `total_bits` including the sign and
/// `frac_bits` fractional bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuantizerConfig {
    total_bits: u32,
    frac_bits: u32,
}

impl Default for QuantizerConfig {
    fn default() -> Self {
        Self {
            total_bits: 5,
            frac_bits: 3,
        }
    }
}

impl QuantizerConfig {
    pub fn new(total_bits: u32, frac_bits: u32) -> Result<Self> {
        if !(2..=32).contains(&total_bits) || frac_bits >= total_bits {
            return Err(Error::InvalidParameter(format!(
                "unsupported fixed-point format {total_bits}.{frac_bits}"
            )));
        }
        Ok(Self {
            total_bits,
            frac_bits,
        })
    }

    pub fn total_bits(&self) -> u32 {
        self.total_bits
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn step(&self) -> f64 {
        1.0 / f64::from(1u32 << self.frac_bits)
    }

    /// Largest representable magnitude.
    pub fn saturation(&self) -> f64 {
        let max_code = (1u64 << (self.total_bits - 1)) - 1;
        max_code as f64 * self.step()
    }

    /// Rounds half away from zero onto the grid, then saturates symmetrically.
    pub fn quantize_one(&self, v: f64) -> f64 {
        let step = self.step();
        let sat = self.saturation();
        ((v / step).round() * step).clamp(-sat, sat)
    }
}

pub fn quantize(llr: &[f64], q: &QuantizerConfig) -> Vec<f64> {
    llr.iter().map(|&v| q.quantize_one(v)).collect()
}

/// Channel operating point plus the RNG seed for its noise stream.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    pub rate: f64,
    pub seed: u64,
}

impl ChannelConfig {
    pub fn new(ebn0_db: f64, rate: f64, seed: u64) -> Result<Self> {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "code rate {rate} outside (0, 1]"
            )));
        }
        if !ebn0_db.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Eb/N0 {ebn0_db} is not finite"
            )));
        }
        Ok(Self {
            ebn0_db,
            rate,
            seed,
        })
    }

    pub fn sigma(&self) -> f64 {
        sigma_from_ebn0(self.ebn0_db, self.rate)
    }

    /// Independent stream for frame `index`, identical however frames are
    /// distributed across workers.
    pub fn frame_rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(self.seed, self.ebn0_db.to_bits()));
        rng.set_stream(index);
        rng
    }
}

/// splitmix64 finaliser over the two inputs.
fn mix_seed(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.rotate_left(32) ^ 0x9E37_79B9_7F4A_7C15;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_at_zero_db_rate_half() {
        assert!((sigma_from_ebn0(0.0, 0.5) - 1.0).abs() < 1e-12);
        assert!(sigma_from_ebn0(3.0, 0.5) < 1.0);
    }

    #[test]
    fn llr_scaling_and_sign() {
        let l = llr(&[1.0, -0.5], 1.0).unwrap();
        assert_eq!(l, vec![2.0, -1.0]);
        assert!(llr(&[1.0], 0.0).is_err());
    }

    #[test]
    fn quantizer_default_grid() {
        let q = QuantizerConfig::default();
        assert_eq!(q.step(), 0.125);
        assert_eq!(q.saturation(), 1.875);
        assert_eq!(q.quantize_one(0.0625), 0.125);
        assert_eq!(q.quantize_one(-0.0625), -0.125);
        assert_eq!(q.quantize_one(0.05), 0.0);
        assert_eq!(q.quantize_one(9.0), 1.875);
        assert_eq!(q.quantize_one(-9.0), -1.875);
        assert!(QuantizerConfig::new(3, 3).is_err());
    }

    #[test]
    fn frame_streams_reproducible_and_distinct() {
        let ch = ChannelConfig::new(4.0, 0.5, 7).unwrap();
        let a: u64 = ch.frame_rng(3).random();
        let b: u64 = ch.frame_rng(3).random();
        let c: u64 = ch.frame_rng(4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let other = ChannelConfig::new(4.5, 0.5, 7).unwrap();
        assert_ne!(a, other.frame_rng(3).random::<u64>());
    }

    #[test]
    fn noiseless_limit_matches_bpsk() {
        let c = BitVector::from_bits(&[true, false, true]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let y = transmit(&c, 1e-9, &mut rng);
        assert!((y[0] + 1.0).abs() < 1e-6 && (y[1] - 1.0).abs() < 1e-6);
    }
}
