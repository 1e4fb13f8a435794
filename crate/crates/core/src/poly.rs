//! Dense binary polynomials, used to describe CRC and cyclic generator polynomials.

use std::fmt;

use crate::error::{Error, Result};

/// A polynomial over GF(2); `coeffs[d]` is the coefficient of `x^d`.
///
/// Trailing zero coefficients are trimmed, so `coeffs.last()` (when present)
/// is always `true` and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    coeffs: Vec<bool>,
}

impl Gf2Poly {
    pub fn from_coeffs(mut coeffs: Vec<bool>) -> Self {
        while coeffs.last() == Some(&false) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// `x^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![false; d + 1];
        coeffs[d] = true;
        Self { coeffs }
    }

    /// Parses a full polynomial written in hex, most significant nibble first
    /// (`0xB` is `x³ + x + 1`). The `0x` prefix is optional.
    pub fn from_hex(s: &str) -> Result<Self> {
        let digits = strip_hex_prefix(s);
        let mut coeffs = Vec::with_capacity(digits.len() * 4);
        for ch in digits.chars().rev() {
            let nibble = ch.to_digit(16).ok_or_else(|| {
                Error::InvalidPolynomial(format!("bad hex digit {ch:?} in {s:?}"))
            })?;
            for b in 0..4 {
                coeffs.push((nibble >> b) & 1 == 1);
            }
        }
        if digits.is_empty() {
            return Err(Error::InvalidPolynomial(format!("empty polynomial {s:?}")));
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// Parses CRC notation: the hex digits are the low-order coefficients and
    /// the leading `x^(4·digits)` term is implicit. `0xB2B117` therefore has
    /// degree 24 and `0x07` is `x⁸ + x² + x + 1`.
    pub fn from_crc_hex(s: &str) -> Result<Self> {
        let digits = strip_hex_prefix(s);
        let low = Self::from_hex(s)?;
        let degree = digits.len() * 4;
        let mut coeffs = low.coeffs;
        coeffs.resize(degree + 1, false);
        coeffs[degree] = true;
        Ok(Self { coeffs })
    }

    /// Parses a `0`/`1` string, highest-degree coefficient first.
    pub fn from_bit_string(s: &str) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(s.len());
        for ch in s.chars().rev() {
            match ch {
                '0' => coeffs.push(false),
                '1' => coeffs.push(true),
                _ => return Err(Error::InvalidPolynomial(format!("bad bit {ch:?} in {s:?}"))),
            }
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, d: usize) -> bool {
        self.coeffs.get(d).copied().unwrap_or(false)
    }

    pub fn coeffs(&self) -> &[bool] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![false; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a {
                for (j, &b) in other.coeffs.iter().enumerate() {
                    out[i + j] ^= b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..len).map(|d| self.coeff(d) ^ other.coeff(d)).collect())
    }

    /// Remainder of `self` divided by `divisor`. Panics on a zero divisor.
    pub fn rem(&self, divisor: &Gf2Poly) -> Gf2Poly {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            if r[top] {
                let shift = top - dd;
                for (j, &b) in divisor.coeffs.iter().enumerate() {
                    r[shift + j] ^= b;
                }
            }
            r.pop();
        }
        Self::from_coeffs(r)
    }

    pub fn divides(&self, other: &Gf2Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Hex rendering of the full polynomial, most significant nibble first.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0x0".to_string();
        }
        let nibbles = self.coeffs.len().div_ceil(4);
        let mut s = String::from("0x");
        for n in (0..nibbles).rev() {
            let v = (0..4).fold(0u32, |acc, b| acc | (u32::from(self.coeff(4 * n + b)) << b));
            s.push(char::from_digit(v, 16).unwrap().to_ascii_uppercase());
        }
        s
    }
}

fn strip_hex_prefix(s: &str) -> &str {
    let t = s.trim();
    t.strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t)
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({})", self.to_hex())
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crc_notation_adds_leading_term() {
        let g = Gf2Poly::from_crc_hex("0xB2B117").unwrap();
        assert_eq!(g.degree(), Some(24));
        assert!(g.coeff(0));
        let g8 = Gf2Poly::from_crc_hex("07").unwrap();
        assert_eq!(g8, Gf2Poly::from_hex("0x107").unwrap());
    }

    #[test]
    fn hamming_generator_divides_x7_plus_1() {
        let g = Gf2Poly::from_hex("0xB").unwrap();
        assert_eq!(g.degree(), Some(3));
        let x7p1 = Gf2Poly::monomial(7).add(&Gf2Poly::monomial(0));
        assert!(g.divides(&x7p1));
        assert!(!Gf2Poly::from_hex("0xD").unwrap().rem(&g).is_zero());
    }

    #[test]
    fn mul_then_rem_vanishes() {
        let a = Gf2Poly::from_bit_string("110101").unwrap();
        let b = Gf2Poly::from_bit_string("1011").unwrap();
        assert!(b.divides(&a.mul(&b)));
        assert_eq!(a.mul(&b).degree(), Some(8));
    }

    #[test]
    fn hex_round_trip() {
        for s in ["0xB", "0x1B2B117", "0x107", "0x1"] {
            assert_eq!(Gf2Poly::from_hex(s).unwrap().to_hex(), s);
        }
        assert!(Gf2Poly::from_hex("0xZ1").is_err());
    }
}
