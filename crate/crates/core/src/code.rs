//! Linear block codes: construction, validation and matrix file I/O.
//!
//! Every constructor returns a [`LinearCode`] whose generator `G`, parity
//! check matrix `H` and right inverse `G⁻¹` satisfy `G·Hᵀ = 0`,
//! `G·G⁻¹ = I_k`, `rank(G) = k` and `rank(H) = n − k`.
//!
//! Codeword bit `j` (1-based) carries the coefficient of `x^(n−j)` whenever a
//! polynomial view is used, so the leftmost bit is the highest-degree term.
//!
//! # Matrix file format
//!
//! ```text
//! 3 7
//! 1011100
//! 0101110
//! 0010111
//! ```
//!
//! Line 1 holds `rows cols`; each subsequent line is one row of `0`/`1`
//! characters without separators.

use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::poly::Gf2Poly;

/// A validated `(n, k)` binary linear block code.
#[derive(Clone, Debug)]
pub struct LinearCode {
    name: String,
    g: BitMatrix,
    h: BitMatrix,
    g_inv: BitMatrix,
}

impl LinearCode {
    /// Bundles the three matrices after checking the code invariants.
    pub fn new(
        name: impl Into<String>,
        g: BitMatrix,
        h: BitMatrix,
        g_inv: BitMatrix,
    ) -> Result<Self> {
        let n = g.num_cols();
        let k = g.num_rows();
        if k == 0 || k >= n {
            return Err(Error::InvalidParameter(format!(
                "a linear code needs 0 < k < n, got n={n}, k={k}"
            )));
        }
        if h.num_cols() != n {
            return Err(Error::DimensionMismatch {
                context: "parity check columns",
                expected: n,
                found: h.num_cols(),
            });
        }
        if h.num_rows() != n - k {
            return Err(Error::DimensionMismatch {
                context: "parity check rows",
                expected: n - k,
                found: h.num_rows(),
            });
        }
        if g_inv.num_rows() != n || g_inv.num_cols() != k {
            return Err(Error::DimensionMismatch {
                context: "right inverse shape",
                expected: n * k,
                found: g_inv.num_rows() * g_inv.num_cols(),
            });
        }
        let rank_g = g.rank();
        if rank_g != k {
            return Err(Error::RankDeficient {
                rank: rank_g,
                required: k,
            });
        }
        let rank_h = h.rank();
        if rank_h != n - k {
            return Err(Error::RankDeficient {
                rank: rank_h,
                required: n - k,
            });
        }
        if !g.mul(&h.transpose())?.is_zero() {
            return Err(Error::InvalidParameter("G·Hᵀ is not zero".into()));
        }
        if g.mul(&g_inv)? != BitMatrix::identity(k) {
            return Err(Error::InvalidParameter("G·G⁻¹ is not the identity".into()));
        }
        Ok(Self {
            name: name.into(),
            g,
            h,
            g_inv,
        })
    }

    /// Derives `H` and `G⁻¹` from a full-row-rank generator.
    pub fn from_generator(name: impl Into<String>, g: BitMatrix) -> Result<Self> {
        let h = g.null_space_basis()?;
        let g_inv = g.right_inverse()?;
        Self::new(name, g, h, g_inv)
    }

    /// Derives `G` and `G⁻¹` from a full-row-rank parity check matrix.
    pub fn from_parity_check(name: impl Into<String>, h: BitMatrix) -> Result<Self> {
        let rank = h.rank();
        if rank != h.num_rows() {
            return Err(Error::RankDeficient {
                rank,
                required: h.num_rows(),
            });
        }
        let g = h.null_space_basis()?;
        let g_inv = g.right_inverse()?;
        Self::new(name, g, h, g_inv)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.g.num_cols()
    }

    pub fn k(&self) -> usize {
        self.g.num_rows()
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.n() as f64
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.g
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.h
    }

    pub fn right_inverse(&self) -> &BitMatrix {
        &self.g_inv
    }

    pub fn encode(&self, message: &BitVector) -> Result<BitVector> {
        self.g.vec_mul(message)
    }

    /// Message recovered from a codeword through `G⁻¹`.
    pub fn unencode(&self, codeword: &BitVector) -> Result<BitVector> {
        self.g_inv.vec_mul(codeword)
    }

    pub fn syndrome(&self, v: &BitVector) -> Result<BitVector> {
        self.h.mul_vec(v)
    }

    pub fn is_codeword(&self, v: &BitVector) -> Result<bool> {
        Ok(self.syndrome(v)?.is_zero())
    }
}

/// Bits of the remainder of `x^shift · a(x) mod g(x)` for a polynomial `a`.
fn shifted_remainder(a: &Gf2Poly, shift: usize, g: &Gf2Poly) -> Gf2Poly {
    a.mul(&Gf2Poly::monomial(shift)).rem(g)
}

fn crc_degree(n: usize, poly: &Gf2Poly) -> Result<usize> {
    let r = poly
        .degree()
        .ok_or_else(|| Error::InvalidPolynomial("zero generator polynomial".into()))?;
    if r == 0 || r >= n {
        return Err(Error::InvalidPolynomial(format!(
            "generator degree {r} must lie in 1..{n}"
        )));
    }
    if !poly.coeff(0) {
        return Err(Error::InvalidPolynomial(format!(
            "generator {poly} has no constant term"
        )));
    }
    Ok(r)
}

/// Systematic CRC code `c = [u | u(x)·x^(n−k) mod g(x)]` with `k = n − deg g`.
///
/// Pass CRC-notation polynomials through [`Gf2Poly::from_crc_hex`], which
/// restores the implicit leading term (`0xB2B117` has degree 24).
pub fn crc_code(n: usize, poly: &Gf2Poly) -> Result<LinearCode> {
    let r = crc_degree(n, poly)?;
    let k = n - r;
    let mut rows = Vec::with_capacity(k);
    for i in 1..=k {
        // message bit i is the coefficient of x^(k−i)
        let rem = shifted_remainder(&Gf2Poly::monomial(k - i), r, poly);
        let mut row = BitVector::unit(n, i);
        for d in 0..r {
            if rem.coeff(d) {
                row.set(n - d, true);
            }
        }
        rows.push(row);
    }
    let g = BitMatrix::from_rows(n, rows)?;
    let name = format!("CRC({n},{k}) {}", poly.to_hex());
    LinearCode::from_generator(name, g)
}

/// Cyclic code generated by `g(x)`, which must divide `x^n + 1`.
///
/// Row `i` of `G` is `x^(k−i)·g(x)`, i.e. the `i`-th cyclic shift of `g`.
pub fn cyclic_code(n: usize, genpoly: &Gf2Poly) -> Result<LinearCode> {
    let r = crc_degree(n, genpoly)?;
    let x_n_plus_1 = Gf2Poly::monomial(n).add(&Gf2Poly::monomial(0));
    if !genpoly.divides(&x_n_plus_1) {
        return Err(Error::InvalidPolynomial(format!(
            "{genpoly} does not divide x^{n} + 1"
        )));
    }
    let k = n - r;
    let mut rows = Vec::with_capacity(k);
    for i in 1..=k {
        let mut row = BitVector::zeros(n);
        for d in 0..=r {
            if genpoly.coeff(d) {
                row.set(r + i - d, true);
            }
        }
        rows.push(row);
    }
    let g = BitMatrix::from_rows(n, rows)?;
    LinearCode::from_generator(format!("Cyclic({n},{k}) {}", genpoly.to_hex()), g)
}

/// Random linear code `G = [I_k | A]` with `A` drawn from a seeded generator.
pub fn random_linear_code(n: usize, k: usize, seed: u64) -> Result<LinearCode> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "random linear code needs 0 < k < n, got n={n}, k={k}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = n - k;
    let mut g_rows = Vec::with_capacity(k);
    let mut a = BitMatrix::zeros(k, r);
    for i in 1..=k {
        let mut row = BitVector::unit(n, i);
        for j in 1..=r {
            if rng.random::<bool>() {
                row.set(k + j, true);
                a.set(i, j, true);
            }
        }
        g_rows.push(row);
    }
    let g = BitMatrix::from_rows(n, g_rows)?;
    let h = a.transpose().hstack(&BitMatrix::identity(r))?;
    let mut g_inv = BitMatrix::zeros(n, k);
    for i in 1..=k {
        g_inv.set(i, i, true);
    }
    LinearCode::new(format!("RLC({n},{k}) seed {seed}"), g, h, g_inv)
}

/// Row `i` (1-based) of the `log₂ n`-fold Kronecker power of `[[1,0],[1,1]]`.
pub fn polar_kernel_row(n: usize, i: usize) -> BitVector {
    let ii = i - 1;
    let mut row = BitVector::zeros(n);
    for j in 0..n {
        if j & !ii == 0 {
            row.set(j + 1, true);
        }
    }
    row
}

/// Polar code on the 1-based `info_set` rows of the Kronecker kernel.
///
/// With `crc_poly`, messages are first CRC-extended (systematic CRC over the
/// information positions) and the resulting code has dimension
/// `|info_set| − deg(crc)`.
pub fn polar_code(n: usize, info_set: &[usize], crc_poly: Option<&Gf2Poly>) -> Result<LinearCode> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "polar length must be a power of two ≥ 2, got {n}"
        )));
    }
    let mut info: Vec<usize> = info_set.to_vec();
    info.sort_unstable();
    info.dedup();
    if info.len() != info_set.len() {
        return Err(Error::InvalidParameter(
            "information set has duplicates".into(),
        ));
    }
    if let Some(&bad) = info.iter().find(|&&i| i == 0 || i > n) {
        return Err(Error::IndexOutOfRange { index: bad, len: n });
    }
    let rows: Vec<BitVector> = info.iter().map(|&i| polar_kernel_row(n, i)).collect();
    let inner = BitMatrix::from_rows(n, rows)?;
    let (g, name) = match crc_poly {
        None => (inner, format!("Polar({n},{})", info.len())),
        Some(crc) => {
            let outer = crc_code(info.len(), crc)?;
            let k = outer.k();
            let g = outer.generator().mul(&inner)?;
            (
                g,
                format!("Polar({n},{k}+{}) crc {}", info.len() - k, crc.to_hex()),
            )
        }
    };
    LinearCode::from_generator(name, g)
}

/// Writes `m` in the plain-text matrix format.
pub fn write_matrix<W: Write>(m: &BitMatrix, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", m.num_rows(), m.num_cols())?;
    for row in m.rows() {
        writeln!(out, "{row}")?;
    }
    Ok(())
}

pub fn read_matrix<R: Read>(input: R) -> Result<BitMatrix> {
    let reader = BufReader::new(input);
    let mut lines = reader.lines();
    let header = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing dimension header".into(),
    })??;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse {
            line: 1,
            message: format!("bad dimension header {header:?}: {e}"),
        })?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected \"rows cols\", found {header:?}"),
        });
    };
    let mut out = Vec::with_capacity(rows);
    for (idx, line) in lines.enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() && out.len() == rows {
            continue;
        }
        let row: BitVector = line.parse().map_err(|e| match e {
            Error::Parse { message, .. } => Error::Parse {
                line: idx + 2,
                message,
            },
            other => other,
        })?;
        if row.len() != cols {
            return Err(Error::Parse {
                line: idx + 2,
                message: format!("row has {} columns, header says {cols}", row.len()),
            });
        }
        out.push(row);
    }
    if out.len() != rows {
        return Err(Error::Parse {
            line: out.len() + 2,
            message: format!("found {} rows, header says {rows}", out.len()),
        });
    }
    BitMatrix::from_rows(cols, out)
}

pub fn save_matrix(m: &BitMatrix, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_matrix(m, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<BitMatrix> {
    read_matrix(fs::File::open(path)?)
}

/// Reads 1-based indices separated by whitespace or commas; `#` starts a comment.
pub fn parse_index_list(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        for tok in body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            out.push(tok.parse().map_err(|e| Error::Parse {
                line: ln + 1,
                message: format!("bad index {tok:?}: {e}"),
            })?);
        }
    }
    Ok(out)
}

pub fn load_index_list(path: impl AsRef<Path>) -> Result<Vec<usize>> {
    parse_index_list(&fs::read_to_string(path)?)
}

/// Source of a generator polynomial: inline hex or a file holding one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolySource {
    Hex(String),
    File(PathBuf),
}

impl PolySource {
    fn parse(s: &str) -> Self {
        match s.strip_prefix('@') {
            Some(path) => PolySource::File(PathBuf::from(path)),
            None => PolySource::Hex(s.to_string()),
        }
    }

    fn text(&self) -> Result<String> {
        match self {
            PolySource::Hex(h) => Ok(h.clone()),
            PolySource::File(p) => {
                let body = fs::read_to_string(p)?;
                body.lines()
                    .map(|l| l.split('#').next().unwrap_or("").trim())
                    .find(|l| !l.is_empty())
                    .map(str::to_string)
                    .ok_or_else(|| {
                        Error::InvalidPolynomial(format!("no polynomial in {}", p.display()))
                    })
            }
        }
    }
}

impl fmt::Display for PolySource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolySource::Hex(h) => f.write_str(h),
            PolySource::File(p) => write!(f, "@{}", p.display()),
        }
    }
}

/// Deterministic recipe for a [`LinearCode`].
///
/// Text form, as used by the harness configuration and CLI:
///
/// | form                               | meaning                                       |
/// |------------------------------------|-----------------------------------------------|
/// | `crc:N:HEX`                        | CRC code, `HEX` in CRC notation               |
/// | `cyclic:N:HEX` / `cyclic:N:@FILE`  | cyclic code, full generator polynomial in hex |
/// | `rlc:N:K:SEED`                     | random linear code                            |
/// | `polar:N:INFOFILE[:CRCHEX]`        | polar code, 1-based information set file      |
/// | `external:HFILE`                   | parity check matrix in the matrix format      |
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeSpec {
    Crc {
        n: usize,
        poly: String,
    },
    Cyclic {
        n: usize,
        genpoly: PolySource,
    },
    Rlc {
        n: usize,
        k: usize,
        seed: u64,
    },
    Polar {
        n: usize,
        info_set: PathBuf,
        crc: Option<String>,
    },
    External {
        path: PathBuf,
    },
}

impl CodeSpec {
    pub fn build(&self) -> Result<LinearCode> {
        match self {
            CodeSpec::Crc { n, poly } => crc_code(*n, &Gf2Poly::from_crc_hex(poly)?),
            CodeSpec::Cyclic { n, genpoly } => {
                cyclic_code(*n, &Gf2Poly::from_hex(&genpoly.text()?)?)
            }
            CodeSpec::Rlc { n, k, seed } => random_linear_code(*n, *k, *seed),
            CodeSpec::Polar { n, info_set, crc } => {
                let info = load_index_list(info_set)?;
                let crc = crc.as_deref().map(Gf2Poly::from_crc_hex).transpose()?;
                polar_code(*n, &info, crc.as_ref())
            }
            CodeSpec::External { path } => {
                let h = load_matrix(path)?;
                LinearCode::from_parity_check(format!("External({})", path.display()), h)
            }
        }
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSpec::Crc { n, poly } => write!(f, "crc:{n}:{poly}"),
            CodeSpec::Cyclic { n, genpoly } => write!(f, "cyclic:{n}:{genpoly}"),
            CodeSpec::Rlc { n, k, seed } => write!(f, "rlc:{n}:{k}:{seed}"),
            CodeSpec::Polar { n, info_set, crc } => {
                write!(f, "polar:{n}:{}", info_set.display())?;
                if let Some(c) = crc {
                    write!(f, ":{c}")?;
                }
                Ok(())
            }
            CodeSpec::External { path } => write!(f, "external:{}", path.display()),
        }
    }
}

impl FromStr for CodeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidParameter(format!("code spec {s:?}: {why}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let int = |t: &str| t.parse::<usize>().map_err(|e| bad(&e.to_string()));
        match parts.as_slice() {
            ["crc", n, poly] => Ok(CodeSpec::Crc {
                n: int(n)?,
                poly: poly.to_string(),
            }),
            ["cyclic", n, g] => Ok(CodeSpec::Cyclic {
                n: int(n)?,
                genpoly: PolySource::parse(g),
            }),
            ["rlc", n, k, seed] => Ok(CodeSpec::Rlc {
                n: int(n)?,
                k: int(k)?,
                seed: seed
                    .parse()
                    .map_err(|e: std::num::ParseIntError| bad(&e.to_string()))?,
            }),
            ["polar", n, info] => Ok(CodeSpec::Polar {
                n: int(n)?,
                info_set: PathBuf::from(info),
                crc: None,
            }),
            ["polar", n, info, crc] => Ok(CodeSpec::Polar {
                n: int(n)?,
                info_set: PathBuf::from(info),
                crc: Some(crc.to_string()),
            }),
            ["external", path] => Ok(CodeSpec::External {
                path: PathBuf::from(path),
            }),
            _ => Err(bad("unrecognized form")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::is_codeword;

    fn hamming74() -> LinearCode {
        cyclic_code(7, &Gf2Poly::from_hex("0xB").unwrap()).unwrap()
    }

    #[test]
    fn crc24_dimensions() {
        let code = crc_code(128, &Gf2Poly::from_crc_hex("0xB2B117").unwrap()).unwrap();
        assert_eq!((code.n(), code.k()), (128, 104));
        assert!((code.rate() - 104.0 / 128.0).abs() < 1e-12);
    }

    #[test]
    fn crc_zero_message() {
        let code = crc_code(16, &Gf2Poly::from_crc_hex("07").unwrap()).unwrap();
        assert!(code.encode(&BitVector::zeros(8)).unwrap().is_zero());
    }

    #[test]
    fn crc_degree_too_large() {
        let g = Gf2Poly::from_crc_hex("0xB2B117").unwrap();
        assert!(crc_code(24, &g).is_err());
        assert!(crc_code(20, &g).is_err());
    }

    #[test]
    fn single_parity_code() {
        let code = cyclic_code(7, &Gf2Poly::from_hex("0x3").unwrap()).unwrap();
        assert_eq!((code.n(), code.k()), (7, 6));
        let h = code.parity_check();
        assert_eq!(h.num_rows(), 1);
        assert_eq!(h.row(1).weight(), 7);
    }

    #[test]
    fn cyclic_rejects_non_divisor() {
        // x^3 + x^2 + x + 1 = (x+1)^3 does not divide x^7 + 1
        let g = Gf2Poly::from_hex("0xF").unwrap();
        assert!(matches!(
            cyclic_code(7, &g),
            Err(Error::InvalidPolynomial(_))
        ));
    }

    #[test]
    fn hamming_parity_check_gives_k4() {
        let h = hamming74().parity_check().clone();
        let code = LinearCode::from_parity_check("hamming", h).unwrap();
        assert_eq!(code.k(), 4);
    }

    #[test]
    fn rlc_is_deterministic() {
        let a = random_linear_code(32, 20, 7).unwrap();
        let b = random_linear_code(32, 20, 7).unwrap();
        let c = random_linear_code(32, 20, 8).unwrap();
        assert_eq!(a.generator(), b.generator());
        assert_ne!(a.generator(), c.generator());
    }

    #[test]
    fn rlc_128_104_rate() {
        let code = random_linear_code(128, 104, 1).unwrap();
        assert_eq!(code.k(), 104);
        assert_eq!(code.parity_check().num_rows(), 24);
    }

    #[test]
    fn polar_kernel_rows() {
        let c = polar_code(2, &[2], None);
        // k = 1 < n = 2 is a valid (2,1) repetition code
        let c = c.unwrap();
        assert_eq!(c.generator().row(1).to_string(), "11");
        let c = polar_code(4, &[4], None).unwrap();
        assert_eq!(c.generator().row(1).to_string(), "1111");
        assert_eq!(polar_kernel_row(4, 3).to_string(), "1010");
    }

    #[test]
    fn polar_rejects_bad_inputs() {
        assert!(polar_code(6, &[1], None).is_err());
        assert!(polar_code(8, &[9], None).is_err());
        assert!(polar_code(8, &[3, 3], None).is_err());
    }

    #[test]
    fn polar_with_crc_shrinks_dimension() {
        let info = [4, 6, 7, 8];
        let crc = Gf2Poly::from_hex("0x3").unwrap(); // single parity
        let code = polar_code(8, &info, Some(&crc)).unwrap();
        assert_eq!(code.k(), 3);
        for m in 0..8u32 {
            let u = BitVector::from_bits(&[(m & 4) != 0, (m & 2) != 0, (m & 1) != 0]);
            let c = code.encode(&u).unwrap();
            assert!(is_codeword(code.parity_check(), &c).unwrap());
            assert_eq!(code.unencode(&c).unwrap(), u);
        }
    }

    #[test]
    fn matrix_text_format_is_exact() {
        let m = BitMatrix::from_table(&[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let mut buf = Vec::new();
        write_matrix(&m, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "2 3\n101\n011\n");
        assert_eq!(read_matrix(&buf[..]).unwrap(), m);
    }

    #[test]
    fn matrix_reader_catches_header_mismatch() {
        assert!(matches!(
            read_matrix(&b"2 3\n101\n"[..]),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            read_matrix(&b"1 3\n1011\n"[..]),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_matrix(&b"1 3 4\n101\n"[..]),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_matrix(&b"1 3\n1a1\n"[..]),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(read_matrix(&b""[..]).is_err());
    }

    #[test]
    fn rank_deficient_parity_check_rejected() {
        let h = BitMatrix::from_table(&[vec![1, 1, 0, 0], vec![1, 1, 0, 0]]).unwrap();
        assert!(matches!(
            LinearCode::from_parity_check("bad", h),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn code_spec_round_trip() {
        for s in [
            "crc:128:0xB2B117",
            "cyclic:127:@data/bch.txt",
            "cyclic:7:0xB",
            "rlc:128:104:42",
            "polar:128:info.txt",
            "polar:128:info.txt:0x621",
            "external:h.txt",
        ] {
            let spec: CodeSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("crc:abc:0x1".parse::<CodeSpec>().is_err());
        assert!("bogus".parse::<CodeSpec>().is_err());
    }

    #[test]
    fn index_list_parsing() {
        assert_eq!(
            parse_index_list("1, 2 3\n# skip\n4 # tail\n").unwrap(),
            vec![1, 2, 3, 4]
        );
        assert!(parse_index_list("1 x").is_err());
    }
}
