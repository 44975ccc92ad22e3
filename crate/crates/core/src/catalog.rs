//! Named codes: the small explicit inputs used by the corpus and the
//! command line.
//!
//! Classical names: `rep3`, `rep5`, `repN`, `hamming7`,
//! `random:n=K:seed=S`. CSS names: `css422`, `dup:<classical>`,
//! `gauge:<classical>`, `nested:n=N:seed=S`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::codes::CssCode;
use crate::constructions::{duplicate_css, random_nested_css, sample_matrix, SAMPLING_ATTEMPTS};
use crate::f2::BinaryMatrix;
use crate::homology::gauge_fixed_duplicate;
use crate::{Error, Result};

/// Bidiagonal `(n-1) x n` checks of the length-`n` repetition code.
pub fn repetition(n: usize) -> BinaryMatrix {
    let mut h = BinaryMatrix::zeros(n.saturating_sub(1), n);
    for i in 0..n.saturating_sub(1) {
        h.set(i, i, true);
        h.set(i, i + 1, true);
    }
    h
}

/// Checks of the [7,4,3] Hamming code; column `j` is `j + 1` in binary.
pub fn hamming7() -> BinaryMatrix {
    "0001111;0110011;1010101".parse().expect("literal matrix")
}

/// `max(1, n/2) x n` uniform checks, resampled until no column is zero and
/// `1 <= rank < n`, so the code is nontrivial and every bit is checked.
pub fn random_code(n: usize, seed: u64) -> Result<BinaryMatrix> {
    if n < 2 {
        return Err(Error::BadParameter(format!("random codes need n >= 2, got {n}")));
    }
    let m = (n / 2).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..SAMPLING_ATTEMPTS * 16)
        .map(|_| sample_matrix(m, n, &mut rng))
        .find(|h| {
            let rank = h.rank();
            rank >= 1 && rank < n && h.col_weights().iter().all(|&w| w > 0)
        })
        .ok_or(Error::SamplingFailed(SAMPLING_ATTEMPTS * 16))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NamedCode {
    Repetition(usize),
    Hamming7,
    Random { n: usize, seed: u64 },
}

impl NamedCode {
    pub fn checks(&self) -> Result<BinaryMatrix> {
        match *self {
            NamedCode::Repetition(n) => Ok(repetition(n)),
            NamedCode::Hamming7 => Ok(hamming7()),
            NamedCode::Random { n, seed } => random_code(n, seed),
        }
    }
}

impl fmt::Display for NamedCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedCode::Repetition(n) => write!(f, "rep{n}"),
            NamedCode::Hamming7 => f.write_str("hamming7"),
            NamedCode::Random { n, seed } => write!(f, "random:n={n}:seed={seed}"),
        }
    }
}

fn bad(s: &str) -> Error {
    Error::BadParameter(format!("unknown code name {s:?}"))
}

/// Parses `key=value` fields separated by `:` in the given key order.
fn keyed<const N: usize>(s: &str, keys: [&str; N]) -> Option<[u64; N]> {
    let mut out = [0u64; N];
    let mut parts = s.split(':');
    for (slot, key) in out.iter_mut().zip(keys) {
        let (k, v) = parts.next()?.split_once('=')?;
        if k != key {
            return None;
        }
        *slot = v.parse().ok()?;
    }
    parts.next().is_none().then_some(out)
}

impl FromStr for NamedCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "hamming7" {
            return Ok(NamedCode::Hamming7);
        }
        if let Some(n) = s.strip_prefix("rep") {
            let n: usize = n.parse().map_err(|_| bad(s))?;
            if n < 2 {
                return Err(Error::BadParameter(format!("repetition length must be >= 2 in {s:?}")));
            }
            return Ok(NamedCode::Repetition(n));
        }
        if let Some(rest) = s.strip_prefix("random:") {
            let [n, seed] = keyed(rest, ["n", "seed"]).ok_or_else(|| bad(s))?;
            if n < 2 {
                return Err(Error::BadParameter(format!("random codes need n >= 2 in {s:?}")));
            }
            return Ok(NamedCode::Random {
                n: n as usize,
                seed,
            });
        }
        Err(bad(s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NamedCss {
    /// `css([1111], [1111])`, the [[4,2,2]] code.
    Css422,
    Duplicate(NamedCode),
    Gauge(NamedCode),
    Nested { n: usize, seed: u64 },
}

impl NamedCss {
    pub fn code(&self) -> Result<CssCode> {
        match *self {
            NamedCss::Css422 => {
                let row = BinaryMatrix::from_rows(4, &[[1u8, 1, 1, 1]])?;
                CssCode::new(row.clone(), row)
            }
            NamedCss::Duplicate(c) => Ok(duplicate_css(&c.checks()?)),
            NamedCss::Gauge(c) => Ok(gauge_fixed_duplicate(&c.checks()?)),
            NamedCss::Nested { n, seed } => random_nested_css(n, seed),
        }
    }
}

impl fmt::Display for NamedCss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedCss::Css422 => f.write_str("css422"),
            NamedCss::Duplicate(c) => write!(f, "dup:{c}"),
            NamedCss::Gauge(c) => write!(f, "gauge:{c}"),
            NamedCss::Nested { n, seed } => write!(f, "nested:n={n}:seed={seed}"),
        }
    }
}

impl FromStr for NamedCss {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "css422" {
            return Ok(NamedCss::Css422);
        }
        if let Some(rest) = s.strip_prefix("dup:") {
            return Ok(NamedCss::Duplicate(rest.parse()?));
        }
        if let Some(rest) = s.strip_prefix("gauge:") {
            return Ok(NamedCss::Gauge(rest.parse()?));
        }
        if let Some(rest) = s.strip_prefix("nested:") {
            let [n, seed] = keyed(rest, ["n", "seed"])
                .ok_or_else(|| Error::BadParameter(format!("unknown CSS code name {s:?}")))?;
            if n == 0 || n % 4 != 0 {
                return Err(Error::BadParameter(format!("nested length must be a positive multiple of 4 in {s:?}")));
            }
            return Ok(NamedCss::Nested {
                n: n as usize,
                seed,
            });
        }
        Err(Error::BadParameter(format!("unknown CSS code name {s:?}")))
    }
}

/// Number of seeded random codes in the standard corpus.
pub const CORPUS_RANDOM_CODES: usize = 10;

/// `rep3`, `rep5`, `hamming7` and ten random codes with lengths 5 to 10,
/// the `i`-th seeded with `seed + i`.
pub fn standard_corpus(seed: u64) -> Vec<NamedCode> {
    let mut codes = alloc::vec![NamedCode::Repetition(3), NamedCode::Repetition(5), NamedCode::Hamming7];
    codes.extend((0..CORPUS_RANDOM_CODES).map(|i| NamedCode::Random {
        n: 5 + i % 6,
        seed: seed.wrapping_add(i as u64),
    }));
    codes
}
