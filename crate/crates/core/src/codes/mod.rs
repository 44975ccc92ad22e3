//! Classical and CSS codes with exact parameter oracles.
//!
//! Soundness follows the usual normalisation: a code `ker(H)` with `H` of
//! shape `m x n` has soundness `rho` when `|Hx| / m >= rho * d(x, C) / n`
//! for every word `x`. For a fixed syndrome `s = Hx` the left side is
//! constant and `d(x, C)` is the coset leader weight of `s`, so the largest
//! admissible `rho` is `(n / m) * min_{s in im(H), s != 0} |s| / leader(s)`.
//! That reduces the search from `2^n` words to `2^rank(H)` syndromes.

mod coset;
mod search;

use alloc::format;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use coset::CosetLeaderTable;

use crate::f2::{BinaryMatrix, BitVec};
use crate::{Error, Rational, Result};

/// Upper bound on the number of steps any exhaustive search may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub cap: u64,
}

impl Limits {
    pub const DEFAULT_CAP: u64 = 1 << 24;
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            cap: Self::DEFAULT_CAP,
        }
    }
}

/// A minimum distance; `Infinite` when the relevant set is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn scale(self, factor: usize) -> Distance {
        match self {
            Distance::Finite(d) => Distance::Finite(d * factor),
            Distance::Infinite => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl core::str::FromStr for Distance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" => Ok(Distance::Infinite),
            _ => s
                .parse()
                .map(Distance::Finite)
                .map_err(|_| Error::BadParameter(format!("bad distance {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SoundnessMethod {
    ExactExhaustive,
    Sampled,
    CssReduction,
}

impl SoundnessMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SoundnessMethod::ExactExhaustive => "exact-exhaustive",
            SoundnessMethod::Sampled => "sampled",
            SoundnessMethod::CssReduction => "css-reduction",
        }
    }
}

impl core::str::FromStr for SoundnessMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact-exhaustive" => Ok(Self::ExactExhaustive),
            "sampled" => Ok(Self::Sampled),
            "css-reduction" => Ok(Self::CssReduction),
            other => Err(Error::BadParameter(format!("unknown soundness method {other:?}"))),
        }
    }
}

/// Bounds on the soundness of a code, `lower <= rho <= upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SoundnessInterval {
    pub lower: Rational,
    pub upper: Rational,
    pub method: SoundnessMethod,
}

impl SoundnessInterval {
    pub fn exact(value: Rational) -> Self {
        Self {
            lower: value,
            upper: value,
            method: SoundnessMethod::ExactExhaustive,
        }
    }
}

/// A linear code `ker(H)` together with its check matrix.
///
/// Redundant checks are kept: they do not change the code but they do
/// change the soundness, which is normalised by the number of rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassicalCode {
    h: BinaryMatrix,
}

impl ClassicalCode {
    pub fn new(h: BinaryMatrix) -> Self {
        Self { h }
    }

    pub fn checks(&self) -> &BinaryMatrix {
        &self.h
    }

    pub fn into_checks(self) -> BinaryMatrix {
        self.h
    }

    /// Block length.
    pub fn n(&self) -> usize {
        self.h.cols()
    }

    /// Number of checks, redundant ones included.
    pub fn m(&self) -> usize {
        self.h.rows()
    }

    pub fn dimension(&self) -> usize {
        self.n() - self.h.rank()
    }

    pub fn contains(&self, x: &BitVec) -> Result<bool> {
        Ok(self.h.mul_vec(x)?.is_zero())
    }

    /// Minimum weight of a nonzero codeword.
    pub fn distance(&self, limits: &Limits) -> Result<Distance> {
        search::min_weight_outside(&self.h, None, limits)
    }

    pub fn coset_leader_table(&self, limits: &Limits) -> Result<CosetLeaderTable> {
        CosetLeaderTable::build(&self.h, limits)
    }

    /// The largest `rho` with `|Hx|/m >= rho d(x,C)/n` for all `x`.
    pub fn soundness(&self, limits: &Limits) -> Result<SoundnessInterval> {
        let table = self.coset_leader_table(limits)?;
        if table.rank() == 0 {
            return Err(Error::TrivialCode);
        }
        // minimise |s| / leader(s) by cross-multiplication
        let mut best: Option<(u64, u64)> = None;
        table.for_each_nonzero(|weight, leader| {
            let (w, l) = (weight as u64, leader as u64);
            if best.is_none_or(|(num, den)| w * den < num * l) {
                best = Some((w, l));
            }
        });
        let (num, den) = best.expect("rank >= 1 gives a nonzero syndrome");
        let rho = Rational::new(self.n() as u64 * num, self.m() as u64 * den);
        Ok(SoundnessInterval::exact(rho))
    }

    /// Upper bound on soundness from `trials` uniformly random words outside
    /// the code. Sampling proves nothing from below, so `lower` is zero.
    pub fn soundness_sampled(
        &self,
        trials: usize,
        seed: u64,
        limits: &Limits,
    ) -> Result<SoundnessInterval> {
        if trials == 0 {
            return Err(Error::BadParameter("at least one trial is required".into()));
        }
        let rank = self.h.rank();
        if rank == 0 {
            return Err(Error::TrivialCode);
        }
        let table = CosetLeaderTable::build(&self.h, limits).ok();
        let columns = search::column_words(&self.h);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, m) = (self.n() as u64, self.m() as u64);
        let mut best: Option<Rational> = None;
        for _ in 0..trials {
            let syndrome = loop {
                let mut x = BitVec::zeros(self.n());
                for i in 0..self.n() {
                    if rng.gen::<bool>() {
                        x.set(i, true);
                    }
                }
                let s = self.h.mul_vec(&x)?;
                if !s.is_zero() {
                    break s;
                }
            };
            let leader = match &table {
                Some(t) => t.leader_weight(&syndrome).expect("syndrome of a word is in the image"),
                None => search::min_weight_with_syndrome(&columns, syndrome.words(), rank, limits)?
                    .expect("a syndrome in the image has a preimage of weight <= rank"),
            };
            let ratio = Rational::new(syndrome.weight() as u64 * n, m * leader as u64);
            best = Some(best.map_or(ratio, |b| b.min(ratio)));
        }
        Ok(SoundnessInterval {
            lower: Rational::from_integer(0),
            upper: best.expect("trials >= 1"),
            method: SoundnessMethod::Sampled,
        })
    }
}

/// A CSS code `css(H_X, H_Z)` with `H_X H_Z^T = 0`.
///
/// X-checks are rows of `h_x`, Z-checks rows of `h_z`. Distances use the
/// operator convention: `d_x` is the minimum weight of an X-type logical,
/// an element of `ker(h_z)` outside `rowspace(h_x)`; `d_z` swaps the roles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CssCode {
    h_x: BinaryMatrix,
    h_z: BinaryMatrix,
}

impl CssCode {
    pub fn new(h_x: BinaryMatrix, h_z: BinaryMatrix) -> Result<Self> {
        if h_x.cols() != h_z.cols() {
            return Err(Error::ShapeMismatch(format!(
                "h_x has {} columns, h_z has {}",
                h_x.cols(),
                h_z.cols()
            )));
        }
        if !h_x.mul(&h_z.transpose())?.is_zero() {
            return Err(Error::NotCommuting);
        }
        Ok(Self { h_x, h_z })
    }

    pub fn h_x(&self) -> &BinaryMatrix {
        &self.h_x
    }

    pub fn h_z(&self) -> &BinaryMatrix {
        &self.h_z
    }

    pub fn into_parts(self) -> (BinaryMatrix, BinaryMatrix) {
        (self.h_x, self.h_z)
    }

    /// Number of physical qubits.
    pub fn n(&self) -> usize {
        self.h_x.cols()
    }

    /// `n - rank(h_x) - rank(h_z)`.
    pub fn dimension(&self) -> usize {
        self.n() - self.h_x.rank() - self.h_z.rank()
    }

    /// `ker(h_x)` with checks `h_x`.
    pub fn x_checks_code(&self) -> ClassicalCode {
        ClassicalCode::new(self.h_x.clone())
    }

    /// `ker(h_z)` with checks `h_z`.
    pub fn z_checks_code(&self) -> ClassicalCode {
        ClassicalCode::new(self.h_z.clone())
    }

    /// `(d_x, d_z)`.
    pub fn distances(&self, limits: &Limits) -> Result<(Distance, Distance)> {
        let d_x = search::min_weight_outside(&self.h_z, Some(&self.h_x.echelon()), limits)?;
        let d_z = search::min_weight_outside(&self.h_x, Some(&self.h_z.echelon()), limits)?;
        Ok((d_x, d_z))
    }

    pub fn distance(&self, limits: &Limits) -> Result<Distance> {
        let (d_x, d_z) = self.distances(limits)?;
        Ok(d_x.min(d_z))
    }

    /// `[rho_min, 2 rho_min]` where `rho_min` is the smaller exhaustive
    /// soundness of the two classical check codes.
    pub fn soundness_interval(&self, limits: &Limits) -> Result<SoundnessInterval> {
        let rho_x = self.x_checks_code().soundness(limits)?.lower;
        let rho_z = self.z_checks_code().soundness(limits)?.lower;
        let rho = rho_x.min(rho_z);
        Ok(SoundnessInterval {
            lower: rho,
            upper: rho * 2,
            method: SoundnessMethod::CssReduction,
        })
    }
}
