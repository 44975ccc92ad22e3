//! Code-building procedures: duplicated checks, check products,
//! standard-form transforms and random nested CSS codes.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::{ClassicalCode, CssCode, Distance, Limits};
use crate::f2::{BinaryMatrix, BitVec};
use crate::{Error, Rational, Result};

/// Retries allowed for each rejection-sampling loop.
pub const SAMPLING_ATTEMPTS: usize = 64;

/// Uniformly random `rows x cols` matrix.
pub fn sample_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> BinaryMatrix {
    let words = cols.div_ceil(64);
    let vecs: Vec<BitVec> = (0..rows)
        .map(|_| BitVec::from_words(cols, (0..words).map(|_| rng.gen::<u64>()).collect()))
        .collect();
    BinaryMatrix::from_bitvecs(cols, &vecs).expect("rows have the requested length")
}

/// `ker([H, H])`: pairs `(x, y)` with `x + y` in `ker(H)`.
pub fn duplicate_checks(h: &BinaryMatrix) -> ClassicalCode {
    ClassicalCode::new(BinaryMatrix::hstack(&[h, h]).expect("equal row counts"))
}

/// `css([H, H], [H, H])`.
pub fn duplicate_css(h: &BinaryMatrix) -> CssCode {
    let hh = duplicate_checks(h).into_checks();
    CssCode::new(hh.clone(), hh).expect("[H,H][H,H]^T = 2HH^T = 0")
}

/// `C_1 * C_2 = ker(H_1 (x) H_2)`.
pub fn check_product_classical(h1: &BinaryMatrix, h2: &BinaryMatrix) -> ClassicalCode {
    ClassicalCode::new(h1.kronecker(h2))
}

/// `Q * C = css(H_X (x) H, H_Z (x) H)`.
pub fn check_product_quantum(q: &CssCode, h: &BinaryMatrix) -> CssCode {
    CssCode::new(q.h_x().kronecker(h), q.h_z().kronecker(h))
        .expect("(H_X H_Z^T) (x) (H H^T) = 0")
}

/// Drops dependent rows (keeping the first independent set) and rewrites
/// the remaining checks as `G H`, whose columns at the pivot positions form
/// an identity block.
pub fn standardize_checks(h: &BinaryMatrix) -> BinaryMatrix {
    let independent = h.select_rows(&h.independent_rows());
    independent
        .standard_form()
        .expect("independent rows have full rank")
        .unpermuted()
}

/// Same code, checks in standard form; soundness becomes at least `n/m`.
pub fn standardize_classical(c: &ClassicalCode) -> ClassicalCode {
    ClassicalCode::new(standardize_checks(c.checks()))
}

/// Both check matrices standardised. Row spaces are unchanged, so the code
/// space, `k` and both distances are unchanged.
pub fn standardize_css(q: &CssCode) -> CssCode {
    CssCode::new(standardize_checks(q.h_x()), standardize_checks(q.h_z()))
        .expect("row spaces are preserved")
}

/// Parameters that the standard-form check product is claimed to reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CpClaims {
    /// `rho(C) * min(n_q / m_X, n_q / m_Z)` with `m` counted after
    /// standardisation.
    pub soundness: Rational,
    /// `min(d(C), d(ker H_X), d(ker H_Z))`.
    pub distance: Distance,
    /// `n n_q - (n - k)(n_q - k_q)`.
    pub dimension: usize,
    /// `w n_q`, `w` the locality of `C` (largest row or column weight).
    pub locality: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CpStandardLtc {
    /// `Q` with both check matrices standardised.
    pub standardized: CssCode,
    /// The product `standardized * C`.
    pub code: CssCode,
    pub claims: CpClaims,
}

/// Standardises `q`, takes the check product with `c` and records the
/// parameters the product is claimed to have. Claims are computed from the
/// inputs only; nothing is measured on the product.
pub fn cp_standard_ltc(q: &CssCode, c: &ClassicalCode, limits: &Limits) -> Result<CpStandardLtc> {
    let standardized = standardize_css(q);
    let code = check_product_quantum(&standardized, c.checks());

    let rho = c.soundness(limits)?.lower;
    let n_q = standardized.n() as u64;
    let (m_x, m_z) = (standardized.h_x().rows() as u64, standardized.h_z().rows() as u64);
    if m_x == 0 || m_z == 0 {
        return Err(Error::TrivialCode);
    }
    let ratio = Rational::new(n_q, m_x).min(Rational::new(n_q, m_z));

    let d_c = c.distance(limits)?;
    let d_cx = standardized.x_checks_code().distance(limits)?;
    let d_cz = standardized.z_checks_code().distance(limits)?;

    let (n, k) = (c.n(), c.dimension());
    let (nq, kq) = (standardized.n(), standardized.dimension());
    let claims = CpClaims {
        soundness: rho * ratio,
        distance: d_c.min(d_cx).min(d_cz),
        dimension: n * nq - (n - k) * (nq - kq),
        locality: locality(c.checks()) * nq,
    };
    Ok(CpStandardLtc {
        standardized,
        code,
        claims,
    })
}

/// Largest row or column weight.
pub fn locality(h: &BinaryMatrix) -> usize {
    let rows = h.row_weights().into_iter().max().unwrap_or(0);
    let cols = h.col_weights().into_iter().max().unwrap_or(0);
    rows.max(cols)
}

/// Nested pair `D <= C` with `dim C = 3n/4`, `dim D = n/4`, returned as
/// `css(H_C, basis(D))` so that `C_X = C`, `C_Z = D^perp` and `k = n/2`.
pub fn random_nested_css(n: usize, seed: u64) -> Result<CssCode> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::BadParameter(format!(
            "nested codes need a positive length divisible by 4, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (quarter, half) = (n / 4, n / 2);

    let h_c = (0..SAMPLING_ATTEMPTS)
        .map(|_| sample_matrix(quarter, n, &mut rng))
        .find(|h| h.rank() == quarter)
        .ok_or(Error::SamplingFailed(SAMPLING_ATTEMPTS))?;
    // ker([H_C; N]) is a subspace D of C; full rank 3n/4 makes dim D = n/4
    let stacked = (0..SAMPLING_ATTEMPTS)
        .map(|_| {
            let extra = sample_matrix(half, n, &mut rng);
            BinaryMatrix::vstack(&[&h_c, &extra]).expect("same width")
        })
        .find(|w| w.rank() == quarter + half)
        .ok_or(Error::SamplingFailed(SAMPLING_ATTEMPTS))?;
    let d_basis = stacked.kernel_basis();
    CssCode::new(h_c, d_basis)
}
