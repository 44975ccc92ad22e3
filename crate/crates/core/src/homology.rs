//! Chain complexes over GF(2), repetition complexes and the
//! distance-balanced code obtained from their product.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::codes::CssCode;
use crate::f2::BinaryMatrix;
use crate::{Error, Result};

/// `C_k -> ... -> C_1 -> C_0`, stored as `boundaries[i] = d_{i+1}`, so
/// `d_i` has `dim C_i` columns and `dim C_{i-1}` rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    boundaries: Vec<BinaryMatrix>,
}

impl ChainComplex {
    /// `boundaries` lists `d_1, d_2, ..., d_k` (lowest degree first).
    pub fn new(boundaries: Vec<BinaryMatrix>) -> Result<Self> {
        if boundaries.is_empty() {
            return Err(Error::BadParameter("a complex needs at least one boundary map".into()));
        }
        for (i, pair) in boundaries.windows(2).enumerate() {
            let (low, high) = (&pair[0], &pair[1]);
            if low.cols() != high.rows() {
                return Err(Error::ShapeMismatch(format!(
                    "d_{} has {} columns but d_{} has {} rows",
                    i + 1,
                    low.cols(),
                    i + 2,
                    high.rows()
                )));
            }
            if !low.mul(high)?.is_zero() {
                return Err(Error::BadParameter(format!("d_{} d_{} != 0", i + 1, i + 2)));
            }
        }
        Ok(Self { boundaries })
    }

    /// Highest degree `k`.
    pub fn top_degree(&self) -> usize {
        self.boundaries.len()
    }

    /// `[dim C_0, ..., dim C_k]`.
    pub fn dims(&self) -> Vec<usize> {
        let mut dims = Vec::with_capacity(self.boundaries.len() + 1);
        dims.push(self.boundaries[0].rows());
        dims.extend(self.boundaries.iter().map(BinaryMatrix::cols));
        dims
    }

    pub fn dim(&self, r: usize) -> Result<usize> {
        self.dims().get(r).copied().ok_or(Error::BadIndex {
            index: r,
            max: self.top_degree(),
        })
    }

    /// `d_i` for `1 <= i <= k`.
    pub fn boundary(&self, i: usize) -> Result<&BinaryMatrix> {
        if i == 0 || i > self.top_degree() {
            return Err(Error::BadIndex {
                index: i,
                max: self.top_degree(),
            });
        }
        Ok(&self.boundaries[i - 1])
    }

    pub fn boundaries(&self) -> &[BinaryMatrix] {
        &self.boundaries
    }

    fn boundary_rank(&self, i: usize) -> usize {
        if i == 0 || i > self.top_degree() {
            0
        } else {
            self.boundaries[i - 1].rank()
        }
    }

    /// `dim ker d_r - rank d_{r+1}`, with `d_0` and `d_{k+1}` zero.
    pub fn homology_dimension(&self, r: usize) -> Result<usize> {
        let dim = self.dim(r)?;
        Ok(dim - self.boundary_rank(r) - self.boundary_rank(r + 1))
    }

    /// The complex with every map transposed and degrees reversed:
    /// `C_0 -> C_1 -> ... -> C_k` read as a chain complex.
    pub fn dual(&self) -> ChainComplex {
        let boundaries = self.boundaries.iter().rev().map(BinaryMatrix::transpose).collect();
        ChainComplex { boundaries }
    }

    /// `dim ker d_{r+1}^T - rank d_r^T`.
    pub fn cohomology_dimension(&self, r: usize) -> Result<usize> {
        if r > self.top_degree() {
            return Err(Error::BadIndex {
                index: r,
                max: self.top_degree(),
            });
        }
        self.dual().homology_dimension(self.top_degree() - r)
    }

    /// Tensor product. Degree `t` is the direct sum of `A_p (x) B_q` over
    /// `p + q = t`, blocks ordered by decreasing `q`; inside a block the pair
    /// `(a, b)` sits at `a * dim B_q + b`. The boundary is
    /// `d(a (x) b) = da (x) b + a (x) db`.
    pub fn tensor(&self, other: &ChainComplex) -> ChainComplex {
        let (ka, kb) = (self.top_degree(), other.top_degree());
        let (da, db) = (self.dims(), other.dims());
        let blocks = |t: usize| -> Vec<(usize, usize)> {
            (0..=t.min(kb))
                .rev()
                .filter(|&q| t - q <= ka)
                .map(|q| (t - q, q))
                .collect()
        };
        let offsets = |t: usize| -> Vec<((usize, usize), usize)> {
            let mut acc = 0;
            blocks(t)
                .into_iter()
                .map(|(p, q)| {
                    let at = acc;
                    acc += da[p] * db[q];
                    ((p, q), at)
                })
                .collect()
        };
        let size = |t: usize| blocks(t).iter().map(|&(p, q)| da[p] * db[q]).sum::<usize>();

        let mut boundaries = Vec::with_capacity(ka + kb);
        for t in 1..=ka + kb {
            let mut d = BinaryMatrix::zeros(size(t - 1), size(t));
            let targets = offsets(t - 1);
            let row_of = |p: usize, q: usize| {
                targets.iter().find(|(b, _)| *b == (p, q)).map(|&(_, at)| at)
            };
            for ((p, q), col_at) in offsets(t) {
                if p >= 1 {
                    let row_at = row_of(p - 1, q).expect("target block exists");
                    let piece = self.boundaries[p - 1].kronecker(&BinaryMatrix::identity(db[q]));
                    place(&mut d, &piece, row_at, col_at);
                }
                if q >= 1 {
                    let row_at = row_of(p, q - 1).expect("target block exists");
                    let piece = BinaryMatrix::identity(da[p]).kronecker(&other.boundaries[q - 1]);
                    place(&mut d, &piece, row_at, col_at);
                }
            }
            boundaries.push(d);
        }
        ChainComplex { boundaries }
    }

    /// The CSS code on `C_r`: X-checks `d_r`, Z-checks `d_{r+1}^T`.
    pub fn css_code(&self, r: usize) -> Result<CssCode> {
        if r == 0 || r >= self.top_degree() {
            return Err(Error::BadIndex {
                index: r,
                max: self.top_degree().saturating_sub(1),
            });
        }
        CssCode::new(self.boundaries[r - 1].clone(), self.boundaries[r].transpose())
    }
}

fn place(dst: &mut BinaryMatrix, piece: &BinaryMatrix, row_at: usize, col_at: usize) {
    for r in 0..piece.rows() {
        for c in piece.row(r).iter_ones() {
            let cur = dst.get(row_at + r, col_at + c);
            dst.set(row_at + r, col_at + c, !cur);
        }
    }
}

/// Shape of the `l x (l-1)` repetition boundary matrix: a path (`Line`) or
/// a star centred on the last vertex (`Star`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RepetitionVariant {
    Line,
    Star,
}

impl RepetitionVariant {
    pub const ALL: [RepetitionVariant; 2] = [RepetitionVariant::Line, RepetitionVariant::Star];

    pub fn as_str(self) -> &'static str {
        match self {
            RepetitionVariant::Line => "line",
            RepetitionVariant::Star => "star",
        }
    }
}

impl fmt::Display for RepetitionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RepetitionVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "line" => Ok(RepetitionVariant::Line),
            "star" => Ok(RepetitionVariant::Star),
            other => Err(Error::BadParameter(format!("unknown variant {other:?}"))),
        }
    }
}

/// `H_l`, an `l x (l-1)` matrix whose columns are the edges of a path or a
/// star on `l` vertices. `H_l^T` checks the length-`l` repetition code.
pub fn repetition_matrix(ell: usize, variant: RepetitionVariant) -> Result<BinaryMatrix> {
    if ell < 2 {
        return Err(Error::BadParameter(format!("repetition length must be >= 2, got {ell}")));
    }
    let mut h = BinaryMatrix::zeros(ell, ell - 1);
    for j in 0..ell - 1 {
        h.set(j, j, true);
        match variant {
            RepetitionVariant::Line => h.set(j + 1, j, true),
            RepetitionVariant::Star => h.set(ell - 1, j, true),
        }
    }
    Ok(h)
}

/// `E -> V` with `E = F^{l-1}`, `V = F^l` and boundary `H_l`.
pub fn repetition_complex(ell: usize, variant: RepetitionVariant) -> Result<ChainComplex> {
    ChainComplex::new(alloc::vec![repetition_matrix(ell, variant)?])
}

/// `C_2 -> C_1 -> C_0` with `d_1 = h_x` and `d_2 = h_z^T`.
pub fn css_complex(q: &CssCode) -> ChainComplex {
    ChainComplex::new(alloc::vec![q.h_x().clone(), q.h_z().transpose()])
        .expect("commuting checks form a complex")
}

/// `css([H, H], [I, I])`: the duplicated code with the weight-2 Z-logicals
/// moved into the stabiliser.
pub fn gauge_fixed_duplicate(h: &BinaryMatrix) -> CssCode {
    let n = h.cols();
    let i = BinaryMatrix::identity(n);
    let h_x = BinaryMatrix::hstack(&[h, h]).expect("equal row counts");
    let h_z = BinaryMatrix::hstack(&[&i, &i]).expect("equal row counts");
    CssCode::new(h_x, h_z).expect("[H,H][I,I]^T = 2H = 0")
}

/// Product of the gauge-fixed complex with the repetition complex:
/// `C_3 = F^n E`, `C_2 = F^2n E + F^n V`, `C_1 = F^m E + F^2n V`,
/// `C_0 = F^m V`.
pub fn balanced_complex(
    h: &BinaryMatrix,
    ell: usize,
    variant: RepetitionVariant,
) -> Result<ChainComplex> {
    let r = repetition_complex(ell, variant)?;
    Ok(css_complex(&gauge_fixed_duplicate(h)).tensor(&r))
}

/// The code on `C_1` of [`balanced_complex`]: `h_x = d_1`, `h_z = d_2^T`.
pub fn distance_balanced_css(
    h: &BinaryMatrix,
    ell: usize,
    variant: RepetitionVariant,
) -> Result<CssCode> {
    balanced_complex(h, ell, variant)?.css_code(1)
}

/// Rows of the balanced `h_x` indexed `c_i (x) v_l`, one per check of `H`.
/// In the star variant these are the only X-checks whose weight grows
/// with `l`.
pub fn balanced_heavy_x_checks(m: usize, ell: usize) -> Vec<usize> {
    (0..m).map(|i| i * ell + ell - 1).collect()
}

/// Qubits indexed `q_i (x) v_l` in the `F^2n (x) V` block. In the star
/// variant these are the qubits with Z-degree `l`.
pub fn balanced_heavy_qubits(n: usize, m: usize, ell: usize) -> Vec<usize> {
    let offset = m * (ell - 1);
    (0..2 * n).map(|i| offset + i * ell + ell - 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{Distance, Limits};

    fn m(s: &str) -> BinaryMatrix {
        s.parse().unwrap()
    }

    fn rep3() -> BinaryMatrix {
        m("110;011")
    }

    #[test]
    fn repetition_matrices() {
        use RepetitionVariant::*;
        assert_eq!(repetition_matrix(3, Line).unwrap(), m("10;11;01"));
        assert_eq!(repetition_matrix(3, Star).unwrap(), m("10;01;11"));
        assert_eq!(repetition_matrix(2, Line).unwrap(), m("1;1"));
        assert_eq!(repetition_matrix(2, Star).unwrap(), m("1;1"));
        assert!(repetition_matrix(1, Star).is_err());
        for ell in 2..7 {
            for v in RepetitionVariant::ALL {
                let h = repetition_matrix(ell, v).unwrap();
                assert_eq!(h.rank(), ell - 1);
                assert_eq!(h.transpose().kernel_basis(), BinaryMatrix::from_rows(ell, &[alloc::vec![1u8; ell]]).unwrap());
            }
        }
    }

    #[test]
    fn repetition_complex_homology() {
        let r = repetition_complex(4, RepetitionVariant::Star).unwrap();
        assert_eq!(r.homology_dimension(0), Ok(1));
        assert_eq!(r.homology_dimension(1), Ok(0));
        assert_eq!(r.cohomology_dimension(1), Ok(0));
        assert_eq!(r.cohomology_dimension(0), Ok(1));
        assert!(r.homology_dimension(2).is_err());
    }

    #[test]
    fn complex_validation() {
        assert!(ChainComplex::new(alloc::vec![m("11"), m("1;0")]).is_err());
        assert!(ChainComplex::new(alloc::vec![m("11"), m("1;1;1")]).is_err());
        assert!(ChainComplex::new(alloc::vec![m("11"), m("1;1")]).is_ok());
        assert!(ChainComplex::new(alloc::vec![]).is_err());
    }

    #[test]
    fn balanced_dimensions() {
        for v in RepetitionVariant::ALL {
            let c = balanced_complex(&rep3(), 2, v).unwrap();
            assert_eq!(c.dims(), [4, 14, 12, 3]);
            assert_eq!(c.homology_dimension(1), Ok(1));
            assert_eq!(c.cohomology_dimension(1), Ok(1));
        }
    }

    #[test]
    fn balanced_blocks_match_explicit_formula() {
        let h = rep3();
        let (n, mm, ell) = (3, 2, 3);
        let hl = repetition_matrix(ell, RepetitionVariant::Star).unwrap();
        let q = gauge_fixed_duplicate(&h);
        let (hx, hz) = (q.h_x(), q.h_z());
        let ie = BinaryMatrix::identity(ell - 1);
        let iv = BinaryMatrix::identity(ell);
        let c = balanced_complex(&h, ell, RepetitionVariant::Star).unwrap();

        let d1 = BinaryMatrix::hstack(&[&BinaryMatrix::identity(mm).kronecker(&hl), &hx.kronecker(&iv)]).unwrap();
        assert_eq!(c.boundary(1).unwrap(), &d1);
        let top = BinaryMatrix::hstack(&[&hx.kronecker(&ie), &BinaryMatrix::zeros(mm * (ell - 1), n * ell)]).unwrap();
        let bottom = BinaryMatrix::hstack(&[&BinaryMatrix::identity(2 * n).kronecker(&hl), &hz.transpose().kronecker(&iv)]).unwrap();
        assert_eq!(c.boundary(2).unwrap(), &BinaryMatrix::vstack(&[&top, &bottom]).unwrap());
        let d3 = BinaryMatrix::vstack(&[&hz.transpose().kronecker(&ie), &BinaryMatrix::identity(n).kronecker(&hl)]).unwrap();
        assert_eq!(c.boundary(3).unwrap(), &d3);
    }

    #[test]
    fn gauge_fixed_parameters() {
        let lim = Limits::default();
        let q = gauge_fixed_duplicate(&rep3());
        assert_eq!((q.n(), q.dimension()), (6, 1));
        assert_eq!(q.distances(&lim), Ok((Distance::Finite(2), Distance::Finite(3))));
        let q = gauge_fixed_duplicate(&m("0001111;0110011;1010101"));
        assert_eq!((q.n(), q.dimension()), (14, 4));
        assert_eq!(q.distances(&lim), Ok((Distance::Finite(2), Distance::Finite(3))));
    }

    #[test]
    fn balanced_rep3_parameters() {
        let lim = Limits::default();
        for (ell, n_q) in [(2, 14), (3, 22)] {
            let q = distance_balanced_css(&rep3(), ell, RepetitionVariant::Star).unwrap();
            assert_eq!((q.n(), q.dimension()), (n_q, 1));
            assert_eq!(
                q.distances(&lim),
                Ok((Distance::Finite(2 * ell), Distance::Finite(3)))
            );
        }
    }

    #[test]
    fn heavy_star_checks() {
        let ell = 4;
        let q = distance_balanced_css(&rep3(), ell, RepetitionVariant::Star).unwrap();
        let weights = q.h_x().row_weights();
        for i in balanced_heavy_x_checks(2, ell) {
            // 2 * |row of H| + (l - 1)
            assert_eq!(weights[i], 4 + ell - 1);
        }
        let z_degree = q.h_z().col_weights();
        for j in balanced_heavy_qubits(3, 2, ell) {
            assert_eq!(z_degree[j], ell);
        }
    }

    #[test]
    fn css_code_index_checks() {
        let c = balanced_complex(&rep3(), 2, RepetitionVariant::Line).unwrap();
        assert!(c.css_code(0).is_err());
        assert!(c.css_code(3).is_err());
        assert_eq!(c.css_code(2).unwrap().n(), 12);
    }
}
