use alloc::format;
use alloc::vec::Vec;

use super::bitvec::{xor_words, BitVec, WORD_BITS};
use super::matrix::BinaryMatrix;
use crate::{Error, Result};

/// Reduced row echelon form of a matrix: `rank` nonzero rows, each with a
/// leading one at `pivots[i]` that is the only one in its column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    reduced: BinaryMatrix,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(m: &BinaryMatrix) -> Self {
        let mut work = m.clone();
        let pivots = reduce_in_place(&mut work, None);
        let rank = pivots.len();
        let reduced = work.select_rows(&(0..rank).collect::<Vec<_>>());
        Self { reduced, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The nonzero rows of the reduced form; a basis of the row space.
    pub fn basis(&self) -> &BinaryMatrix {
        &self.reduced
    }

    /// Clears every pivot position of `v` using basis rows. The result is
    /// zero iff `v` was in the row space.
    pub fn reduce(&self, v: &mut BitVec) {
        assert_eq!(v.len(), self.reduced.cols(), "vector length does not match");
        let mut words = v.words().to_vec();
        self.reduce_words(&mut words);
        *v = BitVec::from_words(v.len(), words);
    }

    pub(crate) fn reduce_words(&self, words: &mut [u64]) {
        for (i, &p) in self.pivots.iter().enumerate() {
            if (words[p / WORD_BITS] >> (p % WORD_BITS)) & 1 == 1 {
                xor_words(words, self.reduced.row_words(i));
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut words = v.words().to_vec();
        self.reduce_words(&mut words);
        words.iter().all(|&w| w == 0)
    }

    /// Basis of `{x : M x = 0}`, one vector per free column (ascending).
    pub fn kernel_basis(&self) -> BinaryMatrix {
        let n = self.reduced.cols();
        let mut is_pivot = alloc::vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut out = BinaryMatrix::zeros(free.len(), n);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, true);
            for (i, &p) in self.pivots.iter().enumerate() {
                if self.reduced.get(i, f) {
                    out.set(k, p, true);
                }
            }
        }
        out
    }
}

/// Gauss-Jordan elimination. Pivot rule: scan columns left to right and take
/// the first row (top-down, among unused rows) with a one. Every row
/// operation is mirrored on `track` when given. Returns the pivot columns;
/// the first `pivots.len()` rows of `m` hold the reduced basis afterwards.
fn reduce_in_place(m: &mut BinaryMatrix, mut track: Option<&mut BinaryMatrix>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..m.cols() {
        if next == m.rows() {
            break;
        }
        let Some(p) = (next..m.rows()).find(|&r| m.get(r, c)) else {
            continue;
        };
        m.swap_rows(next, p);
        if let Some(t) = track.as_deref_mut() {
            t.swap_rows(next, p);
        }
        for r in 0..m.rows() {
            if r != next && m.get(r, c) {
                m.xor_rows(r, next);
                if let Some(t) = track.as_deref_mut() {
                    t.xor_rows(r, next);
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}

/// Output of [`BinaryMatrix::standard_form`]: `h_prime = row_transform * H * Π`
/// with `h_prime = [I_m | R]`. Π is stored as `col_permutation`, where column
/// `j` of `h_prime` comes from column `col_permutation[j]` of `H * ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    pub h_prime: BinaryMatrix,
    pub row_transform: BinaryMatrix,
    pub col_permutation: Vec<usize>,
}

impl StandardForm {
    /// `h_prime * Π^{-1}`, i.e. `G * H`: the standard-form checks expressed
    /// on the original bit order.
    pub fn unpermuted(&self) -> BinaryMatrix {
        let n = self.col_permutation.len();
        let mut inverse = alloc::vec![0; n];
        for (j, &src) in self.col_permutation.iter().enumerate() {
            inverse[src] = j;
        }
        self.h_prime
            .permute_columns(&inverse)
            .expect("stored permutation is valid")
    }
}

impl BinaryMatrix {
    pub fn echelon(&self) -> Echelon {
        Echelon::new(self)
    }

    /// GF(2) rank.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        reduce_in_place(&mut work, None).len()
    }

    /// Rows form a basis of the right kernel `{x : M x = 0}`.
    pub fn kernel_basis(&self) -> BinaryMatrix {
        self.echelon().kernel_basis()
    }

    /// Whether `v` is a GF(2) combination of rows.
    pub fn in_row_space(&self, v: &BitVec) -> Result<bool> {
        if v.len() != self.cols() {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols()
            )));
        }
        Ok(self.echelon().contains(v))
    }

    /// Indices of the first maximal linearly independent set of rows,
    /// scanning top-down.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut keep = Vec::new();
        for r in 0..self.rows() {
            let mut w = self.row_words(r).to_vec();
            for (p, b) in &basis {
                if (w[p / WORD_BITS] >> (p % WORD_BITS)) & 1 == 1 {
                    xor_words(&mut w, b);
                }
            }
            if let Some(p) = first_one(&w) {
                // keep the basis fully reduced at the new pivot
                for (_, b) in basis.iter_mut() {
                    if (b[p / WORD_BITS] >> (p % WORD_BITS)) & 1 == 1 {
                        xor_words(b, &w);
                    }
                }
                basis.push((p, w));
                keep.push(r);
            }
        }
        keep
    }

    /// Row-reduces a full-row-rank `H` to `[I_m | R] = G H Π`.
    pub fn standard_form(&self) -> Result<StandardForm> {
        let m = self.rows();
        let mut work = self.clone();
        let mut g = BinaryMatrix::identity(m);
        let pivots = reduce_in_place(&mut work, Some(&mut g));
        if pivots.len() < m {
            return Err(Error::RankDeficient {
                rank: pivots.len(),
                rows: m,
            });
        }
        let mut is_pivot = alloc::vec![false; self.cols()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut perm = pivots;
        perm.extend((0..self.cols()).filter(|&c| !is_pivot[c]));
        let h_prime = work.permute_columns(&perm)?;
        Ok(StandardForm {
            h_prime,
            row_transform: g,
            col_permutation: perm,
        })
    }
}

fn first_one(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> BinaryMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(m("11;11").rank(), 1);
        assert_eq!(m("110;011").rank(), 2);
        assert_eq!(BinaryMatrix::zeros(0, 5).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(m("110;011").kernel_basis(), m("111"));
        assert_eq!(BinaryMatrix::identity(3).kernel_basis().rows(), 0);
        assert_eq!(BinaryMatrix::zeros(0, 2).kernel_basis(), BinaryMatrix::identity(2));
    }

    #[test]
    fn kernel_of_small_matrix_matches_exhaustive_search() {
        let a = m("1011;0110");
        let basis = a.kernel_basis();
        assert_eq!(basis.rows(), 4 - a.rank());
        for r in 0..basis.rows() {
            assert!(a.mul_vec(&basis.row(r)).unwrap().is_zero());
        }
        // all 2^4 words: kernel members are exactly the span of the basis
        let span = basis.echelon();
        for x in 0u8..16 {
            let v = BitVec::from_bits(&[x & 1, (x >> 1) & 1, (x >> 2) & 1, (x >> 3) & 1]);
            assert_eq!(a.mul_vec(&v).unwrap().is_zero(), span.contains(&v));
        }
    }

    #[test]
    fn row_space_membership() {
        let a = m("110;011");
        assert!(a.in_row_space(&BitVec::from_bits(&[1, 1, 0])).unwrap());
        assert!(a.in_row_space(&BitVec::zeros(3)).unwrap());
        // combinations are 000, 110, 011, 101
        assert!(!a.in_row_space(&BitVec::from_bits(&[1, 0, 0])).unwrap());
        assert!(a.in_row_space(&BitVec::from_bits(&[1, 0, 1])).unwrap());
        assert!(a.in_row_space(&BitVec::zeros(2)).is_err());
    }

    #[test]
    fn standard_form_of_repetition_checks() {
        let h = m("110;011");
        let sf = h.standard_form().unwrap();
        assert_eq!(sf.h_prime, m("101;011"));
        assert_eq!(sf.col_permutation, [0, 1, 2]);
        assert_eq!(sf.row_transform, m("11;01"));
        let ghp = sf
            .row_transform
            .mul(&h)
            .unwrap()
            .permute_columns(&sf.col_permutation)
            .unwrap();
        assert_eq!(ghp, sf.h_prime);
        assert_eq!(sf.unpermuted(), m("101;011"));
    }

    #[test]
    fn standard_form_needs_column_permutation() {
        let h = m("0110;0011");
        let sf = h.standard_form().unwrap();
        assert_eq!(sf.col_permutation, [1, 2, 0, 3]);
        assert_eq!(sf.h_prime, m("1001;0101"));
    }

    #[test]
    fn standard_form_fixed_point() {
        let h = m("10110;01011");
        let sf = h.standard_form().unwrap();
        assert_eq!(sf.h_prime, h);
        assert_eq!(sf.row_transform, BinaryMatrix::identity(2));
        assert_eq!(sf.col_permutation, [0, 1, 2, 3, 4]);
    }

    #[test]
    fn standard_form_rank_deficient() {
        assert_eq!(
            m("11;11").standard_form(),
            Err(Error::RankDeficient { rank: 1, rows: 2 })
        );
    }

    #[test]
    fn independent_rows_keeps_first() {
        let h = m("110;110;011;101;111");
        assert_eq!(h.independent_rows(), [0, 2, 4]);
    }
}
