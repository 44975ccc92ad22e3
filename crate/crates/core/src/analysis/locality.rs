use alloc::collections::BTreeMap;

use crate::f2::BinaryMatrix;
use crate::Rational;

/// Row and column weight statistics of a check matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalityProfile {
    pub rows: usize,
    pub cols: usize,
    pub max_row_weight: usize,
    pub max_col_weight: usize,
    /// Zero when there are no rows.
    pub avg_row_weight: Rational,
    /// Zero when there are no columns.
    pub avg_col_weight: Rational,
    pub row_weight_histogram: BTreeMap<usize, usize>,
    pub col_weight_histogram: BTreeMap<usize, usize>,
    pub total_weight: usize,
}

fn histogram(weights: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &w in weights {
        *h.entry(w).or_insert(0) += 1;
    }
    h
}

fn average(total: usize, count: usize) -> Rational {
    if count == 0 {
        Rational::from_integer(0)
    } else {
        Rational::new(total as u64, count as u64)
    }
}

pub fn locality_profile(m: &BinaryMatrix) -> LocalityProfile {
    let rows = m.row_weights();
    let cols = m.col_weights();
    let total = rows.iter().sum();
    LocalityProfile {
        rows: m.rows(),
        cols: m.cols(),
        max_row_weight: rows.iter().copied().max().unwrap_or(0),
        max_col_weight: cols.iter().copied().max().unwrap_or(0),
        avg_row_weight: average(total, m.rows()),
        avg_col_weight: average(total, m.cols()),
        row_weight_histogram: histogram(&rows),
        col_weight_histogram: histogram(&cols),
        total_weight: total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{repetition_matrix, RepetitionVariant};

    fn hist(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn star_and_line_profiles() {
        let star = locality_profile(&repetition_matrix(4, RepetitionVariant::Star).unwrap());
        assert_eq!(star.row_weight_histogram, hist(&[(1, 3), (3, 1)]));
        assert_eq!(star.col_weight_histogram, hist(&[(2, 3)]));
        assert_eq!(star.total_weight, 6);
        assert_eq!(star.avg_row_weight, Rational::new(3, 2));

        let line = locality_profile(&repetition_matrix(4, RepetitionVariant::Line).unwrap());
        assert_eq!(line.row_weight_histogram, hist(&[(1, 2), (2, 2)]));
        assert_eq!(line.max_row_weight, 2);
    }

    #[test]
    fn empty_matrix_profile() {
        let p = locality_profile(&BinaryMatrix::zeros(0, 3));
        assert_eq!(p.total_weight, 0);
        assert_eq!(p.avg_row_weight, Rational::from_integer(0));
        assert_eq!(p.col_weight_histogram, hist(&[(0, 3)]));
    }
}
