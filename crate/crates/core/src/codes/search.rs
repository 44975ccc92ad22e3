//! Exhaustive minimum-weight searches.
//!
//! Two exact strategies are available and picked by cost:
//!
//! * Gray-code enumeration of a subspace basis, `2^dim` steps with one XOR
//!   and one popcount each;
//! * weight-ascending enumeration of column subsets, which stops at the first
//!   weight where a hit exists and wins when the space is large but the
//!   minimum weight is small.

use alloc::vec::Vec;

use super::{Distance, Limits};
use crate::f2::{weight_words, xor_words, BinaryMatrix, BitVec, Echelon};
use crate::{Error, Result};

/// Below this many Gray steps enumeration is always preferred.
const GRAY_ALWAYS: u128 = 1 << 20;

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Minimum weight of a vector `x` with `checks * x = 0` that is nonzero and,
/// when `excluded` is given, not in that row space. `excluded` must lie
/// inside `ker(checks)`.
pub(crate) fn min_weight_outside(
    checks: &BinaryMatrix,
    excluded: Option<&Echelon>,
    limits: &Limits,
) -> Result<Distance> {
    let n = checks.cols();
    let kernel = checks.kernel_basis();
    let dim = kernel.rows();
    let quotient_dim = match excluded {
        Some(e) => dim - e.rank(),
        None => dim,
    };
    if quotient_dim == 0 {
        return Ok(Distance::Infinite);
    }
    let gray_cost: u128 = if dim >= 127 { u128::MAX } else { 1u128 << dim };
    if gray_cost <= GRAY_ALWAYS && gray_cost <= limits.cap as u128 {
        return Ok(gray_min(&kernel, excluded));
    }

    let columns = column_words(checks);
    let mut cumulative: u128 = 0;
    for w in 1..=n {
        cumulative = cumulative.saturating_add(binomial(n, w));
        if cumulative > limits.cap as u128 {
            if gray_cost <= limits.cap as u128 {
                return Ok(gray_min(&kernel, excluded));
            }
            return Err(Error::TooLarge {
                needed: gray_cost.min(cumulative),
                cap: limits.cap,
            });
        }
        let target = alloc::vec![0u64; columns.first().map_or(0, Vec::len)];
        let mut accept = |support: &[usize]| match excluded {
            None => true,
            Some(e) => !e.contains(&BitVec::from_indices(n, support)),
        };
        if subset_with_syndrome(&columns, &target, w, &mut accept) {
            return Ok(Distance::Finite(w));
        }
    }
    unreachable!("a nonzero quotient always has a finite minimum weight")
}

/// Smallest weight of a vector with syndrome `target`, searching weights
/// `0..=max_weight`. `None` if no such vector exists within that range.
pub(crate) fn min_weight_with_syndrome(
    columns: &[Vec<u64>],
    target: &[u64],
    max_weight: usize,
    limits: &Limits,
) -> Result<Option<usize>> {
    if target.iter().all(|&w| w == 0) {
        return Ok(Some(0));
    }
    let n = columns.len();
    let mut cumulative: u128 = 0;
    for w in 1..=max_weight.min(n) {
        cumulative = cumulative.saturating_add(binomial(n, w));
        if cumulative > limits.cap as u128 {
            return Err(Error::TooLarge {
                needed: cumulative,
                cap: limits.cap,
            });
        }
        if subset_with_syndrome(columns, target, w, &mut |_| true) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub(crate) fn column_words(m: &BinaryMatrix) -> Vec<Vec<u64>> {
    m.columns().into_iter().map(|c| c.words().to_vec()).collect()
}

/// Gray-code walk over the span of `kernel`, skipping combinations that
/// land in the excluded subspace.
fn gray_min(kernel: &BinaryMatrix, excluded: Option<&Echelon>) -> Distance {
    let n = kernel.cols();
    // Order the basis as [excluded basis ; complement] so that a combination
    // lies in the excluded space iff its high coefficients vanish.
    let (basis, low) = match excluded {
        None => (kernel.row_vecs(), 0),
        Some(e) => {
            let mut rows = e.basis().row_vecs();
            let low = rows.len();
            let mut span = e.clone();
            for v in kernel.row_vecs() {
                if !span.contains(&v) {
                    rows.push(v);
                    span = BinaryMatrix::from_bitvecs(n, &rows)
                        .expect("rows share a length")
                        .echelon();
                }
            }
            (rows, low)
        }
    };
    let dim = basis.len();
    let mut current = alloc::vec![0u64; kernel.cols().div_ceil(64)];
    let mut best = usize::MAX;
    for i in 1u64..(1u64 << dim) {
        let flip = i.trailing_zeros() as usize;
        xor_words(&mut current, basis[flip].words());
        let gray = i ^ (i >> 1);
        if gray >> low == 0 {
            continue;
        }
        best = best.min(weight_words(&current));
    }
    if best == usize::MAX {
        Distance::Infinite
    } else {
        Distance::Finite(best)
    }
}

/// Depth-first search over `w`-subsets of columns whose XOR equals `target`.
/// `accept` sees each hit's support and decides whether it counts.
fn subset_with_syndrome(
    columns: &[Vec<u64>],
    target: &[u64],
    w: usize,
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let words = target.len();
    // partial[d] is the syndrome after choosing d columns
    let mut partial = alloc::vec![0u64; (w + 1) * words];
    partial[..words].copy_from_slice(target);
    let mut chosen = Vec::with_capacity(w);
    dfs(columns, w, 0, &mut chosen, &mut partial, words, accept)
}

fn dfs(
    columns: &[Vec<u64>],
    w: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    partial: &mut [u64],
    words: usize,
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let depth = chosen.len();
    let remaining = w - depth;
    let n = columns.len();
    if remaining == 0 || remaining > n {
        return false;
    }
    for c in start..=(n - remaining) {
        if remaining == 1 {
            let cur = &partial[depth * words..(depth + 1) * words];
            if cur.iter().zip(&columns[c]).all(|(a, b)| a == b) {
                chosen.push(c);
                let ok = accept(chosen);
                chosen.pop();
                if ok {
                    return true;
                }
            }
        } else {
            let (head, tail) = partial.split_at_mut((depth + 1) * words);
            let cur = &head[depth * words..];
            for k in 0..words {
                tail[k] = cur[k] ^ columns[c][k];
            }
            chosen.push(c);
            let found = dfs(columns, w, c + 1, chosen, partial, words, accept);
            chosen.pop();
            if found {
                return true;
            }
        }
    }
    false
}
