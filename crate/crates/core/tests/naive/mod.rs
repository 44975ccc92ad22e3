//! Brute-force reference implementations on `u64` bitmasks. Nothing here
//! calls into the library's linear algebra, so agreement is meaningful.

#![allow(dead_code)]

use std::collections::HashSet;

use qltclab_core::f2::BinaryMatrix;

/// Rows of `m` as bitmasks; bit `j` is column `j`.
pub fn masks(m: &BinaryMatrix) -> Vec<u64> {
    assert!(m.cols() <= 64);
    (0..m.rows())
        .map(|r| (0..m.cols()).filter(|&c| m.get(r, c)).fold(0u64, |acc, c| acc | 1 << c))
        .collect()
}

pub fn weight(x: u64) -> u32 {
    x.count_ones()
}

/// Syndrome of `x` as a bitmask over rows.
pub fn syndrome(rows: &[u64], x: u64) -> u64 {
    rows.iter()
        .enumerate()
        .fold(0, |s, (i, &r)| s | (((r & x).count_ones() as u64 & 1) << i))
}

pub fn codewords(rows: &[u64], n: usize) -> Vec<u64> {
    (0..1u64 << n).filter(|&x| syndrome(rows, x) == 0).collect()
}

/// Minimum weight of a nonzero codeword, `None` if the code is `{0}`.
pub fn distance(rows: &[u64], n: usize) -> Option<u32> {
    (1..1u64 << n).filter(|&x| syndrome(rows, x) == 0).map(weight).min()
}

/// `min_x (|Hx|/m) / (d(x,C)/n)` over every word outside the code, as an
/// exact fraction `(num, den)`, with `d(x,C)` the minimum of `|x + c|`.
pub fn soundness(rows: &[u64], n: usize) -> Option<(u64, u64)> {
    let m = rows.len() as u64;
    let code = codewords(rows, n);
    let mut best: Option<(u64, u64)> = None;
    for x in 0..1u64 << n {
        let s = weight(syndrome(rows, x)) as u64;
        if s == 0 {
            continue;
        }
        let d = code.iter().map(|&c| weight(x ^ c)).min().unwrap() as u64;
        let (num, den) = (n as u64 * s, m * d);
        if best.is_none_or(|(bn, bd)| num * bd < bn * den) {
            best = Some((num, den));
        }
    }
    best.map(|(a, b)| {
        let g = gcd(a, b);
        (a / g, b / g)
    })
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every GF(2) combination of `rows`.
pub fn span(rows: &[u64]) -> HashSet<u64> {
    let mut set = HashSet::from([0u64]);
    for &r in rows {
        let next: Vec<u64> = set.iter().map(|&v| v ^ r).collect();
        set.extend(next);
    }
    set
}

/// Rank by elimination on bitmasks, each pivot row stored with its
/// pivot bit.
pub fn rank(rows: &[u64]) -> usize {
    let mut pivots: Vec<(u64, u64)> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &(bit, p) in &pivots {
            if v & bit != 0 {
                v ^= p;
            }
        }
        if v != 0 {
            pivots.push((v & v.wrapping_neg(), v));
        }
    }
    pivots.len()
}

/// `(d_x, d_z)`: minimum weights of `ker(h_z) \ span(h_x)` and
/// `ker(h_x) \ span(h_z)`.
pub fn css_distances(h_x: &[u64], h_z: &[u64], n: usize) -> (Option<u32>, Option<u32>) {
    let (sx, sz) = (span(h_x), span(h_z));
    let mut dx = None::<u32>;
    let mut dz = None::<u32>;
    for v in 1..1u64 << n {
        let w = weight(v);
        if syndrome(h_z, v) == 0 && !sx.contains(&v) {
            dx = Some(dx.map_or(w, |d| d.min(w)));
        }
        if syndrome(h_x, v) == 0 && !sz.contains(&v) {
            dz = Some(dz.map_or(w, |d| d.min(w)));
        }
    }
    (dx, dz)
}
