use alloc::vec;
use alloc::vec::Vec;

use super::Limits;
use crate::f2::{BinaryMatrix, BitVec, WORD_BITS};
use crate::{Error, Result};

const UNSET: u8 = u8::MAX;

/// Minimum weight of a word with each syndrome in `im(H)`.
///
/// The image of `H` is addressed by a compact key: with `b_0..b_{r-1}` the
/// reduced basis of the column space and `p_t` its pivot coordinates, a
/// syndrome `s` in the image equals `sum_t s[p_t] b_t`, so the bits
/// `s[p_t]` identify it. The table has exactly `2^rank(H)` entries and is
/// filled by breadth-first search from the zero syndrome, one column per
/// step, so each entry is reached first at its leader weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetLeaderTable {
    syndrome_len: usize,
    pivots: Vec<usize>,
    basis: Vec<BitVec>,
    leaders: Vec<u8>,
}

impl CosetLeaderTable {
    pub fn build(h: &BinaryMatrix, limits: &Limits) -> Result<Self> {
        let image = h.transpose().echelon();
        let rank = image.rank();
        let entries: u128 = 1u128 << rank.min(127);
        if rank >= 32 || entries > limits.cap as u128 {
            return Err(Error::TooLarge {
                needed: entries,
                cap: limits.cap,
            });
        }
        let pivots = image.pivots().to_vec();
        let basis = image.basis().row_vecs();
        let key_of_column = |c: &BitVec| -> u32 {
            pivots
                .iter()
                .enumerate()
                .filter(|(_, &p)| c.get(p))
                .fold(0u32, |k, (t, _)| k | (1 << t))
        };
        let mut steps: Vec<u32> = h
            .columns()
            .iter()
            .map(key_of_column)
            .filter(|&k| k != 0)
            .collect();
        steps.sort_unstable();
        steps.dedup();

        let mut leaders = vec![UNSET; 1usize << rank];
        leaders[0] = 0;
        let mut frontier = vec![0u32];
        let mut weight = 0u8;
        while !frontier.is_empty() {
            weight += 1;
            let mut next = Vec::new();
            for &key in &frontier {
                for &step in &steps {
                    let nb = (key ^ step) as usize;
                    if leaders[nb] == UNSET {
                        leaders[nb] = weight;
                        next.push(nb as u32);
                    }
                }
            }
            frontier = next;
        }
        debug_assert!(leaders.iter().all(|&w| w != UNSET));
        Ok(Self {
            syndrome_len: h.rows(),
            pivots,
            basis,
            leaders,
        })
    }

    /// `rank(H)`; the table has `2^rank` entries.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn len(&self) -> usize {
        self.leaders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaders.is_empty()
    }

    /// Leader weight of `syndrome`, or `None` when it is not in `im(H)`.
    pub fn leader_weight(&self, syndrome: &BitVec) -> Option<usize> {
        assert_eq!(syndrome.len(), self.syndrome_len, "syndrome length mismatch");
        let key = self.key(syndrome);
        if self.syndrome_of(key) != *syndrome {
            return None;
        }
        Some(self.leaders[key] as usize)
    }

    fn key(&self, syndrome: &BitVec) -> usize {
        self.pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| syndrome.get(p))
            .fold(0usize, |k, (t, _)| k | (1 << t))
    }

    fn syndrome_of(&self, key: usize) -> BitVec {
        let mut s = BitVec::zeros(self.syndrome_len);
        for (t, b) in self.basis.iter().enumerate() {
            if (key >> t) & 1 == 1 {
                s.xor_assign(b);
            }
        }
        s
    }

    /// Walks every `(syndrome weight, leader weight)` pair over the nonzero
    /// syndromes in Gray-code order, without materialising syndromes.
    pub(crate) fn for_each_nonzero(&self, mut f: impl FnMut(usize, usize)) {
        let words = self.syndrome_len.div_ceil(WORD_BITS);
        let mut current = vec![0u64; words];
        for i in 1usize..self.leaders.len() {
            let t = i.trailing_zeros() as usize;
            crate::f2::xor_words(&mut current, self.basis[t].words());
            let gray = i ^ (i >> 1);
            f(crate::f2::weight_words(&current), self.leaders[gray] as usize);
        }
    }

    /// All `(syndrome, leader weight)` entries, zero syndrome first.
    pub fn entries(&self) -> impl Iterator<Item = (BitVec, usize)> + '_ {
        (0..self.leaders.len()).map(|k| (self.syndrome_of(k), self.leaders[k] as usize))
    }
}
