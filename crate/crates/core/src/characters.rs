//! Irreducible characters of the symmetric group by the Murnaghan–Nakayama
//! rule, using bead moves on beta-sets.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Memoized character evaluator. Keys are (shape, remaining cycle lengths),
/// so one cache can serve many cycle types. Not shared between threads.
#[derive(Default, Debug)]
pub struct CharacterCache {
    memo: HashMap<(Vec<u32>, Vec<u32>), BigInt>,
}

impl CharacterCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `χ^shape(σ)` where `σ` has cycle type `cycle_type`.
    pub fn chi(&mut self, shape: &Partition, cycle_type: &Partition) -> Result<BigInt> {
        if shape.size() != cycle_type.size() {
            return Err(Error::SizeMismatch {
                left: shape.size(),
                right: cycle_type.size(),
            });
        }
        Ok(self.rec(shape.parts().to_vec(), cycle_type.parts()))
    }

    /// Character value at a cycle-length multiset given in any order.
    pub fn chi_cycles(&mut self, shape: &Partition, cycles: &[u32]) -> Result<BigInt> {
        self.chi(shape, &Partition::new(cycles.to_vec()))
    }

    fn rec(&mut self, shape: Vec<u32>, cycles: &[u32]) -> BigInt {
        let Some((&r, rest)) = cycles.split_first() else {
            return if shape.is_empty() {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        };
        if shape.len() == 1 {
            return BigInt::one();
        }
        let key = (shape, cycles.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let shape = &key.0;
        let mut total = BigInt::zero();
        for (next, sign) in remove_rim_hooks(shape, r) {
            let v = self.rec(next, rest);
            if sign {
                total -= v;
            } else {
                total += v;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// All shapes obtained from `shape` by removing a rim hook of length `r`,
/// with `true` marking an odd leg length (negative sign).
fn remove_rim_hooks(shape: &[u32], r: u32) -> Vec<(Vec<u32>, bool)> {
    let k = shape.len();
    let beta: Vec<i64> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (k - 1 - i) as i64)
        .collect();
    let mut out = Vec::new();
    for idx in 0..k {
        let from = beta[idx];
        let to = from - r as i64;
        if to < 0 || beta.contains(&to) {
            continue;
        }
        let between = beta.iter().filter(|&&b| b > to && b < from).count();
        let mut nb = beta.clone();
        nb[idx] = to;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let len = nb.len();
        let parts: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(i, &b)| (b - (len - 1 - i) as i64) as u32)
            .filter(|&p| p > 0)
            .collect();
        out.push((parts, between % 2 == 1));
    }
    out
}

/// `χ^λ2(σ)` for `σ` of cycle type `sigma_type`, with a throwaway cache.
pub fn irr_char(lambda2: &Partition, sigma_type: &Partition) -> Result<BigInt> {
    CharacterCache::new().chi(lambda2, sigma_type)
}
