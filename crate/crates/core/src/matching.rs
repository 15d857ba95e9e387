//! Perfect matchings of `K_{2n}`: enumeration, ranking, and the cycle type
//! of the union of two matchings.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::partition::{CycleType, Partition};

/// Largest `n` for which matchings are enumerated or ranked.
pub const MAX_ENUM_N: usize = 9;

/// A perfect matching stored as a fixed-point-free involution on the
/// vertices `0..2n`. The text form uses vertices `1..=2n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    partner: Vec<u8>,
}

impl Matching {
    pub fn from_partner(partner: Vec<u8>) -> Result<Self> {
        let len = partner.len();
        if !len.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "matching on an odd vertex count {len}"
            )));
        }
        for (v, &p) in partner.iter().enumerate() {
            if p as usize >= len || p as usize == v || partner[p as usize] as usize != v {
                return Err(Error::InvalidArgument(format!(
                    "partner array is not a fixed-point-free involution at vertex {}",
                    v + 1
                )));
            }
        }
        Ok(Matching { partner })
    }

    /// Builds a matching from 0-based edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut partner = vec![u8::MAX; 2 * n];
        if edges.len() != n {
            return Err(Error::InvalidArgument(format!(
                "expected {n} edges, got {}",
                edges.len()
            )));
        }
        for &(a, b) in edges {
            if a >= 2 * n || b >= 2 * n || partner[a] != u8::MAX || partner[b] != u8::MAX || a == b
            {
                return Err(Error::InvalidArgument(format!(
                    "edge {{{},{}}} is invalid or overlaps another edge",
                    a + 1,
                    b + 1
                )));
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
        Matching::from_partner(partner)
    }

    /// The base matching `{1,2},{3,4},...`.
    pub fn base(n: usize) -> Self {
        Matching {
            partner: (0..2 * n).map(|v| (v ^ 1) as u8).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn partner(&self) -> &[u8] {
        &self.partner
    }

    /// Edges `(a, b)` with `a < b`, sorted by `a` (0-based).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(v, &p)| v < p as usize)
            .map(|(v, &p)| (v, p as usize))
            .collect()
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        self.partner[a] as usize == b
    }

    /// Image under the vertex permutation `sigma` (0-based).
    pub fn permute(&self, sigma: &[u8]) -> Matching {
        let mut partner = vec![0u8; self.partner.len()];
        for (v, &p) in self.partner.iter().enumerate() {
            partner[sigma[v] as usize] = sigma[p as usize];
        }
        Matching { partner }
    }

    /// A permutation sending the base matching onto `self`: the `k`-th base
    /// edge goes to the `k`-th sorted edge, endpoint-wise.
    pub fn translator(&self) -> Vec<u8> {
        let mut sigma = vec![0u8; self.partner.len()];
        for (k, (a, b)) in self.edges().into_iter().enumerate() {
            sigma[2 * k] = a as u8;
            sigma[2 * k + 1] = b as u8;
        }
        sigma
    }

    /// Position in enumeration order.
    pub fn rank(&self) -> u64 {
        rank_partner(&self.partner)
    }

    pub fn unrank(n: usize, rank: u64) -> Result<Self> {
        let total = matching_total(n)?;
        if rank >= total {
            return Err(Error::InvalidArgument(format!(
                "rank {rank} out of range for n = {n}"
            )));
        }
        let mut digits = vec![0u64; n];
        let mut r = rank;
        for (j, d) in digits.iter_mut().enumerate().rev() {
            let radix = (2 * (n - j) - 1) as u64;
            *d = r % radix;
            r /= radix;
        }
        let mut partner = vec![u8::MAX; 2 * n];
        let mut free: Vec<u8> = (0..2 * n as u8).collect();
        for d in digits {
            let a = free.remove(0);
            let b = free.remove(d as usize);
            partner[a as usize] = b;
            partner[b as usize] = a;
        }
        Ok(Matching { partner })
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matching {
        let mut verts: Vec<u8> = (0..2 * n as u8).collect();
        verts.shuffle(rng);
        let mut partner = vec![0u8; 2 * n];
        for pair in verts.chunks(2) {
            partner[pair[0] as usize] = pair[1];
            partner[pair[1] as usize] = pair[0];
        }
        Matching { partner }
    }
}

/// Rank of a partner array: mixed-radix digits `(2n-1), (2n-3), ...`, each
/// the position of the partner of the smallest unmatched vertex among the
/// remaining free vertices.
pub fn rank_partner(partner: &[u8]) -> u64 {
    let len = partner.len();
    let mut used: u32 = 0;
    let mut rank = 0u64;
    for a in 0..len {
        if used & (1 << a) != 0 {
            continue;
        }
        let b = partner[a] as usize;
        let mask_between = ((1u32 << b) - 1) & !((1u32 << (a + 1)) - 1);
        let digit = (mask_between & !used).count_ones() as u64;
        let remaining = (len as u32 - used.count_ones()) as u64;
        rank = rank * (remaining - 1) + digit;
        used |= (1 << a) | (1 << b);
    }
    rank
}

/// `(2n-1)!!` as a machine integer, for enumerable sizes.
pub fn matching_total(n: usize) -> Result<u64> {
    if n == 0 || n > MAX_ENUM_N {
        return Err(Error::ResourceGuard {
            what: "matching enumeration".into(),
            n,
            limit: MAX_ENUM_N,
            estimate: "requires 1 <= n".into(),
        });
    }
    Ok((1..=n as u64).map(|k| 2 * k - 1).product())
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges = self.edges();
        for (i, (a, b)) in edges.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{} {}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Matching {
    type Err = Error;

    /// Parses `a1 a2 | a3 a4 | ...` with 1-based vertices in any order.
    fn from_str(s: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for block in s.split('|') {
            let nums: Vec<&str> = block.split_whitespace().collect();
            if nums.len() != 2 {
                return Err(Error::parse(block.trim(), "expected two vertices"));
            }
            let mut pair = [0usize; 2];
            for (slot, tok) in pair.iter_mut().zip(&nums) {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(*tok, "expected a vertex number"))?;
                if v == 0 {
                    return Err(Error::parse(*tok, "vertices are numbered from 1"));
                }
                *slot = v - 1;
            }
            edges.push((pair[0], pair[1]));
        }
        let n = edges.len();
        Matching::from_edges(n, &edges).map_err(|e| Error::parse(s, e.to_string()))
    }
}

/// Calls `f` on every matching of `K_{2n}` in rank order, as partner arrays.
pub fn for_each_partner(n: usize, mut f: impl FnMut(&[u8])) {
    let mut partner = vec![u8::MAX; 2 * n];
    fn rec(partner: &mut [u8], f: &mut impl FnMut(&[u8])) {
        let Some(a) = partner.iter().position(|&p| p == u8::MAX) else {
            f(partner);
            return;
        };
        for b in a + 1..partner.len() {
            if partner[b] != u8::MAX {
                continue;
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
            rec(partner, f);
            partner[a] = u8::MAX;
            partner[b] = u8::MAX;
        }
    }
    if n > 0 {
        rec(&mut partner, &mut f);
    }
}

/// Calls `f` on every matching whose first edge is `{0, first}`, in rank
/// order. Used to split enumeration into independent chunks.
pub fn for_each_partner_with_first(n: usize, first: usize, mut f: impl FnMut(&[u8])) {
    let mut partner = vec![u8::MAX; 2 * n];
    partner[0] = first as u8;
    partner[first] = 0;
    fn rec(partner: &mut [u8], f: &mut impl FnMut(&[u8])) {
        let Some(a) = partner.iter().position(|&p| p == u8::MAX) else {
            f(partner);
            return;
        };
        for b in a + 1..partner.len() {
            if partner[b] != u8::MAX {
                continue;
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
            rec(partner, f);
            partner[a] = u8::MAX;
            partner[b] = u8::MAX;
        }
    }
    rec(&mut partner, &mut f);
}

/// All matchings of `K_{2n}` in rank order.
pub fn enumerate(n: usize) -> Result<Vec<Matching>> {
    let total = matching_total(n)?;
    let mut out = Vec::with_capacity(total as usize);
    for_each_partner(n, |p| {
        out.push(Matching {
            partner: p.to_vec(),
        })
    });
    Ok(out)
}

/// Half-lengths of the cycles of `P ∪ Q`, as a multiset key: the count of
/// cycles of half-length `L` occupies bits `5(L-1)..5L`. Valid for `n <= 12`.
pub fn relation_key(p: &[u8], q: &[u8]) -> u64 {
    let len = p.len();
    let mut seen: u32 = 0;
    let mut key = 0u64;
    for start in 0..len {
        if seen & (1 << start) != 0 {
            continue;
        }
        let mut v = start;
        let mut half = 0u32;
        loop {
            let w = p[v] as usize;
            seen |= (1 << v) | (1 << w);
            half += 1;
            v = q[w] as usize;
            if v == start {
                break;
            }
        }
        key += 1u64 << (5 * (half - 1));
    }
    key
}

/// Decodes a [`relation_key`] into a partition.
pub fn key_to_partition(key: u64) -> Partition {
    let mut parts = Vec::new();
    for len in (1..=12u32).rev() {
        let count = (key >> (5 * (len - 1))) & 31;
        parts.extend(std::iter::repeat_n(len, count as usize));
    }
    Partition::new(parts)
}

/// Encodes a partition of `n <= 12` as a [`relation_key`].
pub fn partition_to_key(mu: &Partition) -> u64 {
    mu.parts().iter().map(|&p| 1u64 << (5 * (p - 1))).sum()
}

/// Cycle type of `P ∪ Q`, halved: a cycle of length `2k` contributes a part
/// `k`, so a shared edge contributes a part 1.
pub fn relation(p: &Matching, q: &Matching) -> Result<CycleType> {
    if p.partner.len() != q.partner.len() {
        return Err(Error::SizeMismatch {
            left: p.n(),
            right: q.n(),
        });
    }
    let len = p.partner.len();
    let mut seen = vec![false; len];
    let mut parts = Vec::new();
    for start in 0..len {
        if seen[start] {
            continue;
        }
        let mut v = start;
        let mut half = 0u32;
        loop {
            let w = p.partner[v] as usize;
            seen[v] = true;
            seen[w] = true;
            half += 1;
            v = q.partner[w] as usize;
            if v == start {
                break;
            }
        }
        parts.push(half);
    }
    Ok(Partition::new(parts))
}

/// A matching `Q` with `relation(base, Q) = mu`: consecutive base edges are
/// chained into cycles of the requested half-lengths.
pub fn representative(mu: &Partition) -> Matching {
    let n = mu.size();
    let mut partner = vec![0u8; 2 * n];
    let mut start = 0usize;
    for &k in mu.parts() {
        let k = k as usize;
        // vertices 2start .. 2(start+k); link 2j+1 to 2j+2 cyclically
        for j in 0..k {
            let a = 2 * (start + j) + 1;
            let b = 2 * (start + (j + 1) % k);
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
        start += k;
    }
    Matching { partner }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counts() {
        assert_eq!(enumerate(2).unwrap().len(), 3);
        assert_eq!(enumerate(5).unwrap().len(), 945);
        let mut c = 0;
        for_each_partner(7, |_| c += 1);
        assert_eq!(c, 135_135);
        assert!(enumerate(10).is_err());
        assert!(enumerate(0).is_err());
    }

    #[test]
    fn rank_unrank_inverse() {
        for n in 1..=5 {
            for (i, m) in enumerate(n).unwrap().iter().enumerate() {
                assert_eq!(m.rank(), i as u64);
                assert_eq!(&Matching::unrank(n, i as u64).unwrap(), m);
            }
        }
    }

    #[test]
    fn figure_one_example() {
        // two matchings of K_12 whose union has cycles of lengths 6, 4, 2
        let p: Matching = "1 2 | 3 4 | 5 6 | 7 8 | 9 10 | 11 12".parse().unwrap();
        let q: Matching = "2 3 | 4 5 | 6 1 | 8 9 | 10 7 | 11 12".parse().unwrap();
        assert_eq!(relation(&p, &q).unwrap().to_string(), "[3,2,1]");
        assert_eq!(relation(&p, &p).unwrap(), Partition::column(6));
        let q2: Matching = "1 3 | 2 4".parse().unwrap();
        assert_eq!(
            relation(&Matching::base(2), &q2).unwrap(),
            Partition::row(2)
        );
    }

    #[test]
    fn text_form() {
        let m: Matching = "4 1 | 2 3".parse().unwrap();
        assert_eq!(m.to_string(), "1 4 | 2 3");
        assert!("1 2 | 2 3".parse::<Matching>().is_err());
        assert!("1 2 3".parse::<Matching>().is_err());
        assert!("0 1".parse::<Matching>().is_err());
    }

    #[test]
    fn representatives_have_requested_type() {
        for n in 1..=8 {
            for mu in crate::partition::generate_partitions(n) {
                let q = representative(&mu);
                assert_eq!(relation(&Matching::base(n), &q).unwrap(), mu);
                assert_eq!(
                    key_to_partition(relation_key(&Matching::base(n).partner, &q.partner)),
                    mu
                );
                assert_eq!(
                    partition_to_key(&mu),
                    relation_key(&Matching::base(n).partner, &q.partner)
                );
            }
        }
    }

    #[test]
    fn relation_symmetric_and_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let n = rng.gen_range(1..=9);
            let p = Matching::random(n, &mut rng);
            let q = Matching::random(n, &mut rng);
            assert_eq!(relation(&p, &q).unwrap(), relation(&q, &p).unwrap());
        }
        for _ in 0..1_000 {
            let n = rng.gen_range(1..=9);
            let p = Matching::random(n, &mut rng);
            let q = Matching::random(n, &mut rng);
            let mut sigma: Vec<u8> = (0..2 * n as u8).collect();
            sigma.shuffle(&mut rng);
            assert_eq!(
                relation(&p.permute(&sigma), &q.permute(&sigma)).unwrap(),
                relation(&p, &q).unwrap()
            );
        }
    }

    #[test]
    fn translator_maps_base() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let q = Matching::random(6, &mut rng);
            assert_eq!(Matching::base(6).permute(&q.translator()), q);
        }
    }
}
