//! Brute-force scheme data: intersection numbers, quotient counts for the
//! partition by the edge `{1,2}`, and graph diameters.

use std::collections::HashMap;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::matching_count;
use crate::error::{Error, Result};
use crate::matching::{
    for_each_partner, for_each_partner_with_first, matching_total, partition_to_key, rank_partner,
    relation_key, representative, Matching,
};
use crate::partition::{generate_partitions, Partition};

pub const DEFAULT_MAX_INTERSECTION_N: usize = 8;
pub const DEFAULT_MAX_DIAMETER_N: usize = 7;

/// Intersection numbers of the scheme on matchings of `K_{2n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionData {
    pub n: usize,
    /// Relations in ascending canonical order (`[1^n]` first).
    pub relations: Vec<Partition>,
    /// `reps[k]` is related to the base matching by `relations[k]`.
    pub reps: Vec<Matching>,
    /// `p[k][i][j]`: number of `R` with `rel(P0,R) = i` and `rel(R,Q_k) = j`.
    pub p: Vec<Vec<Vec<u64>>>,
    /// Brute-force valencies, counted from the base matching.
    pub valencies: Vec<u64>,
}

/// Rough working-set estimate for an oracle run.
pub fn oracle_estimate(n: usize) -> String {
    let count = matching_count(n);
    let bytes = count.clone() * 2u32 * n as u32 + BigUint::from(1u32 << 20);
    format!(
        "{count} matchings, about {} MiB working memory",
        bytes / BigUint::from(1u32 << 20)
    )
}

/// BFS memory estimate: one visited bit plus one frontier slot per matching.
pub fn diameter_estimate(n: usize) -> String {
    let count = matching_count(n);
    let bytes = &count / 8u32 + &count * 8u32;
    format!(
        "{count} vertices, about {} MiB for the visited set and frontier",
        bytes / BigUint::from(1u32 << 20) + 1u32
    )
}

fn guard(what: &str, n: usize, limit: usize, estimate: String) -> Result<()> {
    if n < 1 || n > limit {
        return Err(Error::ResourceGuard {
            what: what.into(),
            n,
            limit,
            estimate,
        });
    }
    Ok(())
}

struct RelationIndex {
    index: HashMap<u64, usize>,
}

impl RelationIndex {
    fn new(relations: &[Partition]) -> Self {
        let index = relations
            .iter()
            .enumerate()
            .map(|(i, r)| (partition_to_key(r), i))
            .collect();
        RelationIndex { index }
    }

    fn of(&self, key: u64) -> usize {
        self.index[&key]
    }
}

/// Computes all intersection numbers by enumerating every matching once per
/// relation representative. Work is split by the partner of vertex 1 and
/// merged by addition, so the result does not depend on scheduling.
pub fn intersection_numbers(n: usize, max_n: usize) -> Result<IntersectionData> {
    guard(
        "intersection numbers",
        n,
        max_n.min(crate::matching::MAX_ENUM_N),
        oracle_estimate(n),
    )?;
    let mut relations = generate_partitions(n);
    relations.reverse();
    let d = relations.len();
    let idx = RelationIndex::new(&relations);
    let reps: Vec<Matching> = relations.iter().map(representative).collect();
    let base = Matching::base(n);
    let base_p = base.partner().to_vec();
    let rep_ps: Vec<Vec<u8>> = reps.iter().map(|m| m.partner().to_vec()).collect();

    let chunks: Vec<(Vec<Vec<Vec<u64>>>, Vec<u64>)> = (1..2 * n)
        .into_par_iter()
        .map(|first| {
            let mut p = vec![vec![vec![0u64; d]; d]; d];
            let mut val = vec![0u64; d];
            for_each_partner_with_first(n, first, |r| {
                let i = idx.of(relation_key(&base_p, r));
                val[i] += 1;
                for (k, q) in rep_ps.iter().enumerate() {
                    let j = idx.of(relation_key(r, q));
                    p[k][i][j] += 1;
                }
            });
            (p, val)
        })
        .collect();

    let mut p = vec![vec![vec![0u64; d]; d]; d];
    let mut valencies = vec![0u64; d];
    for (cp, cv) in chunks {
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    p[k][i][j] += cp[k][i][j];
                }
            }
        }
        for i in 0..d {
            valencies[i] += cv[i];
        }
    }
    Ok(IntersectionData {
        n,
        relations,
        reps,
        p,
        valencies,
    })
}

impl IntersectionData {
    pub fn index_of(&self, mu: &Partition) -> Option<usize> {
        self.relations.iter().position(|r| r == mu)
    }

    /// The intersection matrix `B_i` with `B_i[j][k] = p^k_{ij}`, whose
    /// eigenvectors are the columns of the eigenvalue table.
    pub fn intersection_matrix(&self, i: usize) -> Vec<Vec<u64>> {
        let d = self.relations.len();
        (0..d)
            .map(|j| (0..d).map(|k| self.p[k][i][j]).collect())
            .collect()
    }

    /// Every row sum `Σ_j p[k][i][j]` equals the valency of `i`.
    pub fn row_sums_ok(&self) -> bool {
        self.p.iter().all(|pk| {
            pk.iter()
                .zip(&self.valencies)
                .all(|(row, &v)| row.iter().sum::<u64>() == v)
        })
    }
}

/// The 2x2 quotient of `X_μ` for the partition of matchings into those
/// containing the edge `{1,2}` and the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub mu: Partition,
    pub a_mu: u64,
    pub b_mu: u64,
    pub valency: u64,
}

impl QuotientMatrix {
    pub fn matrix(&self) -> [[u64; 2]; 2] {
        [
            [self.a_mu, self.valency - self.a_mu],
            [self.b_mu, self.valency - self.b_mu],
        ]
    }

    /// Eigenvalues `v_μ` and `a_μ - b_μ`.
    pub fn eigenvalues(&self) -> (i64, i64) {
        (self.valency as i64, self.a_mu as i64 - self.b_mu as i64)
    }
}

/// Histogram of relation keys from `from` to every matching containing the
/// edge `{0,1}`.
fn counts_into_block(n: usize, from: &[u8]) -> HashMap<u64, u64> {
    let mut hist = HashMap::new();
    for_each_partner_with_first(n, 1, |r| {
        *hist.entry(relation_key(from, r)).or_insert(0) += 1;
    });
    hist
}

/// The first matching in rank order that does not contain `{1,2}`.
fn outside_representative(n: usize) -> Matching {
    let mut edges = vec![(0, 2), (1, 3)];
    for k in 2..n {
        edges.push((2 * k, 2 * k + 1));
    }
    Matching::from_edges(n, &edges).expect("valid edges")
}

/// Quotient counts for every relation at once.
pub fn quotient_all(n: usize, max_n: usize) -> Result<Vec<QuotientMatrix>> {
    guard(
        "quotient counts",
        n,
        max_n.min(crate::matching::MAX_ENUM_N),
        oracle_estimate(n),
    )?;
    if n < 2 {
        return Err(Error::InvalidArgument("quotient needs n >= 2".into()));
    }
    let inside = counts_into_block(n, Matching::base(n).partner());
    let outside = counts_into_block(n, outside_representative(n).partner());
    let mut out = Vec::new();
    for mu in generate_partitions(n).into_iter().rev() {
        let key = partition_to_key(&mu);
        let valency = crate::spectra::valency(&mu)
            .try_into()
            .map_err(|_| Error::Internal("valency overflow".into()))?;
        out.push(QuotientMatrix {
            a_mu: inside.get(&key).copied().unwrap_or(0),
            b_mu: outside.get(&key).copied().unwrap_or(0),
            valency,
            mu,
        });
    }
    Ok(out)
}

pub fn quotient_counts(mu: &Partition, max_n: usize) -> Result<QuotientMatrix> {
    quotient_all(mu.size(), max_n)?
        .into_iter()
        .find(|q| &q.mu == mu)
        .ok_or_else(|| Error::Internal(format!("no quotient row for {mu}")))
}

/// Recomputes the block counts from `samples` random matchings on each side
/// of the partition and returns `true` when every one agrees with the
/// representatives' counts.
pub fn check_equitable(n: usize, samples: usize, seed: u64, max_n: usize) -> Result<bool> {
    let reference = quotient_all(n, max_n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inside_done = 0;
    let mut outside_done = 0;
    while inside_done < samples || outside_done < samples {
        let m = Matching::random(n, &mut rng);
        let inside = m.contains_edge(0, 1);
        if (inside && inside_done >= samples) || (!inside && outside_done >= samples) {
            continue;
        }
        let hist = counts_into_block(n, m.partner());
        for q in &reference {
            let got = hist.get(&partition_to_key(&q.mu)).copied().unwrap_or(0);
            let want = if inside { q.a_mu } else { q.b_mu };
            if got != want {
                return Ok(false);
            }
        }
        if inside {
            inside_done += 1;
        } else {
            outside_done += 1;
        }
    }
    Ok(true)
}

/// Result of a diameter computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    /// Not every vertex is reachable; `reached` counts those that are,
    /// including the start.
    Disconnected {
        reached: u64,
        total: u64,
    },
}

impl std::fmt::Display for Diameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Disconnected { reached, total } => {
                write!(f, "disconnected ({reached} of {total} reached)")
            }
        }
    }
}

/// Diameter of `X_μ` by BFS from the base matching. The graph is
/// vertex-transitive, so this eccentricity is the diameter. Neighbours of a
/// vertex `Q` are the base neighbours moved by a permutation taking the base
/// matching to `Q`.
pub fn diameter(mu: &Partition, max_n: usize) -> Result<Diameter> {
    let n = mu.size();
    guard(
        "diameter",
        n,
        max_n.min(crate::matching::MAX_ENUM_N),
        diameter_estimate(n),
    )?;
    let total = matching_total(n)?;
    let base = Matching::base(n);
    let key = partition_to_key(mu);
    let mut nbrs: Vec<Vec<u8>> = Vec::new();
    if *mu != Partition::column(n) {
        for_each_partner(n, |r| {
            if relation_key(base.partner(), r) == key {
                nbrs.push(r.to_vec());
            }
        });
    }
    let mut visited = vec![0u64; (total as usize).div_ceil(64)];
    let mark = |visited: &mut [u64], r: u64| -> bool {
        let (w, b) = ((r / 64) as usize, r % 64);
        let fresh = visited[w] & (1 << b) == 0;
        visited[w] |= 1 << b;
        fresh
    };
    mark(&mut visited, base.rank());
    let mut reached = 1u64;
    let mut frontier = vec![base.rank()];
    let mut depth = 0usize;
    let len = 2 * n;
    let mut image = vec![0u8; len];
    while !frontier.is_empty() && reached < total {
        let mut next = Vec::new();
        'outer: for &r in &frontier {
            let q = Matching::unrank(n, r)?;
            let sigma = q.translator();
            for nb in &nbrs {
                for v in 0..len {
                    image[sigma[v] as usize] = sigma[nb[v] as usize];
                }
                let rk = rank_partner(&image);
                if mark(&mut visited, rk) {
                    reached += 1;
                    next.push(rk);
                    if reached == total {
                        break 'outer;
                    }
                }
            }
        }
        depth += 1;
        frontier = next;
    }
    if reached < total {
        return Ok(Diameter::Disconnected { reached, total });
    }
    Ok(Diameter::Finite(depth))
}

/// Diameter of `X_μ` read off the intersection numbers: the distance from
/// the base matching to a matching depends only on their relation, and
/// relation `j` is adjacent to relation `i` when `p^j_{iμ} > 0`.
pub fn scheme_distances(data: &IntersectionData, mu: &Partition) -> Result<Vec<Option<usize>>> {
    let m = data.index_of(mu).ok_or_else(|| {
        Error::InvalidArgument(format!("{mu} is not a relation for n = {}", data.n))
    })?;
    let d = data.relations.len();
    let id = data
        .index_of(&Partition::column(data.n))
        .expect("identity relation present");
    let mut dist = vec![None; d];
    dist[id] = Some(0);
    let mut frontier = vec![id];
    let mut level = 0;
    while !frontier.is_empty() {
        level += 1;
        let mut next = Vec::new();
        for &i in &frontier {
            for j in 0..d {
                if dist[j].is_none() && data.p[j][i][m] > 0 {
                    dist[j] = Some(level);
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    Ok(dist)
}

pub fn scheme_diameter(data: &IntersectionData, mu: &Partition) -> Result<Diameter> {
    let dist = scheme_distances(data, mu)?;
    if dist.iter().all(Option::is_some) {
        return Ok(Diameter::Finite(
            dist.iter().flatten().copied().max().unwrap_or(0),
        ));
    }
    let reached = data
        .relations
        .iter()
        .zip(&data.valencies)
        .zip(&dist)
        .filter(|(_, d)| d.is_some())
        .map(|((_, &v), _)| v)
        .sum();
    let total = data.valencies.iter().sum();
    Ok(Diameter::Disconnected { reached, total })
}
