//! Integer partitions, dominance order, Young diagram contents and hook
//! length dimensions.
//!
//! Partitions are kept in canonical form: parts weakly decreasing, no zero
//! parts. The derived [`Ord`] is lexicographic on the part sequence, which
//! refines dominance; tables list rows in descending and columns in
//! ascending canonical order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::factorial;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

/// Outcome of comparing two partitions in the dominance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    Greater,
    Less,
    Equal,
    Incomparable,
}

/// The contents `j - i` of the boxes of the doubled diagram `2λ`, in reading
/// order (left to right, top to bottom).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContentVector {
    pub values: Vec<i64>,
    pub shape: Partition,
}

/// A cycle type of a union of two matchings: part `k` stands for a cycle of
/// length `2k`.
pub type CycleType = Partition;

impl Partition {
    /// Builds a partition, sorting the parts and dropping zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Builds a partition from parts that must already be weakly decreasing
    /// and positive.
    pub fn from_parts(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be positive: {parts:?}"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `[n]` (empty for `n = 0`).
    pub fn row(n: usize) -> Self {
        Partition::new(vec![n as u32])
    }

    /// The one-column partition `[1^n]`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// `[n-1, 1]`.
    pub fn standard(n: usize) -> Self {
        assert!(n >= 2, "[n-1,1] needs n >= 2");
        Partition::new(vec![n as u32 - 1, 1])
    }

    /// `prefix` padded with ones up to size `n`.
    pub fn padded(prefix: &Partition, n: usize) -> Result<Self> {
        let size = prefix.size();
        if n < size {
            return Err(Error::InvalidArgument(format!(
                "cannot pad {prefix} (size {size}) to size {n}"
            )));
        }
        let mut parts = prefix.parts.clone();
        parts.extend(std::iter::repeat_n(1, n - size));
        Ok(Partition::new(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Multiplicity of the part value `v`.
    pub fn multiplicity(&self, v: u32) -> usize {
        self.parts.iter().filter(|&&p| p == v).count()
    }

    /// Number of parts equal to one.
    pub fn ones(&self) -> usize {
        self.multiplicity(1)
    }

    /// `(value, multiplicity)` pairs in decreasing value order.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// The parts different from one.
    pub fn non_unit_prefix(&self) -> Partition {
        Partition {
            parts: self.parts.iter().copied().filter(|&p| p > 1).collect(),
        }
    }

    /// Each part doubled: `λ -> 2λ`.
    pub fn double(&self) -> Partition {
        Partition {
            parts: self.parts.iter().map(|&p| 2 * p).collect(),
        }
    }

    /// Each part decreased by one, dropping parts that become zero.
    pub fn decremented(&self) -> Partition {
        Partition::new(self.parts.iter().map(|&p| p - 1).collect())
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0) as usize;
        let parts = (0..width)
            .map(|j| self.parts.iter().filter(|&&p| p as usize > j).count() as u32)
            .collect();
        Partition { parts }
    }

    pub fn prefix_sums(&self) -> Vec<u64> {
        self.parts
            .iter()
            .scan(0u64, |acc, &p| {
                *acc += p as u64;
                Some(*acc)
            })
            .collect()
    }

    pub fn dominance(&self, other: &Partition) -> Result<Dominance> {
        dominance_compare(self, other)
    }

    /// Content vector of the doubled diagram `2λ`.
    pub fn content(&self) -> ContentVector {
        content(self)
    }

    /// Content of every box of this (undoubled) diagram, reading order.
    pub fn box_contents(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &len) in self.parts.iter().enumerate() {
            for j in 0..len as i64 {
                out.push(j - i as i64);
            }
        }
        out
    }

    /// Hook lengths of this diagram, reading order.
    pub fn hook_lengths(&self) -> Vec<u64> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &len) in self.parts.iter().enumerate() {
            for j in 0..len as usize {
                let arm = len as usize - j - 1;
                let leg = conj.part(j) as usize - i - 1;
                out.push((arm + leg + 1) as u64);
            }
        }
        out
    }

    /// Dimension of the irreducible `S_m` representation indexed by this
    /// partition of `m`, via the hook length formula.
    pub fn hook_dimension(&self) -> BigUint {
        let hooks = self
            .hook_lengths()
            .into_iter()
            .fold(BigUint::one(), |acc, h| acc * h);
        factorial(self.size() as u64) / hooks
    }

    /// Same dimension via the Frobenius determinant formula on first-column
    /// hook lengths `l_i = μ_i + k - i`.
    pub fn frobenius_dimension(&self) -> BigUint {
        let k = self.len();
        let ell: Vec<u64> = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, &p)| p as u64 + (k - 1 - i) as u64)
            .collect();
        let mut num = factorial(self.size() as u64);
        for a in 0..k {
            for b in a + 1..k {
                num *= ell[a] - ell[b];
            }
        }
        let den = ell
            .iter()
            .fold(BigUint::one(), |acc, &l| acc * factorial(l));
        num / den
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `[a,b,c]`, accepting `a^m` for `m` copies of `a`. Whitespace
    /// is ignored; the expanded parts must be positive and weakly
    /// decreasing.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse(s, "expected `[` ... `]`"))?;
        parse_parts(inner).and_then(|parts| {
            Partition::from_parts(parts).map_err(|e| Error::parse(s, e.to_string()))
        })
    }
}

impl Partition {
    /// Like [`FromStr`] but brackets are optional (`3,2` or `[3,2]`).
    pub fn parse_loose(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') {
            t.parse()
        } else {
            format!("[{t}]").parse()
        }
    }
}

fn parse_parts(inner: &str) -> Result<Vec<u32>> {
    let mut parts = Vec::new();
    if inner.is_empty() {
        return Ok(parts);
    }
    for tok in inner.split(',') {
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (b, Some(e)),
            None => (tok, None),
        };
        let value: u32 = base
            .parse()
            .map_err(|_| Error::parse(tok, "expected a positive integer"))?;
        if value == 0 {
            return Err(Error::parse(tok, "parts must be positive"));
        }
        let count: usize = match exp {
            Some(e) => e
                .parse()
                .map_err(|_| Error::parse(tok, "expected an integer exponent"))?,
            None => 1,
        };
        parts.extend(std::iter::repeat_n(value, count));
    }
    Ok(parts)
}

/// All partitions of `n`, in descending canonical order (`[n]` first,
/// `[1^n]` last).
pub fn generate_partitions(n: usize) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

/// Dominance comparison of two partitions of the same integer.
pub fn dominance_compare(a: &Partition, b: &Partition) -> Result<Dominance> {
    if a.size() != b.size() {
        return Err(Error::SizeMismatch {
            left: a.size(),
            right: b.size(),
        });
    }
    if a == b {
        return Ok(Dominance::Equal);
    }
    let len = a.len().max(b.len());
    let (mut sa, mut sb) = (0u64, 0u64);
    let (mut ge, mut le) = (true, true);
    for i in 0..len {
        sa += a.part(i) as u64;
        sb += b.part(i) as u64;
        match sa.cmp(&sb) {
            Ordering::Greater => le = false,
            Ordering::Less => ge = false,
            Ordering::Equal => {}
        }
    }
    Ok(match (ge, le) {
        (true, false) => Dominance::Greater,
        (false, true) => Dominance::Less,
        _ => Dominance::Incomparable,
    })
}

pub fn double(lambda: &Partition) -> Partition {
    lambda.double()
}

pub fn content(lambda: &Partition) -> ContentVector {
    let shape = lambda.double();
    ContentVector {
        values: shape.box_contents(),
        shape,
    }
}

/// The partitions `λ⁺ ⊢ n+1` obtained by adding one unit to row `i`
/// (1-based; `i = k+1` opens a new row), paired with `i`.
pub fn successors(lambda: &Partition) -> Vec<(Partition, usize)> {
    let k = lambda.len();
    let mut out = Vec::new();
    for i in 1..=k + 1 {
        let admissible = i == 1 || i == k + 1 || lambda.part(i - 2) > lambda.part(i - 1);
        if !admissible {
            continue;
        }
        if let Some(next) = add_to_row(lambda, i) {
            out.push((next, i));
        }
    }
    out
}

/// `λ` with one unit added to row `i` (1-based), when the result is a
/// partition.
pub fn add_to_row(lambda: &Partition, i: usize) -> Option<Partition> {
    let k = lambda.len();
    if i == 0 || i > k + 1 {
        return None;
    }
    if i >= 2 && lambda.part(i - 2) <= lambda.part(i - 1) {
        return None;
    }
    let mut parts = lambda.parts.clone();
    if i == k + 1 {
        parts.push(1);
    } else {
        parts[i - 1] += 1;
    }
    Some(Partition { parts })
}

/// `f^{2λ}`: the eigenspace dimension attached to `λ`, by the hook length
/// formula on the doubled diagram.
pub fn dim_hook(lambda: &Partition) -> BigUint {
    lambda.double().hook_dimension()
}
