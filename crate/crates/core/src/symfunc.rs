//! Power-sum expressions over `Q[t]`, evaluated at the contents of doubled
//! Young diagrams.
//!
//! The basis element indexed by the empty partition is the constant 1, and
//! `t` is replaced by the number of boxes of `2λ`, i.e. `2n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::arith::rat_int;
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::partition::{add_to_row, generate_partitions, Partition};
use crate::poly::PolyT;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PowerSumExpr {
    terms: BTreeMap<Partition, PolyT>,
}

impl PowerSumExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single term `coeff * p_monomial`.
    pub fn term(monomial: Partition, coeff: PolyT) -> Self {
        let mut e = Self::zero();
        e.add_term(monomial, coeff);
        e
    }

    /// `p_k`.
    pub fn p(k: u32) -> Self {
        Self::term(Partition::new(vec![k]), PolyT::one())
    }

    pub fn add_term(&mut self, monomial: Partition, coeff: PolyT) {
        let entry = self.terms.entry(monomial.clone()).or_default();
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&monomial);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, PolyT> {
        &self.terms
    }

    pub fn coeff(&self, monomial: &Partition) -> PolyT {
        self.terms.get(monomial).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &PolyT) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    /// Value at the contents of `2λ` with `t = 2|λ|`.
    pub fn eval(&self, lambda: &Partition) -> BigRational {
        let t = rat_int(2 * lambda.size() as i64);
        let max_k = self
            .terms
            .keys()
            .filter_map(|m| m.parts().first().copied())
            .max()
            .unwrap_or(0);
        let sums = power_sums(lambda, max_k as usize);
        self.terms
            .iter()
            .map(|(m, c)| {
                let prod: BigInt = m
                    .parts()
                    .iter()
                    .map(|&k| sums[k as usize].clone())
                    .product();
                c.eval(&t) * BigRational::from_integer(prod)
            })
            .sum()
    }
}

/// `p_k(c(2λ))` for `k = 0..=max_k`, where entry 0 is 1 (the constant
/// basis element), not the box count.
pub fn power_sums(lambda: &Partition, max_k: usize) -> Vec<BigInt> {
    let contents = lambda.content().values;
    let mut out = vec![BigInt::one()];
    let mut powers: Vec<BigInt> = contents.iter().map(|_| BigInt::one()).collect();
    for _ in 1..=max_k {
        for (pw, &c) in powers.iter_mut().zip(&contents) {
            *pw *= c;
        }
        out.push(powers.iter().sum());
    }
    out
}

pub fn eval(f: &PowerSumExpr, lambda: &Partition) -> BigRational {
    f.eval(lambda)
}

impl Add for &PowerSumExpr {
    type Output = PowerSumExpr;
    fn add(self, rhs: &PowerSumExpr) -> PowerSumExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &PowerSumExpr {
    type Output = PowerSumExpr;
    fn neg(self) -> PowerSumExpr {
        self.scale(&PolyT::constant(-BigRational::one()))
    }
}

impl Sub for &PowerSumExpr {
    type Output = PowerSumExpr;
    fn sub(self, rhs: &PowerSumExpr) -> PowerSumExpr {
        self + &(-rhs)
    }
}

impl Mul for &PowerSumExpr {
    type Output = PowerSumExpr;
    /// Monomials multiply formally: `p_λ p_ν = p_{λ ∪ ν}`.
    fn mul(self, rhs: &PowerSumExpr) -> PowerSumExpr {
        let mut out = PowerSumExpr::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let mut parts = a.parts().to_vec();
                parts.extend_from_slice(b.parts());
                out.add_term(Partition::new(parts), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for PowerSumExpr {
    /// `(<poly>)*p[<parts>]` terms joined by ` + `, monomials in descending
    /// canonical order; `0` for the zero expression.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*p{m}")?;
        }
        Ok(())
    }
}

impl FromStr for PowerSumExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        let mut rest = s;
        loop {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::parse(rest, "expected `(`"))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::parse(rest, "unclosed `(`"))?;
            let poly: PolyT = body[..close].parse()?;
            let after = body[close + 1..]
                .strip_prefix("*p")
                .ok_or_else(|| Error::parse(&body[close..], "expected `*p[...]`"))?;
            let end = after
                .find(']')
                .ok_or_else(|| Error::parse(after, "unclosed `[`"))?;
            let mono: Partition = after[..=end].parse()?;
            out.add_term(mono, poly);
            rest = &after[end + 1..];
            if rest.trim().is_empty() {
                break;
            }
            rest = rest
                .strip_prefix(" + ")
                .ok_or_else(|| Error::parse(rest, "expected ` + `"))?;
        }
        Ok(out)
    }
}

/// Prefixes with a closed form for `E_μ`, `μ = [prefix, 1^{n-|prefix|}]`.
pub fn catalog_prefixes() -> Vec<Partition> {
    ["[2]", "[3]", "[2,2]", "[4]", "[3,2]", "[5]"]
        .iter()
        .map(|s| s.parse().expect("catalog prefix"))
        .collect()
}

fn mono(s: &str) -> Partition {
    s.parse().expect("monomial")
}

/// The closed form of `E_μ` for a catalog prefix.
pub fn e_catalog(prefix: &Partition) -> Result<PowerSumExpr> {
    let rows: Vec<(&str, PolyT)> = match prefix.to_string().as_str() {
        "[2]" => vec![
            ("[1]", PolyT::from_ints(&[1], 2)),
            ("[]", PolyT::from_ints(&[0, -1], 4)),
        ],
        "[3]" => vec![
            ("[2]", PolyT::from_ints(&[1], 2)),
            ("[1]", PolyT::from_ints(&[-1], 1)),
            ("[]", PolyT::from_ints(&[0, 3, -1], 4)),
        ],
        "[2,2]" => vec![
            ("[1,1]", PolyT::from_ints(&[1], 8)),
            ("[2]", PolyT::from_ints(&[-3], 4)),
            ("[1]", PolyT::from_ints(&[10, -1], 8)),
            ("[]", PolyT::from_ints(&[0, -24, 9], 32)),
        ],
        "[4]" => vec![
            ("[3]", PolyT::from_ints(&[1], 2)),
            ("[2]", PolyT::from_ints(&[-9], 4)),
            ("[1]", PolyT::from_ints(&[11, -2], 2)),
            ("[]", PolyT::from_ints(&[0, -23, 8], 8)),
        ],
        "[3,2]" => vec![
            ("[3]", PolyT::from_ints(&[-2], 1)),
            ("[2,1]", PolyT::from_ints(&[1], 4)),
            ("[2]", PolyT::from_ints(&[60, -1], 8)),
            ("[1,1]", PolyT::from_ints(&[-1], 2)),
            ("[1]", PolyT::from_ints(&[-120, 29, -1], 8)),
            ("[]", PolyT::from_ints(&[0, 116, -47, 1], 16)),
        ],
        "[5]" => vec![
            ("[4]", PolyT::from_ints(&[1], 2)),
            ("[3]", PolyT::from_ints(&[-4], 1)),
            ("[2]", PolyT::from_ints(&[40, -3], 2)),
            ("[1,1]", PolyT::from_ints(&[-1], 1)),
            ("[1]", PolyT::from_ints(&[-34, 7], 1)),
            ("[]", PolyT::from_ints(&[0, 217, -96, 5], 12)),
        ],
        _ => return Err(Error::NotInCatalog(prefix.to_string())),
    };
    let mut e = PowerSumExpr::zero();
    for (m, c) in rows {
        e.add_term(mono(m), c);
    }
    Ok(e)
}

/// `f(c(λ⁺)) - f(c(λ))` where `λ⁺` adds one unit to row `i` (1-based).
pub fn delta_eval(f: &PowerSumExpr, lambda: &Partition, i: usize) -> Result<BigRational> {
    let next = add_to_row(lambda, i)
        .ok_or_else(|| Error::InvalidArgument(format!("row {i} is not admissible for {lambda}")))?;
    Ok(f.eval(&next) - f.eval(lambda))
}

/// Power sums with a closed-form increment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaName {
    P1,
    P2,
    P1Sq,
    P3,
}

impl FromStr for DeltaName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "p1" => Ok(DeltaName::P1),
            "p2" => Ok(DeltaName::P2),
            "p1sq" => Ok(DeltaName::P1Sq),
            "p3" => Ok(DeltaName::P3),
            other => Err(Error::parse(other, "expected one of p1, p2, p1sq, p3")),
        }
    }
}

impl DeltaName {
    pub fn expr(self) -> PowerSumExpr {
        match self {
            DeltaName::P1 => PowerSumExpr::p(1),
            DeltaName::P2 => PowerSumExpr::p(2),
            DeltaName::P1Sq => &PowerSumExpr::p(1) * &PowerSumExpr::p(1),
            DeltaName::P3 => PowerSumExpr::p(3),
        }
    }
}

/// A closed-form increment: a plain value, or `coef * p1 + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaValue {
    Value(BigInt),
    Affine { coef: BigInt, constant: BigInt },
}

impl DeltaValue {
    /// Resolves against the value of `p1` at the partition before the step.
    pub fn resolve(&self, p1: &BigInt) -> BigInt {
        match self {
            DeltaValue::Value(v) => v.clone(),
            DeltaValue::Affine { coef, constant } => coef * p1 + constant,
        }
    }
}

/// Increment formulas in terms of the row length `lambda_i` before the step
/// and the row index `i` (1-based; `lambda_i = 0` for a new row).
pub fn delta_closed_forms(name: DeltaName, lambda_i: i64, i: i64) -> DeltaValue {
    let (l, i) = (BigInt::from(lambda_i), BigInt::from(i));
    let b = |v: i64| BigInt::from(v);
    match name {
        DeltaName::P1 => DeltaValue::Value(b(-2) * (&i - 1) + b(4) * &l + 1),
        DeltaName::P2 => DeltaValue::Value(
            b(2) * &i * &i - b(6) * &i + 5 - b(8) * &i * &l + b(12) * &l + b(8) * &l * &l,
        ),
        DeltaName::P1Sq => DeltaValue::Affine {
            coef: b(8) * &l - b(4) * &i + 6,
            constant: b(16) * &l * &l - b(16) * &i * &l + b(24) * &l + b(4) * &i * &i - b(12) * &i
                + 9,
        },
        DeltaName::P3 => DeltaValue::Value(
            b(-2) * &i * &i * &i + b(12) * &i * &i * &l - b(24) * &i * &l * &l
                + b(16) * &l * &l * &l
                + b(9) * &i * &i
                - b(36) * &i * &l
                + b(36) * &l * &l
                - b(15) * &i
                + b(30) * &l
                + 9,
        ),
    }
}

/// Admissible monomials for `E_μ` with their degree bounds in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    pub prefix: Partition,
    /// `μ̄`: every part of the prefix decreased by one.
    pub reduced: Partition,
    /// Monomials in descending canonical order, each with its bound.
    pub entries: Vec<(Partition, usize)>,
}

/// Every coarsening of `parts` obtained by summing blocks of a set
/// partition.
fn coarsenings(parts: &[u32]) -> BTreeSet<Partition> {
    fn rec(idx: usize, parts: &[u32], blocks: &mut Vec<u32>, out: &mut BTreeSet<Partition>) {
        if idx == parts.len() {
            out.insert(Partition::new(blocks.clone()));
            return;
        }
        for b in 0..blocks.len() {
            blocks[b] += parts[idx];
            rec(idx + 1, parts, blocks, out);
            blocks[b] -= parts[idx];
        }
        blocks.push(parts[idx]);
        rec(idx + 1, parts, blocks, out);
        blocks.pop();
    }
    let mut out = BTreeSet::new();
    rec(0, parts, &mut Vec::new(), &mut out);
    out
}

pub fn monomial_basis(prefix: &Partition) -> Result<MonomialBasis> {
    if prefix.is_empty() || prefix.parts().iter().any(|&p| p < 2) {
        return Err(Error::InvalidArgument(format!(
            "prefix {prefix} must be non-empty with all parts >= 2"
        )));
    }
    let reduced = prefix.decremented();
    let size = reduced.size() as i64;
    let len = reduced.len() as i64;
    let mut set: BTreeSet<Partition> = coarsenings(reduced.parts());
    for m in 0..reduced.size() {
        set.extend(generate_partitions(m));
    }
    let entries = set
        .into_iter()
        .rev()
        .filter_map(|lam| {
            let bound = size - lam.size() as i64 + len - lam.len() as i64;
            (bound >= 0).then_some((lam, bound as usize))
        })
        .collect();
    Ok(MonomialBasis {
        prefix: prefix.clone(),
        reduced,
        entries,
    })
}

/// One column of eigenvalues for `μ = [prefix, 1^{n-|prefix|}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitColumn {
    pub n: usize,
    pub values: Vec<(Partition, BigInt)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitResult {
    pub expr: PowerSumExpr,
    /// Degrees actually used per monomial.
    pub degrees: Vec<(Partition, usize)>,
    /// Whether some bound was lowered to fit the number of distinct `n`.
    pub degree_capped: bool,
}

/// Recovers `E_μ` from eigenvalue columns by solving one exact linear system
/// in all coefficients of all admissible monomials. Degrees are limited to
/// one less than the number of distinct `n` supplied. The optional held-out
/// column is checked after solving.
pub fn fit_e_mu(
    prefix: &Partition,
    data: &[FitColumn],
    holdout: Option<&FitColumn>,
) -> Result<FitResult> {
    let basis = monomial_basis(prefix)?;
    let ns: BTreeSet<usize> = data.iter().map(|c| c.n).collect();
    if ns.is_empty() {
        return Err(Error::Underdetermined {
            rank: 0,
            unknowns: basis.entries.len(),
        });
    }
    if let Some(&small) = ns.iter().next() {
        if small < prefix.size() {
            return Err(Error::InvalidArgument(format!(
                "n = {small} is smaller than the prefix size {}",
                prefix.size()
            )));
        }
    }
    let cap = ns.len() - 1;
    let degrees: Vec<(Partition, usize)> = basis
        .entries
        .iter()
        .map(|(m, b)| (m.clone(), (*b).min(cap)))
        .collect();
    let degree_capped = basis.entries.iter().any(|(_, b)| *b > cap);
    let max_k = degrees
        .iter()
        .filter_map(|(m, _)| m.parts().first().copied())
        .max()
        .unwrap_or(0) as usize;

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for col in data {
        let t = rat_int(2 * col.n as i64);
        for (lam, value) in &col.values {
            if lam.size() != col.n {
                return Err(Error::SizeMismatch {
                    left: lam.size(),
                    right: col.n,
                });
            }
            let sums = power_sums(lam, max_k);
            let mut row = Vec::new();
            for (m, deg) in &degrees {
                let pm: BigInt = m
                    .parts()
                    .iter()
                    .map(|&k| sums[k as usize].clone())
                    .product();
                let pm = BigRational::from_integer(pm);
                let mut tp = BigRational::one();
                for _ in 0..=*deg {
                    row.push(&pm * &tp);
                    tp *= &t;
                }
            }
            rows.push(row);
            rhs.push(BigRational::from_integer(value.clone()));
        }
    }
    let x = solve(&rows, &rhs)?;
    let mut expr = PowerSumExpr::zero();
    let mut pos = 0;
    for (m, deg) in &degrees {
        let coeffs = x[pos..pos + deg + 1].to_vec();
        pos += deg + 1;
        expr.add_term(m.clone(), PolyT::new(coeffs));
    }
    for col in data.iter().chain(holdout) {
        for (lam, value) in &col.values {
            if expr.eval(lam) != BigRational::from_integer(value.clone()) {
                return Err(Error::Inconsistent(format!(
                    "fitted expression misses the value at n = {}, λ = {lam}",
                    col.n
                )));
            }
        }
    }
    Ok(FitResult {
        expr,
        degrees,
        degree_capped,
    })
}

/// Value of `p1(c(2λ))` as an integer; used by the increment checks.
pub fn p1_value(lambda: &Partition) -> BigInt {
    power_sums(lambda, 1)[1].clone()
}

/// Lower bound `-n^2 + 2n` on `p1(c(2λ))` over `λ ⊢ n`.
pub fn p1_lower_bound(n: usize) -> BigInt {
    let n = BigInt::from(n);
    -(&n * &n) + 2 * n
}
