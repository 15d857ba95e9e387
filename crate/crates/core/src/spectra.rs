//! Closed-form valencies, eigenvalues, spectral gaps, dimension bounds and
//! thresholds, plus a brute-force spherical-function check.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{binomial, double_factorial, factorial, isqrt_ceil, matching_count, rat_int};
use crate::characters::CharacterCache;
use crate::error::{Error, Result};
use crate::matching::{relation, representative, Matching};
use crate::partition::{dim_hook, generate_partitions, successors, Partition};
use crate::symfunc::{delta_eval, e_catalog};
use crate::tables::EigTable;

/// `Π_i m_i! (2μ_i)^{m_i}` over the distinct part values of `μ`.
pub fn stabilizer_order(mu: &Partition) -> BigUint {
    mu.multiplicities()
        .iter()
        .fold(BigUint::one(), |acc, &(v, m)| {
            acc * factorial(m as u64) * BigUint::from(2 * v as u64).pow(m as u32)
        })
}

/// Valency of relation `μ`: `2^n n! / Π_i m_i! (2μ_i)^{m_i}`.
pub fn valency(mu: &Partition) -> BigUint {
    let n = mu.size();
    let top = (BigUint::one() << n) * factorial(n as u64);
    top / stabilizer_order(mu)
}

/// Eigenvalue of relation `μ` on the `[n-1,1]` eigenspace.
pub fn phi_n11(mu: &Partition) -> Result<BigInt> {
    let n = mu.size() as i64;
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "the [n-1,1] eigenspace needs n >= 2, got {mu}"
        )));
    }
    let r1 = mu.ones() as i64;
    let num = BigInt::from(valency(mu)) * BigInt::from((2 * n - 1) * r1 - n);
    let den = BigInt::from(2 * n * (n - 1));
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "[n-1,1] eigenvalue of {mu} is not an integer"
        )));
    }
    Ok(q)
}

/// A family `μ(n) = [prefix, 1^{n-|prefix|}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub prefix: Partition,
    pub min_n: usize,
}

impl FamilySpec {
    pub fn new(prefix: Partition) -> Result<Self> {
        if prefix.is_empty() || prefix.parts().iter().any(|&p| p < 2) {
            return Err(Error::InvalidArgument(format!(
                "family prefix {prefix} must have all parts >= 2"
            )));
        }
        let min_n = prefix.size();
        Ok(FamilySpec { prefix, min_n })
    }

    pub fn member(&self, n: usize) -> Result<Partition> {
        Partition::padded(&self.prefix, n)
    }
}

/// Smallest `n` for which the closed-form second eigenvalue of a catalog
/// family is established.
pub fn family_threshold(prefix: &Partition) -> Result<usize> {
    Ok(match prefix.to_string().as_str() {
        "[2]" => 3,
        "[3]" => 5,
        "[2,2]" => 6,
        "[4]" => 6,
        "[3,2]" => 7,
        "[5]" => 6,
        _ => return Err(Error::NotInCatalog(prefix.to_string())),
    })
}

fn poly_n(coeffs: &[i64], den: i64, n: i64) -> BigRational {
    let n = rat_int(n);
    let v = coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, &c| acc * &n + rat_int(c));
    v / rat_int(den)
}

fn to_int(r: BigRational, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::Internal(format!("{what} is not an integer")))
    }
}

/// Closed-form `(second eigenvalue, gap)` for a catalog family, evaluated
/// without checking the validity threshold.
pub fn family_second_eig_forced(prefix: &Partition, n: usize) -> Result<(BigInt, BigInt)> {
    let min_n = FamilySpec::new(prefix.clone())?.min_n;
    if n < min_n.max(2) {
        return Err(Error::InvalidArgument(format!(
            "family {prefix} needs n >= {}",
            min_n.max(2)
        )));
    }
    let q = [-120, 418, -405, 165, -30, 2];
    let ni = n as i64;
    let (second, gap) = match prefix.to_string().as_str() {
        "[2]" => (poly_n(&[1, -3, 1], 1, ni), poly_n(&[-1, 2], 1, ni)),
        "[3]" => (
            poly_n(&[-12, 38, -24, 4], 3, ni),
            poly_n(&[4, -10, 4], 1, ni),
        ),
        "[2,2]" => (
            poly_n(&[12, -40, 33, -10, 1], 2, ni),
            poly_n(&[-6, 17, -11, 2], 1, ni),
        ),
        "[4]" => (
            poly_n(&[24, -80, 66, -20, 2], 1, ni),
            poly_n(&[-24, 68, -44, 8], 1, ni),
        ),
        "[3,2]" => (
            poly_n(&q, 1, ni) * BigRational::new(2.into(), 3.into()),
            poly_n(&[240, -740, 610, -190, 20], 3, ni),
        ),
        "[5]" => (
            poly_n(&q, 1, ni) * BigRational::new(8.into(), 5.into()),
            poly_n(&[192, -592, 488, -152, 16], 1, ni),
        ),
        _ => return Err(Error::NotInCatalog(prefix.to_string())),
    };
    Ok((
        to_int(second, "closed-form second eigenvalue")?,
        to_int(gap, "closed-form gap")?,
    ))
}

/// Closed-form `(second eigenvalue, gap)` for a catalog family at an `n`
/// where the closed form is established.
pub fn family_second_eig(prefix: &Partition, n: usize) -> Result<(BigInt, BigInt)> {
    let threshold = family_threshold(prefix)?;
    if n < threshold {
        return Err(Error::BelowThreshold {
            what: format!("second eigenvalue of the {prefix} family"),
            n,
            threshold,
        });
    }
    family_second_eig_forced(prefix, n)
}

fn check_hook(n: usize, ell: usize) -> Result<()> {
    if ell == 0 || n < 3 || ell > n - 2 {
        return Err(Error::InvalidArgument(format!(
            "hook [n-l,1^l] needs 1 <= l <= n-2 (n = {n}, l = {ell})"
        )));
    }
    Ok(())
}

/// `(2n-1)(2n-4)(2n-6)...(2l+2)`: the gap of `X_μ` for `μ = [n-l, 1^l]`.
pub fn hook_gap(n: usize, ell: usize) -> Result<BigUint> {
    check_hook(n, ell)?;
    let mut acc = BigUint::from(2 * n - 1);
    let mut k = 2 * n as i64 - 4;
    while k >= 2 * ell as i64 + 2 {
        acc *= k as u64;
        k -= 2;
    }
    Ok(acc)
}

/// Closed forms for the quotient counts of a hook:
/// `a = C(n-1, l-1)(2n-2l-2)!!` and `b = C(n-2, l)(2n-2l-4)!!`.
pub fn hook_quotient(n: usize, ell: usize) -> Result<(BigUint, BigUint)> {
    check_hook(n, ell)?;
    let (n, l) = (n as u64, ell as u64);
    let a = binomial(n - 1, l - 1) * double_factorial(2 * n as i64 - 2 * l as i64 - 2);
    let b = binomial(n - 2, l) * double_factorial(2 * n as i64 - 2 * l as i64 - 4);
    Ok((a, b))
}

pub fn hook(n: usize, ell: usize) -> Partition {
    let mut parts = vec![(n - ell) as u32];
    parts.extend(std::iter::repeat_n(1, ell));
    Partition::new(parts)
}

/// Checks `v (2n-1)!! = Σ_λ (φ^λ_μ)^2 f^{2λ}` and, off the identity relation,
/// `Σ_λ f^{2λ} φ^λ_μ = 0`.
pub fn trace_identity_check(n: usize, mu: &Partition, table: &EigTable) -> Result<bool> {
    if table.n != n || mu.size() != n {
        return Err(Error::SizeMismatch {
            left: table.n,
            right: mu.size(),
        });
    }
    let col = table.column(mu)?;
    let mut sq = BigInt::zero();
    let mut lin = BigInt::zero();
    for (v, f) in col.iter().zip(&table.dims) {
        let f = BigInt::from(f.clone());
        sq += v * v * &f;
        lin += v * &f;
    }
    let lhs = BigInt::from(valency(mu)) * BigInt::from(matching_count(n));
    let identity = *mu == Partition::column(n);
    Ok(lhs == sq && (identity || lin.is_zero()))
}

/// Dimension bound `f^{2λ} <= 4 n^{3/2} Π_i m_i!(2μ_i)^{m_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBound {
    pub n: usize,
    /// `4 Π_i m_i!(2μ_i)^{m_i}`.
    pub prefactor: BigUint,
    /// Exponent of `n`, as `(numerator, denominator)`.
    pub exponent: (u32, u32),
    /// `prefactor * ceil(sqrt(n^3))`, an integer upper envelope.
    pub envelope: BigUint,
}

impl DegreeBound {
    /// Exact test of `f <= prefactor * n^{3/2}` by squaring.
    pub fn admits(&self, f: &BigUint) -> bool {
        let n3 = BigUint::from(self.n).pow(3);
        f * f <= &self.prefactor * &self.prefactor * n3
    }
}

pub fn degbou(mu: &Partition, n: usize) -> Result<DegreeBound> {
    if mu.size() != n {
        return Err(Error::SizeMismatch {
            left: mu.size(),
            right: n,
        });
    }
    let prefactor = stabilizer_order(mu) * 4u32;
    let envelope = &prefactor * isqrt_ceil(&BigUint::from(n).pow(3));
    Ok(DegreeBound {
        n,
        prefactor,
        exponent: (3, 2),
        envelope,
    })
}

/// `n(2n-1)(2n-5)/3 > 8 n^{3/2} (n-k) (2k)!!`, decided by squaring both
/// sides (both are positive for `n > 2k >= 2`).
pub fn threshold_holds(n: u64, k: u64) -> bool {
    if n <= 2 * k || n < 3 {
        return false;
    }
    let nn = BigUint::from(n);
    let lhs = &nn * BigUint::from(2 * n - 1) * BigUint::from(2 * n - 5);
    let dk = double_factorial(2 * k as i64);
    let rhs_sq = BigUint::from(576u32) * nn.pow(3) * BigUint::from(n - k).pow(2) * &dk * &dk;
    &lhs * &lhs > rhs_sq
}

/// Smallest `n > 2k` for which the threshold inequality holds.
pub fn threshold_n(k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let start = 2 * k + 1;
    const SCAN: u64 = 200_000;
    if let Some(n) = (start..start + SCAN).find(|&n| threshold_holds(n, k)) {
        return Ok(n);
    }
    // beyond the scanned window the left side dominates; bracket and bisect
    let mut lo = start + SCAN - 1;
    let mut hi = lo * 2;
    while !threshold_holds(hi, k) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if threshold_holds(mid, k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `(2n-1)!!/(2n)!! < 1/sqrt(n+1)`, decided as `(n+1) A^2 < B^2`.
pub fn lemma_ratio_holds(n: u64) -> bool {
    let a = double_factorial(2 * n as i64 - 1);
    let b = double_factorial(2 * n as i64);
    BigUint::from(n + 1) * &a * &a < &b * &b
}

/// Checks the ratio bound for every `2 <= n <= max_n`, maintaining the
/// squares incrementally. Returns the first failing `n`, if any.
pub fn lemma_ratio_range(max_n: u64) -> Option<u64> {
    let mut a2 = BigUint::one(); // ((2n-1)!!)^2
    let mut b2 = BigUint::one(); // ((2n)!!)^2
    for n in 1..=max_n {
        a2 *= (2 * n - 1) * (2 * n - 1);
        b2 *= (2 * n) * (2 * n);
        if n >= 2 && BigUint::from(n + 1) * &a2 >= b2 {
            return Some(n);
        }
    }
    None
}

/// `C(m,3) - C(m,2)`.
pub fn small_dimension_threshold(m: usize) -> BigUint {
    binomial(m as u64, 3) - binomial(m as u64, 2)
}

/// Partitions of `m` whose irreducible has dimension below `C(m,3) - C(m,2)`.
pub fn low_dimension_shapes(m: usize) -> Vec<Partition> {
    let bound = small_dimension_threshold(m);
    generate_partitions(m)
        .into_iter()
        .filter(|l| l.hook_dimension() < bound)
        .collect()
}

/// Eigenspaces `2λ` of dimension below `C(2n,3) - C(2n,2)`.
pub fn small_dim_eigenspaces(n: usize) -> Result<Vec<Partition>> {
    if n < 7 {
        return Err(Error::Unsupported(format!(
            "the small-dimension classification needs n >= 7 (got {n})"
        )));
    }
    let bound = small_dimension_threshold(2 * n);
    Ok(generate_partitions(n)
        .into_iter()
        .filter(|l| dim_hook(l) < bound)
        .collect())
}

/// `φ^λ_μ = (v_μ / 2^n n!) Σ_{h ∈ H_n} χ^{2λ}(x_μ h)`, summing over the
/// stabilizer of the base matching.
pub fn zonal_check(mu: &Partition, lambda: &Partition) -> Result<BigRational> {
    let n = mu.size();
    if lambda.size() != n {
        return Err(Error::SizeMismatch {
            left: mu.size(),
            right: lambda.size(),
        });
    }
    if n > 5 {
        return Err(Error::Unsupported(format!(
            "the coset sum is limited to n <= 5 (got n = {n})"
        )));
    }
    let shape = lambda.double();
    let x = representative(mu).translator();
    debug_assert_eq!(
        relation(&Matching::base(n), &Matching::base(n).permute(&x)).ok(),
        Some(mu.clone())
    );
    let mut cache = CharacterCache::new();
    let mut total = BigInt::zero();
    let perms = permutations(n);
    let len = 2 * n;
    let mut h = vec![0u8; len];
    let mut xh = vec![0u8; len];
    for pi in &perms {
        for flips in 0..(1u32 << n) {
            for k in 0..n {
                let f = ((flips >> k) & 1) as usize;
                for s in 0..2 {
                    h[2 * k + s] = (2 * pi[k] + (s ^ f)) as u8;
                }
            }
            for v in 0..len {
                xh[v] = x[h[v] as usize];
            }
            total += cache.chi_cycles(&shape, &cycle_lengths(&xh))?;
        }
    }
    let order = BigInt::from(BigUint::one() << n) * BigInt::from(factorial(n as u64));
    Ok(BigRational::new(BigInt::from(valency(mu)) * total, order))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn cycle_lengths(perm: &[u8]) -> Vec<u32> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            v = perm[v] as usize;
            len += 1;
        }
        out.push(len);
    }
    out
}

/// Outcome of the increment inequality scan for one family and `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionVerdict {
    pub prefix: Partition,
    pub n: usize,
    pub passed: bool,
    /// `E_{μ(n+1)}([n,1]) - E_{μ(n)}([n-1,1])`.
    pub rhs: BigRational,
    /// Step with the least slack `rhs - ΔE`.
    pub worst: Option<(Partition, usize, BigRational)>,
    pub checked: usize,
}

/// Checks `ΔE_{μ(n)}(λ) <= E_{μ(n+1)}([n,1]) - E_{μ(n)}([n-1,1])` for every
/// `λ ⊢ n` other than `[n]` and every admissible row.
pub fn verify_induction_step(family: &FamilySpec, n: usize) -> Result<InductionVerdict> {
    if n < family.min_n.max(2) {
        return Err(Error::InvalidArgument(format!(
            "family {} needs n >= {}",
            family.prefix,
            family.min_n.max(2)
        )));
    }
    let e = e_catalog(&family.prefix)?;
    let rhs = e.eval(&Partition::standard(n + 1)) - e.eval(&Partition::standard(n));
    let top = Partition::row(n);
    let steps: Vec<(Partition, usize)> = generate_partitions(n)
        .into_iter()
        .filter(|l| *l != top)
        .flat_map(|l| successors(&l).into_iter().map(move |(_, i)| (l.clone(), i)))
        .collect();
    let checked = steps.len();
    let worst = steps
        .into_par_iter()
        .map(|(l, i)| {
            let d = delta_eval(&e, &l, i)?;
            Ok((l, i, &rhs - d))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min_by(|a, b| {
            a.2.cmp(&b.2)
                .then_with(|| b.0.cmp(&a.0))
                .then(a.1.cmp(&b.1))
        });
    let passed = worst.as_ref().is_none_or(|w| !w.2.is_negative());
    Ok(InductionVerdict {
        prefix: family.prefix.clone(),
        n,
        passed,
        rhs,
        worst,
        checked,
    })
}

/// `(max valency, argmax, min valency, argmin)` over relations of `n`.
pub fn max_min_valency(n: usize) -> Result<(BigUint, Partition, BigUint, Partition)> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let all = generate_partitions(n);
    let vals: Vec<(BigUint, Partition)> = all.into_iter().map(|m| (valency(&m), m)).collect();
    let max = vals
        .iter()
        .max_by(|a, b| a.0.cmp(&b.0))
        .cloned()
        .expect("nonempty");
    let min = vals
        .iter()
        .min_by(|a, b| a.0.cmp(&b.0))
        .cloned()
        .expect("nonempty");
    Ok((max.0, max.1, min.0, min.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn valencies() {
        assert_eq!(valency(&p("[3,2]")), BigUint::from(160u32));
        assert_eq!(valency(&p("[1^6]")), BigUint::one());
        assert_eq!(valency(&p("[4]")), BigUint::from(48u32));
        for n in 1..=10 {
            let total: BigUint = generate_partitions(n).iter().map(valency).sum();
            assert_eq!(total, matching_count(n));
        }
    }

    #[test]
    fn standard_eigenvalues() {
        assert_eq!(phi_n11(&p("[2,1,1,1]")).unwrap(), big(11));
        assert_eq!(phi_n11(&p("[5]")).unwrap(), big(-48));
        assert_eq!(phi_n11(&p("[4,1]")).unwrap(), big(24));
        assert!(phi_n11(&p("[1]")).is_err());
    }

    #[test]
    fn standard_sign_follows_ones() {
        for n in 2..=12 {
            for mu in generate_partitions(n) {
                let s = (2 * n as i64 - 1) * mu.ones() as i64 - n as i64;
                let v = phi_n11(&mu).unwrap();
                assert_eq!(v.signum(), big(s.signum()), "{mu}");
            }
        }
    }

    #[test]
    fn families_agree_three_ways() {
        for prefix in crate::symfunc::catalog_prefixes() {
            let e = e_catalog(&prefix).unwrap();
            for n in prefix.size().max(2)..=100 {
                let mu = Partition::padded(&prefix, n).unwrap();
                let (second, gap) = family_second_eig_forced(&prefix, n).unwrap();
                let tau = phi_n11(&mu).unwrap();
                assert_eq!(second, tau, "{prefix} n={n}");
                assert_eq!(
                    BigRational::from_integer(second.clone()),
                    e.eval(&Partition::standard(n)),
                    "{prefix} n={n}"
                );
                assert_eq!(gap, BigInt::from(valency(&mu)) - tau, "{prefix} n={n}");
            }
        }
    }

    #[test]
    fn family_examples_and_thresholds() {
        let (s, g) = family_second_eig(&p("[2,2]"), 6).unwrap();
        assert_eq!((s, g), (big(48), big(132)));
        assert_eq!(
            family_second_eig(&p("[3,2]"), 7).unwrap().0,
            phi_n11(&p("[3,2,1,1]")).unwrap()
        );
        assert_eq!(family_second_eig_forced(&p("[3,2]"), 6).unwrap().0, big(80));
        assert_eq!(family_second_eig(&p("[5]"), 6).unwrap().0, big(192));
        assert_eq!(
            family_second_eig(&p("[3,2]"), 6),
            Err(Error::BelowThreshold {
                what: "second eigenvalue of the [3,2] family".into(),
                n: 6,
                threshold: 7
            })
        );
        assert!(matches!(
            family_second_eig(&p("[6]"), 9),
            Err(Error::NotInCatalog(_))
        ));
    }

    #[test]
    fn hooks() {
        assert_eq!(hook_gap(5, 2).unwrap(), BigUint::from(54u32));
        assert_eq!(hook_gap(5, 3).unwrap(), BigUint::from(9u32));
        assert_eq!(hook_gap(6, 4).unwrap(), BigUint::from(11u32));
        assert!(hook_gap(6, 5).is_err());
        assert!(hook_gap(6, 0).is_err());
        for n in 3..=30 {
            for ell in 1..=n - 2 {
                let mu = hook(n, ell);
                let gap = BigInt::from(valency(&mu)) - phi_n11(&mu).unwrap();
                assert_eq!(BigInt::from(hook_gap(n, ell).unwrap()), gap, "{mu}");
                let (a, b) = hook_quotient(n, ell).unwrap();
                assert_eq!(BigInt::from(a) - BigInt::from(b), phi_n11(&mu).unwrap());
            }
        }
        let (a, b) = hook_quotient(5, 2).unwrap();
        assert_eq!((a, b), (BigUint::from(32u32), BigUint::from(6u32)));
    }

    #[test]
    fn degree_bounds() {
        let b = degbou(&p("[2,1^3]"), 5).unwrap();
        assert_eq!(b.prefactor, BigUint::from(768u32));
        // ceil(sqrt(125)) = 12
        assert_eq!(b.envelope, BigUint::from(768u32 * 12));
        assert!(b.admits(&BigUint::from(1717u32)));
        assert!(!b.admits(&BigUint::from(8587u32)));
        for n in 2..=20 {
            let b = degbou(&Partition::row(n), n).unwrap();
            assert_eq!(b.prefactor, BigUint::from(8 * n));
        }
        assert!(degbou(&p("[2]"), 3).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(threshold_n(1).unwrap(), 148);
        assert_eq!(threshold_n(2).unwrap(), 2307);
        for k in 1..=6 {
            assert!(threshold_n(k).unwrap() > 2 * k);
        }
        assert!(lemma_ratio_holds(2));
        assert_eq!(lemma_ratio_range(2_000), None);
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(small_dimension_threshold(14), BigUint::from(273u32));
        assert_eq!(
            small_dim_eigenspaces(7).unwrap(),
            vec![p("[7]"), p("[6,1]")]
        );
        assert_eq!(
            small_dim_eigenspaces(8).unwrap(),
            vec![p("[8]"), p("[7,1]")]
        );
        assert!(matches!(
            small_dim_eigenspaces(6),
            Err(Error::Unsupported(_))
        ));
        for m in 14..=20 {
            let got = low_dimension_shapes(m);
            let want: Vec<Partition> = vec![
                Partition::row(m),
                Partition::column(m),
                Partition::new(vec![m as u32 - 1, 1]),
                Partition::padded(&p("[2]"), m).unwrap(),
                Partition::new(vec![m as u32 - 2, 2]),
                Partition::padded(&p("[2,2]"), m).unwrap(),
                Partition::new(vec![m as u32 - 2, 1, 1]),
                Partition::padded(&p("[3]"), m).unwrap(),
                Partition::new(vec![m as u32 - 3, 3]),
                Partition::padded(&p("[2,2,2]"), m).unwrap(),
            ];
            // The listed shapes are a containment; [m-3,3] and its conjugate
            // sit exactly on the bound.
            for l in &got {
                assert!(want.contains(l), "m = {m}: {l}");
            }
            let bound = small_dimension_threshold(m);
            for l in &want {
                assert!(l.hook_dimension() <= bound, "m = {m}: {l}");
            }
            assert_eq!(got.len(), 8, "m = {m}");
        }
    }

    #[test]
    fn zonal_small_cells() {
        assert_eq!(zonal_check(&p("[2]"), &p("[1,1]")).unwrap(), rat_int(-1));
        assert_eq!(zonal_check(&p("[3]"), &p("[1,1,1]")).unwrap(), rat_int(2));
        for lam in generate_partitions(3) {
            assert_eq!(zonal_check(&p("[1^3]"), &lam).unwrap(), rat_int(1));
        }
        assert!(zonal_check(&p("[6]"), &p("[6]")).is_err());
    }

    #[test]
    fn induction_steps() {
        let fam = FamilySpec::new(p("[3]")).unwrap();
        let v = verify_induction_step(&fam, 15).unwrap();
        assert!(v.passed);
        assert_eq!(v.rhs, rat_int(4 * 225 - 12 * 15 + 6));
        assert!(
            verify_induction_step(&FamilySpec::new(p("[2,2]")).unwrap(), 15)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn valency_extremes() {
        let (mx, amx, mn, amn) = max_min_valency(5).unwrap();
        assert_eq!(
            (mx, amx, mn, amn),
            (BigUint::from(384u32), p("[5]"), BigUint::one(), p("[1^5]"))
        );
        for n in 2..=12 {
            let (mx, amx, _, _) = max_min_valency(n).unwrap();
            assert_eq!(mx, double_factorial(2 * n as i64 - 2));
            assert_eq!(amx, Partition::row(n));
        }
    }
}
