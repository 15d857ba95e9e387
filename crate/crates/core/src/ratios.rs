//! Merging two parts of a relation and the ratio laws relating valencies,
//! `[n-1,1]` eigenvalues and spectral gaps before and after the merge.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::partition::{dominance_compare, Dominance, Partition};
use crate::spectra::{family_second_eig, phi_n11, valency};
use crate::tables::{gap_report, EigTable};

/// Merge of parts `i` and `j` (0-based indices) of `μ`. Only the two part
/// values matter; indices just say which copies are merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeSpec {
    pub mu: Partition,
    pub i: usize,
    pub j: usize,
}

impl MergeSpec {
    pub fn new(mu: Partition, i: usize, j: usize) -> Result<Self> {
        if i == j || i >= mu.len() || j >= mu.len() {
            return Err(Error::InvalidArgument(format!(
                "part indices {i}, {j} are not two distinct parts of {mu}"
            )));
        }
        let (a, b) = (mu.part(i), mu.part(j));
        if a < 2 || b < 2 {
            return Err(Error::Hypothesis(format!(
                "merged parts must both exceed 1 (got {a} and {b})"
            )));
        }
        Ok(MergeSpec { mu, i, j })
    }

    pub fn part_i(&self) -> u32 {
        self.mu.part(self.i)
    }

    pub fn part_j(&self) -> u32 {
        self.mu.part(self.j)
    }

    pub fn merged(&self) -> Partition {
        let mut parts: Vec<u32> = self
            .mu
            .parts()
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != self.i && k != self.j)
            .map(|(_, &p)| p)
            .collect();
        parts.push(self.part_i() + self.part_j());
        Partition::new(parts)
    }

    pub fn n_i(&self) -> usize {
        self.mu.multiplicity(self.part_i())
    }

    pub fn n_j(&self) -> usize {
        self.mu.multiplicity(self.part_j())
    }

    /// Multiplicity of the merged part in the merged partition.
    pub fn m(&self) -> usize {
        self.merged().multiplicity(self.part_i() + self.part_j())
    }
}

/// Every admissible merge of `μ`, one per unordered index pair.
pub fn all_merges(mu: &Partition) -> Vec<MergeSpec> {
    let mut out = Vec::new();
    for i in 0..mu.len() {
        for j in i + 1..mu.len() {
            if let Ok(s) = MergeSpec::new(mu.clone(), i, j) {
                out.push(s);
            }
        }
    }
    out
}

fn q(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The merge constant as printed: `n_i(n_i-1)μ_i/(2m)` for equal parts and
/// `n_i n_j μ_i μ_j/(m(μ_i+μ_j))` otherwise.
pub fn printed_constant(spec: &MergeSpec) -> BigRational {
    let (a, b) = (spec.part_i() as usize, spec.part_j() as usize);
    let m = spec.m();
    if a == b {
        let ni = spec.n_i();
        q(ni * (ni - 1) * a, 2 * m)
    } else {
        q(spec.n_i() * spec.n_j() * a * b, m * (a + b))
    }
}

/// `v_{μ'} / v_μ`.
pub fn valency_ratio(spec: &MergeSpec) -> BigRational {
    BigRational::new(
        BigInt::from(valency(&spec.merged())),
        BigInt::from(valency(&spec.mu)),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TauRatio {
    Value(BigRational),
    /// The `[n-1,1]` eigenvalue of `μ` is zero.
    Undefined,
}

/// Ratio of `[n-1,1]` eigenvalues after and before the merge. Requires a
/// part equal to 1 in `μ` that is not merged.
pub fn tau_ratio(spec: &MergeSpec) -> Result<TauRatio> {
    if spec.mu.ones() == 0 {
        return Err(Error::Hypothesis(format!(
            "{} has no part equal to 1",
            spec.mu
        )));
    }
    let before = phi_n11(&spec.mu)?;
    if before.is_zero() {
        return Ok(TauRatio::Undefined);
    }
    Ok(TauRatio::Value(BigRational::new(
        phi_n11(&spec.merged())?,
        before,
    )))
}

/// Where gaps come from.
pub enum GapSource<'a> {
    /// A complete table for `n = |μ|`.
    Table(&'a EigTable),
    /// Closed forms of the catalog families, above their thresholds.
    ClosedForms,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapRatioReport {
    pub spec: MergeSpec,
    pub merged: Partition,
    pub gap_mu: BigInt,
    pub gap_merged: BigInt,
    pub gap_ratio: Option<BigRational>,
    pub valency_ratio: BigRational,
    pub tau_ratio: Option<TauRatio>,
    pub printed_constant: BigRational,
    /// Gap ratio, valency ratio and (when defined) `[n-1,1]` ratio coincide.
    pub consistent: bool,
    /// Whether the printed constant equals the valency ratio.
    pub printed_constant_matches: bool,
}

pub fn gap_ratio_report(spec: &MergeSpec, source: GapSource<'_>) -> Result<GapRatioReport> {
    let merged = spec.merged();
    let (gap_mu, gap_merged) = match source {
        GapSource::Table(t) => {
            if t.n != spec.mu.size() {
                return Err(Error::SizeMismatch {
                    left: t.n,
                    right: spec.mu.size(),
                });
            }
            (gap_report(t, &spec.mu)?.gap, gap_report(t, &merged)?.gap)
        }
        GapSource::ClosedForms => {
            let n = spec.mu.size();
            let g = |mu: &Partition| -> Result<BigInt> {
                Ok(family_second_eig(&mu.non_unit_prefix(), n)
                    .map_err(|e| Error::Unsupported(format!("gap of {mu} unavailable: {e}")))?
                    .1)
            };
            (g(&spec.mu)?, g(&merged)?)
        }
    };
    let gap_ratio =
        (!gap_mu.is_zero()).then(|| BigRational::new(gap_merged.clone(), gap_mu.clone()));
    let vr = valency_ratio(spec);
    let tau = tau_ratio(spec).ok();
    let cp = printed_constant(spec);
    let tau_ok = match &tau {
        Some(TauRatio::Value(t)) => *t == vr,
        _ => true,
    };
    let consistent = gap_ratio.as_ref() == Some(&vr) && tau_ok;
    Ok(GapRatioReport {
        spec: spec.clone(),
        merged,
        gap_mu,
        gap_merged,
        gap_ratio,
        printed_constant_matches: cp == vr,
        valency_ratio: vr,
        tau_ratio: tau,
        printed_constant: cp,
        consistent,
    })
}

/// Merging never decreases a partition in dominance order.
pub fn merge_dominates(spec: &MergeSpec) -> bool {
    matches!(
        dominance_compare(&spec.merged(), &spec.mu),
        Ok(Dominance::Greater)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use crate::partition::generate_partitions;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn printed_merge_constant() {
        assert_eq!(
            printed_constant(&MergeSpec::new(p("[2,2]"), 0, 1).unwrap()),
            rat_int(2)
        );
        assert_eq!(
            printed_constant(&MergeSpec::new(p("[3,2]"), 0, 1).unwrap()),
            rat(6, 5)
        );
        assert_eq!(
            printed_constant(&MergeSpec::new(p("[2,2,1]"), 0, 1).unwrap()),
            rat_int(2)
        );
        assert!(matches!(
            MergeSpec::new(p("[2,1]"), 0, 1),
            Err(Error::Hypothesis(_))
        ));
        assert!(MergeSpec::new(p("[2,2]"), 0, 0).is_err());
    }

    #[test]
    fn valency_ratios() {
        assert_eq!(
            valency_ratio(&MergeSpec::new(p("[2,2]"), 0, 1).unwrap()),
            rat_int(4)
        );
        assert_eq!(
            valency_ratio(&MergeSpec::new(p("[3,2]"), 0, 1).unwrap()),
            rat(12, 5)
        );
        assert_eq!(
            valency_ratio(&MergeSpec::new(p("[2,2,1]"), 0, 1).unwrap()),
            rat_int(4)
        );
    }

    #[test]
    fn tau_ratios() {
        let t = |s: &str| tau_ratio(&MergeSpec::new(p(s), 0, 1).unwrap()).unwrap();
        assert_eq!(t("[2,2,1]"), TauRatio::Value(rat_int(4)));
        assert_eq!(t("[2,2,1,1]"), TauRatio::Value(rat_int(4)));
        assert_eq!(t("[3,2,1]"), TauRatio::Value(rat(12, 5)));
        assert!(matches!(
            tau_ratio(&MergeSpec::new(p("[2,2]"), 0, 1).unwrap()),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn ratios_agree_and_merges_dominate() {
        for n in 2..=12 {
            for mu in generate_partitions(n) {
                for spec in all_merges(&mu) {
                    assert!(merge_dominates(&spec));
                    if mu.ones() > 0 {
                        match tau_ratio(&spec).unwrap() {
                            TauRatio::Value(t) => assert_eq!(t, valency_ratio(&spec), "{mu}"),
                            TauRatio::Undefined => {}
                        }
                    }
                    assert_eq!(
                        valency_ratio(&spec),
                        printed_constant(&spec) * rat_int(2),
                        "{mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_gap_ratios() {
        for n in 7..=100 {
            let r = gap_ratio_report(
                &MergeSpec::new(Partition::padded(&p("[2,2]"), n).unwrap(), 0, 1).unwrap(),
                GapSource::ClosedForms,
            )
            .unwrap();
            assert_eq!(r.gap_ratio, Some(rat_int(4)));
            assert!(r.consistent && !r.printed_constant_matches);
            let r = gap_ratio_report(
                &MergeSpec::new(Partition::padded(&p("[3,2]"), n).unwrap(), 0, 1).unwrap(),
                GapSource::ClosedForms,
            )
            .unwrap();
            assert_eq!(r.gap_ratio, Some(rat(12, 5)));
            assert!(r.consistent);
        }
        let below = MergeSpec::new(p("[3,2,1]"), 0, 1).unwrap();
        assert!(matches!(
            gap_ratio_report(&below, GapSource::ClosedForms),
            Err(Error::Unsupported(_))
        ));
    }
}
