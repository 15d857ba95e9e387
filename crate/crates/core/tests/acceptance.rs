//! Acceptance suite. Every comparison is exact: the tolerance on integer and
//! rational quantities is zero. Runtime limits are pinned below.
//!
//! Runs as a plain binary so that every criterion prints its line.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pmscheme::characters::CharacterCache;
use pmscheme::partition::{add_to_row, dim_hook, generate_partitions, successors};
use pmscheme::ratios::{
    all_merges, printed_constant, tau_ratio, valency_ratio, MergeSpec, TauRatio,
};
use pmscheme::scheme::{diameter, intersection_numbers, quotient_all, quotient_counts, Diameter};
use pmscheme::spectra::{
    family_second_eig, family_threshold, hook, hook_gap, hook_quotient, lemma_ratio_range, phi_n11,
    threshold_n, trace_identity_check, valency, verify_induction_step, zonal_check, FamilySpec,
};
use pmscheme::symfunc::{
    catalog_prefixes, delta_closed_forms, delta_eval, e_catalog, fit_e_mu, p1_value, DeltaName,
    FitColumn,
};
use pmscheme::tables::{
    build_table_formulas, build_table_oracle, gap_report, structure_constants_hold,
    verify_conjecture, OracleOptions,
};
use pmscheme::{EigTable, Partition};

/// Exact comparisons only.
const TOLERANCE: i64 = 0;
const LIMIT_SMALL: Duration = Duration::from_secs(1);
const LIMIT_N6: Duration = Duration::from_secs(30);
const LIMIT_N7: Duration = Duration::from_secs(300);
const LIMIT_DIAMETER_N6: Duration = Duration::from_secs(60);
const DELTA_SAMPLES: usize = 1000;
const DELTA_MAX_N: usize = 30;
const LEMMA_RATIO_MAX_N: u64 = 10_000;

type Outcome = std::result::Result<String, String>;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn exact_eq(a: &BigInt, b: &BigInt) -> bool {
    (a - b).abs() <= BigInt::from(TOLERANCE)
}

struct Tables {
    oracle: Vec<Option<EigTable>>,
}

impl Tables {
    fn get(&self, n: usize) -> &EigTable {
        self.oracle[n].as_ref().expect("table built")
    }
}

fn golden(n: usize) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("table_n{n}.csv"));
    std::fs::read_to_string(path).expect("golden file")
}

fn c1_golden(t: &mut Tables) -> Outcome {
    let mut notes = Vec::new();
    for n in 2..=7 {
        let start = Instant::now();
        let table = build_table_oracle(n, &OracleOptions::default()).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        let limit = match n {
            0..=5 => LIMIT_SMALL,
            6 => LIMIT_N6,
            _ => LIMIT_N7,
        };
        ensure(took <= limit, format!("n={n} took {took:?} > {limit:?}"))?;
        ensure(
            table.to_csv() == golden(n),
            format!("n={n} CSV differs from golden"),
        )?;
        let reparsed = EigTable::from_csv(&golden(n)).map_err(|e| e.to_string())?;
        ensure(
            reparsed.values == table.values && reparsed.dims == table.dims,
            format!("n={n} cells"),
        )?;
        notes.push(format!("n={n} {:.2}s", took.as_secs_f64()));
        t.oracle[n] = Some(table);
    }
    Ok(notes.join(", "))
}

fn c2_routes(t: &Tables) -> Outcome {
    let mut cells = 0;
    for n in 2..=7 {
        let f = build_table_formulas(n).map_err(|e| e.to_string())?;
        let bad = t.get(n).disagreements(&f).map_err(|e| e.to_string())?;
        ensure(
            bad.is_empty(),
            format!(
                "n={n}: {} disagreements, first {:?}",
                bad.len(),
                bad.first()
            ),
        )?;
        cells += t.get(n).overlap(&f);
    }
    Ok(format!("{cells} overlapping cells agree"))
}

fn c3_conjecture(t: &Tables) -> Outcome {
    for n in 4..=7 {
        let v = verify_conjecture(t.get(n)).map_err(|e| e.to_string())?;
        let bad: Vec<String> = v
            .columns
            .iter()
            .filter(|c| c.applicable && !c.conjecture_holds)
            .map(|c| c.mu.to_string())
            .collect();
        ensure(v.overall, format!("n={n} fails at {bad:?}"))?;
    }
    // Families for 8 <= n <= 100: closed form, the [n-1,1] formula and the
    // catalog expression at [n-1,1] agree.
    for prefix in catalog_prefixes() {
        let e = e_catalog(&prefix).map_err(|e| e.to_string())?;
        for n in 8..=100 {
            let mu = Partition::padded(&prefix, n).map_err(|e| e.to_string())?;
            let (second, gap) = family_second_eig(&prefix, n).map_err(|e| e.to_string())?;
            let tau = phi_n11(&mu).map_err(|e| e.to_string())?;
            let at_std = e.eval(&Partition::standard(n));
            ensure(
                exact_eq(&second, &tau)
                    && at_std == BigRational::from_integer(second.clone())
                    && exact_eq(&gap, &(BigInt::from(valency(&mu)) - &tau)),
                format!("{prefix} at n={n}: routes disagree"),
            )?;
        }
    }
    for prefix in catalog_prefixes() {
        let v = verify_induction_step(&FamilySpec::new(prefix.clone()).unwrap(), 15)
            .map_err(|e| e.to_string())?;
        ensure(
            v.passed,
            format!("induction step fails for {prefix} at n=15"),
        )?;
    }
    Ok("n=4..7 tables; six families n=8..100; induction at n=15".into())
}

fn c4_closed_forms(t: &Tables) -> Outcome {
    let mut checked = 0;
    for n in 5..=7 {
        let table = t.get(n);
        for prefix in catalog_prefixes() {
            if prefix.size() > n || n < family_threshold(&prefix).unwrap() {
                continue;
            }
            let mu = Partition::padded(&prefix, n).unwrap();
            let (second, gap) = family_second_eig(&prefix, n).map_err(|e| e.to_string())?;
            let r = gap_report(table, &mu).map_err(|e| e.to_string())?;
            ensure(
                exact_eq(&second, &r.second_eig) && exact_eq(&gap, &r.gap),
                format!(
                    "{mu}: closed form ({second}, {gap}) vs table ({}, {})",
                    r.second_eig, r.gap
                ),
            )?;
            checked += 1;
        }
        if n >= 6 {
            // [n-1,1]: second eigenvalue 2^{n-3}(n-2)!, gap 2^{n-3}(2n-1)(n-2)!.
            let mu = Partition::standard(n);
            let base = BigInt::from(1u64 << (n - 3)) * (2..=n - 2).product::<usize>();
            let r = gap_report(table, &mu).map_err(|e| e.to_string())?;
            ensure(
                r.second_eig == base && r.gap == &base * (2 * n - 1),
                format!("{mu}: table ({}, {})", r.second_eig, r.gap),
            )?;
            checked += 1;
        }
    }
    let spot = |n: usize, mu: &str| gap_report(t.get(n), &p(mu)).map(|r| (r.second_eig, r.gap));
    ensure(
        spot(5, "[2,1^3]") == Ok((11.into(), 9.into())),
        "[2,1^3] at n=5",
    )?;
    ensure(
        spot(6, "[2,2,1,1]") == Ok((48.into(), 132.into())),
        "[2^2,1^2] at n=6",
    )?;
    ensure(
        spot(6, "[4,1,1]").map(|x| x.0) == Ok(192.into()),
        "[4,1^2] at n=6",
    )?;
    ensure(
        spot(6, "[5,1]").map(|x| x.0) == Ok(192.into()),
        "[5,1] at n=6",
    )?;
    Ok(format!(
        "{checked} family columns at or above their thresholds"
    ))
}

fn c5_identities(t: &Tables) -> Outcome {
    let mut cols = 0;
    for n in 2..=7 {
        for mu in generate_partitions(n) {
            let ok = trace_identity_check(n, &mu, t.get(n)).map_err(|e| e.to_string())?;
            ensure(ok, format!("trace identity fails for {mu}"))?;
            cols += 1;
        }
    }
    for n in 2..=6 {
        let data = intersection_numbers(n, 8).map_err(|e| e.to_string())?;
        let ok = structure_constants_hold(t.get(n), &data).map_err(|e| e.to_string())?;
        ensure(ok, format!("structure constants fail at n={n}"))?;
    }
    Ok(format!("trace on {cols} columns; structure constants n<=6"))
}

fn c6_quotients() -> Outcome {
    let mut count = 0;
    for n in 2..=6 {
        for q in quotient_all(n, 8).map_err(|e| e.to_string())? {
            let diff = BigInt::from(q.a_mu) - BigInt::from(q.b_mu);
            ensure(
                diff == phi_n11(&q.mu).unwrap(),
                format!("{}: a-b = {diff}", q.mu),
            )?;
            count += 1;
        }
        for ell in 1..=n.saturating_sub(2) {
            let mu = hook(n, ell);
            let q = quotient_counts(&mu, 8).map_err(|e| e.to_string())?;
            let (a, b) = hook_quotient(n, ell).map_err(|e| e.to_string())?;
            ensure(
                a == BigUint::from(q.a_mu) && b == BigUint::from(q.b_mu),
                format!(
                    "{mu}: closed ({a}, {b}) vs counted ({}, {})",
                    q.a_mu, q.b_mu
                ),
            )?;
        }
    }
    Ok(format!("{count} quotients"))
}

fn c7_hook_gaps() -> Outcome {
    let mut count = 0;
    for n in 3..=30 {
        for ell in 1..=n - 2 {
            let mu = hook(n, ell);
            let want = BigInt::from(valency(&mu)) - phi_n11(&mu).unwrap();
            let got = BigInt::from(hook_gap(n, ell).unwrap());
            ensure(exact_eq(&got, &want), format!("{mu}: {got} vs {want}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} hooks"))
}

fn c8_ratios(t: &Tables) -> Outcome {
    let mut merges = 0;
    let mut constant_off = 0;
    for n in 2..=7 {
        for mu in generate_partitions(n) {
            for spec in all_merges(&mu) {
                let vr = valency_ratio(&spec);
                if printed_constant(&spec) != vr {
                    constant_off += 1;
                }
                if mu.ones() == 0 {
                    continue;
                }
                if let TauRatio::Value(tau) = tau_ratio(&spec).map_err(|e| e.to_string())? {
                    ensure(
                        tau == vr,
                        format!("{mu}: tau ratio {tau} vs valency ratio {vr}"),
                    )?;
                }
                merges += 1;
            }
        }
    }
    for (n, mu, want) in [
        (4, "[2,2]", BigRational::from_integer(4.into())),
        (5, "[3,2]", BigRational::new(12.into(), 5.into())),
    ] {
        let spec = MergeSpec::new(p(mu), 0, 1).unwrap();
        let data = intersection_numbers(n, 8).map_err(|e| e.to_string())?;
        let count = |m: &Partition| data.valencies[data.index_of(m).unwrap()];
        let counted = BigRational::new(count(&spec.merged()).into(), count(&spec.mu).into());
        let top = |m: &Partition| t.get(n).get(&Partition::row(n), m).unwrap().unwrap();
        let tabled = BigRational::new(top(&spec.merged()), top(&spec.mu));
        ensure(
            counted == want && tabled == want && valency_ratio(&spec) == want,
            format!("{mu}: counted {counted}, table {tabled}"),
        )?;
    }
    Ok(format!(
        "{merges} merges with a part 1; printed constant differs from the valency ratio in {constant_off} merges (reported only)"
    ))
}

fn fit_column(table: &EigTable, prefix: &Partition) -> FitColumn {
    let mu = Partition::padded(prefix, table.n).unwrap();
    FitColumn {
        n: table.n,
        values: table
            .rows
            .iter()
            .cloned()
            .zip(table.column(&mu).unwrap())
            .collect(),
    }
}

fn c9_fit(t: &Tables) -> Outcome {
    let t8 = build_table_oracle(8, &OracleOptions::default()).map_err(|e| e.to_string())?;
    for prefix in [p("[3,2]"), p("[5]")] {
        let cols: Vec<FitColumn> = (5..=7)
            .map(|n| fit_column(t.get(n), &prefix))
            .chain(std::iter::once(fit_column(&t8, &prefix)))
            .collect();
        let fit = fit_e_mu(&prefix, &cols, None).map_err(|e| e.to_string())?;
        let want = e_catalog(&prefix).unwrap();
        ensure(
            fit.expr == want,
            format!("{prefix}: fitted {} vs catalog {want}", fit.expr),
        )?;
    }
    Ok("E_[3,2] and E_[5] recovered from n=5..8".into())
}

fn c10_deltas() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let names = [DeltaName::P1, DeltaName::P2, DeltaName::P1Sq, DeltaName::P3];
    let parts: Vec<Vec<Partition>> = (0..=DELTA_MAX_N).map(generate_partitions).collect();
    for _ in 0..DELTA_SAMPLES {
        let n = rng.gen_range(1..=DELTA_MAX_N);
        let lambda = &parts[n][rng.gen_range(0..parts[n].len())];
        let steps = successors(lambda);
        let (_, i) = steps[rng.gen_range(0..steps.len())];
        let li = if i <= lambda.len() {
            lambda.part(i - 1) as i64
        } else {
            0
        };
        debug_assert!(add_to_row(lambda, i).is_some());
        for name in names {
            let direct = delta_eval(&name.expr(), lambda, i).map_err(|e| e.to_string())?;
            let closed = delta_closed_forms(name, li, i as i64).resolve(&p1_value(lambda));
            ensure(
                direct == BigRational::from_integer(closed.clone()),
                format!("{name:?} at {lambda}, row {i}: {direct} vs {closed}"),
            )?;
        }
    }
    Ok(format!("{DELTA_SAMPLES} samples, four power sums"))
}

fn c11_diameter_scan(t: &Tables) -> Outcome {
    let mut notes = Vec::new();
    for n in 3..=6 {
        let start = Instant::now();
        let d =
            diameter(&Partition::padded(&p("[2]"), n).unwrap(), 7).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        ensure(d == Diameter::Finite(n - 1), format!("n={n}: diameter {d}"))?;
        if n == 6 {
            ensure(took <= LIMIT_DIAMETER_N6, format!("n=6 BFS took {took:?}"))?;
            notes.push(format!("BFS n=6 {:.2}s", took.as_secs_f64()));
        }
    }
    for n in 5..=7 {
        let table = t.get(n);
        let identity = Partition::column(n);
        let gaps: Vec<(BigInt, Partition)> = table
            .columns
            .iter()
            .filter(|m| **m != identity)
            .map(|m| (gap_report(table, m).unwrap().gap, m.clone()))
            .collect();
        let min = gaps.iter().map(|g| g.0.clone()).min().unwrap();
        let argmin: Vec<&Partition> = gaps.iter().filter(|g| g.0 == min).map(|g| &g.1).collect();
        let flip = Partition::padded(&p("[2]"), n).unwrap();
        ensure(
            argmin == vec![&flip],
            format!("n={n}: smallest gap {min} at {argmin:?}"),
        )?;
    }
    notes.push("scan n=5..7 selects [2,1^{n-2}]".into());
    Ok(notes.join("; "))
}

fn c12_characters(t: &Tables) -> Outcome {
    let mut cache = CharacterCache::new();
    for n in 1..=6 {
        for lambda in generate_partitions(n) {
            let shape = lambda.double();
            let hook = dim_hook(&lambda);
            let frob = shape.frobenius_dimension();
            let mn = cache
                .chi(&shape, &Partition::column(2 * n))
                .map_err(|e| e.to_string())?;
            ensure(
                hook == frob && BigInt::from(hook.clone()) == mn,
                format!("{lambda}: hook {hook}, Frobenius {frob}, characters {mn}"),
            )?;
        }
    }
    let mut cells = 0;
    for n in 2..=4 {
        let table = t.get(n);
        for mu in &table.columns {
            for lam in &table.rows {
                let z = zonal_check(mu, lam).map_err(|e| e.to_string())?;
                let want = table.get(lam, mu).unwrap().unwrap();
                ensure(
                    z == BigRational::from_integer(want.clone()),
                    format!("n={n} ({lam}, {mu}): {z} vs {want}"),
                )?;
                cells += 1;
            }
        }
    }
    let t5 = t.get(5);
    for (lam, mu) in [
        ("[5]", "[5]"),
        ("[4,1]", "[2,1^3]"),
        ("[3,2]", "[3,2]"),
        ("[2,2,1]", "[2,2,1]"),
        ("[1^5]", "[4,1]"),
        ("[3,1,1]", "[3,1,1]"),
    ] {
        let z = zonal_check(&p(mu), &p(lam)).map_err(|e| e.to_string())?;
        let want = t5.get(&p(lam), &p(mu)).unwrap().unwrap();
        ensure(
            z == BigRational::from_integer(want.clone()),
            format!("n=5 ({lam}, {mu}): {z} vs {want}"),
        )?;
        cells += 1;
    }
    Ok(format!("dimensions n<=6 three ways; {cells} zonal cells"))
}

fn c13_thresholds() -> Outcome {
    let first = lemma_ratio_range(LEMMA_RATIO_MAX_N);
    ensure(first.is_none(), format!("ratio bound fails at n={first:?}"))?;
    let k1 = threshold_n(1).map_err(|e| e.to_string())?;
    ensure(
        k1 == 6,
        format!(
            "ratio bound holds for 2<=n<=10^4, but the squared large-n inequality for k=1 first holds at n={k1}, not 6"
        ),
    )?;
    Ok("threshold 6; ratio bound to 10^4".into())
}

fn main() {
    // Keep panics from individual criteria to their own lines.
    std::panic::set_hook(Box::new(|_| {}));
    let mut tables = Tables {
        oracle: vec![None; 8],
    };
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    let mut record = |id: u32, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let (tag, detail) = match &r {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        println!("criterion {id:>2} {tag}  {name}: {detail}");
        results.push((id, name, r));
    };

    record(1, "golden tables n=2..7", &mut || c1_golden(&mut tables));
    let have_tables = tables.oracle[2..=7].iter().all(Option::is_some);
    let t = &tables;
    let need = |f: &dyn Fn(&Tables) -> Outcome| -> Outcome {
        if have_tables {
            f(t)
        } else {
            Err("oracle tables unavailable".into())
        }
    };
    record(2, "formula and oracle routes agree", &mut || {
        need(&c2_routes)
    });
    record(3, "second eigenvalue on [n-1,1]", &mut || {
        need(&c3_conjecture)
    });
    record(4, "closed-form second eigenvalues and gaps", &mut || {
        need(&c4_closed_forms)
    });
    record(5, "trace and structure-constant identities", &mut || {
        need(&c5_identities)
    });
    record(6, "quotient matrices", &mut c6_quotients);
    record(7, "hook gaps n<=30", &mut c7_hook_gaps);
    record(8, "merge ratios", &mut || need(&c8_ratios));
    record(9, "interpolation n=5..8", &mut || need(&c9_fit));
    record(10, "increment closed forms", &mut c10_deltas);
    record(11, "flip graph diameter and smallest-gap scan", &mut || {
        need(&c11_diameter_scan)
    });
    record(12, "dimensions, characters and zonal sums", &mut || {
        need(&c12_characters)
    });
    record(
        13,
        "dimension threshold and ratio bound",
        &mut c13_thresholds,
    );

    let failed: Vec<u32> = results
        .iter()
        .filter(|r| r.2.is_err())
        .map(|r| r.0)
        .collect();
    println!(
        "acceptance: {} of {} criteria pass",
        results.len() - failed.len(),
        results.len()
    );
    if !failed.is_empty() {
        println!("failing: {failed:?}");
        std::process::exit(1);
    }
}
