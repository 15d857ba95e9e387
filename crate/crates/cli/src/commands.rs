use std::fs;
use std::io::Write;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use pmscheme::partition::generate_partitions;
use pmscheme::ratios::{
    all_merges, merge_dominates, printed_constant, tau_ratio, valency_ratio, TauRatio,
};
use pmscheme::scheme::{intersection_numbers, scheme_diameter, Diameter, IntersectionData};
use pmscheme::spectra::{
    family_second_eig, trace_identity_check, valency, verify_induction_step, FamilySpec,
};
use pmscheme::symfunc::{fit_e_mu, FitColumn};
use pmscheme::tables::{
    build_table_formulas, build_table_oracle, column_orthogonality_holds, gap_report,
    structure_constants_hold, table_from_intersections, verify_conjecture, OracleOptions,
};
use pmscheme::{EigTable, Partition};
use serde_json::{json, Number, Value};

use crate::cache::Cache;
use crate::{Cli, Cmd, Format, Outcome, Source, VerifyKind};

/// Largest n for which `auto` uses the oracle.
const AUTO_ORACLE_N: usize = 7;

struct Ctx<'a> {
    cli: &'a Cli,
    cache: Cache,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let ctx = Ctx {
        cli,
        cache: Cache::new(&cli.data_dir, cli.seed, cli.max_oracle_n as usize),
    };
    match &cli.cmd {
        Cmd::Table {
            n,
            source,
            format,
            out,
        } => ctx.table(*n, *source, *format, out.as_deref()),
        Cmd::Verify { kind } => match kind {
            VerifyKind::Conjecture { n } => ctx.verify_conjecture(*n),
            VerifyKind::Trace { n } => ctx.verify_trace(*n),
            VerifyKind::Induction { family, n } => ctx.verify_induction(family, *n),
            VerifyKind::Ratios { n } => ctx.verify_ratios(*n),
            VerifyKind::SchemeAxioms { n } => ctx.verify_axioms(*n),
        },
        Cmd::Gap { mu, n } => ctx.gap(mu, *n),
        Cmd::Diameter { mu } => ctx.diameter(mu),
        Cmd::Fit {
            prefix,
            n_range,
            holdout,
        } => ctx.fit(prefix, n_range, *holdout),
        Cmd::Scan { n } => ctx.scan(*n),
    }
}

fn num(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integer literal"))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn parse_mu(s: &str) -> Result<Partition> {
    Ok(Partition::parse_loose(s)?)
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || pmscheme::Error::Parse {
        token: s.to_string(),
        reason: "expected a range like 5..8".into(),
    };
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| bad())?;
    if a > b {
        return Err(bad().into());
    }
    Ok((a, b))
}

impl Ctx<'_> {
    fn opts(&self) -> OracleOptions {
        OracleOptions {
            seed: self.cli.seed,
            max_n: self.cli.max_oracle_n as usize,
            ..OracleOptions::default()
        }
    }

    fn oracle_table(&self, n: usize) -> Result<EigTable> {
        if !self.cli.no_cache {
            if let Some(t) = self.cache.load(n) {
                return Ok(t);
            }
        }
        let t = build_table_oracle(n, &self.opts())?;
        if !self.cli.no_cache {
            if let Err(e) = self.cache.store(&t) {
                eprintln!("warning: table not cached: {e:#}");
            }
        }
        Ok(t)
    }

    fn auto_uses_oracle(&self, n: usize) -> bool {
        n <= AUTO_ORACLE_N.min(self.cli.max_oracle_n as usize)
    }

    fn emit(&self, text: &str, value: Value) {
        if self.cli.json {
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("serializable")
            );
        } else {
            print!("{text}");
        }
    }

    fn table(
        &self,
        n: usize,
        source: Source,
        format: Format,
        out: Option<&std::path::Path>,
    ) -> Result<Outcome> {
        if n < 2 {
            bail!(pmscheme::Error::InvalidArgument(
                "tables need n >= 2".into()
            ));
        }
        let table = match source {
            Source::Oracle => self.oracle_table(n)?,
            Source::Formulas => build_table_formulas(n)?,
            Source::Auto if self.auto_uses_oracle(n) => self.oracle_table(n)?,
            Source::Auto => build_table_formulas(n)?,
        };
        if !table.is_complete() {
            let filled = table
                .provenance
                .iter()
                .filter(|p| p.as_str() != "absent")
                .count();
            eprintln!(
                "note: partial table, {filled} of {} columns fully known",
                table.columns.len()
            );
        }
        let text = match format {
            Format::Csv => table.to_csv(),
            Format::Json => table.to_json(),
            Format::Pretty => table.to_pretty(),
        };
        match out {
            Some(path) => {
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
            }
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(Outcome::Pass)
    }

    fn verify_conjecture(&self, n: usize) -> Result<Outcome> {
        let table = self.oracle_table(n)?;
        let v = verify_conjecture(&table)?;
        let mut text = String::new();
        let mut cols = Vec::new();
        for c in v.columns.iter().filter(|c| c.applicable) {
            let rows: Vec<String> = c
                .second_largest_rows
                .iter()
                .map(|r| r.to_string())
                .collect();
            text += &format!(
                "{:<24} second {} on {} {}\n",
                c.mu.to_string(),
                c.second_value,
                rows.join(" "),
                if c.conjecture_holds { "ok" } else { "VIOLATED" }
            );
            cols.push(json!({
                "mu": c.mu.to_string(),
                "second": num(&c.second_value),
                "rows": rows,
                "holds": c.conjecture_holds,
            }));
        }
        text += &format!("conjecture n={n}: {}\n", verdict(v.overall));
        self.emit(&text, json!({"n": n, "columns": cols, "pass": v.overall}));
        Ok(outcome(v.overall))
    }

    fn verify_trace(&self, n: usize) -> Result<Outcome> {
        let table = self.oracle_table(n)?;
        let mut failed = Vec::new();
        for mu in &table.columns {
            if !trace_identity_check(n, mu, &table)? {
                failed.push(mu.to_string());
            }
        }
        let ok = failed.is_empty();
        let mut text = String::new();
        for f in &failed {
            text += &format!("trace identity fails for {f}\n");
        }
        text += &format!(
            "trace n={n}: {} ({} columns)\n",
            verdict(ok),
            table.columns.len()
        );
        self.emit(&text, json!({"n": n, "failed": failed, "pass": ok}));
        Ok(outcome(ok))
    }

    fn verify_induction(&self, family: &str, n: usize) -> Result<Outcome> {
        let spec = FamilySpec::new(parse_mu(family)?)?;
        let v = verify_induction_step(&spec, n)?;
        let worst = v
            .worst
            .as_ref()
            .map(|(l, i, s)| (l.to_string(), *i, s.to_string()));
        let mut text = format!(
            "family {} n={}: {} steps checked, right-hand side {}\n",
            v.prefix, v.n, v.checked, v.rhs
        );
        if let Some((l, i, s)) = &worst {
            text += &format!("least slack {s} at lambda={l}, row {i}\n");
        }
        text += &format!("induction: {}\n", verdict(v.passed));
        self.emit(
            &text,
            json!({
                "family": v.prefix.to_string(),
                "n": v.n,
                "checked": v.checked,
                "rhs": v.rhs.to_string(),
                "worst": worst.map(|(l, i, s)| json!({"lambda": l, "row": i, "slack": s})),
                "pass": v.passed,
            }),
        );
        Ok(outcome(v.passed))
    }

    fn verify_ratios(&self, n: usize) -> Result<Outcome> {
        let table = if self.auto_uses_oracle(n) {
            Some(self.oracle_table(n)?)
        } else {
            None
        };
        let mut merges = 0;
        let mut problems = Vec::new();
        let mut constant_off = 0;
        for mu in generate_partitions(n) {
            for spec in all_merges(&mu) {
                merges += 1;
                let vr = valency_ratio(&spec);
                let label = format!("{} -> {}", spec.mu, spec.merged());
                if !merge_dominates(&spec) {
                    problems.push(format!("{label}: merge does not dominate"));
                }
                if let Some(t) = &table {
                    let top = |m: &Partition| t.get(&Partition::row(n), m);
                    if let (Some(a), Some(b)) = (top(&spec.merged())?, top(&spec.mu)?) {
                        if num_rational::BigRational::new(a, b) != vr {
                            problems.push(format!("{label}: table valencies disagree"));
                        }
                    }
                }
                if mu.ones() > 0 {
                    if let TauRatio::Value(tau) = tau_ratio(&spec)? {
                        if tau != vr {
                            problems.push(format!(
                                "{label}: [n-1,1] ratio {tau} vs valency ratio {vr}"
                            ));
                        }
                    }
                }
                if printed_constant(&spec) != vr {
                    constant_off += 1;
                }
            }
        }
        let ok = problems.is_empty();
        let mut text = String::new();
        for p in &problems {
            text += &format!("{p}\n");
        }
        if constant_off > 0 {
            text += &format!(
                "NOTE: the printed merge constant differs from the valency ratio in {constant_off} of {merges} merges (it is half the ratio)\n"
            );
        }
        text += &format!("ratios n={n}: {} ({merges} merges)\n", verdict(ok));
        self.emit(
            &text,
            json!({
                "n": n,
                "merges": merges,
                "problems": problems,
                "printed_constant_mismatches": constant_off,
                "pass": ok,
            }),
        );
        Ok(outcome(ok))
    }

    fn verify_axioms(&self, n: usize) -> Result<Outcome> {
        let data = intersection_numbers(n, self.cli.max_oracle_n as usize)?;
        let table = table_from_intersections(&data, &self.opts())?;
        let d = data.relations.len();
        let commutative =
            (0..d).all(|k| (0..d).all(|i| (0..d).all(|j| data.p[k][i][j] == data.p[k][j][i])));
        let valencies = data
            .relations
            .iter()
            .zip(&data.valencies)
            .all(|(m, &v)| valency(m) == v.into());
        let checks = [
            ("row sums", data.row_sums_ok()),
            ("valencies", valencies),
            ("commutativity", commutative),
            (
                "structure constants",
                structure_constants_hold(&table, &data)?,
            ),
            ("column orthogonality", column_orthogonality_holds(&table)?),
        ];
        let ok = checks.iter().all(|c| c.1);
        let mut text = String::new();
        for (name, r) in &checks {
            text += &format!("{name:<22} {}\n", if *r { "ok" } else { "FAILED" });
        }
        text += &format!("scheme axioms n={n}: {}\n", verdict(ok));
        let map: serde_json::Map<String, Value> = checks
            .iter()
            .map(|(k, v)| (k.to_string(), Value::Bool(*v)))
            .collect();
        self.emit(&text, json!({"n": n, "checks": map, "pass": ok}));
        Ok(outcome(ok))
    }

    fn gap(&self, mu: &str, n: Option<usize>) -> Result<Outcome> {
        let mut mu = parse_mu(mu)?;
        if let Some(n) = n {
            if n < mu.size() {
                return Err(pmscheme::Error::SizeMismatch {
                    left: mu.size(),
                    right: n,
                }
                .into());
            }
            mu = Partition::padded(&mu, n)?;
        }
        let n = mu.size();
        let (gap, second, v, source) = if self.auto_uses_oracle(n) {
            let r = gap_report(&self.oracle_table(n)?, &mu)?;
            (r.gap, r.second_eig, r.valency, "table")
        } else {
            let (second, gap) = family_second_eig(&mu.non_unit_prefix(), n).map_err(|e| {
                anyhow!(pmscheme::Error::Unsupported(format!(
                    "no table or closed form for {mu}: {e}"
                )))
            })?;
            (gap, second, BigInt::from(valency(&mu)), "closed form")
        };
        self.emit(
            &format!("{gap}\n"),
            json!({
                "mu": mu.to_string(),
                "n": n,
                "valency": num(&v),
                "second": num(&second),
                "gap": num(&gap),
                "source": source,
            }),
        );
        Ok(Outcome::Pass)
    }

    fn diameter(&self, mu: &str) -> Result<Outcome> {
        let mu = parse_mu(mu)?;
        let d = pmscheme::scheme::diameter(&mu, self.cli.max_diameter_n as usize)?;
        let value = match &d {
            Diameter::Finite(k) => json!({"mu": mu.to_string(), "diameter": k}),
            Diameter::Disconnected { reached, total } => json!({
                "mu": mu.to_string(),
                "diameter": null,
                "reached": reached,
                "total": total,
            }),
        };
        self.emit(&format!("{d}\n"), value);
        Ok(Outcome::Pass)
    }

    fn fit(&self, prefix: &str, range: &str, holdout: Option<usize>) -> Result<Outcome> {
        let prefix = parse_mu(prefix)?;
        let (lo, hi) = parse_range(range)?;
        let column = |n: usize| -> Result<FitColumn> {
            let t = self.oracle_table(n)?;
            let mu = Partition::padded(&prefix, n)?;
            let col = t.column(&mu)?;
            Ok(FitColumn {
                n,
                values: t.rows.iter().cloned().zip(col).collect(),
            })
        };
        let data = (lo..=hi).map(column).collect::<Result<Vec<_>>>()?;
        let held = holdout.map(column).transpose()?;
        let fit = fit_e_mu(&prefix, &data, held.as_ref())?;
        let mut text = format!("{}\n", fit.expr);
        if fit.degree_capped {
            text += &format!(
                "note: degrees capped at {} by the number of n values\n",
                hi - lo
            );
        }
        self.emit(
            &text,
            json!({
                "prefix": prefix.to_string(),
                "n_range": [lo, hi],
                "holdout": holdout,
                "expr": fit.expr.to_string(),
                "degree_capped": fit.degree_capped,
            }),
        );
        Ok(Outcome::Pass)
    }

    fn scan(&self, n: usize) -> Result<Outcome> {
        let table = self.oracle_table(n)?;
        let data: IntersectionData = intersection_numbers(n, self.cli.max_oracle_n as usize)?;
        let identity = Partition::column(n);
        let mut gaps = Vec::new();
        let mut diams = Vec::new();
        for mu in table.columns.iter().filter(|m| **m != identity) {
            gaps.push((gap_report(&table, mu)?.gap, mu.clone()));
            diams.push((scheme_diameter(&data, mu)?, mu.clone()));
        }
        let min_gap = gaps.iter().map(|g| g.0.clone()).min().expect("n >= 2");
        let argmin: Vec<&Partition> = gaps
            .iter()
            .filter(|g| g.0 == min_gap)
            .map(|g| &g.1)
            .collect();
        let finite = |d: &Diameter| match d {
            Diameter::Finite(k) => Some(*k),
            Diameter::Disconnected { .. } => None,
        };
        let max_diam = diams.iter().filter_map(|d| finite(&d.0)).max();
        let argmax: Vec<&Partition> = diams
            .iter()
            .filter(|d| max_diam.is_some() && finite(&d.0) == max_diam)
            .map(|d| &d.1)
            .collect();
        let flip = Partition::padded(&"[2]".parse()?, n)?;
        let ok = argmin.contains(&&flip);
        let names = |v: &[&Partition]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        let mut text = format!("smallest gap {min_gap} at {}\n", names(&argmin).join(" "));
        if let Some(d) = max_diam {
            text += &format!("largest diameter {d} at {}\n", names(&argmax).join(" "));
        }
        for (d, mu) in diams.iter().filter(|d| finite(&d.0).is_none()) {
            text += &format!("{mu}: {d}\n");
        }
        text += &format!("smallest gap on {flip}: {}\n", verdict(ok));
        self.emit(
            &text,
            json!({
                "n": n,
                "min_gap": num(&min_gap),
                "argmin_gap": names(&argmin),
                "max_diameter": max_diam,
                "argmax_diameter": names(&argmax),
                "gaps": gaps.iter().map(|(g, m)| json!({"mu": m.to_string(), "gap": num(g)})).collect::<Vec<_>>(),
                "diameters": diams.iter().map(|(d, m)| json!({"mu": m.to_string(), "diameter": d.to_string()})).collect::<Vec<_>>(),
                "pass": ok,
            }),
        );
        Ok(outcome(ok))
    }
}
