//! Eigenvalue tables of the scheme, built from the oracle's intersection
//! matrices or from closed forms, with the checks that run on them.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Number, Value};

use crate::arith::matching_count;
use crate::error::{Error, Result};
use crate::linalg::{char_poly, integer_roots, kernel, IntMatrix, RatMatrix};
use crate::partition::{dim_hook, generate_partitions, Partition};
use crate::scheme::{intersection_numbers, IntersectionData};
use crate::spectra::{phi_n11, valency};
use crate::symfunc::{e_catalog, PowerSumExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Oracle,
    ClosedForm,
    Interpolated,
    /// Only the `[n]` and `[n-1,1]` rows are known.
    Absent,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Oracle => "oracle",
            Provenance::ClosedForm => "closed-form",
            Provenance::Interpolated => "interpolated",
            Provenance::Absent => "absent",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "oracle" => Provenance::Oracle,
            "closed-form" => Provenance::ClosedForm,
            "interpolated" => Provenance::Interpolated,
            "absent" => Provenance::Absent,
            other => return Err(Error::parse(other, "unknown provenance")),
        })
    }
}

/// `values[r][c]` is the eigenvalue of relation `columns[c]` on eigenspace
/// `rows[r]`; `None` marks an unknown cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigTable {
    pub n: usize,
    /// Ascending canonical order, `[1^n]` first.
    pub columns: Vec<Partition>,
    /// Descending canonical order, `[n]` first.
    pub rows: Vec<Partition>,
    pub values: Vec<Vec<Option<BigInt>>>,
    pub dims: Vec<BigUint>,
    pub provenance: Vec<Provenance>,
}

impl EigTable {
    fn empty(n: usize) -> Self {
        let rows = generate_partitions(n);
        let mut columns = rows.clone();
        columns.reverse();
        let dims = rows.iter().map(dim_hook).collect();
        EigTable {
            n,
            values: vec![vec![None; columns.len()]; rows.len()],
            provenance: vec![Provenance::Absent; columns.len()],
            columns,
            rows,
            dims,
        }
    }

    pub fn col_index(&self, mu: &Partition) -> Result<usize> {
        self.columns.iter().position(|c| c == mu).ok_or_else(|| {
            Error::InvalidArgument(format!("{mu} is not a relation for n = {}", self.n))
        })
    }

    pub fn row_index(&self, lambda: &Partition) -> Result<usize> {
        self.rows.iter().position(|r| r == lambda).ok_or_else(|| {
            Error::InvalidArgument(format!("{lambda} is not an eigenspace for n = {}", self.n))
        })
    }

    pub fn get(&self, lambda: &Partition, mu: &Partition) -> Result<Option<BigInt>> {
        Ok(self.values[self.row_index(lambda)?][self.col_index(mu)?].clone())
    }

    /// Full column, or an error naming the first missing cell.
    pub fn column(&self, mu: &Partition) -> Result<Vec<BigInt>> {
        let c = self.col_index(mu)?;
        self.rows
            .iter()
            .zip(&self.values)
            .map(|(r, row)| {
                row[c].clone().ok_or_else(|| {
                    Error::IncompleteTable(format!("missing cell at row {r}, column {mu}"))
                })
            })
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(|r| r.iter().all(Option::is_some))
    }

    fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            let absent: Vec<String> = self
                .columns
                .iter()
                .enumerate()
                .filter(|&(c, _)| self.values.iter().any(|r| r[c].is_none()))
                .map(|(_, m)| m.to_string())
                .collect();
            Err(Error::IncompleteTable(format!(
                "columns without full data: {}",
                absent.join(" ")
            )))
        }
    }

    /// Cells present in both tables that disagree, as `(row, column)`.
    pub fn disagreements(&self, other: &EigTable) -> Result<Vec<(Partition, Partition)>> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = Vec::new();
        for (r, lam) in self.rows.iter().enumerate() {
            for (c, mu) in self.columns.iter().enumerate() {
                if let (Some(a), Some(b)) = (&self.values[r][c], &other.values[r][c]) {
                    if a != b {
                        out.push((lam.clone(), mu.clone()));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Number of cells known in both tables.
    pub fn overlap(&self, other: &EigTable) -> usize {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| {
                a.iter()
                    .zip(b)
                    .filter(|(x, y)| x.is_some() && y.is_some())
                    .count()
            })
            .sum()
    }
}

/// Settings for the oracle route.
#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub seed: u64,
    pub max_n: usize,
    pub attempts: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            seed: 1,
            max_n: crate::scheme::DEFAULT_MAX_INTERSECTION_N,
            attempts: 20,
        }
    }
}

/// Builds the table from brute-force intersection numbers.
pub fn build_table_oracle(n: usize, opts: &OracleOptions) -> Result<EigTable> {
    let data = intersection_numbers(n, opts.max_n)?;
    table_from_intersections(&data, opts)
}

/// Recovers the eigenvalue table from intersection numbers. A random
/// integer combination of the intersection matrices with distinct integer
/// eigenvalues is diagonalized exactly; each eigenvector, scaled so the
/// identity entry is 1, is a row of the table.
pub fn table_from_intersections(data: &IntersectionData, opts: &OracleOptions) -> Result<EigTable> {
    let n = data.n;
    let d = data.relations.len();
    let bs: Vec<IntMatrix> = (0..d)
        .map(|i| {
            data.intersection_matrix(i)
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect()
        })
        .collect();
    let id = data
        .index_of(&Partition::column(n))
        .ok_or_else(|| Error::Internal("identity relation missing".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut vectors = None;
    for _ in 0..opts.attempts {
        let coeffs: Vec<i64> = (0..d).map(|_| rng.gen_range(-9..=9)).collect();
        let bound: u64 = coeffs
            .iter()
            .zip(&data.valencies)
            .map(|(c, v)| c.unsigned_abs() * v)
            .sum();
        let mut m: IntMatrix = vec![vec![BigInt::zero(); d]; d];
        for (c, b) in coeffs.iter().zip(&bs) {
            if *c == 0 {
                continue;
            }
            for r in 0..d {
                for s in 0..d {
                    m[r][s] += &b[r][s] * c;
                }
            }
        }
        let roots = integer_roots(&char_poly(&m), bound);
        if roots.len() != d {
            continue;
        }
        let mut vs = Vec::with_capacity(d);
        for tau in &roots {
            let shifted: RatMatrix = (0..d)
                .map(|r| {
                    (0..d)
                        .map(|s| {
                            let mut x = m[r][s].clone();
                            if r == s {
                                x -= tau;
                            }
                            BigRational::from_integer(x)
                        })
                        .collect()
                })
                .collect();
            let ker = kernel(&shifted);
            if ker.len() != 1 {
                return Err(Error::Internal(format!(
                    "eigenvalue {tau} has a kernel of dimension {}",
                    ker.len()
                )));
            }
            let v = &ker[0];
            if v[id].is_zero() {
                return Err(Error::Internal(
                    "eigenvector vanishes at the identity".into(),
                ));
            }
            let scale = v[id].clone();
            let u: Vec<BigRational> = v.iter().map(|x| x / &scale).collect();
            let mut phi = Vec::with_capacity(d);
            for x in &u {
                if !x.is_integer() {
                    return Err(Error::Internal(format!("non-integral eigenvalue {x}")));
                }
                phi.push(x.to_integer());
            }
            vs.push(phi);
        }
        vectors = Some(vs);
        break;
    }
    let vectors = vectors.ok_or(Error::Degenerate(opts.attempts))?;

    for phi in &vectors {
        for (i, b) in bs.iter().enumerate() {
            for j in 0..d {
                let lhs: BigInt = (0..d).map(|k| &b[j][k] * &phi[k]).sum();
                if lhs != &phi[i] * &phi[j] {
                    return Err(Error::Internal(
                        "recovered vector is not a common eigenvector".into(),
                    ));
                }
            }
        }
    }

    let mut table = EigTable::empty(n);
    let assignment = assign_rows(&table, data, &vectors)?;
    for (phi, r) in vectors.iter().zip(assignment) {
        for (c, mu) in table.columns.clone().iter().enumerate() {
            let k = data.index_of(mu).expect("same relations");
            table.values[r][c] = Some(phi[k].clone());
        }
    }
    table.provenance = vec![Provenance::Oracle; table.columns.len()];
    Ok(table)
}

/// Matches recovered eigenvectors to eigenspaces by multiplicity, breaking
/// ties with the catalog values of `[2,1^{n-2}]` and `[3,1^{n-3}]`.
fn assign_rows(
    table: &EigTable,
    data: &IntersectionData,
    vectors: &[Vec<BigInt>],
) -> Result<Vec<usize>> {
    let n = data.n;
    let total = BigRational::from_integer(BigInt::from(matching_count(n)));
    let mut tiebreak: Vec<(usize, PowerSumExpr)> = Vec::new();
    for (s, min_n) in [("[2]", 2usize), ("[3]", 3)] {
        if n >= min_n {
            let prefix: Partition = s.parse().expect("prefix");
            let mu = Partition::padded(&prefix, n)?;
            tiebreak.push((data.index_of(&mu).expect("relation"), e_catalog(&prefix)?));
        }
    }
    let mut used = vec![false; table.rows.len()];
    let mut out = Vec::with_capacity(vectors.len());
    for phi in vectors {
        let norm: BigRational = phi
            .iter()
            .zip(&data.valencies)
            .map(|(x, &v)| BigRational::new(x * x, BigInt::from(v)))
            .sum();
        let mult = &total / norm;
        let mut candidates: Vec<usize> = (0..table.rows.len())
            .filter(|&r| BigRational::from_integer(BigInt::from(table.dims[r].clone())) == mult)
            .collect();
        if candidates.len() > 1 {
            candidates.retain(|&r| {
                tiebreak.iter().all(|(k, e)| {
                    e.eval(&table.rows[r]) == BigRational::from_integer(phi[*k].clone())
                })
            });
        }
        match candidates.as_slice() {
            [r] if !used[*r] => {
                used[*r] = true;
                out.push(*r);
            }
            [] => {
                return Err(Error::AmbiguousRows(format!(
                    "no eigenspace has multiplicity {mult}"
                )))
            }
            many => {
                let names: Vec<String> = many.iter().map(|&r| table.rows[r].to_string()).collect();
                return Err(Error::AmbiguousRows(format!(
                    "eigenvector with multiplicity {mult} fits {}",
                    names.join(", ")
                )));
            }
        }
    }
    Ok(out)
}

/// Fills every column for which a formula is known: the identity, the
/// catalog families, and any extra fitted families. Rows `[n]` and `[n-1,1]`
/// are filled for every column.
pub fn build_table_formulas(n: usize) -> Result<EigTable> {
    build_table_formulas_with(n, &[])
}

pub fn build_table_formulas_with(
    n: usize,
    extra: &[(Partition, PowerSumExpr)],
) -> Result<EigTable> {
    if n < 2 {
        return Err(Error::InvalidArgument("tables need n >= 2".into()));
    }
    let mut table = EigTable::empty(n);
    let top = 0;
    let std_row = table.row_index(&Partition::standard(n))?;
    for (c, mu) in table.columns.clone().iter().enumerate() {
        let prefix = mu.non_unit_prefix();
        let formula = if prefix.is_empty() {
            None
        } else if let Ok(e) = e_catalog(&prefix) {
            Some((e, Provenance::ClosedForm))
        } else {
            extra
                .iter()
                .find(|(p, _)| *p == prefix)
                .map(|(_, e)| (e.clone(), Provenance::Interpolated))
        };
        if prefix.is_empty() {
            for r in 0..table.rows.len() {
                table.values[r][c] = Some(BigInt::one());
            }
            table.provenance[c] = Provenance::ClosedForm;
        } else if let Some((e, prov)) = formula {
            for (r, lam) in table.rows.clone().iter().enumerate() {
                let v = e.eval(lam);
                if !v.is_integer() {
                    return Err(Error::Internal(format!(
                        "formula for {mu} gives a non-integer at {lam}"
                    )));
                }
                table.values[r][c] = Some(v.to_integer());
            }
            table.provenance[c] = prov;
        }
        table.values[top][c] = Some(BigInt::from(valency(mu)));
        table.values[std_row][c] = Some(phi_n11(mu)?);
    }
    Ok(table)
}

/// Largest eigenvalue other than the valency and every row attaining it.
pub fn second_largest(table: &EigTable, mu: &Partition) -> Result<(BigInt, Vec<Partition>)> {
    let col = table.column(mu)?;
    pick_second(table, &col, |x| x.clone())
}

/// Largest absolute eigenvalue off the trivial eigenspace.
pub fn second_largest_abs(table: &EigTable, mu: &Partition) -> Result<(BigInt, Vec<Partition>)> {
    let col = table.column(mu)?;
    pick_second(table, &col, |x| x.abs())
}

fn pick_second(
    table: &EigTable,
    col: &[BigInt],
    key: impl Fn(&BigInt) -> BigInt,
) -> Result<(BigInt, Vec<Partition>)> {
    let top = Partition::row(table.n);
    let best = table
        .rows
        .iter()
        .zip(col)
        .filter(|(r, _)| **r != top)
        .map(|(_, v)| key(v))
        .max()
        .ok_or_else(|| Error::InvalidArgument("table has a single row".into()))?;
    let rows = table
        .rows
        .iter()
        .zip(col)
        .filter(|(r, v)| **r != top && key(v) == best)
        .map(|(r, _)| r.clone())
        .collect();
    Ok((best, rows))
}

/// Whether the second-largest-eigenvalue statement applies to `μ`: at least
/// two parts equal to 1, or `μ = [n-1,1]` with `n != 4`.
pub fn conjecture_applies(mu: &Partition) -> bool {
    let n = mu.size();
    mu.ones() >= 2 || (n >= 2 && *mu == Partition::standard(n) && n != 4)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnVerdict {
    pub mu: Partition,
    pub applicable: bool,
    pub second_value: BigInt,
    pub second_largest_rows: Vec<Partition>,
    pub conjecture_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureVerdict {
    pub n: usize,
    pub columns: Vec<ColumnVerdict>,
    pub overall: bool,
}

/// For each applicable column, checks that `[n-1,1]` attains the second
/// largest eigenvalue. Ties are allowed.
pub fn verify_conjecture(table: &EigTable) -> Result<ConjectureVerdict> {
    table.require_complete()?;
    let std = Partition::standard(table.n);
    let mut columns = Vec::new();
    for mu in &table.columns {
        let (second_value, rows) = second_largest(table, mu)?;
        let applicable = conjecture_applies(mu);
        let holds = rows.contains(&std);
        columns.push(ColumnVerdict {
            mu: mu.clone(),
            applicable,
            second_value,
            second_largest_rows: rows,
            conjecture_holds: holds,
        });
    }
    let overall = columns
        .iter()
        .filter(|c| c.applicable)
        .all(|c| c.conjecture_holds);
    Ok(ConjectureVerdict {
        n: table.n,
        columns,
        overall,
    })
}

/// Eigenvalues of the sum of all relations without a part equal to 1.
pub fn derangement_spectrum(table: &EigTable) -> Result<Vec<BigInt>> {
    table.require_complete()?;
    let cols: Vec<usize> = table
        .columns
        .iter()
        .enumerate()
        .filter(|(_, m)| m.ones() == 0)
        .map(|(c, _)| c)
        .collect();
    Ok(table
        .values
        .iter()
        .map(|row| {
            cols.iter()
                .map(|&c| row[c].clone().expect("complete"))
                .sum()
        })
        .collect())
}

/// Valency, second eigenvalue and gap of one relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub n: usize,
    pub mu: Partition,
    pub valency: BigInt,
    pub second_eig: BigInt,
    pub gap: BigInt,
    pub witness_rows: Vec<Partition>,
}

pub fn gap_report(table: &EigTable, mu: &Partition) -> Result<GapReport> {
    let (second, rows) = second_largest(table, mu)?;
    let v = BigInt::from(valency(mu));
    Ok(GapReport {
        n: table.n,
        mu: mu.clone(),
        gap: &v - &second,
        valency: v,
        second_eig: second,
        witness_rows: rows,
    })
}

/// `φ_i φ_j = Σ_k p^k_{ij} φ_k` on every row, for all pairs `i, j`.
pub fn structure_constants_hold(table: &EigTable, data: &IntersectionData) -> Result<bool> {
    table.require_complete()?;
    let idx: Vec<usize> = data
        .relations
        .iter()
        .map(|m| table.col_index(m))
        .collect::<Result<_>>()?;
    let d = idx.len();
    for row in &table.values {
        let phi: Vec<BigInt> = idx
            .iter()
            .map(|&c| row[c].clone().expect("complete"))
            .collect();
        for i in 0..d {
            for j in 0..d {
                let rhs: BigInt = (0..d)
                    .filter(|&k| data.p[k][i][j] != 0)
                    .map(|k| BigInt::from(data.p[k][i][j]) * &phi[k])
                    .sum();
                if &phi[i] * &phi[j] != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `Σ_λ f^{2λ} φ^λ_i φ^λ_j / v_i = (2n-1)!! [i = j]`.
pub fn column_orthogonality_holds(table: &EigTable) -> Result<bool> {
    table.require_complete()?;
    let total = BigInt::from(matching_count(table.n));
    let cols: Vec<Vec<BigInt>> = table
        .columns
        .iter()
        .map(|m| table.column(m))
        .collect::<Result<_>>()?;
    let dims: Vec<BigInt> = table.dims.iter().map(|d| BigInt::from(d.clone())).collect();
    for (i, mi) in table.columns.iter().enumerate() {
        let v = BigInt::from(valency(mi));
        for j in 0..cols.len() {
            let s: BigInt = (0..dims.len())
                .map(|r| &dims[r] * &cols[i][r] * &cols[j][r])
                .sum();
            let want = if i == j { &total * &v } else { BigInt::zero() };
            if s != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn cell_text(v: &Option<BigInt>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

impl EigTable {
    /// CSV with header `lambda\mu`, the columns, then `Dim`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let mut header = vec!["lambda\\mu".to_string()];
        header.extend(self.columns.iter().map(|c| c.to_string()));
        header.push("Dim".into());
        w.write_record(&header).expect("in-memory write");
        for (r, lam) in self.rows.iter().enumerate() {
            let mut rec = vec![lam.to_string()];
            rec.extend(self.values[r].iter().map(cell_text));
            rec.push(self.dims[r].to_string());
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn from_csv(text: &str) -> Result<EigTable> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(text.as_bytes());
        let mut records = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::parse("csv", e.to_string()))?;
            records.push(rec.iter().map(str::to_string).collect::<Vec<_>>());
        }
        let (header, body) = records
            .split_first()
            .ok_or_else(|| Error::parse("csv", "empty input"))?;
        if header.first().map(String::as_str) != Some("lambda\\mu")
            || header.last().map(String::as_str) != Some("Dim")
        {
            return Err(Error::parse(header.join(","), "unexpected header"));
        }
        let columns: Vec<Partition> = header[1..header.len() - 1]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_>>()?;
        let n = columns.first().map_or(0, Partition::size);
        let mut table = EigTable::empty(n);
        if table.columns != columns {
            return Err(Error::parse(
                header.join(","),
                "columns not in canonical order",
            ));
        }
        if body.len() != table.rows.len() {
            return Err(Error::SizeMismatch {
                left: body.len(),
                right: table.rows.len(),
            });
        }
        for (r, rec) in body.iter().enumerate() {
            if rec.len() != header.len() {
                return Err(Error::parse(rec.join(","), "wrong field count"));
            }
            let lam: Partition = rec[0].parse()?;
            if lam != table.rows[r] {
                return Err(Error::parse(&rec[0], "rows not in canonical order"));
            }
            for c in 0..columns.len() {
                let cell = rec[c + 1].trim();
                table.values[r][c] = if cell.is_empty() {
                    None
                } else {
                    Some(
                        cell.parse()
                            .map_err(|_| Error::parse(cell, "expected an integer"))?,
                    )
                };
            }
            let dim: BigUint = rec[header.len() - 1]
                .parse()
                .map_err(|_| Error::parse(&rec[header.len() - 1], "expected a dimension"))?;
            table.dims[r] = dim;
        }
        for c in 0..columns.len() {
            if table.values.iter().all(|row| row[c].is_some()) {
                table.provenance[c] = Provenance::Oracle;
            }
        }
        Ok(table)
    }

    pub fn to_json_value(&self) -> Value {
        let num = |x: &BigInt| -> Value {
            Value::Number(x.to_string().parse::<Number>().expect("integer literal"))
        };
        let mut prov = Map::new();
        for (c, p) in self.columns.iter().zip(&self.provenance) {
            prov.insert(c.to_string(), Value::String(p.as_str().into()));
        }
        json!({
            "n": self.n,
            "columns": self.columns.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "rows": self.rows.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "values": self.values.iter().map(|row| {
                row.iter().map(|v| v.as_ref().map_or(Value::Null, num)).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "dims": self.dims.iter().map(|d| num(&BigInt::from(d.clone()))).collect::<Vec<_>>(),
            "provenance": Value::Object(prov),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable") + "\n"
    }

    pub fn from_json_value(v: &Value) -> Result<EigTable> {
        let bad = |what: &str| Error::parse(what, "malformed table JSON");
        let n = v["n"].as_u64().ok_or_else(|| bad("n"))? as usize;
        let mut table = EigTable::empty(n);
        let strs = |key: &str| -> Result<Vec<Partition>> {
            v[key]
                .as_array()
                .ok_or_else(|| bad(key))?
                .iter()
                .map(|s| s.as_str().ok_or_else(|| bad(key))?.parse())
                .collect()
        };
        if strs("columns")? != table.columns || strs("rows")? != table.rows {
            return Err(bad("columns/rows"));
        }
        let int = |x: &Value| -> Result<BigInt> {
            match x {
                Value::Number(num) => num.to_string().parse().map_err(|_| bad("value")),
                _ => Err(bad("value")),
            }
        };
        let values = v["values"].as_array().ok_or_else(|| bad("values"))?;
        if values.len() != table.rows.len() {
            return Err(bad("values"));
        }
        for (r, row) in values.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| bad("values"))?;
            if row.len() != table.columns.len() {
                return Err(bad("values"));
            }
            for (c, x) in row.iter().enumerate() {
                table.values[r][c] = if x.is_null() { None } else { Some(int(x)?) };
            }
        }
        let dims = v["dims"].as_array().ok_or_else(|| bad("dims"))?;
        for (r, d) in dims.iter().enumerate() {
            table.dims[r] = int(d)?.to_biguint().ok_or_else(|| bad("dims"))?;
        }
        let prov = v["provenance"]
            .as_object()
            .ok_or_else(|| bad("provenance"))?;
        for (c, mu) in table.columns.clone().iter().enumerate() {
            let s = prov
                .get(&mu.to_string())
                .and_then(Value::as_str)
                .ok_or_else(|| bad("provenance"))?;
            table.provenance[c] = Provenance::parse(s)?;
        }
        Ok(table)
    }

    pub fn from_json(text: &str) -> Result<EigTable> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::parse("json", e.to_string()))?;
        Self::from_json_value(&v)
    }

    /// Aligned plain-text rendering; unknown cells print as `.`.
    pub fn to_pretty(&self) -> String {
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut header = vec!["λ \\ μ".to_string()];
        header.extend(self.columns.iter().map(|c| c.to_string()));
        header.push("Dim".into());
        cells.push(header);
        for (r, lam) in self.rows.iter().enumerate() {
            let mut line = vec![lam.double().to_string()];
            line.extend(
                self.values[r]
                    .iter()
                    .map(|v| v.as_ref().map_or(".".to_string(), |x| x.to_string())),
            );
            line.push(self.dims[r].to_string());
            cells.push(line);
        }
        let widths: Vec<usize> = (0..cells[0].len())
            .map(|c| {
                cells
                    .iter()
                    .map(|l| l[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for line in &cells {
            let mut s = String::new();
            for (c, cell) in line.iter().enumerate() {
                if c > 0 {
                    s.push_str("  ");
                }
                let pad = widths[c] - cell.chars().count();
                if c == 0 {
                    s.push_str(cell);
                    s.push_str(&" ".repeat(pad));
                } else {
                    s.push_str(&" ".repeat(pad));
                    s.push_str(cell);
                }
            }
            let _ = writeln!(out, "{}", s.trim_end());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn oracle(n: usize) -> EigTable {
        build_table_oracle(n, &OracleOptions::default()).unwrap()
    }

    fn col(t: &EigTable, mu: &str) -> Vec<i64> {
        t.column(&p(mu))
            .unwrap()
            .iter()
            .map(|x| x.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn n2_table() {
        let t = oracle(2);
        assert_eq!(t.rows, vec![p("[2]"), p("[1,1]")]);
        assert_eq!(col(&t, "[1,1]"), vec![1, 1]);
        assert_eq!(col(&t, "[2]"), vec![2, -1]);
        assert_eq!(t.dims, vec![BigUint::one(), BigUint::from(2u32)]);
    }

    #[test]
    fn n3_and_n4_columns() {
        let t = oracle(3);
        assert_eq!(col(&t, "[3]"), vec![8, -2, 2]);
        assert_eq!(
            derangement_spectrum(&t).unwrap(),
            vec![8.into(), (-2).into(), 2.into()]
        );
        let t4 = oracle(4);
        assert_eq!(derangement_spectrum(&t4).unwrap()[0], BigInt::from(60));
        let (v, rows) = second_largest(&t4, &p("[3,1]")).unwrap();
        assert_eq!((v, rows), (BigInt::from(8), vec![p("[1^4]")]));
    }

    #[test]
    fn n5_checks() {
        let t = oracle(5);
        assert_eq!(
            second_largest(&t, &p("[2,1^3]")).unwrap(),
            (BigInt::from(11), vec![p("[4,1]")])
        );
        assert_eq!(
            second_largest_abs(&t, &p("[5]")).unwrap(),
            (BigInt::from(48), vec![p("[4,1]")])
        );
        let v = verify_conjecture(&t).unwrap();
        assert!(v.overall);
        for mu in ["[2,1^3]", "[3,1,1]", "[4,1]"] {
            let c = v.columns.iter().find(|c| c.mu == p(mu)).unwrap();
            assert!(c.applicable && c.conjecture_holds, "{mu}");
        }
        assert!(!conjecture_applies(&p("[2,2,1]")));
        assert!(!conjecture_applies(&p("[3,1]")));
        assert!(conjecture_applies(&p("[4,1]")));
        let data = intersection_numbers(5, 8).unwrap();
        assert!(structure_constants_hold(&t, &data).unwrap());
        assert!(column_orthogonality_holds(&t).unwrap());
        let f = build_table_formulas(5).unwrap();
        assert!(t.disagreements(&f).unwrap().is_empty());
    }

    #[test]
    fn formula_rows() {
        let f = build_table_formulas(6).unwrap();
        let row: Vec<i64> = f.values[f.row_index(&p("[5,1]")).unwrap()]
            .iter()
            .map(|x| x.as_ref().unwrap().to_i64().unwrap())
            .collect();
        assert_eq!(row, vec![1, 19, 48, -12, 72, 80, -64, 192, -144, 192, -384]);
        assert!(matches!(
            verify_conjecture(&f),
            Err(Error::IncompleteTable(_))
        ));
        let f20 = build_table_formulas(20).unwrap();
        assert_eq!(
            f20.get(&p("[19,1]"), &p("[2,1^18]")).unwrap(),
            Some(BigInt::from(341))
        );
        assert_eq!(
            f20.provenance[f20.col_index(&p("[6,1^14]")).unwrap()],
            Provenance::Absent
        );
    }

    #[test]
    fn serialization_round_trip() {
        let t = oracle(4);
        assert_eq!(EigTable::from_csv(&t.to_csv()).unwrap().values, t.values);
        assert_eq!(EigTable::from_json(&t.to_json()).unwrap(), t);
        let f = build_table_formulas(9).unwrap();
        assert_eq!(EigTable::from_json(&f.to_json()).unwrap(), f);
        let csv = f.to_csv();
        assert!(csv.starts_with("lambda\\mu,[1^9]") || csv.starts_with("lambda\\mu,\"[1,1,1"));
        assert!(t.to_pretty().contains("[8]"));
    }
}
