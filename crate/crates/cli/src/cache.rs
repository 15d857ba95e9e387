//! On-disk cache of oracle tables.
//!
//! Each entry is the table JSON wrapped in a small header. Entries written by
//! another crate version or with another seed are ignored and overwritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use pmscheme::EigTable;
use serde_json::{json, Value};

const FORMAT: u64 = 1;

pub struct Cache {
    dir: PathBuf,
    seed: u64,
    max_oracle_n: usize,
}

impl Cache {
    pub fn new(dir: &Path, seed: u64, max_oracle_n: usize) -> Self {
        Cache {
            dir: dir.to_path_buf(),
            seed,
            max_oracle_n,
        }
    }

    fn path(&self, n: usize) -> PathBuf {
        self.dir.join(format!("table_n{n}_seed{}.json", self.seed))
    }

    /// Cached table for `n`, if a valid entry exists.
    pub fn load(&self, n: usize) -> Option<EigTable> {
        let text = fs::read_to_string(self.path(n)).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        let header = &v["header"];
        if header["format"].as_u64() != Some(FORMAT)
            || header["version"].as_str() != Some(env!("CARGO_PKG_VERSION"))
            || header["seed"].as_u64() != Some(self.seed)
        {
            return None;
        }
        let table = EigTable::from_json_value(&v["table"]).ok()?;
        (table.n == n && table.is_complete()).then_some(table)
    }

    /// Writes through a temporary file in the same directory, then renames.
    pub fn store(&self, table: &EigTable) -> Result<()> {
        fs::create_dir_all(&self.dir)
            .with_context(|| format!("creating cache directory {}", self.dir.display()))?;
        let doc = json!({
            "header": {
                "format": FORMAT,
                "version": env!("CARGO_PKG_VERSION"),
                "seed": self.seed,
                "max_oracle_n": self.max_oracle_n,
            },
            "table": table.to_json_value(),
        });
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string_pretty(&doc)?.as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.persist(self.path(table.n))
            .with_context(|| format!("writing cache entry for n = {}", table.n))?;
        Ok(())
    }
}
