//! Named-column trajectory records and their CSV form.

use anyhow::{anyhow, Result};
use std::io::Write;
use std::path::Path;

/// Equal-length named series; the leading `t` column counts steps from 0.
#[derive(Clone, Debug)]
pub struct Trajectory {
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn new(value_names: &[&str]) -> Self {
        let mut names = vec!["t".to_string()];
        names.extend(value_names.iter().map(|n| n.to_string()));
        let columns = names.iter().map(|_| Vec::new()).collect();
        Self { names, columns }
    }

    /// Appends one row; `t` is filled in automatically.
    pub fn push_row(&mut self, values: &[f64]) {
        assert_eq!(values.len() + 1, self.names.len(), "row width mismatch");
        let t = self.len() as f64;
        self.columns[0].push(t);
        for (col, v) in self.columns[1..].iter_mut().zip(values) {
            col.push(*v);
        }
    }

    pub fn len(&self) -> usize {
        self.columns[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn names(&self) -> Vec<&str> {
        self.names.iter().map(String::as_str).collect()
    }

    pub fn column(&self, name: &str) -> Result<&[f64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.columns[i].as_slice())
            .ok_or_else(|| {
                anyhow!("unknown column {name:?}; available: {}", self.names.join(", "))
            })
    }

    /// Keeps `t` plus the requested columns, in the requested order.
    pub fn select(&self, keep: &[String]) -> Result<Trajectory> {
        let mut names = vec!["t".to_string()];
        let mut columns = vec![self.columns[0].clone()];
        for name in keep {
            if name == "t" {
                continue;
            }
            let data = self.column(name)?;
            names.push(name.clone());
            columns.push(data.to_vec());
        }
        Ok(Trajectory { names, columns })
    }

    /// Writes the header and one row per step. Step counts print as
    /// integers, everything else in scientific notation with 16
    /// significant digits, so output is byte-deterministic.
    pub fn emit_csv(&self, out: &mut dyn Write) -> Result<()> {
        writeln!(out, "{}", self.names.join(","))?;
        for row in 0..self.len() {
            write!(out, "{}", self.columns[0][row] as u64)?;
            for col in &self.columns[1..] {
                write!(out, ",{:.15e}", col[row])?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn emit_csv_path(&self, path: &Path) -> Result<()> {
        let mut file = std::fs::File::create(path)
            .map_err(|e| anyhow!("cannot write {}: {e}", path.display()))?;
        self.emit_csv(&mut file)?;
        Ok(())
    }

    pub fn to_csv_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.emit_csv(&mut buf).expect("in-memory write");
        buf
    }
}
