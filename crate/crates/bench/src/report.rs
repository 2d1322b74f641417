use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{Map, Value};

/// One CSV field. Floats are written with 17 significant digits so that the
/// value round-trips exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i32> for Cell {
    fn from(v: i32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Int(v as i64)
    }
}

pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Float(v) => f.write_str(&format_float(*v)),
        }
    }
}

#[macro_export]
macro_rules! row {
    ($($x:expr),* $(,)?) => { vec![$($crate::report::Cell::from($x)),*] };
}

/// An assertion evaluated by an experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// Human-readable condition, e.g. `< 1e-12`.
    pub condition: String,
    pub pass: bool,
}

impl Check {
    pub fn below(name: &str, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, condition: format!("< {bound:e}"), pass: value < bound }
    }

    pub fn at_most(name: &str, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, condition: format!("<= {bound}"), pass: value <= bound }
    }

    pub fn within(name: &str, value: f64, centre: f64, radius: f64) -> Self {
        Self {
            name: name.into(),
            value,
            condition: format!("in {centre} +- {radius}"),
            pass: (value - centre).abs() <= radius,
        }
    }

    pub fn holds(name: &str, ok: bool) -> Self {
        Self { name: name.into(), value: ok as i32 as f64, condition: "holds".into(), pass: ok }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub name: String,
    pub config: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl ExperimentReport {
    pub fn new(name: &str, config: Value, columns: &[&'static str]) -> Self {
        Self {
            name: name.into(),
            config,
            columns: columns.to_vec(),
            rows: Vec::new(),
            summary: Map::new(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.summary.insert(key.into(), v.into());
    }

    /// Non-finite floats are stored as strings, which JSON cannot otherwise hold.
    pub fn set_f64(&mut self, key: &str, v: f64) {
        let val = serde_json::Number::from_f64(v).map(Value::Number).unwrap_or_else(|| Value::String(v.to_string()));
        self.summary.insert(key.into(), val);
    }

    pub fn set_f64s(&mut self, key: &str, vs: &[f64]) {
        let arr = vs
            .iter()
            .map(|&v| serde_json::Number::from_f64(v).map(Value::Number).unwrap_or_else(|| Value::String(v.to_string())))
            .collect();
        self.summary.insert(key.into(), Value::Array(arr));
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn csv_string(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(|c| c.to_string()))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn summary_json(&self) -> Value {
        serde_json::json!({
            "name": self.name,
            "config": self.config,
            "rows": self.rows.len(),
            "summary": self.summary,
            "checks": self.checks,
            "pass": self.pass(),
        })
    }

    /// Writes `<name>.csv` and `<name>.summary.json` into `dir`, creating it if needed.
    pub fn write(&self, dir: &Path) -> Result<(PathBuf, PathBuf)> {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let csv_path = dir.join(format!("{}.csv", self.name));
        let json_path = dir.join(format!("{}.summary.json", self.name));
        std::fs::write(&csv_path, self.csv_string()?).with_context(|| format!("writing {}", csv_path.display()))?;
        let json = serde_json::to_string_pretty(&self.summary_json())? + "\n";
        std::fs::write(&json_path, json).with_context(|| format!("writing {}", json_path.display()))?;
        Ok((csv_path, json_path))
    }
}
