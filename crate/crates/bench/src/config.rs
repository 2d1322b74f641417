//! Flat JSON experiment configuration.
//!
//! ```json
//! { "schema_version": 1, "experiment": "hua-fit", "q_hi": 200, "d": 2 }
//! ```
//!
//! Reserved keys are `schema_version`, `experiment`, `name`, `rng` and `seed`; every
//! other key is an experiment parameter and must be one the experiment declares.

use std::collections::BTreeSet;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde_json::{Map, Value};

use crate::experiments::Experiment;

pub const SCHEMA_VERSION: u64 = 1;

/// The only generator accepted in `rng`. ChaCha20 is counter based, so a
/// `(seed, stream)` pair fixes the whole sequence.
pub const RNG_CHACHA20: &str = "chacha20";

const RESERVED: [&str; 5] = ["schema_version", "experiment", "name", "rng", "seed"];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    /// Stem of the output files; defaults to the experiment name.
    pub name: String,
    pub seed: Option<u64>,
    pub params: Params,
}

impl ExperimentConfig {
    pub fn from_value(v: Value) -> Result<Self> {
        let Value::Object(mut map) = v else { bail!("config must be a JSON object") };
        let version = map.remove("schema_version").ok_or_else(|| anyhow!("missing schema_version"))?;
        if version.as_u64() != Some(SCHEMA_VERSION) {
            bail!("unsupported schema_version {version}, expected {SCHEMA_VERSION}");
        }
        let exp = match map.remove("experiment") {
            Some(Value::String(s)) => s.parse::<Experiment>()?,
            Some(v) => bail!("experiment must be a string, got {v}"),
            None => bail!("missing experiment"),
        };
        let name = match map.remove("name") {
            Some(Value::String(s)) if valid_stem(&s) => s,
            Some(v) => bail!("name must be a plain file stem, got {v}"),
            None => exp.as_str().to_string(),
        };
        match map.remove("rng") {
            None => {}
            Some(Value::String(s)) if s == RNG_CHACHA20 => {}
            Some(v) => bail!("unsupported rng {v}; only \"{RNG_CHACHA20}\" is available"),
        }
        let seed = match map.remove("seed") {
            None => None,
            Some(v) => Some(v.as_u64().ok_or_else(|| anyhow!("seed must be a non-negative integer, got {v}"))?),
        };
        let allowed: BTreeSet<&str> = exp.keys().iter().map(|k| k.name).collect();
        let unknown: Vec<&String> = map.keys().filter(|k| !allowed.contains(k.as_str())).collect();
        if !unknown.is_empty() {
            bail!("unknown key(s) for {}: {unknown:?}; accepted: {allowed:?}", exp.as_str());
        }
        let params = Params(map);
        if seed.is_none() && exp.is_randomized(&params)? {
            bail!("experiment {} is randomized and needs a seed", exp.as_str());
        }
        Ok(Self { experiment: exp, name, seed, params })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Self::from_value(v)
    }

    /// Builds a config from `--key value` pairs. Values are read as JSON when they
    /// parse as such (numbers, arrays, booleans) and as strings otherwise.
    pub fn from_cli(experiment: &str, pairs: &[(String, String)]) -> Result<Self> {
        let mut map = Map::new();
        map.insert("schema_version".into(), SCHEMA_VERSION.into());
        map.insert("experiment".into(), experiment.into());
        for (k, v) in pairs {
            let val = serde_json::from_str::<Value>(v).unwrap_or_else(|_| Value::String(v.clone()));
            if map.insert(k.replace('-', "_"), val).is_some() {
                bail!("key {k} given twice");
            }
        }
        Self::from_value(Value::Object(map))
    }

    /// Config echo with reserved keys restored, as written to the summary.
    pub fn to_value(&self) -> Value {
        let mut m = self.params.0.clone();
        m.insert("schema_version".into(), SCHEMA_VERSION.into());
        m.insert("experiment".into(), self.experiment.as_str().into());
        m.insert("name".into(), self.name.clone().into());
        m.insert("rng".into(), RNG_CHACHA20.into());
        if let Some(s) = self.seed {
            m.insert("seed".into(), s.into());
        }
        Value::Object(m)
    }

    /// Generator for stream `stream`; independent streams share the seed.
    pub fn rng(&self, stream: u64) -> Result<ChaCha20Rng> {
        let seed = self.seed.ok_or_else(|| anyhow!("no seed configured"))?;
        let mut r = ChaCha20Rng::seed_from_u64(seed);
        r.set_stream(stream);
        Ok(r)
    }
}

fn valid_stem(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c)) && !s.starts_with('.')
}

/// Declared parameter of an experiment.
#[derive(Debug, Clone, Copy)]
pub struct Key {
    pub name: &'static str,
    pub help: &'static str,
}

pub const fn key(name: &'static str, help: &'static str) -> Key {
    Key { name, help }
}

/// Experiment parameters with typed, defaulted accessors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Params(pub Map<String, Value>);

impl Params {
    fn get(&self, k: &str) -> Option<&Value> {
        debug_assert!(!RESERVED.contains(&k));
        self.0.get(k)
    }

    pub fn u64(&self, k: &str, default: u64) -> Result<u64> {
        match self.get(k) {
            None => Ok(default),
            Some(v) => v.as_u64().ok_or_else(|| anyhow!("{k} must be a non-negative integer, got {v}")),
        }
    }

    pub fn u32(&self, k: &str, default: u32) -> Result<u32> {
        let v = self.u64(k, default as u64)?;
        u32::try_from(v).map_err(|_| anyhow!("{k} = {v} is out of range"))
    }

    pub fn usize(&self, k: &str, default: usize) -> Result<usize> {
        let v = self.u64(k, default as u64)?;
        usize::try_from(v).map_err(|_| anyhow!("{k} = {v} is out of range"))
    }

    pub fn i32(&self, k: &str, default: i32) -> Result<i32> {
        match self.get(k) {
            None => Ok(default),
            Some(v) => v
                .as_i64()
                .and_then(|x| i32::try_from(x).ok())
                .ok_or_else(|| anyhow!("{k} must be an integer, got {v}")),
        }
    }

    pub fn f64(&self, k: &str, default: f64) -> Result<f64> {
        match self.get(k) {
            None => Ok(default),
            Some(v) => v.as_f64().ok_or_else(|| anyhow!("{k} must be a number, got {v}")),
        }
    }

    pub fn bool(&self, k: &str, default: bool) -> Result<bool> {
        match self.get(k) {
            None => Ok(default),
            Some(v) => v.as_bool().ok_or_else(|| anyhow!("{k} must be true or false, got {v}")),
        }
    }

    pub fn str<'a>(&'a self, k: &str, default: &'a str) -> Result<&'a str> {
        match self.get(k) {
            None => Ok(default),
            Some(v) => v.as_str().ok_or_else(|| anyhow!("{k} must be a string, got {v}")),
        }
    }

    pub fn u32_list(&self, k: &str, default: &[u32]) -> Result<Vec<u32>> {
        match self.get(k) {
            None => Ok(default.to_vec()),
            Some(Value::Array(xs)) => xs
                .iter()
                .map(|x| x.as_u64().and_then(|v| u32::try_from(v).ok()).ok_or_else(|| anyhow!("{k}: bad entry {x}")))
                .collect(),
            Some(v) => bail!("{k} must be an array of integers, got {v}"),
        }
    }

    pub fn f64_list(&self, k: &str, default: &[f64]) -> Result<Vec<f64>> {
        match self.get(k) {
            None => Ok(default.to_vec()),
            Some(Value::Array(xs)) => xs.iter().map(|x| x.as_f64().ok_or_else(|| anyhow!("{k}: bad entry {x}"))).collect(),
            Some(v) => bail!("{k} must be an array of numbers, got {v}"),
        }
    }

    /// Inclusive integer range from `<k>_min` and `<k>_max`.
    pub fn range_u32(&self, k: &str, lo: u32, hi: u32) -> Result<Vec<u32>> {
        let a = self.u32(&format!("{k}_min"), lo)?;
        let b = self.u32(&format!("{k}_max"), hi)?;
        if a > b {
            bail!("{k}_min = {a} exceeds {k}_max = {b}");
        }
        Ok((a..=b).collect())
    }
}
