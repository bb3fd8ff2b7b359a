//! Sweep configuration: raw values from a TOML file or the command line,
//! merged and resolved into a validated [`SweepConfig`].

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use apery_core::congruences::{CheckId, EvalOptions, Outer, Tuple, Variant};
use apery_core::primes::sieve_primes;
use apery_core::sequences::Sign;
use serde::Deserialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::error::{HarnessError, Result};

/// Environment variable holding the default worker count.
pub const JOBS_ENV: &str = "APERY_JOBS";

pub const DEFAULT_CHUNK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathSel {
    Exact,
    Fast,
    Both,
}

impl PathSel {
    pub fn as_str(self) -> &'static str {
        match self {
            PathSel::Exact => "exact",
            PathSel::Fast => "fast",
            PathSel::Both => "both",
        }
    }
}

impl FromStr for PathSel {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(PathSel::Exact),
            "fast" => Ok(PathSel::Fast),
            "both" => Ok(PathSel::Both),
            _ => Err(HarnessError::config(format!("unknown path {s:?}"))),
        }
    }
}

impl fmt::Display for PathSel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Jsonl,
    Csv,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Jsonl => "jsonl",
            Format::Csv => "csv",
        }
    }
}

impl FromStr for Format {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            _ => Err(HarnessError::config(format!("unknown format {s:?}"))),
        }
    }
}

/// An integer list: `lo:hi` (inclusive), `a,b,c`, or a mix such as
/// `-3:3,10`. TOML may also give a bare integer or an array.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum ListSpec {
    Int(i64),
    Ints(Vec<i64>),
    Text(String),
}

impl ListSpec {
    pub fn values(&self) -> Result<Vec<i64>> {
        match self {
            ListSpec::Int(v) => Ok(vec![*v]),
            ListSpec::Ints(v) => Ok(v.clone()),
            ListSpec::Text(s) => parse_list(s),
        }
    }
}

impl From<&str> for ListSpec {
    fn from(s: &str) -> Self {
        ListSpec::Text(s.to_string())
    }
}

/// A string list, comma separated or as a TOML array.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Names {
    One(String),
    Many(Vec<String>),
}

impl Names {
    fn values(&self) -> Vec<String> {
        let raw = match self {
            Names::One(s) => vec![s.clone()],
            Names::Many(v) => v.clone(),
        };
        raw.iter()
            .flat_map(|s| s.split(','))
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect()
    }
}

fn parse_int(s: &str) -> Result<i64> {
    let s = s.trim().replace('\u{2212}', "-");
    s.parse()
        .map_err(|_| HarnessError::config(format!("not an integer: {s:?}")))
}

pub fn parse_list(s: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once(':') {
            Some((lo, hi)) => {
                let (lo, hi) = (parse_int(lo)?, parse_int(hi)?);
                if lo > hi {
                    return Err(HarnessError::config(format!("empty range {part}")));
                }
                out.extend(lo..=hi);
            }
            None => out.push(parse_int(part)?),
        }
    }
    if out.is_empty() {
        return Err(HarnessError::config(format!("empty list {s:?}")));
    }
    Ok(out)
}

/// Inclusive `lo:hi` over non-negative integers.
pub fn parse_range(s: &str) -> Result<(u64, u64)> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| HarnessError::config(format!("expected lo:hi, got {s:?}")))?;
    let lo = parse_int(lo)?;
    let hi = parse_int(hi)?;
    if lo < 0 || hi < 0 {
        return Err(HarnessError::config(format!("negative bound in {s:?}")));
    }
    if lo > hi {
        return Err(HarnessError::config(format!("empty range {s}")));
    }
    Ok((lo as u64, hi as u64))
}

/// Configuration as written; every field optional. Flags and file share
/// this schema.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub check: Option<String>,
    pub primes: Option<String>,
    pub n: Option<String>,
    pub x: Option<ListSpec>,
    pub r: Option<ListSpec>,
    pub a: Option<ListSpec>,
    pub m: Option<ListSpec>,
    pub eps: Option<ListSpec>,
    pub variant: Option<Names>,
    pub path: Option<String>,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub checkpoint: Option<PathBuf>,
    pub format: Option<String>,
    pub limit: Option<u64>,
    pub chunk: Option<usize>,
    pub summary: Option<PathBuf>,
    pub both_below: Option<u64>,
}

macro_rules! take {
    ($base:ident, $over:ident; $($f:ident),*) => {
        RawConfig { $($f: $over.$f.or($base.$f)),* }
    };
}

impl RawConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| HarnessError::config(format!("bad config file: {e}")))
    }

    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_toml_str(&text)
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merge(self, over: RawConfig) -> RawConfig {
        let base = self;
        take!(base, over; check, primes, n, x, r, a, m, eps, variant, path, jobs, out,
              checkpoint, format, limit, chunk, summary, both_below)
    }

    pub fn resolve(self) -> Result<SweepConfig> {
        let name = self
            .check
            .as_deref()
            .ok_or_else(|| HarnessError::config("no check given"))?;
        let check: CheckId = name.parse().map_err(|e| HarnessError::config(format!("{e}")))?;
        let axes = check.axes();
        let range = match (check.outer(), &self.primes, &self.n) {
            (Outer::Prime, Some(r), None) => r,
            (Outer::N, None, Some(r)) => r,
            (Outer::Prime, _, _) => {
                return Err(HarnessError::config(format!("{check} takes a prime range and no n range")))
            }
            (Outer::N, _, _) => {
                return Err(HarnessError::config(format!("{check} takes an n range and no prime range")))
            }
        };
        let (lo, hi) = parse_range(range)?;
        let mut cfg = SweepConfig::new(check, lo, hi);

        let axis = |name: &str, read: bool, spec: &Option<ListSpec>| -> Result<Option<Vec<i64>>> {
            match (read, spec) {
                (false, Some(_)) => Err(HarnessError::config(format!("{check} has no {name} parameter"))),
                (_, Some(s)) => s.values().map(Some),
                (_, None) => Ok(None),
            }
        };
        match axis("x", axes.x, &self.x)? {
            Some(v) => cfg.xs = v,
            None if axes.x => return Err(HarnessError::config(format!("{check} needs an x range"))),
            None => {}
        }
        if let Some(v) = axis("r", axes.r, &self.r)? {
            cfg.rs = to_u32("r", &v)?;
        }
        if let Some(v) = axis("a", axes.a, &self.a)? {
            cfg.avals = to_u32("a", &v)?;
        }
        if let Some(v) = axis("m", axes.m, &self.m)? {
            cfg.ms = to_u32("m", &v)?;
        }
        if let Some(v) = axis("eps", axes.eps, &self.eps)? {
            cfg.eps = v
                .iter()
                .map(|&e| Sign::from_i64(e).ok_or_else(|| HarnessError::config(format!("eps must be +1 or -1, got {e}"))))
                .collect::<Result<_>>()?;
        }
        match (&self.variant, axes.variant) {
            (Some(_), false) => return Err(HarnessError::config(format!("{check} has no variant parameter"))),
            (Some(names), true) => {
                cfg.variants = names
                    .values()
                    .iter()
                    .map(|s| s.parse::<Variant>().map_err(HarnessError::config))
                    .collect::<Result<_>>()?;
            }
            (None, _) => {}
        }
        if let Some(p) = &self.path {
            cfg.path = p.parse()?;
        }
        if let Some(j) = self.jobs {
            cfg.jobs = j;
        }
        if let Some(f) = &self.format {
            cfg.format = f.parse()?;
        }
        if let Some(l) = self.limit {
            cfg.limit = l;
        }
        if let Some(c) = self.chunk {
            cfg.chunk = c;
        }
        cfg.out = self.out;
        cfg.checkpoint = self.checkpoint;
        cfg.summary = self.summary;
        cfg.both_below = self.both_below;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn to_u32(name: &str, v: &[i64]) -> Result<Vec<u32>> {
    v.iter()
        .map(|&x| u32::try_from(x).map_err(|_| HarnessError::config(format!("{name} = {x} is out of range"))))
        .collect()
}

/// Worker count from the environment, falling back to the core count.
pub fn default_jobs() -> usize {
    std::env::var(JOBS_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&j| j > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// A validated sweep. The outer range is inclusive; lists of axes the
/// check does not read hold the single default value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub check: CheckId,
    pub lo: u64,
    pub hi: u64,
    pub xs: Vec<i64>,
    pub rs: Vec<u32>,
    pub avals: Vec<u32>,
    pub ms: Vec<u32>,
    pub eps: Vec<Sign>,
    pub variants: Vec<Variant>,
    pub path: PathSel,
    pub jobs: usize,
    pub out: Option<PathBuf>,
    pub checkpoint: Option<PathBuf>,
    pub format: Format,
    /// Largest `p^a` for the prime power checks.
    pub limit: u64,
    /// Outer values per chunk.
    pub chunk: usize,
    pub summary: Option<PathBuf>,
    /// With `path = both`, outer values above this bound run fast only.
    pub both_below: Option<u64>,
    /// Stop after this many chunks, as if killed. Used to test resume.
    pub stop_after_chunks: Option<usize>,
}

impl SweepConfig {
    /// Defaults for `check` over `lo..=hi`.
    pub fn new(check: CheckId, lo: u64, hi: u64) -> Self {
        let t = Tuple::new(0);
        let a = match check {
            CheckId::Lemma31 | CheckId::Ppsun => 1,
            _ => t.a,
        };
        Self {
            check,
            lo,
            hi,
            xs: vec![t.x],
            rs: vec![t.r],
            avals: vec![a],
            ms: vec![t.m],
            eps: vec![t.eps],
            variants: vec![t.variant],
            path: if check.has_fast() { PathSel::Fast } else { PathSel::Exact },
            jobs: default_jobs(),
            out: None,
            checkpoint: None,
            format: Format::Jsonl,
            limit: EvalOptions::default().limit,
            chunk: DEFAULT_CHUNK,
            summary: None,
            both_below: None,
            stop_after_chunks: None,
        }
    }

    pub fn with_xs(mut self, xs: impl IntoIterator<Item = i64>) -> Self {
        self.xs = xs.into_iter().collect();
        self
    }

    pub fn with_path(mut self, path: PathSel) -> Self {
        self.path = path;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let check = self.check;
        let axes = check.axes();
        let t = Tuple::new(0);
        if self.lo > self.hi {
            return Err(HarnessError::config(format!("empty range {}:{}", self.lo, self.hi)));
        }
        match check.outer() {
            Outer::N if self.lo == 0 => return Err(HarnessError::config("n starts at 1")),
            Outer::Prime if self.outer_values().is_empty() => {
                return Err(HarnessError::config(format!(
                    "no primes in {}:{}",
                    self.lo, self.hi
                )))
            }
            _ => {}
        }
        let lists = [
            ("x", self.xs.is_empty()),
            ("r", self.rs.is_empty()),
            ("a", self.avals.is_empty()),
            ("m", self.ms.is_empty()),
            ("eps", self.eps.is_empty()),
            ("variant", self.variants.is_empty()),
        ];
        if let Some((name, _)) = lists.iter().find(|(_, empty)| *empty) {
            return Err(HarnessError::config(format!("empty {name} list")));
        }
        let unread = [
            ("x", !axes.x && self.xs != [t.x]),
            ("r", !axes.r && self.rs != [t.r]),
            ("a", !axes.a && self.avals != [t.a]),
            ("m", !axes.m && self.ms != [t.m]),
            ("eps", !axes.eps && self.eps != [t.eps]),
            ("variant", !axes.variant && self.variants != [t.variant]),
        ];
        if let Some((name, _)) = unread.iter().find(|(_, bad)| *bad) {
            return Err(HarnessError::config(format!("{check} has no {name} parameter")));
        }
        if axes.r && self.rs.contains(&0) {
            return Err(HarnessError::config("r starts at 1"));
        }
        if axes.m && self.ms.contains(&0) {
            return Err(HarnessError::config("m starts at 1"));
        }
        if matches!(check, CheckId::Lemma31 | CheckId::Ppsun) && self.avals.contains(&0) {
            return Err(HarnessError::config("a starts at 1"));
        }
        if self.path != PathSel::Exact && !check.has_fast() {
            return Err(HarnessError::config(format!("{check} has no fast path")));
        }
        if self.both_below.is_some() && self.path != PathSel::Both {
            return Err(HarnessError::config("both_below needs path = both"));
        }
        if self.jobs == 0 || self.chunk == 0 {
            return Err(HarnessError::config("jobs and chunk must be positive"));
        }
        if self.checkpoint.is_some() && self.out.is_none() {
            return Err(HarnessError::config("a checkpoint needs an output file"));
        }
        Ok(())
    }

    /// Outer axis values in ascending order.
    pub fn outer_values(&self) -> Vec<u64> {
        match self.check.outer() {
            Outer::Prime => sieve_primes(self.lo, self.hi.saturating_add(1)),
            Outer::N => (self.lo..=self.hi).collect(),
        }
    }

    /// Every grid tuple with its outer value in `outers`, ascending.
    pub fn tuples_for(&self, outers: &[u64]) -> Vec<Tuple> {
        let mut out = Vec::new();
        for &o in outers {
            for &x in &self.xs {
                for &r in &self.rs {
                    for &a in &self.avals {
                        for &m in &self.ms {
                            for &eps in &self.eps {
                                for &variant in &self.variants {
                                    out.push(
                                        Tuple::new(o)
                                            .with_x(x)
                                            .with_r(r)
                                            .with_a(a)
                                            .with_m(m)
                                            .with_eps(eps)
                                            .with_variant(variant),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn eval_options(&self) -> EvalOptions {
        EvalOptions { limit: self.limit }
    }

    /// The settings that determine the output, without worker count or
    /// file locations.
    pub fn echo(&self) -> serde_json::Value {
        let sorted = |v: Vec<i64>| {
            let mut v = v;
            v.sort();
            v.dedup();
            v
        };
        let mut variants: Vec<&str> = self.variants.iter().map(|v| v.as_str()).collect();
        variants.sort();
        variants.dedup();
        json!({
            "check": self.check.as_str(),
            "lo": self.lo,
            "hi": self.hi,
            "x": sorted(self.xs.clone()),
            "r": sorted(self.rs.iter().map(|&v| v as i64).collect()),
            "a": sorted(self.avals.iter().map(|&v| v as i64).collect()),
            "m": sorted(self.ms.iter().map(|&v| v as i64).collect()),
            "eps": sorted(self.eps.iter().map(|e| e.as_i64()).collect()),
            "variant": variants,
            "path": self.path.as_str(),
            "format": self.format.as_str(),
            "limit": self.limit,
            "chunk": self.chunk,
            "both_below": self.both_below,
        })
    }

    /// Hex SHA-256 of [`Self::echo`]; a checkpoint only resumes a run with
    /// the same fingerprint.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.echo().to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
