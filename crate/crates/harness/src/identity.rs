//! Named suites of exact identity checks over bounded grids.

use std::time::{Instant, SystemTime};

use apery_core::identities::{
    check_alt_sum, check_amkr_with, check_column_sum, check_delannoy_integrality,
    check_half_integer, check_lagrange, check_lem03, check_pfaff_special, check_plus_sum,
    check_square_expansion, check_thm1, schmidt_coeffs, IdentityError, SchmidtCoeffTable,
};
use apery_core::{Integer, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rayon::ThreadPoolBuilder;

use crate::config::{default_jobs, Format};
use crate::error::{HarnessError, Result};
use crate::record::Record;
use crate::sink::Sink;
use crate::summary::{meta_path, write_meta, write_summary_csv, Class, Counts, Summary};

pub const SUITES: [&str; 11] = [
    "pfaff_special",
    "square_expansion",
    "alt_sum",
    "plus_sum",
    "lem03",
    "amkr",
    "lagrange",
    "half_integer",
    "column_sum",
    "thm1",
    "delannoy_integrality",
];

/// Seed for the random evaluation points of `lagrange`.
pub const LAGRANGE_SEED: u64 = 0x0A9E_5EED;
pub const LAGRANGE_POINTS: usize = 10;

/// Inclusive upper bounds for each suite's grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityBounds {
    /// `l` and `m` for `pfaff_special`, `l` for `square_expansion`.
    pub l: u64,
    /// `n` for `alt_sum` and `plus_sum`.
    pub n: u64,
    /// `l`, `m`, `n` for `lem03`.
    pub lem: u64,
    /// `r` for `amkr`.
    pub r: u32,
    /// `m` for `amkr`.
    pub amkr_m: u64,
    pub lagrange_m: u64,
    pub half_m: u64,
    /// `n` for `column_sum`.
    pub column_n: u64,
    /// `m + k` for `column_sum`.
    pub column_mk: u64,
    /// `n` for `thm1` and `delannoy_integrality`.
    pub poly_n: u64,
}

impl Default for IdentityBounds {
    fn default() -> Self {
        Self {
            l: 40,
            n: 60,
            lem: 20,
            r: 5,
            amkr_m: 12,
            lagrange_m: 15,
            half_m: 30,
            column_n: 40,
            column_mk: 20,
            poly_n: 60,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityRun {
    /// A name from [`SUITES`], or `all`.
    pub suite: String,
    pub bounds: IdentityBounds,
    pub jobs: usize,
    pub out: Option<std::path::PathBuf>,
    pub format: Format,
    pub summary: Option<std::path::PathBuf>,
}

impl IdentityRun {
    pub fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            bounds: IdentityBounds::default(),
            jobs: default_jobs(),
            out: None,
            format: Format::Jsonl,
            summary: None,
        }
    }

    pub fn suites(&self) -> Result<Vec<&'static str>> {
        if self.suite == "all" {
            return Ok(SUITES.to_vec());
        }
        SUITES
            .iter()
            .find(|s| **s == self.suite)
            .map(|s| vec![*s])
            .ok_or_else(|| HarnessError::UnknownSuite(self.suite.clone()))
    }
}

fn par<T: Sync, F>(items: &[T], f: F) -> Vec<Record>
where
    F: Fn(&T) -> Vec<Record> + Sync + Send,
{
    items.par_iter().flat_map_iter(f).collect()
}

fn pairs(a: u64, b: u64) -> Vec<(u64, u64)> {
    (0..=a).flat_map(|i| (0..=b).map(move |j| (i, j))).collect()
}

fn amkr_records(r: u32, m: u64) -> Vec<Record> {
    let params = [("r", r.to_string()), ("m", m.to_string())];
    let table = match SchmidtCoeffTable::by_interpolation(r, m) {
        Ok(t) => t,
        Err(e @ IdentityError::IntegralityViolation { .. }) => {
            return vec![Record::identity(
                "amkr_integrality",
                &params,
                None,
                None,
                false,
                vec!["INTEGRALITY_VIOLATION".into()],
                Some(e.to_string()),
            )]
        }
        Err(e) => unreachable!("interpolation has no poles: {e}"),
    };
    let join = |t: &SchmidtCoeffTable| {
        t.coeffs().iter().map(Integer::to_string).collect::<Vec<_>>().join(",")
    };
    let recursive = schmidt_coeffs(r, m);
    let mut out = vec![Record::identity(
        "amkr_integrality",
        &params,
        Some(join(&recursive)),
        Some(join(&table)),
        recursive == table,
        Vec::new(),
        None,
    )];
    // 2rm + 1 sample points
    out.extend((0..=2 * r as u64 * m).map(|l| Record::from_verdict(&check_amkr_with(&recursive, l))));
    out
}

/// `LAGRANGE_POINTS` random rationals per `m`, avoiding the poles.
fn lagrange_points(max_m: u64) -> Vec<(u64, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(LAGRANGE_SEED);
    let mut out = Vec::new();
    for m in 0..=max_m {
        let mut drawn = 0;
        while drawn < LAGRANGE_POINTS {
            let num: i64 = rng.random_range(-200..=200);
            let den: i64 = rng.random_range(1..=37);
            let x = Rational::new(Integer::from(num), Integer::from(den));
            let pole = x.is_integer() && x <= Rational::from_integer(Integer::from(0))
                && x >= Rational::from_integer(-Integer::from(m));
            if !pole {
                out.push((m, x));
                drawn += 1;
            }
        }
    }
    out
}

fn suite_records(suite: &str, b: &IdentityBounds) -> Vec<Record> {
    let v = |v| vec![Record::from_verdict(&v)];
    match suite {
        "pfaff_special" => par(&pairs(b.l, b.l), |&(l, m)| v(check_pfaff_special(l, m))),
        "square_expansion" => par(&(0..=b.l).collect::<Vec<_>>(), |&l| v(check_square_expansion(l))),
        "alt_sum" | "plus_sum" => {
            let grid: Vec<(u64, u64)> = (1..=b.n).flat_map(|n| (0..=n).map(move |k| (n, k))).collect();
            if suite == "alt_sum" {
                par(&grid, |&(n, k)| v(check_alt_sum(n, k)))
            } else {
                par(&grid, |&(n, k)| v(check_plus_sum(n, k)))
            }
        }
        "lem03" => {
            let grid: Vec<(u64, u64, u64)> = pairs(b.lem, b.lem)
                .into_iter()
                .flat_map(|(l, m)| (0..=b.lem).map(move |n| (l, m, n)))
                .collect();
            par(&grid, |&(l, m, n)| v(check_lem03(l, m, n)))
        }
        "amkr" => {
            let grid: Vec<(u32, u64)> = (2..=b.r).flat_map(|r| (0..=b.amkr_m).map(move |m| (r, m))).collect();
            par(&grid, |&(r, m)| amkr_records(r, m))
        }
        "lagrange" => par(&lagrange_points(b.lagrange_m), |(m, x)| {
            v(check_lagrange(*m, x).expect("poles are excluded"))
        }),
        "half_integer" => par(&(0..=b.half_m).collect::<Vec<_>>(), |&m| v(check_half_integer(m))),
        "column_sum" => {
            let grid: Vec<(u64, u64, u64)> = (1..=b.column_n)
                .flat_map(|n| pairs(b.column_mk, b.column_mk).into_iter().map(move |(m, k)| (n, m, k)))
                .filter(|&(_, m, k)| m + k <= b.column_mk)
                .collect();
            par(&grid, |&(n, m, k)| v(check_column_sum(n, m, k)))
        }
        "thm1" => par(&(1..=b.poly_n).collect::<Vec<_>>(), |&n| v(check_thm1(n))),
        "delannoy_integrality" => {
            par(&(1..=b.poly_n).collect::<Vec<_>>(), |&n| v(check_delannoy_integrality(n)))
        }
        _ => unreachable!("suite names are checked up front"),
    }
}

/// Run the named suite (or `all`), writing one record per instance.
/// One summary per suite, in suite order.
pub fn run_identities(run: &IdentityRun) -> Result<Vec<Summary>> {
    let suites = run.suites()?;
    let pool = ThreadPoolBuilder::new()
        .num_threads(run.jobs.max(1))
        .build()
        .map_err(|e| HarnessError::config(format!("cannot start workers: {e}")))?;
    let mut sink = Sink::open(run.out.as_deref(), run.format, None)?;
    let mut summaries = Vec::new();
    let mut meta = Vec::new();
    for suite in suites {
        let started = SystemTime::now();
        let clock = Instant::now();
        let records = pool.install(|| suite_records(suite, &run.bounds));
        let mut counts = Counts::default();
        for r in &records {
            let class = if r.pass == Some(true) { Class::Pass } else { Class::Failure };
            counts.add(class, || format!("{} {}", r.check, serde_json::Value::Object(r.params.clone())));
        }
        sink.write(&records)?;
        sink.sync()?;
        summaries.push(Summary {
            check: suite.to_string(),
            counts,
            wall_ms: clock.elapsed().as_millis() as u64,
            interrupted: false,
        });
        meta.push((started, SystemTime::now()));
    }
    if let Some(path) = &run.summary {
        write_summary_csv(path, &summaries)?;
        let echo = serde_json::json!({ "suite": run.suite, "bounds": format!("{:?}", run.bounds) });
        let runs: Vec<_> = summaries
            .iter()
            .zip(&meta)
            .map(|(s, (a, b))| (echo.clone(), s, *a, *b))
            .collect();
        write_meta(&meta_path(path), &runs)?;
    }
    Ok(summaries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lagrange_points_are_fixed_and_avoid_poles() {
        let a = lagrange_points(15);
        assert_eq!(a, lagrange_points(15));
        assert_eq!(a.len(), 16 * LAGRANGE_POINTS);
        assert!(a.iter().all(|(m, x)| check_lagrange(*m, x).is_ok()));
    }

    #[test]
    fn unknown_suite() {
        let err = IdentityRun::new("nonexistent").suites().unwrap_err();
        assert!(matches!(err, HarnessError::UnknownSuite(s) if s == "nonexistent"));
        assert_eq!(IdentityRun::new("all").suites().unwrap().len(), SUITES.len());
    }
}
