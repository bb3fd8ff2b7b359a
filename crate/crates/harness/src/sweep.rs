//! Grid sweeps over one check.
//!
//! The outer axis is split into contiguous chunks processed in order; the
//! evaluators parallelize inside a chunk, and the records of a chunk are
//! written in tuple order before the checkpoint advances.

use std::time::{Instant, SystemTime};

use apery_core::congruences::{
    CheckId, CongruenceError, CongruenceReport, Evaluator, Kind, Path as EvalPath, Tuple,
};
use rayon::ThreadPoolBuilder;
use serde_json::Value;

use crate::checkpoint::{ChunkEntry, Checkpoint};
use crate::config::{PathSel, SweepConfig};
use crate::error::{HarnessError, Result};
use crate::record::{Record, PATH_DIVERGENCE};
use crate::sink::Sink;
use crate::summary::{meta_path, write_meta, write_summary_csv, Class, Summary};

type Outcome = std::result::Result<CongruenceReport, CongruenceError>;

/// Evaluators for the selected path(s).
struct Runner {
    check: CheckId,
    path: PathSel,
    both_below: Option<u64>,
    exact: Option<Evaluator>,
    fast: Option<Evaluator>,
}

impl Runner {
    fn new(cfg: &SweepConfig) -> Result<Self> {
        let opts = cfg.eval_options();
        let make = |p| Evaluator::new(cfg.check, p, opts).map_err(|e| HarnessError::config(e.to_string()));
        let exact = match cfg.path {
            PathSel::Exact | PathSel::Both => Some(make(EvalPath::Exact)?),
            PathSel::Fast => None,
        };
        let fast = match cfg.path {
            PathSel::Fast | PathSel::Both => Some(make(EvalPath::Fast)?),
            PathSel::Exact => None,
        };
        Ok(Self {
            check: cfg.check,
            path: cfg.path,
            both_below: cfg.both_below,
            exact,
            fast,
        })
    }

    fn run(&mut self, tuples: &[Tuple]) -> Vec<(Record, Class)> {
        let check = self.check;
        match self.path {
            PathSel::Exact => {
                let ev = self.exact.as_mut().expect("exact evaluator");
                let out = ev.evaluate(tuples);
                tuples.iter().zip(out).map(|(t, o)| single(check, t, o, "exact")).collect()
            }
            PathSel::Fast => {
                let ev = self.fast.as_mut().expect("fast evaluator");
                let out = ev.evaluate(tuples);
                tuples.iter().zip(out).map(|(t, o)| single(check, t, o, "fast")).collect()
            }
            PathSel::Both => {
                let bound = self.both_below.unwrap_or(u64::MAX);
                let low: Vec<Tuple> = tuples.iter().copied().filter(|t| t.outer <= bound).collect();
                let mut exact = self
                    .exact
                    .as_mut()
                    .expect("exact evaluator")
                    .evaluate(&low)
                    .into_iter();
                let fast = self.fast.as_mut().expect("fast evaluator").evaluate(tuples);
                tuples
                    .iter()
                    .zip(fast)
                    .map(|(t, f)| {
                        if t.outer <= bound {
                            let e = exact.next().expect("one exact outcome per low tuple");
                            compare(check, t, e, f)
                        } else {
                            single(check, t, f, "fast")
                        }
                    })
                    .collect()
            }
        }
    }
}

fn class_of(check: CheckId, pass: Option<bool>) -> Class {
    match pass {
        None => Class::Skip,
        Some(true) => Class::Pass,
        Some(false) if check.kind() == Kind::Conjecture => Class::Counterexample,
        Some(false) => Class::Failure,
    }
}

fn single(check: CheckId, t: &Tuple, o: Outcome, path: &str) -> (Record, Class) {
    let rec = match &o {
        Ok(r) => Record::from_report(r, path),
        Err(e) => Record::from_error(check, t, e, path),
    };
    let class = class_of(check, rec.pass);
    (rec, class)
}

/// One record for a tuple evaluated on both paths.
fn compare(check: CheckId, t: &Tuple, exact: Outcome, fast: Outcome) -> (Record, Class) {
    let agree = match (&exact, &fast) {
        (Ok(a), Ok(b)) => a.same_result(b),
        (Err(a), Err(b)) => a == b,
        _ => false,
    };
    let (mut rec, class) = single(check, t, exact, "both");
    if agree {
        return (rec, class);
    }
    rec.pass = Some(false);
    rec.extra.flags.push(PATH_DIVERGENCE.to_string());
    let residues = &mut rec.extra.residues;
    match &fast {
        Ok(b) => {
            residues.insert("fast_lhs".into(), Value::String(b.lhs.to_string()));
            residues.insert("fast_rhs".into(), Value::String(b.rhs.to_string()));
            residues.insert("fast_pass".into(), Value::Bool(b.pass));
        }
        Err(e) => {
            residues.insert("fast_error".into(), Value::String(e.tag().to_string()));
        }
    }
    (rec, Class::Divergence)
}

fn describe(rec: &Record) -> String {
    format!("{} {}", rec.check, Value::Object(rec.params.clone()))
}

/// Evaluate every tuple of the grid, writing one record each, and return
/// the totals. Resumes from the checkpoint when one exists for the same
/// configuration.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Summary> {
    cfg.validate()?;
    let started = SystemTime::now();
    let clock = Instant::now();
    let pool = ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| HarnessError::config(format!("cannot start workers: {e}")))?;

    let outers = cfg.outer_values();
    let chunks: Vec<&[u64]> = outers.chunks(cfg.chunk).collect();

    let (mut checkpoint, last) = match &cfg.checkpoint {
        Some(p) => {
            let (cp, last) = Checkpoint::open(p, &cfg.fingerprint())?;
            (Some(cp), last)
        }
        None => (None, None),
    };
    let mut counts = last.as_ref().map(|e| e.counts.clone()).unwrap_or_default();
    let first = last.as_ref().map_or(0, |e| e.chunk + 1);
    let mut sink = Sink::open(cfg.out.as_deref(), cfg.format, last.as_ref().map(|e| e.offset))?;
    let mut runner = Runner::new(cfg)?;

    let mut interrupted = false;
    for (i, chunk) in chunks.iter().enumerate().skip(first) {
        if cfg.stop_after_chunks.is_some_and(|n| i - first >= n) {
            interrupted = true;
            break;
        }
        let tuples = cfg.tuples_for(chunk);
        let results = pool.install(|| runner.run(&tuples));
        let mut records = Vec::with_capacity(results.len());
        for (rec, class) in results {
            counts.add(class, || describe(&rec));
            records.push(rec);
        }
        sink.write(&records)?;
        sink.sync()?;
        if let Some(cp) = &mut checkpoint {
            cp.record(&ChunkEntry {
                chunk: i,
                keys: chunk.to_vec(),
                tuples: tuples.len() as u64,
                offset: sink.offset(),
                counts: counts.clone(),
            })?;
        }
    }

    let summary = Summary {
        check: cfg.check.as_str().to_string(),
        counts,
        wall_ms: clock.elapsed().as_millis() as u64,
        interrupted,
    };
    if let Some(path) = &cfg.summary {
        write_summary_csv(path, std::slice::from_ref(&summary))?;
        write_meta(&meta_path(path), &[(cfg.echo(), &summary, started, SystemTime::now())])?;
    }
    Ok(summary)
}

/// [`run_sweep`] with both paths required.
pub fn cross_check(cfg: &SweepConfig) -> Result<Summary> {
    if cfg.path != PathSel::Both {
        return Err(HarnessError::config("cross_check needs path = both"));
    }
    run_sweep(cfg)
}
