use std::collections::{BTreeMap, HashMap};

use num_integer::Integer as _;
use rayon::prelude::*;

use super::kernels::{central_terms, family_coefficients, horner, single_sum_terms};
use super::{finish, needs, CheckId, CongruenceError, CongruenceReport, Need, Path, Tuple};
use crate::exact_arith::word::{AnyRing, PrimePowerFactorials};
use crate::exact_arith::Integer;
use crate::sequences::{
    thm3_binomial_sum_exact, thm3_rational_sum_from_terms, thm3_rational_terms, Family, Sign,
    SumStream, TermShape, Weight,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    /// Largest `p^a` the central binomial checks will sum to.
    pub limit: u64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self { limit: 10_000 }
    }
}

/// Evaluates batches of tuples for one check on one path.
///
/// On the exact path the evaluator keeps one [`SumStream`] per family
/// between calls, so feeding it chunks in ascending outer order sums each
/// term once. A request below a stream's position restarts that stream.
#[derive(Debug)]
pub struct Evaluator {
    check: CheckId,
    path: Path,
    opts: EvalOptions,
    streams: HashMap<StreamKey, SumStream>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum StreamKey {
    Schmidt(u32),
    Central,
}

/// One read-off from a stream: shape, point, cutoff, modulus.
#[derive(Debug, Clone, Copy)]
struct Request {
    need: Need,
    shape: TermShape,
    x: i64,
    n: u64,
    modulus: u64,
}

fn central_shape() -> TermShape {
    TermShape::new(Weight::One, Sign::Plus, 1)
}

impl Evaluator {
    pub fn new(check: CheckId, path: Path, opts: EvalOptions) -> Result<Self, CongruenceError> {
        if path == Path::Fast && !check.has_fast() {
            return Err(CongruenceError::NoFastPath(check));
        }
        Ok(Self {
            check,
            path,
            opts,
            streams: HashMap::new(),
        })
    }

    pub fn check(&self) -> CheckId {
        self.check
    }

    pub fn path(&self) -> Path {
        self.path
    }

    /// One outcome per tuple, in input order.
    pub fn evaluate(&mut self, tuples: &[Tuple]) -> Vec<Result<CongruenceReport, CongruenceError>> {
        let planned: Vec<Result<Vec<Need>, CongruenceError>> = tuples
            .iter()
            .map(|t| needs(self.check, t, self.path, &self.opts))
            .collect();
        let mut wanted: Vec<Need> = planned.iter().flatten().flatten().copied().collect();
        dedup(&mut wanted);
        let values = match self.path {
            Path::Exact => self.fulfil_exact(&wanted),
            Path::Fast => fulfil_fast(&wanted),
        };
        tuples
            .iter()
            .zip(planned)
            .map(|(t, plan)| {
                let plan = plan?;
                let vals: Vec<Integer> = plan.iter().map(|n| values[n].clone()).collect();
                finish(self.check, t, self.path, &vals)
            })
            .collect()
    }

    fn fulfil_exact(&mut self, wanted: &[Need]) -> HashMap<Need, Integer> {
        let mut by_stream: BTreeMap<StreamKey, Vec<Request>> = BTreeMap::new();
        let mut other = Vec::new();
        for &need in wanted {
            match need {
                Need::Family {
                    r,
                    shape,
                    x,
                    n,
                    modulus,
                } => by_stream.entry(StreamKey::Schmidt(r)).or_default().push(Request {
                    need,
                    shape,
                    x,
                    n,
                    modulus,
                }),
                Need::Central { x, n, p, w } => {
                    by_stream.entry(StreamKey::Central).or_default().push(Request {
                        need,
                        shape: central_shape(),
                        x,
                        n,
                        modulus: p.pow(w),
                    })
                }
                Need::Single { .. } | Need::Rational { .. } => other.push(need),
            }
        }
        let mut out = HashMap::with_capacity(wanted.len());
        for (key, requests) in by_stream {
            let stream = self.streams.remove(&key);
            let (stream, values) = run_stream(key, stream, requests);
            self.streams.insert(key, stream);
            out.extend(values);
        }
        out.extend(fulfil_single_and_rational(&other, true));
        out
    }
}

fn dedup(needs: &mut Vec<Need>) {
    let mut seen = std::collections::HashSet::new();
    needs.retain(|n| seen.insert(*n));
}

/// Advance (or rebuild) the stream for `key` through every requested
/// cutoff in ascending order and read off the requested sums.
fn run_stream(
    key: StreamKey,
    stream: Option<SumStream>,
    mut requests: Vec<Request>,
) -> (SumStream, Vec<(Need, Integer)>) {
    requests.sort_by_key(|r| r.n);
    let min_n = requests.first().map_or(0, |r| r.n);
    let mut xs: Vec<i64> = Vec::new();
    let mut shapes: Vec<TermShape> = Vec::new();
    if let Some(s) = &stream {
        xs = s.xs().iter().map(|x| i64::try_from(x).expect("points are i64")).collect();
        shapes = s.shapes().to_vec();
    }
    let mut complete = stream.is_some();
    for r in &requests {
        if !xs.contains(&r.x) {
            xs.push(r.x);
            complete = false;
        }
        if !shapes.contains(&r.shape) {
            shapes.push(r.shape);
            complete = false;
        }
    }
    let mut stream = match stream {
        Some(s) if complete && s.position() <= min_n => s,
        _ => {
            let family = match key {
                StreamKey::Schmidt(r) => Family::Schmidt(r),
                StreamKey::Central => Family::CentralBinomial,
            };
            SumStream::new(family, xs.iter().map(|&x| Integer::from(x)).collect(), shapes.clone())
        }
    };
    let mut out = Vec::with_capacity(requests.len());
    for r in &requests {
        stream.advance_to(r.n);
        let xi = xs.iter().position(|&x| x == r.x).expect("point registered");
        let si = shapes.iter().position(|s| *s == r.shape).expect("shape registered");
        let v = stream.sum(si, xi).mod_floor(&Integer::from(r.modulus));
        out.push((r.need, v));
    }
    (stream, out)
}

fn fulfil_single_and_rational(needs: &[Need], exact: bool) -> Vec<(Need, Integer)> {
    let mut singles: BTreeMap<u64, Vec<i64>> = BTreeMap::new();
    let mut rationals: BTreeMap<u64, Vec<i64>> = BTreeMap::new();
    for &need in needs {
        match need {
            Need::Single { p, x } => singles.entry(p).or_default().push(x),
            Need::Rational { p, x } => rationals.entry(p).or_default().push(x),
            _ => unreachable!("only single sums are handled here"),
        }
    }
    let single_jobs: Vec<(u64, Vec<i64>)> = singles.into_iter().collect();
    let rational_jobs: Vec<(u64, Vec<i64>)> = rationals.into_iter().collect();
    let mut out: Vec<(Need, Integer)> = single_jobs
        .par_iter()
        .flat_map_iter(|(p, xs)| {
            let p = *p;
            let m = Integer::from(p * p);
            let values: Vec<(Need, Integer)> = if exact {
                xs.iter()
                    .map(|&x| {
                        let v = thm3_binomial_sum_exact(p, &Integer::from(x)).mod_floor(&m);
                        (Need::Single { p, x }, v)
                    })
                    .collect()
            } else {
                let (pf, terms) = single_sum_terms(p);
                xs.iter()
                    .map(|&x| (Need::Single { p, x }, Integer::from(horner(pf.ring(), &terms, x))))
                    .collect()
            };
            values
        })
        .collect();
    let rational: Vec<(Need, Integer)> = rational_jobs.par_iter().flat_map_iter(|(p, xs)| {
        let p = *p;
        let terms = thm3_rational_terms(p);
        xs.iter()
            .map(|&x| {
                let v = thm3_rational_sum_from_terms(&terms, p, &Integer::from(x)).into_value();
                (Need::Rational { p, x }, v)
            })
            .collect::<Vec<_>>()
    }).collect();
    out.extend(rational);
    out
}

/// Independent unit of fast work.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum FastJob {
    /// Coefficient kernel for one `(r, n, modulus)`.
    Family { r: u32, n: u64, modulus: u64 },
    /// Central binomial terms modulo `p^w` up to `n`.
    Central { p: u64, w: u32, n: u64 },
}

fn fulfil_fast(wanted: &[Need]) -> HashMap<Need, Integer> {
    let mut jobs: BTreeMap<FastJob, Vec<Need>> = BTreeMap::new();
    let mut other = Vec::new();
    for &need in wanted {
        match need {
            Need::Family { r, n, modulus, .. } => {
                jobs.entry(FastJob::Family { r, n, modulus }).or_default().push(need)
            }
            Need::Central { p, w, n, .. } => jobs.entry(FastJob::Central { p, w, n }).or_default().push(need),
            Need::Single { .. } | Need::Rational { .. } => other.push(need),
        }
    }
    let jobs: Vec<(FastJob, Vec<Need>)> = jobs.into_iter().collect();
    let mut out: HashMap<Need, Integer> = jobs
        .par_iter()
        .flat_map_iter(|(job, needs)| run_fast_job(job, needs))
        .collect();
    out.extend(fulfil_single_and_rational(&other, false));
    out
}

fn run_fast_job(job: &FastJob, needs: &[Need]) -> Vec<(Need, Integer)> {
    match *job {
        FastJob::Family { r, n, modulus } => {
            let ring = AnyRing::new(modulus);
            let mut shapes: Vec<TermShape> = Vec::new();
            for need in needs {
                if let Need::Family { shape, .. } = need {
                    if !shapes.contains(shape) {
                        shapes.push(*shape);
                    }
                }
            }
            let coeffs = family_coefficients(&ring, r, &shapes, n);
            needs
                .iter()
                .map(|need| {
                    let Need::Family { shape, x, .. } = *need else {
                        unreachable!("family job holds family needs")
                    };
                    let si = shapes.iter().position(|s| *s == shape).expect("shape registered");
                    (*need, Integer::from(horner(&ring, &coeffs[si], x)))
                })
                .collect()
        }
        FastJob::Central { p, w, n } => {
            let pf = PrimePowerFactorials::new(p, w, (2 * n).saturating_sub(2));
            let terms = central_terms(&pf, n);
            needs
                .iter()
                .map(|need| {
                    let Need::Central { x, .. } = *need else {
                        unreachable!("central job holds central needs")
                    };
                    (*need, Integer::from(horner(pf.ring(), &terms, x)))
                })
                .collect()
        }
    }
}
