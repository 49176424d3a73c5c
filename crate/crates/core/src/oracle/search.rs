//! Randomized falsification search.
//!
//! Trial `i` draws its vector from a ChaCha8 generator seeded with
//! `trial_seed(seed, i)`: with probability 1/10 the structured vector
//! `(1, t, ..., t)` with `t ~ U[0, 1)`, otherwise i.i.d. standard normal
//! coordinates. Trials are grouped into fixed shards of [`SHARD_SIZE`]; the
//! best sample of each shard is refined by coordinate hill climbing, and
//! the best refined vector over all shards (lowest shard on ties) is
//! reported. Nothing depends on how shards are scheduled across threads.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{phi_f64, ratio_of, RealVector};
use crate::certificate::OutputFormat;
use crate::error::{Error, Result};

pub const SEARCH_HEADER: &str = "search-v1";
pub const SHARD_SIZE: u64 = 4096;

const STRUCTURED_FRACTION: f64 = 0.1;
const INITIAL_STEP: f64 = 0.25;
const HALVINGS: u32 = 40;
const MAX_SWEEPS_PER_STEP: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub dimension: usize,
    pub trials: u64,
    pub seed: u64,
    pub best_ratio: f64,
    pub best_vector: RealVector,
    /// `phi_p - best_ratio` in double precision.
    pub gap_to_phi: f64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOptions {
    /// Worker thread cap; `None` uses the global pool.
    pub threads: Option<usize>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-trial seed: `splitmix64(seed ^ splitmix64(index))`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

/// The raw sample drawn by trial `index`.
pub fn sample_trial(p: usize, seed: u64, index: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, index));
    if rng.random::<f64>() < STRUCTURED_FRACTION {
        let t: f64 = rng.random();
        let mut x = vec![t; p];
        x[0] = 1.0;
        x
    } else {
        (0..p).map(|_| rng.sample(StandardNormal)).collect()
    }
}

struct Climber {
    x: Vec<f64>,
    l1: f64,
    l2sq: f64,
    max: f64,
    argmax: usize,
    ratio: f64,
}

impl Climber {
    fn new(mut x: Vec<f64>) -> Option<Self> {
        let max = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if max == 0.0 {
            return None;
        }
        x.iter_mut().for_each(|v| *v /= max);
        let mut c = Climber {
            x,
            l1: 0.0,
            l2sq: 0.0,
            max: 0.0,
            argmax: 0,
            ratio: 0.0,
        };
        c.resync();
        Some(c)
    }

    fn resync(&mut self) {
        self.l1 = super::compensated_sum(self.x.iter().map(|v| v.abs()));
        self.l2sq = super::compensated_sum(self.x.iter().map(|v| v * v));
        let (argmax, max) = self
            .x
            .iter()
            .enumerate()
            .fold((0, 0.0f64), |(bi, bm), (i, v)| if v.abs() > bm { (i, v.abs()) } else { (bi, bm) });
        self.max = max;
        self.argmax = argmax;
        self.ratio = ratio_of(&self.x).unwrap_or(0.0);
    }

    /// Approximate ratio after setting coordinate `i` to `y`, in O(1)
    /// unless the current maximum coordinate shrinks.
    fn trial_ratio(&self, i: usize, y: f64) -> Option<f64> {
        let old = self.x[i];
        let l1 = self.l1 - old.abs() + y.abs();
        let l2sq = self.l2sq - old * old + y * y;
        let max = if y.abs() >= self.max {
            y.abs()
        } else if i == self.argmax {
            self.x
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(y.abs(), |m, (_, v)| m.max(v.abs()))
        } else {
            self.max
        };
        (l2sq > 0.0 && max > 0.0).then(|| l1 * max / l2sq)
    }

    fn climb(&mut self) {
        let mut step = INITIAL_STEP;
        for _ in 0..=HALVINGS {
            for _ in 0..MAX_SWEEPS_PER_STEP {
                let mut improved = false;
                for i in 0..self.x.len() {
                    for delta in [step, -step] {
                        let y = self.x[i] + delta;
                        let Some(candidate) = self.trial_ratio(i, y) else { continue };
                        if candidate <= self.ratio {
                            continue;
                        }
                        let old = self.x[i];
                        let old_ratio = self.ratio;
                        self.x[i] = y;
                        self.resync();
                        if self.ratio > old_ratio {
                            improved = true;
                            break;
                        }
                        self.x[i] = old;
                        self.resync();
                    }
                }
                if !improved {
                    break;
                }
            }
            step *= 0.5;
        }
    }
}

struct ShardBest {
    ratio: f64,
    vector: Vec<f64>,
}

fn run_shard(p: usize, seed: u64, start: u64, end: u64) -> Option<ShardBest> {
    let mut best: Option<(f64, Vec<f64>)> = None;
    for index in start..end {
        let x = sample_trial(p, seed, index);
        let Ok(r) = ratio_of(&x) else { continue };
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, x));
        }
    }
    let (raw_ratio, raw) = best?;
    let mut climber = Climber::new(raw.clone())?;
    climber.climb();
    Some(if climber.ratio >= raw_ratio {
        ShardBest {
            ratio: climber.ratio,
            vector: climber.x,
        }
    } else {
        ShardBest {
            ratio: raw_ratio,
            vector: raw,
        }
    })
}

pub fn random_search(p: usize, trials: u64, seed: u64) -> Result<SearchReport> {
    random_search_with(p, trials, seed, SearchOptions::default())
}

pub fn random_search_with(
    p: usize,
    trials: u64,
    seed: u64,
    options: SearchOptions,
) -> Result<SearchReport> {
    if p < 1 {
        return Err(Error::InvalidDimension { got: p, min: 1 });
    }
    if trials < 1 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let shards = trials.div_ceil(SHARD_SIZE);
    let work = || -> Vec<Option<ShardBest>> {
        (0..shards)
            .into_par_iter()
            .map(|s| run_shard(p, seed, s * SHARD_SIZE, ((s + 1) * SHARD_SIZE).min(trials)))
            .collect()
    };
    let results = match options.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    let best = results
        .into_iter()
        .flatten()
        .fold(None::<ShardBest>, |acc, s| match acc {
            Some(a) if a.ratio >= s.ratio => Some(a),
            _ => Some(s),
        })
        .ok_or(Error::ZeroVector)?;
    let phi = phi_f64(p)?;
    Ok(SearchReport {
        dimension: p,
        trials,
        seed,
        best_ratio: best.ratio,
        best_vector: RealVector::new(best.vector)?,
        gap_to_phi: phi - best.ratio,
    })
}

fn join_floats(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(", ")
}

impl SearchReport {
    pub fn render(&self, format: OutputFormat) -> String {
        let sep = format.separator();
        let mut out = String::new();
        out.push_str(SEARCH_HEADER);
        out.push('\n');
        let _ = writeln!(out, "dimension{sep}{}", self.dimension);
        let _ = writeln!(out, "trials{sep}{}", self.trials);
        let _ = writeln!(out, "seed{sep}{}", self.seed);
        let _ = writeln!(out, "best_ratio{sep}{:?}", self.best_ratio);
        let _ = writeln!(out, "best_vector{sep}{}", join_floats(self.best_vector.coordinates()));
        let _ = writeln!(out, "gap_to_phi{sep}{:?}", self.gap_to_phi);
        out
    }
}

pub fn parse_search_report(text: &str) -> Result<SearchReport> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    if lines.next().map(str::trim) != Some(SEARCH_HEADER) {
        return Err(Error::Parse(format!("missing {SEARCH_HEADER} header")));
    }
    let mut field = |name: &str| -> Result<String> {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing field {name}")))?;
        match line.split_once('=') {
            Some((k, v)) if k.trim() == name => Ok(v.trim().to_string()),
            _ => Err(Error::Parse(format!("expected field {name}, found {line:?}"))),
        }
    };
    fn num<T: std::str::FromStr>(name: &str, v: &str) -> Result<T> {
        v.parse().map_err(|_| Error::Parse(format!("invalid {name}: {v:?}")))
    }
    let dimension = num("dimension", &field("dimension")?)?;
    let trials = num("trials", &field("trials")?)?;
    let seed = num("seed", &field("seed")?)?;
    let best_ratio = num("best_ratio", &field("best_ratio")?)?;
    let best_vector = field("best_vector")?
        .split(", ")
        .map(|v| num("best_vector", v))
        .collect::<Result<Vec<f64>>>()?;
    let gap_to_phi = num("gap_to_phi", &field("gap_to_phi")?)?;
    Ok(SearchReport {
        dimension,
        trials,
        seed,
        best_ratio,
        best_vector: RealVector::new(best_vector)?,
        gap_to_phi,
    })
}
