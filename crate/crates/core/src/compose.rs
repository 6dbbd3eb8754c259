//! Random, unbiased, non-adaptive search for a close-relative composition.
//!
//! A pool of candidate strings is generated from a seed, each candidate is
//! scored by the sum of its correlations with the two parent strings, and
//! the best-scoring candidate wins (ties go to the lowest generation index).
//! The candidate stream never depends on the parents or on scores seen so
//! far.
//!
//! # Reproducibility contract
//!
//! Candidate `i` draws from a dedicated ChaCha8 stream: the generator is
//! seeded with `seed_from_u64(cfg.seed)` and its stream id set to `i`. Per
//! candidate, logistic mode draws exactly two values (lambda uniform in
//! `lambda_range`, then x0 uniform in the open interval (0, 1)); uniform
//! mode draws exactly `length` level indices. Streams are disjoint and
//! derivable from `(seed, i)` alone, so any number of workers can generate
//! and score candidates in any order: the `(max score, min index)` reduction
//! makes the result independent of scheduling, and pools from the same seed
//! are prefixes of one another.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::distributions::{Distribution, Open01, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chaos::{step_unchecked, LogisticParams};
use crate::correlate::{correlation, energy};
use crate::error::{Error, Result};
use crate::raga::{decode_amplitudes, quantize_unchecked, LevelSequence, NoteString, RagaSpec};
use crate::Real;

pub const DEFAULT_POOL_SIZE: u64 = 150_000;
pub const DEFAULT_LAMBDA_RANGE: (Real, Real) = (3.6, 4.0);

/// Largest candidate space `search` will enumerate in exhaustive mode.
pub const EXHAUSTIVE_LIMIT: u64 = 10_000_000;

const PROGRESS_STRIDE: u64 = 8_192;

/// How candidates are generated.
///
/// `Logistic` (the default) draws a fresh `(lambda, x0)` per candidate and
/// quantizes the resulting orbit, so every candidate is itself a chaotic
/// string. `Uniform` draws i.i.d. levels. `Exhaustive` walks the whole
/// `n_levels^length` space in lexicographic order and ignores both the seed
/// and `pool_size`; it exists for small spaces where the search should
/// provably find the global optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Logistic,
    Uniform,
    Exhaustive,
}

impl SearchMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SearchMode::Logistic => "logistic",
            SearchMode::Uniform => "uniform",
            SearchMode::Exhaustive => "exhaustive",
        }
    }
}

impl std::fmt::Display for SearchMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "logistic" => Ok(SearchMode::Logistic),
            "uniform" => Ok(SearchMode::Uniform),
            "exhaustive" => Ok(SearchMode::Exhaustive),
            other => Err(Error::InvalidConfig(format!(
                "mode must be logistic, uniform or exhaustive (got {other:?})"
            ))),
        }
    }
}

/// Everything a search needs besides the parents.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub pool_size: u64,
    pub mode: SearchMode,
    /// Half-open interval `[lo, hi)` that logistic mode samples lambda from;
    /// must lie inside `(0, 4]`.
    pub lambda_range: (Real, Real),
    pub seed: u64,
    pub raga: Arc<RagaSpec>,
    pub length: usize,
}

impl SearchConfig {
    pub fn new(raga: Arc<RagaSpec>, length: usize) -> Self {
        Self {
            pool_size: DEFAULT_POOL_SIZE,
            mode: SearchMode::Logistic,
            lambda_range: DEFAULT_LAMBDA_RANGE,
            seed: 0,
            raga,
            length,
        }
    }

    fn validate_generation(&self) -> Result<()> {
        if self.length == 0 {
            return Err(Error::EmptySequence);
        }
        match self.mode {
            SearchMode::Logistic => {
                let (lo, hi) = self.lambda_range;
                if !(lo > 0.0 && lo < hi && hi <= 4.0) {
                    return Err(Error::InvalidConfig(format!(
                        "lambda range must satisfy 0 < lo < hi <= 4 (got [{lo}, {hi}))"
                    )));
                }
                if self.pool_size == 0 {
                    return Err(Error::InvalidConfig("pool size must be at least 1".into()));
                }
            }
            SearchMode::Uniform => {
                if self.pool_size == 0 {
                    return Err(Error::InvalidConfig("pool size must be at least 1".into()));
                }
            }
            SearchMode::Exhaustive => {
                self.exhaustive_pool()?;
            }
        }
        Ok(())
    }

    fn exhaustive_pool(&self) -> Result<u64> {
        let n = self.raga.n_levels() as u128;
        let mut pool: u128 = 1;
        for _ in 0..self.length {
            pool = pool.saturating_mul(n);
            if pool > EXHAUSTIVE_LIMIT as u128 {
                return Err(Error::InvalidConfig(format!(
                    "exhaustive space {}^{} exceeds the {EXHAUSTIVE_LIMIT}-candidate limit",
                    self.raga.n_levels(),
                    self.length
                )));
            }
        }
        Ok(pool as u64)
    }

    /// Number of candidates a search with this config will visit.
    pub fn effective_pool_size(&self) -> Result<u64> {
        match self.mode {
            SearchMode::Exhaustive => self.exhaustive_pool(),
            _ => Ok(self.pool_size),
        }
    }
}

/// The winning candidate of a search.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositionResult {
    pub best: NoteString,
    /// `c1 + c2`, in `(0, 2]` for midpoint amplitudes.
    pub score: Real,
    pub c1: Real,
    pub c2: Real,
    /// 0-based ordinal of the winner in generation order.
    pub candidate_index: u64,
    /// The winner's map parameters (logistic mode only).
    pub generator_params: Option<LogisticParams>,
    pub seed: u64,
}

enum CandidateSource {
    Logistic {
        base: ChaCha8Rng,
        lambda_dist: Uniform<Real>,
        n_levels: usize,
    },
    Uniform {
        base: ChaCha8Rng,
        level_dist: Uniform<usize>,
    },
    Exhaustive {
        n_levels: u64,
    },
}

impl CandidateSource {
    fn new(cfg: &SearchConfig) -> Self {
        match cfg.mode {
            SearchMode::Logistic => CandidateSource::Logistic {
                base: ChaCha8Rng::seed_from_u64(cfg.seed),
                lambda_dist: Uniform::new(cfg.lambda_range.0, cfg.lambda_range.1),
                n_levels: cfg.raga.n_levels(),
            },
            SearchMode::Uniform => CandidateSource::Uniform {
                base: ChaCha8Rng::seed_from_u64(cfg.seed),
                level_dist: Uniform::new(0, cfg.raga.n_levels()),
            },
            SearchMode::Exhaustive => CandidateSource::Exhaustive {
                n_levels: cfg.raga.n_levels() as u64,
            },
        }
    }

    fn fill(&self, index: u64, out: &mut [usize]) -> Option<LogisticParams> {
        match self {
            CandidateSource::Logistic {
                base,
                lambda_dist,
                n_levels,
            } => {
                let mut rng = base.clone();
                rng.set_stream(index);
                let lambda: Real = lambda_dist.sample(&mut rng);
                let x0: Real = Open01.sample(&mut rng);
                let mut x = x0;
                for slot in out.iter_mut() {
                    *slot = quantize_unchecked(x, *n_levels);
                    x = step_unchecked(lambda, x);
                }
                Some(LogisticParams::new(lambda, x0, out.len()).expect("sampled in domain"))
            }
            CandidateSource::Uniform { base, level_dist } => {
                let mut rng = base.clone();
                rng.set_stream(index);
                for slot in out.iter_mut() {
                    *slot = level_dist.sample(&mut rng);
                }
                None
            }
            CandidateSource::Exhaustive { n_levels } => {
                let mut rem = index;
                for slot in out.iter_mut().rev() {
                    *slot = (rem % n_levels) as usize;
                    rem /= n_levels;
                }
                None
            }
        }
    }
}

/// Generates candidate `index` of the stream determined by `cfg`. Two calls
/// with the same arguments return the same candidate.
pub fn generate_candidate(
    cfg: &SearchConfig,
    index: u64,
) -> Result<(LevelSequence, Option<LogisticParams>)> {
    cfg.validate_generation()?;
    if cfg.mode == SearchMode::Exhaustive && index >= cfg.exhaustive_pool()? {
        return Err(Error::InvalidConfig(format!(
            "candidate index {index} outside the exhaustive space"
        )));
    }
    let source = CandidateSource::new(cfg);
    let mut levels = vec![0usize; cfg.length];
    let params = source.fill(index, &mut levels);
    Ok((LevelSequence::new(cfg.raga.clone(), levels)?, params))
}

fn check_aligned(left: &LevelSequence, right: &LevelSequence) -> Result<()> {
    if left.raga() != right.raga() {
        return Err(Error::RagaMismatch {
            left: left.raga().name().to_string(),
            right: right.raga().name().to_string(),
        });
    }
    if left.len() != right.len() {
        return Err(Error::LengthMismatch {
            left: left.len(),
            right: right.len(),
        });
    }
    Ok(())
}

/// Sum of the candidate's correlations with both parents, using midpoint
/// amplitudes. All-positive amplitudes keep the result in `(0, 2]`.
pub fn score(candidate: &LevelSequence, p1: &LevelSequence, p2: &LevelSequence) -> Result<Real> {
    check_aligned(candidate, p1)?;
    check_aligned(candidate, p2)?;
    let ca = decode_amplitudes::<Real>(candidate);
    let a1 = decode_amplitudes::<Real>(p1);
    let a2 = decode_amplitudes::<Real>(p2);
    Ok(correlation(ca.values(), a1.values())? + correlation(ca.values(), a2.values())?)
}

struct ParentData {
    a1: Vec<Real>,
    a2: Vec<Real>,
    e1: Real,
    e2: Real,
}

impl ParentData {
    fn new(p1: &LevelSequence, p2: &LevelSequence) -> Self {
        let a1 = decode_amplitudes::<Real>(p1).values().to_vec();
        let a2 = decode_amplitudes::<Real>(p2).values().to_vec();
        let e1 = energy(&a1);
        let e2 = energy(&a2);
        Self { a1, a2, e1, e2 }
    }
}

/// Fused single-pass scoring; bit-identical to `score` on the same inputs
/// (each accumulator sums in the same index order).
fn correlations_with_parents(levels: &[usize], amp: &[Real], parents: &ParentData) -> (Real, Real) {
    let mut ec = 0.0;
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    for (i, &level) in levels.iter().enumerate() {
        let a = amp[level];
        ec += a * a;
        s1 += a * parents.a1[i];
        s2 += a * parents.a2[i];
    }
    (s1 / (ec * parents.e1).sqrt(), s2 / (ec * parents.e2).sqrt())
}

#[derive(Debug, Clone, Copy)]
struct Hit {
    score: Real,
    index: u64,
}

impl Hit {
    const IDENTITY: Hit = Hit {
        score: f64::NEG_INFINITY,
        index: u64::MAX,
    };

    /// Max by score, ties broken by lowest index. Total order, so the
    /// parallel reduction is schedule-independent.
    fn better(self, other: Hit) -> Hit {
        if other.score > self.score || (other.score == self.score && other.index < self.index) {
            other
        } else {
            self
        }
    }
}

/// Runs the search over `pool_size` candidates (the whole space in
/// exhaustive mode) and returns the best-scoring one.
pub fn search(
    p1: &LevelSequence,
    p2: &LevelSequence,
    cfg: &SearchConfig,
) -> Result<CompositionResult> {
    search_with_progress(p1, p2, cfg, |_| {})
}

/// Like [`search`], reporting the number of candidates scored so far every
/// few thousand candidates (from whichever worker crosses the boundary).
pub fn search_with_progress<P>(
    p1: &LevelSequence,
    p2: &LevelSequence,
    cfg: &SearchConfig,
    progress: P,
) -> Result<CompositionResult>
where
    P: Fn(u64) + Sync,
{
    check_aligned(p1, p2)?;
    if *cfg.raga != **p1.raga() {
        return Err(Error::RagaMismatch {
            left: cfg.raga.name().to_string(),
            right: p1.raga().name().to_string(),
        });
    }
    if cfg.length != p1.len() {
        return Err(Error::LengthMismatch {
            left: cfg.length,
            right: p1.len(),
        });
    }
    cfg.validate_generation()?;

    let pool = cfg.effective_pool_size()?;
    let parents = ParentData::new(p1, p2);
    let amp = cfg.raga.midpoints::<Real>();
    let source = CandidateSource::new(cfg);
    let done = AtomicU64::new(0);

    let best = (0..pool)
        .into_par_iter()
        .map_init(
            || vec![0usize; cfg.length],
            |levels, index| {
                source.fill(index, levels);
                let (c1, c2) = correlations_with_parents(levels, &amp, &parents);
                let scored = done.fetch_add(1, Ordering::Relaxed) + 1;
                if scored % PROGRESS_STRIDE == 0 {
                    progress(scored);
                }
                Hit {
                    score: c1 + c2,
                    index,
                }
            },
        )
        .reduce(|| Hit::IDENTITY, Hit::better);
    progress(pool);
    debug_assert!(best.index != u64::MAX);

    let mut levels = vec![0usize; cfg.length];
    let generator_params = source.fill(best.index, &mut levels);
    let (c1, c2) = correlations_with_parents(&levels, &amp, &parents);
    Ok(CompositionResult {
        best: LevelSequence::new(cfg.raga.clone(), levels)?.to_notes(),
        score: c1 + c2,
        c1,
        c2,
        candidate_index: best.index,
        generator_params,
        seed: cfg.seed,
    })
}
