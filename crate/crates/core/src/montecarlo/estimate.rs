//! Failure-rate estimation over many independent trials.

use super::engine::{Engine, Verdict};
use super::source::RandomFaults;
use crate::circuit::NoiseModel;
use crate::error::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FailureEstimate {
    pub p0: f64,
    pub pmem: f64,
    pub trials: u64,
    /// Malignant plus exhausted trials.
    pub failures: u64,
    pub exhausted: u64,
    pub p1: f64,
    pub stderr: f64,
    pub seed: u64,
}

impl FailureEstimate {
    pub fn from_counts(p0: f64, pmem: f64, trials: u64, failures: u64, exhausted: u64, seed: u64) -> Self {
        let (p1, stderr) = if trials == 0 {
            (0.0, 0.0)
        } else {
            let p = failures as f64 / trials as f64;
            (p, (p * (1.0 - p) / trials as f64).sqrt())
        };
        FailureEstimate { p0, pmem, trials, failures, exhausted, p1, stderr, seed }
    }
}

/// Random stream of one trial: the master seed selects the generator, the
/// trial index selects the stream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn run_range(engine: &Engine, noise: NoiseModel, seed: u64, range: Range<u64>) -> (u64, u64) {
    let mut failures = 0;
    let mut exhausted = 0;
    for i in range {
        let mut src = RandomFaults { noise, rng: trial_rng(seed, i) };
        match engine.run_trial(&mut src).verdict {
            Verdict::Correct => {}
            Verdict::Malignant => failures += 1,
            Verdict::AncillaExhausted => {
                failures += 1;
                exhausted += 1;
            }
        }
    }
    (failures, exhausted)
}

/// Failure and exhaustion counts over the trial indices `range`, split
/// over `workers` threads. The counts depend only on the seed and range.
pub fn count_failures(engine: &Engine, noise: NoiseModel, seed: u64, range: Range<u64>, workers: usize) -> Result<(u64, u64)> {
    if workers == 0 {
        return Err(Error::Parameter("workers must be at least 1".into()));
    }
    let len = range.end.saturating_sub(range.start);
    let chunk = len.div_ceil(workers as u64).max(1);
    let parts: Vec<(u64, u64)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| range.start + (w * chunk).min(len)..range.start + ((w + 1) * chunk).min(len))
            .filter(|r| !r.is_empty())
            .map(|r| s.spawn(move || run_range(engine, noise, seed, r)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    Ok((parts.iter().map(|p| p.0).sum(), parts.iter().map(|p| p.1).sum()))
}

/// Runs trials 0..trials.
pub fn estimate_p1(engine: &Engine, noise: NoiseModel, trials: u64, seed: u64, workers: usize) -> Result<FailureEstimate> {
    let (failures, exhausted) = count_failures(engine, noise, seed, 0..trials, workers)?;
    Ok(FailureEstimate::from_counts(noise.p0, noise.pmem, trials, failures, exhausted, seed))
}
