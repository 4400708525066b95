//! Characteristic exponents and the transition coefficient.
//!
//! For a system `M`, `n` initial conditions `i_1..i_n` in Gray order and a
//! step count `t`, the characteristic exponent is
//!
//! ```text
//! c(n, t) = sum_k |C(M_t(i_k)) - C(M_t(i_{k+1}))| / (t (n - 1))
//! ```
//!
//! where `C` is the compressed length in bits of the serialized evolution.
//! The transition coefficient is the least-squares slope of `c(n, t)`
//! against `t` over a step schedule.
//!
//! Per-input compressions run in parallel on the current rayon pool. All
//! reductions happen afterwards in index order, and the absolute differences
//! are summed as integers, so results do not depend on the thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitString;
use crate::compressor::{compressed_length, compressed_length_prefixes};
use crate::eca::{serialized_evolution, EcaRule};
use crate::enumeration::enumerate;

pub const DEFAULT_N: usize = 64;
pub const DEFAULT_SCHEDULE: [u64; 4] = [50, 100, 150, 200];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoefficientError {
    #[error("need at least 2 initial conditions, got {0}")]
    TooFewInitialConditions(usize),
    #[error("step counts must be positive")]
    ZeroSteps,
    #[error("schedule needs at least 2 distinct step counts, got {0}")]
    ScheduleTooShort(usize),
    #[error("degenerate least-squares input: {0}")]
    Degenerate(&'static str),
}

/// A deterministic system fed a binary input and run for a number of steps.
pub trait ComputingSystem: Sync {
    /// Identifier used in reports, e.g. `eca:110`.
    fn id(&self) -> String;

    /// Serialized evolution of the system on `init` after `steps` steps.
    fn run(&self, init: &BitString, steps: u64) -> Vec<u8>;

    /// Compressed lengths of `run(init, t)` for each `t` in `schedule`.
    fn compressed_lengths(&self, init: &BitString, schedule: &[u64]) -> Vec<u64> {
        schedule
            .iter()
            .map(|&t| compressed_length(&self.run(init, t)))
            .collect()
    }
}

impl<S: ComputingSystem + ?Sized> ComputingSystem for &S {
    fn id(&self) -> String {
        (**self).id()
    }

    fn run(&self, init: &BitString, steps: u64) -> Vec<u8> {
        (**self).run(init, steps)
    }

    fn compressed_lengths(&self, init: &BitString, schedule: &[u64]) -> Vec<u64> {
        (**self).compressed_lengths(init, schedule)
    }
}

/// ECA adapter: the input sits at positions `0..L` on a 0 background.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EcaSystem(pub EcaRule);

impl ComputingSystem for EcaSystem {
    fn id(&self) -> String {
        format!("eca:{}", self.0.number())
    }

    fn run(&self, init: &BitString, steps: u64) -> Vec<u8> {
        serialized_evolution(self.0, init.as_slice(), steps as usize)
    }

    // Shorter evolutions are prefixes of the longest one.
    fn compressed_lengths(&self, init: &BitString, schedule: &[u64]) -> Vec<u64> {
        let Some(&max_t) = schedule.iter().max() else {
            return Vec::new();
        };
        let data = serialized_evolution(self.0, init.as_slice(), max_t as usize);
        let w0 = init.len() as u64;
        let prefix_len = |t: u64| ((t + 1) * w0 + t * (t + 1)) as usize;
        let mut order: Vec<usize> = (0..schedule.len()).collect();
        order.sort_by_key(|&i| schedule[i]);
        let cuts: Vec<usize> = order.iter().map(|&i| prefix_len(schedule[i])).collect();
        let sorted = compressed_length_prefixes(&data, &cuts);
        let mut out = vec![0; schedule.len()];
        for (slot, len) in order.into_iter().zip(sorted) {
            out[slot] = len;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionSeries {
    pub n: usize,
    /// `(t, c(n, t))` with strictly increasing `t`.
    pub samples: Vec<(u64, f64)>,
}

impl TransitionSeries {
    pub fn coefficient(&self) -> Result<TransitionCoefficient, CoefficientError> {
        let points: Vec<(f64, f64)> = self.samples.iter().map(|&(t, c)| (t as f64, c)).collect();
        least_squares_slope(&points).map(TransitionCoefficient)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TransitionCoefficient(pub f64);

impl TransitionCoefficient {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Mean absolute difference of consecutive compressed lengths, over `t (n - 1)`.
pub fn exponent_from_lengths(lengths: &[u64], t: u64) -> f64 {
    let n = lengths.len();
    debug_assert!(n >= 2 && t >= 1);
    let total: u64 = lengths.windows(2).map(|w| w[0].abs_diff(w[1])).sum();
    total as f64 / (t as f64 * (n - 1) as f64)
}

pub fn characteristic_exponent(
    system: &(impl ComputingSystem + ?Sized),
    n: usize,
    t: u64,
) -> Result<f64, CoefficientError> {
    let series = transition_series_unchecked(system, n, &[t], false)?;
    Ok(series.samples[0].1)
}

/// Sorts and deduplicates a step schedule and validates it.
pub fn normalize_schedule(schedule: &[u64]) -> Result<Vec<u64>, CoefficientError> {
    let mut s = schedule.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.first() == Some(&0) {
        return Err(CoefficientError::ZeroSteps);
    }
    if s.len() < 2 {
        return Err(CoefficientError::ScheduleTooShort(s.len()));
    }
    Ok(s)
}

pub fn transition_series(
    system: &(impl ComputingSystem + ?Sized),
    n: usize,
    schedule: &[u64],
) -> Result<TransitionSeries, CoefficientError> {
    let schedule = normalize_schedule(schedule)?;
    transition_series_unchecked(system, n, &schedule, true)
}

fn transition_series_unchecked(
    system: &(impl ComputingSystem + ?Sized),
    n: usize,
    schedule: &[u64],
    parallel: bool,
) -> Result<TransitionSeries, CoefficientError> {
    if n < 2 {
        return Err(CoefficientError::TooFewInitialConditions(n));
    }
    if schedule.contains(&0) {
        return Err(CoefficientError::ZeroSteps);
    }
    let inits = enumerate(n);
    // lengths[j][s]: input j, schedule entry s
    let lengths: Vec<Vec<u64>> = if parallel {
        inits
            .par_iter()
            .map(|init| system.compressed_lengths(init, schedule))
            .collect()
    } else {
        inits
            .iter()
            .map(|init| system.compressed_lengths(init, schedule))
            .collect()
    };
    let samples = schedule
        .iter()
        .enumerate()
        .map(|(s, &t)| {
            let column: Vec<u64> = lengths.iter().map(|row| row[s]).collect();
            (t, exponent_from_lengths(&column, t))
        })
        .collect();
    Ok(TransitionSeries { n, samples })
}

pub fn transition_coefficient(
    system: &(impl ComputingSystem + ?Sized),
    n: usize,
    schedule: &[u64],
) -> Result<TransitionCoefficient, CoefficientError> {
    transition_series(system, n, schedule)?.coefficient()
}

/// Ordinary least-squares slope `sum (x - mx)(y - my) / sum (x - mx)^2`.
pub fn least_squares_slope(points: &[(f64, f64)]) -> Result<f64, CoefficientError> {
    if points.len() < 2 {
        return Err(CoefficientError::Degenerate("fewer than 2 points"));
    }
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let (num, den) = points.iter().fold((0.0, 0.0), |(num, den), &(x, y)| {
        let dx = x - mx;
        (num + dx * (y - my), den + dx * dx)
    });
    if den == 0.0 {
        return Err(CoefficientError::Degenerate("all x values equal"));
    }
    Ok(num / den)
}
