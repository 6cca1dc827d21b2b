//! Sampled localization factor `L(τ) = 1 − ⟨cos x(τ)⟩`.

use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TraceSample {
    pub tau: f64,
    #[cfg_attr(feature = "serde", serde(rename = "L"))]
    pub localization: f64,
}

/// Times strictly increasing, every value in `[0, 2]`.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LocalizationTrace {
    samples: Vec<TraceSample>,
}

impl LocalizationTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_samples(samples: Vec<TraceSample>) -> Result<Self> {
        let mut trace = Self {
            samples: Vec::with_capacity(samples.len()),
        };
        for s in samples {
            trace.push(s.tau, s.localization)?;
        }
        Ok(trace)
    }

    /// Appends a sample. Values within rounding of `[0, 2]` are clamped.
    pub fn push(&mut self, tau: f64, localization: f64) -> Result<()> {
        if !tau.is_finite() {
            return Err(Error::InvalidTrace("sample time is not finite"));
        }
        if let Some(last) = self.samples.last() {
            if tau <= last.tau {
                return Err(Error::InvalidTrace("sample times must be strictly increasing"));
            }
        }
        if !(-1e-9..=2.0 + 1e-9).contains(&localization) {
            return Err(Error::InvalidTrace("localization factor outside [0, 2]"));
        }
        self.samples.push(TraceSample {
            tau,
            localization: localization.clamp(0.0, 2.0),
        });
        Ok(())
    }

    pub fn samples(&self) -> &[TraceSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.tau)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.localization)
    }

    /// Sample with the smallest localization factor (earliest on ties).
    pub fn minimum(&self) -> Option<TraceSample> {
        self.samples.iter().copied().reduce(|best, s| {
            if s.localization < best.localization {
                s
            } else {
                best
            }
        })
    }
}

/// Validates a list of sample times for a run.
pub(crate) fn check_sample_times(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::InvalidTrace("sample times must be finite and non-negative"));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidTrace("sample times must be strictly increasing"));
    }
    Ok(())
}

/// `n` evenly spaced times `0, h, …, t_max`.
pub fn uniform_times(t_max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![0.0],
        _ => (0..n).map(|i| t_max * i as f64 / (n - 1) as f64).collect(),
    }
}
