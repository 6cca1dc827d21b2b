//! Pulse sequences: the control variable of every run.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Which dynamics a run uses, and therefore which time unit its `τ` is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Engine {
    Classical,
    Quantum,
}

impl Engine {
    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::Classical => "classical",
            Engine::Quantum => "quantum",
        }
    }
}

impl core::fmt::Display for Engine {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A δ-kick at time `tau` with dimensionless strength `strength`.
///
/// In classical runs the strength multiplies the unit impulse `−sin x`; a
/// plain classical kick has strength 1.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Kick {
    pub tau: f64,
    #[cfg_attr(feature = "serde", serde(rename = "P"))]
    pub strength: f64,
}

impl Kick {
    pub const fn new(tau: f64, strength: f64) -> Self {
        Self { tau, strength }
    }
}

/// Kicks ordered by time. Equal times are allowed and act as one kick with
/// the summed strength.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawSequence"))]
pub struct PulseSequence {
    kicks: Vec<Kick>,
}

#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
struct RawSequence {
    kicks: Vec<Kick>,
}

#[cfg(feature = "serde")]
impl TryFrom<RawSequence> for PulseSequence {
    type Error = Error;

    fn try_from(raw: RawSequence) -> Result<Self> {
        PulseSequence::new(raw.kicks)
    }
}

impl PulseSequence {
    pub fn new(kicks: Vec<Kick>) -> Result<Self> {
        kicks.iter().try_for_each(validate_kick)?;
        if kicks.windows(2).any(|w| w[1].tau < w[0].tau) {
            return Err(Error::InvalidSequence("kick times must be non-decreasing"));
        }
        Ok(Self { kicks })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// One kick of the given strength at `τ = 0`.
    pub fn single(strength: f64) -> Result<Self> {
        Self::new(alloc::vec![Kick::new(0.0, strength)])
    }

    /// Identical kicks, the first at `τ = 0`, separated by `delays`.
    pub fn from_delays(strength: f64, delays: &[f64]) -> Result<Self> {
        Self::from_delays_and_strengths(&alloc::vec![strength; delays.len() + 1], delays)
    }

    /// Kicks with individual strengths; `delays.len()` must be
    /// `strengths.len() - 1`.
    pub fn from_delays_and_strengths(strengths: &[f64], delays: &[f64]) -> Result<Self> {
        if strengths.is_empty() {
            return Ok(Self::empty());
        }
        if delays.len() + 1 != strengths.len() {
            return Err(Error::InvalidSequence("need exactly one delay between consecutive kicks"));
        }
        if delays.iter().any(|d| !d.is_finite() || *d < 0.0) {
            return Err(Error::InvalidSequence("delays must be finite and non-negative"));
        }
        let mut tau = 0.0;
        let mut kicks = Vec::with_capacity(strengths.len());
        kicks.push(Kick::new(0.0, strengths[0]));
        for (d, s) in delays.iter().zip(&strengths[1..]) {
            tau += d;
            kicks.push(Kick::new(tau, *s));
        }
        Self::new(kicks)
    }

    pub fn kicks(&self) -> &[Kick] {
        &self.kicks
    }

    pub fn len(&self) -> usize {
        self.kicks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kicks.is_empty()
    }

    /// Intervals between consecutive kicks.
    pub fn delays(&self) -> Vec<f64> {
        self.kicks.windows(2).map(|w| w[1].tau - w[0].tau).collect()
    }

    pub fn total_strength(&self) -> f64 {
        self.kicks.iter().map(|k| k.strength).sum()
    }

    pub fn last_time(&self) -> Option<f64> {
        self.kicks.last().map(|k| k.tau)
    }

    /// Coincident kicks combined into one kick with the summed strength.
    pub fn merged(&self) -> PulseSequence {
        let mut out: Vec<Kick> = Vec::with_capacity(self.kicks.len());
        for k in &self.kicks {
            match out.last_mut() {
                Some(last) if last.tau == k.tau => last.strength += k.strength,
                _ => out.push(*k),
            }
        }
        PulseSequence { kicks: out }
    }

    /// Appends a kick; its time must not precede the last one.
    pub fn push(&mut self, kick: Kick) -> Result<()> {
        if let Some(last) = self.kicks.last() {
            if kick.tau < last.tau {
                return Err(Error::InvalidSequence("kick times must be non-decreasing"));
            }
        }
        validate_kick(&kick)?;
        self.kicks.push(kick);
        Ok(())
    }
}

fn validate_kick(k: &Kick) -> Result<()> {
    if !k.tau.is_finite() || k.tau < 0.0 {
        return Err(Error::InvalidSequence("kick times must be finite and non-negative"));
    }
    if !k.strength.is_finite() || k.strength < 0.0 {
        return Err(Error::InvalidSequence("kick strengths must be finite and non-negative"));
    }
    Ok(())
}
