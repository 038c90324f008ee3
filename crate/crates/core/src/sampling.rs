//! Projective measurement in the computational basis.

use rand::Rng;

use crate::error::{Error, Result};
use crate::state::StateVector;

/// Norm deviation beyond which a register is refused for sampling.
pub const NORM_TOLERANCE: f64 = 1e-6;

/// Outcome histogram of a shot campaign, indexed by basis state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    counts: Vec<u64>,
    shots: u64,
}

impl CountTable {
    pub fn get(&self, n: usize) -> u64 {
        self.counts.get(n).copied().unwrap_or(0)
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.counts
    }

    /// `(index, count)` for every outcome that occurred.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(n, &c)| (n, c))
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let total = self.shots as f64;
        self.counts.iter().map(|&c| c as f64 / total).collect()
    }
}

impl StateVector {
    /// Draws `shots` independent full-register measurements.
    pub fn sample<R: Rng + ?Sized>(&self, shots: u64, rng: &mut R) -> Result<CountTable> {
        if shots == 0 {
            return Err(Error::argument("shot count must be >= 1"));
        }
        let norm = self.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::State(format!(
                "cannot sample an unnormalized register (norm² = {norm})"
            )));
        }
        let probs = self.probabilities();
        Ok(CountTable {
            counts: multinomial(&probs, shots, rng),
            shots,
        })
    }
}

/// Multinomial counts for `shots` draws from the (unnormalized) weights.
///
/// Shots are generated as descending order statistics of iid uniforms and matched
/// against the cumulative distribution in one sweep. Exactly `shots` uniforms are
/// consumed regardless of the weights, so two campaigns on nearby distributions
/// with the same stream give nearby histograms.
pub fn multinomial<R: Rng + ?Sized>(weights: &[f64], shots: u64, rng: &mut R) -> Vec<u64> {
    let mut counts = vec![0u64; weights.len()];
    if weights.is_empty() || shots == 0 {
        return counts;
    }
    let mut cdf = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for &w in weights {
        acc += w.max(0.0);
        cdf.push(acc);
    }
    let total = acc;
    if total <= 0.0 {
        return counts;
    }
    let mut u = 1.0f64;
    let mut idx = weights.len() - 1;
    for remaining in (1..=shots).rev() {
        // largest of `remaining` iid uniforms below the current one
        let v: f64 = 1.0 - rng.gen::<f64>();
        u *= (v.ln() / remaining as f64).exp();
        let target = u * total;
        while idx > 0 && cdf[idx - 1] > target {
            idx -= 1;
        }
        // never land on a zero-weight bin
        while idx > 0 && weights[idx] <= 0.0 {
            idx -= 1;
        }
        counts[idx] += 1;
    }
    counts
}
