//! Seeded random streams for gate noise and measurement shots.
//!
//! Every stream is a ChaCha8 keystream keyed by the 64-bit seed and selected by a
//! stream number, so independent sweep points never share generator state.

use std::collections::VecDeque;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shape of the per-gate angle perturbation `δ`, scaled by the amplitude `ε·π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AngleDistribution {
    /// `δ ~ N(0, (ε·π)²)`.
    #[default]
    Gaussian,
    /// `δ ~ U[-ε·π, +ε·π]`.
    Uniform,
}

impl AngleDistribution {
    pub fn name(&self) -> &'static str {
        match self {
            AngleDistribution::Gaussian => "gaussian",
            AngleDistribution::Uniform => "uniform",
        }
    }
}

impl std::str::FromStr for AngleDistribution {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "gaussian" => Ok(AngleDistribution::Gaussian),
            "uniform" => Ok(AngleDistribution::Uniform),
            other => Err(crate::error::Error::Argument(format!(
                "unknown noise distribution `{other}` (expected gaussian or uniform)"
            ))),
        }
    }
}

/// Gate-angle fluctuation amplitude plus the stream it draws from.
///
/// Each noisy gate perturbs its rotation angle by a fresh draw `δ` of scale
/// `ε·π`. Every draw consumes a fixed number of uniforms, so two models that
/// differ only in `ε` produce proportional perturbation sequences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub epsilon: f64,
    pub seed: u64,
    pub stream_id: u64,
    pub distribution: AngleDistribution,
}

impl NoiseModel {
    pub fn new(epsilon: f64, seed: u64, stream_id: u64) -> Self {
        assert!(epsilon >= 0.0 && epsilon.is_finite(), "epsilon must be finite and >= 0");
        Self {
            epsilon,
            seed,
            stream_id,
            distribution: AngleDistribution::default(),
        }
    }

    /// Noiseless gates; the seed only matters for shot sampling.
    pub fn exact(seed: u64) -> Self {
        Self::new(0.0, seed, 0)
    }

    pub fn with_stream(self, stream_id: u64) -> Self {
        Self { stream_id, ..self }
    }

    pub fn with_epsilon(self, epsilon: f64) -> Self {
        assert!(epsilon >= 0.0 && epsilon.is_finite(), "epsilon must be finite and >= 0");
        Self { epsilon, ..self }
    }

    pub fn with_distribution(self, distribution: AngleDistribution) -> Self {
        Self {
            distribution,
            ..self
        }
    }

    /// Perturbation source for gate angles.
    pub fn gates(&self) -> GateNoise {
        if self.epsilon == 0.0 {
            GateNoise::exact()
        } else {
            GateNoise {
                source: Source::Random {
                    scale: self.epsilon * PI,
                    distribution: self.distribution,
                    rng: Box::new(stream(self.seed, 2 * self.stream_id)),
                },
            }
        }
    }

    /// Generator for measurement shots, disjoint from the gate stream.
    pub fn shots(&self) -> ChaCha8Rng {
        stream(self.seed, 2 * self.stream_id + 1)
    }
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

#[derive(Debug, Clone)]
enum Source {
    Exact,
    Random {
        scale: f64,
        distribution: AngleDistribution,
        rng: Box<ChaCha8Rng>,
    },
    Scripted(VecDeque<f64>),
}

/// Live perturbation sequence handed to gate applications.
#[derive(Debug, Clone)]
pub struct GateNoise {
    source: Source,
}

impl GateNoise {
    pub fn exact() -> Self {
        Self {
            source: Source::Exact,
        }
    }

    /// Replays the given perturbations in order, then behaves as exact.
    pub fn scripted(deltas: impl IntoIterator<Item = f64>) -> Self {
        Self {
            source: Source::Scripted(deltas.into_iter().collect()),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.source, Source::Exact)
    }

    /// Next angle perturbation in radians.
    pub fn delta(&mut self) -> f64 {
        match &mut self.source {
            Source::Exact => 0.0,
            Source::Random {
                scale,
                distribution,
                rng,
            } => match distribution {
                AngleDistribution::Uniform => *scale * (2.0 * rng.gen::<f64>() - 1.0),
                AngleDistribution::Gaussian => {
                    // Box-Muller, cosine branch only: two uniforms per draw
                    let u1 = 1.0 - rng.gen::<f64>();
                    let u2 = rng.gen::<f64>();
                    *scale * (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
                }
            },
            Source::Scripted(queue) => queue.pop_front().unwrap_or(0.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_model_same_sequence() {
        let model = NoiseModel::new(0.3, 7, 11);
        let a: Vec<f64> = {
            let mut g = model.gates();
            (0..64).map(|_| g.delta()).collect()
        };
        let b: Vec<f64> = {
            let mut g = model.gates();
            (0..64).map(|_| g.delta()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn streams_differ() {
        let mut a = NoiseModel::new(0.3, 7, 0).gates();
        let mut b = NoiseModel::new(0.3, 7, 1).gates();
        assert_ne!(a.delta(), b.delta());
    }

    #[test]
    fn uniform_deltas_bounded_by_amplitude() {
        let mut g = NoiseModel::new(0.05, 1, 0)
            .with_distribution(AngleDistribution::Uniform)
            .gates();
        for _ in 0..10_000 {
            assert!(g.delta().abs() <= 0.05 * PI);
        }
    }

    #[test]
    fn gaussian_deltas_have_rms_amplitude() {
        let mut g = NoiseModel::new(0.1, 3, 0).gates();
        let n = 200_000;
        let draws: Vec<f64> = (0..n).map(|_| g.delta()).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let rms = (draws.iter().map(|d| d * d).sum::<f64>() / n as f64).sqrt();
        let sigma = 0.1 * PI;
        // standard errors: σ/√n for the mean, σ/√(2n) for the rms
        assert!(mean.abs() < 5.0 * sigma / (n as f64).sqrt());
        assert!((rms - sigma).abs() < 5.0 * sigma / (2.0 * n as f64).sqrt());
    }

    #[test]
    fn distribution_parsing() {
        assert_eq!("uniform".parse::<AngleDistribution>().unwrap(), AngleDistribution::Uniform);
        assert_eq!("gaussian".parse::<AngleDistribution>().unwrap(), AngleDistribution::Gaussian);
        assert!("cauchy".parse::<AngleDistribution>().is_err());
    }

    #[test]
    fn zero_epsilon_is_exact() {
        let mut g = NoiseModel::new(0.0, 1, 3).gates();
        assert!(g.is_exact());
        assert_eq!(g.delta(), 0.0);
    }

    #[test]
    fn perturbations_scale_with_epsilon() {
        // Same stream at two amplitudes: draws are the same uniforms, rescaled.
        for dist in [AngleDistribution::Gaussian, AngleDistribution::Uniform] {
            let mut a = NoiseModel::new(0.01, 5, 2).with_distribution(dist).gates();
            let mut b = NoiseModel::new(0.1, 5, 2).with_distribution(dist).gates();
            for _ in 0..100 {
                let (da, db) = (a.delta(), b.delta());
                assert!((db - 10.0 * da).abs() < 1e-12);
            }
        }
    }
}
