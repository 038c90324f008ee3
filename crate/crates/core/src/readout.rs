//! Readout strategies: how an encoded register is turned back into audio.
//!
//! Each strategy decides what happens to the register before measurement and how
//! a magnitude grid becomes a waveform. Strategies are registered by name and
//! looked up at runtime, so sweeps and the CLI iterate over whatever is registered.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::audio::{spectral_waveform, Provenance, SpectrumEstimate};
use crate::error::{Error, Result};
use crate::measurement::{estimate_spectrum, exact_spectrum, MeasurementMode, MeasurementPlan};
use crate::qft::{qft_low_qubits, FramePlan};
use crate::rng::{GateNoise, NoiseModel};
use crate::state::StateVector;

pub trait Readout: Send + Sync {
    fn name(&self) -> &'static str;

    /// Transforms the encoded register in place before it is measured.
    fn prepare(&self, state: &mut StateVector, frames: &FramePlan, noise: &mut GateNoise) -> Result<()>;

    /// Waveform rebuilt from measured magnitudes (unscaled).
    fn waveform(&self, estimate: &SpectrumEstimate) -> Vec<f64>;
}

/// Direct measurement of `|s_n|`: `s̃_n = |ŝ_n|`.
#[derive(Debug, Default, Clone, Copy)]
pub struct TimeDomain;

impl Readout for TimeDomain {
    fn name(&self) -> &'static str {
        "time"
    }

    fn prepare(&self, _: &mut StateVector, _: &FramePlan, _: &mut GateNoise) -> Result<()> {
        Ok(())
    }

    fn waveform(&self, estimate: &SpectrumEstimate) -> Vec<f64> {
        estimate.magnitudes().to_vec()
    }
}

/// Framewise QFT, magnitude measurement, zero-phase inverse: `Re s'_n`.
#[derive(Debug, Default, Clone, Copy)]
pub struct Spectral;

impl Readout for Spectral {
    fn name(&self) -> &'static str {
        "spectral"
    }

    fn prepare(&self, state: &mut StateVector, frames: &FramePlan, noise: &mut GateNoise) -> Result<()> {
        qft_low_qubits(state, frames, noise)
    }

    fn waveform(&self, estimate: &SpectrumEstimate) -> Vec<f64> {
        spectral_waveform(estimate)
    }
}

#[derive(Clone, Default)]
pub struct ReadoutRegistry {
    readouts: BTreeMap<String, Arc<dyn Readout>>,
}

impl ReadoutRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// `time` and `spectral`.
    pub fn builtin() -> Self {
        let mut registry = Self::new();
        registry.register(Arc::new(TimeDomain));
        registry.register(Arc::new(Spectral));
        registry
    }

    pub fn register(&mut self, readout: Arc<dyn Readout>) {
        self.readouts.insert(readout.name().to_string(), readout);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Readout>> {
        self.readouts
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownReadout(name.to_string()))
    }

    /// Registered names in sorted order.
    pub fn names(&self) -> Vec<&str> {
        self.readouts.keys().map(String::as_str).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn Readout>> {
        self.readouts.values()
    }
}

impl std::fmt::Debug for ReadoutRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ReadoutRegistry")
            .field("readouts", &self.names())
            .finish()
    }
}

/// Shot budget for one readout run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Campaign {
    pub mode: MeasurementMode,
    /// `None` is the infinite-measurement limit.
    pub shots_per_frame: Option<u64>,
}

impl Campaign {
    pub fn exact() -> Self {
        Self {
            mode: MeasurementMode::Total,
            shots_per_frame: None,
        }
    }

    pub fn shots(mode: MeasurementMode, shots_per_frame: u64) -> Self {
        Self {
            mode,
            shots_per_frame: Some(shots_per_frame),
        }
    }
}

/// Prepares, measures and reconstructs; returns the measured grid and the waveform.
pub fn run_readout(
    readout: &dyn Readout,
    encoded: &StateVector,
    frames: &FramePlan,
    campaign: Campaign,
    noise: &NoiseModel,
) -> Result<(SpectrumEstimate, Vec<f64>)> {
    let mut state = encoded.clone();
    let mut gates = noise.gates();
    readout.prepare(&mut state, frames, &mut gates)?;
    let estimate = match campaign.shots_per_frame {
        None => exact_spectrum(&state, frames)?,
        Some(m) => {
            let plan = MeasurementPlan::new(campaign.mode, m, *frames);
            let est = estimate_spectrum(&state, &plan, &mut noise.shots())?;
            if noise.epsilon > 0.0 {
                est.with_provenance(Provenance::SampledNoisy {
                    shots: plan.total_shots(),
                    epsilon: noise.epsilon,
                })
            } else {
                est
            }
        }
    };
    let wave = readout.waveform(&estimate);
    Ok((estimate, wave))
}

/// Infinite-statistics, noiseless reconstruction of the same readout.
pub fn ideal_waveform(readout: &dyn Readout, encoded: &StateVector, frames: &FramePlan) -> Result<Vec<f64>> {
    run_readout(readout, encoded, frames, Campaign::exact(), &NoiseModel::exact(0)).map(|(_, w)| w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audio::encode_samples;

    #[test]
    fn builtin_names() {
        let r = ReadoutRegistry::builtin();
        assert_eq!(r.names(), vec!["spectral", "time"]);
        assert!(matches!(r.get("mp3"), Err(Error::UnknownReadout(_))));
    }

    #[test]
    fn time_readout_is_rectified_signal() {
        let samples = [0.3, -0.4, 0.0, 0.5];
        let enc = encode_samples(&samples, 2).unwrap();
        let frames = FramePlan::new(2, 1).unwrap();
        let wave = ideal_waveform(&TimeDomain, &enc, &frames).unwrap();
        let norm = samples.iter().map(|s| s * s).sum::<f64>().sqrt();
        for (w, s) in wave.iter().zip(samples) {
            assert!((w - s.abs() / norm).abs() < 1e-15);
        }
    }

    #[test]
    fn noisy_provenance_recorded() {
        let enc = encode_samples(&[0.1, 0.2, 0.3, 0.4], 2).unwrap();
        let frames = FramePlan::new(2, 2).unwrap();
        let (est, _) = run_readout(
            &Spectral,
            &enc,
            &frames,
            Campaign::shots(MeasurementMode::Total, 10),
            &NoiseModel::new(0.1, 1, 0),
        )
        .unwrap();
        assert_eq!(
            est.provenance(),
            Provenance::SampledNoisy {
                shots: 10,
                epsilon: 0.1
            }
        );
    }
}
