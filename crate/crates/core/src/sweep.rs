//! Fidelity sweeps over shot budgets and gate-noise amplitudes.

use std::io::Write;

use rayon::prelude::*;

use crate::audio::encode_samples;
use crate::error::{Error, Result};
use crate::measurement::MeasurementMode;
use crate::metrics::{fidelity, fit_quadratic, mean_and_stderr, QuadraticFit};
use crate::qft::FramePlan;
use crate::readout::{ideal_waveform, run_readout, Campaign, ReadoutRegistry};
use crate::rng::{AngleDistribution, NoiseModel};

/// What a finite-statistics reconstruction is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reference {
    /// Infinite-shot, noiseless output of the same readout.
    #[default]
    Ideal,
    /// The encoded signal itself.
    Original,
}

impl Reference {
    pub fn name(&self) -> &'static str {
        match self {
            Reference::Ideal => "ideal",
            Reference::Original => "original",
        }
    }
}

impl std::str::FromStr for Reference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ideal" => Ok(Reference::Ideal),
            "original" => Ok(Reference::Original),
            other => Err(Error::argument(format!("unknown reference `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n_q: usize,
    pub n_f: usize,
    pub shots_per_frame: Vec<u64>,
    pub epsilons: Vec<f64>,
    pub realizations: usize,
    pub mode: MeasurementMode,
    pub seed: u64,
    pub reference: Reference,
    /// Readout names to run; empty means every registered readout.
    pub readouts: Vec<String>,
    pub distribution: AngleDistribution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FidelityReport {
    pub pipeline: String,
    pub shots_per_frame: u64,
    pub epsilon: f64,
    pub n_f: usize,
    pub seed: u64,
    pub realization: usize,
    pub fidelity: f64,
}

/// Noise stream of one realization; shared across shot budgets and ε so that
/// neighbouring grid points see the same underlying draws.
pub fn stream_id(readout_index: usize, realization: usize) -> u64 {
    (realization as u64) << 8 | readout_index as u64
}

pub fn run_sweep(
    samples: &[f64],
    config: &SweepConfig,
    registry: &ReadoutRegistry,
) -> Result<Vec<FidelityReport>> {
    if config.shots_per_frame.is_empty() || config.epsilons.is_empty() {
        return Err(Error::argument("shot and noise lists must be nonempty"));
    }
    if config.realizations == 0 {
        return Err(Error::argument("need at least one realization"));
    }
    if config.shots_per_frame.contains(&0) {
        return Err(Error::argument("shots per frame must be positive"));
    }
    if let Some(e) = config.epsilons.iter().find(|e| **e < 0.0 || !e.is_finite()) {
        return Err(Error::argument(format!("noise amplitude {e} must be finite and >= 0")));
    }
    let frames = FramePlan::new(config.n_q, config.n_f)?;
    let encoded = encode_samples(samples, config.n_q)?;
    let names: Vec<String> = if config.readouts.is_empty() {
        registry.names().iter().map(|s| s.to_string()).collect()
    } else {
        config.readouts.clone()
    };
    let readouts = names
        .iter()
        .map(|n| registry.get(n))
        .collect::<Result<Vec<_>>>()?;

    let mut original = vec![0.0; frames.len()];
    original[..samples.len()].copy_from_slice(samples);
    let references = readouts
        .iter()
        .map(|r| match config.reference {
            Reference::Ideal => ideal_waveform(r.as_ref(), &encoded, &frames),
            Reference::Original => Ok(original.clone()),
        })
        .collect::<Result<Vec<_>>>()?;

    let mut points = Vec::new();
    for p in 0..readouts.len() {
        for &m in &config.shots_per_frame {
            for &eps in &config.epsilons {
                for r in 0..config.realizations {
                    points.push((p, m, eps, r));
                }
            }
        }
    }

    points
        .par_iter()
        .map(|&(p, m, eps, r)| {
            let noise = NoiseModel::new(eps, config.seed, stream_id(p, r)).with_distribution(config.distribution);
            let (_, wave) = run_readout(
                readouts[p].as_ref(),
                &encoded,
                &frames,
                Campaign::shots(config.mode, m),
                &noise,
            )?;
            Ok(FidelityReport {
                pipeline: names[p].clone(),
                shots_per_frame: m,
                epsilon: eps,
                n_f: config.n_f,
                seed: config.seed,
                realization: r,
                fidelity: fidelity(&references[p], &wave)?,
            })
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(reports: &[FidelityReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["pipeline", "M", "epsilon", "realization", "fidelity"])?;
    for r in reports {
        w.write_record([
            r.pipeline.clone(),
            r.shots_per_frame.to_string(),
            r.epsilon.to_string(),
            r.realization.to_string(),
            r.fidelity.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub pipeline: String,
    pub shots_per_frame: u64,
    pub epsilon: f64,
    pub mean: f64,
    pub stderr: f64,
    pub realizations: usize,
}

/// Mean fidelity per (pipeline, M, ε), in first-appearance order.
pub fn summarize(reports: &[FidelityReport]) -> Vec<SweepSummary> {
    let mut keys: Vec<(String, u64, f64)> = Vec::new();
    for r in reports {
        let key = (r.pipeline.clone(), r.shots_per_frame, r.epsilon);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(pipeline, m, eps)| {
            let values: Vec<f64> = reports
                .iter()
                .filter(|r| r.pipeline == pipeline && r.shots_per_frame == m && r.epsilon == eps)
                .map(|r| r.fidelity)
                .collect();
            let (mean, stderr) = mean_and_stderr(&values);
            SweepSummary {
                pipeline,
                shots_per_frame: m,
                epsilon: eps,
                mean,
                stderr,
                realizations: values.len(),
            }
        })
        .collect()
}

pub fn mean_fidelity(summary: &[SweepSummary], pipeline: &str, m: u64, eps: f64) -> Option<f64> {
    summary
        .iter()
        .find(|s| s.pipeline == pipeline && s.shots_per_frame == m && s.epsilon == eps)
        .map(|s| s.mean)
}

/// Quadratic-law fit of one pipeline's mean fidelities at shot budget `m`.
pub fn fit_sweep(summary: &[SweepSummary], pipeline: &str, m: u64, n_f: usize) -> Result<QuadraticFit> {
    let points: Vec<(f64, f64)> = summary
        .iter()
        .filter(|s| s.pipeline == pipeline && s.shots_per_frame == m)
        .map(|s| (s.epsilon, s.mean))
        .collect();
    fit_quadratic(&points, n_f)
}
