//! Shared flags: signal source, register size, lists.

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::Context;
use qsonus_core::audio::{load_wav, qubits_for, synth_speech_like, PcmSignal, SpeechParams};
use qsonus_core::state::MAX_QUBITS;
use qsonus_core::{AngleDistribution, NoiseModel};

use crate::exit::{Failure, BAD_INPUT, EMPTY_LIST};

#[derive(clap::Args, Debug, Clone)]
pub struct SignalArgs {
    /// Mono 16-bit PCM WAV to encode.
    #[arg(long = "in", value_name = "WAV", required_unless_present = "synthetic", conflicts_with = "synthetic")]
    pub input: Option<PathBuf>,
    /// Use the built-in speech-like test signal instead of a file.
    #[arg(long)]
    pub synthetic: bool,
    /// Synthetic signal length in seconds.
    #[arg(long, default_value_t = 4.0)]
    pub duration: f64,
    /// Synthetic signal sampling rate in Hz.
    #[arg(long, default_value_t = qsonus_core::audio::DEFAULT_AUDIO_RATE)]
    pub rate: u32,
    /// Register size; defaults to the smallest that holds the signal.
    #[arg(long)]
    pub nq: Option<usize>,
    /// Frame qubits, frame length 2^nf.
    #[arg(long, default_value_t = qsonus_core::audio::DEFAULT_AUDIO_FRAME_QUBITS)]
    pub nf: usize,
}

pub struct Loaded {
    pub signal: PcmSignal,
    pub n_q: usize,
}

impl SignalArgs {
    pub fn load(&self, seed: u64) -> Result<Loaded, Failure> {
        let signal = match &self.input {
            Some(path) => load_wav(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(|e| Failure::new(BAD_INPUT, e))?,
            None => synth_speech_like(&SpeechParams::new(self.duration, self.rate, seed))?,
        };
        let n_q = self.nq.unwrap_or_else(|| qubits_for(signal.len()));
        check_register(n_q, self.nf)?;
        if signal.len() > 1usize << n_q {
            return Err(Failure::size(format!(
                "{} samples do not fit in {n_q} qubits ({} amplitudes)",
                signal.len(),
                1usize << n_q
            )));
        }
        Ok(Loaded { signal, n_q })
    }
}

pub fn check_register(n_q: usize, n_f: usize) -> Result<(), Failure> {
    if n_q == 0 || n_q > MAX_QUBITS {
        return Err(Failure::size(format!("--nq {n_q} outside 1..={MAX_QUBITS}")));
    }
    if n_f == 0 || n_f > n_q {
        return Err(Failure::size(format!("--nf {n_f} outside 1..={n_q}")));
    }
    Ok(())
}

#[derive(clap::Args, Debug, Clone)]
pub struct NoiseArgs {
    /// Gate-angle fluctuation amplitude ε (angles perturbed on the scale ε·π).
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Distribution of gate-angle perturbations.
    #[arg(long = "noise-dist", default_value = "gaussian")]
    pub noise_dist: AngleDistribution,
}

impl NoiseArgs {
    pub fn model(&self, epsilon: f64, stream: u64) -> Result<NoiseModel, Failure> {
        check_epsilon(epsilon)?;
        Ok(NoiseModel::new(epsilon, self.seed, stream).with_distribution(self.noise_dist))
    }
}

pub fn check_epsilon(eps: f64) -> Result<(), Failure> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Failure::usage(format!("noise amplitude {eps} must be finite and >= 0")));
    }
    Ok(())
}

/// Comma-separated list; an empty list is its own error.
pub fn parse_list<T: FromStr>(flag: &str, raw: &str) -> Result<Vec<T>, Failure> {
    let items: Vec<&str> = raw.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if items.is_empty() {
        return Err(Failure::new(EMPTY_LIST, anyhow::anyhow!("{flag} list is empty")));
    }
    items
        .iter()
        .map(|s| {
            s.parse()
                .map_err(|_| Failure::usage(format!("{flag}: cannot parse `{s}`")))
        })
        .collect()
}

/// Output path `<out>.<suffix>`.
pub fn output(out: &std::path::Path, suffix: &str) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list::<u64>("--M", "5, 20,100").unwrap(), vec![5, 20, 100]);
        assert_eq!(parse_list::<u64>("--M", " , ").unwrap_err().code, EMPTY_LIST);
        assert_eq!(parse_list::<f64>("--epsilon-list", "0.1,x").unwrap_err().code, BAD_INPUT);
    }

    #[test]
    fn output_suffix() {
        let p = output(std::path::Path::new("dir/run.1"), "time.wav");
        assert_eq!(p, PathBuf::from("dir/run.1.time.wav"));
    }
}
