//! Classical audio on both sides of the register: PCM signals, amplitude
//! encoding, and the time-domain and zero-phase spectral reconstructions.

mod synth;
mod wav;

pub use synth::{significant_harmonics, synth_speech_like, SpeechParams, SIGNIFICANCE_THRESHOLD};
pub use wav::{encode_wav, load_wav, parse_wav, quantize, save_wav, CLIP};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qft::{classical_fft_frames, Direction, FramePlan};
use crate::state::StateVector;

/// Peak level of every reconstructed waveform handed to playback.
pub const PLAYBACK_PEAK: f64 = 0.9;

pub const DEFAULT_AUDIO_RATE: u32 = 8000;
pub const DEFAULT_SAWTOOTH_RATE: u32 = 1000;
/// Δn = 512 for speech.
pub const DEFAULT_AUDIO_FRAME_QUBITS: usize = 9;
pub const DEFAULT_SAWTOOTH_FRAME_QUBITS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct PcmSignal {
    samples: Vec<f64>,
    rate: u32,
}

impl PcmSignal {
    /// Samples must be finite and strictly inside (-1, 1).
    pub fn new(samples: Vec<f64>, rate: u32) -> Result<Self> {
        if let Some(bad) = samples.iter().find(|s| s.is_nan() || s.abs() >= 1.0) {
            return Err(Error::argument(format!("sample {bad} outside (-1, 1)")));
        }
        Self::from_raw(samples, rate)
    }

    /// Decoded PCM16 may hit -1.0 exactly.
    pub(crate) fn from_raw(samples: Vec<f64>, rate: u32) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::argument("signal has no samples"));
        }
        if rate == 0 {
            return Err(Error::argument("sample rate must be positive"));
        }
        if let Some(bad) = samples.iter().find(|s| s.is_nan() || s.abs() > 1.0) {
            return Err(Error::argument(format!("sample {bad} outside [-1, 1]")));
        }
        Ok(Self { samples, rate })
    }

    /// Rescales an arbitrary finite waveform to peak [`PLAYBACK_PEAK`]; silence stays silent.
    pub fn for_playback(mut samples: Vec<f64>, rate: u32) -> Result<Self> {
        let peak = samples.iter().fold(0.0f64, |m, s| m.max(s.abs()));
        if !peak.is_finite() {
            return Err(Error::argument("waveform contains non-finite samples"));
        }
        if peak > 0.0 {
            let gain = PLAYBACK_PEAK / peak;
            samples.iter_mut().for_each(|s| *s *= gain);
        }
        Self::new(samples, rate)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn rate(&self) -> u32 {
        self.rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_secs(&self) -> f64 {
        self.samples.len() as f64 / self.rate as f64
    }

    pub fn peak(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, s| m.max(s.abs()))
    }
}

/// Smallest register that holds `len` samples.
pub fn qubits_for(len: usize) -> usize {
    len.next_power_of_two().trailing_zeros().max(1) as usize
}

/// `ψ = A Σ s_n |n>`, zero padded at the tail to `2^{n_q}` amplitudes.
pub fn encode(signal: &PcmSignal, n_q: usize) -> Result<StateVector> {
    encode_samples(signal.samples(), n_q)
}

pub fn encode_samples(samples: &[f64], n_q: usize) -> Result<StateVector> {
    if n_q == 0 || n_q > crate::state::MAX_QUBITS {
        return Err(Error::argument(format!("qubit count {n_q} unsupported")));
    }
    let capacity = 1usize << n_q;
    if samples.len() > capacity {
        return Err(Error::Capacity {
            samples: samples.len(),
            capacity,
        });
    }
    let energy: f64 = samples.iter().map(|s| s * s).sum();
    if energy == 0.0 {
        return Err(Error::Degenerate("cannot normalize an all-zero signal".into()));
    }
    let a = 1.0 / energy.sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); capacity];
    for (amp, &s) in amps.iter_mut().zip(samples) {
        *amp = Complex64::new(a * s, 0.0);
    }
    StateVector::from_amplitudes(amps)
}

/// Where a magnitude grid came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance {
    Exact,
    Sampled { shots: u64 },
    SampledNoisy { shots: u64, epsilon: f64 },
}

/// Per-frame harmonic magnitudes `|Ŝ_{k,j}|`, row-major `[K × Δn]` so that the
/// flat index equals the register basis index `k·Δn + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEstimate {
    plan: FramePlan,
    magnitudes: Vec<f64>,
    provenance: Provenance,
}

impl SpectrumEstimate {
    pub fn new(plan: FramePlan, magnitudes: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if magnitudes.len() != plan.len() {
            return Err(Error::argument(format!(
                "{} magnitudes for a {}-amplitude plan",
                magnitudes.len(),
                plan.len()
            )));
        }
        if let Some(bad) = magnitudes.iter().find(|m| m.is_nan() || **m < 0.0) {
            return Err(Error::argument(format!("negative or NaN magnitude {bad}")));
        }
        Ok(Self {
            plan,
            magnitudes,
            provenance,
        })
    }

    pub fn plan(&self) -> &FramePlan {
        &self.plan
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn with_provenance(self, provenance: Provenance) -> Self {
        Self { provenance, ..self }
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitudes
    }

    pub fn frame(&self, k: usize) -> &[f64] {
        let size = self.plan.frame_size();
        &self.magnitudes[k * size..(k + 1) * size]
    }

    pub fn get(&self, k: usize, j: usize) -> f64 {
        self.magnitudes[k * self.plan.frame_size() + j]
    }

    pub fn energy(&self) -> f64 {
        self.magnitudes.iter().map(|m| m * m).sum()
    }
}

/// `s̃_n = |s_n|` estimates, at playback level.
pub fn recover_time_domain(magnitudes: &[f64], rate: u32) -> Result<PcmSignal> {
    if let Some(bad) = magnitudes.iter().find(|m| m.is_nan() || **m < 0.0) {
        return Err(Error::argument(format!("negative or NaN magnitude {bad}")));
    }
    PcmSignal::for_playback(magnitudes.to_vec(), rate)
}

/// `Re s'_n` with `s'_n = Σ_j |S_{k,j}| e^{2πi jm/Δn}`, `n = kΔn + m`, unscaled.
pub fn spectral_waveform(estimate: &SpectrumEstimate) -> Vec<f64> {
    let size = estimate.plan().frame_size();
    let mut buf: Vec<Complex64> = estimate
        .magnitudes()
        .iter()
        .map(|&m| Complex64::new(m, 0.0))
        .collect();
    classical_fft_frames(&mut buf, size, Direction::Forward)
        .expect("frame size is a power of two by construction");
    let gain = (size as f64).sqrt();
    buf.iter().map(|z| z.re * gain).collect()
}

/// Zero-phase spectral reconstruction at playback level.
pub fn recover_spectral(estimate: &SpectrumEstimate, rate: u32) -> Result<PcmSignal> {
    PcmSignal::for_playback(spectral_waveform(estimate), rate)
}

/// `|DFT|` of each Δn-sample frame of a real waveform (zero padded to whole frames).
pub fn frame_magnitude_spectra(samples: &[f64], frame: usize) -> Result<Vec<f64>> {
    if frame == 0 || !frame.is_power_of_two() {
        return Err(Error::argument(format!("frame length {frame} is not a power of two")));
    }
    let padded = samples.len().div_ceil(frame).max(1) * frame;
    let mut buf: Vec<Complex64> = samples.iter().map(|&s| Complex64::new(s, 0.0)).collect();
    buf.resize(padded, Complex64::new(0.0, 0.0));
    classical_fft_frames(&mut buf, frame, Direction::Forward)?;
    Ok(buf.iter().map(|z| z.norm()).collect())
}
