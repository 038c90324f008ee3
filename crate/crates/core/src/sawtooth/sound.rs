//! Audible rendering of a θ-representation wavefunction: framewise QFT on the
//! low qubits, magnitude readout, zero-phase resynthesis.

use crate::audio::{PcmSignal, SpectrumEstimate};
use crate::error::Result;
use crate::qft::FramePlan;
use crate::readout::{run_readout, Campaign, Spectral};
use crate::rng::NoiseModel;
use crate::state::StateVector;

#[derive(Debug, Clone)]
pub struct QuantumSound {
    pub spectrum: SpectrumEstimate,
    pub signal: PcmSignal,
}

pub fn quantum_sound(
    state: &StateVector,
    frames: &FramePlan,
    campaign: Campaign,
    noise: &NoiseModel,
    rate: u32,
) -> Result<QuantumSound> {
    let (spectrum, wave) = run_readout(&Spectral, state, frames, campaign, noise)?;
    let signal = PcmSignal::for_playback(wave, rate)?;
    Ok(QuantumSound { spectrum, signal })
}
