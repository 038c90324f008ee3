//! Quantum Fourier transform over the low `n_f` qubits (framewise) or the whole
//! register, plus the classical unitary DFT used as its oracle and as the
//! reconstruction backend.
//!
//! Convention: the forward transform has kernel `e^{+2πi jm/Δn}/√Δn`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::rng::GateNoise;
use crate::state::StateVector;

/// Split of the register into frame number (high qubits) and harmonic (low qubits).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FramePlan {
    n_q: usize,
    n_f: usize,
}

impl FramePlan {
    pub fn new(n_q: usize, n_f: usize) -> Result<Self> {
        if n_f == 0 || n_f > n_q {
            return Err(Error::argument(format!(
                "frame qubits {n_f} must be in 1..={n_q}"
            )));
        }
        Ok(Self { n_q, n_f })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_q
    }

    pub fn frame_qubits(&self) -> usize {
        self.n_f
    }

    /// K = 2^{n_q - n_f}
    pub fn frame_count(&self) -> usize {
        1 << (self.n_q - self.n_f)
    }

    /// Δn = 2^{n_f}
    pub fn frame_size(&self) -> usize {
        1 << self.n_f
    }

    pub fn len(&self) -> usize {
        1 << self.n_q
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Most significant qubit of the frame block.
    fn first_frame_qubit(&self) -> usize {
        self.n_q - self.n_f + 1
    }

    fn check(&self, state: &StateVector) -> Result<()> {
        if state.n_qubits() != self.n_q {
            return Err(Error::argument(format!(
                "frame plan for {} qubits applied to a {}-qubit register",
                self.n_q,
                state.n_qubits()
            )));
        }
        Ok(())
    }
}

/// Controlled-phase angle between frame qubits `i < j` (offsets from the block top).
fn rotation_angle(i: usize, j: usize) -> f64 {
    2.0 * PI / (1u64 << (j - i + 1)) as f64
}

/// Framewise QFT: a Δn-point DFT on each of the K contiguous frames.
///
/// Uses `n_f` Hadamards and `n_f(n_f-1)/2` controlled phases followed by noiseless
/// bit-reversal swaps, so the output reads `|k, j>` with `j` in the low qubits.
pub fn qft_low_qubits(state: &mut StateVector, plan: &FramePlan, noise: &mut GateNoise) -> Result<()> {
    plan.check(state)?;
    let top = plan.first_frame_qubit();
    let n_f = plan.n_f;
    for i in 0..n_f {
        state.hadamard(top + i, noise)?;
        for j in i + 1..n_f {
            state.controlled_phase(top + j, top + i, rotation_angle(i, j), noise)?;
        }
    }
    for i in 0..n_f / 2 {
        state.swap(top + i, top + n_f - 1 - i)?;
    }
    Ok(())
}

/// Adjoint of [`qft_low_qubits`]: gates in reverse order with negated angles.
pub fn inverse_qft_low_qubits(
    state: &mut StateVector,
    plan: &FramePlan,
    noise: &mut GateNoise,
) -> Result<()> {
    plan.check(state)?;
    let top = plan.first_frame_qubit();
    let n_f = plan.n_f;
    for i in (0..n_f / 2).rev() {
        state.swap(top + i, top + n_f - 1 - i)?;
    }
    for i in (0..n_f).rev() {
        for j in (i + 1..n_f).rev() {
            state.controlled_phase(top + j, top + i, -rotation_angle(i, j), noise)?;
        }
        state.hadamard(top + i, noise)?;
    }
    Ok(())
}

pub fn qft_full(state: &mut StateVector, noise: &mut GateNoise) -> Result<()> {
    let plan = FramePlan::new(state.n_qubits(), state.n_qubits())?;
    qft_low_qubits(state, &plan, noise)
}

pub fn inverse_qft_full(state: &mut StateVector, noise: &mut GateNoise) -> Result<()> {
    let plan = FramePlan::new(state.n_qubits(), state.n_qubits())?;
    inverse_qft_low_qubits(state, &plan, noise)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// kernel `e^{+2πi jm/Δn}/√Δn`
    Forward,
    /// kernel `e^{-2πi jm/Δn}/√Δn`
    Inverse,
}

/// In-place unitary DFT of every consecutive `frame`-long block of `data`.
pub fn classical_fft_frames(data: &mut [Complex64], frame: usize, direction: Direction) -> Result<()> {
    if frame == 0 || !frame.is_power_of_two() {
        return Err(Error::argument(format!("frame length {frame} is not a power of two")));
    }
    if !data.len().is_multiple_of(frame) {
        return Err(Error::argument(format!(
            "buffer length {} is not a multiple of frame length {frame}",
            data.len()
        )));
    }
    let mut planner = FftPlanner::new();
    // rustfft's forward kernel is e^{-2πi jm/n}
    let fft = match direction {
        Direction::Forward => planner.plan_fft_inverse(frame),
        Direction::Inverse => planner.plan_fft_forward(frame),
    };
    fft.process(data);
    let scale = 1.0 / (frame as f64).sqrt();
    data.iter_mut().for_each(|x| *x *= scale);
    Ok(())
}

/// Unitary DFT of a single power-of-two frame.
pub fn classical_fft_frame(samples: &[Complex64], direction: Direction) -> Result<Vec<Complex64>> {
    let mut out = samples.to_vec();
    classical_fft_frames(&mut out, samples.len(), direction)?;
    Ok(out)
}
