//! Storage and recovery of audio in a simulated quantum register.
//!
//! A PCM signal is amplitude-encoded into a `2^{n_q}` state vector, transformed
//! framewise by a gate-level QFT with optional angle noise, read out by finite
//! projective measurement and rebuilt as audio. The same machinery renders the
//! wavefunction of the quantum sawtooth map as sound and as coarse phase-space
//! diagrams.

pub mod audio;
pub mod coarse;
pub mod error;
pub mod measurement;
pub mod metrics;
pub mod qft;
pub mod readout;
pub mod render;
pub mod rng;
pub mod sampling;
pub mod sawtooth;
pub mod state;
pub mod sweep;

pub use error::{Error, Result};
pub use qft::FramePlan;
pub use rng::{AngleDistribution, GateNoise, NoiseModel};
pub use state::{GateTally, StateVector};
