//! Gate-level quantum sawtooth map `ψ ↦ e^{-iT l²/2} e^{ik θ²/2} ψ` on an
//! `N = 2^{n_q}` point torus, with `θ_n = 2πn/N` and `T = 2π/N`.
//!
//! In θ-representation the register index is `n`. The momentum representation
//! is reached with the inverse QFT and holds `l` modulo `N`; the conventional
//! momentum label runs over `l + N/2 = 1..=N`.

mod husimi;
mod sound;

pub use husimi::{husimi, momentum_ordered, HusimiConfig, Smoothing, DEFAULT_L_SAMPLES};
pub use sound::{quantum_sound, QuantumSound};

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::qft::{inverse_qft_full, qft_full};
use crate::rng::GateNoise;
use crate::state::StateVector;

/// Map parameters; `T = 2π/N` and `k = K/T` are derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SawtoothParams {
    pub n_q: usize,
    /// Chaos parameter `K = kT`.
    pub chaos: f64,
    pub iterations: usize,
}

impl SawtoothParams {
    pub fn new(n_q: usize, chaos: f64, iterations: usize) -> Self {
        Self {
            n_q,
            chaos,
            iterations,
        }
    }

    pub fn dim(&self) -> usize {
        1 << self.n_q
    }

    /// `T = 2π/N`
    pub fn kinetic(&self) -> f64 {
        2.0 * PI / self.dim() as f64
    }

    /// `k = K/T`
    pub fn kick_strength(&self) -> f64 {
        self.chaos / self.kinetic()
    }

    /// Smallest momentum label, `1 - N/2`.
    pub fn min_momentum(&self) -> i64 {
        1 - (self.dim() / 2) as i64
    }

    /// Largest momentum label, `N/2`.
    pub fn max_momentum(&self) -> i64 {
        (self.dim() / 2) as i64
    }

    fn check(&self, state: &StateVector) -> Result<()> {
        if state.n_qubits() != self.n_q {
            return Err(Error::argument(format!(
                "sawtooth parameters for {} qubits applied to a {}-qubit register",
                self.n_q,
                state.n_qubits()
            )));
        }
        Ok(())
    }
}

/// Register index holding momentum `l` after the inverse QFT.
pub fn momentum_register_index(l: i64, n_q: usize) -> usize {
    l.rem_euclid(1i64 << n_q) as usize
}

/// Momentum label in `1 - N/2 ..= N/2` of a momentum-register index.
pub fn momentum_of_index(y: usize, n_q: usize) -> i64 {
    let n = 1i64 << n_q;
    let y = y as i64;
    if y > n / 2 {
        y - n
    } else {
        y
    }
}

/// `e^{i l0 θ_n}/√N` in θ-representation. Requires `l0 + N/2 ∈ 1..=N`.
pub fn momentum_eigenstate(params: &SawtoothParams, l0: i64) -> Result<StateVector> {
    if l0 < params.min_momentum() || l0 > params.max_momentum() {
        return Err(Error::Index {
            index: l0,
            limit: params.max_momentum(),
        });
    }
    let mut state = StateVector::basis(params.n_q, momentum_register_index(l0, params.n_q))?;
    qft_full(&mut state, &mut GateNoise::exact())?;
    state.reset_tally();
    Ok(state)
}

/// Applies `e^{i·coef·x²}` with `x = Σ_i weight_i a_i` as `n_q(n_q+1)/2` pair phases:
/// `coef·w_i²` on each qubit and `2·coef·w_i·w_j` on each pair `i < j`.
fn quadratic_phase(state: &mut StateVector, weights: &[f64], coef: f64, noise: &mut GateNoise) -> Result<()> {
    let two_pi = 2.0 * PI;
    for i in 0..weights.len() {
        let diag = (coef * weights[i] * weights[i]).rem_euclid(two_pi);
        state.pair_phase(i + 1, i + 1, diag, noise)?;
        for j in i + 1..weights.len() {
            let cross = (2.0 * coef * weights[i] * weights[j]).rem_euclid(two_pi);
            state.pair_phase(i + 1, j + 1, cross, noise)?;
        }
    }
    Ok(())
}

/// `e^{ik θ_n²/2}` on a θ-representation register.
pub fn apply_kick(state: &mut StateVector, params: &SawtoothParams, noise: &mut GateNoise) -> Result<()> {
    params.check(state)?;
    let step = 2.0 * PI / params.dim() as f64;
    // θ_n = step · Σ_i a_i 2^{n_q - i}
    let weights: Vec<f64> = (1..=params.n_q)
        .map(|i| step * (1u64 << (params.n_q - i)) as f64)
        .collect();
    quadratic_phase(state, &weights, params.kick_strength() / 2.0, noise)
}

/// `e^{-iT l²/2}`: inverse QFT to momentum, diagonal phase, QFT back.
///
/// The momentum register is read as a two's-complement integer, so the diagonal
/// stage uses `l ∈ [-N/2, N/2)`. With `T = 2π/N` the phase is `N`-periodic in `l`
/// and this agrees with the `1 - N/2 ..= N/2` labelling.
pub fn apply_rotation(state: &mut StateVector, params: &SawtoothParams, noise: &mut GateNoise) -> Result<()> {
    params.check(state)?;
    inverse_qft_full(state, noise)?;
    let weights: Vec<f64> = (1..=params.n_q)
        .map(|i| {
            let w = (1u64 << (params.n_q - i)) as f64;
            if i == 1 {
                -w
            } else {
                w
            }
        })
        .collect();
    quadratic_phase(state, &weights, -params.kinetic() / 2.0, noise)?;
    qft_full(state, noise)
}

/// `params.iterations` map steps, kick then rotation.
pub fn iterate_map(state: &mut StateVector, params: &SawtoothParams, noise: &mut GateNoise) -> Result<()> {
    for _ in 0..params.iterations {
        apply_kick(state, params, noise)?;
        apply_rotation(state, params, noise)?;
    }
    Ok(())
}
