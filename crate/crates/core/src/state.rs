//! Dense state-vector register and the elementary gates used by the QFT and
//! the sawtooth map.
//!
//! Qubits are numbered `1..=n_q` with qubit 1 the most significant digit of the
//! basis index, so `|n> = |a_1 ... a_{n_q}>` reads `n` in binary.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng::GateNoise;

/// Largest register this simulator will allocate.
pub const MAX_QUBITS: usize = 30;

/// Per-kind gate counters for a circuit run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GateTally {
    pub hadamards: u64,
    pub controlled_phases: u64,
    pub swaps: u64,
    pub diagonal_pair_phases: u64,
}

impl GateTally {
    /// Hadamards plus controlled phases: the rotations a QFT is charged for.
    pub fn rotations(&self) -> u64 {
        self.hadamards + self.controlled_phases
    }

    pub fn noisy_gates(&self) -> u64 {
        self.hadamards + self.controlled_phases + self.diagonal_pair_phases
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_q: usize,
    amps: Vec<Complex64>,
    tally: GateTally,
}

impl StateVector {
    /// Computational basis state `|n0>`.
    pub fn basis(n_q: usize, n0: usize) -> Result<Self> {
        check_width(n_q)?;
        let len = 1usize << n_q;
        if n0 >= len {
            return Err(Error::Index {
                index: n0 as i64,
                limit: len as i64,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        amps[n0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_q,
            amps,
            tally: GateTally::default(),
        })
    }

    /// Wraps raw amplitudes. The length must be a power of two; no normalization
    /// is applied.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::argument(format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        let n_q = len.trailing_zeros() as usize;
        check_width(n_q)?;
        Ok(Self {
            n_q,
            amps,
            tally: GateTally::default(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_q
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn tally(&self) -> GateTally {
        self.tally
    }

    pub fn reset_tally(&mut self) {
        self.tally = GateTally::default();
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.len(), other.len(), "register sizes differ");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest per-amplitude deviation between two registers.
    pub fn max_deviation(&self, other: &StateVector) -> f64 {
        assert_eq!(self.len(), other.len(), "register sizes differ");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn mask(&self, q: usize) -> Result<usize> {
        if q == 0 || q > self.n_q {
            return Err(Error::Index {
                index: q as i64,
                limit: self.n_q as i64,
            });
        }
        Ok(1usize << (self.n_q - q))
    }

    /// Hadamard on qubit `q`, realised as `i·exp(-iα(X+Z)/√2)` at `α = π/2 + δ`.
    ///
    /// At `δ = 0` this is exactly H; any δ leaves the gate unitary.
    pub fn hadamard(&mut self, q: usize, noise: &mut GateNoise) -> Result<()> {
        let bit = self.mask(q)?;
        let delta = noise.delta();
        // α = π/2 + δ  ⇒  cos α = -sin δ, sin α = cos δ
        let (cos_a, sin_a) = (-delta.sin(), delta.cos());
        let h = sin_a * FRAC_1_SQRT_2;
        let diag = Complex64::new(0.0, cos_a);
        let u00 = diag + h;
        let u11 = diag - h;
        let off = Complex64::new(h, 0.0);
        for base in 0..self.amps.len() {
            if base & bit != 0 {
                continue;
            }
            let a0 = self.amps[base];
            let a1 = self.amps[base | bit];
            self.amps[base] = u00 * a0 + off * a1;
            self.amps[base | bit] = off * a0 + u11 * a1;
        }
        self.tally.hadamards += 1;
        Ok(())
    }

    /// Multiplies amplitudes with `a_control = a_target = 1` by `e^{i(angle+δ)}`.
    pub fn controlled_phase(
        &mut self,
        control: usize,
        target: usize,
        angle: f64,
        noise: &mut GateNoise,
    ) -> Result<()> {
        if control == target {
            return Err(Error::argument(format!(
                "controlled phase needs distinct qubits, got {control} twice"
            )));
        }
        let mask = self.mask(control)? | self.mask(target)?;
        self.phase_on_mask(mask, angle + noise.delta());
        self.tally.controlled_phases += 1;
        Ok(())
    }

    /// Diagonal phase on the `a_q1 = a_q2 = 1` subspace; `q1 == q2` is a single-qubit phase.
    pub fn pair_phase(
        &mut self,
        q1: usize,
        q2: usize,
        angle: f64,
        noise: &mut GateNoise,
    ) -> Result<()> {
        let mask = self.mask(q1)? | self.mask(q2)?;
        self.phase_on_mask(mask, angle + noise.delta());
        self.tally.diagonal_pair_phases += 1;
        Ok(())
    }

    fn phase_on_mask(&mut self, mask: usize, angle: f64) {
        let phase = Complex64::from_polar(1.0, angle);
        for (n, a) in self.amps.iter_mut().enumerate() {
            if n & mask == mask {
                *a *= phase;
            }
        }
    }

    /// Exchanges qubits `q1` and `q2`. Always exact.
    pub fn swap(&mut self, q1: usize, q2: usize) -> Result<()> {
        if q1 == q2 {
            return Err(Error::argument(format!("swap needs distinct qubits, got {q1} twice")));
        }
        let (b1, b2) = (self.mask(q1)?, self.mask(q2)?);
        for n in 0..self.amps.len() {
            // visit each exchanged pair once, from the |..1..0..> side
            if n & b1 != 0 && n & b2 == 0 {
                self.amps.swap(n, n ^ b1 ^ b2);
            }
        }
        self.tally.swaps += 1;
        Ok(())
    }
}

fn check_width(n_q: usize) -> Result<()> {
    if n_q == 0 || n_q > MAX_QUBITS {
        return Err(Error::argument(format!(
            "qubit count {n_q} outside 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    use crate::rng::{AngleDistribution, NoiseModel};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn exact() -> GateNoise {
        GateNoise::exact()
    }

    #[test]
    fn basis_states() {
        let s = StateVector::basis(2, 0).unwrap();
        assert_eq!(s.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let s = StateVector::basis(1, 1).unwrap();
        assert_eq!(s.amplitudes(), &[c(0.0, 0.0), c(1.0, 0.0)]);
        let s = StateVector::basis(14, 100).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
        let nonzero: Vec<usize> = (0..s.len()).filter(|&n| s.amplitudes()[n].norm() > 0.0).collect();
        assert_eq!(nonzero, vec![100]);
    }

    #[test]
    fn basis_out_of_range() {
        assert!(matches!(StateVector::basis(2, 4), Err(Error::Index { .. })));
    }

    #[test]
    fn hadamard_on_zero() {
        let mut s = StateVector::basis(1, 0).unwrap();
        s.hadamard(1, &mut exact()).unwrap();
        assert!((s.amplitudes()[0] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((s.amplitudes()[1] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert_eq!(s.tally().hadamards, 1);
    }

    #[test]
    fn hadamard_is_involution() {
        let amps = vec![c(0.6, 0.1), c(-0.2, 0.3), c(0.1, -0.5), c(0.4, 0.2)];
        let orig = StateVector::from_amplitudes(amps).unwrap();
        let mut s = orig.clone();
        s.hadamard(2, &mut exact()).unwrap();
        s.hadamard(2, &mut exact()).unwrap();
        assert!(s.max_deviation(&orig) < 1e-12);
    }

    #[test]
    fn noisy_hadamard_overlap_bound() {
        let eps = 0.05;
        let mut ideal = StateVector::basis(1, 0).unwrap();
        ideal.hadamard(1, &mut exact()).unwrap();
        let mut gates = NoiseModel::new(eps, 42, 0)
            .with_distribution(AngleDistribution::Uniform)
            .gates();
        for _ in 0..200 {
            let mut s = StateVector::basis(1, 0).unwrap();
            s.hadamard(1, &mut gates).unwrap();
            assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
            assert!(ideal.inner(&s).norm() >= (eps * PI).cos() - 1e-12);
        }
    }

    #[test]
    fn hadamard_qubit_out_of_range() {
        let mut s = StateVector::basis(2, 0).unwrap();
        assert!(s.hadamard(0, &mut exact()).is_err());
        assert!(s.hadamard(3, &mut exact()).is_err());
    }

    #[test]
    fn controlled_phase_examples() {
        let mut s = StateVector::basis(2, 3).unwrap();
        s.controlled_phase(1, 2, PI, &mut exact()).unwrap();
        assert!((s.amplitudes()[3] - c(-1.0, 0.0)).norm() < 1e-15);

        let mut s = StateVector::basis(2, 3).unwrap();
        s.controlled_phase(1, 2, PI / 2.0, &mut exact()).unwrap();
        assert!((s.amplitudes()[3] - c(0.0, 1.0)).norm() < 1e-15);

        // a_1 = 0 everywhere: control inactive
        let amps = vec![c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.0), c(0.0, 0.0)];
        let orig = StateVector::from_amplitudes(amps).unwrap();
        let mut s = orig.clone();
        s.controlled_phase(1, 2, 1.234, &mut exact()).unwrap();
        assert_eq!(s.amplitudes(), orig.amplitudes());
    }

    #[test]
    fn controlled_phase_same_qubit_rejected() {
        let mut s = StateVector::basis(2, 0).unwrap();
        assert!(matches!(
            s.controlled_phase(1, 1, 0.3, &mut exact()),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn pair_phase_diagonal_is_z() {
        let mut s = StateVector::basis(1, 1).unwrap();
        s.pair_phase(1, 1, PI, &mut exact()).unwrap();
        assert!((s.amplitudes()[1] - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn pair_phase_matches_controlled_phase() {
        let amps: Vec<Complex64> = (0..8).map(|n| c(n as f64 * 0.1, 0.3 - n as f64 * 0.05)).collect();
        let mut a = StateVector::from_amplitudes(amps.clone()).unwrap();
        let mut b = StateVector::from_amplitudes(amps).unwrap();
        a.pair_phase(1, 3, 0.77, &mut exact()).unwrap();
        b.controlled_phase(1, 3, 0.77, &mut exact()).unwrap();
        assert_eq!(a.amplitudes(), b.amplitudes());
        assert_eq!(a.tally().diagonal_pair_phases, 1);
        assert_eq!(b.tally().controlled_phases, 1);
    }

    #[test]
    fn swap_examples() {
        let mut s = StateVector::basis(2, 1).unwrap();
        s.swap(1, 2).unwrap();
        assert_eq!(s.amplitudes()[2], c(1.0, 0.0));
        let amps: Vec<Complex64> = (0..8).map(|n| c(n as f64, -(n as f64))).collect();
        let orig = StateVector::from_amplitudes(amps).unwrap();
        let mut s = orig.clone();
        s.swap(1, 3).unwrap();
        s.swap(1, 3).unwrap();
        assert_eq!(s.amplitudes(), orig.amplitudes());
        assert!(s.swap(2, 2).is_err());
    }

    #[test]
    fn scripted_zero_matches_exact() {
        let amps: Vec<Complex64> = (0..8).map(|n| c(1.0 + n as f64, 0.5)).collect();
        let mut a = StateVector::from_amplitudes(amps.clone()).unwrap();
        let mut b = StateVector::from_amplitudes(amps).unwrap();
        let mut zeros = GateNoise::scripted(vec![0.0; 3]);
        for (s, noise) in [(&mut a, &mut exact()), (&mut b, &mut zeros)] {
            s.hadamard(2, noise).unwrap();
            s.controlled_phase(1, 3, 0.4, noise).unwrap();
            s.pair_phase(2, 2, -1.1, noise).unwrap();
        }
        assert_eq!(a.amplitudes(), b.amplitudes());
    }
}
