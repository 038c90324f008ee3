//! Magnitude readout of a post-QFT register by finite measurement campaigns.

use rand::Rng;

use crate::audio::{Provenance, SpectrumEstimate};
use crate::error::{Error, Result};
use crate::qft::FramePlan;
use crate::sampling::{multinomial, NORM_TOLERANCE};
use crate::state::StateVector;

/// How the `M·K` shots of a campaign are spread over frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MeasurementMode {
    /// `M·K` full-register shots; the frame register is measured like any other qubit.
    #[default]
    Total,
    /// Exactly `M` shots per frame from its conditional distribution, rescaled
    /// by the exact frame weight (an idealisation a device cannot reproduce).
    PerFrame,
}

impl MeasurementMode {
    pub fn name(&self) -> &'static str {
        match self {
            MeasurementMode::Total => "total",
            MeasurementMode::PerFrame => "per-frame",
        }
    }
}

impl std::str::FromStr for MeasurementMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "total" => Ok(MeasurementMode::Total),
            "per-frame" => Ok(MeasurementMode::PerFrame),
            other => Err(Error::argument(format!(
                "unknown measurement mode `{other}` (expected total or per-frame)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementPlan {
    pub mode: MeasurementMode,
    pub shots_per_frame: u64,
    pub frames: FramePlan,
}

impl MeasurementPlan {
    pub fn new(mode: MeasurementMode, shots_per_frame: u64, frames: FramePlan) -> Self {
        Self {
            mode,
            shots_per_frame,
            frames,
        }
    }

    /// `M · K` in both modes.
    pub fn total_shots(&self) -> u64 {
        self.shots_per_frame * self.frames.frame_count() as u64
    }
}

fn check_state(state: &StateVector, frames: &FramePlan) -> Result<()> {
    if state.n_qubits() != frames.n_qubits() {
        return Err(Error::argument(format!(
            "{}-qubit register measured with a {}-qubit frame plan",
            state.n_qubits(),
            frames.n_qubits()
        )));
    }
    Ok(())
}

/// Infinite-statistics limit: `|S_{k,j}|` read straight off the amplitudes.
pub fn exact_spectrum(state: &StateVector, frames: &FramePlan) -> Result<SpectrumEstimate> {
    check_state(state, frames)?;
    let mags = state.amplitudes().iter().map(|a| a.norm()).collect();
    SpectrumEstimate::new(*frames, mags, Provenance::Exact)
}

/// Finite-shot estimate `|Ŝ_{k,j}| = √(count / shots)`; phases are never seen.
pub fn estimate_spectrum<R: Rng + ?Sized>(
    state: &StateVector,
    plan: &MeasurementPlan,
    rng: &mut R,
) -> Result<SpectrumEstimate> {
    check_state(state, &plan.frames)?;
    if plan.total_shots() == 0 {
        return Err(Error::argument("measurement campaign has no shots"));
    }
    let norm = state.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::State(format!(
            "cannot measure an unnormalized register (norm² = {norm})"
        )));
    }
    let probs = state.probabilities();
    let mags = match plan.mode {
        MeasurementMode::Total => {
            let shots = plan.total_shots();
            let counts = multinomial(&probs, shots, rng);
            counts
                .iter()
                .map(|&c| (c as f64 / shots as f64).sqrt())
                .collect()
        }
        MeasurementMode::PerFrame => {
            let size = plan.frames.frame_size();
            let m = plan.shots_per_frame;
            let mut mags = Vec::with_capacity(probs.len());
            for row in probs.chunks(size) {
                let weight: f64 = row.iter().sum();
                if weight <= 0.0 {
                    mags.extend(std::iter::repeat_n(0.0, size));
                    continue;
                }
                let counts = multinomial(row, m, rng);
                mags.extend(
                    counts
                        .iter()
                        .map(|&c| (weight * c as f64 / m as f64).sqrt()),
                );
            }
            mags
        }
    };
    SpectrumEstimate::new(
        plan.frames,
        mags,
        Provenance::Sampled {
            shots: plan.total_shots(),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_state(n_q: usize, seed: u64) -> StateVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw: Vec<Complex64> = (0..1usize << n_q)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        StateVector::from_amplitudes(raw.into_iter().map(|a| a / norm).collect()).unwrap()
    }

    #[test]
    fn basis_state_single_entry() {
        let frames = FramePlan::new(6, 3).unwrap();
        let state = StateVector::basis(6, 5 * 8 + 2).unwrap();
        for mode in [MeasurementMode::Total, MeasurementMode::PerFrame] {
            let plan = MeasurementPlan::new(mode, 5, frames);
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let est = estimate_spectrum(&state, &plan, &mut rng).unwrap();
            assert_eq!(est.get(5, 2), 1.0);
            assert_eq!(est.energy(), 1.0);
        }
    }

    #[test]
    fn uniform_exact_spectrum() {
        let n_q = 4;
        let amps = vec![Complex64::new(0.25, 0.0); 16];
        let state = StateVector::from_amplitudes(amps).unwrap();
        let est = exact_spectrum(&state, &FramePlan::new(n_q, 2).unwrap()).unwrap();
        assert!(est.magnitudes().iter().all(|&m| (m - 0.25).abs() < 1e-15));
        assert!((est.energy() - 1.0).abs() < 1e-12);
        assert_eq!(est.provenance(), Provenance::Exact);
    }

    #[test]
    fn large_shot_limit_converges() {
        let state = random_state(10, 4);
        let frames = FramePlan::new(10, 5).unwrap();
        let exact = exact_spectrum(&state, &frames).unwrap();
        // 10^7 total shots
        let plan = MeasurementPlan::new(MeasurementMode::Total, 312_500, frames);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let est = estimate_spectrum(&state, &plan, &mut rng).unwrap();
        let worst = est
            .magnitudes()
            .iter()
            .zip(exact.magnitudes())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(worst < 0.01, "worst deviation {worst}");
    }

    #[test]
    fn per_frame_preserves_frame_weights() {
        let state = random_state(8, 2);
        let frames = FramePlan::new(8, 4).unwrap();
        let plan = MeasurementPlan::new(MeasurementMode::PerFrame, 7, frames);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let est = estimate_spectrum(&state, &plan, &mut rng).unwrap();
        let probs = state.probabilities();
        for k in 0..frames.frame_count() {
            let want: f64 = probs[k * 16..(k + 1) * 16].iter().sum();
            let got: f64 = est.frame(k).iter().map(|m| m * m).sum();
            assert!((want - got).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_shots_rejected() {
        let state = StateVector::basis(4, 0).unwrap();
        let plan = MeasurementPlan::new(MeasurementMode::Total, 0, FramePlan::new(4, 2).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(estimate_spectrum(&state, &plan, &mut rng).is_err());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("total".parse::<MeasurementMode>().unwrap(), MeasurementMode::Total);
        assert_eq!("per-frame".parse::<MeasurementMode>().unwrap(), MeasurementMode::PerFrame);
        assert!("both".parse::<MeasurementMode>().is_err());
    }
}
