//! Husimi distribution `|h(l,θ)|²` with `h(l,θ) = Σ_{l'} G(l'-l) ψ(l') e^{il'θ}`,
//! the `l'` sum running over one period `l - N/2 ≤ l' < l + N/2` with `ψ` wrapped
//! periodically.

use num_complex::Complex64;
use rayon::prelude::*;

use super::SawtoothParams;
use crate::coarse::Grid;
use crate::error::{Error, Result};
use crate::qft::{classical_fft_frame, inverse_qft_full, Direction};
use crate::rng::GateNoise;
use crate::state::StateVector;

/// Momentum window `G(l'-l)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Smoothing {
    /// `(T/π)^{1/4} e^{-T d²/2} / √N`
    Gaussian,
    /// Constant on `-width/2 ≤ d < width/2`, zero outside.
    Box { width: usize },
}

impl Smoothing {
    /// Box as wide as the momentum resolution of a `2^{n_f}`-point frame,
    /// `N/2^{n_f}`, which is what a framewise spectrum diagram integrates over.
    pub fn frame_box(n_q: usize, n_f: usize) -> Self {
        Smoothing::Box {
            width: 1 << n_q.saturating_sub(n_f),
        }
    }

    fn weight(&self, d: f64, params: &SawtoothParams) -> f64 {
        let n = params.dim() as f64;
        match *self {
            Smoothing::Gaussian => {
                let t = params.kinetic();
                (t / std::f64::consts::PI).powf(0.25) * (-t * d * d / 2.0).exp() / n.sqrt()
            }
            Smoothing::Box { width } => {
                let half = width as f64 / 2.0;
                if d >= -half && d < half {
                    1.0 / (n * width as f64).sqrt()
                } else {
                    0.0
                }
            }
        }
    }
}

/// Grid layout: rows are θ cells (increasing θ), columns are l cells with
/// column `c` centred on `l = -N/2 + c·N/l_cells`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HusimiConfig {
    pub smoothing: Smoothing,
    pub theta_cells: usize,
    pub l_cells: usize,
    /// Momentum sub-samples averaged per column; 1 evaluates the cell centre only.
    pub l_samples: usize,
    /// Average over every grid θ in a row instead of taking the cell centre.
    pub theta_average: bool,
}

pub const DEFAULT_L_SAMPLES: usize = 16;

impl HusimiConfig {
    /// Cell averages: every grid θ in the row and [`DEFAULT_L_SAMPLES`] momenta per column.
    pub fn new(smoothing: Smoothing, theta_cells: usize, l_cells: usize) -> Self {
        Self {
            smoothing,
            theta_cells,
            l_cells,
            l_samples: DEFAULT_L_SAMPLES,
            theta_average: true,
        }
    }

    /// Point values at the cell centres.
    pub fn cell_centres(self) -> Self {
        self.with_l_samples(1).with_theta_average(false)
    }

    pub fn with_l_samples(mut self, samples: usize) -> Self {
        self.l_samples = samples;
        self
    }

    pub fn with_theta_average(mut self, on: bool) -> Self {
        self.theta_average = on;
        self
    }
}

/// `h(l, θ_n)` for every grid angle `θ_n = 2πn/N`, from momentum amplitudes
/// `phi[y]` with `y ≡ l' (mod N)`.
fn husimi_row(phi: &[Complex64], l: f64, smoothing: Smoothing, params: &SawtoothParams) -> Result<Vec<Complex64>> {
    let n = phi.len();
    let nf = n as f64;
    // l' ≡ y (mod N) and θ_n on the grid, so e^{il'θ_n} = e^{2πi yn/N}: one forward DFT.
    let windowed: Vec<Complex64> = phi
        .iter()
        .enumerate()
        .map(|(y, &a)| {
            let d = (y as f64 - l + nf / 2.0).rem_euclid(nf) - nf / 2.0;
            a * smoothing.weight(d, params)
        })
        .collect();
    let mut h = classical_fft_frame(&windowed, Direction::Forward)?;
    let scale = nf.sqrt();
    h.iter_mut().for_each(|x| *x *= scale);
    Ok(h)
}

pub fn husimi(state: &StateVector, params: &SawtoothParams, config: &HusimiConfig) -> Result<Grid> {
    params.check(state)?;
    let n = params.dim();
    let (rows, cols) = (config.theta_cells, config.l_cells);
    for (what, v) in [("theta", rows), ("momentum", cols)] {
        if v == 0 || !v.is_power_of_two() || v > n {
            return Err(Error::argument(format!(
                "{what} cell count {v} must be a power of two no larger than {n}"
            )));
        }
    }
    if config.l_samples == 0 {
        return Err(Error::argument("need at least one momentum sample per cell"));
    }
    let mut momentum = state.clone();
    inverse_qft_full(&mut momentum, &mut GateNoise::exact())?;
    let phi = momentum.amplitudes();

    let cell_l = n as f64 / cols as f64;
    let per_row = n / rows;
    let columns: Vec<Vec<f64>> = (0..cols)
        .into_par_iter()
        .map(|c| -> Result<Vec<f64>> {
            let centre = -(n as f64) / 2.0 + c as f64 * cell_l;
            let mut acc = vec![0.0; rows];
            for s in 0..config.l_samples {
                let offset = (s as f64 + 0.5) / config.l_samples as f64 - 0.5;
                let h = husimi_row(phi, centre + offset * cell_l, config.smoothing, params)?;
                for (r, cell) in acc.iter_mut().enumerate() {
                    *cell += if config.theta_average {
                        h[r * per_row..(r + 1) * per_row]
                            .iter()
                            .map(|x| x.norm_sqr())
                            .sum::<f64>()
                            / per_row as f64
                    } else {
                        // nearest grid angle to the cell centre
                        h[r * per_row + per_row / 2].norm_sqr()
                    };
                }
            }
            acc.iter_mut().for_each(|v| *v /= config.l_samples as f64);
            Ok(acc)
        })
        .collect::<Result<_>>()?;

    let mut values = vec![0.0; rows * cols];
    for (c, col) in columns.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            values[r * cols + c] = *v;
        }
    }
    Grid::new(rows, cols, values)
}

/// Reorders a framewise-spectrum diagram (columns = harmonic `j`) into
/// increasing momentum so it lines up with [`husimi`] columns.
///
/// Harmonic `j` of a `2^{n_f}`-point frame picks up momentum `l ≡ -jN/2^{n_f}`,
/// so column `c` takes harmonic `(cols/2 - c) mod cols`.
pub fn momentum_ordered(diagram: &Grid) -> Grid {
    let cols = diagram.cols();
    diagram.permute_cols(|c| (cols / 2 + cols - c) % cols)
}
