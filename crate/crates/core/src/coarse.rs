//! Coarse-grained diagrams from measuring a subset of qubits.

use rand::Rng;

use crate::error::{Error, Result};
use crate::state::StateVector;

/// Dense nonnegative `rows × cols` grid, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl Grid {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::argument(format!(
                "{} values for a {rows}x{cols} grid",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| **v < 0.0 || !v.is_finite()) {
            return Err(Error::argument(format!("grid value {bad} is not a finite nonnegative number")));
        }
        Ok(Self { rows, cols, values })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.values[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.values[r * self.cols..(r + 1) * self.cols]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().fold(0.0, |m, &v| m.max(v))
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Element-wise square, e.g. amplitude cells to probability cells.
    pub fn squared(&self) -> Grid {
        Grid {
            rows: self.rows,
            cols: self.cols,
            values: self.values.iter().map(|v| v * v).collect(),
        }
    }

    /// Reorders columns so that output column `c` holds input column `perm(c)`.
    pub fn permute_cols(&self, perm: impl Fn(usize) -> usize) -> Grid {
        let mut values = Vec::with_capacity(self.values.len());
        for r in 0..self.rows {
            for c in 0..self.cols {
                values.push(self.get(r, perm(c)));
            }
        }
        Grid {
            rows: self.rows,
            cols: self.cols,
            values,
        }
    }
}

/// Whether a diagram uses exact marginals or a finite full-register campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shots {
    Exact,
    Count(u64),
}

/// Amplitude-unit diagram over measured row and column qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct CoarseGrid {
    pub row_qubits: Vec<usize>,
    pub col_qubits: Vec<usize>,
    pub grid: Grid,
}

impl CoarseGrid {
    /// Cell probabilities (squared amplitudes).
    pub fn probabilities(&self) -> Grid {
        self.grid.squared()
    }
}

/// Bits of `n` at the listed qubits, first listed qubit most significant.
fn gather(n: usize, masks: &[usize]) -> usize {
    masks
        .iter()
        .fold(0, |acc, &m| (acc << 1) | usize::from(n & m != 0))
}

/// Marginal probability grid of `weights` over the given qubit lists.
pub fn marginal_grid(
    weights: &[f64],
    n_q: usize,
    row_qubits: &[usize],
    col_qubits: &[usize],
) -> Result<Grid> {
    let mask_of = |q: usize| -> Result<usize> {
        if q == 0 || q > n_q {
            return Err(Error::Index {
                index: q as i64,
                limit: n_q as i64,
            });
        }
        Ok(1usize << (n_q - q))
    };
    let row_masks = row_qubits.iter().map(|&q| mask_of(q)).collect::<Result<Vec<_>>>()?;
    let col_masks = col_qubits.iter().map(|&q| mask_of(q)).collect::<Result<Vec<_>>>()?;
    let mut seen = 0usize;
    for &m in row_masks.iter().chain(&col_masks) {
        if seen & m != 0 {
            return Err(Error::argument("row and column qubit lists overlap or repeat"));
        }
        seen |= m;
    }
    let rows = 1usize << row_masks.len();
    let cols = 1usize << col_masks.len();
    let mut values = vec![0.0; rows * cols];
    for (n, &w) in weights.iter().enumerate() {
        if w != 0.0 {
            values[gather(n, &row_masks) * cols + gather(n, &col_masks)] += w;
        }
    }
    Grid::new(rows, cols, values)
}

/// Measures only `row_qubits` and `col_qubits`; cell value is `√(marginal probability)`.
pub fn coarse_diagram<R: Rng + ?Sized>(
    state: &StateVector,
    row_qubits: &[usize],
    col_qubits: &[usize],
    shots: Shots,
    rng: &mut R,
) -> Result<CoarseGrid> {
    let weights = match shots {
        Shots::Exact => state.probabilities(),
        Shots::Count(n) => state.sample(n, rng)?.frequencies(),
    };
    let probs = marginal_grid(&weights, state.n_qubits(), row_qubits, col_qubits)?;
    let grid = Grid::new(
        probs.rows(),
        probs.cols(),
        probs.values().iter().map(|p| p.sqrt()).collect(),
    )?;
    Ok(CoarseGrid {
        row_qubits: row_qubits.to_vec(),
        col_qubits: col_qubits.to_vec(),
        grid,
    })
}

/// Pearson correlation of two equally shaped grids.
pub fn pearson(a: &Grid, b: &Grid) -> f64 {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "grid shapes differ");
    pearson_slices(&a.values, &b.values)
}

pub fn pearson_slices(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    sab / (saa * sbb).sqrt()
}
