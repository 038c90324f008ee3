#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_amplitudes<R: Rng>(rng: &mut R, len: usize) -> Vec<Complex64> {
    let raw: Vec<Complex64> = (0..len)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    raw.into_iter().map(|a| a / norm).collect()
}

/// O(n²) unitary DFT with kernel `e^{sign·2πi jm/n}/√n`.
pub fn naive_dft(x: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = x.len();
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|j| {
            x.iter()
                .enumerate()
                .map(|(m, &v)| v * Complex64::from_polar(1.0, sign * 2.0 * PI * (j * m % n) as f64 / n as f64))
                .sum::<Complex64>()
                * scale
        })
        .collect()
}

/// Dense square matrix, row major.
#[derive(Clone)]
pub struct Dense {
    pub n: usize,
    pub m: Vec<Complex64>,
}

impl Dense {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                m.push(f(a, b));
            }
        }
        Self { n, m }
    }

    pub fn diagonal(d: &[Complex64]) -> Self {
        Self::from_fn(d.len(), |a, b| if a == b { d[a] } else { c(0.0, 0.0) })
    }

    pub fn mul(&self, other: &Dense) -> Dense {
        let n = self.n;
        let mut m = vec![c(0.0, 0.0); n * n];
        for a in 0..n {
            for k in 0..n {
                let x = self.m[a * n + k];
                if x == c(0.0, 0.0) {
                    continue;
                }
                for b in 0..n {
                    m[a * n + b] += x * other.m[k * n + b];
                }
            }
        }
        Dense { n, m }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.m[a * self.n + b] * v[b]).sum())
            .collect()
    }
}

/// Bit of basis index `n` for 1-based qubit `q` (qubit 1 most significant).
pub fn bit(n: usize, q: usize, n_q: usize) -> usize {
    (n >> (n_q - q)) & 1
}

/// Single-qubit gate `u` (2×2, row major) on qubit `q`, as a dense matrix.
pub fn single_qubit(u: [Complex64; 4], q: usize, n_q: usize) -> Dense {
    let mask = 1usize << (n_q - q);
    Dense::from_fn(1 << n_q, |a, b| {
        if a & !mask != b & !mask {
            c(0.0, 0.0)
        } else {
            u[2 * bit(a, q, n_q) + bit(b, q, n_q)]
        }
    })
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
