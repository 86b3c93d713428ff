//! Free Klein-Gordon field on a periodic 1D lattice.
//!
//! Sites sit at `x = n·a`, the Hamiltonian is
//! `H = Σ_n [π_n² + (φ_{n+1} − φ_n)²/a² + m²φ_n²] / 2` with `[φ_m, π_n] = iδ_mn`,
//! and mode `j` oscillates at `ω_j = sqrt(m² + (4/a²) sin²(πj/N))`.

mod evolve;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use evolve::{
    cauchy_evolve, domain_of_dependence_check, energy, mode_energy, pulse_extent, CauchyData,
    DodReport, SiteInterval,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("invalid lattice: {0}")]
    InvalidSpec(String),
    #[error("data has {found} sites, lattice has {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("non-finite field values")]
    NonFinite,
    #[error("interval must span at least 4 sites inside the lattice, got {0}")]
    IntervalTooShort(usize),
    #[error("interval [{start}, {end}) leaves the lattice")]
    IntervalOutOfRange { start: usize, end: usize },
    #[error("data sets differ inside the interval at site {0}")]
    DataDifferOnInterval(usize),
    #[error("time {t} reaches the wraparound limit {limit}")]
    TimeTooLarge { t: f64, limit: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub n: usize,
    pub a: f64,
    pub m: f64,
}

impl LatticeSpec {
    pub fn new(n: usize, a: f64, m: f64) -> Result<Self, LatticeError> {
        if n < 8 {
            return Err(LatticeError::InvalidSpec(format!("N = {n} is below 8")));
        }
        if !(a > 0.0 && a.is_finite()) {
            return Err(LatticeError::InvalidSpec(format!("spacing {a}")));
        }
        if !(m >= 0.0 && m.is_finite()) {
            return Err(LatticeError::InvalidSpec(format!("mass {m}")));
        }
        Ok(Self { n, a, m })
    }

    /// Lattice length `N·a`.
    pub fn length(&self) -> f64 {
        self.n as f64 * self.a
    }

    /// Latest time at which cone checks are free of wraparound.
    pub fn cone_time_limit(&self) -> f64 {
        self.length() / 4.0
    }

    /// Site offset in `[-N/2, N/2)` for index `k`.
    pub fn signed_offset(&self, k: usize) -> i64 {
        let n = self.n as i64;
        let k = k as i64;
        if k >= n - n / 2 {
            k - n
        } else {
            k
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersionTable {
    pub omegas: Vec<f64>,
}

impl DispersionTable {
    pub fn new(spec: &LatticeSpec) -> Self {
        let n = spec.n as f64;
        let omegas = (0..spec.n)
            .map(|j| {
                let s = (PI * j as f64 / n).sin();
                (spec.m * spec.m + 4.0 / (spec.a * spec.a) * s * s).sqrt()
            })
            .collect();
        Self { omegas }
    }
}

/// `sin(ωt)/ω`, continued to `t` at `ω = 0`.
pub(crate) fn sinc_t(omega: f64, t: f64) -> f64 {
    if omega == 0.0 {
        t
    } else {
        (omega * t).sin() / omega
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub min_omega: f64,
    pub max_omega: f64,
    pub zero_mode_flag: bool,
    pub vacuum_unique: bool,
}

pub fn spectrum_condition_check(spec: &LatticeSpec) -> SpectrumReport {
    let table = DispersionTable::new(spec);
    let min_omega = table.omegas.iter().copied().fold(f64::INFINITY, f64::min);
    let max_omega = table.omegas.iter().copied().fold(0.0, f64::max);
    SpectrumReport {
        min_omega,
        max_omega,
        zero_mode_flag: spec.m == 0.0,
        vacuum_unique: spec.m > 0.0,
    }
}

/// `Δ(t, n) = (1/N) Σ_j sin(ω_j t)/ω_j · cos(2πjn/N)` by direct summation.
pub fn pauli_jordan(spec: &LatticeSpec, t: f64, n: i64) -> f64 {
    let table = DispersionTable::new(spec);
    let nn = spec.n as f64;
    let phase = 2.0 * PI * n.rem_euclid(spec.n as i64) as f64 / nn;
    table
        .omegas
        .iter()
        .enumerate()
        .map(|(j, &w)| sinc_t(w, t) * (phase * j as f64).cos())
        .sum::<f64>()
        / nn
}

/// `Δ(t, ·)` at every site index `0..N`, by FFT.
pub fn pauli_jordan_row(spec: &LatticeSpec, t: f64) -> Vec<f64> {
    let table = DispersionTable::new(spec);
    let mut buf: Vec<Complex64> = table
        .omegas
        .iter()
        .map(|&w| Complex64::new(sinc_t(w, t), 0.0))
        .collect();
    FftPlanner::new().plan_fft_inverse(spec.n).process(&mut buf);
    buf.iter().map(|z| z.re / spec.n as f64).collect()
}

/// `Δ` on a grid of times.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutatorTable {
    pub spec: LatticeSpec,
    pub times: Vec<f64>,
    /// `values[i][k]` is `Δ(times[i], k)` for site index `k`.
    pub values: Vec<Vec<f64>>,
}

impl CommutatorTable {
    pub fn new(spec: &LatticeSpec, times: &[f64]) -> Self {
        let values = times.par_iter().map(|&t| pauli_jordan_row(spec, t)).collect();
        Self {
            spec: *spec,
            times: times.to_vec(),
            values,
        }
    }

    /// Tab-separated `t, n, delta` with signed site offsets in increasing order.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("t\tn\tdelta\n");
        let n = self.spec.n;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&k| self.spec.signed_offset(k));
        for (t, row) in self.times.iter().zip(&self.values) {
            for &k in &order {
                out.push_str(&format!(
                    "{t}\t{}\t{:e}\n",
                    self.spec.signed_offset(k),
                    row[k]
                ));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConeSuppression {
    pub t: f64,
    pub margin: f64,
    /// `max |Δ(t, n)|` over `|n·a| ≤ t`.
    pub inside_max: f64,
    /// `max |Δ(t, n)|` over `|n·a| > t + margin`.
    pub outside_max: f64,
    /// `outside_max / inside_max`.
    pub ratio: f64,
}

/// Compares `|Δ|` inside the lightcone with `|Δ|` beyond it plus `margin`
/// (physical length).
pub fn cone_suppression(
    spec: &LatticeSpec,
    t: f64,
    margin: f64,
) -> Result<ConeSuppression, LatticeError> {
    if t >= spec.cone_time_limit() {
        return Err(LatticeError::TimeTooLarge {
            t,
            limit: spec.cone_time_limit(),
        });
    }
    let row = pauli_jordan_row(spec, t);
    let mut inside_max = 0.0f64;
    let mut outside_max = 0.0f64;
    for (k, v) in row.iter().enumerate() {
        let x = (spec.signed_offset(k) as f64 * spec.a).abs();
        if x <= t {
            inside_max = inside_max.max(v.abs());
        } else if x > t + margin {
            outside_max = outside_max.max(v.abs());
        }
    }
    Ok(ConeSuppression {
        t,
        margin,
        inside_max,
        outside_max,
        ratio: outside_max / inside_max,
    })
}
