use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::{sinc_t, DispersionTable, LatticeError, LatticeSpec};

/// Field and momentum on one time slice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CauchyData {
    pub phi: Vec<f64>,
    pub pi: Vec<f64>,
}

impl CauchyData {
    pub fn new(phi: Vec<f64>, pi: Vec<f64>) -> Result<Self, LatticeError> {
        if phi.len() != pi.len() {
            return Err(LatticeError::LengthMismatch {
                expected: phi.len(),
                found: pi.len(),
            });
        }
        if phi.iter().chain(&pi).any(|x| !x.is_finite()) {
            return Err(LatticeError::NonFinite);
        }
        Ok(Self { phi, pi })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            phi: vec![0.0; n],
            pi: vec![0.0; n],
        }
    }

    fn check(&self, spec: &LatticeSpec) -> Result<(), LatticeError> {
        for v in [&self.phi, &self.pi] {
            if v.len() != spec.n {
                return Err(LatticeError::LengthMismatch {
                    expected: spec.n,
                    found: v.len(),
                });
            }
        }
        if self.phi.iter().chain(&self.pi).any(|x| !x.is_finite()) {
            return Err(LatticeError::NonFinite);
        }
        Ok(())
    }
}

fn forward(v: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = v.iter().map(|x| Complex64::new(*x, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(v.len()).process(&mut buf);
    buf
}

fn inverse(mut buf: Vec<Complex64>) -> Vec<f64> {
    let n = buf.len();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    buf.iter().map(|z| z.re / n as f64).collect()
}

/// Exact evolution by time `t`, mode by mode.
pub fn cauchy_evolve(
    spec: &LatticeSpec,
    data: &CauchyData,
    t: f64,
) -> Result<CauchyData, LatticeError> {
    data.check(spec)?;
    if !t.is_finite() {
        return Err(LatticeError::NonFinite);
    }
    let omegas = DispersionTable::new(spec).omegas;
    let phi_hat = forward(&data.phi);
    let pi_hat = forward(&data.pi);
    let mut phi_t = Vec::with_capacity(spec.n);
    let mut pi_t = Vec::with_capacity(spec.n);
    for j in 0..spec.n {
        let w = omegas[j];
        let (s, cs) = (w * t).sin_cos();
        phi_t.push(phi_hat[j] * cs + pi_hat[j] * sinc_t(w, t));
        pi_t.push(-phi_hat[j] * (w * s) + pi_hat[j] * cs);
    }
    Ok(CauchyData {
        phi: inverse(phi_t),
        pi: inverse(pi_t),
    })
}

/// Lattice Hamiltonian evaluated in position space.
pub fn energy(spec: &LatticeSpec, data: &CauchyData) -> Result<f64, LatticeError> {
    data.check(spec)?;
    let n = spec.n;
    let mut e = 0.0;
    for k in 0..n {
        let grad = (data.phi[(k + 1) % n] - data.phi[k]) / spec.a;
        e += data.pi[k].powi(2) + grad * grad + (spec.m * data.phi[k]).powi(2);
    }
    Ok(e / 2.0)
}

/// `(1/N) Σ_j [|π̂_j|² + ω_j²|φ̂_j|²] / 2`; equals [`energy`] by Parseval.
pub fn mode_energy(spec: &LatticeSpec, data: &CauchyData) -> Result<f64, LatticeError> {
    data.check(spec)?;
    let omegas = DispersionTable::new(spec).omegas;
    let phi_hat = forward(&data.phi);
    let pi_hat = forward(&data.pi);
    let e: f64 = (0..spec.n)
        .map(|j| pi_hat[j].norm_sqr() + omegas[j].powi(2) * phi_hat[j].norm_sqr())
        .sum();
    Ok(e / (2.0 * spec.n as f64))
}

/// Smallest and largest signed offset from `site` where `|φ(t)| > threshold`
/// after a unit `φ` pulse at `site`.
pub fn pulse_extent(
    spec: &LatticeSpec,
    site: usize,
    t: f64,
    threshold: f64,
) -> Result<Option<(i64, i64)>, LatticeError> {
    let mut data = CauchyData::zeros(spec.n);
    data.phi[site % spec.n] = 1.0;
    let out = cauchy_evolve(spec, &data, t)?;
    let n = spec.n;
    let offsets: Vec<i64> = (0..n)
        .filter(|&k| out.phi[k].abs() > threshold)
        .map(|k| spec.signed_offset((k + n - site % n) % n))
        .collect();
    Ok(offsets
        .iter()
        .min()
        .zip(offsets.iter().max())
        .map(|(a, b)| (*a, *b)))
}

/// Sites `start..start + len`, no wraparound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteInterval {
    pub start: usize,
    pub len: usize,
}

impl SiteInterval {
    pub fn end(&self) -> usize {
        self.start + self.len
    }

    pub fn contains(&self, k: usize) -> bool {
        k >= self.start && k < self.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DodReport {
    pub t: f64,
    pub margin_sites: usize,
    /// Largest `|φ₁ − φ₂|` at time `t` over the shrunken cone.
    pub max_deviation_inside: f64,
    /// Sites whose whole backward cone plus margin lies in the interval.
    pub region_checked: Vec<usize>,
    /// Largest deviation over interval sites that are not in `region_checked`.
    pub max_deviation_excluded: f64,
}

/// Evolves two data sets that agree on `interval` and compares them where the
/// interval alone fixes the answer.
pub fn domain_of_dependence_check(
    spec: &LatticeSpec,
    data1: &CauchyData,
    data2: &CauchyData,
    interval: SiteInterval,
    t: f64,
    margin_sites: usize,
) -> Result<DodReport, LatticeError> {
    if interval.len < 4 {
        return Err(LatticeError::IntervalTooShort(interval.len));
    }
    if interval.end() > spec.n {
        return Err(LatticeError::IntervalOutOfRange {
            start: interval.start,
            end: interval.end(),
        });
    }
    data1.check(spec)?;
    data2.check(spec)?;
    for k in interval.start..interval.end() {
        if data1.phi[k] != data2.phi[k] || data1.pi[k] != data2.pi[k] {
            return Err(LatticeError::DataDifferOnInterval(k));
        }
    }
    let e1 = cauchy_evolve(spec, data1, t)?;
    let e2 = cauchy_evolve(spec, data2, t)?;
    let reach = (t.abs() / spec.a).ceil() as usize + margin_sites;
    let mut region = Vec::new();
    let mut inside = 0.0f64;
    let mut excluded = 0.0f64;
    for k in interval.start..interval.end() {
        let dev = (e1.phi[k] - e2.phi[k]).abs();
        if k >= interval.start + reach && k + reach < interval.end() {
            region.push(k);
            inside = inside.max(dev);
        } else {
            excluded = excluded.max(dev);
        }
    }
    Ok(DodReport {
        t,
        margin_sites,
        max_deviation_inside: inside,
        region_checked: region,
        max_deviation_excluded: excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_data(n: usize, seed: u64) -> CauchyData {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        CauchyData::new(
            (0..n).map(|_| rng.random_range(-1.0..1.0)).collect(),
            (0..n).map(|_| rng.random_range(-1.0..1.0)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let s = LatticeSpec::new(32, 1.0, 1.0).unwrap();
        let d = random_data(32, 1);
        let out = cauchy_evolve(&s, &d, 0.0).unwrap();
        for (x, y) in out.phi.iter().zip(&d.phi) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn evolution_is_reversible_and_conserves_energy() {
        let s = LatticeSpec::new(64, 0.5, 0.8).unwrap();
        let d = random_data(64, 2);
        let fwd = cauchy_evolve(&s, &d, 7.3).unwrap();
        let back = cauchy_evolve(&s, &fwd, -7.3).unwrap();
        for (x, y) in back.phi.iter().chain(&back.pi).zip(d.phi.iter().chain(&d.pi)) {
            assert!((x - y).abs() < 1e-10);
        }
        let e0 = energy(&s, &d).unwrap();
        let e1 = energy(&s, &fwd).unwrap();
        assert!(((e1 - e0) / e0).abs() < 1e-10);
        assert!(((mode_energy(&s, &d).unwrap() - e0) / e0).abs() < 1e-12);
    }

    #[test]
    fn massless_zero_mode_drifts() {
        let s = LatticeSpec::new(8, 1.0, 0.0).unwrap();
        let d = CauchyData::new(vec![0.0; 8], vec![1.0; 8]).unwrap();
        let out = cauchy_evolve(&s, &d, 2.0).unwrap();
        assert!(out.phi.iter().all(|x| (x - 2.0).abs() < 1e-12));
    }

    #[test]
    fn dod_rejects_short_or_inconsistent_input() {
        let s = LatticeSpec::new(32, 1.0, 1.0).unwrap();
        let d = CauchyData::zeros(32);
        let iv = SiteInterval { start: 4, len: 3 };
        assert!(matches!(
            domain_of_dependence_check(&s, &d, &d, iv, 1.0, 2),
            Err(LatticeError::IntervalTooShort(3))
        ));
        let mut d2 = d.clone();
        d2.phi[6] = 1.0;
        let iv = SiteInterval { start: 4, len: 8 };
        assert!(matches!(
            domain_of_dependence_check(&s, &d, &d2, iv, 1.0, 2),
            Err(LatticeError::DataDifferOnInterval(6))
        ));
    }

    #[test]
    fn identical_data_has_zero_deviation() {
        let s = LatticeSpec::new(64, 1.0, 1.0).unwrap();
        let d = random_data(64, 3);
        let r = domain_of_dependence_check(&s, &d, &d, SiteInterval { start: 8, len: 48 }, 5.0, 8)
            .unwrap();
        assert_eq!(r.max_deviation_inside, 0.0);
        assert!(!r.region_checked.is_empty());
    }

    #[test]
    fn json_round_trip() {
        let d = random_data(8, 4);
        let back: CauchyData = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);
    }
}
