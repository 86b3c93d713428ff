use num_complex::Complex64;
use serde::Serialize;

use super::circuit::BrickWallCircuit;
use super::ProtocolError;
use crate::algebra::{hermitian_eigen, Matrix};

/// Two atoms on a chain: `site_b` is excited, the window of half-width
/// `window` around `site_a` is watched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FermiSetup {
    pub n: usize,
    pub site_a: usize,
    pub site_b: usize,
    pub window: usize,
}

impl FermiSetup {
    pub fn new(n: usize, site_a: usize, site_b: usize, window: usize) -> Result<Self, ProtocolError> {
        let s = Self {
            n,
            site_a,
            site_b,
            window,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn distance(&self) -> usize {
        self.site_a.abs_diff(self.site_b)
    }

    pub fn window_range(&self) -> (usize, usize) {
        (self.site_a.saturating_sub(self.window), self.site_a + self.window)
    }

    fn validate(&self) -> Result<(), ProtocolError> {
        if self.site_a >= self.n || self.site_b >= self.n {
            return Err(ProtocolError::InvalidSetup("atom outside the chain".into()));
        }
        let r = self.distance();
        if r == 0 || r >= self.n {
            return Err(ProtocolError::InvalidSetup(format!(
                "need 0 < R < n, got R = {r}"
            )));
        }
        let (lo, hi) = self.window_range();
        if self.site_a < self.window || hi >= self.n {
            return Err(ProtocolError::InvalidSetup(
                "observation window leaves the chain".into(),
            ));
        }
        if (lo..=hi).contains(&self.site_b) {
            return Err(ProtocolError::InvalidSetup(
                "observation window overlaps the excited atom".into(),
            ));
        }
        Ok(())
    }
}

fn basis_state(n: usize, flipped: Option<usize>) -> Vec<Complex64> {
    let mut psi = vec![Complex64::new(0.0, 0.0); 1 << n];
    let idx = flipped.map_or(0, |s| 1 << (n - 1 - s));
    psi[idx] = Complex64::new(1.0, 0.0);
    psi
}

/// Reduced density matrix of sites `lo..=hi`.
pub fn reduced_state(psi: &[Complex64], n: usize, lo: usize, hi: usize) -> Matrix {
    let k = hi - lo + 1;
    let right = n - hi - 1;
    let dw = 1usize << k;
    let mut rho = Matrix::zeros(dw, dw);
    for left_bits in 0..1usize << lo {
        for right_bits in 0..1usize << right {
            let at = |w: usize| psi[(left_bits << (k + right)) | (w << right) | right_bits];
            for i in 0..dw {
                let ai = at(i);
                if ai == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..dw {
                    rho[(i, j)] += ai * at(j).conj();
                }
            }
        }
    }
    rho
}

/// `½ Σ |λ|` over the eigenvalues of `a − b`.
pub fn trace_distance(a: &Matrix, b: &Matrix) -> f64 {
    let (vals, _) = hermitian_eigen(&(a - b));
    vals.iter().map(|v| v.abs()).sum::<f64>() / 2.0
}

/// Trace distance between the window states of the unexcited and excited
/// chains after each number of layers `0..=depth`.
pub fn fermi_deviation_curve(
    setup: &FermiSetup,
    circuit: &BrickWallCircuit,
    depth: usize,
) -> Result<Vec<f64>, ProtocolError> {
    if circuit.n_qubits() != setup.n {
        return Err(ProtocolError::InvalidSetup(format!(
            "circuit has {} qubits, setup has {}",
            circuit.n_qubits(),
            setup.n
        )));
    }
    if depth > circuit.depth() {
        return Err(ProtocolError::InvalidSetup(format!(
            "depth {depth} exceeds circuit depth {}",
            circuit.depth()
        )));
    }
    let (lo, hi) = setup.window_range();
    let mut ground = basis_state(setup.n, None);
    let mut excited = basis_state(setup.n, Some(setup.site_b));
    let mut curve = Vec::with_capacity(depth + 1);
    for t in 0..=depth {
        if t > 0 {
            circuit.apply_layer(t - 1, &mut ground);
            circuit.apply_layer(t - 1, &mut excited);
        }
        let r0 = reduced_state(&ground, setup.n, lo, hi);
        let r1 = reduced_state(&excited, setup.n, lo, hi);
        curve.push(trace_distance(&r0, &r1));
    }
    Ok(curve)
}

/// Deviation after exactly `t` layers.
pub fn fermi_two_atom(
    setup: &FermiSetup,
    circuit: &BrickWallCircuit,
    t: usize,
) -> Result<f64, ProtocolError> {
    Ok(*fermi_deviation_curve(setup, circuit, t)?.last().expect("nonempty curve"))
}

/// Columnar `t, deviation` text.
pub fn deviation_tsv(curve: &[f64]) -> String {
    let mut out = String::from("t\tdeviation\n");
    for (t, d) in curve.iter().enumerate() {
        out.push_str(&format!("{t}\t{d:e}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn setup_validation() {
        assert!(FermiSetup::new(10, 2, 8, 0).is_ok());
        assert!(FermiSetup::new(10, 2, 2, 0).is_err());
        assert!(FermiSetup::new(10, 6, 8, 2).is_err());
        assert!(FermiSetup::new(10, 1, 8, 2).is_err());
    }

    #[test]
    fn reduced_state_of_product() {
        let psi = basis_state(3, Some(1));
        let r = reduced_state(&psi, 3, 1, 1);
        assert!((r[(1, 1)].re - 1.0).abs() < 1e-15);
        let r = reduced_state(&psi, 3, 0, 1);
        assert!((r[(1, 1)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn no_deviation_at_time_zero() {
        let s = FermiSetup::new(6, 1, 4, 0).unwrap();
        let c = BrickWallCircuit::haar(6, 2, 0).unwrap();
        assert_eq!(fermi_two_atom(&s, &c, 0).unwrap(), 0.0);
        assert!(fermi_two_atom(&s, &c, 3).is_err());
    }
}
