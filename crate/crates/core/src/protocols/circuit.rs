use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ProtocolError;
use crate::algebra::{identity, kron, max_abs, random_unitary, Matrix};

/// Largest chain handled by the dense simulators.
pub const MAX_QUBITS: usize = 16;

#[derive(Debug, Clone)]
pub struct Gate {
    /// Left site of the pair `(site, site + 1)`.
    pub site: usize,
    pub unitary: Matrix,
}

/// Layers of nearest-neighbour two-qubit gates on an open chain. Layer `l`
/// couples `(0,1), (2,3), …` for even `l` and `(1,2), (3,4), …` for odd `l`.
/// Site 0 is the most significant tensor factor.
#[derive(Debug, Clone)]
pub struct BrickWallCircuit {
    n_qubits: usize,
    seed: Option<u64>,
    layers: Vec<Vec<Gate>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CircuitParams {
    pub n_qubits: usize,
    pub depth: usize,
    pub seed: Option<u64>,
}

pub fn layer_sites(n: usize, layer: usize) -> impl Iterator<Item = usize> {
    (layer % 2..n.saturating_sub(1)).step_by(2)
}

impl BrickWallCircuit {
    /// Haar-random gates drawn from a ChaCha stream seeded by `seed`.
    pub fn haar(n_qubits: usize, depth: usize, seed: u64) -> Result<Self, ProtocolError> {
        check_size(n_qubits)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let layers = (0..depth)
            .map(|l| {
                layer_sites(n_qubits, l)
                    .map(|site| Gate {
                        site,
                        unitary: random_unitary(4, &mut rng),
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            n_qubits,
            seed: Some(seed),
            layers,
        })
    }

    /// Every gate produced by `gate(layer, site)`; each must be unitary.
    pub fn from_fn(
        n_qubits: usize,
        depth: usize,
        mut gate: impl FnMut(usize, usize) -> Matrix,
    ) -> Result<Self, ProtocolError> {
        check_size(n_qubits)?;
        let mut layers = Vec::with_capacity(depth);
        for l in 0..depth {
            let mut layer = Vec::new();
            for site in layer_sites(n_qubits, l) {
                let u = gate(l, site);
                if u.nrows() != 4 || u.ncols() != 4 {
                    return Err(ProtocolError::InvalidGate(format!(
                        "gate at layer {l}, site {site} is not 4x4"
                    )));
                }
                let err = max_abs(&(u.adjoint() * &u - identity(4)));
                if err > 1e-12 {
                    return Err(ProtocolError::InvalidGate(format!(
                        "gate at layer {l}, site {site} deviates from unitarity by {err:e}"
                    )));
                }
                layer.push(Gate { site, unitary: u });
            }
            layers.push(layer);
        }
        Ok(Self {
            n_qubits,
            seed: None,
            layers,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn params(&self) -> CircuitParams {
        CircuitParams {
            n_qubits: self.n_qubits,
            depth: self.depth(),
            seed: self.seed,
        }
    }

    pub fn layer(&self, l: usize) -> &[Gate] {
        &self.layers[l]
    }

    /// Sites a single-site operator at `site` can reach after `t` layers.
    pub fn lightcone(&self, site: usize, t: usize) -> (usize, usize) {
        (site.saturating_sub(t), (site + t).min(self.n_qubits - 1))
    }

    /// Applies layer `l` to a state vector in place.
    pub fn apply_layer(&self, l: usize, psi: &mut [Complex64]) {
        let n = self.n_qubits;
        for g in &self.layers[l] {
            // site s occupies bit n - 1 - s
            let hi = 1usize << (n - 1 - g.site);
            let lo = hi >> 1;
            for base in 0..psi.len() {
                if base & (hi | lo) != 0 {
                    continue;
                }
                let idx = [base, base | lo, base | hi, base | hi | lo];
                let v = idx.map(|i| psi[i]);
                for (r, &i) in idx.iter().enumerate() {
                    psi[i] = (0..4).map(|c| g.unitary[(r, c)] * v[c]).sum();
                }
            }
        }
    }

    /// Dense unitary of layer `l`.
    pub fn layer_unitary(&self, l: usize) -> Matrix {
        let n = self.n_qubits;
        let mut out = identity(1);
        let mut site = 0;
        let mut gates = self.layers[l].iter().peekable();
        while site < n {
            match gates.peek() {
                Some(g) if g.site == site => {
                    out = kron(&out, &g.unitary);
                    site += 2;
                    gates.next();
                }
                _ => {
                    out = kron(&out, &identity(2));
                    site += 1;
                }
            }
        }
        out
    }

    /// `U(t)`: the first `t` layers, applied in order.
    pub fn unitary(&self, t: usize) -> Matrix {
        let d = 1 << self.n_qubits;
        let mut u = identity(d);
        for l in 0..t {
            u = self.layer_unitary(l) * u;
        }
        u
    }
}

fn check_size(n: usize) -> Result<(), ProtocolError> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(ProtocolError::InvalidSize(format!(
            "{n} qubits; supported range is 2..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

/// Sites on which `op` acts nontrivially: those where it fails to commute
/// with some single-site Pauli.
pub fn operator_support(n: usize, op: &Matrix, tol: f64) -> Vec<usize> {
    use crate::algebra::{embed, Pauli};
    (0..n)
        .filter(|&s| {
            Pauli::ALL.iter().any(|p| {
                let q = embed(n, s, &p.matrix());
                max_abs(&(op * &q - &q * op)) > tol
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{c, embed, Pauli};

    #[test]
    fn state_and_dense_application_agree() {
        let circ = BrickWallCircuit::haar(4, 3, 9).unwrap();
        let mut psi = vec![Complex64::new(0.0, 0.0); 16];
        psi[5] = c(1.0, 0.0);
        let dense = circ.unitary(3).column(5).into_owned();
        for l in 0..3 {
            circ.apply_layer(l, &mut psi);
        }
        for k in 0..16 {
            assert!((psi[k] - dense[k]).norm() < 1e-12);
        }
    }

    #[test]
    fn pairing_alternates() {
        assert_eq!(layer_sites(5, 0).collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(layer_sites(5, 1).collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn heisenberg_support_grows_one_site_per_layer() {
        let circ = BrickWallCircuit::haar(6, 3, 1).unwrap();
        let u = circ.unitary(2);
        let z = embed(6, 3, &Pauli::Z.matrix());
        let ev = u.adjoint() * z * &u;
        let sup = operator_support(6, &ev, 1e-10);
        assert!(sup.iter().all(|&s| (1..=5).contains(&s)), "{sup:?}");
    }

    #[test]
    fn rejects_non_unitary_gates() {
        assert!(BrickWallCircuit::from_fn(3, 1, |_, _| identity(4) * c(2.0, 0.0)).is_err());
        assert!(BrickWallCircuit::haar(1, 1, 0).is_err());
    }
}
