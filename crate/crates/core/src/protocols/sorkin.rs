use serde::Serialize;

use super::ProtocolError;
use crate::algebra::{
    c, embed, identity, is_hermitian, luders_map, luders_projectors, max_abs, spectral_decompose,
    DensityState, Matrix,
};

/// The intermediate measurement on both qubits.
#[derive(Debug, Clone)]
pub enum O2Measurement {
    /// Non-selective measurement of a Hermitian observable.
    Observable(Matrix),
    /// Non-selective measurement with an explicit complete projector family.
    Projectors(Vec<Matrix>),
}

/// Two-qubit instance of the three-region protocol: a kick on one qubit, an
/// optional joint measurement on both, and a final observable on the other.
#[derive(Debug, Clone)]
pub struct SorkinSetup {
    /// Qubit carrying the kick; the final observable sits on the other one.
    pub kick_qubit: usize,
    pub kick: Matrix,
    pub o2: O2Measurement,
    pub o3: Matrix,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub value: f64,
    pub probability: f64,
}

fn ket(bits: [f64; 4]) -> Matrix {
    Matrix::from_iterator(4, 1, bits.iter().map(|x| c(*x, 0.0)))
}

fn swap() -> Matrix {
    let mut s = Matrix::zeros(4, 4);
    for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        s[(i, j)] = c(1.0, 0.0);
    }
    s
}

fn z_projectors() -> [Matrix; 2] {
    let mut p0 = Matrix::zeros(2, 2);
    p0[(0, 0)] = c(1.0, 0.0);
    let mut p1 = Matrix::zeros(2, 2);
    p1[(1, 1)] = c(1.0, 0.0);
    [p0, p1]
}

impl SorkinSetup {
    /// Kick `X` on qubit 0, Bell projector `|Φ⁺⟩⟨Φ⁺|` against its complement,
    /// final `Z` on qubit 1.
    pub fn canonical() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phi = ket([s, 0.0, 0.0, s]);
        let p = &phi * phi.adjoint();
        Self {
            kick_qubit: 0,
            kick: crate::algebra::Pauli::X.matrix(),
            o2: O2Measurement::Projectors(vec![p.clone(), identity(4) - p]),
            o3: crate::algebra::Pauli::Z.matrix(),
        }
    }

    /// The canonical setup with the joint measurement replaced by local `Z`
    /// measurements on both qubits.
    pub fn local_product() -> Self {
        let [p0, p1] = z_projectors();
        let projs = vec![
            p0.kronecker(&p0),
            p0.kronecker(&p1),
            p1.kronecker(&p0),
            p1.kronecker(&p1),
        ];
        Self {
            o2: O2Measurement::Projectors(projs),
            ..Self::canonical()
        }
    }

    /// Same physics with the two qubits relabeled.
    pub fn swapped(&self) -> Self {
        let s = swap();
        let o2 = match &self.o2 {
            O2Measurement::Observable(a) => O2Measurement::Observable(&s * a * &s),
            O2Measurement::Projectors(ps) => {
                O2Measurement::Projectors(ps.iter().map(|p| &s * p * &s).collect())
            }
        };
        Self {
            kick_qubit: 1 - self.kick_qubit,
            kick: self.kick.clone(),
            o2,
            o3: self.o3.clone(),
        }
    }

    pub fn validate(&self) -> Result<(), ProtocolError> {
        if self.kick_qubit > 1 {
            return Err(ProtocolError::InvalidSetup("kick qubit must be 0 or 1".into()));
        }
        if self.kick.shape() != (2, 2)
            || max_abs(&(self.kick.adjoint() * &self.kick - identity(2))) > 1e-12
        {
            return Err(ProtocolError::InvalidSetup("kick must be a 2x2 unitary".into()));
        }
        if self.o3.shape() != (2, 2) || !is_hermitian(&self.o3, 1e-10) {
            return Err(ProtocolError::InvalidSetup(
                "final observable must be 2x2 Hermitian".into(),
            ));
        }
        match &self.o2 {
            O2Measurement::Observable(a) => {
                if a.shape() != (4, 4) || !is_hermitian(a, 1e-10) {
                    return Err(ProtocolError::InvalidSetup(
                        "joint observable must be 4x4 Hermitian".into(),
                    ));
                }
            }
            O2Measurement::Projectors(ps) => {
                let mut sum = Matrix::zeros(4, 4);
                for p in ps {
                    if p.shape() != (4, 4)
                        || !is_hermitian(p, 1e-10)
                        || max_abs(&(p * p - p)) > 1e-10
                    {
                        return Err(ProtocolError::InvalidSetup(
                            "joint measurement needs 4x4 orthogonal projectors".into(),
                        ));
                    }
                    sum += p;
                }
                if max_abs(&(sum - identity(4))) > 1e-10 {
                    return Err(ProtocolError::InvalidSetup(
                        "joint projectors do not sum to the identity".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn o3_qubit(&self) -> usize {
        1 - self.kick_qubit
    }
}

/// Distribution of the final observable after the optional kick and the
/// optional non-selective joint measurement.
pub fn sorkin_run(
    setup: &SorkinSetup,
    rho0: &DensityState,
    with_kick: bool,
    with_o2: bool,
) -> Result<Vec<Outcome>, ProtocolError> {
    setup.validate()?;
    if rho0.dim() != 4 {
        return Err(ProtocolError::InvalidSetup(format!(
            "initial state has dimension {}, expected 4",
            rho0.dim()
        )));
    }
    let mut rho = rho0.clone();
    if with_kick {
        let u = embed(2, setup.kick_qubit, &setup.kick);
        rho = DensityState::new(&u * rho.rho() * u.adjoint())?;
    }
    if with_o2 {
        rho = match &setup.o2 {
            O2Measurement::Observable(a) => luders_map(a, &rho)?,
            O2Measurement::Projectors(ps) => luders_projectors(ps, &rho),
        };
    }
    let spec = spectral_decompose(&setup.o3)?;
    Ok(spec
        .eigenvalues
        .iter()
        .zip(&spec.projectors)
        .map(|(v, p)| Outcome {
            value: *v,
            probability: rho.expect(&embed(2, setup.o3_qubit(), p)).re,
        })
        .collect())
}

/// Total-variation distance between the final distributions with and without
/// the kick, joint measurement active.
pub fn sorkin_signaling_gap(
    setup: &SorkinSetup,
    rho0: &DensityState,
) -> Result<f64, ProtocolError> {
    gap_with(setup, rho0, true)
}

/// The same distance with the joint measurement switched off.
pub fn sorkin_control_gap(setup: &SorkinSetup, rho0: &DensityState) -> Result<f64, ProtocolError> {
    gap_with(setup, rho0, false)
}

fn gap_with(setup: &SorkinSetup, rho0: &DensityState, with_o2: bool) -> Result<f64, ProtocolError> {
    let on = sorkin_run(setup, rho0, true, with_o2)?;
    let off = sorkin_run(setup, rho0, false, with_o2)?;
    Ok(on
        .iter()
        .zip(&off)
        .map(|(a, b)| (a.probability - b.probability).abs())
        .sum::<f64>()
        / 2.0)
}

/// `|00⟩⟨00|`.
pub fn ground_pair() -> DensityState {
    DensityState::new(ket([1.0, 0.0, 0.0, 0.0]) * ket([1.0, 0.0, 0.0, 0.0]).adjoint())
        .expect("pure product state")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_plus(out: &[Outcome]) -> f64 {
        out.iter().find(|o| o.value > 0.0).unwrap().probability
    }

    #[test]
    fn canonical_distributions() {
        let s = SorkinSetup::canonical();
        let rho = ground_pair();
        assert!((p_plus(&sorkin_run(&s, &rho, false, true).unwrap()) - 0.5).abs() < 1e-15);
        assert!((p_plus(&sorkin_run(&s, &rho, true, true).unwrap()) - 1.0).abs() < 1e-15);
        assert!(sorkin_control_gap(&s, &rho).unwrap() < 1e-15);
    }

    #[test]
    fn observable_form_matches_projector_form() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phi = ket([s, 0.0, 0.0, s]);
        let setup = SorkinSetup {
            o2: O2Measurement::Observable(&phi * phi.adjoint() * c(3.0, 0.0)),
            ..SorkinSetup::canonical()
        };
        let gap = sorkin_signaling_gap(&setup, &ground_pair()).unwrap();
        assert!((gap - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_incomplete_projectors() {
        let mut s = SorkinSetup::canonical();
        if let O2Measurement::Projectors(ps) = &mut s.o2 {
            ps.pop();
        }
        assert!(s.validate().is_err());
    }
}
