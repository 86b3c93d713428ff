use num_complex::Complex64;
use serde::Serialize;

use super::matrix::{
    c, check_square, cluster_sorted, columns, hermitian_eigen, is_hermitian, max_abs, trace,
    Matrix,
};
use super::structure::{MatrixAlgebra, CLUSTER_TOL};
use super::AlgebraError;

const HERMITIAN_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-12;

/// A density matrix: positive semidefinite with unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    rho: Matrix,
}

impl DensityState {
    pub fn new(rho: Matrix) -> Result<Self, AlgebraError> {
        check_square(&rho)?;
        if !is_hermitian(&rho, HERMITIAN_TOL) {
            return Err(AlgebraError::NotHermitian);
        }
        let rho = (&rho + rho.adjoint()) * c(0.5, 0.0);
        let tr = trace(&rho).re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(AlgebraError::InvalidState(format!("trace {tr}")));
        }
        let (vals, _) = hermitian_eigen(&rho);
        if let Some(min) = vals.first() {
            if *min < -PSD_TOL {
                return Err(AlgebraError::InvalidState(format!(
                    "negative eigenvalue {min:e}"
                )));
            }
        }
        Ok(Self { rho })
    }

    /// `|ψ⟩⟨ψ|` for a normalized copy of `psi`.
    pub fn pure(psi: &[Complex64]) -> Result<Self, AlgebraError> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(AlgebraError::InvalidState("zero or non-finite vector".into()));
        }
        let v = Matrix::from_iterator(psi.len(), 1, psi.iter().map(|z| z / norm));
        Ok(Self {
            rho: &v * v.adjoint(),
        })
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            rho: Matrix::identity(d, d) / c(d as f64, 0.0),
        }
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn rho(&self) -> &Matrix {
        &self.rho
    }

    /// `ω(A) = tr(ρA)`.
    pub fn expect(&self, a: &Matrix) -> Complex64 {
        // tr(ρA) = Σ_ij ρ_ij A_ji
        let d = self.dim();
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                s += self.rho[(i, j)] * a[(j, i)];
            }
        }
        s
    }

    /// Reduced state on the first factor of `C^m ⊗ C^n`.
    pub fn partial_trace_second(&self, m: usize, n: usize) -> Result<Self, AlgebraError> {
        self.check_split(m, n)?;
        let mut out = Matrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                out[(i, j)] = (0..n).map(|k| self.rho[(i * n + k, j * n + k)]).sum();
            }
        }
        Ok(Self { rho: out })
    }

    /// Reduced state on the second factor of `C^m ⊗ C^n`.
    pub fn partial_trace_first(&self, m: usize, n: usize) -> Result<Self, AlgebraError> {
        self.check_split(m, n)?;
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..m).map(|k| self.rho[(k * n + i, k * n + j)]).sum();
            }
        }
        Ok(Self { rho: out })
    }

    fn check_split(&self, m: usize, n: usize) -> Result<(), AlgebraError> {
        if m * n != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: m * n,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Distinct eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    pub projectors: Vec<Matrix>,
}

impl SpectralDecomposition {
    pub fn reconstruct(&self) -> Matrix {
        let d = self.projectors.first().map_or(0, |p| p.nrows());
        let mut out = Matrix::zeros(d, d);
        for (a, p) in self.eigenvalues.iter().zip(&self.projectors) {
            out += p * c(*a, 0.0);
        }
        out
    }
}

pub fn spectral_decompose(a: &Matrix) -> Result<SpectralDecomposition, AlgebraError> {
    check_square(a)?;
    if !is_hermitian(a, HERMITIAN_TOL) {
        return Err(AlgebraError::NotHermitian);
    }
    let (vals, vecs) = hermitian_eigen(a);
    let mut eigenvalues = Vec::new();
    let mut projectors = Vec::new();
    for r in cluster_sorted(&vals, CLUSTER_TOL).into_iter().rev() {
        let mean = vals[r.clone()].iter().sum::<f64>() / r.len() as f64;
        let v = columns(&vecs, r);
        eigenvalues.push(mean);
        projectors.push(&v * v.adjoint());
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        projectors,
    })
}

/// `ρ ↦ Σ E ρ E` for a complete family of orthogonal projectors.
pub fn luders_projectors(projectors: &[Matrix], rho: &DensityState) -> DensityState {
    let d = rho.dim();
    let mut out = Matrix::zeros(d, d);
    for e in projectors {
        out += e * &rho.rho * e;
    }
    DensityState { rho: out }
}

/// State after a non-selective measurement of `a`.
pub fn luders_map(a: &Matrix, rho: &DensityState) -> Result<DensityState, AlgebraError> {
    let spec = spectral_decompose(a)?;
    if spec.projectors.first().map(|p| p.nrows()) != Some(rho.dim()) {
        return Err(AlgebraError::DimensionMismatch {
            expected: rho.dim(),
            found: a.nrows(),
        });
    }
    Ok(luders_projectors(&spec.projectors, rho))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoSignalingReport {
    /// `ω(T^A(B))`.
    pub lhs: f64,
    /// `ω(B)`.
    pub rhs: f64,
    pub gap: f64,
    /// Largest entry of `[A, B]`.
    pub commutator: f64,
    pub commuting: bool,
}

/// Compares `ω(B)` before and after a non-selective measurement of `A`.
pub fn no_signaling_check(
    a: &Matrix,
    b: &Matrix,
    rho: &DensityState,
) -> Result<NoSignalingReport, AlgebraError> {
    if !is_hermitian(b, HERMITIAN_TOL) {
        return Err(AlgebraError::NotHermitian);
    }
    let after = luders_map(a, rho)?;
    let lhs = after.expect(b).re;
    let rhs = rho.expect(b).re;
    let commutator = max_abs(&(a * b - b * a));
    Ok(NoSignalingReport {
        lhs,
        rhs,
        gap: (lhs - rhs).abs(),
        commutator,
        commuting: commutator <= 1e-12,
    })
}

/// `ρ₁ ⊗ ρ₂`.
pub fn product_state(omega1: &DensityState, omega2: &DensityState) -> DensityState {
    DensityState {
        rho: omega1.rho.kronecker(&omega2.rho),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndependenceReport {
    /// Largest `|ω(AB) − ω(A)ω(B)|` over the tested pairs.
    pub max_gap: f64,
    pub pairs_checked: usize,
    /// Whether the partial traces reproduce the supplied marginals.
    pub marginals_recovered: Option<bool>,
    pub independent: bool,
}

/// Hermitian basis of `M_n`: diagonal units and symmetric/antisymmetric
/// off-diagonal pairs.
pub fn hermitian_basis(n: usize) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in i..n {
            let mut m = Matrix::zeros(n, n);
            if i == j {
                m[(i, i)] = c(1.0, 0.0);
                out.push(m);
            } else {
                m[(i, j)] = c(1.0, 0.0);
                m[(j, i)] = c(1.0, 0.0);
                out.push(m.clone());
                m[(i, j)] = c(0.0, -1.0);
                m[(j, i)] = c(0.0, 1.0);
                out.push(m);
            }
        }
    }
    out
}

/// Tests `ω(AB) = ω₁(A)ω₂(B)` for `A ∈ alg1 = M_m ⊗ I`, `B ∈ alg2 = I ⊗ M_n`
/// over Hermitian bases of both factors, with `ω₁, ω₂` the restrictions of
/// `ω`. If `marginals` is given, also checks the restrictions equal them.
pub fn statistical_independence_check(
    rho: &DensityState,
    alg1: &MatrixAlgebra,
    alg2: &MatrixAlgebra,
    marginals: Option<(&DensityState, &DensityState)>,
) -> Result<IndependenceReport, AlgebraError> {
    let d = rho.dim();
    let m = (alg1.dimension() as f64).sqrt().round() as usize;
    let n = (alg2.dimension() as f64).sqrt().round() as usize;
    if alg1.dim() != d
        || alg2.dim() != d
        || m * n != d
        || !alg1.same_as(&MatrixAlgebra::tensor_factor(m, n, true))
        || !alg2.same_as(&MatrixAlgebra::tensor_factor(m, n, false))
    {
        return Err(AlgebraError::NotTensorFactor);
    }
    let w1 = rho.partial_trace_second(m, n)?;
    let w2 = rho.partial_trace_first(m, n)?;
    let id_m = Matrix::identity(m, m);
    let id_n = Matrix::identity(n, n);
    let mut max_gap = 0.0f64;
    let mut pairs = 0;
    for a in hermitian_basis(m) {
        let big_a = a.kronecker(&id_n);
        let wa = w1.expect(&a);
        for b in hermitian_basis(n) {
            let big_b = id_m.kronecker(&b);
            let joint = rho.expect(&(&big_a * &big_b));
            max_gap = max_gap.max((joint - wa * w2.expect(&b)).norm());
            pairs += 1;
        }
    }
    let marginals_recovered = marginals.map(|(o1, o2)| {
        max_abs(&(&w1.rho - &o1.rho)) <= 1e-10 && max_abs(&(&w2.rho - &o2.rho)) <= 1e-10
    });
    Ok(IndependenceReport {
        max_gap,
        pairs_checked: pairs,
        marginals_recovered,
        independent: max_gap <= 1e-10 && marginals_recovered.unwrap_or(true),
    })
}

fn check_projector(p: &Matrix) -> Result<(), AlgebraError> {
    check_square(p)?;
    if !is_hermitian(p, HERMITIAN_TOL) || max_abs(&(p * p - p)) > HERMITIAN_TOL {
        return Err(AlgebraError::NotProjector);
    }
    Ok(())
}

/// Rank of `p` in units of the minimal projectors of the factor `a`.
pub fn relative_dimension(p: &Matrix, a: &MatrixAlgebra) -> Result<usize, AlgebraError> {
    check_projector(p)?;
    let unit = a.minimal_projector_rank().ok_or(AlgebraError::NotFactor)?;
    if p.nrows() != a.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: a.dim(),
            found: p.nrows(),
        });
    }
    if !a.contains(p) {
        return Err(AlgebraError::NotInAlgebra);
    }
    let rank = trace(p).re.round() as usize;
    if rank % unit != 0 {
        return Err(AlgebraError::Internal(format!(
            "projector rank {rank} is not a multiple of {unit}"
        )));
    }
    Ok(rank / unit)
}

/// Murray-von Neumann equivalence inside a factor.
pub fn projector_equivalent(
    p1: &Matrix,
    p2: &Matrix,
    a: &MatrixAlgebra,
) -> Result<bool, AlgebraError> {
    Ok(relative_dimension(p1, a)? == relative_dimension(p2, a)?)
}
