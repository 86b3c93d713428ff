//! Direct linear-algebra routes: span growth and the `d²`-dimensional
//! commutant solve.
//!
//! These are slow (the solve is `O(d⁶)`) and are kept as an independent
//! reference for the block-form engine on small `d`.

use super::matrix::{c, frobenius, hermitian_eigen, identity, trace_inner, Matrix};
use super::AlgebraError;

/// Rank tolerance for pivoted orthogonalization.
pub const SPAN_TOL: f64 = 1e-10;
/// Largest `d` the reference routes accept.
pub const SPAN_MAX_DIM: usize = 16;

/// A trace-orthonormal basis of a subspace of `M_d`.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    dim: usize,
    elems: Vec<Matrix>,
}

impl SpanBasis {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            elems: Vec::new(),
        }
    }

    pub fn from_matrices(dim: usize, ms: &[Matrix]) -> Self {
        let mut s = Self::new(dim);
        for m in ms {
            s.insert(m);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elems
    }

    fn reduce(&self, m: &Matrix) -> Matrix {
        let mut r = m.clone();
        // two Gram-Schmidt passes keep the basis orthonormal to rounding
        for _ in 0..2 {
            for e in &self.elems {
                let k = trace_inner(e, &r);
                r -= e * k;
            }
        }
        r
    }

    /// Adds `m` if it is independent of the current span; returns whether it was.
    pub fn insert(&mut self, m: &Matrix) -> bool {
        let scale = frobenius(m);
        if scale == 0.0 {
            return false;
        }
        let r = self.reduce(m);
        let n = frobenius(&r);
        if n <= SPAN_TOL * scale.max(1.0) {
            return false;
        }
        self.elems.push(r / c(n, 0.0));
        true
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        frobenius(&self.reduce(m)) <= SPAN_TOL * frobenius(m).max(1.0) * 10.0
    }

    pub fn same_span(&self, other: &SpanBasis) -> bool {
        self.len() == other.len() && other.elems.iter().all(|e| self.contains(e))
    }

    /// Projector onto the span as a `d² × d²` matrix on column-major `vec`.
    fn superprojector(&self) -> Matrix {
        let n = self.dim * self.dim;
        let mut p = Matrix::zeros(n, n);
        for e in &self.elems {
            let v = Matrix::from_column_slice(n, 1, e.as_slice());
            p += &v * v.adjoint();
        }
        p
    }
}

fn check_dims(d: usize, gens: &[Matrix]) -> Result<(), AlgebraError> {
    if d > SPAN_MAX_DIM {
        return Err(AlgebraError::TooLarge {
            dim: d,
            limit: SPAN_MAX_DIM,
        });
    }
    for g in gens {
        if g.nrows() != d || g.ncols() != d {
            return Err(AlgebraError::DimensionMismatch {
                expected: d,
                found: g.nrows(),
            });
        }
    }
    Ok(())
}

/// Unital *-closure by repeated left multiplication until the span stops
/// growing.
pub fn closure_by_span_growth(d: usize, gens: &[Matrix]) -> Result<SpanBasis, AlgebraError> {
    check_dims(d, gens)?;
    let mut letters: Vec<Matrix> = Vec::new();
    for g in gens {
        letters.push(g.clone());
        letters.push(g.adjoint());
    }
    let mut basis = SpanBasis::new(d);
    basis.insert(&identity(d));
    let mut frontier = vec![identity(d)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for l in &letters {
                let p = l * w;
                if basis.insert(&p) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Ok(basis)
}

fn null_space(m: &Matrix, d: usize) -> SpanBasis {
    let (vals, vecs) = hermitian_eigen(m);
    let top = vals.last().copied().unwrap_or(0.0).abs().max(1.0);
    let mut out = SpanBasis::new(d);
    for (k, v) in vals.iter().enumerate() {
        if *v > 1e-9 * top {
            break;
        }
        let col = vecs.column(k);
        out.insert(&Matrix::from_column_slice(d, d, col.as_slice()));
    }
    out
}

/// Solutions of `XG = GX` for every generator and its adjoint, as the null
/// space of `Σ L_G† L_G` with `L_G = I⊗G − Gᵀ⊗I`.
pub fn commutant_by_solve(d: usize, gens: &[Matrix]) -> Result<SpanBasis, AlgebraError> {
    check_dims(d, gens)?;
    let id = identity(d);
    let n = d * d;
    let mut m = Matrix::zeros(n, n);
    for g in gens {
        for h in [g.clone(), g.adjoint()] {
            let l = id.kronecker(&h) - h.transpose().kronecker(&id);
            m += l.adjoint() * l;
        }
    }
    Ok(null_space(&m, d))
}

/// Linear intersection of two spans.
pub fn span_intersection(a: &SpanBasis, b: &SpanBasis) -> Result<SpanBasis, AlgebraError> {
    if a.dim != b.dim {
        return Err(AlgebraError::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    let d = a.dim;
    check_dims(d, &[])?;
    let n = d * d;
    let m = identity(n) * c(2.0, 0.0) - a.superprojector() - b.superprojector();
    Ok(null_space(&m, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::{embed, Pauli};

    #[test]
    fn closure_of_single_pauli() {
        let x = embed(2, 0, &Pauli::X.matrix());
        let b = closure_by_span_growth(4, &[x]).unwrap();
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn closure_of_nothing_is_scalars() {
        assert_eq!(closure_by_span_growth(3, &[]).unwrap().len(), 1);
    }

    #[test]
    fn solve_commutant_of_tensor_factor() {
        let gens: Vec<_> = Pauli::ALL
            .iter()
            .map(|p| embed(2, 0, &p.matrix()))
            .collect();
        let comm = commutant_by_solve(4, &gens).unwrap();
        assert_eq!(comm.len(), 4);
        let right: Vec<_> = Pauli::ALL
            .iter()
            .map(|p| embed(2, 1, &p.matrix()))
            .collect();
        let mut expect = closure_by_span_growth(4, &right).unwrap();
        assert!(comm.same_span(&expect));
        expect.insert(&identity(4));
        assert_eq!(expect.len(), 4);
    }

    #[test]
    fn intersection_of_diagonal_and_tensor_factor() {
        let z0 = embed(2, 0, &Pauli::Z.matrix());
        let z1 = embed(2, 1, &Pauli::Z.matrix());
        let diag = closure_by_span_growth(4, &[z0.clone(), z1]).unwrap();
        let left = closure_by_span_growth(
            4,
            &Pauli::ALL
                .iter()
                .map(|p| embed(2, 0, &p.matrix()))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let both = span_intersection(&diag, &left).unwrap();
        assert_eq!(both.len(), 2);
        assert!(both.contains(&z0));
    }

    #[test]
    fn rejects_large_dimension() {
        assert!(closure_by_span_growth(32, &[]).is_err());
    }
}
