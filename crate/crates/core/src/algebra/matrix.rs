use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::AlgebraError;

pub type Matrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(d: usize) -> Matrix {
    Matrix::identity(d, d)
}

#[cfg(test)]
pub fn from_real_rows(d: usize, rows: &[f64]) -> Matrix {
    Matrix::from_row_iterator(d, d, rows.iter().map(|x| c(*x, 0.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> Matrix {
        match self {
            Pauli::X => Matrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
            Pauli::Y => Matrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
            Pauli::Z => Matrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        }
    }
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    a.kronecker(b)
}

/// `op` acting on qubit `site` of an `n`-qubit register; qubit 0 is the most
/// significant tensor factor.
pub fn embed(n: usize, site: usize, op: &Matrix) -> Matrix {
    let k = op.nrows().trailing_zeros() as usize;
    assert!(site + k <= n, "operator does not fit on the register");
    let left = identity(1 << site);
    let right = identity(1 << (n - site - k));
    kron(&kron(&left, op), &right)
}

pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    a * b - b * a
}

pub fn frobenius(a: &Matrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(a: &Matrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `tr(a† b)`.
pub fn trace_inner(a: &Matrix, b: &Matrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn trace(a: &Matrix) -> Complex64 {
    a.diagonal().iter().sum()
}

pub fn is_hermitian(a: &Matrix, tol: f64) -> bool {
    a.is_square() && max_abs(&(a - a.adjoint())) <= tol
}

/// `(a + a†)/2` and `(a - a†)/(2i)`.
pub fn hermitian_parts(a: &Matrix) -> (Matrix, Matrix) {
    let ad = a.adjoint();
    let re = (a + &ad) * c(0.5, 0.0);
    let im = (a - &ad) * c(0.0, -0.5);
    (re, im)
}

pub fn check_square(a: &Matrix) -> Result<usize, AlgebraError> {
    if !a.is_square() {
        return Err(AlgebraError::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(AlgebraError::NonFinite);
    }
    Ok(a.nrows())
}

/// Wire form of a matrix: row-major `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &Matrix) -> Self {
        let d = m.nrows();
        let mut entries = Vec::with_capacity(d * d);
        for r in 0..d {
            for col in 0..d {
                let z = m[(r, col)];
                entries.push([z.re, z.im]);
            }
        }
        Self { dim: d, entries }
    }

    pub fn to_matrix(&self) -> Result<Matrix, AlgebraError> {
        if self.entries.len() != self.dim * self.dim {
            return Err(AlgebraError::Malformed(format!(
                "{} entries for a {}x{} matrix",
                self.entries.len(),
                self.dim,
                self.dim
            )));
        }
        let m = Matrix::from_row_iterator(
            self.dim,
            self.dim,
            self.entries.iter().map(|[re, im]| c(*re, *im)),
        );
        check_square(&m)?;
        Ok(m)
    }
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(a: &Matrix) -> (Vec<f64>, Matrix) {
    let d = a.nrows();
    if d == 0 {
        return (Vec::new(), a.clone());
    }
    let (h, _) = hermitian_parts(a);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = Matrix::zeros(d, d);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &eig.eigenvectors.column(i));
    }
    (values, vecs)
}

/// Groups sorted values into runs whose consecutive gaps are at most `tol`.
pub fn cluster_sorted(values: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tol {
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

/// Columns `range` of `m` as a new matrix.
pub fn columns(m: &Matrix, range: std::ops::Range<usize>) -> Matrix {
    m.columns(range.start, range.len()).into_owned()
}

pub fn hstack(blocks: &[Matrix]) -> Matrix {
    let rows = blocks.first().map_or(0, |b| b.nrows());
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = Matrix::zeros(rows, cols);
    let mut off = 0;
    for b in blocks {
        out.view_mut((0, off), (rows, b.ncols())).copy_from(b);
        off += b.ncols();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let (x, y, z) = (Pauli::X.matrix(), Pauli::Y.matrix(), Pauli::Z.matrix());
        assert!(max_abs(&(&x * &y - &z * I)) < 1e-15);
        assert!(max_abs(&(&x * &x - identity(2))) < 1e-15);
        assert!(is_hermitian(&y, 0.0));
    }

    #[test]
    fn embed_orders_sites_most_significant_first() {
        let z0 = embed(2, 0, &Pauli::Z.matrix());
        let diag: Vec<f64> = z0.diagonal().iter().map(|z| z.re).collect();
        assert_eq!(diag, vec![1.0, 1.0, -1.0, -1.0]);
    }

    #[test]
    fn eigen_is_sorted_and_reconstructs() {
        let m = from_real_rows(3, &[2.0, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0, -1.0]);
        let (vals, vecs) = hermitian_eigen(&m);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let diag = Matrix::from_diagonal(&nalgebra::DVector::from_iterator(
            3,
            vals.iter().map(|v| c(*v, 0.0)),
        ));
        let back = &vecs * diag * vecs.adjoint();
        assert!(max_abs(&(back - m)) < 1e-12);
    }

    #[test]
    fn clustering() {
        let v = [0.0, 1e-12, 0.5, 0.5 + 1e-10, 2.0];
        let cl = cluster_sorted(&v, 1e-8);
        assert_eq!(cl, vec![0..2, 2..4, 4..5]);
    }

    #[test]
    fn json_rejects_wrong_length() {
        let j = MatrixJson {
            dim: 2,
            entries: vec![[1.0, 0.0]; 3],
        };
        assert!(j.to_matrix().is_err());
    }
}
