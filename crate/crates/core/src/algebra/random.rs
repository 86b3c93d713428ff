use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::{c, Matrix};

fn gaussian(d: usize, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(d, d, |_, _| {
        c(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    })
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of `R`'s diagonal moved into `Q`.
pub fn random_unitary(d: usize, rng: &mut impl Rng) -> Matrix {
    let qr = gaussian(d, rng).qr();
    let (mut q, r) = qr.unpack();
    for k in 0..d {
        let z = r[(k, k)];
        let phase = if z.norm() > 0.0 { z / z.norm() } else { c(1.0, 0.0) };
        let mut col = q.column_mut(k);
        col *= phase;
    }
    q
}

/// Hermitian matrix with Gaussian entries.
pub fn random_hermitian(d: usize, rng: &mut impl Rng) -> Matrix {
    let g = gaussian(d, rng);
    (&g + g.adjoint()) * c(0.5, 0.0)
}
