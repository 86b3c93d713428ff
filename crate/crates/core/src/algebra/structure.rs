//! Unital *-subalgebras of `M_d` in block form.
//!
//! Every such algebra is unitarily `⊕_i M_{n_i} ⊗ I_{m_i}`. A component is
//! stored as `n_i` isometries `J_a : C^{m_i} → C^d` with orthogonal ranges, so
//! that the matrix units are `E_ab = J_a J_b†` and the commutant is
//! `{Σ_a J_a Y J_a† : Y ∈ M_{m_i}}`. From that form the commutant, the center,
//! projections and membership are all read off in `O(d³)`.
//!
//! The block form is found from a generating set by refinement. A commutant
//! element must be block diagonal on the eigenspaces of any Hermitian element
//! of the algebra; blocks are split until every compression of every generator
//! between two blocks is zero or a multiple of a unitary, and the unitaries are
//! consistent around every cycle of the block graph.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{
    c, cluster_sorted, columns, frobenius, hermitian_eigen, hermitian_parts, hstack, identity,
    Matrix,
};
use super::AlgebraError;

/// Eigenvalue clustering tolerance for normalized generators.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Compressions below this Frobenius norm are treated as zero.
const EDGE_TOL: f64 = 1e-7;
/// Default membership tolerance (relative Frobenius residual).
pub const MEMBERSHIP_TOL: f64 = 1e-9;
const SEED: u64 = 0x5eed_a1;
const RETRIES: u64 = 4;

#[derive(Debug, Clone)]
pub struct Component {
    isometries: Vec<Matrix>,
}

impl Component {
    /// `n_i`: size of the matrix-algebra factor.
    pub fn degree(&self) -> usize {
        self.isometries.len()
    }

    /// `m_i`: how many times the factor is repeated.
    pub fn multiplicity(&self) -> usize {
        self.isometries[0].ncols()
    }

    pub fn isometries(&self) -> &[Matrix] {
        &self.isometries
    }

    fn stacked(&self) -> Matrix {
        hstack(&self.isometries)
    }
}

/// A unital *-subalgebra of `M_d`.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    dim: usize,
    components: Vec<Component>,
}

impl MatrixAlgebra {
    /// Smallest unital *-algebra containing `gens`.
    pub fn from_generators(d: usize, gens: &[Matrix]) -> Result<Self, AlgebraError> {
        for g in gens {
            if g.nrows() != d || g.ncols() != d {
                return Err(AlgebraError::DimensionMismatch {
                    expected: d,
                    found: g.nrows(),
                });
            }
            if g.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(AlgebraError::NonFinite);
            }
        }
        let herm = normalized_hermitian_generators(gens);
        let mut last = None;
        for attempt in 0..RETRIES {
            let components = decompose(d, &herm, SEED + attempt)?;
            let alg = Self { dim: d, components };
            let worst = gens
                .iter()
                .map(|g| alg.residual(g))
                .fold(0.0, f64::max);
            if worst <= 1e-8 {
                return Ok(alg);
            }
            last = Some(worst);
        }
        Err(AlgebraError::Decomposition(format!(
            "generators not reproduced; residual {:e}",
            last.unwrap_or(f64::NAN)
        )))
    }

    /// `C·I`.
    pub fn scalars(d: usize) -> Self {
        Self {
            dim: d,
            components: vec![Component {
                isometries: vec![identity(d)],
            }],
        }
    }

    /// All of `M_d`.
    pub fn full(d: usize) -> Self {
        let id = identity(d);
        Self {
            dim: d,
            components: vec![Component {
                isometries: (0..d).map(|k| columns(&id, k..k + 1)).collect(),
            }],
        }
    }

    /// `M_m ⊗ I_n` (left) or `I_m ⊗ M_n` (right) inside `M_{mn}`.
    pub fn tensor_factor(m: usize, n: usize, left: bool) -> Self {
        let d = m * n;
        let id = identity(d);
        // basis index of |i⟩⊗|j⟩ is i*n + j
        let isometries = if left {
            (0..m)
                .map(|i| hstack(&(0..n).map(|j| columns(&id, i * n + j..i * n + j + 1)).collect::<Vec<_>>()))
                .collect()
        } else {
            (0..n)
                .map(|j| hstack(&(0..m).map(|i| columns(&id, i * n + j..i * n + j + 1)).collect::<Vec<_>>()))
                .collect()
        };
        Self {
            dim: d,
            components: vec![Component { isometries }],
        }
    }

    /// Matrix size `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Linear dimension `Σ n_i²`.
    pub fn dimension(&self) -> usize {
        self.components.iter().map(|c| c.degree().pow(2)).sum()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_factor(&self) -> bool {
        self.components.len() == 1
    }

    /// `(n_i, m_i)` per simple component, sorted.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        let mut s: Vec<_> = self
            .components
            .iter()
            .map(|c| (c.degree(), c.multiplicity()))
            .collect();
        s.sort_unstable();
        s
    }

    /// Read-off commutant `⊕ I_{n_i} ⊗ M_{m_i}`.
    pub fn commutant(&self) -> Self {
        let components = self
            .components
            .iter()
            .map(|comp| {
                let m = comp.multiplicity();
                let isometries = (0..m)
                    .map(|p| {
                        let cols: Vec<Matrix> = comp
                            .isometries
                            .iter()
                            .map(|j| columns(j, p..p + 1))
                            .collect();
                        hstack(&cols)
                    })
                    .collect();
                Component { isometries }
            })
            .collect();
        Self {
            dim: self.dim,
            components,
        }
    }

    /// Commutant of the commutant, recomputed from the commutant's generators
    /// rather than read off; a mismatch with `self` is an internal fault.
    pub fn bicommutant(&self) -> Result<Self, AlgebraError> {
        let prime = self.commutant();
        let bi = Self::from_generators(self.dim, &prime.compact_generators())?.commutant();
        if !bi.same_as(self) {
            return Err(AlgebraError::Internal(format!(
                "bicommutant has dimension {} but the algebra has {}",
                bi.dimension(),
                self.dimension()
            )));
        }
        Ok(bi)
    }

    /// Center, one central projection per simple component.
    pub fn center(&self) -> Self {
        let components = self
            .components
            .iter()
            .map(|comp| Component {
                isometries: vec![comp.stacked()],
            })
            .collect();
        Self {
            dim: self.dim,
            components,
        }
    }

    /// Central projections `Σ_a J_a J_a†`, one per simple component.
    pub fn central_projections(&self) -> Vec<Matrix> {
        self.components
            .iter()
            .map(|comp| {
                let s = comp.stacked();
                &s * s.adjoint()
            })
            .collect()
    }

    /// Matrix units `E_{a0}` of every component.
    pub fn generators(&self) -> Vec<Matrix> {
        let mut out = Vec::new();
        for comp in &self.components {
            let j0 = comp.isometries[0].adjoint();
            for ja in &comp.isometries {
                out.push(ja * &j0);
            }
        }
        out
    }

    /// Two Hermitian elements that generate the algebra: a diagonal
    /// `Σ w_ca E_aa` with distinct weights and the shift `Σ (E_{a+1,a} + h.c.)`.
    pub fn compact_generators(&self) -> Vec<Matrix> {
        let mut diag = Matrix::zeros(self.dim, self.dim);
        let mut shift = Matrix::zeros(self.dim, self.dim);
        let mut k = 0usize;
        for comp in &self.components {
            let js = &comp.isometries;
            for (a, ja) in js.iter().enumerate() {
                k += 1;
                // fractional parts of k·φ are pairwise distinct
                let w = (k as f64 * 0.618_033_988_749_895).fract() + 0.5;
                diag += ja * ja.adjoint() * c(w, 0.0);
                if a + 1 < js.len() {
                    let e = &js[a + 1] * ja.adjoint();
                    shift += &e + e.adjoint();
                }
            }
        }
        if frobenius(&shift) == 0.0 {
            vec![diag]
        } else {
            vec![diag, shift]
        }
    }

    /// Trace-orthonormal basis `E_ab / sqrt(m)`.
    pub fn basis(&self) -> Vec<Matrix> {
        let mut out = Vec::with_capacity(self.dimension());
        for comp in &self.components {
            let s = c(1.0 / (comp.multiplicity() as f64).sqrt(), 0.0);
            for ja in &comp.isometries {
                for jb in &comp.isometries {
                    out.push(ja * jb.adjoint() * s);
                }
            }
        }
        out
    }

    /// Trace-orthogonal projection onto the algebra.
    pub fn project(&self, x: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for comp in &self.components {
            let n = comp.degree();
            let m = comp.multiplicity();
            let s = comp.stacked();
            let z = s.adjoint() * x * &s;
            let mut coeff = Matrix::zeros(n * m, n * m);
            for a in 0..n {
                for b in 0..n {
                    let tr: num_complex::Complex64 =
                        (0..m).map(|k| z[(a * m + k, b * m + k)]).sum();
                    let v = tr / m as f64;
                    for k in 0..m {
                        coeff[(a * m + k, b * m + k)] = v;
                    }
                }
            }
            out += &s * coeff * s.adjoint();
        }
        out
    }

    /// Relative Frobenius distance from `x` to the algebra.
    pub fn residual(&self, x: &Matrix) -> f64 {
        let r = frobenius(&(x - self.project(x)));
        r / frobenius(x).max(1.0)
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        self.residual(x) <= MEMBERSHIP_TOL
    }

    pub fn is_subalgebra_of(&self, other: &Self) -> bool {
        self.dim == other.dim && self.compact_generators().iter().all(|g| other.contains(g))
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.dimension() == other.dimension() && self.is_subalgebra_of(other)
    }

    pub fn join(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.dim != other.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut gens = self.compact_generators();
        gens.extend(other.compact_generators());
        Self::from_generators(self.dim, &gens)
    }

    /// `A ∩ B = (A' ∨ B')'`.
    pub fn intersection(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.commutant().join(&other.commutant())?.commutant())
    }

    /// Multiplicity of a factor, i.e. the rank of its minimal projectors.
    pub fn minimal_projector_rank(&self) -> Option<usize> {
        self.is_factor().then(|| self.components[0].multiplicity())
    }
}

fn normalized_hermitian_generators(gens: &[Matrix]) -> Vec<Matrix> {
    let mut out = Vec::new();
    for g in gens {
        let (re, im) = hermitian_parts(g);
        for h in [re, im] {
            let n = frobenius(&h);
            if n > 1e-13 {
                out.push(h / c(n, 0.0));
            }
        }
    }
    out
}

/// Splits `block` (d×m) by the eigenspaces of the Hermitian `k` (m×m).
fn split_block(block: &Matrix, k: &Matrix, tol: f64) -> Vec<Matrix> {
    let (vals, vecs) = hermitian_eigen(k);
    cluster_sorted(&vals, tol)
        .into_iter()
        .map(|r| block * columns(&vecs, r))
        .collect()
}

fn cluster_count(k: &Matrix, tol: f64) -> usize {
    let m = k.nrows();
    let mean = (0..m).map(|i| k[(i, i)].re).sum::<f64>() / m as f64;
    let mut dev = k.clone();
    for i in 0..m {
        dev[(i, i)] -= c(mean, 0.0);
    }
    if frobenius(&dev) <= tol * 1e-2 {
        return 1;
    }
    let (vals, _) = hermitian_eigen(k);
    cluster_sorted(&vals, tol).len()
}

/// Clustering tolerance for a Gram matrix `C†C`: singular values of `C`
/// closer than `CLUSTER_TOL` count as equal.
fn gram_tol(k: &Matrix) -> f64 {
    2.0 * CLUSTER_TOL * frobenius(k).sqrt().max(1e-300)
}

/// Hermitian operator on a block whose eigenspaces the commutant must
/// respect, with the clustering tolerance that flagged it.
type Splitter = (Matrix, f64);

fn decompose(d: usize, herm: &[Matrix], seed: u64) -> Result<Vec<Component>, AlgebraError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks = vec![identity(d)];
    if !herm.is_empty() {
        let mut h = Matrix::zeros(d, d);
        for k in herm {
            h += k * c(rng.random_range(-1.0..1.0), 0.0);
        }
        // a few quadratic terms break accidental degeneracies of linear
        // combinations
        for _ in 0..herm.len().min(4) {
            let i = rng.random_range(0..herm.len());
            let j = rng.random_range(0..herm.len());
            let (re, _) = hermitian_parts(&(&herm[i] * &herm[j]));
            h += re * c(rng.random_range(-0.5..0.5), 0.0);
        }
        blocks = split_block(&blocks[0], &h, CLUSTER_TOL);
    }

    for _ in 0..4 * d + 8 {
        let mut splitters: Vec<Option<Splitter>> = vec![None; blocks.len()];
        let mut edges: Vec<(usize, usize, Matrix)> = Vec::new();
        let q = hstack(&blocks);
        let offsets: Vec<usize> = blocks
            .iter()
            .scan(0, |acc, b| {
                let o = *acc;
                *acc += b.ncols();
                Some(o)
            })
            .collect();
        let sizes: Vec<usize> = blocks.iter().map(|b| b.ncols()).collect();
        let qa = q.adjoint();

        for k in herm {
            let kt = &qa * k * &q;
            for a in 0..blocks.len() {
                if splitters[a].is_some() {
                    continue;
                }
                let kaa = kt.view((offsets[a], offsets[a]), (sizes[a], sizes[a])).into_owned();
                if cluster_count(&kaa, CLUSTER_TOL) > 1 {
                    splitters[a] = Some((kaa, CLUSTER_TOL));
                }
            }
            for a in 0..blocks.len() {
                for b in a + 1..blocks.len() {
                    let cab = kt.view((offsets[a], offsets[b]), (sizes[a], sizes[b])).into_owned();
                    if frobenius(&cab) <= EDGE_TOL {
                        continue;
                    }
                    let s_right = cab.adjoint() * &cab;
                    let s_left = &cab * cab.adjoint();
                    let (tol_r, tol_l) = (gram_tol(&s_right), gram_tol(&s_left));
                    let right_ok = cluster_count(&s_right, tol_r) == 1;
                    let left_ok = cluster_count(&s_left, tol_l) == 1;
                    if !right_ok && splitters[b].is_none() {
                        splitters[b] = Some((s_right.clone(), tol_r));
                    }
                    if !left_ok && splitters[a].is_none() {
                        splitters[a] = Some((s_left, tol_l));
                    }
                    if right_ok && left_ok && sizes[a] == sizes[b] {
                        let scale = (0..sizes[b]).map(|i| s_right[(i, i)].re).sum::<f64>()
                            / sizes[b] as f64;
                        edges.push((a, b, cab / c(scale.sqrt(), 0.0)));
                    }
                }
            }
        }

        if splitters.iter().any(Option::is_some) {
            blocks = apply_splits(&blocks, &splitters);
            continue;
        }

        // transports along a spanning forest of the block graph
        let nb = blocks.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nb];
        for (e, (a, b, _)) in edges.iter().enumerate() {
            adj[*a].push(e);
            adj[*b].push(e);
        }
        let mut transport: Vec<Option<Matrix>> = vec![None; nb];
        let mut root_of = vec![usize::MAX; nb];
        let mut roots = Vec::new();
        for r in 0..nb {
            if transport[r].is_some() {
                continue;
            }
            roots.push(r);
            transport[r] = Some(identity(sizes[r]));
            root_of[r] = r;
            let mut queue = VecDeque::from([r]);
            while let Some(x) = queue.pop_front() {
                for &e in &adj[x] {
                    let (a, b, w) = &edges[e];
                    // Y_a = W Y_b W†, Y_a = T_a Y_r T_a†
                    let (next, t) = if *a == x {
                        (*b, w.adjoint() * transport[x].as_ref().unwrap())
                    } else {
                        (*a, w * transport[x].as_ref().unwrap())
                    };
                    if transport[next].is_none() {
                        transport[next] = Some(t);
                        root_of[next] = r;
                        queue.push_back(next);
                    }
                }
            }
        }

        let mut splitters: Vec<Option<Splitter>> = vec![None; nb];
        for (a, b, w) in &edges {
            let r = root_of[*a];
            if splitters[r].is_some() {
                continue;
            }
            let ta = transport[*a].as_ref().unwrap();
            let tb = transport[*b].as_ref().unwrap();
            let u = ta.adjoint() * w * tb;
            let (re, im) = hermitian_parts(&u);
            if cluster_count(&re, CLUSTER_TOL) > 1 {
                splitters[r] = Some((re, CLUSTER_TOL));
            } else if cluster_count(&im, CLUSTER_TOL) > 1 {
                splitters[r] = Some((im, CLUSTER_TOL));
            }
        }
        if splitters.iter().any(Option::is_some) {
            blocks = apply_splits(&blocks, &splitters);
            continue;
        }

        let components = roots
            .iter()
            .map(|&r| Component {
                isometries: (0..nb)
                    .filter(|&a| root_of[a] == r)
                    .map(|a| &blocks[a] * transport[a].as_ref().unwrap())
                    .collect(),
            })
            .collect();
        return Ok(components);
    }
    Err(AlgebraError::Decomposition(
        "block refinement did not converge".into(),
    ))
}

fn apply_splits(blocks: &[Matrix], splitters: &[Option<Splitter>]) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(blocks.len() + 1);
    for (b, s) in blocks.iter().zip(splitters) {
        match s {
            Some((k, tol)) => out.extend(split_block(b, k, *tol)),
            None => out.push(b.clone()),
        }
    }
    out
}
