//! A local net of algebras over a brick-wall circuit.
//!
//! Cells are `(layer, site)` with layers `0..=depth`. The cell at layer `l`
//! carries the single-site Paulis in the Heisenberg picture,
//! `U(l)† σ U(l)` with `U(l)` the first `l` layers, and a region's algebra is
//! the *-algebra those generate. Spacelike means `|Δsite| > |Δlayer|`, the
//! circuit's own lightcone.

mod axioms;
mod proof;

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{embed, AlgebraError, Matrix, MatrixAlgebra, Pauli, DEFAULT_MAX_DIM};
use crate::geometry::{CellGrid, CellSet};
use crate::protocols::BrickWallCircuit;

pub use axioms::{
    check_essential_duality, check_isotony, check_microcausality, check_region_microcausality,
    check_slice_generation, random_nested_pairs, sub_slice_control, AxiomReport, Witness,
};
pub use proof::{replay_lpc_proof, CylinderSpec, NetParams, ProofReport, ProofStep};

/// Largest depth for which every assertion stays exact dense algebra.
pub const MAX_DEPTH: usize = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetError {
    #[error("{n} qubits give dimension {dim}, above the cap {cap}")]
    TooLarge { n: usize, dim: usize, cap: usize },
    #[error("depth {0} exceeds the limit {MAX_DEPTH}")]
    TooDeep(usize),
    #[error("cell ({layer}, {site}) lies outside the net")]
    CellOutOfRange { layer: usize, site: usize },
    #[error("region belongs to a different net")]
    GridMismatch,
    #[error("cylinder does not fit: {0}")]
    DoesNotFit(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A set of `(layer, site)` cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscreteRegion {
    cells: CellSet,
}

impl Serialize for DiscreteRegion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.cells.iter().map(|(l, x)| [l, x]))
    }
}

impl DiscreteRegion {
    pub fn empty(grid: CellGrid) -> Self {
        Self {
            cells: CellSet::empty(grid),
        }
    }

    pub fn full(grid: CellGrid) -> Self {
        Self {
            cells: CellSet::full(grid),
        }
    }

    pub fn from_cells(grid: CellGrid, cells: &[(usize, usize)]) -> Result<Self, NetError> {
        CellSet::from_cells(grid, cells.iter().copied())
            .map(|cells| Self { cells })
            .map_err(|(layer, site)| NetError::CellOutOfRange { layer, site })
    }

    /// Every site at layer `layer`.
    pub fn slice(grid: CellGrid, layer: usize) -> Result<Self, NetError> {
        Self::band(grid, layer, 1)
    }

    /// Every site at layers `first..first + layers`.
    pub fn band(grid: CellGrid, first: usize, layers: usize) -> Result<Self, NetError> {
        if layers == 0 || first + layers > grid.rows {
            return Err(NetError::CellOutOfRange {
                layer: first + layers.saturating_sub(1),
                site: 0,
            });
        }
        Ok(Self {
            cells: CellSet::from_predicate(grid, |l, _| l >= first && l < first + layers),
        })
    }

    pub fn grid(&self) -> CellGrid {
        self.cells.grid()
    }

    pub fn cells(&self) -> &CellSet {
        &self.cells
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells.iter()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, layer: usize, site: usize) -> bool {
        self.cells.contains(layer, site)
    }

    pub fn complement(&self) -> Self {
        Self {
            cells: self.cells.spacelike_complement(),
        }
    }

    pub fn double_complement(&self) -> Self {
        Self {
            cells: self.cells.double_complement(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            cells: self.cells.union(&other.cells),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            cells: self.cells.intersection(&other.cells),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self {
            cells: self.cells.difference(&other.cells),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.cells.is_subset(&other.cells)
    }

    pub fn to_pairs(&self) -> Vec<[usize; 2]> {
        self.iter().map(|(l, s)| [l, s]).collect()
    }
}

/// Region algebras of one circuit, memoized by cell set.
pub struct LocalNet {
    circuit: BrickWallCircuit,
    grid: CellGrid,
    dim: usize,
    generators: Vec<[Matrix; 3]>,
    cache: RwLock<HashMap<CellSet, Arc<MatrixAlgebra>>>,
}

impl std::fmt::Debug for LocalNet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LocalNet")
            .field("n_qubits", &self.circuit.n_qubits())
            .field("depth", &self.circuit.depth())
            .field("cached", &self.cache.read().len())
            .finish()
    }
}

pub fn build_net(circuit: BrickWallCircuit) -> Result<LocalNet, NetError> {
    build_net_with_cap(circuit, DEFAULT_MAX_DIM)
}

pub fn build_net_with_cap(circuit: BrickWallCircuit, max_dim: usize) -> Result<LocalNet, NetError> {
    let n = circuit.n_qubits();
    let dim = 1usize << n;
    if dim > max_dim {
        return Err(NetError::TooLarge { n, dim, cap: max_dim });
    }
    let depth = circuit.depth();
    if depth > MAX_DEPTH {
        return Err(NetError::TooDeep(depth));
    }
    let grid = CellGrid::new(depth + 1, n);
    let paulis: Vec<Vec<Matrix>> = (0..n)
        .map(|s| Pauli::ALL.iter().map(|p| embed(n, s, &p.matrix())).collect())
        .collect();
    let mut generators = Vec::with_capacity(grid.len());
    let mut u = crate::algebra::identity(dim);
    for l in 0..=depth {
        if l > 0 {
            u = circuit.layer_unitary(l - 1) * u;
        }
        let ud = u.adjoint();
        for ps in &paulis {
            generators.push([&ud * &ps[0] * &u, &ud * &ps[1] * &u, &ud * &ps[2] * &u]);
        }
    }
    Ok(LocalNet {
        circuit,
        grid,
        dim,
        generators,
        cache: RwLock::new(HashMap::new()),
    })
}

impl LocalNet {
    pub fn circuit(&self) -> &BrickWallCircuit {
        &self.circuit
    }

    pub fn grid(&self) -> CellGrid {
        self.grid
    }

    pub fn n_qubits(&self) -> usize {
        self.grid.cols
    }

    pub fn depth(&self) -> usize {
        self.grid.rows - 1
    }

    /// Hilbert-space dimension `2ⁿ`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `U(layer)† σ U(layer)` for σ = X, Y, Z at `site`.
    pub fn cell_generators(&self, layer: usize, site: usize) -> &[Matrix; 3] {
        &self.generators[self.grid.index(layer, site)]
    }

    /// Sites `[site − layer, site + layer]` the cell's operators act on at
    /// layer 0.
    pub fn support_cone(&self, layer: usize, site: usize) -> (usize, usize) {
        (site.saturating_sub(layer), (site + layer).min(self.n_qubits() - 1))
    }

    pub fn algebra(&self, region: &DiscreteRegion) -> Result<Arc<MatrixAlgebra>, NetError> {
        if region.grid() != self.grid {
            return Err(NetError::GridMismatch);
        }
        if let Some(a) = self.cache.read().get(&region.cells) {
            return Ok(a.clone());
        }
        let gens: Vec<Matrix> = region
            .iter()
            .flat_map(|(l, s)| self.cell_generators(l, s).iter().cloned())
            .collect();
        let alg = Arc::new(MatrixAlgebra::from_generators(self.dim, &gens)?);
        self.cache
            .write()
            .entry(region.cells.clone())
            .or_insert_with(|| alg.clone());
        Ok(alg)
    }

    pub fn cached_regions(&self) -> usize {
        self.cache.read().len()
    }

    pub fn region(&self, cells: &[(usize, usize)]) -> Result<DiscreteRegion, NetError> {
        DiscreteRegion::from_cells(self.grid, cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(n: usize, depth: usize) -> LocalNet {
        build_net(BrickWallCircuit::haar(n, depth, 3).unwrap()).unwrap()
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            build_net(BrickWallCircuit::haar(7, 1, 0).unwrap()),
            Err(NetError::TooLarge { .. })
        ));
        assert!(matches!(
            build_net(BrickWallCircuit::haar(3, 7, 0).unwrap()),
            Err(NetError::TooDeep(7))
        ));
    }

    #[test]
    fn small_regions() {
        let net = net(4, 2);
        let cell = net.region(&[(1, 2)]).unwrap();
        assert_eq!(net.algebra(&cell).unwrap().dimension(), 4);
        assert_eq!(net.algebra(&DiscreteRegion::empty(net.grid())).unwrap().dimension(), 1);
        let slice = DiscreteRegion::slice(net.grid(), 0).unwrap();
        assert_eq!(net.algebra(&slice).unwrap().dimension(), 256);
        assert_eq!(net.cached_regions(), 3);
        net.algebra(&cell).unwrap();
        assert_eq!(net.cached_regions(), 3);
    }

    #[test]
    fn rejects_foreign_regions() {
        let a = net(3, 1);
        let r = DiscreteRegion::empty(CellGrid::new(5, 5));
        assert!(matches!(a.algebra(&r), Err(NetError::GridMismatch)));
        assert!(a.region(&[(2, 0)]).is_err());
    }

    #[test]
    fn serializes_as_cell_list() {
        let net = net(3, 1);
        let r = net.region(&[(1, 2), (0, 1)]).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), "[[0,1],[1,2]]");
    }
}
