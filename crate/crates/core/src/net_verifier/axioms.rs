use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{DiscreteRegion, LocalNet, NetError};
use crate::algebra::max_abs;

/// Entry size below which a commutator counts as zero.
pub const COMMUTATOR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    RegionPair {
        first: Vec<[usize; 2]>,
        second: Vec<[usize; 2]>,
        detail: String,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
        detail: String,
    },
    NoncommutingPair {
        first: [usize; 2],
        second: [usize; 2],
        norm: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub pass: bool,
    pub checked: usize,
    pub not_applicable: usize,
    pub dims: BTreeMap<String, usize>,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    fn new(axiom: &str) -> Self {
        Self {
            axiom: axiom.into(),
            pass: true,
            checked: 0,
            not_applicable: 0,
            dims: BTreeMap::new(),
            witness: None,
        }
    }

    fn fail(&mut self, w: Witness) {
        if self.pass {
            self.pass = false;
            self.witness = Some(w);
        }
    }
}

/// `O₁ ⊆ O₂ ⇒ A(O₁) ⊆ A(O₂)` on each pair.
pub fn check_isotony(
    net: &LocalNet,
    pairs: &[(DiscreteRegion, DiscreteRegion)],
) -> Result<AxiomReport, NetError> {
    let mut rep = AxiomReport::new("isotony");
    for (small, big) in pairs {
        if !small.is_subset(big) {
            rep.not_applicable += 1;
            continue;
        }
        rep.checked += 1;
        let (a, b) = (net.algebra(small)?, net.algebra(big)?);
        if !a.is_subalgebra_of(&b) {
            rep.fail(Witness::RegionPair {
                first: small.to_pairs(),
                second: big.to_pairs(),
                detail: format!("dimensions {} and {}", a.dimension(), b.dimension()),
            });
        }
    }
    Ok(rep)
}

/// Random pairs `O₁ ⊆ O₂`: each cell joins `O₂` with probability 1/3 and
/// each cell of `O₂` stays in `O₁` with probability 1/2.
pub fn random_nested_pairs(
    net: &LocalNet,
    count: usize,
    rng: &mut impl Rng,
) -> Vec<(DiscreteRegion, DiscreteRegion)> {
    let grid = net.grid();
    (0..count)
        .map(|_| {
            let mut big = DiscreteRegion::empty(grid);
            let mut small = DiscreteRegion::empty(grid);
            for idx in 0..grid.len() {
                let (l, s) = grid.coords(idx);
                if rng.random_bool(1.0 / 3.0) {
                    big.cells.insert(l, s);
                    if rng.random_bool(0.5) {
                        small.cells.insert(l, s);
                    }
                }
            }
            (small, big)
        })
        .collect()
}

/// Every pair of cells whose layer-0 support cones are disjoint must have
/// commuting generators. Pairs with overlapping cones are counted as not
/// applicable.
pub fn check_microcausality(net: &LocalNet) -> AxiomReport {
    let grid = net.grid();
    let cells: Vec<(usize, usize)> = (0..grid.len()).map(|i| grid.coords(i)).collect();
    let mut pairs = Vec::new();
    let mut not_applicable = 0;
    for (i, &a) in cells.iter().enumerate() {
        for &b in &cells[i + 1..] {
            let (lo_a, hi_a) = net.support_cone(a.0, a.1);
            let (lo_b, hi_b) = net.support_cone(b.0, b.1);
            if hi_a < lo_b || hi_b < lo_a {
                pairs.push((a, b));
            } else {
                not_applicable += 1;
            }
        }
    }
    let worst = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut m = 0.0f64;
            for x in net.cell_generators(a.0, a.1) {
                for y in net.cell_generators(b.0, b.1) {
                    m = m.max(max_abs(&(x * y - y * x)));
                }
            }
            (m, a, b)
        })
        .reduce(
            || (0.0, (0, 0), (0, 0)),
            |p, q| if q.0 > p.0 { q } else { p },
        );
    let mut rep = AxiomReport::new("microcausality");
    rep.checked = pairs.len();
    rep.not_applicable = not_applicable;
    if worst.0 > COMMUTATOR_TOL {
        rep.fail(Witness::NoncommutingPair {
            first: [worst.1 .0, worst.1 .1],
            second: [worst.2 .0, worst.2 .1],
            norm: worst.0,
        });
    }
    rep
}

/// `A(O′) ⊆ A(O)′`, the region form of microcausality.
pub fn check_region_microcausality(
    net: &LocalNet,
    region: &DiscreteRegion,
) -> Result<AxiomReport, NetError> {
    let mut rep = AxiomReport::new("microcausality_region");
    let comp = region.complement();
    let a = net.algebra(region)?;
    let b = net.algebra(&comp)?;
    rep.checked = 1;
    rep.dims.insert("region".into(), a.dimension());
    rep.dims.insert("complement".into(), b.dimension());
    if !b.is_subalgebra_of(&a.commutant()) {
        rep.fail(Witness::RegionPair {
            first: region.to_pairs(),
            second: comp.to_pairs(),
            detail: "complement algebra not inside the commutant".into(),
        });
    }
    Ok(rep)
}

/// The algebra of a full layer is `M_{2ⁿ}`.
pub fn check_slice_generation(net: &LocalNet, layer: usize) -> Result<AxiomReport, NetError> {
    let mut rep = AxiomReport::new("slice_generation");
    let slice = DiscreteRegion::slice(net.grid(), layer)?;
    let a = net.algebra(&slice)?;
    let full = net.dim() * net.dim();
    rep.checked = 1;
    rep.dims.insert("slice".into(), a.dimension());
    rep.dims.insert("full".into(), full);
    if a.dimension() != full {
        rep.fail(Witness::DimensionMismatch {
            expected: full,
            found: a.dimension(),
            detail: format!("layer {layer}"),
        });
    }
    Ok(rep)
}

/// A layer with one site removed; expected to fall short of `M_{2ⁿ}`.
pub fn sub_slice_control(
    net: &LocalNet,
    layer: usize,
    missing_site: usize,
) -> Result<AxiomReport, NetError> {
    let mut slice = DiscreteRegion::slice(net.grid(), layer)?;
    if missing_site >= net.n_qubits() {
        return Err(NetError::CellOutOfRange {
            layer,
            site: missing_site,
        });
    }
    slice.cells.remove(layer, missing_site);
    let a = net.algebra(&slice)?;
    let mut rep = AxiomReport::new("sub_slice_control");
    rep.checked = 1;
    rep.dims.insert("sub_slice".into(), a.dimension());
    rep.dims.insert("full".into(), net.dim() * net.dim());
    // the control passes when the sub-slice does not generate everything
    if a.dimension() == net.dim() * net.dim() {
        rep.fail(Witness::DimensionMismatch {
            expected: net.dim() * net.dim() / 4,
            found: a.dimension(),
            detail: format!("layer {layer} without site {missing_site}"),
        });
    }
    Ok(rep)
}

/// `A(O′)′ = A(O″)`, both sides computed separately.
pub fn check_essential_duality(
    net: &LocalNet,
    region: &DiscreteRegion,
) -> Result<AxiomReport, NetError> {
    let comp = region.complement();
    let dbl = region.double_complement();
    let (lhs, rhs) = rayon::join(|| net.algebra(&comp), || net.algebra(&dbl));
    let lhs = lhs?.commutant();
    let rhs = rhs?;
    let mut rep = AxiomReport::new("essential_duality");
    rep.checked = 1;
    rep.dims.insert("complement_commutant".into(), lhs.dimension());
    rep.dims.insert("double_complement".into(), rhs.dimension());
    if !lhs.same_as(&rhs) {
        rep.fail(Witness::DimensionMismatch {
            expected: rhs.dimension(),
            found: lhs.dimension(),
            detail: format!(
                "A(O')' and A(O'') differ for a region of {} cells",
                region.len()
            ),
        });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net_verifier::build_net;
    use crate::protocols::BrickWallCircuit;

    #[test]
    fn microcausality_example_pairs() {
        let net = build_net(BrickWallCircuit::haar(6, 3, 1).unwrap()).unwrap();
        let disjoint = |a: (usize, usize), b: (usize, usize)| {
            let (la, ha) = net.support_cone(a.0, a.1);
            let (lb, hb) = net.support_cone(b.0, b.1);
            ha < lb || hb < la
        };
        assert!(disjoint((0, 0), (0, 4)));
        assert!(disjoint((2, 0), (2, 5)));
        assert!(!disjoint((3, 0), (3, 4)));
        let rep = check_microcausality(&net);
        assert!(rep.pass && rep.checked > 0 && rep.not_applicable > 0);
    }

    #[test]
    fn slices_and_sub_slices() {
        let net = build_net(BrickWallCircuit::haar(3, 2, 5).unwrap()).unwrap();
        for l in 0..=2 {
            assert!(check_slice_generation(&net, l).unwrap().pass);
        }
        let ctl = sub_slice_control(&net, 0, 1).unwrap();
        assert!(ctl.pass);
        assert_eq!(ctl.dims["sub_slice"], 16);
    }

    #[test]
    fn duality_for_a_single_cell() {
        let net = build_net(BrickWallCircuit::haar(5, 2, 8).unwrap()).unwrap();
        let cell = net.region(&[(0, 2)]).unwrap();
        let rep = check_essential_duality(&net, &cell).unwrap();
        assert!(rep.pass, "{rep:?}");
        let full = DiscreteRegion::slice(net.grid(), 1).unwrap();
        assert!(check_essential_duality(&net, &full).unwrap().pass);
    }
}
