//! Causal geometry of 1+1D Minkowski spacetime (c = 1) on bounded, discretized
//! windows.
//!
//! Regions are sets of cells; every relation is evaluated on cell centers with
//! strict inequalities, so cells lightlike to a region never enter its
//! complement. The causal complement is the *spacelike* complement.

mod grid;
mod region;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use grid::{cell_relation, CausalRelation, CellGrid, CellSet, Dependence, EdgeExtension};
pub use region::{Region, RegionJson, RegionTag, Side, Window, DEFAULT_MAX_CELLS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("window has {cells} cells, limit is {limit}")]
    TooManyCells { cells: usize, limit: usize },
    #[error("cell ({row}, {col}) lies outside the window")]
    CellOutOfRange { row: usize, col: usize },
    #[error("regions live on different windows")]
    WindowMismatch,
    #[error("sizes must be positive: {0}")]
    NonPositiveSize(String),
    #[error("construction does not fit in the window: {0}")]
    DoesNotFit(String),
    #[error("non-finite event coordinates")]
    NonFinite,
}

/// A spacetime point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub t: f64,
    pub x: f64,
}

impl Event {
    pub fn new(t: f64, x: f64) -> Result<Self, GeometryError> {
        if t.is_finite() && x.is_finite() {
            Ok(Self { t, x })
        } else {
            Err(GeometryError::NonFinite)
        }
    }
}

pub fn causal_relation(e1: Event, e2: Event) -> CausalRelation {
    let dt = (e1.t - e2.t).abs();
    let dx = (e1.x - e2.x).abs();
    if dx > dt {
        CausalRelation::Spacelike
    } else if dx == dt {
        CausalRelation::Lightlike
    } else {
        CausalRelation::Timelike
    }
}

/// The cylinder, its caps and its causal completion.
///
/// `caps_t` are the time-directed caps `D(C) \ C` and `caps_r` the
/// space-directed caps `C'' \ D(C)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiamondDecomposition {
    pub cylinder: Region,
    pub caps_t: Region,
    pub caps_r: Region,
    pub diamond: Region,
}

impl DiamondDecomposition {
    pub fn counts(&self) -> TilingCounts {
        TilingCounts {
            cylinder: self.cylinder.len(),
            caps_t: self.caps_t.len(),
            caps_r: self.caps_r.len(),
            diamond: self.diamond.len(),
        }
    }

    /// Parts are disjoint and their union is the diamond.
    pub fn tiles(&self) -> bool {
        let parts = [&self.cylinder, &self.caps_t, &self.caps_r];
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                if !a.cells().is_disjoint(b.cells()) {
                    return false;
                }
            }
        }
        let union = self
            .cylinder
            .cells()
            .union(self.caps_t.cells())
            .union(self.caps_r.cells());
        &union == self.diamond.cells()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingCounts {
    pub cylinder: usize,
    pub caps_t: usize,
    pub caps_r: usize,
    pub diamond: usize,
}

pub fn diamond_decomposition(
    a: f64,
    tau: f64,
    window: Window,
) -> Result<DiamondDecomposition, GeometryError> {
    if !(a > 0.0 && tau > 0.0) {
        return Err(GeometryError::NonPositiveSize(format!("a={a}, tau={tau}")));
    }
    let reach = a + tau;
    if reach > window.t_max + 1e-9 || reach > window.x_max + 1e-9 {
        return Err(GeometryError::DoesNotFit(format!(
            "a + tau = {reach} exceeds window ({}, {})",
            window.t_max, window.x_max
        )));
    }
    let cylinder = Region::cylinder(window, a, tau)?;
    let dependence = cylinder.domain_of_dependence();
    let diamond = cylinder.double_complement();
    let caps_t = dependence.difference(&cylinder)?;
    let caps_r = diamond.difference(&dependence)?;
    Ok(DiamondDecomposition {
        cylinder,
        caps_t,
        caps_r,
        diamond,
    })
}

/// Tab-separated `(t, x, part)` rows for every diamond cell; `part` is one of
/// `cylinder`, `caps_t`, `caps_r`.
pub fn diamond_cells_tsv(dec: &DiamondDecomposition) -> String {
    let w = dec.diamond.window();
    let mut out = String::from("t\tx\tpart\n");
    for (r, c) in dec.diamond.cells().iter() {
        let part = if dec.cylinder.contains(r, c) {
            "cylinder"
        } else if dec.caps_t.contains(r, c) {
            "caps_t"
        } else {
            "caps_r"
        };
        let (t, x) = w.center(r, c);
        out.push_str(&format!("{t}\t{x}\t{part}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(t: f64, x: f64) -> Event {
        Event::new(t, x).unwrap()
    }

    #[test]
    fn relation_examples() {
        assert_eq!(causal_relation(ev(0.0, 0.0), ev(0.0, 3.0)), CausalRelation::Spacelike);
        assert_eq!(causal_relation(ev(0.0, 0.0), ev(3.0, 0.0)), CausalRelation::Timelike);
        assert_eq!(causal_relation(ev(0.0, 0.0), ev(2.0, 2.0)), CausalRelation::Lightlike);
        assert!(Event::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn decomposition_rejects_bad_sizes() {
        let w = Window::new(8.0, 8.0, 0.5).unwrap();
        assert!(diamond_decomposition(0.0, 1.0, w).is_err());
        assert!(diamond_decomposition(1.0, -1.0, w).is_err());
        assert!(diamond_decomposition(5.0, 4.0, w).is_err());
    }

    #[test]
    fn one_cell_cylinder_is_degenerate() {
        // a = tau = h is a 2×2 block; center sampling leaves no caps
        let h = 0.25;
        let w = Window::new(2.0, 2.0, h).unwrap();
        let n = diamond_decomposition(h, h, w).unwrap().counts();
        assert_eq!((n.cylinder, n.caps_t, n.caps_r, n.diamond), (4, 0, 0, 4));
    }

    #[test]
    fn minimal_decomposition_is_nondegenerate() {
        let h = 0.25;
        let w = Window::new(2.0, 2.0, h).unwrap();
        let dec = diamond_decomposition(2.0 * h, 2.0 * h, w).unwrap();
        let n = dec.counts();
        assert_eq!((n.cylinder, n.caps_t, n.caps_r), (16, 4, 4), "{n:?}");
        assert!(dec.tiles());
    }
}
