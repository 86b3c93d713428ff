use serde::{Deserialize, Serialize};

use super::grid::{CellGrid, CellSet, Dependence, EdgeExtension};
use super::GeometryError;

/// Upper bound on cells per window unless overridden.
pub const DEFAULT_MAX_CELLS: usize = 4_000_000;

const SNAP: f64 = 1e-9;

fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() < SNAP {
        r
    } else {
        x
    }
}

/// Bounded window `[-t_max, t_max] × [-x_max, x_max]` cut into square cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub t_max: f64,
    pub x_max: f64,
    pub h: f64,
}

impl Window {
    pub fn new(t_max: f64, x_max: f64, h: f64) -> Result<Self, GeometryError> {
        Self::with_cell_limit(t_max, x_max, h, DEFAULT_MAX_CELLS)
    }

    pub fn with_cell_limit(
        t_max: f64,
        x_max: f64,
        h: f64,
        max_cells: usize,
    ) -> Result<Self, GeometryError> {
        let finite = t_max.is_finite() && x_max.is_finite() && h.is_finite();
        if !finite || h <= 0.0 || t_max <= 0.0 || x_max <= 0.0 {
            return Err(GeometryError::InvalidWindow(format!(
                "t_max={t_max}, x_max={x_max}, h={h} must be positive and finite"
            )));
        }
        for (name, v) in [("t_max", t_max), ("x_max", x_max)] {
            let k = v / h;
            if (k - k.round()).abs() > 1e-6 {
                return Err(GeometryError::InvalidWindow(format!(
                    "{name}={v} is not a multiple of h={h}"
                )));
            }
        }
        let w = Self { t_max, x_max, h };
        let cells = w.grid().len();
        if cells > max_cells {
            return Err(GeometryError::TooManyCells {
                cells,
                limit: max_cells,
            });
        }
        Ok(w)
    }

    pub fn grid(&self) -> CellGrid {
        let rows = (2.0 * self.t_max / self.h).round() as usize;
        let cols = (2.0 * self.x_max / self.h).round() as usize;
        CellGrid::new(rows, cols)
    }

    /// Cell center `(t, x)`.
    pub fn center(&self, row: usize, col: usize) -> (f64, f64) {
        (
            -self.t_max + (row as f64 + 0.5) * self.h,
            -self.x_max + (col as f64 + 0.5) * self.h,
        )
    }

    /// Cell center in half-cell units (`2t/h`, `2x/h`); always odd integers.
    fn half_units(&self, row: usize, col: usize) -> (f64, f64) {
        let g = self.grid();
        (
            (2 * row + 1) as f64 - g.rows as f64,
            (2 * col + 1) as f64 - g.cols as f64,
        )
    }

    fn to_half_units(&self, len: f64) -> f64 {
        snap(2.0 * len / self.h)
    }

    /// Cell containing the event, if it lies inside the window.
    pub fn cell_of(&self, t: f64, x: f64) -> Option<(usize, usize)> {
        let g = self.grid();
        let r = ((t + self.t_max) / self.h).floor();
        let c = ((x + self.x_max) / self.h).floor();
        if r < 0.0 || c < 0.0 || r >= g.rows as f64 || c >= g.cols as f64 {
            None
        } else {
            Some((r as usize, c as usize))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Symbolic origin of a region, kept for reporting and for the slab's
/// spatial extension past the window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RegionTag {
    Cylinder { a: f64, tau: f64 },
    Diamond { t0: f64, x0: f64, radius: f64 },
    Slab { t0: f64, tau: f64 },
    Wedge { t0: f64, x0: f64, side: Side },
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    window: Window,
    cells: CellSet,
    tag: RegionTag,
}

impl Region {
    pub fn empty(window: Window) -> Self {
        Self {
            cells: CellSet::empty(window.grid()),
            window,
            tag: RegionTag::Custom,
        }
    }

    pub fn full(window: Window) -> Self {
        Self {
            cells: CellSet::full(window.grid()),
            window,
            tag: RegionTag::Custom,
        }
    }

    pub fn from_cells(
        window: Window,
        cells: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GeometryError> {
        let set = CellSet::from_cells(window.grid(), cells)
            .map_err(|(row, col)| GeometryError::CellOutOfRange { row, col })?;
        Ok(Self {
            window,
            cells: set,
            tag: RegionTag::Custom,
        })
    }

    pub(crate) fn from_set(window: Window, cells: CellSet, tag: RegionTag) -> Self {
        debug_assert_eq!(window.grid(), cells.grid());
        Self { window, cells, tag }
    }

    /// `{|x| < a, |t| < tau}`.
    pub fn cylinder(window: Window, a: f64, tau: f64) -> Result<Self, GeometryError> {
        if !(a > 0.0 && tau > 0.0) {
            return Err(GeometryError::NonPositiveSize(format!("a={a}, tau={tau}")));
        }
        let (ha, ht) = (window.to_half_units(a), window.to_half_units(tau));
        let cells = CellSet::from_predicate(window.grid(), |r, c| {
            let (t, x) = window.half_units(r, c);
            x.abs() < ha && t.abs() < ht
        });
        Ok(Self::from_set(window, cells, RegionTag::Cylinder { a, tau }))
    }

    /// `{|t - t0| + |x - x0| < radius}`.
    pub fn diamond(window: Window, t0: f64, x0: f64, radius: f64) -> Result<Self, GeometryError> {
        if !(radius > 0.0) {
            return Err(GeometryError::NonPositiveSize(format!("radius={radius}")));
        }
        let (ht0, hx0, hr) = (
            window.to_half_units(t0),
            window.to_half_units(x0),
            window.to_half_units(radius),
        );
        let cells = CellSet::from_predicate(window.grid(), |r, c| {
            let (t, x) = window.half_units(r, c);
            (t - ht0).abs() + (x - hx0).abs() < hr
        });
        Ok(Self::from_set(window, cells, RegionTag::Diamond { t0, x0, radius }))
    }

    /// Time slab `{|t - t0| < tau}` across the full window width.
    pub fn time_slice(window: Window, t0: f64, tau: f64) -> Result<Self, GeometryError> {
        if !(tau > 0.0) {
            return Err(GeometryError::NonPositiveSize(format!("tau={tau}")));
        }
        if t0 - tau < -window.t_max - SNAP || t0 + tau > window.t_max + SNAP {
            return Err(GeometryError::DoesNotFit(format!(
                "slab t0={t0}, tau={tau} exceeds t_max={}",
                window.t_max
            )));
        }
        let (ht0, htau) = (window.to_half_units(t0), window.to_half_units(tau));
        let cells = CellSet::from_predicate(window.grid(), |r, c| {
            let (t, _) = window.half_units(r, c);
            (t - ht0).abs() < htau
        });
        Ok(Self::from_set(window, cells, RegionTag::Slab { t0, tau }))
    }

    /// Open wedge with apex `(t0, x0)`: `x - x0 > |t - t0|` (right) or the
    /// mirror image.
    pub fn wedge(window: Window, t0: f64, x0: f64, side: Side) -> Self {
        let (ht0, hx0) = (window.to_half_units(t0), window.to_half_units(x0));
        let cells = CellSet::from_predicate(window.grid(), |r, c| {
            let (t, x) = window.half_units(r, c);
            let dx = match side {
                Side::Right => x - hx0,
                Side::Left => hx0 - x,
            };
            dx > (t - ht0).abs()
        });
        Self::from_set(window, cells, RegionTag::Wedge { t0, x0, side })
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn cells(&self) -> &CellSet {
        &self.cells
    }

    pub fn tag(&self) -> &RegionTag {
        &self.tag
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.cells.contains(row, col)
    }

    fn check_window(&self, other: &Region) -> Result<(), GeometryError> {
        if self.window != other.window {
            return Err(GeometryError::WindowMismatch);
        }
        Ok(())
    }

    fn edge_extension(&self) -> EdgeExtension {
        match self.tag {
            RegionTag::Slab { .. } => EdgeExtension::FullRows,
            _ => EdgeExtension::Unknown,
        }
    }

    pub fn union(&self, other: &Region) -> Result<Region, GeometryError> {
        self.check_window(other)?;
        Ok(Self::from_set(self.window, self.cells.union(&other.cells), RegionTag::Custom))
    }

    pub fn intersection(&self, other: &Region) -> Result<Region, GeometryError> {
        self.check_window(other)?;
        Ok(Self::from_set(
            self.window,
            self.cells.intersection(&other.cells),
            RegionTag::Custom,
        ))
    }

    pub fn difference(&self, other: &Region) -> Result<Region, GeometryError> {
        self.check_window(other)?;
        Ok(Self::from_set(
            self.window,
            self.cells.difference(&other.cells),
            RegionTag::Custom,
        ))
    }

    pub fn is_subset(&self, other: &Region) -> bool {
        self.window == other.window && self.cells.is_subset(&other.cells)
    }

    /// Spacelike complement: cells whose centers are spacelike to every cell
    /// center of the region.
    pub fn causal_complement(&self) -> Region {
        Self::from_set(self.window, self.cells.spacelike_complement(), RegionTag::Custom)
    }

    pub fn double_complement(&self) -> Region {
        self.causal_complement().causal_complement()
    }

    /// Whether `self` depends causally on `source`.
    pub fn causally_depends_on(&self, source: &Region) -> Result<Dependence, GeometryError> {
        self.check_window(source)?;
        Ok(source.cells.dependence_of(&self.cells, source.edge_extension()))
    }

    pub fn dependence_map(&self) -> Vec<Dependence> {
        self.cells.dependence_map(self.edge_extension())
    }

    pub fn domain_of_dependence(&self) -> Region {
        Self::from_set(
            self.window,
            self.cells.domain_of_dependence(self.edge_extension()),
            RegionTag::Custom,
        )
    }

    pub fn to_json(&self) -> RegionJson {
        RegionJson {
            window: self.window,
            cells: self.cells.iter().map(|(r, c)| [r, c]).collect(),
            tag: self.tag.clone(),
        }
    }

    pub fn from_json(json: &RegionJson) -> Result<Region, GeometryError> {
        let window = Window::new(json.window.t_max, json.window.x_max, json.window.h)?;
        let mut region = Region::from_cells(window, json.cells.iter().map(|c| (c[0], c[1])))?;
        region.tag = json.tag.clone();
        Ok(region)
    }
}

/// Wire form of a region. Cells are listed row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionJson {
    pub window: Window,
    pub cells: Vec<[usize; 2]>,
    pub tag: RegionTag,
}

impl Serialize for Region {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Region {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let json = RegionJson::deserialize(d)?;
        Region::from_json(&json).map_err(serde::de::Error::custom)
    }
}
