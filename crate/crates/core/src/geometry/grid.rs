//! Integer cell grids with a speed-one causal structure.
//!
//! Cells are indexed by `(row, col)`; rows are time steps and columns are
//! space steps of equal size, so light rays move one column per row. Two
//! cells are spacelike iff `|Δcol| > |Δrow|`. In null coordinates
//! `u = row + col`, `v = row - col` this is `Δu·Δv < 0`, which turns the
//! complement into two 2D dominance queries.

use serde::{Deserialize, Serialize};

/// Causal classification of a pair of cells (or events).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalRelation {
    Timelike,
    Lightlike,
    Spacelike,
}

/// Outcome of a causal-dependence query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dependence {
    Dependent,
    Independent,
    /// A path left the window while the target region could still continue
    /// beyond it.
    Indeterminate,
}

impl Dependence {
    pub fn is_dependent(self) -> bool {
        self == Dependence::Dependent
    }
}

/// How a region behaves beyond the spatial edges of its grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeExtension {
    /// Cells touching an edge may continue past it; paths exiting there are
    /// indeterminate.
    Unknown,
    /// Every row occupied by the region is occupied out to spatial infinity
    /// (time slabs).
    FullRows,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellGrid {
    pub rows: usize,
    pub cols: usize,
}

pub fn cell_relation(a: (usize, usize), b: (usize, usize)) -> CausalRelation {
    let dr = a.0.abs_diff(b.0);
    let dc = a.1.abs_diff(b.1);
    match dc.cmp(&dr) {
        std::cmp::Ordering::Greater => CausalRelation::Spacelike,
        std::cmp::Ordering::Equal => CausalRelation::Lightlike,
        std::cmp::Ordering::Less => CausalRelation::Timelike,
    }
}

impl CellGrid {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols }
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.cols + col
    }

    #[inline]
    pub fn coords(&self, idx: usize) -> (usize, usize) {
        (idx / self.cols, idx % self.cols)
    }
}

/// A set of cells on a [`CellGrid`], stored densely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellSet {
    grid: CellGrid,
    bits: Vec<bool>,
}

impl CellSet {
    pub fn empty(grid: CellGrid) -> Self {
        Self {
            grid,
            bits: vec![false; grid.len()],
        }
    }

    pub fn full(grid: CellGrid) -> Self {
        Self {
            grid,
            bits: vec![true; grid.len()],
        }
    }

    pub fn from_predicate(grid: CellGrid, mut pred: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(grid.len());
        for r in 0..grid.rows {
            for c in 0..grid.cols {
                bits.push(pred(r, c));
            }
        }
        Self { grid, bits }
    }

    /// Builds a set from explicit cells; out-of-range cells are rejected.
    pub fn from_cells(
        grid: CellGrid,
        cells: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, (usize, usize)> {
        let mut set = Self::empty(grid);
        for (r, c) in cells {
            if r >= grid.rows || c >= grid.cols {
                return Err((r, c));
            }
            set.insert(r, c);
        }
        Ok(set)
    }

    pub fn grid(&self) -> CellGrid {
        self.grid
    }

    #[inline]
    pub fn contains(&self, row: usize, col: usize) -> bool {
        row < self.grid.rows && col < self.grid.cols && self.bits[self.grid.index(row, col)]
    }

    pub fn insert(&mut self, row: usize, col: usize) {
        let i = self.grid.index(row, col);
        self.bits[i] = true;
    }

    pub fn remove(&mut self, row: usize, col: usize) {
        let i = self.grid.index(row, col);
        self.bits[i] = false;
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|b| *b)
    }

    /// Cells in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| self.grid.coords(i))
    }

    pub fn as_bits(&self) -> &[bool] {
        &self.bits
    }

    fn zip_with(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Self {
        assert_eq!(self.grid, other.grid, "cell sets live on different grids");
        Self {
            grid: self.grid,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a && !b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.grid == other.grid && self.bits.iter().zip(&other.bits).all(|(a, b)| !a || *b)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.grid == other.grid && self.bits.iter().zip(&other.bits).all(|(a, b)| !(*a && *b))
    }

    /// Rows occupied by at least one cell, as an inclusive range.
    pub fn row_extent(&self) -> Option<(usize, usize)> {
        let mut lo = None;
        let mut hi = None;
        for r in 0..self.grid.rows {
            let row = &self.bits[r * self.grid.cols..(r + 1) * self.grid.cols];
            if row.iter().any(|b| *b) {
                lo.get_or_insert(r);
                hi = Some(r);
            }
        }
        lo.zip(hi)
    }

    /// All cells spacelike to every cell of `self`. The empty set's complement
    /// is the whole grid.
    pub fn spacelike_complement(&self) -> Self {
        let grid = self.grid;
        if grid.is_empty() {
            return self.clone();
        }
        // u = r + c in [0, S), w = r - c + cols - 1 in [0, S)
        let s = grid.rows + grid.cols - 1;
        let mut future = vec![false; s * s];
        let mut past = vec![false; s * s];
        for (r, c) in self.iter() {
            let u = r + c;
            let w = r + grid.cols - 1 - c;
            future[u * s + w] = true;
            past[u * s + w] = true;
        }
        // future[u][w]: some cell with u' >= u and w' >= w
        for u in (0..s).rev() {
            for w in (0..s).rev() {
                let mut f = future[u * s + w];
                if u + 1 < s {
                    f |= future[(u + 1) * s + w];
                }
                if w + 1 < s {
                    f |= future[u * s + w + 1];
                }
                future[u * s + w] = f;
            }
        }
        // past[u][w]: some cell with u' <= u and w' <= w
        for u in 0..s {
            for w in 0..s {
                let mut p = past[u * s + w];
                if u > 0 {
                    p |= past[(u - 1) * s + w];
                }
                if w > 0 {
                    p |= past[u * s + w - 1];
                }
                past[u * s + w] = p;
            }
        }
        Self::from_predicate(grid, |r, c| {
            let u = r + c;
            let w = r + grid.cols - 1 - c;
            !future[u * s + w] && !past[u * s + w]
        })
    }

    pub fn double_complement(&self) -> Self {
        self.spacelike_complement().spacelike_complement()
    }

    /// Per-cell dependence on `self`: a cell depends on the set when every
    /// past-directed (or every future-directed) lattice path of speed at most
    /// one meets the set before leaving its time extent. The two null rays are
    /// the extremal such paths.
    pub fn dependence_map(&self, edges: EdgeExtension) -> Vec<Dependence> {
        let back = self.directional_reach(edges, Direction::Past);
        let fwd = self.directional_reach(edges, Direction::Future);
        back.iter()
            .zip(&fwd)
            .map(|(b, f)| match (b, f) {
                (Reach::Hit, _) | (_, Reach::Hit) => Dependence::Dependent,
                (Reach::Miss, Reach::Miss) => Dependence::Independent,
                _ => Dependence::Indeterminate,
            })
            .collect()
    }

    pub fn domain_of_dependence(&self, edges: EdgeExtension) -> Self {
        let map = self.dependence_map(edges);
        Self {
            grid: self.grid,
            bits: map.iter().map(|d| d.is_dependent()).collect(),
        }
    }

    /// Whether every cell of `other` depends on `self`.
    pub fn dependence_of(&self, other: &Self, edges: EdgeExtension) -> Dependence {
        assert_eq!(self.grid, other.grid, "cell sets live on different grids");
        let map = self.dependence_map(edges);
        let mut verdict = Dependence::Dependent;
        for (r, c) in other.iter() {
            match map[self.grid.index(r, c)] {
                Dependence::Independent => return Dependence::Independent,
                Dependence::Indeterminate => verdict = Dependence::Indeterminate,
                Dependence::Dependent => {}
            }
        }
        verdict
    }

    fn directional_reach(&self, edges: EdgeExtension, dir: Direction) -> Vec<Reach> {
        let grid = self.grid;
        let (rows, cols) = (grid.rows, grid.cols);
        let mut reach = vec![Reach::Miss; grid.len()];
        if self.is_empty() {
            return reach;
        }
        // Whether the set has cells on the left/right edge at some row strictly
        // ahead of `r` in the direction of travel, and whether it has any row
        // ahead at all.
        let mut left_ahead = vec![false; rows];
        let mut right_ahead = vec![false; rows];
        let mut any_ahead = vec![false; rows];
        let order: Vec<usize> = match dir {
            Direction::Past => (0..rows).collect(),
            Direction::Future => (0..rows).rev().collect(),
        };
        let (mut l, mut rt, mut any) = (false, false, false);
        for &r in &order {
            left_ahead[r] = l;
            right_ahead[r] = rt;
            any_ahead[r] = any;
            l |= self.contains(r, 0);
            rt |= self.contains(r, cols - 1);
            any |= self.bits[r * cols..(r + 1) * cols].iter().any(|b| *b);
        }
        let exit_status = |r: usize, ahead_edge: bool| -> Reach {
            match edges {
                EdgeExtension::FullRows if any_ahead[r] => Reach::Hit,
                EdgeExtension::FullRows => Reach::Miss,
                EdgeExtension::Unknown if ahead_edge => Reach::Unknown,
                EdgeExtension::Unknown => Reach::Miss,
            }
        };
        for (k, &r) in order.iter().enumerate() {
            for c in 0..cols {
                let i = grid.index(r, c);
                if self.bits[i] {
                    reach[i] = Reach::Hit;
                    continue;
                }
                if k == 0 {
                    // next step leaves the window in time; nothing lies beyond
                    reach[i] = Reach::Miss;
                    continue;
                }
                let prev = order[k - 1];
                let mut acc = Reach::Hit;
                for dc in [-1i64, 0, 1] {
                    let nc = c as i64 + dc;
                    let child = if nc < 0 {
                        exit_status(r, left_ahead[r])
                    } else if nc >= cols as i64 {
                        exit_status(r, right_ahead[r])
                    } else {
                        reach[grid.index(prev, nc as usize)]
                    };
                    acc = acc.meet(child);
                    if acc == Reach::Miss {
                        break;
                    }
                }
                reach[i] = acc;
            }
        }
        reach
    }
}

#[derive(Debug, Clone, Copy)]
enum Direction {
    Past,
    Future,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Reach {
    Hit,
    Miss,
    Unknown,
}

impl Reach {
    fn meet(self, other: Reach) -> Reach {
        match (self, other) {
            (Reach::Miss, _) | (_, Reach::Miss) => Reach::Miss,
            (Reach::Unknown, _) | (_, Reach::Unknown) => Reach::Unknown,
            _ => Reach::Hit,
        }
    }
}
