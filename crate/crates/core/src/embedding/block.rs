use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::{Cell, ChimeraShape};

/// The unit cells occupied by an ell, together with its corner.
///
/// The horizontal arm is row `corner.y` over columns `west..=east`, the
/// vertical arm is column `corner.x` over rows `south..=north`. The corner
/// sits at one end of each arm, and belongs to both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EllBlock {
    corner: Cell,
    west: u32,
    east: u32,
    south: u32,
    north: u32,
}

impl EllBlock {
    pub fn new(corner: Cell, (west, east): (u32, u32), (south, north): (u32, u32)) -> Result<Self> {
        let ok = west >= 1
            && south >= 1
            && west <= east
            && south <= north
            && (corner.x == west || corner.x == east)
            && (corner.y == south || corner.y == north);
        if !ok {
            return Err(Error::MalformedBlock(format!(
                "corner {corner} with columns {west}..={east}, rows {south}..={north}"
            )));
        }
        Ok(EllBlock { corner, west, east, south, north })
    }

    /// Block with the corner at the east (else west) end of a `width`-cell
    /// horizontal arm and at the north (else south) end of a `height`-cell
    /// vertical arm. `None` if it would leave the positive quadrant.
    pub fn from_arms(corner: Cell, width: u32, height: u32, corner_east: bool, corner_north: bool) -> Option<Self> {
        if width == 0 || height == 0 {
            return None;
        }
        let (west, east) =
            if corner_east { (corner.x.checked_sub(width - 1)?, corner.x) } else { (corner.x, corner.x + width - 1) };
        let (south, north) = if corner_north {
            (corner.y.checked_sub(height - 1)?, corner.y)
        } else {
            (corner.y, corner.y + height - 1)
        };
        if west == 0 || south == 0 {
            return None;
        }
        Some(EllBlock { corner, west, east, south, north })
    }

    /// Recovers a block from its cell set; the corner is needed when an arm has length 1.
    pub fn from_cells(corner: Cell, cells: &[Cell]) -> Result<Self> {
        let row: Vec<u32> = cells.iter().filter(|c| c.y == corner.y).map(|c| c.x).collect();
        let col: Vec<u32> = cells.iter().filter(|c| c.x == corner.x).map(|c| c.y).collect();
        let bad = || Error::MalformedBlock(format!("cells do not form an ell at corner {corner}"));
        let (west, east) = (*row.iter().min().ok_or_else(bad)?, *row.iter().max().ok_or_else(bad)?);
        let (south, north) = (*col.iter().min().ok_or_else(bad)?, *col.iter().max().ok_or_else(bad)?);
        let block = EllBlock::new(corner, (west, east), (south, north)).map_err(|_| bad())?;
        let given: BTreeSet<Cell> = cells.iter().copied().collect();
        if given.len() != cells.len() || given != block.cells().collect() {
            return Err(bad());
        }
        Ok(block)
    }

    pub fn corner(&self) -> Cell {
        self.corner
    }

    pub fn columns(&self) -> (u32, u32) {
        (self.west, self.east)
    }

    pub fn rows(&self) -> (u32, u32) {
        (self.south, self.north)
    }

    pub fn width(&self) -> u32 {
        self.east - self.west + 1
    }

    pub fn height(&self) -> u32 {
        self.north - self.south + 1
    }

    /// Number of cells, which is one less than the ell's qubit count.
    pub fn size(&self) -> u32 {
        self.width() + self.height() - 1
    }

    pub fn corner_east(&self) -> bool {
        self.corner.x == self.east
    }

    pub fn corner_north(&self) -> bool {
        self.corner.y == self.north
    }

    pub fn in_horizontal_arm(&self, c: Cell) -> bool {
        c.y == self.corner.y && (self.west..=self.east).contains(&c.x)
    }

    pub fn in_vertical_arm(&self, c: Cell) -> bool {
        c.x == self.corner.x && (self.south..=self.north).contains(&c.y)
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.in_horizontal_arm(c) || self.in_vertical_arm(c)
    }

    /// Cells in canonical (row-major) order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let (cx, cy) = (self.corner.x, self.corner.y);
        let below = (self.south..cy).map(move |y| Cell::new(cx, y));
        let row = (self.west..=self.east).map(move |x| Cell::new(x, cy));
        let above = (cy + 1..=self.north).map(move |y| Cell::new(cx, y));
        below.chain(row).chain(above)
    }

    pub fn fits(&self, shape: ChimeraShape) -> bool {
        self.east <= shape.m && self.north <= shape.n
    }

    pub fn translate(&self, dx: u32, dy: u32) -> Self {
        EllBlock {
            corner: Cell::new(self.corner.x + dx, self.corner.y + dy),
            west: self.west + dx,
            east: self.east + dx,
            south: self.south + dy,
            north: self.north + dy,
        }
    }

    /// The single shared cell, when it lies off-corner in the horizontal arm
    /// of one block and off-corner in the vertical arm of the other. That is
    /// the geometry that yields exactly one coupler between their ells.
    pub fn crossing(&self, other: &EllBlock) -> Option<Cell> {
        let mut shared = self.cells().filter(|c| other.contains(*c));
        let cell = shared.next()?;
        if shared.next().is_some() || cell == self.corner || cell == other.corner {
            return None;
        }
        let typed = (self.in_horizontal_arm(cell) && other.in_vertical_arm(cell))
            || (self.in_vertical_arm(cell) && other.in_horizontal_arm(cell));
        typed.then_some(cell)
    }
}

impl fmt::Display for EllBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[corner {} cols {}..={} rows {}..={}]", self.corner, self.west, self.east, self.south, self.north)
    }
}

/// `n` ell blocks of `n` cells each, pairwise crossing once. Stored in
/// ascending height order, so `blocks()[i]` has height `i + 1` when valid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockCliqueEmbedding {
    blocks: Vec<EllBlock>,
}

impl BlockCliqueEmbedding {
    /// Canonically orders `blocks` without checking the invariants.
    pub fn from_unordered(mut blocks: Vec<EllBlock>) -> Self {
        blocks.sort_by_key(|b| (b.height(), *b));
        BlockCliqueEmbedding { blocks }
    }

    /// Canonically orders `blocks` and checks every invariant.
    pub fn new(blocks: Vec<EllBlock>) -> Result<Self> {
        let e = Self::from_unordered(blocks);
        e.check()?;
        Ok(e)
    }

    pub fn n(&self) -> u32 {
        self.blocks.len() as u32
    }

    pub fn blocks(&self) -> &[EllBlock] {
        &self.blocks
    }

    pub fn check(&self) -> Result<()> {
        let n = self.n();
        let fail = |msg: String| Err(Error::NotBlockClique(msg));
        if n < 2 {
            return fail(format!("{n} blocks, need at least 2"));
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if b.size() != n {
                return fail(format!("block {b} has {} cells, expected {n}", b.size()));
            }
            if b.height() != i as u32 + 1 {
                return fail(format!("heights are not 1..={n}: block {b} in position {}", i + 1));
            }
        }
        for (i, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[i + 1..] {
                if a.crossing(b).is_none() {
                    return fail(format!("blocks {a} and {b} do not cross properly"));
                }
            }
        }
        Ok(())
    }

    /// Smallest `(x, y)` over all cells.
    pub fn min_cell(&self) -> Cell {
        let x = self.blocks.iter().map(|b| b.west).min().unwrap_or(1);
        let y = self.blocks.iter().map(|b| b.south).min().unwrap_or(1);
        Cell::new(x, y)
    }

    pub fn fits(&self, shape: ChimeraShape) -> bool {
        self.blocks.iter().all(|b| b.fits(shape))
    }
}

/// Serialized block: `{"corner": [x, y], "cells": [[x, y], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockFile {
    pub corner: Cell,
    pub cells: Vec<Cell>,
}

impl From<&EllBlock> for BlockFile {
    fn from(b: &EllBlock) -> Self {
        BlockFile { corner: b.corner(), cells: b.cells().collect() }
    }
}

impl TryFrom<&BlockFile> for EllBlock {
    type Error = Error;

    fn try_from(f: &BlockFile) -> Result<Self> {
        EllBlock::from_cells(f.corner, &f.cells)
    }
}
