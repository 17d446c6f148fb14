//! Dynamic program for maximum native clique embeddings.
//!
//! Blocks are placed in order of height, as in the word construction. After
//! placing blocks of heights `1..=i` the cells covered by horizontal arms but
//! no vertical arm form a working rectangle of height `i` and width `n - i`,
//! and that rectangle is all the next placement depends on. So each
//! rectangle only needs the best total bundle size that reaches it and the
//! last block used to get there.
//!
//! Bundle sizes come from [`BundleSizeTable`], which answers in O(1) from
//! per-line intact wire counts. For a square `C(N,N,L)` with constant `L`
//! one chain length costs O(N^3) and the sweep over all lengths O(N^4).
//! [`naive`] keeps the literal version that stores whole partial embeddings.

pub mod naive;

use crate::embedding::{max_bundle, EllBlock, NativeCliqueEmbedding};
use crate::error::{Error, Result};
use crate::topology::{Cell, ChimeraCoord, ChimeraShape, HardwareGraph, HORIZONTAL, VERTICAL};

/// Cells `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorkingRect {
    pub x0: u32,
    pub x1: u32,
    pub y0: u32,
    pub y1: u32,
}

impl WorkingRect {
    pub fn width(&self) -> u32 {
        self.x1 - self.x0 + 1
    }

    pub fn height(&self) -> u32 {
        self.y1 - self.y0 + 1
    }
}

/// The working rectangle left right after placing `block`. Undefined for
/// the last block (width 1).
pub fn r_from(block: &EllBlock) -> Result<WorkingRect> {
    if block.width() == 1 {
        return Err(Error::NoWorkingRect(format!("{block} has width 1; nothing follows it")));
    }
    let (west, east) = block.columns();
    let (x0, x1) = if block.corner_east() { (west, east - 1) } else { (west + 1, east) };
    let (y0, y1) = block.rows();
    Ok(WorkingRect { x0, x1, y0, y1 })
}

/// The working rectangle that must be in effect right before `block` is
/// placed. Undefined for the first block (height 1).
pub fn r_to(block: &EllBlock) -> Result<WorkingRect> {
    if block.height() == 1 {
        return Err(Error::NoWorkingRect(format!("{block} has height 1; nothing precedes it")));
    }
    let (x0, x1) = block.columns();
    let (south, north) = block.rows();
    let (y0, y1) = if block.corner_north() { (south, north - 1) } else { (south + 1, north) };
    Ok(WorkingRect { x0, x1, y0, y1 })
}

/// All `n`-cell blocks of height `height` inside `shape`, corners in
/// row-major order and, per corner, NE, NW, SE, SW. Arms of length one
/// collapse the duplicate orientations.
pub fn blocks_of_height(shape: ChimeraShape, n: u32, height: u32) -> impl Iterator<Item = EllBlock> {
    let width = n + 1 - height;
    let orientations: &'static [(bool, bool)] = match (width == 1, height == 1) {
        (true, true) => &[(true, true)],
        (true, false) => &[(true, true), (true, false)],
        (false, true) => &[(true, true), (false, true)],
        (false, false) => &[(true, true), (false, true), (true, false), (false, false)],
    };
    (1..=shape.n).flat_map(move |y| {
        (1..=shape.m).flat_map(move |x| {
            orientations.iter().filter_map(move |&(east, north)| {
                EllBlock::from_arms(Cell::new(x, y), width, height, east, north).filter(|b| b.fits(shape))
            })
        })
    })
}

fn check_n(shape: ChimeraShape, n: u32) -> Result<()> {
    let max = shape.m.min(shape.n);
    if n < 2 || n > max {
        return Err(Error::ChainSizeOutOfRange { n, max });
    }
    Ok(())
}

/// `|max_bundle(block)|` for every `n`-cell block, in O(1) per lookup.
#[derive(Debug, Clone)]
pub struct BundleSizeTable {
    shape: ChimeraShape,
    n: u32,
    // [row][start column][len - 1] -> intact horizontal wires.
    horizontal: Vec<u16>,
    // [column][start row][len - 1] -> intact vertical wires.
    vertical: Vec<u16>,
    // Corner cells with failed intra-cell couplers need a matching, so
    // blocks cornered there are looked up from here instead.
    irregular: std::collections::HashMap<EllBlock, u32>,
}

impl BundleSizeTable {
    pub fn build(g: &HardwareGraph, n: u32) -> Result<Self> {
        let shape = g.shape();
        check_n(shape, n)?;
        let (m, rows, l) = (shape.m, shape.n, shape.l);
        let span = n as usize;
        let mut horizontal = vec![0u16; (rows * m) as usize * span];
        let mut vertical = vec![0u16; (m * rows) as usize * span];

        // reach[i] = last position an intact wire starting at i can extend to.
        let mut reach = vec![0u32; m.max(rows) as usize + 2];
        for k in 1..=l {
            for y in 1..=rows {
                line_reach(&mut reach, m, |x| ChimeraCoord::new(x, y, HORIZONTAL, k), g);
                for x in 1..=m {
                    let base = (((y - 1) * m + (x - 1)) as usize) * span;
                    accumulate(&mut horizontal[base..base + span], x, reach[x as usize]);
                }
            }
            for x in 1..=m {
                line_reach(&mut reach, rows, |y| ChimeraCoord::new(x, y, VERTICAL, k), g);
                for y in 1..=rows {
                    let base = (((x - 1) * rows + (y - 1)) as usize) * span;
                    accumulate(&mut vertical[base..base + span], y, reach[y as usize]);
                }
            }
        }

        let mut irregular = std::collections::HashMap::new();
        let bad_corners: std::collections::BTreeSet<Cell> =
            g.intra_cell_failures().iter().map(|(a, _)| a.cell()).collect();
        if !bad_corners.is_empty() {
            for height in 1..=n {
                for b in blocks_of_height(shape, n, height).filter(|b| bad_corners.contains(&b.corner())) {
                    irregular.insert(b, max_bundle(g, &b)?.size() as u32);
                }
            }
        }
        Ok(BundleSizeTable { shape, n, horizontal, vertical, irregular })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Size of a maximum bundle in `block`, which must have `n` cells and fit the grid.
    pub fn size(&self, block: &EllBlock) -> u32 {
        if !self.irregular.is_empty() {
            if let Some(&s) = self.irregular.get(block) {
                return s;
            }
        }
        let c = block.corner();
        let span = self.n as usize;
        let (west, _) = block.columns();
        let (south, _) = block.rows();
        let h = self.horizontal[((c.y - 1) * self.shape.m + (west - 1)) as usize * span + block.width() as usize - 1];
        let v = self.vertical[((c.x - 1) * self.shape.n + (south - 1)) as usize * span + block.height() as usize - 1];
        h.min(v) as u32
    }
}

fn line_reach(reach: &mut [u32], len: u32, at: impl Fn(u32) -> ChimeraCoord, g: &HardwareGraph) {
    // 0 marks a dead qubit.
    for i in (1..=len).rev() {
        let q = at(i);
        reach[i as usize] = if !g.is_live_qubit(&q) {
            0
        } else if i < len && reach[i as usize + 1] != 0 && g.is_live_edge(&q, &at(i + 1)) {
            reach[i as usize + 1]
        } else {
            i
        };
    }
}

fn accumulate(counts: &mut [u16], start: u32, reach: u32) {
    if reach < start {
        return;
    }
    let longest = (reach - start + 1) as usize;
    for c in counts.iter_mut().take(longest) {
        *c += 1;
    }
}

/// Best partial embedding reaching a rectangle: its total bundle size and
/// the block placed last.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpEntry {
    pub best_size: u32,
    pub back_ref: Option<EllBlock>,
}

// One slot per rectangle of a given height, indexed by its lower-left cell.
struct Stage {
    m: u32,
    slots: Vec<Option<DpEntry>>,
}

impl Stage {
    fn new(shape: ChimeraShape) -> Self {
        Stage { m: shape.m, slots: vec![None; (shape.m * shape.n) as usize] }
    }

    fn slot(&mut self, r: &WorkingRect) -> &mut Option<DpEntry> {
        &mut self.slots[((r.y0 - 1) * self.m + (r.x0 - 1)) as usize]
    }

    fn get(&self, r: &WorkingRect) -> Option<DpEntry> {
        self.slots[((r.y0 - 1) * self.m + (r.x0 - 1)) as usize]
    }
}

/// A maximum native clique embedding with chains of `n + 1` qubits.
///
/// `g` must not have failed intra-cell couplers between live qubits; see
/// [`crate::defects::embed_with_intra_failures`] for those. When nothing
/// fits the result still carries a full block structure, with empty bundles.
pub fn native_clique_embed(g: &HardwareGraph, n: u32) -> Result<NativeCliqueEmbedding> {
    let table = BundleSizeTable::build(g, n)?;
    let failures = g.intra_cell_failures().len();
    if failures > 0 {
        return Err(Error::NonInduced(failures));
    }
    let blocks = best_blocks(g.shape(), &table);
    let bundles = blocks.iter().map(|b| max_bundle(g, b)).collect::<Result<Vec<_>>>()?;
    Ok(NativeCliqueEmbedding { n, bundles })
}

/// The DP proper: blocks of a maximum-weight block clique embedding under `table`.
pub fn best_blocks(shape: ChimeraShape, table: &BundleSizeTable) -> Vec<EllBlock> {
    let n = table.n();
    let mut stages: Vec<Stage> = Vec::with_capacity(n as usize);
    for height in 1..n {
        let mut stage = Stage::new(shape);
        for b in blocks_of_height(shape, n, height) {
            let base = if height == 1 {
                Some(0)
            } else {
                stages[height as usize - 2].get(&r_to(&b).expect("height > 1")).map(|e| e.best_size)
            };
            let Some(base) = base else { continue };
            let candidate = base + table.size(&b);
            let slot = stage.slot(&r_from(&b).expect("height < n"));
            if slot.is_none_or(|e| candidate > e.best_size) {
                *slot = Some(DpEntry { best_size: candidate, back_ref: Some(b) });
            }
        }
        stages.push(stage);
    }

    let mut best: Option<(u32, EllBlock)> = None;
    for b in blocks_of_height(shape, n, n) {
        let Some(entry) = stages[n as usize - 2].get(&r_to(&b).expect("height n > 1")) else { continue };
        let candidate = entry.best_size + table.size(&b);
        if best.is_none_or(|(s, _)| candidate > s) {
            best = Some((candidate, b));
        }
    }

    let (_, last) = best.expect("every rectangle is reachable when n <= min(M, N)");
    let mut blocks = vec![last];
    let mut current = last;
    for height in (1..n).rev() {
        let entry = stages[height as usize - 1].get(&r_to(&current).expect("height > 1")).expect("reached");
        current = entry.back_ref.expect("set with entry");
        blocks.push(current);
    }
    blocks.reverse();
    blocks
}

/// Result of the sweep over chain lengths.
#[derive(Debug, Clone)]
pub struct Sweep {
    pub best: NativeCliqueEmbedding,
    /// `(n, clique size)` for every `n` tried.
    pub per_n: Vec<(u32, usize)>,
}

/// Runs [`native_clique_embed`] for every `n` in `2..=min(M, N)`.
pub fn sweep(g: &HardwareGraph) -> Result<Sweep> {
    let shape = g.shape();
    let max = shape.m.min(shape.n);
    if max < 2 {
        return Err(Error::ChainSizeOutOfRange { n: 2, max });
    }
    let mut best: Option<NativeCliqueEmbedding> = None;
    let mut per_n = Vec::new();
    for n in 2..=max {
        let e = native_clique_embed(g, n)?;
        per_n.push((n, e.clique_size()));
        // Ties keep the shorter chains.
        if best.as_ref().is_none_or(|b| e.clique_size() > b.clique_size()) {
            best = Some(e);
        }
    }
    Ok(Sweep { best: best.expect("at least n = 2"), per_n })
}

/// The largest native clique embedding over all chain lengths.
pub fn best_native_clique(g: &HardwareGraph) -> Result<NativeCliqueEmbedding> {
    Ok(sweep(g)?.best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::validate_embedding;
    use crate::word::{word_to_blocks, DirectionWord, GridOffset};
    use std::collections::HashMap;

    fn graph(m: u32, n: u32, l: u32) -> HardwareGraph {
        HardwareGraph::build(ChimeraShape::new(m, n, l).unwrap()).unwrap()
    }

    #[test]
    fn rects_of_the_smallest_word() {
        let b = word_to_blocks(&"E.N".parse().unwrap(), GridOffset::default());
        let [first, second] = b.blocks() else { panic!() };
        assert_eq!(r_from(first).unwrap(), WorkingRect { x0: 1, x1: 1, y0: 1, y1: 1 });
        assert_eq!(r_to(second).unwrap(), r_from(first).unwrap());
        assert!(r_to(first).is_err());
        assert!(r_from(second).is_err());
    }

    #[test]
    fn word_chains_link_through_rects() {
        for n in 2..=5 {
            for i in 0..DirectionWord::count(n) {
                let b = word_to_blocks(&DirectionWord::from_index(n, i).unwrap(), GridOffset::new(1, 0));
                for pair in b.blocks().windows(2) {
                    let r = r_from(&pair[0]).unwrap();
                    assert_eq!(r_to(&pair[1]).unwrap(), r);
                    assert_eq!((r.height(), r.width()), (pair[0].height(), n - pair[0].height()));
                }
            }
        }
    }

    #[test]
    fn at_most_four_blocks_per_rect() {
        let shape = ChimeraShape::new(7, 6, 1).unwrap();
        for n in 2..=6 {
            let mut into: HashMap<WorkingRect, usize> = HashMap::new();
            let mut out: HashMap<WorkingRect, usize> = HashMap::new();
            for h in 1..=n {
                for b in blocks_of_height(shape, n, h) {
                    assert_eq!(b.size(), n);
                    if let Ok(r) = r_to(&b) {
                        *into.entry(r).or_default() += 1;
                    }
                    if let Ok(r) = r_from(&b) {
                        *out.entry(r).or_default() += 1;
                    }
                }
            }
            assert!(into.values().chain(out.values()).all(|&c| (1..=4).contains(&c)));
        }
    }

    #[test]
    fn table_matches_max_bundle() {
        let g = graph(5, 4, 3);
        let g = g
            .apply_defects(
                &[ChimeraCoord::new(2, 2, 0, 1), ChimeraCoord::new(4, 3, 1, 3)],
                &[
                    (ChimeraCoord::new(3, 1, 0, 2), ChimeraCoord::new(4, 1, 0, 2)),
                    (ChimeraCoord::new(1, 1, 0, 1), ChimeraCoord::new(1, 1, 1, 1)),
                ],
            )
            .unwrap();
        for n in 2..=4 {
            let table = BundleSizeTable::build(&g, n).unwrap();
            for h in 1..=n {
                for b in blocks_of_height(g.shape(), n, h) {
                    assert_eq!(table.size(&b) as usize, max_bundle(&g, &b).unwrap().size(), "{b}");
                }
            }
        }
    }

    #[test]
    fn defect_free_square_gives_l_times_m() {
        for m in 2..=6 {
            let g = graph(m, m, 3);
            let e = native_clique_embed(&g, m).unwrap();
            assert_eq!(e.clique_size(), 3 * m as usize);
            assert!(validate_embedding(&g, &e).valid);
        }
    }

    #[test]
    fn n_out_of_range() {
        let g = graph(3, 4, 2);
        assert_eq!(native_clique_embed(&g, 4).unwrap_err(), Error::ChainSizeOutOfRange { n: 4, max: 3 });
        assert!(native_clique_embed(&g, 1).is_err());
        assert!(best_native_clique(&graph(1, 4, 2)).is_err());
    }

    #[test]
    fn rejects_intra_cell_failures() {
        let g = graph(3, 3, 2)
            .apply_defects(&[], &[(ChimeraCoord::new(1, 1, 0, 1), ChimeraCoord::new(1, 1, 1, 2))])
            .unwrap();
        assert_eq!(native_clique_embed(&g, 2).unwrap_err(), Error::NonInduced(1));
    }

    #[test]
    fn all_dead_gives_empty_bundles() {
        let g = graph(3, 3, 1);
        let dead: Vec<_> = g.shape().qubits().collect();
        let g = g.without_qubits(&dead).unwrap();
        let e = native_clique_embed(&g, 3).unwrap();
        assert_eq!(e.clique_size(), 0);
        assert_eq!(e.bundles.len(), 3);
        e.blocks().check().unwrap();
        assert_eq!(best_native_clique(&g).unwrap().n, 2);
    }

    #[test]
    fn sweep_prefers_shorter_chains_on_ties() {
        // 3 x 2 grid: only n = 2 is possible.
        let s = sweep(&graph(3, 2, 2)).unwrap();
        assert_eq!(s.per_n, vec![(2, 4)]);
        // A dead row of cells caps n at 3 in a 4 x 4 grid.
        let g = graph(4, 4, 2);
        let row: Vec<_> = g.shape().qubits().filter(|q| q.y == 2).collect();
        let g = g.without_qubits(&row).unwrap();
        let s = sweep(&g).unwrap();
        assert!(s.per_n.iter().all(|&(n, y)| y <= s.best.clique_size() && (y < s.best.clique_size() || n >= s.best.n)));
        assert!(validate_embedding(&g, &s.best).valid);
    }
}
