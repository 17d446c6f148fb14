use serde::{Deserialize, Serialize};

use super::block::{BlockCliqueEmbedding, EllBlock};
use crate::error::{Error, Result};
use crate::topology::{Cell, ChimeraCoord, ChimeraShape, HardwareGraph, HORIZONTAL, VERTICAL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Horizontal,
    Vertical,
}

impl Orientation {
    pub fn bit(self) -> u8 {
        match self {
            Orientation::Horizontal => HORIZONTAL,
            Orientation::Vertical => VERTICAL,
        }
    }
}

/// Same-track qubits along a straight run of `len` cells starting at the
/// west (horizontal) or south (vertical) end `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wire {
    pub orientation: Orientation,
    pub start: Cell,
    pub len: u32,
    pub track: u32,
}

impl Wire {
    pub fn qubit(&self, i: u32) -> ChimeraCoord {
        let u = self.orientation.bit();
        match self.orientation {
            Orientation::Horizontal => ChimeraCoord::new(self.start.x + i, self.start.y, u, self.track),
            Orientation::Vertical => ChimeraCoord::new(self.start.x, self.start.y + i, u, self.track),
        }
    }

    /// Qubits from the start end outwards.
    pub fn qubits(&self) -> impl DoubleEndedIterator<Item = ChimeraCoord> + '_ {
        (0..self.len).map(move |i| self.qubit(i))
    }

    pub fn is_intact(&self, g: &HardwareGraph) -> bool {
        (0..self.len).all(|i| g.is_live_qubit(&self.qubit(i)))
            && (1..self.len).all(|i| g.is_live_edge(&self.qubit(i - 1), &self.qubit(i)))
    }
}

/// A horizontal and a vertical wire joined at a shared corner cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ell {
    pub horizontal: Wire,
    pub vertical: Wire,
    pub corner: Cell,
}

impl Ell {
    pub fn in_block(block: &EllBlock, horizontal_track: u32, vertical_track: u32) -> Self {
        let (west, east) = block.columns();
        let (south, north) = block.rows();
        let corner = block.corner();
        Ell {
            horizontal: Wire {
                orientation: Orientation::Horizontal,
                start: Cell::new(west, corner.y),
                len: east - west + 1,
                track: horizontal_track,
            },
            vertical: Wire {
                orientation: Orientation::Vertical,
                start: Cell::new(corner.x, south),
                len: north - south + 1,
                track: vertical_track,
            },
            corner,
        }
    }

    pub fn block(&self) -> EllBlock {
        let h = &self.horizontal;
        let v = &self.vertical;
        EllBlock::new(self.corner, (h.start.x, h.start.x + h.len - 1), (v.start.y, v.start.y + v.len - 1))
            .expect("ell wires meet at the corner")
    }

    pub fn len(&self) -> usize {
        (self.horizontal.len + self.vertical.len) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Qubits in path order: from the far end of the horizontal wire to the
    /// corner, then out along the vertical wire.
    pub fn qubits(&self) -> Vec<ChimeraCoord> {
        let mut out = Vec::with_capacity(self.len());
        let corner_east = self.corner.x != self.horizontal.start.x;
        if corner_east {
            out.extend(self.horizontal.qubits());
        } else {
            out.extend(self.horizontal.qubits().rev());
        }
        if self.corner.y == self.vertical.start.y {
            out.extend(self.vertical.qubits());
        } else {
            out.extend(self.vertical.qubits().rev());
        }
        out
    }

    /// Parses a chain back into an ell.
    pub fn from_qubits(chain: &[ChimeraCoord]) -> Result<Self> {
        let bad = |why: &str| Error::MalformedEmbedding(format!("chain is not an ell: {why}"));
        let mut hs: Vec<_> = chain.iter().filter(|q| q.u == HORIZONTAL).collect();
        let mut vs: Vec<_> = chain.iter().filter(|q| q.u == VERTICAL).collect();
        if hs.is_empty() || vs.is_empty() {
            return Err(bad("needs both orientations"));
        }
        hs.sort_by_key(|q| q.x);
        vs.sort_by_key(|q| q.y);
        let (h0, v0) = (hs[0], vs[0]);
        let h_ok = hs.iter().enumerate().all(|(i, q)| q.y == h0.y && q.k == h0.k && q.x == h0.x + i as u32);
        let v_ok = vs.iter().enumerate().all(|(i, q)| q.x == v0.x && q.k == v0.k && q.y == v0.y + i as u32);
        if !h_ok || !v_ok {
            return Err(bad("wires are not contiguous single-track runs"));
        }
        let corner = Cell::new(v0.x, h0.y);
        let (h1, v1) = (hs[hs.len() - 1], vs[vs.len() - 1]);
        if !(corner.x == h0.x || corner.x == h1.x) || !(corner.y == v0.y || corner.y == v1.y) {
            return Err(bad("wires do not meet at an end"));
        }
        Ok(Ell {
            horizontal: Wire {
                orientation: Orientation::Horizontal,
                start: Cell::new(h0.x, h0.y),
                len: hs.len() as u32,
                track: h0.k,
            },
            vertical: Wire {
                orientation: Orientation::Vertical,
                start: Cell::new(v0.x, v0.y),
                len: vs.len() as u32,
                track: v0.k,
            },
            corner,
        })
    }
}

/// Vertex-disjoint ells sharing one block. May be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EllBundle {
    pub block: EllBlock,
    pub ells: Vec<Ell>,
}

impl EllBundle {
    pub fn size(&self) -> usize {
        self.ells.len()
    }
}

/// Bundles over a block clique embedding, one per block, in height order.
/// Every ell is a chain of `n + 1` qubits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NativeCliqueEmbedding {
    pub n: u32,
    pub bundles: Vec<EllBundle>,
}

impl NativeCliqueEmbedding {
    /// Total number of ells, i.e. the size of the clique minor.
    pub fn clique_size(&self) -> usize {
        self.bundles.iter().map(EllBundle::size).sum()
    }

    pub fn blocks(&self) -> BlockCliqueEmbedding {
        BlockCliqueEmbedding::from_unordered(self.bundles.iter().map(|b| b.block).collect())
    }

    pub fn ells(&self) -> impl Iterator<Item = &Ell> {
        self.bundles.iter().flat_map(|b| b.ells.iter())
    }

    pub fn chains(&self) -> Vec<Vec<ChimeraCoord>> {
        self.ells().map(Ell::qubits).collect()
    }

    pub fn bundle_sizes(&self) -> Vec<usize> {
        self.bundles.iter().map(EllBundle::size).collect()
    }

    /// Image under the quarter turn of a `shape` grid (see `HardwareGraph::rotate90`).
    pub fn rotate90(&self, shape: ChimeraShape) -> Self {
        let turn = |c: Cell| Cell::new(shape.n + 1 - c.y, c.x);
        let mut bundles: Vec<EllBundle> = self
            .bundles
            .iter()
            .map(|bundle| {
                let b = bundle.block;
                let (w, e) = b.columns();
                let (s, n) = b.rows();
                let corner = turn(b.corner());
                let (c1, c2) = (turn(Cell::new(w, b.corner().y)), turn(Cell::new(e, b.corner().y)));
                let (r1, r2) = (turn(Cell::new(b.corner().x, s)), turn(Cell::new(b.corner().x, n)));
                let block = EllBlock::new(corner, (r1.x.min(r2.x), r1.x.max(r2.x)), (c1.y.min(c2.y), c1.y.max(c2.y)))
                    .expect("rotated block");
                let mut ells: Vec<Ell> = bundle
                    .ells
                    .iter()
                    .map(|ell| Ell::in_block(&block, ell.vertical.track, ell.horizontal.track))
                    .collect();
                ells.sort_by_key(|e| e.horizontal.track);
                EllBundle { block, ells }
            })
            .collect();
        bundles.sort_by_key(|b| (b.block.height(), b.block));
        NativeCliqueEmbedding { n: self.n, bundles }
    }
}

/// A straight line of cells: row `index` over columns `from..=to`
/// (horizontal), or column `index` over rows `from..=to` (vertical).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Line {
    pub orientation: Orientation,
    pub index: u32,
    pub from: u32,
    pub to: u32,
}

impl Line {
    pub fn horizontal_arm(block: &EllBlock) -> Self {
        let (from, to) = block.columns();
        Line { orientation: Orientation::Horizontal, index: block.corner().y, from, to }
    }

    pub fn vertical_arm(block: &EllBlock) -> Self {
        let (from, to) = block.rows();
        Line { orientation: Orientation::Vertical, index: block.corner().x, from, to }
    }

    fn fits(&self, shape: ChimeraShape) -> bool {
        let (span, across) = match self.orientation {
            Orientation::Horizontal => (shape.m, shape.n),
            Orientation::Vertical => (shape.n, shape.m),
        };
        self.from >= 1 && self.from <= self.to && self.to <= span && (1..=across).contains(&self.index)
    }
}

/// Every intact wire spanning `line`, in ascending track order.
pub fn max_wires_in_line(g: &HardwareGraph, line: &Line) -> Result<Vec<Wire>> {
    let shape = g.shape();
    if !line.fits(shape) {
        return Err(Error::LineOutOfBounds(format!("{line:?} in {shape}")));
    }
    let start = match line.orientation {
        Orientation::Horizontal => Cell::new(line.from, line.index),
        Orientation::Vertical => Cell::new(line.index, line.from),
    };
    Ok((1..=shape.l)
        .map(|track| Wire { orientation: line.orientation, start, len: line.to - line.from + 1, track })
        .filter(|w| w.is_intact(g))
        .collect())
}

/// A maximum set of vertex-disjoint ells in `block`.
///
/// Intact horizontal and vertical wires are paired in ascending track order.
/// If some corner coupler between candidate wires has failed, the pairing is
/// a maximum bipartite matching over the live corner couplers instead.
pub fn max_bundle(g: &HardwareGraph, block: &EllBlock) -> Result<EllBundle> {
    if !block.fits(g.shape()) {
        return Err(Error::BlockOutOfBounds(format!("{block} in {}", g.shape())));
    }
    let hs: Vec<u32> = max_wires_in_line(g, &Line::horizontal_arm(block))?.iter().map(|w| w.track).collect();
    let vs: Vec<u32> = max_wires_in_line(g, &Line::vertical_arm(block))?.iter().map(|w| w.track).collect();
    let c = block.corner();
    let coupled = |h: u32, v: u32| {
        g.is_live_edge(&ChimeraCoord::new(c.x, c.y, HORIZONTAL, h), &ChimeraCoord::new(c.x, c.y, VERTICAL, v))
    };
    let complete = hs.iter().all(|&h| vs.iter().all(|&v| coupled(h, v)));
    let pairs: Vec<(u32, u32)> = if complete {
        hs.iter().copied().zip(vs.iter().copied()).collect()
    } else {
        corner_matching(&hs, &vs, coupled)
    };
    Ok(EllBundle { block: *block, ells: pairs.into_iter().map(|(h, v)| Ell::in_block(block, h, v)).collect() })
}

// Kuhn's augmenting paths; deterministic given the ascending track lists.
fn corner_matching(hs: &[u32], vs: &[u32], coupled: impl Fn(u32, u32) -> bool) -> Vec<(u32, u32)> {
    let adj: Vec<Vec<usize>> = hs.iter().map(|&h| (0..vs.len()).filter(|&j| coupled(h, vs[j])).collect()).collect();
    let mut owner: Vec<Option<usize>> = vec![None; vs.len()];

    fn augment(i: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|o| augment(o, adj, owner, seen)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }

    for i in 0..hs.len() {
        let mut seen = vec![false; vs.len()];
        augment(i, &adj, &mut owner, &mut seen);
    }
    let mut pairs: Vec<(u32, u32)> = owner.iter().enumerate().filter_map(|(j, o)| o.map(|i| (hs[i], vs[j]))).collect();
    pairs.sort_unstable();
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: u32, y: u32, u: u8, k: u32) -> ChimeraCoord {
        ChimeraCoord::new(x, y, u, k)
    }

    fn graph(m: u32, n: u32, l: u32) -> HardwareGraph {
        HardwareGraph::build(ChimeraShape::new(m, n, l).unwrap()).unwrap()
    }

    fn row1() -> Line {
        Line { orientation: Orientation::Horizontal, index: 1, from: 1, to: 4 }
    }

    fn tracks(ws: &[Wire]) -> Vec<u32> {
        ws.iter().map(|w| w.track).collect()
    }

    #[test]
    fn wires_in_line() {
        let g = graph(4, 4, 4);
        assert_eq!(max_wires_in_line(&g, &row1()).unwrap().len(), 4);
        let col = Line { orientation: Orientation::Vertical, index: 3, from: 2, to: 4 };
        assert_eq!(max_wires_in_line(&g, &col).unwrap().len(), 4);

        let h = g.without_qubits(&[q(2, 1, 0, 3)]).unwrap();
        assert_eq!(tracks(&max_wires_in_line(&h, &row1()).unwrap()), vec![1, 2, 4]);

        let h = g.apply_defects(&[], &[(q(1, 1, 0, 2), q(2, 1, 0, 2))]).unwrap();
        assert_eq!(tracks(&max_wires_in_line(&h, &row1()).unwrap()), vec![1, 3, 4]);
        // The broken coupler is outside a line that starts at x = 2.
        let tail = Line { from: 2, ..row1() };
        assert_eq!(max_wires_in_line(&h, &tail).unwrap().len(), 4);

        assert!(max_wires_in_line(&g, &Line { to: 5, ..row1() }).is_err());
        assert!(max_wires_in_line(&g, &Line { index: 0, ..row1() }).is_err());
    }

    #[test]
    fn bundles() {
        let g = graph(4, 4, 4);
        let block = EllBlock::from_arms(Cell::new(3, 2), 3, 2, true, false).unwrap();
        let b = max_bundle(&g, &block).unwrap();
        assert_eq!(b.size(), 4);
        for ell in &b.ells {
            assert_eq!(ell.block(), block);
            assert_eq!(ell.len(), 5);
            assert_eq!(ell.horizontal.track, ell.vertical.track);
        }

        // One broken vertical wire, one broken horizontal: three intact of each.
        let h = g.without_qubits(&[q(3, 3, 1, 2), q(1, 2, 0, 4)]).unwrap();
        let b = max_bundle(&h, &block).unwrap();
        assert_eq!(b.size(), 3);
        let pairs: Vec<_> = b.ells.iter().map(|e| (e.horizontal.track, e.vertical.track)).collect();
        assert_eq!(pairs, vec![(1, 1), (2, 3), (3, 4)]);

        // |S_H| = 2, |S_V| = 4.
        let h = g.without_qubits(&[q(2, 2, 0, 1), q(1, 2, 0, 3)]).unwrap();
        assert_eq!(max_bundle(&h, &block).unwrap().size(), 2);

        let outside = EllBlock::from_arms(Cell::new(4, 4), 2, 2, false, false).unwrap();
        assert!(max_bundle(&g, &outside).is_err());
    }

    #[test]
    fn bundle_matching_avoids_failed_corner_couplers() {
        let g = graph(2, 2, 2);
        let block = EllBlock::from_arms(Cell::new(1, 1), 2, 2, false, false).unwrap();
        // Ascending pairing would use (1,1), which is dead; (1,2)+(2,1) still works.
        let h = g.apply_defects(&[], &[(q(1, 1, 0, 1), q(1, 1, 1, 1))]).unwrap();
        let b = max_bundle(&h, &block).unwrap();
        let pairs: Vec<_> = b.ells.iter().map(|e| (e.horizontal.track, e.vertical.track)).collect();
        assert_eq!(pairs, vec![(1, 2), (2, 1)]);
        // Both couplers out of horizontal track 1: only one ell fits.
        let h = h.apply_defects(&[], &[(q(1, 1, 0, 1), q(1, 1, 1, 2))]).unwrap();
        assert_eq!(max_bundle(&h, &block).unwrap().size(), 1);
    }

    #[test]
    fn ell_path_order_and_parse() {
        let block = EllBlock::from_arms(Cell::new(3, 2), 3, 2, true, false).unwrap();
        let ell = Ell::in_block(&block, 2, 1);
        let qs = ell.qubits();
        assert_eq!(qs, vec![q(1, 2, 0, 2), q(2, 2, 0, 2), q(3, 2, 0, 2), q(3, 2, 1, 1), q(3, 3, 1, 1)]);
        assert_eq!(Ell::from_qubits(&qs).unwrap(), ell);
        let g = graph(3, 3, 2);
        for w in qs.windows(2) {
            assert!(g.is_live_edge(&w[0], &w[1]));
        }
        assert!(Ell::from_qubits(&qs[..3]).is_err());
        assert!(Ell::from_qubits(&[q(1, 1, 0, 1), q(3, 1, 0, 1), q(3, 1, 1, 1)]).is_err());
    }
}
