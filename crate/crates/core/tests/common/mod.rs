//! Reference checks built only from the Chimera adjacency rules and the
//! block definitions. Nothing here calls the DP, the codec or the bundle search.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use chimera_clique::embedding::{BlockCliqueEmbedding, BlockFile};
use chimera_clique::topology::{Cell, ChimeraCoord, ChimeraShape, HardwareGraph};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn q(x: u32, y: u32, u: u8, k: u32) -> ChimeraCoord {
    ChimeraCoord::new(x, y, u, k)
}

pub fn ideal_adjacent(a: &ChimeraCoord, b: &ChimeraCoord) -> bool {
    if a.x == b.x && a.y == b.y {
        return a.u != b.u;
    }
    if a.u != b.u || a.k != b.k {
        return false;
    }
    match a.u {
        0 => a.y == b.y && a.x.abs_diff(b.x) == 1,
        _ => a.x == b.x && a.y.abs_diff(b.y) == 1,
    }
}

pub fn live(g: &HardwareGraph, a: &ChimeraCoord) -> bool {
    g.shape().contains(a) && !g.dead_qubits().contains(a)
}

pub fn live_adjacent(g: &HardwareGraph, a: &ChimeraCoord, b: &ChimeraCoord) -> bool {
    let pair = if a < b { (*a, *b) } else { (*b, *a) };
    ideal_adjacent(a, b) && live(g, a) && live(g, b) && !g.dead_couplers().contains(&pair)
}

/// Chains form a clique minor with uniform chain length `len`.
pub fn check_clique_minor(g: &HardwareGraph, chains: &[Vec<ChimeraCoord>], len: usize) -> Result<(), String> {
    let mut seen = BTreeSet::new();
    for (i, c) in chains.iter().enumerate() {
        if c.len() != len {
            return Err(format!("chain {i} has {} qubits, expected {len}", c.len()));
        }
        for v in c {
            if !live(g, v) {
                return Err(format!("chain {i} uses unusable qubit {v:?}"));
            }
            if !seen.insert(*v) {
                return Err(format!("qubit {v:?} used twice"));
            }
        }
        let mut reached = BTreeSet::from([c[0]]);
        let mut queue = VecDeque::from([c[0]]);
        while let Some(v) = queue.pop_front() {
            for w in c {
                if !reached.contains(w) && live_adjacent(g, &v, w) {
                    reached.insert(*w);
                    queue.push_back(*w);
                }
            }
        }
        if reached.len() != c.len() {
            return Err(format!("chain {i} is disconnected"));
        }
    }
    for i in 0..chains.len() {
        for j in i + 1..chains.len() {
            if !chains[i].iter().any(|a| chains[j].iter().any(|b| live_adjacent(g, a, b))) {
                return Err(format!("chains {i} and {j} are not coupled"));
            }
        }
    }
    Ok(())
}

pub type CellSet = BTreeSet<(u32, u32)>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RefBlock {
    pub corner: (u32, u32),
    pub horizontal: CellSet,
    pub vertical: CellSet,
}

impl RefBlock {
    pub fn cells(&self) -> CellSet {
        self.horizontal.union(&self.vertical).copied().collect()
    }

    fn crosses(&self, other: &RefBlock) -> bool {
        let common: Vec<_> = self.cells().intersection(&other.cells()).copied().collect();
        let [c] = common[..] else { return false };
        c != self.corner
            && c != other.corner
            && ((self.horizontal.contains(&c) && other.vertical.contains(&c))
                || (self.vertical.contains(&c) && other.horizontal.contains(&c)))
    }
}

/// Every ell block of `n` cells inside `m x rows`.
pub fn all_blocks(m: u32, rows: u32, n: u32) -> Vec<RefBlock> {
    let mut out = BTreeSet::new();
    for x in 1..=m as i64 {
        for y in 1..=rows as i64 {
            for w in 1..=n as i64 {
                let h = n as i64 + 1 - w;
                for sx in [-1i64, 1] {
                    for sy in [-1i64, 1] {
                        let horizontal: Vec<(i64, i64)> = (0..w).map(|i| (x + sx * i, y)).collect();
                        let vertical: Vec<(i64, i64)> = (0..h).map(|j| (x, y + sy * j)).collect();
                        let inside = |&(a, b): &(i64, i64)| a >= 1 && b >= 1 && a <= m as i64 && b <= rows as i64;
                        if horizontal.iter().chain(&vertical).all(inside) {
                            let conv = |v: Vec<(i64, i64)>| v.into_iter().map(|(a, b)| (a as u32, b as u32)).collect();
                            out.insert(RefBlock {
                                corner: (x as u32, y as u32),
                                horizontal: conv(horizontal),
                                vertical: conv(vertical),
                            });
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// All sets of `n` pairwise crossing `n`-cell blocks, from the definition alone.
pub fn block_cliques(m: u32, rows: u32, n: u32) -> Vec<Vec<RefBlock>> {
    fn extend(cands: &[RefBlock], from: usize, n: usize, chosen: &mut Vec<RefBlock>, out: &mut Vec<Vec<RefBlock>>) {
        if chosen.len() == n {
            out.push(chosen.clone());
            return;
        }
        for i in from..cands.len() {
            if chosen.iter().all(|c| c.crosses(&cands[i])) {
                chosen.push(cands[i].clone());
                extend(cands, i + 1, n, chosen, out);
                chosen.pop();
            }
        }
    }
    let cands = all_blocks(m, rows, n);
    let mut out = Vec::new();
    extend(&cands, 0, n as usize, &mut Vec::new(), &mut out);
    out
}

/// Canonical form used to compare with library output: each block as
/// (corner, sorted cells), blocks sorted.
pub type BlockKey = BTreeSet<((u32, u32), Vec<(u32, u32)>)>;

pub fn ref_key(blocks: &[RefBlock]) -> BlockKey {
    blocks.iter().map(|b| (b.corner, b.cells().into_iter().collect())).collect()
}

pub fn lib_key(e: &BlockCliqueEmbedding) -> BlockKey {
    e.blocks()
        .iter()
        .map(|b| {
            let f = BlockFile::from(b);
            let mut cells: Vec<(u32, u32)> = f.cells.iter().map(|c: &Cell| (c.x, c.y)).collect();
            cells.sort();
            ((f.corner.x, f.corner.y), cells)
        })
        .collect()
}

/// Bundle capacity of a block in a graph with dead qubits only: the number
/// of fully live horizontal tracks along the horizontal arm, capped by the
/// same count for the vertical arm. Every corner pair is coupled when no
/// coupler is dead, so any track pairing works.
pub fn induced_bundle_size(g: &HardwareGraph, b: &RefBlock) -> usize {
    let l = g.shape().l;
    let intact =
        |cells: &CellSet, u: u8| (1..=l).filter(|&k| cells.iter().all(|&(x, y)| live(g, &q(x, y, u, k)))).count();
    intact(&b.horizontal, 0).min(intact(&b.vertical, 1))
}

/// Best total over every block clique embedding, by direct scoring.
pub fn induced_best(g: &HardwareGraph, cliques: &[Vec<RefBlock>]) -> usize {
    cliques.iter().map(|c| c.iter().map(|b| induced_bundle_size(g, b)).sum::<usize>()).max().unwrap_or(0)
}

pub fn random_dead<R: Rng>(shape: ChimeraShape, count: usize, rng: &mut R) -> Vec<ChimeraCoord> {
    let mut all: Vec<ChimeraCoord> = shape.qubits().collect();
    all.shuffle(rng);
    all.truncate(count);
    all
}

/// Image of `v` under the quarter turn of an `m x rows` grid.
pub fn turn(rows: u32, v: &ChimeraCoord) -> ChimeraCoord {
    q(rows + 1 - v.y, v.x, 1 - v.u, v.k)
}

pub fn median_lower(values: &[usize]) -> usize {
    let mut v = values.to_vec();
    v.sort_unstable();
    v[(v.len() - 1) / 2]
}

/// Test-side view of a library block, rebuilt from its corner and extents.
pub fn ref_block(b: &chimera_clique::embedding::EllBlock) -> RefBlock {
    let (c, (w, e), (s, n)) = (b.corner(), b.columns(), b.rows());
    RefBlock {
        corner: (c.x, c.y),
        horizontal: (w..=e).map(|x| (x, c.y)).collect(),
        vertical: (s..=n).map(|y| (c.x, y)).collect(),
    }
}

/// Pairwise crossing plus the block count and sizes, checked on the test side.
pub fn is_block_clique(blocks: &[RefBlock], n: usize) -> bool {
    blocks.len() == n
        && blocks.iter().all(|b| b.cells().len() == n)
        && (0..n).all(|i| (i + 1..n).all(|j| blocks[i].crosses(&blocks[j])))
}
