//! Chimera hardware graphs and their defects.
//!
//! `C(M,N,L)` is an `M x N` grid of `K(L,L)` unit cells. A qubit is addressed
//! by `(x, y, u, k)`: cell column `x`, cell row `y`, orientation `u`
//! (0 horizontal, 1 vertical) and track `k`. All coordinates are 1-indexed.
//!
//! Adjacency is arithmetic; only the defect sets are stored.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const HORIZONTAL: u8 = 0;
pub const VERTICAL: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChimeraCoord {
    pub x: u32,
    pub y: u32,
    pub u: u8,
    pub k: u32,
}

impl ChimeraCoord {
    pub const fn new(x: u32, y: u32, u: u8, k: u32) -> Self {
        ChimeraCoord { x, y, u, k }
    }

    pub fn cell(&self) -> Cell {
        Cell::new(self.x, self.y)
    }

    fn key(&self) -> (u32, u32, u8, u32) {
        (self.y, self.x, self.u, self.k)
    }
}

// Canonical order: lexicographic on (y, x, u, k).
impl Ord for ChimeraCoord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for ChimeraCoord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ChimeraCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.x, self.y, self.u, self.k)
    }
}

impl Serialize for ChimeraCoord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x, self.y, self.u as u32, self.k].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChimeraCoord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y, u, k] = <[u32; 4]>::deserialize(d)?;
        if u > 1 {
            return Err(serde::de::Error::custom(format!("orientation {u} is not 0 or 1")));
        }
        Ok(ChimeraCoord::new(x, y, u as u8, k))
    }
}

/// A unit cell `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub x: u32,
    pub y: u32,
}

impl Cell {
    pub const fn new(x: u32, y: u32) -> Self {
        Cell { x, y }
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[u32; 2]>::deserialize(d)?;
        Ok(Cell::new(x, y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChimeraShape {
    #[serde(rename = "M")]
    pub m: u32,
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "L")]
    pub l: u32,
}

impl ChimeraShape {
    pub fn new(m: u32, n: u32, l: u32) -> Result<Self> {
        let shape = ChimeraShape { m, n, l };
        shape.check()?;
        Ok(shape)
    }

    fn check(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 || self.l == 0 {
            return Err(Error::InvalidShape { m: self.m, n: self.n, l: self.l });
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        2 * self.m as usize * self.n as usize * self.l as usize
    }

    /// Edge count of the defect-free graph.
    pub fn num_edges(&self) -> usize {
        let (m, n, l) = (self.m as usize, self.n as usize, self.l as usize);
        m * n * l * l + (m - 1) * n * l + m * (n - 1) * l
    }

    pub fn contains(&self, q: &ChimeraCoord) -> bool {
        (1..=self.m).contains(&q.x) && (1..=self.n).contains(&q.y) && q.u <= 1 && (1..=self.l).contains(&q.k)
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        (1..=self.m).contains(&c.x) && (1..=self.n).contains(&c.y)
    }

    /// Dense index consistent with the canonical coordinate order.
    pub fn index(&self, q: &ChimeraCoord) -> usize {
        let l = self.l as usize;
        (((q.y - 1) as usize * self.m as usize + (q.x - 1) as usize) * 2 + q.u as usize) * l + (q.k - 1) as usize
    }

    pub fn coord(&self, index: usize) -> ChimeraCoord {
        let l = self.l as usize;
        let k = index % l;
        let rest = index / l;
        let u = rest % 2;
        let cell = rest / 2;
        let x = cell % self.m as usize;
        let y = cell / self.m as usize;
        ChimeraCoord::new(x as u32 + 1, y as u32 + 1, u as u8, k as u32 + 1)
    }

    /// All qubits in canonical order.
    pub fn qubits(&self) -> impl Iterator<Item = ChimeraCoord> + '_ {
        (0..self.num_qubits()).map(move |i| self.coord(i))
    }

    pub fn is_edge(&self, a: &ChimeraCoord, b: &ChimeraCoord) -> bool {
        if !self.contains(a) || !self.contains(b) {
            return false;
        }
        if a.x == b.x && a.y == b.y {
            return a.u != b.u;
        }
        if a.u != b.u || a.k != b.k {
            return false;
        }
        if a.u == HORIZONTAL {
            a.y == b.y && a.x.abs_diff(b.x) == 1
        } else {
            a.x == b.x && a.y.abs_diff(b.y) == 1
        }
    }

    /// Ideal-graph neighbours of `q`.
    pub fn neighbors(&self, q: ChimeraCoord) -> impl Iterator<Item = ChimeraCoord> + '_ {
        let across = (1..=self.l).map(move |k| ChimeraCoord::new(q.x, q.y, 1 - q.u, k));
        let (dx, dy) = if q.u == HORIZONTAL { (1i64, 0i64) } else { (0, 1) };
        let along = [-1i64, 1].into_iter().filter_map(move |s| {
            let x = q.x as i64 + s * dx;
            let y = q.y as i64 + s * dy;
            let c = ChimeraCoord::new(x.max(0) as u32, y.max(0) as u32, q.u, q.k);
            (x >= 1 && y >= 1 && self.contains(&c)).then_some(c)
        });
        across.chain(along)
    }
}

impl fmt::Display for ChimeraShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{},{})", self.m, self.n, self.l)
    }
}

pub type Coupler = (ChimeraCoord, ChimeraCoord);

fn ordered(a: ChimeraCoord, b: ChimeraCoord) -> Coupler {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A Chimera graph with dead qubits and dead couplers. Immutable; defects are
/// added by constructing a new graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardwareGraph {
    shape: ChimeraShape,
    alive: Vec<bool>,
    dead_qubits: BTreeSet<ChimeraCoord>,
    // Only failures between two live qubits.
    dead_couplers: BTreeSet<Coupler>,
}

impl HardwareGraph {
    /// The defect-free Chimera graph of `shape`.
    pub fn build(shape: ChimeraShape) -> Result<Self> {
        shape.check()?;
        Ok(HardwareGraph {
            shape,
            alive: vec![true; shape.num_qubits()],
            dead_qubits: BTreeSet::new(),
            dead_couplers: BTreeSet::new(),
        })
    }

    pub fn shape(&self) -> ChimeraShape {
        self.shape
    }

    pub fn dead_qubits(&self) -> &BTreeSet<ChimeraCoord> {
        &self.dead_qubits
    }

    pub fn dead_couplers(&self) -> &BTreeSet<Coupler> {
        &self.dead_couplers
    }

    pub fn is_live_qubit(&self, q: &ChimeraCoord) -> bool {
        self.shape.contains(q) && self.alive[self.shape.index(q)]
    }

    pub fn is_live_edge(&self, a: &ChimeraCoord, b: &ChimeraCoord) -> bool {
        self.shape.is_edge(a, b)
            && self.alive[self.shape.index(a)]
            && self.alive[self.shape.index(b)]
            && (self.dead_couplers.is_empty() || !self.dead_couplers.contains(&ordered(*a, *b)))
    }

    pub fn live_qubit_count(&self) -> usize {
        self.shape.num_qubits() - self.dead_qubits.len()
    }

    /// Live neighbours of `q` (empty if `q` itself is dead).
    pub fn live_neighbors(&self, q: ChimeraCoord) -> impl Iterator<Item = ChimeraCoord> + '_ {
        let live = self.is_live_qubit(&q);
        self.shape.neighbors(q).filter(move |p| live && self.is_live_edge(&q, p))
    }

    pub fn live_edge_count(&self) -> usize {
        self.shape.qubits().map(|q| self.live_neighbors(q).filter(|p| q < *p).count()).sum()
    }

    /// Failed intra-cell couplers whose endpoints are both live.
    pub fn intra_cell_failures(&self) -> Vec<Coupler> {
        self.dead_couplers.iter().filter(|(a, b)| a.x == b.x && a.y == b.y).copied().collect()
    }

    pub fn has_intra_cell_failures(&self) -> bool {
        self.dead_couplers.iter().any(|(a, b)| a.x == b.x && a.y == b.y)
    }

    /// Returns a graph with the listed qubits and couplers additionally dead.
    pub fn apply_defects(&self, qubits: &[ChimeraCoord], couplers: &[Coupler]) -> Result<Self> {
        for q in qubits {
            if !self.shape.contains(q) {
                return Err(Error::CoordOutOfRange(*q));
            }
        }
        for (a, b) in couplers {
            for q in [a, b] {
                if !self.shape.contains(q) {
                    return Err(Error::CoordOutOfRange(*q));
                }
            }
            if !self.shape.is_edge(a, b) {
                return Err(Error::NotAnEdge(*a, *b));
            }
        }
        let mut g = self.clone();
        for q in qubits {
            g.alive[g.shape.index(q)] = false;
            g.dead_qubits.insert(*q);
        }
        for &(a, b) in couplers {
            g.dead_couplers.insert(ordered(a, b));
        }
        let alive = &g.alive;
        let shape = g.shape;
        g.dead_couplers.retain(|(a, b)| alive[shape.index(a)] && alive[shape.index(b)]);
        Ok(g)
    }

    pub fn without_qubits(&self, qubits: &[ChimeraCoord]) -> Result<Self> {
        self.apply_defects(qubits, &[])
    }

    /// Quarter turn: `(x, y, u, k) -> (N + 1 - y, x, 1 - u, k)` on `C(M,N,L) -> C(N,M,L)`.
    pub fn rotate90(&self) -> Self {
        let shape = ChimeraShape { m: self.shape.n, n: self.shape.m, l: self.shape.l };
        let qubits: Vec<_> = self.dead_qubits.iter().map(|q| rotate_coord(self.shape, *q)).collect();
        let couplers: Vec<_> = self
            .dead_couplers
            .iter()
            .map(|(a, b)| (rotate_coord(self.shape, *a), rotate_coord(self.shape, *b)))
            .collect();
        HardwareGraph::build(shape)
            .and_then(|g| g.apply_defects(&qubits, &couplers))
            .expect("rotation preserves validity")
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            shape: self.shape,
            dead_qubits: self.dead_qubits.iter().copied().collect(),
            dead_couplers: self.dead_couplers.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        let couplers: Vec<_> = file.dead_couplers.iter().map(|[a, b]| (*a, *b)).collect();
        HardwareGraph::build(file.shape)?.apply_defects(&file.dead_qubits, &couplers)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        HardwareGraph::from_file(&file)
    }
}

/// Image of `q` under [`HardwareGraph::rotate90`] for a graph of shape `shape`.
pub fn rotate_coord(shape: ChimeraShape, q: ChimeraCoord) -> ChimeraCoord {
    ChimeraCoord::new(shape.n + 1 - q.y, q.x, 1 - q.u, q.k)
}

/// On-disk graph format. Arrays are in canonical coordinate order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub shape: ChimeraShape,
    #[serde(default)]
    pub dead_qubits: Vec<ChimeraCoord>,
    #[serde(default)]
    pub dead_couplers: Vec<[ChimeraCoord; 2]>,
}

/// `count` distinct qubits drawn uniformly from the whole of `shape`, in canonical order.
pub fn random_qubits<R: Rng + ?Sized>(shape: ChimeraShape, count: usize, rng: &mut R) -> Vec<ChimeraCoord> {
    let total = shape.num_qubits();
    let mut picked: Vec<usize> = sample(rng, total, count.min(total)).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|i| shape.coord(i)).collect()
}
