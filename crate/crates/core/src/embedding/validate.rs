use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::bundle::NativeCliqueEmbedding;
use crate::topology::{Cell, ChimeraCoord, HardwareGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DeadQubit { chain: usize, qubit: ChimeraCoord },
    Disconnected { chain: usize },
    Overlap { chains: (usize, usize), qubit: ChimeraCoord },
    NotAdjacent { chains: (usize, usize) },
    WrongLength { chain: usize, len: usize, expected: usize },
    EdgeCount { chains: (usize, usize), same_bundle: bool, found: usize, expected: usize },
    Structure { detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub n: u32,
    pub chains: usize,
    pub clique_size: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.valid
    }
}

struct Chains<'a> {
    g: &'a HardwareGraph,
    chains: Vec<Vec<ChimeraCoord>>,
    bundle_of: Vec<usize>,
    owner: HashMap<ChimeraCoord, usize>,
}

impl<'a> Chains<'a> {
    fn new(g: &'a HardwareGraph, e: &NativeCliqueEmbedding) -> (Self, Vec<Violation>) {
        let mut overlaps = Vec::new();
        let mut chains = Vec::new();
        let mut bundle_of = Vec::new();
        let mut owner = HashMap::new();
        for (b, bundle) in e.bundles.iter().enumerate() {
            for ell in &bundle.ells {
                let id = chains.len();
                let qs = ell.qubits();
                for q in &qs {
                    if let Some(&other) = owner.get(q) {
                        if other != id {
                            overlaps.push(Violation::Overlap { chains: (other, id), qubit: *q });
                        }
                    } else {
                        owner.insert(*q, id);
                    }
                }
                chains.push(qs);
                bundle_of.push(b);
            }
        }
        (Chains { g, chains, bundle_of, owner }, overlaps)
    }

    fn connected(&self, chain: &[ChimeraCoord]) -> bool {
        if chain.is_empty() {
            return false;
        }
        let mut seen = vec![false; chain.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..chain.len() {
                if !seen[j] && self.g.is_live_edge(&chain[i], &chain[j]) {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn intact(&self, id: usize) -> bool {
        let chain = &self.chains[id];
        chain.iter().all(|q| self.g.is_live_qubit(q)) && self.connected(chain)
    }

    /// Live couplers between each pair of chains, keyed `(lo, hi)`, with the cell of each coupler.
    fn pair_edges(&self) -> HashMap<(usize, usize), Vec<Cell>> {
        let mut out: HashMap<(usize, usize), Vec<Cell>> = HashMap::new();
        for (i, chain) in self.chains.iter().enumerate() {
            for q in chain {
                if self.owner.get(q) != Some(&i) {
                    continue;
                }
                for p in self.g.live_neighbors(*q) {
                    match self.owner.get(&p) {
                        Some(&j) if j > i => out.entry((i, j)).or_default().push(q.cell()),
                        _ => {}
                    }
                }
            }
        }
        out
    }
}

/// Checks that `e` is a genuine clique minor of `g` with the native
/// structure; lists every violation found.
pub fn validate_embedding(g: &HardwareGraph, e: &NativeCliqueEmbedding) -> ValidationReport {
    let (chains, mut violations) = Chains::new(g, e);
    let expected_len = e.n as usize + 1;

    if let Err(err) = e.blocks().check() {
        violations.push(Violation::Structure { detail: err.to_string() });
    }
    if e.bundles.len() != e.n as usize {
        violations.push(Violation::Structure { detail: format!("{} bundles for n = {}", e.bundles.len(), e.n) });
    }
    for (b, bundle) in e.bundles.iter().enumerate() {
        if !bundle.block.fits(g.shape()) {
            violations
                .push(Violation::Structure { detail: format!("bundle {b} block {} leaves the grid", bundle.block) });
        }
        for ell in &bundle.ells {
            if ell.block() != bundle.block {
                violations
                    .push(Violation::Structure { detail: format!("bundle {b} holds an ell in block {}", ell.block()) });
            }
        }
    }

    for (id, chain) in chains.chains.iter().enumerate() {
        let mut all_live = true;
        for q in chain {
            if !g.is_live_qubit(q) {
                all_live = false;
                violations.push(Violation::DeadQubit { chain: id, qubit: *q });
            }
        }
        if all_live && !chains.connected(chain) {
            violations.push(Violation::Disconnected { chain: id });
        }
        if chain.len() != expected_len {
            violations.push(Violation::WrongLength { chain: id, len: chain.len(), expected: expected_len });
        }
    }

    let edges = chains.pair_edges();
    let count = chains.chains.len();
    for i in 0..count {
        for j in i + 1..count {
            let found = edges.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[]);
            if found.is_empty() {
                violations.push(Violation::NotAdjacent { chains: (i, j) });
            }
            let (bi, bj) = (chains.bundle_of[i], chains.bundle_of[j]);
            let same_bundle = bi == bj;
            let (expected, cell) = if same_bundle {
                (2, Some(e.bundles[bi].block.corner()))
            } else {
                (1, e.bundles[bi].block.crossing(&e.bundles[bj].block))
            };
            let placed = cell.is_some_and(|c| found.iter().all(|f| *f == c));
            if found.len() != expected || !placed {
                violations.push(Violation::EdgeCount { chains: (i, j), same_bundle, found: found.len(), expected });
            }
        }
    }

    ValidationReport { valid: violations.is_empty(), n: e.n, chains: count, clique_size: e.clique_size(), violations }
}

/// Chains of `e` that remain usable in `g`: every qubit and internal coupler
/// live, and coupled to every other usable chain.
///
/// When failed couplers cut two intact chains apart, chains are dropped
/// greedily (most missing partners first, then highest index) until the
/// rest are pairwise coupled.
pub fn surviving_chains(g: &HardwareGraph, e: &NativeCliqueEmbedding) -> usize {
    let (chains, _) = Chains::new(g, e);
    let mut alive: Vec<usize> = (0..chains.chains.len()).filter(|&i| chains.intact(i)).collect();
    if g.dead_couplers().is_empty() {
        return alive.len();
    }
    let edges = chains.pair_edges();
    loop {
        let missing: Vec<usize> = alive
            .iter()
            .map(|&i| alive.iter().filter(|&&j| j != i && !edges.contains_key(&(i.min(j), i.max(j)))).count())
            .collect();
        let worst = missing.iter().enumerate().max_by_key(|(pos, m)| (**m, *pos));
        match worst {
            Some((pos, &m)) if m > 0 => {
                alive.remove(pos);
            }
            _ => return alive.len(),
        }
    }
}
