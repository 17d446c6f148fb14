//! Graphs with failed intra-cell couplers.
//!
//! Failed inter-cell couplers only shorten wires and are handled by the
//! wire search itself. A failed intra-cell coupler between two live qubits
//! breaks the guarantee that ells crossing in a cell are coupled there, so
//! each inclusion-minimal vertex cover of the failed couplers is deleted in
//! turn and the engine runs on what is left. The work is at most `2^t`
//! engine runs for `t` failures.
//!
//! Cover qubits are removed from the whole graph, so they are not reused
//! inside wire interiors either. That is sound but can give up some yield.

use std::collections::BTreeSet;

use crate::dp::{best_native_clique, native_clique_embed};
use crate::embedding::NativeCliqueEmbedding;
use crate::error::{Error, Result};
use crate::topology::{ChimeraCoord, Coupler, HardwareGraph};

pub const DEFAULT_FAILURE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntraCellFailureSet {
    edges: Vec<Coupler>,
}

impl IntraCellFailureSet {
    pub fn of(g: &HardwareGraph) -> Self {
        IntraCellFailureSet { edges: g.intra_cell_failures() }
    }

    /// Checks that every edge is an intra-cell pair; liveness is the caller's business.
    pub fn new(edges: Vec<Coupler>) -> Result<Self> {
        for (a, b) in &edges {
            if a.x != b.x || a.y != b.y || a.u == b.u {
                return Err(Error::NotAnEdge(*a, *b));
            }
        }
        Ok(IntraCellFailureSet { edges })
    }

    pub fn edges(&self) -> &[Coupler] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// All inclusion-minimal vertex covers of the failure edges, in canonical order.
pub fn minimal_vertex_covers(f: &IntraCellFailureSet, cap: usize) -> Result<Vec<BTreeSet<ChimeraCoord>>> {
    if f.len() > cap {
        return Err(Error::CapExceeded { size: f.len() as u128, cap: cap as u128 });
    }
    let mut out = BTreeSet::new();
    branch(f.edges(), &mut BTreeSet::new(), &mut BTreeSet::new(), &mut out);
    Ok(out.into_iter().collect())
}

// On the first uncovered edge (a, b): either a joins the cover, or a is
// excluded for good and b must join. The two branches never meet.
fn branch(
    edges: &[Coupler],
    cover: &mut BTreeSet<ChimeraCoord>,
    excluded: &mut BTreeSet<ChimeraCoord>,
    out: &mut BTreeSet<BTreeSet<ChimeraCoord>>,
) {
    let Some(&(a, b)) = edges.iter().find(|(a, b)| !cover.contains(a) && !cover.contains(b)) else {
        if is_minimal(edges, cover) {
            out.insert(cover.clone());
        }
        return;
    };
    if !excluded.contains(&a) {
        cover.insert(a);
        branch(edges, cover, excluded, out);
        cover.remove(&a);
    }
    if !excluded.contains(&b) {
        excluded.insert(a);
        cover.insert(b);
        branch(edges, cover, excluded, out);
        cover.remove(&b);
        excluded.remove(&a);
    }
}

fn is_minimal(edges: &[Coupler], cover: &BTreeSet<ChimeraCoord>) -> bool {
    cover.iter().all(|v| edges.iter().any(|(a, b)| (a == v && !cover.contains(b)) || (b == v && !cover.contains(a))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainLength {
    Fixed(u32),
    Sweep,
}

#[derive(Debug, Clone)]
pub struct IntraFailureOutcome {
    pub embedding: NativeCliqueEmbedding,
    pub failures: usize,
    pub covers_tried: usize,
    pub winning_cover: Vec<ChimeraCoord>,
}

/// Best embedding over all minimal covers of the failed intra-cell couplers;
/// the first cover wins ties. With no failures this is a single plain engine run.
pub fn embed_with_intra_failures(g: &HardwareGraph, length: ChainLength, cap: usize) -> Result<IntraFailureOutcome> {
    let failures = IntraCellFailureSet::of(g);
    let covers = minimal_vertex_covers(&failures, cap)?;
    let mut best: Option<(NativeCliqueEmbedding, &BTreeSet<ChimeraCoord>)> = None;
    for cover in &covers {
        let qubits: Vec<_> = cover.iter().copied().collect();
        let reduced = g.without_qubits(&qubits)?;
        let e = match length {
            ChainLength::Fixed(n) => native_clique_embed(&reduced, n)?,
            ChainLength::Sweep => best_native_clique(&reduced)?,
        };
        if best.as_ref().is_none_or(|(b, _)| e.clique_size() > b.clique_size()) {
            best = Some((e, cover));
        }
    }
    let (embedding, cover) = best.expect("there is always at least one cover");
    Ok(IntraFailureOutcome {
        embedding,
        failures: failures.len(),
        covers_tried: covers.len(),
        winning_cover: cover.iter().copied().collect(),
    })
}
