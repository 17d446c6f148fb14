//! Brute-force references for the dynamic program and the word codec.
//!
//! Nothing here touches working rectangles or DP state: the maximiser scores
//! every enumerated block clique embedding with `max_bundle`, and the
//! structure search finds block clique embeddings straight from their
//! definition.

use std::collections::{BTreeSet, HashMap};

use crate::embedding::{max_bundle, BlockCliqueEmbedding, EllBlock};
use crate::error::{Error, Result};
use crate::topology::{Cell, ChimeraShape, HardwareGraph};
use crate::word::{block_embedding_count, enumerate_block_embeddings, DirectionWord, GridOffset};

pub const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub best_yield: usize,
    pub witness: BlockCliqueEmbedding,
    pub word: DirectionWord,
    pub offset: GridOffset,
    pub instances_examined: u128,
}

/// Scores every block clique embedding with `n` blocks and keeps the best;
/// ties go to the first in enumeration order.
pub fn brute_force_best(g: &HardwareGraph, n: u32, cap: u128) -> Result<OracleResult> {
    let size = block_embedding_count(g.shape(), n);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let mut bundle_size: HashMap<EllBlock, usize> = HashMap::new();
    let mut best: Option<OracleResult> = None;
    let mut examined = 0u128;
    for (word, offset, blocks) in enumerate_block_embeddings(g.shape(), n)? {
        examined += 1;
        let mut total = 0;
        for b in blocks.blocks() {
            total += match bundle_size.get(b) {
                Some(&s) => s,
                None => {
                    let s = max_bundle(g, b)?.size();
                    bundle_size.insert(*b, s);
                    s
                }
            };
        }
        if best.as_ref().is_none_or(|r| total > r.best_yield) {
            best = Some(OracleResult { best_yield: total, witness: blocks, word, offset, instances_examined: 0 });
        }
    }
    let mut best = best.expect("n in range implies at least one embedding");
    best.instances_examined = examined;
    Ok(best)
}

const SEARCH_MAX_CELLS: u32 = 25;
const SEARCH_MAX_N: u32 = 4;

/// Every set of `n` blocks of `n` cells in `shape` whose members pairwise
/// cross in exactly one off-corner cell, horizontal arm against vertical arm.
pub fn exhaustive_block_search(shape: ChimeraShape, n: u32) -> Result<BTreeSet<BlockCliqueEmbedding>> {
    let cells = shape.m * shape.n;
    if cells > SEARCH_MAX_CELLS || n > SEARCH_MAX_N {
        return Err(Error::CapExceeded {
            size: cells.max(n) as u128,
            cap: if n > SEARCH_MAX_N { SEARCH_MAX_N } else { SEARCH_MAX_CELLS } as u128,
        });
    }
    if n < 2 || n > shape.m.min(shape.n) {
        return Err(Error::ChainSizeOutOfRange { n, max: shape.m.min(shape.n) });
    }

    let mut candidates = BTreeSet::new();
    for y in 1..=shape.n {
        for x in 1..=shape.m {
            for height in 1..=n {
                for east in [false, true] {
                    for north in [false, true] {
                        if let Some(b) = EllBlock::from_arms(Cell::new(x, y), n + 1 - height, height, east, north) {
                            if b.fits(shape) {
                                candidates.insert(b);
                            }
                        }
                    }
                }
            }
        }
    }
    let candidates: Vec<EllBlock> = candidates.into_iter().collect();

    let mut found = BTreeSet::new();
    let mut chosen = Vec::with_capacity(n as usize);
    extend(&candidates, 0, n as usize, &mut chosen, &mut found);
    Ok(found)
}

fn extend(
    candidates: &[EllBlock],
    from: usize,
    n: usize,
    chosen: &mut Vec<EllBlock>,
    found: &mut BTreeSet<BlockCliqueEmbedding>,
) {
    if chosen.len() == n {
        found.insert(BlockCliqueEmbedding::from_unordered(chosen.clone()));
        return;
    }
    for i in from..candidates.len() {
        let b = candidates[i];
        if chosen.iter().all(|c| c.crossing(&b).is_some()) {
            chosen.push(b);
            extend(candidates, i + 1, n, chosen, found);
            chosen.pop();
        }
    }
}
