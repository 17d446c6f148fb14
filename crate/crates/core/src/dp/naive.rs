//! Literal form of the dynamic program, kept as a test partner for the
//! refined engine.
//!
//! Every rectangle holds a whole partial embedding (a list of blocks), its
//! weight is recomputed by summing bundle sizes, rectangles start out empty,
//! and an extension replaces the stored embedding only when strictly
//! heavier. Because of the empty start the winning list can be missing its
//! zero-weight prefix, so only the weight is comparable with the refined
//! engine, not the block list.

use std::collections::HashMap;

use super::{blocks_of_height, check_n, r_from, r_to, WorkingRect};
use crate::embedding::{max_bundle, EllBlock};
use crate::error::Result;
use crate::topology::HardwareGraph;

#[derive(Debug, Clone)]
pub struct NaiveResult {
    pub clique_size: usize,
    pub blocks: Vec<EllBlock>,
}

pub fn native_clique_embed_naive(g: &HardwareGraph, n: u32) -> Result<NaiveResult> {
    let shape = g.shape();
    check_n(shape, n)?;

    let mut bundle_size: HashMap<EllBlock, usize> = HashMap::new();
    for height in 1..=n {
        for b in blocks_of_height(shape, n, height) {
            bundle_size.insert(b, max_bundle(g, &b)?.size());
        }
    }
    let weight = |blocks: &[EllBlock]| blocks.iter().map(|b| bundle_size[b]).sum::<usize>();

    let mut partial: HashMap<WorkingRect, Vec<EllBlock>> = HashMap::new();
    for height in 1..n {
        for b in blocks_of_height(shape, n, height) {
            let mut extended = match height {
                1 => Vec::new(),
                _ => partial.get(&r_to(&b)?).cloned().unwrap_or_default(),
            };
            extended.push(b);
            let target = r_from(&b)?;
            let current = partial.get(&target).map_or(0, |p| weight(p));
            if current < weight(&extended) {
                partial.insert(target, extended);
            }
        }
    }

    let mut best: Vec<EllBlock> = Vec::new();
    for b in blocks_of_height(shape, n, n) {
        let mut extended = partial.get(&r_to(&b)?).cloned().unwrap_or_default();
        extended.push(b);
        if weight(&best) < weight(&extended) {
            best = extended;
        }
    }
    Ok(NaiveResult { clique_size: weight(&best), blocks: best })
}
