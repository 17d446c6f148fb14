//! Maximum native clique minors in defective Chimera graphs.
//!
//! A native clique embedding uses ell-shaped chains of uniform length
//! `n + 1`, grouped in bundles over `n` ell blocks that pairwise cross in a
//! single unit cell. [`dp::native_clique_embed`] finds a largest one for a
//! given `n` in polynomial time and [`dp::best_native_clique`] sweeps all
//! `n`. [`word`] encodes every block layout as a direction word, [`oracle`]
//! holds brute-force references, [`defects`] extends the engine to failed
//! intra-cell couplers, and [`yield_lab`] runs clique-yield experiments.

pub mod defects;
pub mod dp;
pub mod embedding;
pub mod error;
pub mod oracle;
pub mod topology;
pub mod word;
pub mod yield_lab;

pub use dp::{best_native_clique, native_clique_embed};
pub use embedding::{
    max_bundle, surviving_chains, triangle_embedding, validate_embedding, BlockCliqueEmbedding, EllBlock,
    NativeCliqueEmbedding,
};
pub use error::{Error, Result};
pub use topology::{ChimeraCoord, ChimeraShape, HardwareGraph};
