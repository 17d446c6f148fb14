//! Wires, ells, ell blocks and bundles, and the native clique embeddings
//! built from them.

mod block;
mod bundle;
mod io;
mod triangle;
mod validate;

pub use block::{BlockCliqueEmbedding, BlockFile, EllBlock};
pub use bundle::{max_bundle, max_wires_in_line, Ell, EllBundle, Line, NativeCliqueEmbedding, Orientation, Wire};
pub use io::EmbeddingFile;
pub use triangle::triangle_embedding;
pub use validate::{surviving_chains, validate_embedding, ValidationReport, Violation};
