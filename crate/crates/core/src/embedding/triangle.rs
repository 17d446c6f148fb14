use super::block::EllBlock;
use super::bundle::{Ell, EllBundle, NativeCliqueEmbedding};
use crate::error::{Error, Result};
use crate::topology::{Cell, ChimeraShape};

/// The classic `K(L*M)` triangle embedding of `C(M,M,L)`.
///
/// Chain `(i, k)` runs along row `i` over columns `1..=i` and up column `i`
/// over rows `i..=M`, on track `k` throughout, so every chain has `M + 1`
/// qubits and the corners sit on the diagonal. The other three triangles
/// are its images under `NativeCliqueEmbedding::rotate90`.
pub fn triangle_embedding(shape: ChimeraShape) -> Result<NativeCliqueEmbedding> {
    if shape.m != shape.n {
        return Err(Error::NonSquare { m: shape.m, n: shape.n });
    }
    let m = shape.m;
    if m < 2 {
        return Err(Error::ChainSizeOutOfRange { n: m, max: m });
    }
    // Height M - i + 1, so the bundle for i = M comes first.
    let bundles = (1..=m)
        .rev()
        .map(|i| {
            let block = EllBlock::new(Cell::new(i, i), (1, i), (i, m)).expect("diagonal block");
            let ells = (1..=shape.l).map(|k| Ell::in_block(&block, k, k)).collect();
            EllBundle { block, ells }
        })
        .collect();
    Ok(NativeCliqueEmbedding { n: m, bundles })
}
