use serde::{Deserialize, Serialize};

use super::block::{BlockFile, EllBlock};
use super::bundle::{Ell, EllBundle, NativeCliqueEmbedding};
use crate::error::{Error, Result};
use crate::topology::ChimeraCoord;

/// On-disk embedding: chains sorted by bundle height then track, blocks in height order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingFile {
    pub n: u32,
    pub chains: Vec<Vec<ChimeraCoord>>,
    pub blocks: Vec<BlockFile>,
}

impl From<&NativeCliqueEmbedding> for EmbeddingFile {
    fn from(e: &NativeCliqueEmbedding) -> Self {
        EmbeddingFile {
            n: e.n,
            chains: e.chains(),
            blocks: e.bundles.iter().map(|b| BlockFile::from(&b.block)).collect(),
        }
    }
}

impl TryFrom<&EmbeddingFile> for NativeCliqueEmbedding {
    type Error = Error;

    fn try_from(f: &EmbeddingFile) -> Result<Self> {
        let blocks: Vec<EllBlock> = f.blocks.iter().map(EllBlock::try_from).collect::<Result<_>>()?;
        let mut bundles: Vec<EllBundle> = blocks.iter().map(|&block| EllBundle { block, ells: vec![] }).collect();
        for chain in &f.chains {
            let ell = Ell::from_qubits(chain)?;
            let block = ell.block();
            let bundle = bundles
                .iter_mut()
                .find(|b| b.block == block)
                .ok_or_else(|| Error::MalformedEmbedding(format!("chain in block {block} matches no listed block")))?;
            bundle.ells.push(ell);
        }
        Ok(NativeCliqueEmbedding { n: f.n, bundles })
    }
}

impl NativeCliqueEmbedding {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&EmbeddingFile::from(self)).expect("embedding serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: EmbeddingFile = serde_json::from_str(text)?;
        NativeCliqueEmbedding::try_from(&file)
    }
}

#[cfg(test)]
mod tests {
    use crate::embedding::triangle_embedding;
    use crate::embedding::NativeCliqueEmbedding;
    use crate::topology::ChimeraShape;

    #[test]
    fn roundtrip() {
        let e = triangle_embedding(ChimeraShape::new(3, 3, 2).unwrap()).unwrap();
        let text = e.to_json();
        assert!(text.starts_with(r#"{"n":3,"chains":[[[1,3,0,1],[2,3,0,1],[3,3,0,1],[3,3,1,1]]"#), "{text}");
        assert_eq!(NativeCliqueEmbedding::from_json(&text).unwrap(), e);
    }

    #[test]
    fn rejects_orphan_chain() {
        let text = r#"{"n":2,"chains":[[[1,1,0,1],[2,1,0,1],[2,1,1,1]]],"blocks":[]}"#;
        assert!(NativeCliqueEmbedding::from_json(text).is_err());
    }
}
