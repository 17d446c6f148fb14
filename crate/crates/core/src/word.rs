//! Direction words and the block clique embeddings they encode.
//!
//! A word `s_1 ... s_n` has `s_1` in `{E, W}`, `s_n` in `{N, S}` and every
//! other symbol in `{NE, NW, SE, SW}`. Placing blocks one at a time in order
//! of height, each symbol says where the next corner goes relative to the
//! current working rectangle. There are `4^(n-1)` words for a given `n`, and
//! each one yields a distinct block clique embedding of an `n x n` grid.
//!
//! Larger grids hold translates of those; [`enumerate_block_embeddings`]
//! walks words and offsets. That every block clique embedding of an
//! `M x N` grid arises this way is checked against an exhaustive search in
//! the test suite rather than assumed.

use std::fmt;
use std::str::FromStr;

use crate::embedding::{BlockCliqueEmbedding, EllBlock};
use crate::error::{Error, Result};
use crate::topology::{Cell, ChimeraShape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    E,
    W,
    NE,
    NW,
    SE,
    SW,
    N,
    S,
}

impl Direction {
    const FIRST: [Direction; 2] = [Direction::E, Direction::W];
    const MIDDLE: [Direction; 4] = [Direction::NE, Direction::NW, Direction::SE, Direction::SW];
    const LAST: [Direction; 2] = [Direction::N, Direction::S];

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::E => "E",
            Direction::W => "W",
            Direction::NE => "NE",
            Direction::NW => "NW",
            Direction::SE => "SE",
            Direction::SW => "SW",
            Direction::N => "N",
            Direction::S => "S",
        }
    }

    fn north(self) -> bool {
        matches!(self, Direction::N | Direction::NE | Direction::NW)
    }

    fn south(self) -> bool {
        matches!(self, Direction::S | Direction::SE | Direction::SW)
    }

    fn east(self) -> bool {
        matches!(self, Direction::E | Direction::NE | Direction::SE)
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "E" => Direction::E,
            "W" => Direction::W,
            "NE" => Direction::NE,
            "NW" => Direction::NW,
            "SE" => Direction::SE,
            "SW" => Direction::SW,
            "N" => Direction::N,
            "S" => Direction::S,
            _ => return Err(Error::MalformedWord(format!("unknown symbol {s:?}"))),
        })
    }
}

/// A well-formed direction word of length `n >= 2`. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectionWord(Vec<Direction>);

impl DirectionWord {
    pub fn new(symbols: Vec<Direction>) -> Result<Self> {
        let n = symbols.len();
        if n < 2 {
            return Err(Error::MalformedWord(format!("length {n}, need at least 2")));
        }
        for (i, s) in symbols.iter().enumerate() {
            let allowed: &[Direction] = match i {
                0 => &Direction::FIRST,
                i if i == n - 1 => &Direction::LAST,
                _ => &Direction::MIDDLE,
            };
            if !allowed.contains(s) {
                return Err(Error::MalformedWord(format!("{} not allowed at position {}", s.as_str(), i + 1)));
            }
        }
        Ok(DirectionWord(symbols))
    }

    /// Number of words of length `n`.
    pub fn count(n: u32) -> u128 {
        if n < 2 {
            0
        } else {
            4u128.pow(n - 1)
        }
    }

    /// The `index`-th word of length `n` in lexicographic order.
    pub fn from_index(n: u32, index: u128) -> Result<Self> {
        if n < 2 || index >= Self::count(n) {
            return Err(Error::MalformedWord(format!("no word #{index} of length {n}")));
        }
        let mut rest = index;
        let last = Direction::LAST[(rest % 2) as usize];
        rest /= 2;
        let mut symbols = vec![last];
        for _ in 0..n - 2 {
            symbols.push(Direction::MIDDLE[(rest % 4) as usize]);
            rest /= 4;
        }
        symbols.push(Direction::FIRST[rest as usize]);
        symbols.reverse();
        Ok(DirectionWord(symbols))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Direction] {
        &self.0
    }
}

impl fmt::Display for DirectionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.0.iter().map(|d| d.as_str()).collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for DirectionWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s.trim().split('.').map(Direction::from_str).collect::<Result<Vec<_>>>()?;
        DirectionWord::new(symbols)
    }
}

/// Translation of an `n x n` construction inside a larger grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GridOffset {
    pub dx: u32,
    pub dy: u32,
}

impl GridOffset {
    pub fn new(dx: u32, dy: u32) -> Self {
        GridOffset { dx, dy }
    }

    pub fn check(&self, shape: ChimeraShape, n: u32) -> Result<()> {
        if n > shape.m || n > shape.n || self.dx > shape.m - n || self.dy > shape.n - n {
            return Err(Error::OffsetOverflow { dx: self.dx, dy: self.dy, n, m: shape.m, rows: shape.n });
        }
        Ok(())
    }
}

/// Builds the block clique embedding encoded by `word`, shifted by `offset`.
pub fn word_to_blocks(word: &DirectionWord, offset: GridOffset) -> BlockCliqueEmbedding {
    let s = word.symbols();
    let n = s.len() as u32;
    let x1 = if s[0] == Direction::E { n } else { 1 };
    let y1 = 1 + s[1..].iter().filter(|d| d.south()).count() as u32;
    let mut blocks = Vec::with_capacity(s.len());
    blocks.push(EllBlock::new(Cell::new(x1, y1), (1, n), (y1, y1)).expect("first block"));

    // Working rectangle [x, x2] x [y, y2].
    let (mut x, mut x2) = if x1 == n { (1, n - 1) } else { (2, n) };
    let (mut y, mut y2) = (y1, y1);
    for d in &s[1..] {
        let cx = if d.east() { x2 } else { x };
        let cy = if d.north() { y2 + 1 } else { y - 1 };
        let block = EllBlock::new(Cell::new(cx, cy), (x, x2), (y.min(cy), y2.max(cy))).expect("word block");
        blocks.push(block);
        if cx == x2 {
            x2 = x2.saturating_sub(1);
        } else {
            x += 1;
        }
        if d.north() {
            y2 += 1;
        } else {
            y -= 1;
        }
    }
    let blocks = blocks.into_iter().map(|b| b.translate(offset.dx, offset.dy)).collect();
    BlockCliqueEmbedding::from_unordered(blocks)
}

/// [`word_to_blocks`], checked to fit inside `shape`.
pub fn place_word(word: &DirectionWord, offset: GridOffset, shape: ChimeraShape) -> Result<BlockCliqueEmbedding> {
    offset.check(shape, word.len() as u32)?;
    Ok(word_to_blocks(word, offset))
}

/// Inverse of [`word_to_blocks`]: reads each symbol off the compass position
/// of the corner relative to the centre `X_1 ∩ X_n`.
pub fn blocks_to_word(b: &BlockCliqueEmbedding) -> Result<(DirectionWord, GridOffset)> {
    b.check()?;
    let blocks = b.blocks();
    let n = blocks.len();
    let center_x = blocks[n - 1].corner().x;
    let center_y = blocks[0].corner().y;
    let mut symbols = Vec::with_capacity(n);
    for (i, block) in blocks.iter().enumerate() {
        let c = block.corner();
        let (north, east) = (c.y > center_y, c.x > center_x);
        symbols.push(match (i, north, east) {
            (0, _, true) => Direction::E,
            (0, _, false) => Direction::W,
            (i, true, _) if i == n - 1 => Direction::N,
            (i, false, _) if i == n - 1 => Direction::S,
            (_, true, true) => Direction::NE,
            (_, true, false) => Direction::NW,
            (_, false, true) => Direction::SE,
            (_, false, false) => Direction::SW,
        });
    }
    let word = DirectionWord::new(symbols)?;
    let min = b.min_cell();
    let offset = GridOffset::new(min.x - 1, min.y - 1);
    if &word_to_blocks(&word, offset) != b {
        return Err(Error::NotBlockClique(format!("no word reproduces these blocks (read {word})")));
    }
    Ok((word, offset))
}

/// Number of block clique embeddings with `n` blocks in `shape`.
pub fn block_embedding_count(shape: ChimeraShape, n: u32) -> u128 {
    if n < 2 || n > shape.m.min(shape.n) {
        return 0;
    }
    DirectionWord::count(n) * (shape.m - n + 1) as u128 * (shape.n - n + 1) as u128
}

/// Every block clique embedding with `n` blocks in `shape`: words in
/// lexicographic order, each followed through all offsets row by row.
pub fn enumerate_block_embeddings(shape: ChimeraShape, n: u32) -> Result<BlockEmbeddings> {
    let max = shape.m.min(shape.n);
    if n < 2 || n > max {
        return Err(Error::ChainSizeOutOfRange { n, max });
    }
    Ok(BlockEmbeddings { shape, n, word: 0, dx: 0, dy: 0 })
}

#[derive(Debug, Clone)]
pub struct BlockEmbeddings {
    shape: ChimeraShape,
    n: u32,
    word: u128,
    dx: u32,
    dy: u32,
}

impl Iterator for BlockEmbeddings {
    type Item = (DirectionWord, GridOffset, BlockCliqueEmbedding);

    fn next(&mut self) -> Option<Self::Item> {
        if self.word >= DirectionWord::count(self.n) {
            return None;
        }
        let word = DirectionWord::from_index(self.n, self.word).expect("index in range");
        let offset = GridOffset::new(self.dx, self.dy);
        let blocks = word_to_blocks(&word, offset);
        self.dx += 1;
        if self.dx > self.shape.m - self.n {
            self.dx = 0;
            self.dy += 1;
            if self.dy > self.shape.n - self.n {
                self.dy = 0;
                self.word += 1;
            }
        }
        Some((word, offset, blocks))
    }
}
