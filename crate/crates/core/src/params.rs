//! Structure parameters and block type tags shared by every module.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The triple (gamma, r, lambda): maximal component genus, minimum stack
/// length and minimum arc length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StructureParams {
    gamma: u32,
    stack: u32,
    arc_len: u32,
}

impl StructureParams {
    pub const MAX_GAMMA: u32 = 2;

    pub fn new(gamma: u32, stack: u32, arc_len: u32) -> Result<Self> {
        if gamma > Self::MAX_GAMMA {
            return Err(Error::InvalidParams(format!(
                "gamma = {gamma} unsupported (genus-{gamma} shadow polynomial not available, max {})",
                Self::MAX_GAMMA
            )));
        }
        if !(1..=4).contains(&stack) {
            return Err(Error::InvalidParams(format!("stack length r = {stack} outside [1, 4]")));
        }
        if !(1..=4).contains(&arc_len) {
            return Err(Error::InvalidParams(format!("arc length lambda = {arc_len} outside [1, 4]")));
        }
        if arc_len > stack + 1 {
            return Err(Error::InvalidParams(format!(
                "lambda = {arc_len} exceeds r + 1 = {}",
                stack + 1
            )));
        }
        Ok(Self { gamma, stack, arc_len })
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    /// Minimum stack length r.
    pub fn stack(&self) -> u32 {
        self.stack
    }

    /// Minimum arc length lambda.
    pub fn arc_len(&self) -> u32 {
        self.arc_len
    }

    /// Every valid triple with the given gamma.
    pub fn all_with_gamma(gamma: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for stack in 1..=4 {
            for arc_len in 1..=4 {
                if let Ok(p) = Self::new(gamma, stack, arc_len) {
                    out.push(p);
                }
            }
        }
        out
    }
}

impl fmt::Display for StructureParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gamma={} r={} lambda={}", self.gamma, self.stack, self.arc_len)
    }
}

/// Block classification. `Trivial` is a single exterior vertex, `T` a block
/// closed by a rainbow stack, `H`/`K`/`L`/`M` the four genus-1 irreducible
/// shadows, and `Other` any block whose maximal component has genus >= 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockType {
    Trivial,
    T,
    H,
    K,
    L,
    M,
    Other,
}

impl BlockType {
    /// The five types with a closed-form block series.
    pub const NAMED: [BlockType; 5] = [BlockType::T, BlockType::H, BlockType::K, BlockType::L, BlockType::M];

    pub const ALL: [BlockType; 7] = [
        BlockType::Trivial,
        BlockType::T,
        BlockType::H,
        BlockType::K,
        BlockType::L,
        BlockType::M,
        BlockType::Other,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BlockType::Trivial => "trivial",
            BlockType::T => "T",
            BlockType::H => "H",
            BlockType::K => "K",
            BlockType::L => "L",
            BlockType::M => "M",
            BlockType::Other => "other",
        }
    }

    /// Number of shadow arcs for the genus-1 types.
    pub fn shadow_arcs(&self) -> Option<u32> {
        match self {
            BlockType::H => Some(2),
            BlockType::K | BlockType::L => Some(3),
            BlockType::M => Some(4),
            _ => None,
        }
    }
}

impl fmt::Display for BlockType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BlockType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(BlockType::Trivial),
            "T" | "t" => Ok(BlockType::T),
            "H" | "h" => Ok(BlockType::H),
            "K" | "k" => Ok(BlockType::K),
            "L" | "l" => Ok(BlockType::L),
            "M" | "m" => Ok(BlockType::M),
            "other" => Ok(BlockType::Other),
            _ => Err(Error::UnknownType(s.to_string())),
        }
    }
}
