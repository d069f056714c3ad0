//! Block decomposition: exterior vertices and the spans of maximal
//! components tile the backbone.

use super::shadow::{canonical_shadow, shadow};
use super::{Component, Diagram};
use crate::error::{Error, Result};
use crate::params::BlockType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// A single exterior vertex.
    Trivial,
    /// Maximal component is a single arc.
    Zero,
    /// Maximal component has genus >= 1.
    Gamma,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRecord {
    /// First backbone position, 1-indexed.
    pub start: usize,
    /// Last backbone position, inclusive.
    pub end: usize,
    pub kind: BlockKind,
    /// Type of the maximal component's irreducible shadow; `None` for
    /// trivial blocks.
    pub shadow_type: Option<BlockType>,
}

impl BlockRecord {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The block's type tag, `Trivial` for exterior vertices.
    pub fn block_type(&self) -> BlockType {
        self.shadow_type.unwrap_or(BlockType::Trivial)
    }
}

/// Left-to-right block decomposition of `d`.
pub fn blocks(d: &Diagram) -> Vec<BlockRecord> {
    blocks_with(d, &d.components())
}

pub(crate) fn blocks_with(d: &Diagram, components: &[Component]) -> Vec<BlockRecord> {
    let n = d.len();
    let arcs = d.arcs();
    // covered[v]: v lies strictly inside some arc, or is an endpoint
    let mut covered = vec![false; n + 2];
    for &(i, j) in arcs {
        for c in covered.iter_mut().take(j + 1).skip(i) {
            *c = true;
        }
    }
    let is_maximal = |a: (usize, usize)| !arcs.iter().any(|&b| b.0 < a.0 && a.1 < b.1);

    let mut out = Vec::new();
    let mut v = 1;
    while v <= n {
        if !covered[v] {
            out.push(BlockRecord { start: v, end: v, kind: BlockKind::Trivial, shadow_type: Some(BlockType::Trivial) });
            v += 1;
            continue;
        }
        let comp = components
            .iter()
            .find(|c| c.left() == v && c.arcs.iter().any(|&a| is_maximal(a)))
            .expect("covered position starts a maximal component");
        let shadow_type = component_type(comp);
        let kind = if comp.arcs.len() == 1 { BlockKind::Zero } else { BlockKind::Gamma };
        out.push(BlockRecord { start: v, end: comp.right(), kind, shadow_type: Some(shadow_type) });
        v = comp.right() + 1;
    }
    for b in &mut out {
        if b.kind == BlockKind::Trivial {
            b.shadow_type = None;
        }
    }
    out
}

fn component_type(c: &Component) -> BlockType {
    if c.arcs.len() == 1 {
        return BlockType::T;
    }
    if c.genus != 1 {
        return BlockType::Other;
    }
    let s = shadow(&c.diagram());
    [BlockType::H, BlockType::K, BlockType::L, BlockType::M]
        .into_iter()
        .find(|&t| canonical_shadow(t).as_ref() == Some(&s))
        .unwrap_or(BlockType::Other)
}

/// Type of a nontrivial block: `T` for a single-arc maximal component,
/// otherwise the genus-1 shadow it reduces to, or `Other` for higher genus.
pub fn classify_block_type(b: &BlockRecord, d: &Diagram) -> Result<BlockType> {
    if b.kind == BlockKind::Trivial {
        return Err(Error::TrivialBlock);
    }
    let comps = d.components();
    let comp = comps
        .iter()
        .find(|c| c.left() == b.start && c.right() == b.end)
        .ok_or_else(|| Error::InvalidDiagram(format!("no component spans [{}, {}]", b.start, b.end)))?;
    Ok(component_type(comp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, arcs: &[(usize, usize)]) -> Diagram {
        Diagram::new(n, arcs.iter().copied()).unwrap()
    }

    fn spans(bs: &[BlockRecord]) -> Vec<(usize, usize, BlockKind)> {
        bs.iter().map(|b| (b.start, b.end, b.kind)).collect()
    }

    #[test]
    fn unpaired_vertices_are_trivial_blocks() {
        let bs = blocks(&d(3, &[]));
        assert_eq!(spans(&bs), vec![(1, 1, BlockKind::Trivial), (2, 2, BlockKind::Trivial), (3, 3, BlockKind::Trivial)]);
        assert!(bs.iter().all(|b| b.shadow_type.is_none()));
    }

    #[test]
    fn nested_pair_is_one_zero_block() {
        let bs = blocks(&d(5, &[(1, 5), (2, 4)]));
        assert_eq!(spans(&bs), vec![(1, 5, BlockKind::Zero)]);
        assert_eq!(bs[0].len(), 5);
        assert_eq!(bs[0].shadow_type, Some(BlockType::T));
    }

    #[test]
    fn crossing_pair_then_exterior_vertices() {
        let x = d(6, &[(1, 3), (2, 4)]);
        let bs = blocks(&x);
        assert_eq!(
            spans(&bs),
            vec![(1, 4, BlockKind::Gamma), (5, 5, BlockKind::Trivial), (6, 6, BlockKind::Trivial)]
        );
        assert_eq!(classify_block_type(&bs[0], &x).unwrap(), BlockType::H);
        assert!(matches!(classify_block_type(&bs[1], &x), Err(Error::TrivialBlock)));
    }

    #[test]
    fn interior_unpaired_vertices_stay_inside_the_block() {
        let bs = blocks(&d(7, &[(1, 7), (3, 5)]));
        assert_eq!(spans(&bs), vec![(1, 7, BlockKind::Zero)]);
    }

    #[test]
    fn classifies_all_genus_one_types() {
        let cases: [(&[(usize, usize)], usize, BlockType); 5] = [
            (&[(1, 6), (2, 5)], 6, BlockType::T),
            (&[(1, 3), (2, 4)], 4, BlockType::H),
            (&[(1, 4), (2, 5), (3, 6)], 6, BlockType::L),
            (&[(1, 3), (2, 5), (4, 6)], 6, BlockType::K),
            (&[(1, 4), (2, 6), (3, 7), (5, 8)], 8, BlockType::M),
        ];
        for (arcs, n, want) in cases {
            let x = d(n, arcs);
            let bs = blocks(&x);
            assert_eq!(bs.len(), 1);
            assert_eq!(bs[0].shadow_type, Some(want));
            assert_eq!(classify_block_type(&bs[0], &x).unwrap(), want);
        }
    }

    #[test]
    fn stacked_and_decorated_l_is_still_l() {
        // L with its first arc doubled and a hairpin inside a gap
        let x = d(13, &[(1, 9), (2, 8), (3, 11), (4, 6), (7, 13)]);
        let bs = blocks(&x);
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].shadow_type, Some(BlockType::L));
    }

    #[test]
    fn genus_two_block_is_other() {
        let x = d(8, &[(1, 5), (2, 6), (3, 7), (4, 8)]);
        assert_eq!(blocks(&x)[0].shadow_type, Some(BlockType::Other));
    }
}
