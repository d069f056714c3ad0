//! Exhaustive enumeration of gamma-structures on small backbones.
//!
//! Every partial matching with arc length >= lambda is generated; diagrams
//! with a stack shorter than r or a component of genus above gamma are
//! rejected. The survivors are decomposed into blocks and tallied.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::diagram::{blocks_with_components, Arc, Diagram};
use crate::error::{Error, Result};
use crate::params::{BlockType, StructureParams};

pub const DEFAULT_ORACLE_BOUND: usize = 14;

/// A block sequence: `(length, type)` from left to right.
pub type BlockSequence = Vec<(usize, BlockType)>;

/// Tallies over all gamma-structures of one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureStats {
    pub n: usize,
    pub params: StructureParams,
    pub count: u64,
    /// longest block length -> number of structures
    pub longest_block: BTreeMap<usize, u64>,
    /// (k, type) -> total number of blocks of length k and that type
    pub block_type_counts: BTreeMap<(usize, BlockType), u64>,
    /// (k, b) -> number of structures with exactly b blocks of length k
    pub blocks_of_length: BTreeMap<(usize, usize), u64>,
    /// block sequence -> number of structures realising it
    pub sequences: BTreeMap<BlockSequence, u64>,
}

impl StructureStats {
    fn new(n: usize, params: StructureParams) -> Self {
        Self {
            n,
            params,
            count: 0,
            longest_block: BTreeMap::new(),
            block_type_counts: BTreeMap::new(),
            blocks_of_length: BTreeMap::new(),
            sequences: BTreeMap::new(),
        }
    }

    fn record(&mut self, seq: BlockSequence) {
        self.count += 1;
        let longest = seq.iter().map(|b| b.0).max().unwrap_or(0);
        *self.longest_block.entry(longest).or_default() += 1;
        for &(k, t) in &seq {
            *self.block_type_counts.entry((k, t)).or_default() += 1;
        }
        for k in 1..=self.n {
            let b = seq.iter().filter(|x| x.0 == k).count();
            *self.blocks_of_length.entry((k, b)).or_default() += 1;
        }
        *self.sequences.entry(seq).or_default() += 1;
    }

    /// Associative, order-independent merge of two partial tallies.
    pub fn merge(mut self, other: Self) -> Self {
        debug_assert_eq!((self.n, self.params), (other.n, other.params));
        self.count += other.count;
        for (k, v) in other.longest_block {
            *self.longest_block.entry(k).or_default() += v;
        }
        for (k, v) in other.block_type_counts {
            *self.block_type_counts.entry(k).or_default() += v;
        }
        for (k, v) in other.blocks_of_length {
            *self.blocks_of_length.entry(k).or_default() += v;
        }
        for (k, v) in other.sequences {
            *self.sequences.entry(k).or_default() += v;
        }
        self
    }

    /// b -> number of structures with exactly b blocks of length k (and of
    /// type `t`, when given).
    pub fn block_count_distribution(&self, k: usize, t: Option<BlockType>) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for (seq, &c) in &self.sequences {
            let b = seq.iter().filter(|x| x.0 == k && t.map_or(true, |t| x.1 == t)).count();
            *out.entry(b).or_default() += c;
        }
        out
    }

    /// Number of structures that consist of a single block of type `t`.
    pub fn single_block_count(&self, t: BlockType) -> u64 {
        self.sequences.get(&vec![(self.n, t)]).copied().unwrap_or(0)
    }
}

fn admissible(d: &Diagram, p: StructureParams) -> bool {
    if let Some(s) = d.min_stack_length() {
        if s < p.stack() as usize {
            return false;
        }
    }
    true
}

fn visit(stats: &mut StructureStats, n: usize, arcs: &[Arc]) {
    let p = stats.params;
    let d = Diagram::from_sorted_unchecked(n, arcs.to_vec());
    if !admissible(&d, p) {
        return;
    }
    let comps = d.components();
    if comps.iter().any(|c| c.genus > p.gamma()) {
        return;
    }
    let seq = blocks_with_components(&d, &comps).iter().map(|b| (b.len(), b.block_type())).collect();
    stats.record(seq);
}

fn recurse(pos: usize, n: usize, min_len: usize, partner: &mut [bool], arcs: &mut Vec<Arc>, stats: &mut StructureStats) {
    if pos > n {
        visit(stats, n, arcs);
        return;
    }
    if partner[pos] {
        recurse(pos + 1, n, min_len, partner, arcs, stats);
        return;
    }
    recurse(pos + 1, n, min_len, partner, arcs, stats);
    for j in pos + min_len..=n {
        if partner[j] {
            continue;
        }
        partner[j] = true;
        arcs.push((pos, j));
        recurse(pos + 1, n, min_len, partner, arcs, stats);
        arcs.pop();
        partner[j] = false;
    }
}

/// Enumerates all gamma-structures on `n` vertices, refusing `n > bound`.
pub fn enumerate_structures_bounded(n: usize, p: StructureParams, bound: usize) -> Result<StructureStats> {
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let min_len = p.arc_len() as usize;
    if n == 0 {
        let mut s = StructureStats::new(0, p);
        s.record(Vec::new());
        return Ok(s);
    }
    // split on the fate of vertex 1: unpaired, or paired with j
    let mut branches: Vec<Option<usize>> = vec![None];
    branches.extend((1 + min_len..=n).map(Some));
    let stats = branches
        .into_par_iter()
        .map(|first| {
            let mut stats = StructureStats::new(n, p);
            let mut partner = vec![false; n + 2];
            let mut arcs = Vec::new();
            if let Some(j) = first {
                partner[j] = true;
                arcs.push((1, j));
            }
            recurse(2, n, min_len, &mut partner, &mut arcs, &mut stats);
            stats
        })
        .reduce(|| StructureStats::new(n, p), StructureStats::merge);
    Ok(stats)
}

/// [`enumerate_structures_bounded`] with the default bound.
pub fn enumerate_structures(n: usize, p: StructureParams) -> Result<StructureStats> {
    enumerate_structures_bounded(n, p, DEFAULT_ORACLE_BOUND)
}

/// Structure counts for `n = 0..=nmax`.
pub fn structure_counts(nmax: usize, p: StructureParams) -> Result<Vec<u64>> {
    (0..=nmax).map(|n| enumerate_structures(n, p).map(|s| s.count)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g: u32, r: u32, l: u32) -> StructureParams {
        StructureParams::new(g, r, l).unwrap()
    }

    #[test]
    fn empty_backbone_has_one_structure() {
        let s = enumerate_structures(0, params(1, 1, 2)).unwrap();
        assert_eq!(s.count, 1);
        assert_eq!(s.sequences.get(&Vec::new()), Some(&1));
    }

    #[test]
    fn secondary_structure_counts() {
        // brute-force counts for noncrossing, r=1, lambda=2
        assert_eq!(structure_counts(8, params(0, 1, 2)).unwrap(), vec![1, 1, 1, 2, 4, 8, 17, 37, 82]);
    }

    #[test]
    fn genus_one_at_four_vertices() {
        // empty, (1,3), (2,4), (1,4), {(1,3),(2,4)}
        let s = enumerate_structures(4, params(1, 1, 2)).unwrap();
        assert_eq!(s.count, 5);
        assert_eq!(s.single_block_count(BlockType::H), 1);
        assert_eq!(s.longest_block.get(&4), Some(&2));
    }

    #[test]
    fn refuses_large_n() {
        assert!(matches!(
            enumerate_structures(15, params(1, 1, 2)),
            Err(Error::BoundExceeded { n: 15, bound: 14 })
        ));
    }

    #[test]
    fn per_length_counts_marginalise_to_total() {
        let s = enumerate_structures(9, params(1, 1, 2)).unwrap();
        for k in 1..=9 {
            let total: u64 = s.blocks_of_length.iter().filter(|((kk, _), _)| *kk == k).map(|(_, v)| v).sum();
            assert_eq!(total, s.count);
            let derived = s.block_count_distribution(k, None);
            for (b, c) in derived {
                assert_eq!(s.blocks_of_length.get(&(k, b)), Some(&c));
            }
        }
        assert_eq!(s.longest_block.values().sum::<u64>(), s.count);
    }

    #[test]
    fn stack_filter_applies() {
        // r=2, lambda=1 on 4 vertices: the empty structure and the stack {(1,4),(2,3)}
        let s = enumerate_structures(4, params(0, 2, 1)).unwrap();
        assert_eq!(s.count, 2);
    }
}
