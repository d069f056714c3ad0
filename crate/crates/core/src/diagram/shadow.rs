use super::{crosses, Arc, Diagram};
use crate::params::BlockType;

/// Removes noncrossing arcs and isolated vertices, then collapses stacks
/// until none remain. The result lives on `2m` vertices.
pub fn shadow(d: &Diagram) -> Diagram {
    let arcs = d.arcs();
    let crossing: Vec<Arc> = arcs
        .iter()
        .copied()
        .filter(|&a| arcs.iter().any(|&b| crosses(a, b)))
        .collect();
    let mut s = Diagram::induced(&crossing);
    loop {
        let partner = s.partners();
        let inner = s
            .arcs()
            .iter()
            .find(|&&(i, j)| i + 1 < j - 1 && partner[i + 1] == Some(j - 1))
            .map(|&(i, j)| (i + 1, j - 1));
        match inner {
            Some(drop) => {
                let kept: Vec<Arc> = s.arcs().iter().copied().filter(|&a| a != drop).collect();
                s = Diagram::induced(&kept);
            }
            None => return s,
        }
    }
}

/// True when every two arcs are associated through a chain of crossings.
pub fn is_irreducible(d: &Diagram) -> bool {
    d.components().len() <= 1
}

/// The shadow each genus-1 block type reduces to.
///
/// Among the two three-arc shadows, the fully crossing one is the 3-knot
/// (`L`); the other is the kissing hairpin (`K`).
pub fn canonical_shadow(t: BlockType) -> Option<Diagram> {
    let arcs: &[Arc] = match t {
        BlockType::H => &[(1, 3), (2, 4)],
        BlockType::K => &[(1, 3), (2, 5), (4, 6)],
        BlockType::L => &[(1, 4), (2, 5), (3, 6)],
        BlockType::M => &[(1, 4), (2, 6), (3, 7), (5, 8)],
        _ => return None,
    };
    Some(Diagram::from_sorted_unchecked(2 * arcs.len(), arcs.to_vec()))
}
