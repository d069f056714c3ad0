//! Diagrams over a linear backbone and their structural decompositions.
//!
//! A [`Diagram`] is a partial matching on the vertices `1..=n`, drawn with
//! arcs in the upper half-plane. The submodules compute the fatgraph genus,
//! the crossing components, the block decomposition and shadows.

mod blocks;
mod fatgraph;
mod shadow;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use blocks::{blocks, classify_block_type, BlockKind, BlockRecord};
pub(crate) use blocks::blocks_with as blocks_with_components;
pub use fatgraph::{boundary_components, genus};
pub use shadow::{canonical_shadow, is_irreducible, shadow};

/// An arc `(i, j)` with `1 <= i < j <= n`.
pub type Arc = (usize, usize);

/// A partial matching on `n` backbone vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n: usize,
    /// Sorted by left endpoint.
    arcs: Vec<Arc>,
}

impl Diagram {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        let mut used = vec![false; n + 1];
        for &(i, j) in &arcs {
            if !(1 <= i && i < j && j <= n) {
                return Err(Error::InvalidDiagram(format!("arc ({i}, {j}) invalid for n = {n}")));
            }
            for v in [i, j] {
                if used[v] {
                    return Err(Error::InvalidDiagram(format!("vertex {v} paired twice")));
                }
                used[v] = true;
            }
        }
        arcs.sort_unstable();
        Ok(Self { n, arcs })
    }

    /// Builds a diagram from arcs already known to be valid.
    pub(crate) fn from_sorted_unchecked(n: usize, arcs: Vec<Arc>) -> Self {
        debug_assert!(arcs.windows(2).all(|w| w[0] < w[1]));
        Self { n, arcs }
    }

    pub fn empty(n: usize) -> Self {
        Self { n, arcs: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// `partner[v]` for `v` in `1..=n`; index 0 is unused.
    pub fn partners(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.n + 1];
        for &(i, j) in &self.arcs {
            p[i] = Some(j);
            p[j] = Some(i);
        }
        p
    }

    /// Crossing-association classes of arcs, ordered by their leftmost arc.
    pub fn components(&self) -> Vec<Component> {
        let m = self.arcs.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in 0..m {
            for b in a + 1..m {
                if crosses(self.arcs[a], self.arcs[b]) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        let mut classes: Vec<Vec<Arc>> = Vec::new();
        let mut slot = vec![usize::MAX; m];
        for a in 0..m {
            let root = find(&mut parent, a);
            if slot[root] == usize::MAX {
                slot[root] = classes.len();
                classes.push(Vec::new());
            }
            classes[slot[root]].push(self.arcs[a]);
        }
        classes.into_iter().map(Component::from_arcs).collect()
    }

    /// The diagram induced by `arcs`, with isolated vertices removed and the
    /// remaining endpoints relabelled to `1..=2m`.
    pub fn induced(arcs: &[Arc]) -> Diagram {
        let mut ends: Vec<usize> = arcs.iter().flat_map(|&(i, j)| [i, j]).collect();
        ends.sort_unstable();
        let rank = |v: usize| ends.binary_search(&v).expect("endpoint present") + 1;
        let mut relabelled: Vec<Arc> = arcs.iter().map(|&(i, j)| (rank(i), rank(j))).collect();
        relabelled.sort_unstable();
        Diagram::from_sorted_unchecked(ends.len(), relabelled)
    }

    /// Length of the shortest maximal stack, or `None` without arcs.
    ///
    /// A stack is a maximal run `(i, j), (i+1, j-1), ...` of arcs.
    pub fn min_stack_length(&self) -> Option<usize> {
        let partner = self.partners();
        let mut best: Option<usize> = None;
        for &(i, j) in &self.arcs {
            // only start counting at the outermost arc of a stack
            if i > 1 && j < self.n && partner[i - 1] == Some(j + 1) {
                continue;
            }
            let mut len = 1;
            let (mut a, mut b) = (i, j);
            while a + 1 < b - 1 && partner[a + 1] == Some(b - 1) {
                len += 1;
                a += 1;
                b -= 1;
            }
            best = Some(best.map_or(len, |x: usize| x.min(len)));
        }
        best
    }

    /// Minimum arc length `j - i`, or `None` without arcs.
    pub fn min_arc_length(&self) -> Option<usize> {
        self.arcs.iter().map(|&(i, j)| j - i).min()
    }

    /// Largest component genus (0 for diagrams without crossings).
    pub fn max_component_genus(&self) -> u32 {
        self.components().iter().map(|c| c.genus).max().unwrap_or(0)
    }

    /// Text form: `n=<int>` followed by one `i j` line per arc.
    pub fn to_text(&self) -> String {
        let mut s = format!("n={}\n", self.n);
        for &(i, j) in &self.arcs {
            s.push_str(&format!("{i} {j}\n"));
        }
        s
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram(n={}, {:?})", self.n, self.arcs)
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidDiagram("missing `n=` header".into()))?;
        let n = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::InvalidDiagram(format!("bad header `{header}`")))?;
        let mut arcs = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(i)), Some(Ok(j)), None) => arcs.push((i, j)),
                _ => return Err(Error::InvalidDiagram(format!("bad arc line `{line}`"))),
            }
        }
        Diagram::new(n, arcs)
    }
}

/// `(i1, j1)` and `(i2, j2)` cross iff their endpoints interleave.
pub fn crosses(a: Arc, b: Arc) -> bool {
    let (a, b) = if a.0 < b.0 { (a, b) } else { (b, a) };
    a.0 < b.0 && b.0 < a.1 && a.1 < b.1
}

/// One crossing-association class of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub arcs: Vec<Arc>,
    /// Endpoints of the arcs, ascending.
    pub vertices: Vec<usize>,
    pub genus: u32,
}

impl Component {
    fn from_arcs(mut arcs: Vec<Arc>) -> Self {
        arcs.sort_unstable();
        let mut vertices: Vec<usize> = arcs.iter().flat_map(|&(i, j)| [i, j]).collect();
        vertices.sort_unstable();
        let genus = genus(&Diagram::induced(&arcs));
        Self { arcs, vertices, genus }
    }

    pub fn left(&self) -> usize {
        self.vertices[0]
    }

    pub fn right(&self) -> usize {
        *self.vertices.last().expect("component is nonempty")
    }

    pub fn diagram(&self) -> Diagram {
        Diagram::induced(&self.arcs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, arcs: &[Arc]) -> Diagram {
        Diagram::new(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn rejects_invalid_arcs() {
        assert!(Diagram::new(3, [(2, 2)]).is_err());
        assert!(Diagram::new(3, [(1, 4)]).is_err());
        assert!(Diagram::new(4, [(1, 3), (3, 4)]).is_err());
        assert!(Diagram::new(4, [(3, 1)]).is_err());
    }

    #[test]
    fn crossing_pair_is_one_component() {
        let c = d(4, &[(1, 3), (2, 4)]).components();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].arcs, vec![(1, 3), (2, 4)]);
        assert_eq!(c[0].vertices, vec![1, 2, 3, 4]);
    }

    #[test]
    fn nested_pair_is_two_components() {
        assert_eq!(d(4, &[(1, 4), (2, 3)]).components().len(), 2);
    }

    #[test]
    fn two_separate_crossings() {
        let c = d(8, &[(1, 3), (2, 4), (5, 7), (6, 8)]).components();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|c| c.arcs.len() == 2 && c.genus == 1));
    }

    #[test]
    fn stack_lengths() {
        assert_eq!(d(6, &[(1, 6), (2, 5)]).min_stack_length(), Some(2));
        assert_eq!(d(6, &[(1, 6), (2, 5), (3, 4)]).min_stack_length(), Some(3));
        // (1,6) and (3,4) are not parallel: vertex 2 sits between them
        assert_eq!(d(6, &[(1, 6), (3, 4)]).min_stack_length(), Some(1));
        assert_eq!(d(3, &[]).min_stack_length(), None);
    }

    #[test]
    fn text_round_trip() {
        let x = d(6, &[(1, 4), (2, 6)]);
        let back: Diagram = x.to_text().parse().unwrap();
        assert_eq!(back, x);
        assert!("n=3\n1 2 3\n".parse::<Diagram>().is_err());
        assert!("3\n".parse::<Diagram>().is_err());
    }
}
