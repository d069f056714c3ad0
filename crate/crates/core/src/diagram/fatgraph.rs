//! Fatgraph genus of a diagram.
//!
//! Each backbone vertex becomes a disc carrying up to three half-edges in
//! counterclockwise order: right backbone, arc, left backbone. Boundary
//! components are the cycles of the face permutation `rotate . pair`.

use super::Diagram;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Right,
    Arc,
    Left,
}

struct HalfEdges {
    /// (vertex, slot) for each half-edge id.
    ids: Vec<(usize, Slot)>,
    /// half-edge id for (vertex, slot), `usize::MAX` if absent.
    lookup: Vec<[usize; 3]>,
}

impl HalfEdges {
    fn new(d: &Diagram, partner: &[Option<usize>]) -> Self {
        let n = d.len();
        let mut ids = Vec::new();
        let mut lookup = vec![[usize::MAX; 3]; n + 1];
        for v in 1..=n {
            let present = [v < n, partner[v].is_some(), v > 1];
            for (k, slot) in [Slot::Right, Slot::Arc, Slot::Left].into_iter().enumerate() {
                if present[k] {
                    lookup[v][k] = ids.len();
                    ids.push((v, slot));
                }
            }
        }
        Self { ids, lookup }
    }

    fn id(&self, v: usize, slot: Slot) -> usize {
        self.lookup[v][slot as usize]
    }

    /// Next half-edge counterclockwise around the same vertex.
    fn rotate(&self, h: usize) -> usize {
        let (v, slot) = self.ids[h];
        let mut k = slot as usize;
        loop {
            k = (k + 1) % 3;
            let next = self.lookup[v][k];
            if next != usize::MAX {
                return next;
            }
        }
    }

    fn pair(&self, h: usize, partner: &[Option<usize>]) -> usize {
        let (v, slot) = self.ids[h];
        match slot {
            Slot::Right => self.id(v + 1, Slot::Left),
            Slot::Left => self.id(v - 1, Slot::Right),
            Slot::Arc => self.id(partner[v].expect("arc half-edge has a partner"), Slot::Arc),
        }
    }
}

/// Number of boundary components of the fatgraph of `d`.
pub fn boundary_components(d: &Diagram) -> usize {
    if d.len() == 0 {
        return 0;
    }
    let partner = d.partners();
    let he = HalfEdges::new(d, &partner);
    if he.ids.is_empty() {
        // a lone disc
        return 1;
    }
    let mut seen = vec![false; he.ids.len()];
    let mut cycles = 0;
    for start in 0..he.ids.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            h = he.rotate(he.pair(h, &partner));
        }
    }
    cycles
}

/// Genus `g = 1 - (v - e + r) / 2` of the fatgraph of `d`.
pub fn genus(d: &Diagram) -> u32 {
    let n = d.len();
    if n == 0 {
        return 0;
    }
    let v = n as i64;
    let e = (n as i64 - 1) + d.arc_count() as i64;
    let r = boundary_components(d) as i64;
    let chi = v - e + r;
    debug_assert!(chi % 2 == 0 && chi <= 2, "euler characteristic {chi}");
    ((2 - chi) / 2) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, arcs: &[(usize, usize)]) -> Diagram {
        Diagram::new(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn noncrossing_has_genus_zero() {
        assert_eq!(genus(&d(2, &[(1, 2)])), 0);
        assert_eq!(genus(&d(7, &[(1, 7), (2, 4), (5, 6)])), 0);
        assert_eq!(genus(&d(1, &[])), 0);
        assert_eq!(genus(&Diagram::empty(0)), 0);
    }

    #[test]
    fn h_shadow_has_genus_one() {
        let h = d(4, &[(1, 3), (2, 4)]);
        assert_eq!(genus(&h), 1);
        assert_eq!(boundary_components(&h), 1);
    }

    #[test]
    fn four_arc_genus_one_diagram_has_three_boundaries() {
        // genus 1 with four arcs: v - e + r = 0 forces r = 3
        let x = d(9, &[(1, 5), (2, 7), (3, 4), (6, 9)]);
        assert_eq!(genus(&x), 1);
        assert_eq!(boundary_components(&x), 3);
    }

    #[test]
    fn two_h_in_sequence_has_genus_two() {
        assert_eq!(genus(&d(8, &[(1, 3), (2, 4), (5, 7), (6, 8)])), 2);
    }

    #[test]
    fn three_mutually_crossing_arcs() {
        assert_eq!(genus(&d(6, &[(1, 4), (2, 5), (3, 6)])), 1);
        // four mutually crossing arcs reach genus 2
        assert_eq!(genus(&d(8, &[(1, 5), (2, 6), (3, 7), (4, 8)])), 2);
    }
}
