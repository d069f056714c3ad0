use gstruct::diagram::{blocks, genus, is_irreducible, shadow, Arc, Diagram};
use proptest::prelude::*;

/// Every partial matching of `n` backbone vertices.
fn all_diagrams(n: usize) -> Vec<Diagram> {
    fn go(v: usize, n: usize, used: &mut Vec<bool>, arcs: &mut Vec<Arc>, out: &mut Vec<Diagram>) {
        if v > n {
            out.push(Diagram::new(n, arcs.iter().copied()).unwrap());
            return;
        }
        if used[v] {
            return go(v + 1, n, used, arcs, out);
        }
        go(v + 1, n, used, arcs, out);
        for w in v + 1..=n {
            if !used[w] {
                used[w] = true;
                arcs.push((v, w));
                go(v + 1, n, used, arcs, out);
                arcs.pop();
                used[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(1, n, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
    out
}

/// Perfect matchings on `2m` vertices.
fn perfect_matchings(m: usize) -> Vec<Diagram> {
    all_diagrams(2 * m).into_iter().filter(|d| d.arc_count() == m).collect()
}

#[test]
fn matching_counts() {
    // involutions: 1, 1, 2, 4, 10, 26, 76, 232, 764, 2620, 9496
    let want = [1, 1, 2, 4, 10, 26, 76, 232, 764, 2620, 9496];
    for (n, w) in want.iter().enumerate() {
        assert_eq!(all_diagrams(n).len(), *w);
    }
}

#[test]
fn genus_adds_over_components() {
    for n in 0..=10 {
        for d in all_diagrams(n) {
            let total: u32 = d.components().iter().map(|c| c.genus).sum();
            assert_eq!(genus(&d), total, "{}", d.to_text());
        }
    }
}

#[test]
fn blocks_tile_the_backbone() {
    for n in 0..=10 {
        for d in all_diagrams(n) {
            let mut next = 1;
            for b in blocks(&d) {
                assert_eq!(b.start, next, "{}", d.to_text());
                assert!(b.end >= b.start);
                next = b.end + 1;
            }
            assert_eq!(next, n + 1, "{}", d.to_text());
        }
    }
}

#[test]
fn shadows_keep_component_genus() {
    for n in 0..=10 {
        for d in all_diagrams(n) {
            for c in d.components() {
                assert_eq!(genus(&shadow(&c.diagram())), c.genus, "{}", d.to_text());
            }
        }
    }
}

#[test]
fn genus_one_irreducible_shadow_census() {
    // m = 2, 3, 4 arcs: 1, 2, 1 shadows; none with 5 arcs
    let mut counts = Vec::new();
    for m in 2..=5 {
        let c = perfect_matchings(m)
            .into_iter()
            .filter(|d| is_irreducible(d) && shadow(d) == *d && genus(d) == 1)
            .count();
        counts.push(c);
    }
    assert_eq!(counts, vec![1, 2, 1, 0]);
}

fn arb_diagram() -> impl Strategy<Value = Diagram> {
    (0usize..=24).prop_flat_map(|n| {
        proptest::collection::vec(any::<proptest::sample::Index>(), 0..=n / 2).prop_map(move |picks| {
            let mut free: Vec<usize> = (1..=n).collect();
            let mut arcs = Vec::new();
            for p in picks {
                if free.len() < 2 {
                    break;
                }
                let a = free.remove(p.index(free.len()));
                let b = free.remove(p.index(free.len() * 7 + 3) % free.len());
                arcs.push((a.min(b), a.max(b)));
            }
            Diagram::new(n, arcs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn shadow_is_idempotent(d in arb_diagram()) {
        let s = shadow(&d);
        prop_assert_eq!(shadow(&s), s);
    }

    #[test]
    fn text_round_trips(d in arb_diagram()) {
        let back: Diagram = d.to_text().parse().unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn genus_bounded_by_half_the_arcs(d in arb_diagram()) {
        prop_assert!(2 * genus(&d) as usize <= d.arc_count());
    }
}
