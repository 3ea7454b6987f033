//! Exhaustive product relations among square-free classes in four variables.

use kotoric::ko_symbolic::{ko_equal, relation_i_sides, relation_ii_sides};
use kotoric::{Truncation, VertexSet};

const M: usize = 4;

/// Every assignment of the four vertices to A, B, C or none.
fn disjoint_triples() -> Vec<(VertexSet, VertexSet, VertexSet)> {
    (0..4u32.pow(M as u32))
        .map(|mut code| {
            let mut parts = [VertexSet::default(); 3];
            for v in 0..M {
                if let Some(p) = parts.get_mut((code % 4) as usize) {
                    *p = p.insert(v);
                }
                code /= 4;
            }
            (parts[0], parts[1], parts[2])
        })
        .collect()
}

#[test]
fn relation_i_holds_symbolically_for_every_disjoint_triple() {
    let t = Truncation::uniform(M, 4).unwrap();
    let triples = disjoint_triples();
    assert_eq!(triples.len(), 256);
    for (a, b, c) in triples {
        for s in 0..=1 {
            for u in 0..=1 {
                let (lhs, rhs) = relation_i_sides(M, a, b, c, s, u).unwrap();
                assert_eq!(lhs, rhs, "A={a} B={b} C={c} s={s} t={u}");
                assert!(ko_equal(&lhs, &rhs, Some(&t)).unwrap());
            }
        }
    }
}

#[test]
fn relation_ii_holds_symbolically() {
    let mut count = 0;
    for i in 0..M {
        for set in VertexSet::full(M).subsets() {
            if set.len() < 2 || set.min().is_some_and(|lo| lo <= i) {
                continue;
            }
            for s in 0..=1 {
                let (lhs, rhs) = relation_ii_sides(M, i, set, s).unwrap();
                assert_eq!(lhs, rhs, "i={} S={set} s={s}", i + 1);
                count += 1;
            }
        }
    }
    // i=1: four subsets of {2,3,4} of size >= 2; i=2: {3,4}.
    assert_eq!(count, 10);
}

#[test]
fn malformed_relation_inputs_are_rejected() {
    let one = VertexSet::singleton(0);
    assert!(relation_i_sides(M, one, one, VertexSet::default(), 0, 0).is_err());
    assert!(relation_i_sides(M, one, VertexSet::default(), VertexSet::default(), 2, 0).is_err());
    assert!(relation_ii_sides(M, 2, VertexSet::from_indices([1, 3]), 0).is_err());
    assert!(relation_ii_sides(M, 0, VertexSet::singleton(2), 0).is_err());
}
