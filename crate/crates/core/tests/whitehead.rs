mod common;

use std::collections::HashSet;

use cubic_meta::cubic::{enumerate_labelled, enumerate_unlabelled, validate, EnumCaps};
use cubic_meta::whitehead::{
    apply_move, labelled_neighbors, labelled_neighbors_tally, moves, unlabelled_neighbors,
};
use cubic_meta::CubicGraph;

use common::*;

fn small_labelled() -> Vec<CubicGraph> {
    let caps = EnumCaps::default();
    [2, 4, 6]
        .iter()
        .flat_map(|&n| enumerate_labelled(n, &caps).unwrap())
        .collect()
}

#[test]
fn labelled_neighbor_relation_is_symmetric() {
    for g in small_labelled() {
        let code = g.labelled_code();
        for h in labelled_neighbors(&g) {
            assert!(
                labelled_neighbors(&h.decode()).contains(&code),
                "{g} -> {h:?}"
            );
        }
    }
}

#[test]
fn unlabelled_neighbor_relation_is_symmetric() {
    let caps = EnumCaps::default();
    for n in [2, 4, 6] {
        for g in enumerate_unlabelled(n, &caps).unwrap() {
            let own = g.canonical_form();
            let nbrs = unlabelled_neighbors(&g);
            assert!(!nbrs.contains(&own));
            for h in nbrs {
                assert!(
                    unlabelled_neighbors(&h.decode()).contains(&own),
                    "{g} -> {h:?}"
                );
            }
        }
    }
}

/// Edges of `a` missing from `b`, as a multiset difference.
fn removed(a: &[(usize, usize)], b: &[(usize, usize)]) -> usize {
    let mut rest = b.to_vec();
    let mut count = 0;
    for e in a {
        match rest.iter().position(|x| x == e) {
            Some(i) => {
                rest.swap_remove(i);
            }
            None => count += 1,
        }
    }
    count
}

#[test]
fn moves_are_valid_local_and_never_disconnect() {
    for g in small_labelled() {
        let before = edges_of(&g);
        let ms = moves(&g);
        assert_eq!(ms.len(), 4 * (before.len() - g.loop_count()));
        for m in ms {
            let h = apply_move(&g, &m).expect("a move on a connected cubic graph stays connected");
            let after = edges_of(&h);
            assert_eq!(validate(g.order(), &after), Ok(()));
            assert!(connected(g.order(), &after));
            assert!(removed(&before, &after) <= 2, "{g} -> {h}");
            assert!(after.contains(&g.edge(m.edge)));
        }
    }
}

#[test]
fn labelled_degree_is_at_most_six_n() {
    for g in small_labelled() {
        assert!(labelled_neighbors(&g).len() <= 6 * g.order(), "{g}");
    }
}

/// Moves on edges of `E'` give `4|E'|` distinct results, none equal to `g`.
fn check_special_moves(g: &CubicGraph) {
    let special: HashSet<usize> = g.special_edges().special.into_iter().collect();
    let results: Vec<CubicGraph> = moves(g)
        .into_iter()
        .filter(|m| special.contains(&m.edge))
        .map(|m| apply_move(g, &m).unwrap())
        .collect();
    assert_eq!(results.len(), 4 * special.len());
    let distinct: HashSet<_> = results.iter().map(|h| h.labelled_code()).collect();
    assert_eq!(distinct.len(), results.len(), "{g}");
    assert!(!distinct.contains(&g.labelled_code()));
    let (all, tally) = labelled_neighbors_tally(g);
    assert!(all.len() >= 4 * special.len());
    assert_eq!(tally.disconnecting, 0);
}

#[test]
fn special_edge_moves_are_distinct() {
    for g in small_labelled() {
        check_special_moves(&g);
    }
    let caps = EnumCaps::default();
    let mut girth5 = 0;
    for n in [8, 10] {
        for g in enumerate_unlabelled(n, &caps).unwrap() {
            check_special_moves(&g);
            if g.girth() >= 5 {
                assert_eq!(g.special_edges().special.len(), 3 * n / 2);
                girth5 += 1;
            }
        }
    }
    // The Petersen graph is the only girth-5 cubic graph on at most 10 vertices.
    assert_eq!(girth5, 1);
    check_special_moves(&CubicGraph::petersen());
}

#[test]
fn every_move_is_undone_by_a_move() {
    let caps = EnumCaps::default();
    for g in enumerate_labelled(4, &caps).unwrap() {
        for m in moves(&g) {
            let (h, inv) = cubic_meta::whitehead::apply_move_traced(&g, &m).unwrap();
            assert_eq!(apply_move(&h, &inv).unwrap(), g);
        }
    }
}
