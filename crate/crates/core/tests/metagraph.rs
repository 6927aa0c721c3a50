mod common;

use cubic_meta::cubic::{enumerate_labelled, enumerate_unlabelled, EnumCaps};
use cubic_meta::whitehead::{labelled_neighbors, unlabelled_neighbors};
use cubic_meta::{MetaGraph, Mode};

#[test]
fn adjacency_is_the_neighbor_relation() {
    let caps = EnumCaps::default();
    for n in [2, 4, 6] {
        for mode in [Mode::Labelled, Mode::Unlabelled] {
            let (g, diag) = MetaGraph::build_with_diagnostics(n, mode, &caps).unwrap();
            assert_eq!(diag.asymmetric_pairs, 0);
            assert_eq!(diag.disconnecting_moves, 0);
            let graph = g.graph();
            for i in 0..g.len() {
                let member = g.member(i);
                let mut expected: Vec<u32> = match mode {
                    Mode::Labelled => labelled_neighbors(member)
                        .iter()
                        .map(|c| g.index_of(&c.decode()).unwrap() as u32)
                        .collect(),
                    Mode::Unlabelled => unlabelled_neighbors(member)
                        .iter()
                        .map(|c| g.index_of(&c.decode()).unwrap() as u32)
                        .collect(),
                };
                expected.sort_unstable();
                assert_eq!(
                    graph.neighbors(i),
                    expected.as_slice(),
                    "n={n} {mode} {member}"
                );
            }
            assert!(g.edges().iter().all(|&(a, b)| a < b));
            assert!(g.edges().windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn vertices_match_enumeration() {
    let caps = EnumCaps::default();
    for n in [2, 4, 6] {
        let l = MetaGraph::build(n, Mode::Labelled, &caps).unwrap();
        assert_eq!(
            l.members(),
            enumerate_labelled(n, &caps).unwrap().as_slice()
        );
        let u = MetaGraph::build(n, Mode::Unlabelled, &caps).unwrap();
        assert_eq!(
            u.members(),
            enumerate_unlabelled(n, &caps).unwrap().as_slice()
        );
    }
}

#[test]
fn closure_agrees_with_build_from_every_seed() {
    let caps = EnumCaps::default();
    for n in [2, 4] {
        for mode in [Mode::Labelled, Mode::Unlabelled] {
            let full = MetaGraph::build(n, mode, &caps).unwrap();
            for seed in full.members() {
                assert_eq!(
                    MetaGraph::build_by_closure(seed, mode, &caps).unwrap(),
                    full
                );
            }
        }
    }
    let full = MetaGraph::build(6, Mode::Unlabelled, &caps).unwrap();
    for seed in full.members() {
        assert_eq!(
            MetaGraph::build_by_closure(seed, Mode::Unlabelled, &caps).unwrap(),
            full
        );
    }
    let full = MetaGraph::build(6, Mode::Labelled, &caps).unwrap();
    for seed in full.members().iter().step_by(97) {
        assert_eq!(
            MetaGraph::build_by_closure(seed, Mode::Labelled, &caps).unwrap(),
            full
        );
    }
}

#[test]
fn built_meta_graphs_are_connected() {
    let caps = EnumCaps::default();
    for n in [2, 4, 6, 8, 10] {
        let g = MetaGraph::build(n, Mode::Unlabelled, &caps).unwrap();
        assert!(g.graph().is_connected(), "unlabelled n={n}");
    }
    for n in [2, 4, 6] {
        assert!(MetaGraph::build(n, Mode::Labelled, &caps)
            .unwrap()
            .graph()
            .is_connected());
    }
}

#[test]
fn degree_stats_are_exact() {
    let caps = EnumCaps::default();
    let g = MetaGraph::build(6, Mode::Labelled, &caps).unwrap();
    let s = g.degree_stats();
    assert_eq!(s.histogram.values().sum::<usize>(), g.len());
    let total: usize = s.histogram.iter().map(|(d, c)| d * c).sum();
    assert_eq!(total, 2 * g.edges().len());
    assert!(s.max <= 36 && s.reference == 36);
    assert_eq!(s.max_minus_reference, s.max as i64 - 36);
}

#[test]
fn save_load_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let caps = EnumCaps::default();
    for (n, mode) in [
        (4, Mode::Unlabelled),
        (4, Mode::Labelled),
        (8, Mode::Unlabelled),
    ] {
        let g = MetaGraph::build(n, mode, &caps).unwrap();
        let path = dir.path().join(format!("{mode}-{n}.meta"));
        g.save(&path).unwrap();
        assert_eq!(MetaGraph::load(&path).unwrap(), g);
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() / 2]).unwrap();
        assert!(MetaGraph::load(&path).is_err());
    }
    assert!(MetaGraph::load(dir.path().join("missing")).is_err());
}
