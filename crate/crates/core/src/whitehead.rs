//! Whitehead moves at half-edge granularity.
//!
//! A move on a non-loop edge `e = (u1, u2)` takes one of the two other
//! half-edges at `u1` and one of the two other half-edges at `u2` and swaps
//! their endpoints. When the neighborhood has loops or parallel edges the
//! four labelled picks may coincide or reproduce the input; neighbor sets
//! collapse duplicates and drop the input graph.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cubic::{first_unreachable, CanonicalCode, CubicGraph, HalfEdge, LabelledCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WhiteheadMove {
    /// Index into the sorted edge list; distinguishes parallel copies.
    pub edge: usize,
    /// Half-edge at the smaller endpoint of `edge`, moved to the larger one.
    pub pick1: HalfEdge,
    /// Half-edge at the larger endpoint of `edge`, moved to the smaller one.
    pub pick2: HalfEdge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("edge index {0} out of range")]
    EdgeRange(usize),
    #[error("edge {0} is a loop")]
    MoveOnLoop(usize),
    #[error("half-edge {slot:?} is not a free slot at vertex {vertex}")]
    InvalidSlot { slot: HalfEdge, vertex: usize },
    #[error("move disconnects the graph")]
    Disconnected,
}

/// The two half-edges at `v` other than the end of `edge` there.
fn free_slots(g: &CubicGraph, v: usize, edge: usize) -> [HalfEdge; 2] {
    let mut out = [HalfEdge { edge: 0, end: 0 }; 2];
    let mut k = 0;
    let mut skipped = false;
    for h in g.half_edges(v) {
        if h.edge == edge && !skipped {
            skipped = true;
            continue;
        }
        out[k] = h;
        k += 1;
    }
    out
}

/// All four labelled moves on every non-loop edge, in edge order.
pub fn moves(g: &CubicGraph) -> Vec<WhiteheadMove> {
    let mut out = Vec::with_capacity(4 * g.edges().len());
    for edge in 0..g.edges().len() {
        if g.is_loop(edge) {
            continue;
        }
        let (u1, u2) = g.edge(edge);
        for pick1 in free_slots(g, u1, edge) {
            for pick2 in free_slots(g, u2, edge) {
                out.push(WhiteheadMove { edge, pick1, pick2 });
            }
        }
    }
    out
}

fn check(g: &CubicGraph, m: &WhiteheadMove) -> Result<(usize, usize), MoveError> {
    if m.edge >= g.edges().len() {
        return Err(MoveError::EdgeRange(m.edge));
    }
    if g.is_loop(m.edge) {
        return Err(MoveError::MoveOnLoop(m.edge));
    }
    let (u1, u2) = g.edge(m.edge);
    for (slot, vertex) in [(m.pick1, u1), (m.pick2, u2)] {
        let in_range = slot.edge < g.edges().len() && slot.end <= 1;
        if !in_range || slot.edge == m.edge || g.endpoint(slot) != vertex {
            return Err(MoveError::InvalidSlot { slot, vertex });
        }
    }
    Ok((u1, u2))
}

/// Rewired edge list, unsorted, in the input's edge order.
fn rewire(g: &CubicGraph, m: &WhiteheadMove, u1: usize, u2: usize) -> Vec<[u8; 2]> {
    let mut ends: Vec<[u8; 2]> = g.edges().iter().map(|&(a, b)| [a, b]).collect();
    ends[m.pick1.edge][m.pick1.end as usize] = u2 as u8;
    ends[m.pick2.edge][m.pick2.end as usize] = u1 as u8;
    ends
}

pub fn apply_move(g: &CubicGraph, m: &WhiteheadMove) -> Result<CubicGraph, MoveError> {
    let (u1, u2) = check(g, m)?;
    let edges: Vec<(u8, u8)> = rewire(g, m, u1, u2)
        .into_iter()
        .map(|[a, b]| (a, b))
        .collect();
    if first_unreachable(g.order(), &edges).is_some() {
        return Err(MoveError::Disconnected);
    }
    Ok(CubicGraph::from_edges_unchecked(g.order(), edges))
}

/// Applies `m` and also returns the move on the result that undoes it.
pub fn apply_move_traced(
    g: &CubicGraph,
    m: &WhiteheadMove,
) -> Result<(CubicGraph, WhiteheadMove), MoveError> {
    let (u1, u2) = check(g, m)?;
    let ends = rewire(g, m, u1, u2);
    if first_unreachable(
        g.order(),
        &ends.iter().map(|&[a, b]| (a, b)).collect::<Vec<_>>(),
    )
    .is_some()
    {
        return Err(MoveError::Disconnected);
    }
    // Normalize each edge, remembering whether its ends were swapped, then
    // sort while tracking where every old index lands.
    let mut keyed: Vec<((u8, u8), usize, bool)> = ends
        .iter()
        .enumerate()
        .map(|(i, &[a, b])| {
            if a <= b {
                ((a, b), i, false)
            } else {
                ((b, a), i, true)
            }
        })
        .collect();
    keyed.sort_unstable();
    let mut new_index = vec![0usize; keyed.len()];
    let mut flipped = vec![false; keyed.len()];
    for (pos, &(_, old, flip)) in keyed.iter().enumerate() {
        new_index[old] = pos;
        flipped[old] = flip;
    }
    let track = |h: HalfEdge| HalfEdge {
        edge: new_index[h.edge],
        end: if flipped[h.edge] { 1 - h.end } else { h.end },
    };
    let inverse = WhiteheadMove {
        edge: new_index[m.edge],
        pick1: track(m.pick2),
        pick2: track(m.pick1),
    };
    let graph =
        CubicGraph::from_edges_unchecked(g.order(), keyed.into_iter().map(|(e, _, _)| e).collect());
    Ok((graph, inverse))
}

/// Outcome counts of running every labelled move on one graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MoveTally {
    pub moves: usize,
    pub self_moves: usize,
    pub disconnecting: usize,
    /// Moves whose result was already produced by an earlier move.
    pub repeated: usize,
}

fn each_result(g: &CubicGraph, mut f: impl FnMut(CubicGraph)) -> (usize, usize, usize) {
    let (mut total, mut selfs, mut disc) = (0, 0, 0);
    for m in moves(g) {
        total += 1;
        match apply_move(g, &m) {
            Ok(h) if h == *g => selfs += 1,
            Ok(h) => f(h),
            Err(MoveError::Disconnected) => disc += 1,
            Err(e) => unreachable!("generated move rejected: {e}"),
        }
    }
    (total, selfs, disc)
}

/// Distinct labelled graphs one move away from `g`, excluding `g`.
pub fn labelled_neighbors(g: &CubicGraph) -> BTreeSet<LabelledCode> {
    labelled_neighbors_tally(g).0
}

pub fn labelled_neighbors_tally(g: &CubicGraph) -> (BTreeSet<LabelledCode>, MoveTally) {
    let mut out = BTreeSet::new();
    let mut produced = 0;
    let (moves, self_moves, disconnecting) = each_result(g, |h| {
        produced += 1;
        out.insert(h.labelled_code());
    });
    let tally = MoveTally {
        moves,
        self_moves,
        disconnecting,
        repeated: produced - out.len(),
    };
    (out, tally)
}

/// Isomorphism classes one move away from `g`, excluding the class of `g`.
pub fn unlabelled_neighbors(g: &CubicGraph) -> BTreeSet<CanonicalCode> {
    unlabelled_neighbors_tally(g).0
}

/// Like [`unlabelled_neighbors`]; `self_moves` also counts moves landing in
/// the class of `g` through a nontrivial relabeling.
pub fn unlabelled_neighbors_tally(g: &CubicGraph) -> (BTreeSet<CanonicalCode>, MoveTally) {
    let own = g.canonical_form();
    let mut out = BTreeSet::new();
    let mut produced = 0;
    let mut same_class = 0;
    let (moves, self_moves, disconnecting) = each_result(g, |h| {
        let code = h.canonical_form();
        if code == own {
            same_class += 1;
        } else {
            produced += 1;
            out.insert(code);
        }
    });
    let tally = MoveTally {
        moves,
        self_moves: self_moves + same_class,
        disconnecting,
        repeated: produced - out.len(),
    };
    (out, tally)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_to_dumbbell() {
        let theta = CubicGraph::theta();
        // edges: copy 0, 1, 2 of (0,1); end 0 sits at vertex 0.
        let m = WhiteheadMove {
            edge: 0,
            pick1: HalfEdge { edge: 1, end: 0 },
            pick2: HalfEdge { edge: 2, end: 1 },
        };
        assert_eq!(apply_move(&theta, &m).unwrap(), CubicGraph::dumbbell());
    }

    #[test]
    fn loop_edges_are_rejected() {
        let d = CubicGraph::dumbbell();
        let m = WhiteheadMove {
            edge: 0,
            pick1: HalfEdge { edge: 1, end: 0 },
            pick2: HalfEdge { edge: 2, end: 0 },
        };
        assert_eq!(apply_move(&d, &m), Err(MoveError::MoveOnLoop(0)));
    }

    #[test]
    fn picks_on_the_moved_edge_are_rejected() {
        let t = CubicGraph::theta();
        let m = WhiteheadMove {
            edge: 0,
            pick1: HalfEdge { edge: 0, end: 0 },
            pick2: HalfEdge { edge: 2, end: 1 },
        };
        assert!(matches!(
            apply_move(&t, &m),
            Err(MoveError::InvalidSlot { .. })
        ));
        let wrong_vertex = WhiteheadMove {
            edge: 0,
            pick1: HalfEdge { edge: 1, end: 1 },
            pick2: HalfEdge { edge: 2, end: 1 },
        };
        assert!(matches!(
            apply_move(&t, &wrong_vertex),
            Err(MoveError::InvalidSlot { vertex: 0, .. })
        ));
    }

    #[test]
    fn two_vertex_neighbors() {
        let theta = CubicGraph::theta();
        let dumbbell = CubicGraph::dumbbell();
        let l: Vec<_> = labelled_neighbors(&theta).into_iter().collect();
        assert_eq!(l, vec![dumbbell.labelled_code()]);
        let u: Vec<_> = unlabelled_neighbors(&theta).into_iter().collect();
        assert_eq!(u, vec![dumbbell.canonical_form()]);
        let back: Vec<_> = unlabelled_neighbors(&dumbbell).into_iter().collect();
        assert_eq!(back, vec![theta.canonical_form()]);
    }

    #[test]
    fn petersen_has_sixty_neighbors() {
        let (set, tally) = labelled_neighbors_tally(&CubicGraph::petersen());
        assert_eq!(set.len(), 60);
        assert_eq!(tally.moves, 60);
        assert_eq!(tally.repeated, 0);
        assert_eq!(tally.self_moves, 0);
    }

    #[test]
    fn traced_inverse_restores_input() {
        let g = CubicGraph::petersen();
        for m in moves(&g) {
            let (h, inv) = apply_move_traced(&g, &m).unwrap();
            assert_eq!(h, apply_move(&g, &m).unwrap());
            assert_eq!(apply_move(&h, &inv).unwrap(), g);
        }
    }
}
