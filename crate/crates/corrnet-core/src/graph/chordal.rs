//! Chordality recognition with certificates.
//!
//! Maximum cardinality search produces an ordering whose reverse is a perfect
//! elimination ordering iff the graph is chordal; the ordering is then
//! verified directly, so a positive answer is self-certifying. On failure the
//! checker exhibits a concrete chordless cycle of length >= 4.

use alloc::vec;
use alloc::vec::Vec;

use super::bitset::{iter_bits, AdjBits};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChordalityCheck {
    Chordal {
        /// perfect elimination ordering, first-eliminated first
        elimination_order: Vec<usize>,
    },
    NonChordal {
        /// vertices of an induced cycle of length >= 4, in cycle order
        chordless_cycle: Vec<usize>,
    },
}

pub fn is_chordal(n: usize, edges: &[(usize, usize)]) -> bool {
    let adj = AdjBits::new(n, edges);
    let order = mcs_elimination_order(&adj);
    verify_elimination_order_internal(&adj, &order)
}

pub fn check_chordality(n: usize, edges: &[(usize, usize)]) -> ChordalityCheck {
    let adj = AdjBits::new(n, edges);
    let order = mcs_elimination_order(&adj);
    if verify_elimination_order_internal(&adj, &order) {
        ChordalityCheck::Chordal { elimination_order: order }
    } else {
        ChordalityCheck::NonChordal {
            chordless_cycle: find_chordless_cycle(&adj).expect("non-chordal graph has one"),
        }
    }
}

/// True when `order` is a perfect elimination ordering of the graph: each
/// vertex's later neighbors form a clique. Exposed so a claimed ordering can
/// be validated independently of how it was produced.
pub fn verify_elimination_order(n: usize, edges: &[(usize, usize)], order: &[usize]) -> bool {
    if order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    verify_elimination_order_internal(&AdjBits::new(n, edges), order)
}

/// Maximum cardinality search; returns the visit order reversed, i.e. the
/// candidate elimination order. Ties break toward the smaller index.
fn mcs_elimination_order(adj: &AdjBits) -> Vec<usize> {
    let n = adj.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = usize::MAX;
        for v in 0..n {
            if !visited[v] && (best == usize::MAX || weight[v] > weight[best]) {
                best = v;
            }
        }
        visited[best] = true;
        visit.push(best);
        for u in iter_bits(adj.row(best)) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    visit.reverse();
    visit
}

fn verify_elimination_order_internal(adj: &AdjBits, order: &[usize]) -> bool {
    let n = adj.n();
    let mut pos = vec![0usize; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    for (p, &v) in order.iter().enumerate() {
        let later: Vec<usize> = iter_bits(adj.row(v)).filter(|&u| pos[u] > p).collect();
        let Some(&anchor) = later.iter().min_by_key(|&&u| pos[u]) else {
            continue;
        };
        for &x in &later {
            if x != anchor && !adj.contains(anchor, x) {
                return false;
            }
        }
    }
    true
}

/// Hunts for a vertex v with two non-adjacent neighbors x, y that stay
/// connected outside N[v]; the shortest such detour plus v is an induced
/// cycle. Any non-chordal graph contains one.
fn find_chordless_cycle(adj: &AdjBits) -> Option<Vec<usize>> {
    let n = adj.n();
    for v in 0..n {
        let nbrs = adj.neighbors(v);
        for (ai, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[ai + 1..] {
                if adj.contains(x, y) {
                    continue;
                }
                // block v and all its other neighbors; a surviving x-y path
                // has interior untouched by chords to either endpoint's gap
                let mut blocked = vec![false; n];
                blocked[v] = true;
                for &b in &nbrs {
                    blocked[b] = true;
                }
                blocked[x] = false;
                blocked[y] = false;
                if let Some(path) = bfs_path(adj, x, y, &blocked) {
                    let mut cycle = Vec::with_capacity(path.len() + 1);
                    cycle.push(v);
                    cycle.extend(path);
                    debug_assert!(cycle.len() >= 4);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

/// Shortest path from `from` to `to` through unblocked vertices, inclusive.
fn bfs_path(adj: &AdjBits, from: usize, to: usize, blocked: &[bool]) -> Option<Vec<usize>> {
    let n = adj.n();
    let mut parent = vec![UNVISITED; n];
    parent[from] = from;
    let mut queue = alloc::collections::VecDeque::new();
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for u in iter_bits(adj.row(v)) {
            if !blocked[u] && parent[u] == UNVISITED {
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    None
}

const UNVISITED: usize = usize::MAX;

/// Validates a claimed chordless cycle against the graph: distinct vertices,
/// length >= 4, consecutive pairs adjacent (cyclically), all other pairs
/// non-adjacent.
pub fn verify_chordless_cycle(n: usize, edges: &[(usize, usize)], cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k || sorted.iter().any(|&v| v >= n) {
        return false;
    }
    let adj = AdjBits::new(n, edges);
    for a in 0..k {
        for b in (a + 1)..k {
            let consecutive = b == a + 1 || (a == 0 && b == k - 1);
            if adj.contains(cycle[a], cycle[b]) != consecutive {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_edges(k: usize) -> Vec<(usize, usize)> {
        (0..k).map(|i| (i, (i + 1) % k)).collect()
    }

    #[test]
    fn trees_triangles_and_complete_graphs_are_chordal() {
        assert!(is_chordal(1, &[]));
        assert!(is_chordal(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]));
        assert!(is_chordal(3, &cycle_edges(3)));
        let mut k5 = Vec::new();
        for i in 0..5 {
            for j in (i + 1)..5 {
                k5.push((i, j));
            }
        }
        assert!(is_chordal(5, &k5));
    }

    #[test]
    fn four_cycle_yields_itself_as_witness() {
        match check_chordality(4, &cycle_edges(4)) {
            ChordalityCheck::NonChordal { chordless_cycle } => {
                assert_eq!(chordless_cycle.len(), 4);
                assert!(verify_chordless_cycle(4, &cycle_edges(4), &chordless_cycle));
            }
            ChordalityCheck::Chordal { .. } => panic!("C4 is not chordal"),
        }
    }

    #[test]
    fn chorded_square_is_chordal_with_verified_order() {
        let mut edges = cycle_edges(4);
        edges.push((0, 2));
        match check_chordality(4, &edges) {
            ChordalityCheck::Chordal { elimination_order } => {
                assert!(verify_elimination_order(4, &edges, &elimination_order));
            }
            ChordalityCheck::NonChordal { .. } => panic!("chorded C4 is chordal"),
        }
    }

    #[test]
    fn hidden_long_hole_is_found() {
        // a C6 with pendant decorations; the hole survives
        let mut edges = cycle_edges(6);
        edges.extend([(0, 6), (6, 7), (3, 8)]);
        match check_chordality(9, &edges) {
            ChordalityCheck::NonChordal { chordless_cycle } => {
                assert!(verify_chordless_cycle(9, &edges, &chordless_cycle));
                assert!(chordless_cycle.len() >= 4);
            }
            ChordalityCheck::Chordal { .. } => panic!("contains a 6-hole"),
        }
    }

    #[test]
    fn verifier_rejects_bogus_orders_and_cycles() {
        let edges = cycle_edges(4);
        assert!(!verify_elimination_order(4, &edges, &[0, 1, 2])); // wrong length
        assert!(!verify_elimination_order(4, &edges, &[0, 0, 1, 2])); // repeat
        assert!(!verify_elimination_order(4, &edges, &[0, 1, 2, 3])); // C4 has no PEO

        assert!(!verify_chordless_cycle(4, &edges, &[0, 1, 2])); // too short
        assert!(!verify_chordless_cycle(4, &edges, &[0, 1, 3, 2])); // wrong order: 0-3 not consecutive here
        let mut chorded = edges.clone();
        chorded.push((0, 2));
        assert!(!verify_chordless_cycle(4, &chorded, &[0, 1, 2, 3])); // chord present
    }

    #[test]
    fn two_disjoint_holes_still_fail() {
        let mut edges = cycle_edges(4);
        edges.extend([(4, 5), (5, 6), (6, 7), (7, 4)]);
        assert!(!is_chordal(8, &edges));
    }
}
