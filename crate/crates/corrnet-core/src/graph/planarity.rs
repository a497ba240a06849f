//! Planarity testing with certificates on both answers.
//!
//! The tester is the left-right (de Fraysseix-Rosenstiehl) criterion in its
//! iterative form. A planar verdict carries a combinatorial embedding whose
//! rotation system can be checked against Euler's formula; a non-planar
//! verdict carries a Kuratowski witness obtained by deleting edges while the
//! graph stays non-planar. An edge-minimal non-planar graph is exactly a
//! subdivision of K5 or K3,3, so the witness classifies by branch-vertex
//! degrees.

use alloc::vec;
use alloc::vec::Vec;

use super::union_find::UnionFind;

const UNSET: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq)]
pub enum PlanarityCheck {
    Planar(Embedding),
    NonPlanar(KuratowskiWitness),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// An edge-minimal non-planar subgraph: a subdivision of K5 or K3,3.
#[derive(Clone, Debug, PartialEq)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    /// subdivision edges, a subset of the tested graph's edges
    pub edges: Vec<(usize, usize)>,
    /// the 5 (K5) or 6 (K3,3) vertices of degree > 2
    pub branch_vertices: Vec<usize>,
}

/// Rotation system of a planar embedding: for every vertex, its incident
/// half-edges in clockwise order.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    n: usize,
    edges: Vec<(usize, usize)>,
    // half-edge h = 2*eid + d; d=0 runs edges[eid].0 -> .1
    first: Vec<u32>, // per vertex, UNSET when isolated
    next: Vec<u32>,  // clockwise successor at the origin
    prev: Vec<u32>,
}

impl Embedding {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn he_origin(&self, h: u32) -> usize {
        let (u, v) = self.edges[(h >> 1) as usize];
        if h & 1 == 0 {
            u
        } else {
            v
        }
    }

    fn he_target(&self, h: u32) -> usize {
        let (u, v) = self.edges[(h >> 1) as usize];
        if h & 1 == 0 {
            v
        } else {
            u
        }
    }

    /// Neighbors of `v` in clockwise order.
    pub fn rotation(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let start = self.first[v];
        if start == UNSET {
            return out;
        }
        let mut h = start;
        loop {
            out.push(self.he_target(h));
            h = self.next[h as usize];
            if h == start {
                break;
            }
        }
        out
    }

    /// Number of face orbits of the rotation system.
    pub fn face_count(&self) -> usize {
        let he_count = 2 * self.edges.len();
        let mut seen = vec![false; he_count];
        let mut faces = 0;
        for start in 0..he_count as u32 {
            if seen[start as usize] {
                continue;
            }
            faces += 1;
            let mut h = start;
            while !seen[h as usize] {
                seen[h as usize] = true;
                // next boundary half-edge: counterclockwise successor of the
                // twin at the twin's origin
                h = self.prev[(h ^ 1) as usize];
            }
        }
        faces
    }

    /// Euler's formula v - e + f = 2 on every connected component with at
    /// least one edge; this holds iff the rotation system is genus zero,
    /// i.e. iff it really describes a planar embedding.
    pub fn euler_formula_holds(&self) -> bool {
        if self.edges.is_empty() {
            return true;
        }
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let mut v_count = vec![0usize; self.n];
        let mut e_count = vec![0usize; self.n];
        let mut f_count = vec![0usize; self.n];
        let mut touched = vec![false; self.n];
        for v in 0..self.n {
            v_count[uf.find(v)] += 1;
        }
        for &(u, v) in &self.edges {
            let root = uf.find(u);
            e_count[root] += 1;
            touched[root] = true;
            let _ = v;
        }
        // attribute each face orbit to its component
        let he_count = 2 * self.edges.len();
        let mut seen = vec![false; he_count];
        for start in 0..he_count as u32 {
            if seen[start as usize] {
                continue;
            }
            let root = uf.find(self.he_origin(start));
            f_count[root] += 1;
            let mut h = start;
            while !seen[h as usize] {
                seen[h as usize] = true;
                h = self.prev[(h ^ 1) as usize];
            }
        }
        (0..self.n).filter(|&r| touched[r]).all(|r| {
            v_count[r] + f_count[r] == e_count[r] + 2
        })
    }
}

/// Strips self-loops and duplicates, asserts endpoints are in range.
fn normalize(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
    for &(a, b) in edges {
        assert!(a < n && b < n, "edge endpoint out of range");
        if a == b {
            continue;
        }
        let e = if a < b { (a, b) } else { (b, a) };
        out.push(e);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Boolean planarity of a simple undirected graph. Self-loops and duplicate
/// edges in the input are ignored.
pub fn is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    let edges = normalize(n, edges);
    lr_is_planar(n, &edges)
}

/// Full check: an embedding when planar, a Kuratowski witness when not.
pub fn check_planarity(n: usize, edges: &[(usize, usize)]) -> PlanarityCheck {
    let edges = normalize(n, edges);
    match Lr::new(n, &edges).run(true) {
        LrOutcome::Planar(embedding) => PlanarityCheck::Planar(embedding.expect("requested")),
        LrOutcome::NonPlanar => PlanarityCheck::NonPlanar(extract_witness(n, edges)),
    }
}

fn lr_is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    matches!(Lr::new(n, edges).run(false), LrOutcome::Planar(_))
}

enum LrOutcome {
    Planar(Option<Embedding>),
    NonPlanar,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Interval {
    low: u32,
    high: u32,
}

const EMPTY_IV: Interval = Interval { low: UNSET, high: UNSET };

impl Interval {
    fn is_empty(self) -> bool {
        self.low == UNSET && self.high == UNSET
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct ConflictPair {
    l: Interval,
    r: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        core::mem::swap(&mut self.l, &mut self.r);
    }
}

struct Lr {
    n: usize,
    m: usize,
    adj: Vec<Vec<(u32, u32)>>, // (neighbor, eid)
    eu: Vec<u32>,
    ev: Vec<u32>,
    // orientation (per edge id, once oriented)
    oriented: Vec<bool>,
    src: Vec<u32>,
    dst: Vec<u32>,
    lowpt: Vec<u32>,
    lowpt2: Vec<u32>,
    nesting: Vec<i64>,
    // per vertex
    height: Vec<u32>,
    parent_edge: Vec<u32>,
    roots: Vec<u32>,
    ordered_out: Vec<Vec<u32>>,
    // testing
    ref_: Vec<u32>,
    side: Vec<i8>,
    lowpt_edge: Vec<u32>,
    stack_bottom: Vec<usize>,
    s: Vec<ConflictPair>,
}

impl Lr {
    fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let m = edges.len();
        let mut adj = vec![Vec::new(); n];
        let mut eu = Vec::with_capacity(m);
        let mut ev = Vec::with_capacity(m);
        for (eid, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v as u32, eid as u32));
            adj[v].push((u as u32, eid as u32));
            eu.push(u as u32);
            ev.push(v as u32);
        }
        Lr {
            n,
            m,
            adj,
            eu,
            ev,
            oriented: vec![false; m],
            src: vec![UNSET; m],
            dst: vec![UNSET; m],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting: vec![0; m],
            height: vec![UNSET; n],
            parent_edge: vec![UNSET; n],
            roots: Vec::new(),
            ordered_out: Vec::new(),
            ref_: vec![UNSET; m],
            side: vec![1; m],
            lowpt_edge: vec![UNSET; m],
            stack_bottom: vec![0; m],
            s: Vec::new(),
        }
    }

    fn run(mut self, want_embedding: bool) -> LrOutcome {
        if self.n >= 3 && self.m > 3 * self.n - 6 {
            return LrOutcome::NonPlanar;
        }
        if self.m == 0 {
            return LrOutcome::Planar(if want_embedding {
                Some(Embedding {
                    n: self.n,
                    edges: Vec::new(),
                    first: vec![UNSET; self.n],
                    next: Vec::new(),
                    prev: Vec::new(),
                })
            } else {
                None
            });
        }

        for v in 0..self.n {
            if self.height[v] == UNSET {
                self.height[v] = 0;
                self.roots.push(v as u32);
                self.dfs_orientation(v as u32);
            }
        }

        self.sort_outgoing();
        for r in 0..self.roots.len() {
            if !self.dfs_testing(self.roots[r]) {
                return LrOutcome::NonPlanar;
            }
        }

        if !want_embedding {
            return LrOutcome::Planar(None);
        }
        LrOutcome::Planar(Some(self.build_embedding()))
    }

    fn dfs_orientation(&mut self, root: u32) {
        let mut stack = vec![root];
        let mut ind = vec![0usize; self.n];
        let mut post_pending = vec![false; self.m];
        while let Some(&v) = stack.last() {
            let vu = v as usize;
            let e = self.parent_edge[vu];
            let mut descended = false;
            while ind[vu] < self.adj[vu].len() {
                let (w, eid) = self.adj[vu][ind[vu]];
                let eidu = eid as usize;
                if !post_pending[eidu] {
                    if self.oriented[eidu] {
                        ind[vu] += 1;
                        continue;
                    }
                    self.oriented[eidu] = true;
                    self.src[eidu] = v;
                    self.dst[eidu] = w;
                    self.lowpt[eidu] = self.height[vu];
                    self.lowpt2[eidu] = self.height[vu];
                    if self.height[w as usize] == UNSET {
                        // tree edge: finish the subtree, then run the
                        // post-processing below on the way back up
                        self.parent_edge[w as usize] = eid;
                        self.height[w as usize] = self.height[vu] + 1;
                        post_pending[eidu] = true;
                        stack.push(w);
                        descended = true;
                        break;
                    }
                    self.lowpt[eidu] = self.height[w as usize]; // back edge
                }
                // nesting depth: twice the lowpoint, odd when chordal
                self.nesting[eidu] = 2 * self.lowpt[eidu] as i64;
                if self.lowpt2[eidu] < self.height[vu] {
                    self.nesting[eidu] += 1;
                }
                if e != UNSET {
                    let pe = e as usize;
                    if self.lowpt[eidu] < self.lowpt[pe] {
                        self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[eidu]);
                        self.lowpt[pe] = self.lowpt[eidu];
                    } else if self.lowpt[eidu] > self.lowpt[pe] {
                        self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[eidu]);
                    } else {
                        self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[eidu]);
                    }
                }
                ind[vu] += 1;
            }
            if !descended {
                stack.pop();
            }
        }
    }

    fn sort_outgoing(&mut self) {
        let mut out = vec![Vec::new(); self.n];
        for eid in 0..self.m {
            out[self.src[eid] as usize].push(eid as u32);
        }
        for v in 0..self.n {
            out[v].sort_by_key(|&e| (self.nesting[e as usize], e));
        }
        self.ordered_out = out;
    }

    fn dfs_testing(&mut self, root: u32) -> bool {
        let mut stack = vec![root];
        let mut ind = vec![0usize; self.n];
        let mut entered = vec![false; self.m];
        while let Some(&v) = stack.last() {
            let vu = v as usize;
            let e = self.parent_edge[vu];
            let mut descended = false;
            while ind[vu] < self.ordered_out[vu].len() {
                let eid = self.ordered_out[vu][ind[vu]];
                let eidu = eid as usize;
                let w = self.dst[eidu];
                if !entered[eidu] {
                    self.stack_bottom[eidu] = self.s.len();
                    if eid == self.parent_edge[w as usize] {
                        entered[eidu] = true;
                        stack.push(w);
                        descended = true;
                        break;
                    }
                    self.lowpt_edge[eidu] = eid;
                    self.s.push(ConflictPair {
                        l: EMPTY_IV,
                        r: Interval { low: eid, high: eid },
                    });
                }
                if self.lowpt[eidu] < self.height[vu] {
                    // eid has a return edge below v
                    if ind[vu] == 0 {
                        debug_assert!(e != UNSET);
                        self.lowpt_edge[e as usize] = self.lowpt_edge[eidu];
                    } else if !self.add_constraints(eid, e) {
                        return false;
                    }
                }
                ind[vu] += 1;
            }
            if !descended {
                stack.pop();
                if e != UNSET {
                    self.remove_back_edges(e);
                }
            }
        }
        true
    }

    fn conflicting(&self, iv: Interval, b: u32) -> bool {
        !iv.is_empty() && {
            debug_assert!(iv.high != UNSET);
            self.lowpt[iv.high as usize] > self.lowpt[b as usize]
        }
    }

    fn lowest(&self, p: ConflictPair) -> u32 {
        if p.l.is_empty() {
            return self.lowpt[p.r.low as usize];
        }
        if p.r.is_empty() {
            return self.lowpt[p.l.low as usize];
        }
        self.lowpt[p.l.low as usize].min(self.lowpt[p.r.low as usize])
    }

    fn set_ref(&mut self, of: u32, to: u32) {
        if of != UNSET {
            self.ref_[of as usize] = to;
        }
    }

    fn add_constraints(&mut self, ei: u32, e: u32) -> bool {
        let eiu = ei as usize;
        let eu_ = e as usize;
        let mut p = ConflictPair { l: EMPTY_IV, r: EMPTY_IV };
        // merge return edges of ei into p.r
        loop {
            let mut q = self.s.pop().expect("return edges of ei are on the stack");
            if !q.l.is_empty() {
                q.swap();
            }
            if !q.l.is_empty() {
                return false; // not planar
            }
            debug_assert!(q.r.low != UNSET);
            if self.lowpt[q.r.low as usize] > self.lowpt[eu_] {
                // interval stays relevant: chain it under p.r
                if p.r.is_empty() {
                    p.r.high = q.r.high;
                } else {
                    self.set_ref(p.r.low, q.r.high);
                }
                p.r.low = q.r.low;
            } else {
                // interval returns at or below lowpt(e): align it
                self.set_ref(q.r.low, self.lowpt_edge[eu_]);
            }
            if self.s.len() == self.stack_bottom[eiu] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.l
        loop {
            let top = match self.s.last() {
                Some(&t) => t,
                None => break,
            };
            if !(self.conflicting(top.l, ei) || self.conflicting(top.r, ei)) {
                break;
            }
            let mut q = self.s.pop().unwrap();
            if self.conflicting(q.r, ei) {
                q.swap();
            }
            if self.conflicting(q.r, ei) {
                return false; // not planar
            }
            // merge q.r (below lowpt(ei)) into p.r
            self.set_ref(p.r.low, q.r.high);
            if q.r.low != UNSET {
                p.r.low = q.r.low;
            }
            // merge q.l into p.l
            if p.l.is_empty() {
                p.l.high = q.l.high;
            } else {
                self.set_ref(p.l.low, q.l.high);
            }
            p.l.low = q.l.low;
        }
        if !(p.l.is_empty() && p.r.is_empty()) {
            self.s.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: u32) {
        let eu_ = e as usize;
        let u = self.src[eu_];
        let hu = self.height[u as usize];
        // drop pairs whose every return edge ends exactly at u
        while let Some(&top) = self.s.last() {
            if self.lowest(top) != hu {
                break;
            }
            let p = self.s.pop().unwrap();
            if p.l.low != UNSET {
                self.side[p.l.low as usize] = -1;
            }
        }
        // trim the next pair's returns to u
        if let Some(mut p) = self.s.pop() {
            while p.l.high != UNSET && self.dst[p.l.high as usize] == u {
                p.l.high = self.ref_[p.l.high as usize];
            }
            if p.l.high == UNSET && p.l.low != UNSET {
                // left side just emptied
                self.set_ref(p.l.low, p.r.low);
                self.side[p.l.low as usize] = -1;
                p.l.low = UNSET;
            }
            while p.r.high != UNSET && self.dst[p.r.high as usize] == u {
                p.r.high = self.ref_[p.r.high as usize];
            }
            if p.r.high == UNSET && p.r.low != UNSET {
                self.set_ref(p.r.low, p.l.low);
                self.side[p.r.low as usize] = -1;
                p.r.low = UNSET;
            }
            self.s.push(p);
        }
        // the parent edge's reference is a highest surviving return edge
        if self.lowpt[eu_] < hu {
            let top = *self.s.last().expect("a return edge below u survives");
            let hl = top.l.high;
            let hr = top.r.high;
            self.ref_[eu_] = if hl != UNSET
                && (hr == UNSET || self.lowpt[hl as usize] > self.lowpt[hr as usize])
            {
                hl
            } else {
                hr
            };
        }
    }

    fn sign(&mut self, e: u32) -> i8 {
        let mut stack = vec![e];
        let mut old_ref = vec![UNSET; self.m];
        while let Some(x) = stack.pop() {
            let xu = x as usize;
            if self.ref_[xu] != UNSET {
                stack.push(x);
                stack.push(self.ref_[xu]);
                old_ref[xu] = self.ref_[xu];
                self.ref_[xu] = UNSET;
            } else if old_ref[xu] != UNSET {
                self.side[xu] *= self.side[old_ref[xu] as usize];
                old_ref[xu] = UNSET;
            }
        }
        self.side[e as usize]
    }

    fn build_embedding(&mut self) -> Embedding {
        for eid in 0..self.m as u32 {
            self.nesting[eid as usize] *= self.sign(eid) as i64;
        }
        self.sort_outgoing();

        let mut rot = RotationBuilder::new(self.n, self.m);
        // base rotation: outgoing half-edges in signed nesting order
        for v in 0..self.n {
            let mut prev_he = UNSET;
            for &eid in &self.ordered_out[v] {
                let he = self.half_edge_from(eid, v as u32);
                if prev_he == UNSET {
                    rot.init_vertex(v, he);
                } else {
                    rot.insert_after(prev_he, he);
                }
                prev_he = he;
            }
        }

        // incoming half-edges, placed by the testing phase's sides
        let mut left_ref = vec![UNSET; self.n];
        let mut right_ref = vec![UNSET; self.n];
        for r in 0..self.roots.len() {
            let root = self.roots[r];
            let mut stack = vec![root];
            let mut ind = vec![0usize; self.n];
            while let Some(&v) = stack.last() {
                let vu = v as usize;
                let mut descended = false;
                while ind[vu] < self.ordered_out[vu].len() {
                    let eid = self.ordered_out[vu][ind[vu]];
                    ind[vu] += 1;
                    let eidu = eid as usize;
                    let w = self.dst[eidu];
                    let wu = w as usize;
                    let incoming = self.half_edge_from(eid, w);
                    if eid == self.parent_edge[wu] {
                        // tree edge: the parent half-edge opens w's rotation
                        rot.insert_first(wu, incoming);
                        left_ref[vu] = w;
                        right_ref[vu] = w;
                        stack.push(w);
                        descended = true;
                        break;
                    }
                    // back edge: attach at the ancestor
                    if self.side[eidu] == 1 {
                        let anchor = self.half_edge_to(wu, right_ref[wu]);
                        rot.insert_after(anchor, incoming);
                    } else {
                        let anchor = self.half_edge_to(wu, left_ref[wu]);
                        rot.insert_before(anchor, incoming);
                        if rot.first[wu] == anchor {
                            rot.first[wu] = incoming;
                        }
                        left_ref[wu] = v;
                    }
                }
                if !descended {
                    stack.pop();
                }
            }
        }

        let edges: Vec<(usize, usize)> = self
            .eu
            .iter()
            .zip(&self.ev)
            .map(|(&a, &b)| (a as usize, b as usize))
            .collect();
        Embedding { n: self.n, edges, first: rot.first, next: rot.next, prev: rot.prev }
    }

    /// Half-edge of `eid` originating at `at`.
    fn half_edge_from(&self, eid: u32, at: u32) -> u32 {
        if self.eu[eid as usize] == at {
            2 * eid
        } else {
            debug_assert_eq!(self.ev[eid as usize], at);
            2 * eid + 1
        }
    }

    /// Half-edge from vertex `from` toward neighbor `to` (the edge must
    /// exist).
    fn half_edge_to(&self, from: usize, to: u32) -> u32 {
        for &(nbr, eid) in &self.adj[from] {
            if nbr == to {
                return self.half_edge_from(eid, from as u32);
            }
        }
        unreachable!("rotation anchor edge must exist");
    }
}

struct RotationBuilder {
    first: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
}

impl RotationBuilder {
    fn new(n: usize, m: usize) -> Self {
        RotationBuilder { first: vec![UNSET; n], next: vec![UNSET; 2 * m], prev: vec![UNSET; 2 * m] }
    }

    fn init_vertex(&mut self, v: usize, he: u32) {
        debug_assert_eq!(self.first[v], UNSET);
        self.first[v] = he;
        self.next[he as usize] = he;
        self.prev[he as usize] = he;
    }

    fn insert_after(&mut self, anchor: u32, he: u32) {
        let nxt = self.next[anchor as usize];
        self.next[anchor as usize] = he;
        self.prev[he as usize] = anchor;
        self.next[he as usize] = nxt;
        self.prev[nxt as usize] = he;
    }

    fn insert_before(&mut self, anchor: u32, he: u32) {
        let prv = self.prev[anchor as usize];
        self.insert_after(prv, he);
    }

    /// Inserts `he` as the new first half-edge of `v` (before the old first,
    /// in cyclic order).
    fn insert_first(&mut self, v: usize, he: u32) {
        if self.first[v] == UNSET {
            self.init_vertex(v, he);
        } else {
            self.insert_before(self.first[v], he);
            self.first[v] = he;
        }
    }
}

/// Shrinks a known non-planar edge set to an edge-minimal one, then reads
/// off the subdivision.
fn extract_witness(n: usize, mut edges: Vec<(usize, usize)>) -> KuratowskiWitness {
    debug_assert!(!lr_is_planar(n, &edges));
    let mut k = 0;
    while k < edges.len() {
        let removed = edges.swap_remove(k);
        if lr_is_planar(n, &edges) {
            // removal broke non-planarity: the edge is essential
            edges.push(removed);
            let last = edges.len() - 1;
            edges.swap(k, last);
            k += 1;
        }
    }
    let mut degree = vec![0usize; n];
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let deg4: Vec<usize> = (0..n).filter(|&v| degree[v] == 4).collect();
    let deg3: Vec<usize> = (0..n).filter(|&v| degree[v] == 3).collect();
    let (kind, branch_vertices) = if deg4.len() == 5 && deg3.is_empty() {
        (KuratowskiKind::K5, deg4)
    } else {
        debug_assert_eq!(deg3.len(), 6, "minimal non-planar graph must be a subdivision");
        debug_assert!(deg4.is_empty());
        (KuratowskiKind::K33, deg3)
    };
    debug_assert!((0..n).all(|v| matches!(degree[v], 0 | 2 | 3 | 4)));
    edges.sort_unstable();
    KuratowskiWitness { kind, edges, branch_vertices }
}

/// Independent validation of a witness against the graph it came from:
/// the edges must be a subset of `edges`, and suppressing degree-2 vertices
/// must yield exactly K5 or K3,3 as claimed.
pub fn verify_kuratowski_witness(
    witness: &KuratowskiWitness,
    n: usize,
    edges: &[(usize, usize)],
) -> bool {
    let host = normalize(n, edges);
    let sub = normalize(n, &witness.edges);
    if sub.len() != witness.edges.len() {
        return false; // duplicates or self-loops in the witness
    }
    if !sub.iter().all(|e| host.binary_search(e).is_ok()) {
        return false;
    }

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &sub {
        adj[u].push(v);
        adj[v].push(u);
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() > 2).collect();
    if branch != witness.branch_vertices {
        return false;
    }
    if (0..n).any(|v| adj[v].len() == 1) {
        return false; // dangling path, not a subdivision
    }

    // walk branch-to-branch paths through degree-2 vertices
    let mut core_edges: Vec<(usize, usize)> = Vec::new();
    for &b in &branch {
        for &start in &adj[b] {
            let (mut prev, mut cur) = (b, start);
            while adj[cur].len() == 2 {
                let nxt = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = nxt;
            }
            if cur == b || !branch.contains(&cur) {
                return false; // loop back or open path
            }
            if b < cur {
                core_edges.push((b, cur));
            }
        }
    }
    core_edges.sort_unstable();
    let before = core_edges.len();
    core_edges.dedup();
    if before != core_edges.len() {
        return false; // two paths between the same branch pair: not a subdivision
    }

    match witness.kind {
        KuratowskiKind::K5 => {
            branch.len() == 5
                && core_edges.len() == 10
                && branch.iter().all(|&v| adj[v].len() == 4)
        }
        KuratowskiKind::K33 => {
            if branch.len() != 6 || core_edges.len() != 9 {
                return false;
            }
            if !branch.iter().all(|&v| adj[v].len() == 3) {
                return false;
            }
            // complete bipartite: the three vertices not adjacent to branch[0]
            // must each be adjacent to the other three
            let is_core = |a: usize, b: usize| {
                let e = if a < b { (a, b) } else { (b, a) };
                core_edges.binary_search(&e).is_ok()
            };
            let side_a: Vec<usize> =
                branch.iter().copied().filter(|&v| v == branch[0] || !is_core(branch[0], v)).collect();
            let side_b: Vec<usize> =
                branch.iter().copied().filter(|&v| !side_a.contains(&v)).collect();
            side_a.len() == 3
                && side_b.len() == 3
                && side_a.iter().all(|&a| side_b.iter().all(|&b| is_core(a, b)))
                && side_a.iter().all(|&a| side_a.iter().all(|&a2| a == a2 || !is_core(a, a2)))
        }
    }
}
