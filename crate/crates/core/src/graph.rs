//! Simple undirected graphs with dense 0-based vertex ids.
//!
//! Adjacency is kept with set semantics: no loops, no parallel edges,
//! symmetric. Everything downstream (structure search, homomorphism
//! search, the certifying solver) works on this one type.

use std::collections::BTreeSet;
use std::fmt;

/// An ordered list of distinct vertex ids of some host graph.
pub type VertexSubset = Vec<usize>;

/// Simple undirected graph. Vertices are `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Path on `n` vertices 0-1-2-...-(n-1).
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0);
        g
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Complete bipartite graph with sides `a` and `b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Petersen graph, a standard 10-vertex test case.
    pub fn petersen() -> Self {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5); // outer 5-cycle
            g.add_edge(i, i + 5); // spokes
            g.add_edge(5 + i, 5 + (i + 2) % 5); // inner 5-cycle (pentagram)
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Adds an edge; loops are ignored, re-adding is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "vertex out of range");
        if u == v {
            return;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    /// All edges as ordered pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Induced subgraph on `keep` (ids must be valid and distinct).
    /// Vertex `keep[i]` becomes vertex `i` of the result.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            assert!(v < self.n, "vertex out of range");
            assert!(pos[v] == usize::MAX, "duplicate vertex in subset");
            pos[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                if pos[w] != usize::MAX {
                    g.add_edge(i, pos[w]);
                }
            }
        }
        g
    }

    /// Connected components, each sorted ascending; components ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = vec![s];
            while let Some(u) = queue.pop() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Components of the subgraph induced on `inside` (a boolean mask),
    /// using only edges with both ends inside.
    pub fn components_within(&self, inside: &[bool]) -> Vec<Vec<usize>> {
        assert_eq!(inside.len(), self.n);
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if !inside[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = vec![s];
            while let Some(u) = queue.pop() {
                for &v in &self.adj[u] {
                    if inside[v] && !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A cyclic sequence of distinct vertices of a host graph, consecutive
/// vertices adjacent. Produced by cycle searches; induced (chordless)
/// whenever the producing search guarantees it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleHandle {
    vertices: Vec<usize>,
}

impl CycleHandle {
    /// Wraps a vertex sequence, checking it really is a cycle of `g`.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Self {
        let m = vertices.len();
        assert!(m >= 3, "cycle length must be at least 3");
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            assert!(v < g.n(), "cycle vertex out of range");
            assert!(seen.insert(v), "repeated vertex in cycle");
        }
        for i in 0..m {
            assert!(
                g.has_edge(vertices[i], vertices[(i + 1) % m]),
                "consecutive cycle vertices must be adjacent"
            );
        }
        CycleHandle { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex(&self, pos: usize) -> usize {
        self.vertices[pos % self.vertices.len()]
    }

    /// Position of `v` on the cycle, if present.
    pub fn position_of(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&u| u == v)
    }

    /// True when the cycle has no chord in `g`.
    pub fn is_induced(&self, g: &Graph) -> bool {
        let m = self.vertices.len();
        for i in 0..m {
            for j in i + 1..m {
                let adjacent = g.has_edge(self.vertices[i], self.vertices[j]);
                let consecutive = j == i + 1 || (i == 0 && j == m - 1);
                if adjacent != consecutive {
                    return false;
                }
            }
        }
        true
    }

    /// Same cycle, re-anchored to start at position `start`.
    pub fn rotated(&self, start: usize) -> CycleHandle {
        let m = self.vertices.len();
        let mut v = Vec::with_capacity(m);
        for i in 0..m {
            v.push(self.vertices[(start + i) % m]);
        }
        CycleHandle { vertices: v }
    }
}
