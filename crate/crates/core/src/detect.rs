//! Structure search primitives: bipartiteness with certificate, shortest
//! odd cycles, exhaustive induced path and cycle search, exact clique
//! bounding.
//!
//! All functions are pure; the exhaustive searches are exponential and
//! meant for desk-scale inputs or short patterns.

use crate::graph::{CycleHandle, Graph, VertexSubset};

/// Output of [`is_bipartite_certified`]: either a two-sided partition
/// with every edge crossing, or a shortest (hence chordless) odd cycle.
#[derive(Clone, Debug)]
pub enum BipartiteCert {
    Partition { left: Vec<usize>, right: Vec<usize> },
    OddCycle(CycleHandle),
}

/// BFS 2-coloring; on failure the returned odd cycle is a shortest one,
/// which makes it chordless.
pub fn is_bipartite_certified(g: &Graph) -> BipartiteCert {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    let mut bipartite = true;
    'components: for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if side[v] == u8::MAX {
                    side[v] = 1 - side[u];
                    queue.push_back(v);
                } else if side[v] == side[u] {
                    bipartite = false;
                    break 'components;
                }
            }
        }
    }
    if bipartite {
        let left = (0..n).filter(|&v| side[v] == 0).collect();
        let right = (0..n).filter(|&v| side[v] == 1).collect();
        return BipartiteCert::Partition { left, right };
    }
    let cycle = shortest_odd_cycle(g).expect("non-bipartite graph has an odd cycle");
    BipartiteCert::OddCycle(cycle)
}

/// Minimum-length odd cycle via BFS from every vertex, `O(n (n + m))`.
/// A shortest odd cycle is always chordless, so the handle is induced.
pub fn shortest_odd_cycle(g: &Graph) -> Option<CycleHandle> {
    let n = g.n();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        // An edge inside one BFS layer closes an odd walk through s.
        for (u, v) in g.edges() {
            if dist[u] != usize::MAX && dist[u] == dist[v] {
                let len = dist[u] + dist[v] + 1;
                if best.as_ref().map_or(true, |(b, _)| len < *b) {
                    let mut walk = path_to_root(&parent, u);
                    walk.reverse(); // s .. u
                    let back = path_to_root(&parent, v); // v .. s
                    walk.extend_from_slice(&back[..back.len() - 1]);
                    best = Some((len, walk));
                }
            }
        }
    }
    let (len, walk) = best?;
    let cycle = extract_odd_cycle(walk);
    debug_assert_eq!(cycle.len(), len, "global minimum walk is already simple");
    let handle = CycleHandle::new(g, cycle);
    debug_assert!(handle.is_induced(g), "a shortest odd cycle has no chord");
    Some(handle)
}

fn path_to_root(parent: &[usize], mut v: usize) -> Vec<usize> {
    let mut path = vec![v];
    while parent[v] != usize::MAX {
        v = parent[v];
        path.push(v);
    }
    path
}

/// Reduces a closed odd walk to a simple odd cycle by repeatedly cutting
/// at a repeated vertex and keeping the odd half.
fn extract_odd_cycle(mut walk: Vec<usize>) -> Vec<usize> {
    loop {
        debug_assert!(walk.len() % 2 == 1);
        let mut seen = std::collections::HashMap::new();
        let mut cut: Option<(usize, usize)> = None;
        for (i, &v) in walk.iter().enumerate() {
            if let Some(&j) = seen.get(&v) {
                cut = Some((j, i));
                break;
            }
            seen.insert(v, i);
        }
        let Some((j, i)) = cut else {
            return walk;
        };
        let middle: Vec<usize> = walk[j..i].to_vec();
        if middle.len() % 2 == 1 {
            walk = middle;
        } else {
            walk.drain(j..i);
        }
    }
}

/// Exhaustive search for an induced (chordless) cycle on exactly `m`
/// vertices. Backtracks over induced paths, pruning on chords, so the
/// cost is exponential only in `m`. Deterministic: lowest-id cycle
/// start, ascending extension order.
pub fn find_induced_cycle(g: &Graph, m: usize) -> Option<CycleHandle> {
    assert!(m >= 3);
    let n = g.n();
    let mut path = Vec::with_capacity(m);
    let mut used = vec![false; n];
    for start in 0..n {
        path.push(start);
        used[start] = true;
        if extend_induced_cycle(g, m, &mut path, &mut used) {
            let found = path.clone();
            return Some(CycleHandle::new(g, found));
        }
        path.pop();
        used[start] = false;
    }
    None
}

fn extend_induced_cycle(g: &Graph, m: usize, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let t = path.len();
    if t == m {
        return true;
    }
    let last = path[t - 1];
    let start = path[0];
    for w in g.neighbors(last) {
        // The start vertex is the cycle minimum; everything else is larger.
        if w <= start || used[w] {
            continue;
        }
        // Position 1 is adjacent to the start by construction; later
        // positions may touch the start only when closing the cycle.
        let closing = t == m - 1;
        if t >= 2 && closing != g.has_edge(w, start) {
            continue;
        }
        // No chord back to the interior of the path.
        if t >= 2 && path[1..t - 1].iter().any(|&p| g.has_edge(w, p)) {
            continue;
        }
        path.push(w);
        used[w] = true;
        if extend_induced_cycle(g, m, path, used) {
            return true;
        }
        path.pop();
        used[w] = false;
    }
    false
}

/// Exhaustive search for an induced path on exactly `k` vertices,
/// returned in path order. Desk-scale only.
pub fn find_induced_path(g: &Graph, k: usize) -> Option<VertexSubset> {
    assert!(k >= 1);
    let n = g.n();
    if k == 1 {
        return if n > 0 { Some(vec![0]) } else { None };
    }
    let mut path = Vec::with_capacity(k);
    let mut used = vec![false; n];
    for start in 0..n {
        path.push(start);
        used[start] = true;
        if extend_induced_path(g, k, &mut path, &mut used) {
            return Some(path);
        }
        path.pop();
        used[start] = false;
    }
    None
}

fn extend_induced_path(g: &Graph, k: usize, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let t = path.len();
    if t == k {
        return true;
    }
    let last = path[t - 1];
    for w in g.neighbors(last) {
        if used[w] {
            continue;
        }
        if path[..t - 1].iter().any(|&p| g.has_edge(w, p)) {
            continue;
        }
        path.push(w);
        used[w] = true;
        if extend_induced_path(g, k, path, used) {
            return true;
        }
        path.pop();
        used[w] = false;
    }
    false
}

/// True when `g` contains a path on `l` vertices as a not necessarily
/// induced subgraph.
pub fn has_path_subgraph(g: &Graph, l: usize) -> bool {
    if l == 0 {
        return true;
    }
    if l == 1 {
        return g.n() > 0;
    }
    let n = g.n();
    let mut used = vec![false; n];
    fn go(g: &Graph, l: usize, last: usize, depth: usize, used: &mut [bool]) -> bool {
        if depth == l {
            return true;
        }
        for w in g.neighbors(last) {
            if !used[w] {
                used[w] = true;
                if go(g, l, w, depth + 1, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    for start in 0..n {
        used[start] = true;
        if go(g, l, start, 1, &mut used) {
            return true;
        }
        used[start] = false;
    }
    false
}

/// Result of the bounded clique search.
#[derive(Clone, Debug)]
pub enum CliqueBound {
    /// A clique one larger than the bound, disproving `omega(G) <= bound`.
    Found(Vec<usize>),
    /// Confirmation that `omega(G) <= bound`.
    Holds,
}

/// Exact branch-and-bound: either exhibits a clique of size `bound + 1`
/// or certifies that none exists.
pub fn max_clique_leq(g: &Graph, bound: usize) -> CliqueBound {
    assert!(bound >= 1);
    match clique_of_size(g, bound + 1) {
        Some(c) => CliqueBound::Found(c),
        None => CliqueBound::Holds,
    }
}

/// Exact maximum clique size.
pub fn max_clique_size(g: &Graph) -> usize {
    let mut lo = 0;
    for size in 1..=g.n() {
        if clique_of_size(g, size).is_some() {
            lo = size;
        } else {
            break;
        }
    }
    lo
}

fn clique_of_size(g: &Graph, target: usize) -> Option<Vec<usize>> {
    if target == 0 {
        return Some(Vec::new());
    }
    if target > g.n() {
        return None;
    }
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut clique = Vec::new();
    fn expand(
        g: &Graph,
        target: usize,
        cands: &[usize],
        clique: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if clique.len() == target {
            return Some(clique.clone());
        }
        if clique.len() + cands.len() < target {
            return None;
        }
        for (i, &v) in cands.iter().enumerate() {
            if clique.len() + (cands.len() - i) < target {
                return None;
            }
            clique.push(v);
            let next: Vec<usize> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(v, w))
                .collect();
            if let Some(found) = expand(g, target, &next, clique) {
                return Some(found);
            }
            clique.pop();
        }
        None
    }
    expand(g, target, &order, &mut clique).map(|mut c| {
        c.sort_unstable();
        c
    })
}
