//! DFS tree decompositions, dynamic-programming homomorphism search over
//! them, minimal-obstruction extraction, and the clique precheck.
//!
//! The decomposition uses root-to-vertex DFS paths as bags. That is far
//! from optimal width in general, but for graphs with no path subgraph
//! on `l` vertices every bag has at most `l - 1` vertices, which is the
//! bound the coloring route needs, and validity is easy to certify.

use crate::detect::{max_clique_leq, max_clique_size, CliqueBound};
use crate::graph::Graph;
use crate::hom::{find_hom, HomMapping, ListAssignment, TargetGraph};
use std::collections::HashMap;
use thiserror::Error;

/// Bags plus tree edges over bag indices.
#[derive(Clone, Debug)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub tree: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Debug dump: one line per bag `b<i>: v v v`, then `t: i j` edges.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, bag) in self.bags.iter().enumerate() {
            let items: Vec<String> = bag.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("b{i}: {}\n", items.join(" ")));
        }
        for &(i, j) in &self.tree {
            out.push_str(&format!("t: {i} {j}\n"));
        }
        out
    }
}

/// DFS decomposition: one bag per vertex holding its root-to-vertex DFS
/// path. Components are decomposed separately; when there is more than
/// one, an empty virtual root bag joins them.
pub fn dfs_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut tree: Vec<(usize, usize)> = Vec::new();
    let mut bag_of = vec![usize::MAX; n];
    let mut component_roots = Vec::new();

    let mut visited = vec![false; n];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::new();
        // Ascending neighbor order keeps the decomposition deterministic.
        fn dfs(
            g: &Graph,
            u: usize,
            visited: &mut [bool],
            parent: &mut [usize],
            order: &mut Vec<usize>,
        ) {
            order.push(u);
            for v in g.neighbors(u) {
                if !visited[v] {
                    visited[v] = true;
                    parent[v] = u;
                    dfs(g, v, visited, parent, order);
                }
            }
        }
        dfs(g, root, &mut visited, &mut parent, &mut order);

        for &u in &order {
            let mut bag = Vec::new();
            let mut w = u;
            while w != usize::MAX {
                bag.push(w);
                w = parent[w];
            }
            bag.reverse(); // root first
            let idx = bags.len();
            bags.push(bag);
            bag_of[u] = idx;
            if parent[u] != usize::MAX {
                tree.push((bag_of[parent[u]], idx));
            } else {
                component_roots.push(idx);
            }
        }
    }

    if component_roots.len() > 1 {
        let virtual_root = bags.len();
        bags.push(Vec::new());
        for r in component_roots {
            tree.push((virtual_root, r));
        }
    }
    if bags.is_empty() {
        bags.push(Vec::new()); // empty graph still gets one empty bag
    }
    TreeDecomposition { bags, tree }
}

/// Checks the three decomposition axioms exactly: every vertex covered,
/// every edge inside some bag, and every vertex's occurrence set
/// connected in the tree.
pub fn validate_decomposition(g: &Graph, td: &TreeDecomposition) -> bool {
    let b = td.bags.len();
    // The tree must be a tree over bag indices.
    if !td.tree.iter().all(|&(i, j)| i < b && j < b) {
        return false;
    }
    if b > 0 && td.tree.len() != b - 1 {
        return false;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); b];
    for &(i, j) in &td.tree {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut seen = vec![false; b];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                reached += 1;
                stack.push(v);
            }
        }
    }
    if reached != b {
        return false; // disconnected or cyclic
    }

    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() {
                return false;
            }
            containing[v].push(i);
        }
    }
    if containing.iter().any(|c| c.is_empty()) {
        return false;
    }
    for (u, v) in g.edges() {
        let covered = td
            .bags
            .iter()
            .any(|bag| bag.contains(&u) && bag.contains(&v));
        if !covered {
            return false;
        }
    }
    // Occurrence sets must induce connected subtrees.
    for v in 0..g.n() {
        let occ = &containing[v];
        let inside: std::collections::HashSet<usize> = occ.iter().copied().collect();
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![occ[0]];
        seen.insert(occ[0]);
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if inside.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() != occ.len() {
            return false;
        }
    }
    true
}

pub const DEFAULT_WIDTH_CAP: usize = 12;

#[derive(Debug, Error)]
pub enum DpError {
    #[error("decomposition width {width} exceeds the cap {cap}")]
    WidthExceeded { width: usize, cap: usize },
}

/// Bag-table dynamic programming over a rooted tree decomposition.
/// States are assignments of bag vertices to target vertices respecting
/// target edges and lists; children constrain parents through their
/// shared interface. Agrees with `find_hom` on feasibility.
pub fn dp_hom(
    g: &Graph,
    h: &TargetGraph,
    lists: Option<&ListAssignment>,
    td: &TreeDecomposition,
    width_cap: usize,
) -> Result<Option<HomMapping>, DpError> {
    let width = td.width();
    if width > width_cap {
        return Err(DpError::WidthExceeded {
            width,
            cap: width_cap,
        });
    }
    debug_assert!(validate_decomposition(g, td));
    let hs = h.size();
    if g.n() == 0 {
        return Ok(Some(Vec::new()));
    }
    if hs == 0 {
        return Ok(None);
    }

    let b = td.bags.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); b];
    for &(i, j) in &td.tree {
        adj[i].push(j);
        adj[j].push(i);
    }
    // Root at bag 0; compute children and a post-order.
    let root = 0usize;
    let mut parent = vec![usize::MAX; b];
    let mut order = Vec::with_capacity(b);
    let mut stack = vec![root];
    let mut seen = vec![false; b];
    seen[root] = true;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = u;
                stack.push(v);
            }
        }
    }

    // Per node: the set of locally valid assignments compatible with the
    // whole subtree, plus per-child interface maps for reconstruction.
    type Assign = Vec<u8>;
    let mut table: Vec<Vec<Assign>> = vec![Vec::new(); b];
    let mut child_maps: Vec<HashMap<Assign, Assign>> = vec![HashMap::new(); b];

    for &node in order.iter().rev() {
        let bag = &td.bags[node];
        let children: Vec<usize> = adj[node]
            .iter()
            .copied()
            .filter(|&c| parent[c] == node)
            .collect();
        // Interface projections of children: which assignments of the
        // shared vertices extend through each child subtree.
        let mut interfaces: Vec<(Vec<usize>, std::collections::HashSet<Assign>)> = Vec::new();
        for &c in &children {
            let shared: Vec<usize> = td.bags[c]
                .iter()
                .copied()
                .filter(|v| bag.contains(v))
                .collect();
            let mut proj = std::collections::HashSet::new();
            let mut map = HashMap::new();
            for assign in &table[c] {
                let key: Assign = shared
                    .iter()
                    .map(|v| {
                        let pos = td.bags[c].iter().position(|x| x == v).unwrap();
                        assign[pos]
                    })
                    .collect();
                proj.insert(key.clone());
                map.entry(key).or_insert_with(|| assign.clone());
            }
            child_maps[c] = map;
            interfaces.push((shared, proj));
        }

        // Enumerate assignments of this bag with edge and list pruning.
        let mut valid: Vec<Assign> = Vec::new();
        let mut cur: Assign = Vec::with_capacity(bag.len());
        enumerate_bag(g, h, lists, bag, &mut cur, &mut |assign: &Assign| {
            for (shared, proj) in &interfaces {
                let key: Assign = shared
                    .iter()
                    .map(|v| {
                        let pos = bag.iter().position(|x| x == v).unwrap();
                        assign[pos]
                    })
                    .collect();
                if !proj.contains(&key) {
                    return;
                }
            }
            valid.push(assign.clone());
        });
        if valid.is_empty() {
            // Vertices below this node occur nowhere else, so an empty
            // table dead-ends the whole instance.
            return Ok(None);
        }
        table[node] = valid;
    }

    if table[root].is_empty() {
        return Ok(None);
    }

    // Reconstruct one mapping top-down.
    let mut mapping = vec![usize::MAX; g.n()];
    let mut chosen: Vec<Option<Assign>> = vec![None; b];
    chosen[root] = Some(table[root][0].clone());
    for &node in &order {
        let assign = chosen[node].clone().expect("parent visited first");
        for (pos, &v) in td.bags[node].iter().enumerate() {
            mapping[v] = assign[pos] as usize;
        }
        for &c in &adj[node] {
            if parent[c] != node {
                continue;
            }
            let shared: Vec<usize> = td.bags[c]
                .iter()
                .copied()
                .filter(|v| td.bags[node].contains(v))
                .collect();
            let key: Assign = shared
                .iter()
                .map(|v| {
                    let pos = td.bags[node].iter().position(|x| x == v).unwrap();
                    assign[pos]
                })
                .collect();
            let child_assign = child_maps[c]
                .get(&key)
                .expect("interface admitted by child table")
                .clone();
            chosen[c] = Some(child_assign);
        }
    }
    debug_assert!(mapping.iter().all(|&c| c != usize::MAX));
    Ok(Some(mapping))
}

/// Backtracking enumeration of bag assignments; prunes by lists and by
/// bag-internal edges as vertices are placed.
fn enumerate_bag(
    g: &Graph,
    h: &TargetGraph,
    lists: Option<&ListAssignment>,
    bag: &[usize],
    cur: &mut Vec<u8>,
    yield_fn: &mut impl FnMut(&Vec<u8>),
) {
    if cur.len() == bag.len() {
        yield_fn(cur);
        return;
    }
    let v = bag[cur.len()];
    for c in 0..h.size() {
        if let Some(l) = lists {
            if !l.get(v).contains(&c) {
                continue;
            }
        }
        let ok = (0..cur.len()).all(|i| {
            !g.has_edge(bag[i], v) || h.graph().has_edge(cur[i] as usize, c)
        });
        if !ok {
            continue;
        }
        cur.push(c as u8);
        enumerate_bag(g, h, lists, bag, cur, yield_fn);
        cur.pop();
    }
}

/// Inclusion-minimal induced subgraph that is still not H-list-colorable.
/// Precondition: the instance is infeasible. Deletion tries vertices in
/// ascending id order; minimality is order-independent as a property.
pub fn minimal_obstruction_extract(
    g: &Graph,
    h: &TargetGraph,
    lists: Option<&ListAssignment>,
) -> Vec<usize> {
    debug_assert!(find_hom(g, h, lists).is_none(), "extraction needs an infeasible instance");
    let mut keep: Vec<usize> = g.vertices().collect();
    for v in 0..g.n() {
        let candidate: Vec<usize> = keep.iter().copied().filter(|&u| u != v).collect();
        if candidate.len() == keep.len() {
            continue;
        }
        let sub = g.induced(&candidate);
        let sub_lists = lists.map(|l| l.restricted(&candidate));
        if find_hom(&sub, h, sub_lists.as_ref()).is_none() {
            keep = candidate;
        }
    }
    keep
}

/// Early infeasibility evidence: a clique one larger than the target's
/// clique number can never map into the target.
pub fn clique_precheck(g: &Graph, h: &TargetGraph) -> Option<Vec<usize>> {
    let omega_h = max_clique_size(h.graph());
    if omega_h == 0 {
        return None;
    }
    match max_clique_leq(g, omega_h) {
        CliqueBound::Found(c) => Some(c),
        CliqueBound::Holds => None,
    }
}
