//! Explicit graphs: generalized Bethe trees, line graphs, coronas, and the
//! rooted compositions whose characteristic polynomials the `schwenk`
//! module predicts.
//!
//! All constructors label vertices deterministically, so the same input
//! always yields the same edge list.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bethe::{DegreePrefix, DegreeSequence};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} references a vertex >= {2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("root {0} is not a vertex of a graph with {1} vertices")]
    RootOutOfRange(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct Graph {
    n: usize,
    /// Sorted, each pair with `u < v`.
    edges: Vec<[usize; 2]>,
}

#[derive(Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = GraphError;
    fn try_from(raw: RawGraph) -> Result<Self, GraphError> {
        Graph::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl Graph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            let e = [u.min(v), u.max(v)];
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e[0], e[1]));
            }
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| [u, v]))
            .collect();
        Graph { n, edges }
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| [v - 1, v]).collect();
        Graph { n, edges }
    }

    /// The star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        let edges = (1..=leaves).map(|v| [0, v]).collect();
        Graph {
            n: leaves + 1,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &[u, v] in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Sorted degree sequence, for isomorphism-surrogate comparisons.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &[u, v] in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    /// Delete vertex `v`, relabelling `w > v` as `w - 1`.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let relabel = |w: usize| if w > v { w - 1 } else { w };
        let edges = self
            .edges
            .iter()
            .filter(|e| e[0] != v && e[1] != v)
            .map(|&[a, b]| [relabel(a), relabel(b)])
            .collect();
        Graph {
            n: self.n - 1,
            edges,
        }
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&[a, b]| [a + off, b + off]));
        edges.sort_unstable();
        Graph {
            n: self.n + other.n,
            edges,
        }
    }

    /// Parse the `"u v"` per line edge-list format. Blank lines and lines
    /// starting with `#` are skipped; the vertex count is one more than the
    /// largest label.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut pairs = Vec::new();
        let mut n = 0;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |msg: &str| GraphError::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            let mut it = line.split_whitespace();
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(parse_err("expected two vertex labels"));
            };
            let u: usize = a.parse().map_err(|_| parse_err("bad vertex label"))?;
            let v: usize = b.parse().map_err(|_| parse_err("bad vertex label"))?;
            n = n.max(u + 1).max(v + 1);
            pairs.push((u, v));
        }
        Graph::new(n, pairs)
    }

    pub fn to_edge_list(&self) -> String {
        self.edges
            .iter()
            .map(|[u, v]| format!("{u} {v}\n"))
            .collect()
    }
}

/// A graph with a distinguished root vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootedGraph {
    pub graph: Graph,
    pub root: usize,
}

impl RootedGraph {
    pub fn new(graph: Graph, root: usize) -> Result<Self, GraphError> {
        if root >= graph.n {
            return Err(GraphError::RootOutOfRange(root, graph.n));
        }
        Ok(RootedGraph { graph, root })
    }

    /// `G - root`.
    pub fn without_root(&self) -> Graph {
        self.graph.remove_vertex(self.root)
    }
}

/// The generalized Bethe tree `B(d_1, ..., d_k)`.
///
/// The root (vertex 0, level 1) has degree `d_k`; a vertex at level
/// `2 <= j <= k-1` has one parent and `d_{k-j+1} - 1` children; level `k`
/// holds the leaves. Vertex ids are assigned breadth-first.
pub fn build_bethe_tree(d: &DegreeSequence) -> RootedGraph {
    let k = d.k();
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut next_id = 1usize;
    for level in 1..k {
        // children per vertex on this level
        let children = if level == 1 {
            d.d(k)
        } else {
            d.d(k - level + 1) - 1
        };
        let mut next = Vec::with_capacity(frontier.len() * children);
        for &parent in &frontier {
            for _ in 0..children {
                edges.push((parent, next_id));
                next.push(next_id);
                next_id += 1;
            }
        }
        frontier = next;
    }
    let graph = Graph::new(next_id, edges).expect("tree construction is simple");
    RootedGraph { graph, root: 0 }
}

/// BFS levels (1-based, root = 1) of a rooted graph.
pub fn levels(g: &RootedGraph) -> Vec<Option<usize>> {
    let adj = g.graph.neighbors();
    let mut level = vec![None; g.graph.n];
    level[g.root] = Some(1);
    let mut queue = VecDeque::from([g.root]);
    while let Some(u) = queue.pop_front() {
        let next = level[u].map(|l| l + 1);
        for &w in &adj[u] {
            if level[w].is_none() {
                level[w] = next;
                queue.push_back(w);
            }
        }
    }
    level
}

/// Line graph, with vertex `i` standing for `g.edges()[i]` (so vertices are
/// ordered lexicographically by sorted endpoint pair).
pub fn line_graph(g: &Graph) -> Graph {
    let mut incident = vec![Vec::new(); g.n];
    for (i, &[u, v]) in g.edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut edges = BTreeSet::new();
    for inc in &incident {
        for (a, &x) in inc.iter().enumerate() {
            for &y in &inc[a + 1..] {
                edges.insert([x.min(y), x.max(y)]);
            }
        }
    }
    Graph {
        n: g.edges.len(),
        edges: edges.into_iter().collect(),
    }
}

/// `H = L(B(d_1, ..., d_{k-1}, 1))` rooted at the edge incident with the
/// tree root, together with `H - e`.
#[derive(Debug, Clone)]
pub struct CappedLineGraph {
    pub rooted: RootedGraph,
    pub without_root: Graph,
}

pub fn rooted_line_graph_of_capped_tree(prefix: &DegreePrefix) -> CappedLineGraph {
    let tree = build_bethe_tree(&prefix.capped());
    let line = line_graph(&tree.graph);
    let root = tree
        .graph
        .edges()
        .iter()
        .position(|e| e.contains(&tree.root))
        .expect("capped tree has a root edge");
    let rooted = RootedGraph { graph: line, root };
    let without_root = rooted.without_root();
    CappedLineGraph {
        rooted,
        without_root,
    }
}

/// Corona `g1 ⊗ g2`: `g1` on vertices `0..n1`, then copy `i` of `g2` on
/// `n1 + i*n2 ..`, with vertex `i` of `g1` joined to all of copy `i`.
pub fn corona(g1: &Graph, g2: &Graph) -> Graph {
    let (n1, n2) = (g1.n, g2.n);
    let mut edges: Vec<[usize; 2]> = g1.edges.clone();
    for i in 0..n1 {
        let off = n1 + i * n2;
        edges.extend(g2.edges.iter().map(|&[a, b]| [a + off, b + off]));
        edges.extend((0..n2).map(|j| [i, off + j]));
    }
    edges.sort_unstable();
    Graph {
        n: n1 + n1 * n2,
        edges,
    }
}

/// Coalescence `G · H`: identify the root of `g` with the root of `h`.
/// The merged vertex keeps `g`'s label; the other vertices of `h` follow
/// `g`'s in their original order.
pub fn coalesce(g: &RootedGraph, h: &RootedGraph) -> RootedGraph {
    let off = g.graph.n;
    let map = |w: usize| -> usize {
        if w == h.root {
            g.root
        } else if w < h.root {
            off + w
        } else {
            off + w - 1
        }
    };
    let edges = g
        .graph
        .edges
        .iter()
        .map(|&[a, b]| (a, b))
        .chain(h.graph.edges.iter().map(|&[a, b]| (map(a), map(b))));
    let graph = Graph::new(off + h.graph.n - 1, edges).expect("coalescence is simple");
    RootedGraph {
        graph,
        root: g.root,
    }
}

/// Attach a copy of `h` at each vertex in `targets` of `g0` by identifying
/// the target with `h`'s root.
pub fn attach_rooted(g0: &Graph, h: &RootedGraph, targets: &[usize]) -> Graph {
    let mut acc = RootedGraph {
        graph: g0.clone(),
        root: 0,
    };
    for &t in targets {
        acc.root = t;
        acc = coalesce(&acc, h);
    }
    acc.graph
}

/// Random labelled tree on `n >= 1` vertices: vertex `i` attaches to a
/// uniformly chosen earlier vertex, then labels are shuffled.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let edges = (1..n).map(|v| (perm[rng.gen_range(0..v)], perm[v]));
    Graph::new(n, edges).expect("random tree is simple")
}

pub fn random_rooted_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RootedGraph {
    let graph = random_tree(n, rng);
    let root = rng.gen_range(0..n);
    RootedGraph { graph, root }
}

/// Erdős–Rényi style graph with edge probability `p`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push([u, v]);
            }
        }
    }
    Graph { n, edges }
}

/// Recover the degree sequence of a generalized Bethe tree, trying every
/// vertex as the root (lowest label first). `None` if `g` is not one.
pub fn recognize_bethe_tree(g: &Graph) -> Option<(DegreeSequence, usize)> {
    if !g.is_tree() || g.n < 2 {
        return None;
    }
    let deg = g.degrees();
    (0..g.n).find_map(|root| {
        let rooted = RootedGraph {
            graph: g.clone(),
            root,
        };
        let lv = levels(&rooted);
        let k = lv.iter().flatten().copied().max()?;
        // per level: the common degree of its vertices
        let mut level_degree = vec![None; k + 1];
        for (v, l) in lv.iter().enumerate() {
            let l = (*l)?;
            match level_degree[l] {
                None => level_degree[l] = Some(deg[v]),
                Some(x) if x != deg[v] => return None,
                _ => {}
            }
        }
        // level j has degree d_{k-j+1}
        let d: Vec<usize> = (1..=k)
            .map(|i| level_degree[k - i + 1].unwrap_or(0))
            .collect();
        let seq = DegreeSequence::new(d).ok()?;
        (build_bethe_tree(&seq).graph.degree_multiset() == g.degree_multiset())
            .then_some((seq, root))
    })
}
