//! Simple undirected graphs on dense `0..n` vertex ids.
//!
//! Role names used by the gadget builders never live here; they are kept in
//! side maps so that every solver sees the same uniform type.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex identifier.
pub type Vertex = usize;

/// An immutable simple undirected graph stored as sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Open neighborhood, sorted ascending.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// Closed neighborhood `N[v]`, sorted ascending.
    pub fn closed_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.adj[v].len() + 1);
        let pos = self.adj[v].partition_point(|&u| u < v);
        out.extend_from_slice(&self.adj[v][..pos]);
        out.push(v);
        out.extend_from_slice(&self.adj[v][pos..]);
        out
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Maximum degree; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True for graphs with at most one component (the empty graph included).
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// A proper 2-coloring `(A, B)` if the graph has no odd cycle.
    ///
    /// Each component's smallest vertex goes to `A`.
    pub fn bipartition(&self) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
        let mut color: Vec<Option<bool>> = vec![None; self.n()];
        for s in self.vertices() {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in &self.adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let (a, b): (Vec<_>, Vec<_>) = self.vertices().partition(|&v| color[v] == Some(false));
        Some((a, b))
    }

    /// Subgraph induced by `keep`; vertex `keep[i]` becomes `i`.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut nb: Vec<_> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                nb.sort_unstable();
                nb
            })
            .collect::<Vec<_>>();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, m }
    }

    /// Serializes to the edge-list text format (`n m` header, then `u v` with
    /// `u < v` in lexicographic order).
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the edge-list text format. `#` starts a comment; blank lines
    /// are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing `n m` header".into(),
        })?;
        let (n, m) = parse_pair(hline, header, "header")?;

        let mut b = GraphBuilder::new(n);
        let mut count = 0usize;
        for (line, body) in lines {
            let (u, v) = parse_pair(line, body, "edge")?;
            b.add_edge(u, v).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
            count += 1;
        }
        if count != m {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header declares {m} edges but {count} were listed"),
            });
        }
        Ok(b.build())
    }
}

fn parse_pair(line: usize, body: &str, what: &str) -> Result<(usize, usize)> {
    let toks: Vec<&str> = body.split_whitespace().collect();
    let bad = || Error::Parse {
        line,
        msg: format!("malformed {what} `{body}`: expected two non-negative integers"),
    };
    if toks.len() != 2 {
        return Err(bad());
    }
    let a = toks[0].parse().map_err(|_| bad())?;
    let b = toks[1].parse().map_err(|_| bad())?;
    Ok((a, b))
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse(s)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

/// Incremental constructor that enforces the simple-graph invariants.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adj[u].contains(&v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.m += 1;
        Ok(())
    }

    /// Adds the edge unless it is already present.
    pub fn ensure_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if u < self.n() && self.adj[u].contains(&v) {
            return Ok(());
        }
        self.add_edge(u, v)
    }

    pub fn build(mut self) -> Graph {
        for nb in &mut self.adj {
            nb.sort_unstable();
        }
        Graph { adj: self.adj, m: self.m }
    }
}

/// Named graph families with a fixed vertex numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `path [n]`: `0-1-...-(n-1)`, n ≥ 1.
    Path,
    /// `cycle [n]`: path plus edge `(n-1)-0`, n ≥ 3.
    Cycle,
    /// `star [k]`: `K_{1,k}` with center 0 and leaves `1..=k`, k ≥ 1.
    Star,
    /// `comb [k]`: spine `0..k`, pendant `k+i` attached to spine vertex `i`, k ≥ 2.
    Comb,
    /// `complete [n]`: `K_n`, n ≥ 1.
    Complete,
    /// `complete_bipartite [a, b]`: parts `0..a` and `a..a+b`, a, b ≥ 1.
    CompleteBipartite,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "star" => Family::Star,
            "comb" => Family::Comb,
            "complete" => Family::Complete,
            "complete_bipartite" | "complete-bipartite" => Family::CompleteBipartite,
            other => return Err(Error::Invalid(format!("unknown graph family `{other}`"))),
        })
    }
}

/// Builds a member of a named family.
pub fn generate(kind: Family, params: &[usize]) -> Result<Graph> {
    let arity = if kind == Family::CompleteBipartite { 2 } else { 1 };
    if params.len() != arity {
        return Err(Error::Precondition(format!(
            "{kind:?} takes {arity} size parameter(s), got {}",
            params.len()
        )));
    }
    let min = match kind {
        Family::Path | Family::Star | Family::Complete | Family::CompleteBipartite => 1,
        Family::Cycle => 3,
        Family::Comb => 2,
    };
    if let Some(&p) = params.iter().find(|&&p| p < min) {
        return Err(Error::Precondition(format!("{kind:?} requires size ≥ {min}, got {p}")));
    }
    let k = params[0];
    let mut edges = Vec::new();
    let n = match kind {
        Family::Path => {
            edges.extend((1..k).map(|i| (i - 1, i)));
            k
        }
        Family::Cycle => {
            edges.extend((1..k).map(|i| (i - 1, i)));
            edges.push((0, k - 1));
            k
        }
        Family::Star => {
            edges.extend((1..=k).map(|i| (0, i)));
            k + 1
        }
        Family::Comb => {
            edges.extend((1..k).map(|i| (i - 1, i)));
            edges.extend((0..k).map(|i| (i, k + i)));
            2 * k
        }
        Family::Complete => {
            for u in 0..k {
                edges.extend((u + 1..k).map(|v| (u, v)));
            }
            k
        }
        Family::CompleteBipartite => {
            let b = params[1];
            for u in 0..k {
                edges.extend((k..k + b).map(|v| (u, v)));
            }
            k + b
        }
    };
    Graph::from_edges(n, &edges)
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                b.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    b.build()
}

/// A connected random graph: a uniformly shuffled random spanning tree plus
/// independent extra edges with probability `p`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let mut b = GraphBuilder::new(n);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        b.add_edge(order[i], parent).expect("tree edge");
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                b.ensure_edge(u, v).expect("in range");
            }
        }
    }
    b.build()
}

/// A connected random graph with maximum degree at most `max_deg`.
///
/// Grows a random tree respecting the cap, then tries `extra` random edges.
pub fn random_connected_bounded<R: Rng + ?Sized>(
    n: usize,
    max_deg: usize,
    extra: usize,
    rng: &mut R,
) -> Graph {
    assert!(max_deg >= 2 || n <= 2, "a connected graph on {n} vertices needs Δ ≥ 2");
    let mut b = GraphBuilder::new(n);
    let mut deg = vec![0usize; n];
    for i in 1..n {
        let open: Vec<Vertex> = (0..i).filter(|&u| deg[u] < max_deg).collect();
        let parent = *open.choose(rng).expect("a tree with Δ ≥ 2 always has room");
        b.add_edge(i, parent).expect("tree edge");
        deg[i] += 1;
        deg[parent] += 1;
    }
    for _ in 0..extra {
        if n < 2 {
            break;
        }
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && deg[u] < max_deg && deg[v] < max_deg && b.add_edge(u, v).is_ok() {
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    b.build()
}

/// A random threshold graph: vertex `i` joins as isolated or dominating
/// with probability `1 - p_dominating` / `p_dominating`. When `connected` is
/// set and `n ≥ 2`, the last vertex is forced to be dominating.
pub fn random_threshold<R: Rng + ?Sized>(
    n: usize,
    p_dominating: f64,
    connected: bool,
    rng: &mut R,
) -> Graph {
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        let dominating = (connected && v == n - 1) || rng.gen_bool(p_dominating);
        if dominating {
            for u in 0..v {
                b.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    b.build()
}

/// Every labeled simple graph on `n` vertices (all `2^(n choose 2)` adjacency
/// matrices), in mask order.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(pairs.len() < 32, "all_graphs is meant for tiny n");
    (0u32..(1u32 << pairs.len())).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).expect("distinct pairs")
    })
}

/// Disjoint union; vertices of `b` are shifted by `a.n()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.n();
    let edges: Vec<_> = a.edges().chain(b.edges().map(|(u, v)| (u + off, v + off))).collect();
    Graph::from_edges(a.n() + b.n(), &edges).expect("disjoint union is simple")
}

/// Whether `set` dominates `g`: every vertex is in `set` or adjacent to it.
pub fn is_dominating_set(g: &Graph, set: &[Vertex]) -> bool {
    let mut covered = vec![false; g.n()];
    for &v in set {
        if v >= g.n() {
            return false;
        }
        covered[v] = true;
        for &w in g.neighbors(v) {
            covered[w] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

/// Whether the closed neighborhoods of `set` partition `V(g)`.
pub fn is_efficient_dominating_set(g: &Graph, set: &[Vertex]) -> bool {
    let mut hits = vec![0u32; g.n()];
    for &v in set {
        if v >= g.n() {
            return false;
        }
        for w in g.closed_neighbors(v) {
            hits[w] += 1;
        }
    }
    hits.into_iter().all(|h| h == 1)
}
