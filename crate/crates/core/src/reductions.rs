//! Reduction gadgets from EXACT-3-COVER to the 4RDF decision problem.
//!
//! Each builder numbers vertices in a fixed order so that output graphs are
//! byte-reproducible: `b`, `b'`, the `b_i` leaves, the set vertices `C_j`,
//! then `x_i`, `y_i`, `x'_i`, `y'_i`, each block ascending. All indices in
//! role names are 0-based and match the element and set indices of the
//! instance.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_cover::EtcInstance;
use crate::graph::{Graph, GraphBuilder, Vertex};
use crate::labeling::{verify, Labeling};
use crate::planarity::is_planar;
use crate::roles::RoleMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GadgetKind {
    Star,
    Comb,
    Split,
    Planar,
}

impl FromStr for GadgetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "star" => GadgetKind::Star,
            "comb" => GadgetKind::Comb,
            "split" => GadgetKind::Split,
            "planar" => GadgetKind::Planar,
            other => return Err(Error::Invalid(format!("unknown gadget `{other}`"))),
        })
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GadgetKind::Star => "star",
            GadgetKind::Comb => "comb",
            GadgetKind::Split => "split",
            GadgetKind::Planar => "planar",
        })
    }
}

/// Minimum `r` for which the comb gadget's witness is valid.
pub const COMB_MIN_R: usize = 4;

/// Vertex id blocks of a gadget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub b: Option<Vertex>,
    pub b_prime: Option<Vertex>,
    pub leaves: Range<Vertex>,
    pub sets: Range<Vertex>,
    pub xs: Range<Vertex>,
    pub ys: Range<Vertex>,
    pub x_primes: Range<Vertex>,
    pub y_primes: Range<Vertex>,
}

impl Layout {
    pub fn new(kind: GadgetKind, r: usize, s: usize) -> Self {
        let (hubs, leaves, paired, primed) = match kind {
            GadgetKind::Star => (1, 14 * r + 6, true, false),
            GadgetKind::Comb => (2, 26 * r + 6, true, true),
            GadgetKind::Split | GadgetKind::Planar => (0, 0, false, false),
        };
        let u = 3 * r;
        let mut next = hubs;
        let mut block = |len: usize| {
            let range = next..next + len;
            next += len;
            range
        };
        let leaves = block(leaves);
        let sets = block(s);
        let xs = block(u);
        let ys = block(if paired { u } else { 0 });
        let x_primes = block(if primed { u } else { 0 });
        let y_primes = block(if primed { u } else { 0 });
        Layout {
            b: (hubs >= 1).then_some(0),
            b_prime: (hubs >= 2).then_some(1),
            leaves,
            sets,
            xs,
            ys,
            x_primes,
            y_primes,
        }
    }

    pub fn n(&self) -> usize {
        self.y_primes.end
    }

    pub fn set(&self, j: usize) -> Vertex {
        self.sets.start + j
    }

    pub fn x(&self, i: usize) -> Vertex {
        self.xs.start + i
    }

    fn roles(&self) -> RoleMap {
        let mut roles = RoleMap::new();
        if let Some(b) = self.b {
            roles.insert("b", b);
        }
        if let Some(b) = self.b_prime {
            roles.insert("b'", b);
        }
        for (prefix, range) in [
            ("b_", &self.leaves),
            ("C_", &self.sets),
            ("x_", &self.xs),
            ("y_", &self.ys),
            ("x'_", &self.x_primes),
            ("y'_", &self.y_primes),
        ] {
            for (i, v) in range.clone().enumerate() {
                roles.insert(format!("{prefix}{i}"), v);
            }
        }
        roles
    }
}

/// Structural evidence that a gadget lies in its target graph class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    /// Bipartite with side `part_p`; every vertex outside `part_p` has a
    /// neighborhood that induces a connected subtree of `tree`.
    TreeConvex { part_p: Vec<Vertex>, tree: Vec<(Vertex, Vertex)> },
    Split { clique: Vec<Vertex>, independent: Vec<Vertex> },
    /// Bipartite incidence graph with the recorded planarity verdict.
    Incidence { planar: bool },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GadgetGraph {
    pub kind: GadgetKind,
    pub r: usize,
    pub s: usize,
    pub graph: Graph,
    pub roles: RoleMap,
    /// Decision bound `l`; none for the planar incidence graph.
    pub threshold: Option<u64>,
    pub layout: Layout,
    pub certificate: Certificate,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    kind: GadgetKind,
    r: usize,
    s: usize,
    threshold: Option<u64>,
    roles: &'a RoleMap,
    certificate: &'a Certificate,
}

impl GadgetGraph {
    /// `{"kind", "r", "s", "threshold", "roles", "certificate"}`.
    pub fn sidecar_json(&self) -> serde_json::Value {
        serde_json::to_value(Sidecar {
            kind: self.kind,
            r: self.r,
            s: self.s,
            threshold: self.threshold,
            roles: &self.roles,
            certificate: &self.certificate,
        })
        .expect("sidecar serializes")
    }

    /// Re-checks the certificate against the graph.
    pub fn verify_structure(&self) -> Result<bool> {
        if !self.roles.is_bijection_onto(self.graph.n()) {
            return Ok(false);
        }
        Ok(match &self.certificate {
            Certificate::TreeConvex { part_p, tree } => check_tree_convexity(&self.graph, part_p, tree)?,
            Certificate::Split { clique, independent } => is_split_partition(&self.graph, clique, independent),
            Certificate::Incidence { planar } => {
                self.graph.bipartition().is_some() && *planar == is_planar(&self.graph)
            }
        })
    }
}

fn add_membership_edges(b: &mut GraphBuilder, lay: &Layout, inst: &EtcInstance) -> Result<()> {
    for (j, set) in inst.sets().iter().enumerate() {
        for &x in set {
            b.add_edge(lay.x(x), lay.set(j))?;
        }
    }
    Ok(())
}

/// Star-convex bipartite gadget with threshold `14r + 5`.
pub fn build_star_convex(inst: &EtcInstance) -> Result<GadgetGraph> {
    let (r, s) = (inst.r(), inst.s());
    let lay = Layout::new(GadgetKind::Star, r, s);
    let b0 = lay.b.unwrap();
    let mut b = GraphBuilder::new(lay.n());
    for v in lay.leaves.clone().chain(lay.sets.clone()) {
        b.add_edge(b0, v)?;
    }
    add_membership_edges(&mut b, &lay, inst)?;
    for (x, y) in lay.xs.clone().zip(lay.ys.clone()) {
        b.add_edge(x, y)?;
    }
    let part_p: Vec<Vertex> = std::iter::once(b0).chain(lay.xs.clone()).collect();
    let tree = lay.xs.clone().map(|x| (b0, x)).collect();
    Ok(GadgetGraph {
        kind: GadgetKind::Star,
        r,
        s,
        graph: b.build(),
        roles: lay.roles(),
        threshold: Some(14 * r as u64 + 5),
        layout: lay,
        certificate: Certificate::TreeConvex { part_p, tree },
    })
}

/// Comb-convex bipartite gadget with threshold `26r + 5`; needs `r ≥ 4`.
///
/// The certified comb has spine `b', x'_0, …, x'_{3r-1}` with `b` hanging
/// from `b'` and `x_i` hanging from `x'_i`.
pub fn build_comb_convex(inst: &EtcInstance) -> Result<GadgetGraph> {
    let (r, s) = (inst.r(), inst.s());
    if r < COMB_MIN_R {
        return Err(Error::Precondition(format!("comb gadget needs r ≥ {COMB_MIN_R}, got r = {r}")));
    }
    let lay = Layout::new(GadgetKind::Comb, r, s);
    let (b0, b1) = (lay.b.unwrap(), lay.b_prime.unwrap());
    let mut b = GraphBuilder::new(lay.n());
    for v in lay.leaves.clone().chain(lay.sets.clone()) {
        b.add_edge(b0, v)?;
    }
    for c in lay.sets.clone() {
        b.add_edge(b1, c)?;
        for xp in lay.x_primes.clone() {
            b.add_edge(c, xp)?;
        }
    }
    add_membership_edges(&mut b, &lay, inst)?;
    for (x, y) in lay.xs.clone().zip(lay.ys.clone()).chain(lay.x_primes.clone().zip(lay.y_primes.clone())) {
        b.add_edge(x, y)?;
    }

    let spine: Vec<Vertex> = std::iter::once(b1).chain(lay.x_primes.clone()).collect();
    let hanging: Vec<Vertex> = std::iter::once(b0).chain(lay.xs.clone()).collect();
    let mut tree: Vec<(Vertex, Vertex)> = spine.windows(2).map(|w| (w[0], w[1])).collect();
    tree.extend(spine.iter().zip(&hanging).map(|(&s, &h)| (s, h)));
    let mut part_p = [spine, hanging].concat();
    part_p.sort_unstable();
    Ok(GadgetGraph {
        kind: GadgetKind::Comb,
        r,
        s,
        graph: b.build(),
        roles: lay.roles(),
        threshold: Some(26 * r as u64 + 5),
        layout: lay,
        certificate: Certificate::TreeConvex { part_p, tree },
    })
}

/// Split gadget (clique on the set vertices) with threshold `5r`.
pub fn build_split(inst: &EtcInstance) -> Result<GadgetGraph> {
    let (r, s) = (inst.r(), inst.s());
    let lay = Layout::new(GadgetKind::Split, r, s);
    let mut b = GraphBuilder::new(lay.n());
    for c in lay.sets.clone() {
        for d in c + 1..lay.sets.end {
            b.add_edge(c, d)?;
        }
    }
    add_membership_edges(&mut b, &lay, inst)?;
    Ok(GadgetGraph {
        kind: GadgetKind::Split,
        r,
        s,
        graph: b.build(),
        roles: lay.roles(),
        threshold: Some(5 * r as u64),
        certificate: Certificate::Split { clique: lay.sets.clone().collect(), independent: lay.xs.clone().collect() },
        layout: lay,
    })
}

/// Element–set incidence graph; the planarity verdict is recorded, no
/// threshold is set.
pub fn build_petc_graph(inst: &EtcInstance) -> Result<GadgetGraph> {
    let (r, s) = (inst.r(), inst.s());
    let lay = Layout::new(GadgetKind::Planar, r, s);
    let mut b = GraphBuilder::new(lay.n());
    add_membership_edges(&mut b, &lay, inst)?;
    let graph = b.build();
    let planar = is_planar(&graph);
    Ok(GadgetGraph {
        kind: GadgetKind::Planar,
        r,
        s,
        graph,
        roles: lay.roles(),
        threshold: None,
        layout: lay,
        certificate: Certificate::Incidence { planar },
    })
}

pub fn build_gadget(kind: GadgetKind, inst: &EtcInstance) -> Result<GadgetGraph> {
    match kind {
        GadgetKind::Star => build_star_convex(inst),
        GadgetKind::Comb => build_comb_convex(inst),
        GadgetKind::Split => build_split(inst),
        GadgetKind::Planar => build_petc_graph(inst),
    }
}

fn check_cover(inst: &EtcInstance, cover: &[usize]) -> Result<()> {
    if !inst.is_exact_cover(cover) {
        return Err(Error::Precondition(format!("{cover:?} is not an exact cover")));
    }
    Ok(())
}

/// 5 on `b`, 4 on every `y_i`, 2 on each chosen set, 0 elsewhere
/// (weight `14r + 5`).
pub fn star_witness(inst: &EtcInstance, cover: &[usize]) -> Result<Labeling> {
    check_cover(inst, cover)?;
    let lay = Layout::new(GadgetKind::Star, inst.r(), inst.s());
    let mut f = Labeling::zeros(lay.n());
    f.set(lay.b.unwrap(), 5);
    lay.ys.clone().for_each(|y| f.set(y, 4));
    cover.iter().for_each(|&j| f.set(lay.set(j), 2));
    Ok(f)
}

/// 5 on `b`, 4 on every `y_i` and `y'_i`, 2 on each chosen set, 0 elsewhere
/// (weight `26r + 5`).
pub fn comb_witness(inst: &EtcInstance, cover: &[usize]) -> Result<Labeling> {
    if inst.r() < COMB_MIN_R {
        return Err(Error::Precondition(format!("comb gadget needs r ≥ {COMB_MIN_R}")));
    }
    check_cover(inst, cover)?;
    let lay = Layout::new(GadgetKind::Comb, inst.r(), inst.s());
    let mut f = Labeling::zeros(lay.n());
    f.set(lay.b.unwrap(), 5);
    lay.ys.clone().chain(lay.y_primes.clone()).for_each(|y| f.set(y, 4));
    cover.iter().for_each(|&j| f.set(lay.set(j), 2));
    Ok(f)
}

/// 5 on each chosen set, 0 elsewhere (weight `5r`).
pub fn split_witness(inst: &EtcInstance, cover: &[usize]) -> Result<Labeling> {
    check_cover(inst, cover)?;
    let lay = Layout::new(GadgetKind::Split, inst.r(), inst.s());
    let mut f = Labeling::zeros(lay.n());
    cover.iter().for_each(|&j| f.set(lay.set(j), 5));
    Ok(f)
}

/// Witness for any gadget kind that has one.
pub fn witness(kind: GadgetKind, inst: &EtcInstance, cover: &[usize]) -> Result<Labeling> {
    match kind {
        GadgetKind::Star => star_witness(inst, cover),
        GadgetKind::Comb => comb_witness(inst, cover),
        GadgetKind::Split => split_witness(inst, cover),
        GadgetKind::Planar => Err(Error::Precondition("the incidence graph has no witness labeling".into())),
    }
}

/// Reads a cover off a light 4RDF of the split gadget: the sets labeled 5.
///
/// `f` must be valid with weight at most `5r`. Returns `None` if the sets
/// labeled 5 do not form an exact cover.
pub fn extract_cover_from_split(gg: &GadgetGraph, inst: &EtcInstance, f: &Labeling) -> Result<Option<Vec<usize>>> {
    if gg.kind != GadgetKind::Split {
        return Err(Error::Precondition(format!("expected a split gadget, got {}", gg.kind)));
    }
    let rep = verify(&gg.graph, f)?;
    if !rep.valid {
        return Err(Error::Precondition("labeling is not a valid 4RDF".into()));
    }
    let bound = 5 * gg.r as u64;
    if rep.weight > bound {
        return Err(Error::Precondition(format!("weight {} exceeds 5r = {bound}", rep.weight)));
    }
    let cover: Vec<usize> = (0..gg.s).filter(|&j| f.get(gg.layout.set(j)) == 5).collect();
    Ok(inst.is_exact_cover(&cover).then_some(cover))
}

/// Whether every vertex outside `part_p` has a neighborhood inducing a
/// connected subgraph of `tree` (a spanning tree on `part_p`).
///
/// Fails if `tree` does not span `part_p` or `part_p` is not one side of a
/// bipartition of `g`.
pub fn check_tree_convexity(g: &Graph, part_p: &[Vertex], tree: &[(Vertex, Vertex)]) -> Result<bool> {
    let n = g.n();
    let mut in_p = vec![false; n];
    for &p in part_p {
        if p >= n {
            return Err(Error::VertexOutOfRange { vertex: p, n });
        }
        in_p[p] = true;
    }
    let tree_graph = Graph::from_edges(n, tree)
        .map_err(|e| Error::Precondition(format!("tree is not a simple graph: {e}")))?;
    let spans = tree.len() + 1 == part_p.len()
        && tree.iter().all(|&(u, v)| in_p[u] && in_p[v])
        && connected_within(&tree_graph, part_p, &in_p);
    if !spans {
        return Err(Error::Precondition("tree does not span P".into()));
    }
    if g.edges().any(|(u, v)| in_p[u] == in_p[v]) {
        return Err(Error::Precondition("P is not a side of a bipartition".into()));
    }
    Ok(g.vertices().filter(|&v| !in_p[v]).all(|v| {
        let nb = g.neighbors(v);
        let mut mark = vec![false; n];
        nb.iter().for_each(|&w| mark[w] = true);
        connected_within(&tree_graph, nb, &mark)
    }))
}

/// Whether `set` induces a connected subgraph of `g` (`mark` flags `set`).
fn connected_within(g: &Graph, set: &[Vertex], mark: &[bool]) -> bool {
    let Some(&s) = set.first() else {
        return true;
    };
    let mut seen = vec![false; g.n()];
    seen[s] = true;
    let mut count = 1;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if mark[w] && !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count == set.len()
}

/// Whether `clique ∪ independent` partitions `V(g)` into a clique and an
/// independent set.
pub fn is_split_partition(g: &Graph, clique: &[Vertex], independent: &[Vertex]) -> bool {
    let mut all: Vec<Vertex> = clique.iter().chain(independent).copied().collect();
    all.sort_unstable();
    if all != g.vertices().collect::<Vec<_>>() {
        return false;
    }
    let pairs = |s: &[Vertex], adjacent: bool| {
        s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| g.has_edge(a, b) == adjacent))
    };
    pairs(clique, true) && pairs(independent, false)
}
