//! Graph classes with closed-form or bounded quadruple Roman domination
//! numbers: threshold graphs, graphs with an efficient dominating set, and
//! two families attaining the efficient-domination bounds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::find_efficient_dominating_set;
use crate::graph::{is_efficient_dominating_set, Graph, GraphBuilder, Vertex};
use crate::labeling::Labeling;
use crate::roles::RoleMap;

/// Split partition of a threshold graph with nested neighborhoods.
///
/// `N[x₁] ⊆ … ⊆ N[x_p]` along `clique_order` and `N(y₁) ⊇ … ⊇ N(y_q)` along
/// `independent_order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdCertificate {
    pub clique_order: Vec<Vertex>,
    pub independent_order: Vec<Vertex>,
}

fn is_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    // both sorted
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

impl ThresholdCertificate {
    /// The vertex adjacent to every other vertex when `g` is connected.
    pub fn top(&self) -> Option<Vertex> {
        self.clique_order.last().copied()
    }

    /// Checks every structural property against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let mut all: Vec<Vertex> =
            self.clique_order.iter().chain(&self.independent_order).copied().collect();
        all.sort_unstable();
        if all != g.vertices().collect::<Vec<_>>() {
            return false;
        }
        let c = &self.clique_order;
        let i = &self.independent_order;
        let clique = c.iter().enumerate().all(|(k, &a)| c[k + 1..].iter().all(|&b| g.has_edge(a, b)));
        let indep = i.iter().enumerate().all(|(k, &a)| i[k + 1..].iter().all(|&b| !g.has_edge(a, b)));
        let closed_nested =
            c.windows(2).all(|w| is_subset(&g.closed_neighbors(w[0]), &g.closed_neighbors(w[1])));
        let open_nested = i.windows(2).all(|w| is_subset(g.neighbors(w[1]), g.neighbors(w[0])));
        clique && indep && closed_nested && open_nested
    }
}

/// Recognizes threshold graphs by repeatedly removing an isolated vertex
/// (preferred) or a dominating vertex of what remains, lowest id first. The
/// last remaining vertex counts as dominating.
pub fn recognize_threshold(g: &Graph) -> Option<ThresholdCertificate> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut left = n;
    let mut clique = Vec::new();
    let mut indep = Vec::new();
    while left > 0 {
        let pick = if left == 1 {
            g.vertices().find(|&v| alive[v]).map(|v| (v, true))
        } else {
            g.vertices()
                .find(|&v| alive[v] && deg[v] == 0)
                .map(|v| (v, false))
                .or_else(|| g.vertices().find(|&v| alive[v] && deg[v] == left - 1).map(|v| (v, true)))
        };
        let (v, dominating) = pick?;
        alive[v] = false;
        left -= 1;
        for &w in g.neighbors(v) {
            deg[w] -= 1;
        }
        if dominating {
            clique.push(v);
        } else {
            indep.push(v);
        }
    }
    // construction order is the reverse of the stripping order
    clique.reverse();
    indep.reverse();
    let cert = ThresholdCertificate { clique_order: clique, independent_order: indep };
    assert!(cert.verify(g), "stripping produced an inconsistent certificate");
    Some(cert)
}

/// The optimal weight-5 labeling of a connected threshold graph: 5 on the
/// dominating vertex `x_p`, 0 elsewhere.
pub fn threshold_gamma4r(g: &Graph, cert: &ThresholdCertificate) -> Result<Labeling> {
    if g.n() < 2 || !g.is_connected() {
        return Err(Error::Precondition("needs a connected graph with at least 2 vertices".into()));
    }
    if !cert.verify(g) {
        return Err(Error::Precondition("threshold certificate does not match the graph".into()));
    }
    let top = cert.top().expect("connected threshold graphs have a nonempty clique");
    Ok(Labeling::fives_on(g.n(), &[top]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdsBounds {
    pub eds: Vec<Vertex>,
    pub gamma: u64,
    pub lower: u64,
    pub upper: u64,
}

impl EdsBounds {
    /// `has_edge` selects the `+1` in the lower bound. An edgeless graph
    /// has `γ₄ᵣ = 4n = 4γ`, so there the lower bound is `4γ`.
    pub fn from_eds(eds: Vec<Vertex>, has_edge: bool) -> Self {
        let gamma = eds.len() as u64;
        EdsBounds { eds, gamma, lower: 4 * gamma + u64::from(has_edge), upper: 5 * gamma }
    }

    pub fn contains(&self, value: u64) -> bool {
        (self.lower..=self.upper).contains(&value)
    }
}

/// `4γ + 1 ≤ γ₄ᵣ ≤ 5γ` for graphs with an efficient dominating set and at
/// least one edge, where `γ` is that set's size. Edgeless graphs get `4γ`.
pub fn eds_bounds(g: &Graph) -> Option<EdsBounds> {
    find_efficient_dominating_set(g).map(|eds| EdsBounds::from_eds(eds, g.m() > 0))
}

/// Label 5 on an efficient dominating set, 0 elsewhere.
pub fn eds_upper_labeling(g: &Graph, eds: &[Vertex]) -> Result<Labeling> {
    if !is_efficient_dominating_set(g, eds) {
        return Err(Error::Precondition("closed neighborhoods do not partition V".into()));
    }
    Ok(Labeling::fives_on(g.n(), eds))
}

/// A constructed family member with its role names, a witness labeling and
/// an efficient dominating set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyGraph {
    pub graph: Graph,
    pub roles: RoleMap,
    pub witness: Labeling,
    pub eds: Vec<Vertex>,
}

/// Family attaining the lower bound `4γ + 1`.
///
/// Layout: `w` = 0; `gprime` vertex `k` is `1 + k` (named `y` for the
/// universal vertex, `g'_k` otherwise); then `x_1 … x_t`; then copy `i` of
/// `h` with vertex `j` named `h_i_j`. Each `x_i` is joined to all of copy
/// `i`; `w` is joined to every copy vertex and every `gprime` vertex. The
/// witness puts 5 on `w`, 4 on each `x_i`, 0 elsewhere (weight `4t + 5`).
pub fn build_family_f(t: usize, h: &Graph, gprime: &Graph, y: Vertex) -> Result<FamilyGraph> {
    if t < 2 {
        return Err(Error::Precondition(format!("family F needs t ≥ 2, got {t}")));
    }
    if h.is_empty() {
        return Err(Error::Precondition("family F needs a nonempty graph H".into()));
    }
    if y >= gprime.n() || gprime.degree(y) + 1 != gprime.n() {
        return Err(Error::Precondition(format!("vertex {y} is not universal in G'")));
    }
    let gp_off = 1;
    let x_off = gp_off + gprime.n();
    let h_off = x_off + t;
    let n = h_off + t * h.n();
    let copy = |i: usize, j: Vertex| h_off + i * h.n() + j;

    let mut roles = RoleMap::new();
    let mut b = GraphBuilder::new(n);
    roles.insert("w", 0);
    for k in gprime.vertices() {
        roles.insert(if k == y { "y".to_string() } else { format!("g'_{k}") }, gp_off + k);
        b.add_edge(0, gp_off + k)?;
    }
    for (u, v) in gprime.edges() {
        b.add_edge(gp_off + u, gp_off + v)?;
    }
    for i in 0..t {
        roles.insert(format!("x_{}", i + 1), x_off + i);
        for j in h.vertices() {
            roles.insert(format!("h_{}_{j}", i + 1), copy(i, j));
            b.add_edge(x_off + i, copy(i, j))?;
            b.add_edge(0, copy(i, j))?;
        }
        for (u, v) in h.edges() {
            b.add_edge(copy(i, u), copy(i, v))?;
        }
    }
    let graph = b.build();
    let mut witness = Labeling::zeros(n);
    witness.set(0, 5);
    (x_off..h_off).for_each(|x| witness.set(x, 4));
    let mut eds: Vec<Vertex> = std::iter::once(gp_off + y).chain(x_off..h_off).collect();
    eds.sort_unstable();
    Ok(FamilyGraph { graph, roles, witness, eds })
}

/// Family attaining the upper bound `5γ`.
///
/// Layout: original vertex `i` keeps id `i` (`v_i`); its `r` pendants
/// `p_i_1 … p_i_r` follow in vertex order; then for each edge `u < v` in
/// lexicographic order two subdivision vertices `s_u_v_u` (next to `u`) and
/// `s_u_v_v` (next to `v`). The witness is 5 on `V(g)`.
pub fn build_family_fprime(g: &Graph, r: usize) -> Result<FamilyGraph> {
    if r < 5 {
        return Err(Error::Precondition(format!("family F' needs r ≥ 5 pendants, got {r}")));
    }
    if g.is_empty() {
        return Err(Error::Precondition("family F' needs a nonempty graph".into()));
    }
    let n0 = g.n();
    let mut roles = RoleMap::new();
    let mut b = GraphBuilder::new(n0);
    for v in g.vertices() {
        roles.insert(format!("v_{v}"), v);
    }
    for v in g.vertices() {
        for k in 1..=r {
            let p = b.add_vertex();
            roles.insert(format!("p_{v}_{k}"), p);
            b.add_edge(v, p)?;
        }
    }
    for (u, v) in g.edges() {
        let su = b.add_vertex();
        let sv = b.add_vertex();
        roles.insert(format!("s_{u}_{v}_{u}"), su);
        roles.insert(format!("s_{u}_{v}_{v}"), sv);
        b.add_edge(u, su)?;
        b.add_edge(su, sv)?;
        b.add_edge(sv, v)?;
    }
    let graph = b.build();
    let eds: Vec<Vertex> = g.vertices().collect();
    let witness = Labeling::fives_on(graph.n(), &eds);
    Ok(FamilyGraph { graph, roles, witness, eds })
}
