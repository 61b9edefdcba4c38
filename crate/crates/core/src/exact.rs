//! Exact solvers: an exhaustive oracle and a branch-and-bound search for the
//! quadruple Roman domination number, the domination number, and efficient
//! dominating sets.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::approx::greedy_dominating_set;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::labeling::{Labeling, EXEMPT_FROM};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 9;
pub const DEFAULT_DOMINATION_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Optimal,
    /// The wall-clock limit fired; the optimum field holds the incumbent.
    Timeout,
    /// The node limit fired; the optimum field holds the incumbent.
    InfeasibleBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Labeling(Labeling),
    VertexSet(Vec<Vertex>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    pub optimum: u64,
    pub witness: Witness,
    pub nodes_explored: u64,
    pub elapsed_ms: f64,
    pub status: SolveStatus,
}

impl SolveReport {
    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }

    pub fn labeling(&self) -> Option<&Labeling> {
        match &self.witness {
            Witness::Labeling(l) => Some(l),
            Witness::VertexSet(_) => None,
        }
    }

    pub fn vertex_set(&self) -> Option<&[Vertex]> {
        match &self.witness {
            Witness::VertexSet(s) => Some(s),
            Witness::Labeling(_) => None,
        }
    }
}

/// Search limits for [`branch_and_bound_4r`]. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn time(limit: Duration) -> Self {
        Budget { time: Some(limit), nodes: None }
    }

    pub fn nodes(limit: u64) -> Self {
        Budget { time: None, nodes: Some(limit) }
    }
}

/// Exhaustive minimum over all `6ⁿ` labelings.
///
/// Vertices are labeled in id order with labels ascending; the condition at
/// `x` is checked as soon as the last vertex of `N[x]` is labeled, and
/// subtrees that cannot beat the best weight are cut. The first minimum found
/// is the lexicographically smallest one.
pub fn brute_force_4r(g: &Graph, cap: usize) -> Result<SolveReport> {
    let n = g.n();
    if n > cap {
        return Err(Error::Budget(format!("brute force capped at {cap} vertices, graph has {n}")));
    }
    let start = Instant::now();
    // check_at[i]: vertices whose closed neighborhood is complete once vertex i is labeled
    let mut check_at: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for x in g.vertices() {
        let last = g.neighbors(x).last().map_or(x, |&y| y.max(x));
        check_at[last].push(x);
    }

    struct Search<'a> {
        g: &'a Graph,
        check_at: Vec<Vec<Vertex>>,
        cur: Vec<u8>,
        best: u64,
        best_lab: Option<Vec<u8>>,
        nodes: u64,
    }

    impl Search<'_> {
        fn holds(&self, x: Vertex) -> bool {
            if self.cur[x] >= EXEMPT_FROM {
                return true;
            }
            let mut lhs = u64::from(self.cur[x]);
            let mut rhs = 4;
            for &y in self.g.neighbors(x) {
                lhs += u64::from(self.cur[y]);
                rhs += u64::from(self.cur[y] != 0);
            }
            lhs >= rhs
        }

        fn go(&mut self, i: usize, weight: u64) {
            if i == self.cur.len() {
                self.best = weight;
                self.best_lab = Some(self.cur.clone());
                return;
            }
            for label in 0..=5u8 {
                let w = weight + u64::from(label);
                if w >= self.best {
                    break;
                }
                self.nodes += 1;
                self.cur[i] = label;
                if self.check_at[i].iter().all(|&x| self.holds(x)) {
                    self.go(i + 1, w);
                }
            }
            self.cur[i] = 0;
        }
    }

    let mut s = Search { g, check_at, cur: vec![0; n], best: u64::MAX, best_lab: None, nodes: 0 };
    s.go(0, 0);
    let lab = s.best_lab.expect("the all-5 labeling is always valid");
    Ok(SolveReport {
        optimum: s.best,
        witness: Witness::Labeling(Labeling::new(lab)?),
        nodes_explored: s.nodes,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        status: SolveStatus::Optimal,
    })
}

const UNSET: u8 = u8::MAX;
const LABEL_ORDER: [u8; 6] = [0, 5, 4, 3, 2, 1];

/// Per-component branch and bound for one connected piece.
struct Bnb<'a> {
    g: &'a Graph,
    order: Vec<Vertex>,
    lab: Vec<u8>,
    best: u64,
    best_lab: Vec<u8>,
    nodes: u64,
    budget: Budget,
    start: Instant,
    stopped: Option<SolveStatus>,
    // scratch for the packing bound
    used: Vec<bool>,
    needs: Vec<(u64, Vertex)>,
}

impl<'a> Bnb<'a> {
    fn new(g: &'a Graph, budget: Budget, start: Instant) -> Self {
        let n = g.n();
        let mut order: Vec<Vertex> = g.vertices().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let greedy = greedy_dominating_set(g);
        let incumbent = Labeling::fives_on(n, &greedy);
        Bnb {
            g,
            order,
            lab: vec![UNSET; n],
            best: incumbent.weight(),
            best_lab: incumbent.values().to_vec(),
            nodes: 0,
            budget,
            start,
            stopped: None,
            used: vec![false; n],
            needs: Vec::with_capacity(n),
        }
    }

    /// Lower bound on the extra weight any completion must place on
    /// unlabeled vertices, or `None` if some labeled vertex can no longer be
    /// satisfied.
    ///
    /// For a vertex `v` with residual demand `D` (how far `f(v) + Σ (f(u) - [f(u) ≠ 0])`
    /// over labeled neighbors is below 4), an unlabeled `v` needs at least `D`
    /// more weight in `N[v]`, and a labeled `v` needs at least `D + 1` from
    /// unlabeled neighbors. Demands over pairwise disjoint unlabeled parts of
    /// closed neighborhoods add up.
    fn extra_bound(&mut self) -> Option<u64> {
        let g = self.g;
        self.needs.clear();
        for v in g.vertices() {
            let own = self.lab[v];
            if own != UNSET && own >= EXEMPT_FROM {
                continue;
            }
            let mut supply = if own == UNSET { 0 } else { u64::from(own) };
            let mut open = own == UNSET;
            for &u in g.neighbors(v) {
                match self.lab[u] {
                    UNSET => open = true,
                    0 => {}
                    l => supply += u64::from(l - 1),
                }
            }
            if supply >= 4 {
                continue;
            }
            let demand = 4 - supply;
            if !open {
                return None;
            }
            let need = if own == UNSET { demand } else { demand + 1 };
            self.needs.push((need, v));
        }
        self.needs.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let lab = &self.lab;
        let used = &mut self.used;
        used.iter_mut().for_each(|u| *u = false);
        let mut total = 0;
        for &(need, v) in &self.needs {
            let touches = |w: Vertex| lab[w] == UNSET && used[w];
            if touches(v) || g.neighbors(v).iter().any(|&w| touches(w)) {
                continue;
            }
            for w in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
                if lab[w] == UNSET {
                    used[w] = true;
                }
            }
            total += need;
        }
        Some(total)
    }

    fn out_of_budget(&mut self) -> bool {
        if self.stopped.is_some() {
            return true;
        }
        if self.budget.nodes.is_some_and(|limit| self.nodes >= limit) {
            self.stopped = Some(SolveStatus::InfeasibleBudget);
        } else if self.nodes.is_multiple_of(1024)
            && self.budget.time.is_some_and(|limit| self.start.elapsed() >= limit)
        {
            self.stopped = Some(SolveStatus::Timeout);
        }
        self.stopped.is_some()
    }

    fn search(&mut self, depth: usize, weight: u64) {
        let v = self.order[depth];
        for label in LABEL_ORDER {
            let w = weight + u64::from(label);
            if w >= self.best {
                continue;
            }
            if self.out_of_budget() {
                break;
            }
            self.nodes += 1;
            self.lab[v] = label;
            if let Some(extra) = self.extra_bound() {
                if w + extra < self.best {
                    if depth + 1 == self.order.len() {
                        self.best = w;
                        self.best_lab.copy_from_slice(&self.lab);
                    } else {
                        self.search(depth + 1, w);
                    }
                }
            }
        }
        self.lab[v] = UNSET;
    }
}

/// Exact minimum via branch and bound, solving each component separately.
///
/// Branching follows descending degree (ties by id) with labels tried in the
/// order 0, 5, 4, 3, 2, 1; the incumbent starts at the greedy domination
/// labeling. When the budget runs out the report carries the best labeling
/// found so far and a non-optimal status.
pub fn branch_and_bound_4r(g: &Graph, budget: Budget) -> SolveReport {
    let start = Instant::now();
    let mut labels = vec![0u8; g.n()];
    let mut total = 0;
    let mut nodes = 0;
    let mut status = SolveStatus::Optimal;
    for comp in g.components() {
        let sub = g.induced_subgraph(&comp);
        let remaining = Budget { time: budget.time, nodes: budget.nodes.map(|b| b.saturating_sub(nodes)) };
        let mut bnb = Bnb::new(&sub, remaining, start);
        if sub.n() > 0 {
            bnb.search(0, 0);
        }
        if let Some(s) = bnb.stopped {
            if status == SolveStatus::Optimal {
                status = s;
            }
        }
        nodes += bnb.nodes;
        total += bnb.best;
        for (i, &v) in comp.iter().enumerate() {
            labels[v] = bnb.best_lab[i];
        }
    }
    SolveReport {
        optimum: total,
        witness: Witness::Labeling(Labeling::new(labels).expect("labels in range")),
        nodes_explored: nodes,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        status,
    }
}

/// Domination number by iterative deepening over bitmask states.
///
/// Starting from `⌈n / (Δ + 1)⌉`, each round branches on the lowest-id
/// undominated vertex and which member of its closed neighborhood joins the
/// set.
pub fn domination_number(g: &Graph, cap: usize) -> Result<SolveReport> {
    let n = g.n();
    if n > cap || n > 64 {
        return Err(Error::Budget(format!(
            "domination solver capped at {} vertices, graph has {n}",
            cap.min(64)
        )));
    }
    let start = Instant::now();
    let closed: Vec<u64> = g
        .vertices()
        .map(|v| g.closed_neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let reach = g.max_degree() as u32 + 1;

    struct Dfs<'a> {
        g: &'a Graph,
        closed: Vec<u64>,
        full: u64,
        reach: u32,
        chosen: Vec<Vertex>,
        nodes: u64,
    }

    impl Dfs<'_> {
        fn go(&mut self, dominated: u64, left: u32) -> bool {
            if dominated == self.full {
                return true;
            }
            let open = (self.full & !dominated).count_ones();
            if left == 0 || open > left * self.reach {
                return false;
            }
            let u = (self.full & !dominated).trailing_zeros() as Vertex;
            let cands = self.g.closed_neighbors(u);
            for v in cands {
                self.nodes += 1;
                self.chosen.push(v);
                if self.go(dominated | self.closed[v], left - 1) {
                    return true;
                }
                self.chosen.pop();
            }
            false
        }
    }

    let mut dfs = Dfs { g, closed, full, reach, chosen: Vec::new(), nodes: 0 };
    let lower = n.div_ceil(reach as usize) as u32;
    let mut k = lower;
    while !dfs.go(0, k) {
        k += 1;
    }
    let mut set = dfs.chosen.clone();
    set.sort_unstable();
    Ok(SolveReport {
        optimum: set.len() as u64,
        witness: Witness::VertexSet(set),
        nodes_explored: dfs.nodes,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        status: SolveStatus::Optimal,
    })
}

/// A set whose closed neighborhoods partition `V(g)`, if one exists.
///
/// Exact-cover backtracking: the lowest uncovered vertex must be covered by
/// some `N[v]` with `v` in its closed neighborhood, tried in id order.
pub fn find_efficient_dominating_set(g: &Graph) -> Option<Vec<Vertex>> {
    fn go(g: &Graph, covered: &mut [bool], from: usize, chosen: &mut Vec<Vertex>) -> bool {
        let Some(u) = (from..g.n()).find(|&u| !covered[u]) else {
            return true;
        };
        for v in g.closed_neighbors(u) {
            let nv = g.closed_neighbors(v);
            if nv.iter().any(|&w| covered[w]) {
                continue;
            }
            nv.iter().for_each(|&w| covered[w] = true);
            chosen.push(v);
            if go(g, covered, u + 1, chosen) {
                return true;
            }
            chosen.pop();
            nv.iter().for_each(|&w| covered[w] = false);
        }
        false
    }

    let mut covered = vec![false; g.n()];
    let mut chosen = Vec::new();
    go(g, &mut covered, 0, &mut chosen).then(|| {
        chosen.sort_unstable();
        chosen
    })
}
