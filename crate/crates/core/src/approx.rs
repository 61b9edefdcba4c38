//! Greedy domination, the 5-times-greedy 4RDF approximation, and the pendant
//! construction `H` that links 4RDFs of `H` to dominating sets of `G`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{branch_and_bound_4r, domination_number, Budget};
use crate::graph::{Graph, GraphBuilder, Vertex};
use crate::labeling::{is_valid, Labeling};

/// Slack used when comparing against the logarithmic ratio bound.
pub const RATIO_SLACK: f64 = 1e-9;

/// Greedy dominating set: repeatedly take the vertex whose closed
/// neighborhood covers the most still-uncovered vertices (smallest id on
/// ties) until everything is covered. Returned sorted.
pub fn greedy_dominating_set(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut covered = vec![false; n];
    let mut left = n;
    let mut set = Vec::new();
    while left > 0 {
        let gain = |v: Vertex| {
            usize::from(!covered[v]) + g.neighbors(v).iter().filter(|&&w| !covered[w]).count()
        };
        let (best, _) = g
            .vertices()
            .map(|v| (v, gain(v)))
            .fold((usize::MAX, 0), |acc, (v, c)| if c > acc.1 { (v, c) } else { acc });
        for w in g.closed_neighbors(best) {
            if !covered[w] {
                covered[w] = true;
                left -= 1;
            }
        }
        set.push(best);
    }
    set.sort_unstable();
    set
}

/// `5 (1 + ln(Δ + 1))`.
pub fn ratio_bound(max_degree: usize) -> f64 {
    5.0 * (1.0 + ((max_degree + 1) as f64).ln())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApproxReport {
    pub labeling: Labeling,
    /// The dominating set that received label 5.
    pub dominating_set: Vec<Vertex>,
    pub weight: u64,
    pub ratio_bound: f64,
    pub exact_ratio: Option<f64>,
}

impl ApproxReport {
    /// Records `weight / optimum` given an exact optimum.
    pub fn with_optimum(mut self, optimum: u64) -> Self {
        self.exact_ratio = (optimum > 0).then(|| self.weight as f64 / optimum as f64);
        self
    }

    /// `weight ≤ ratio_bound · optimum`, with [`RATIO_SLACK`] on the bound.
    pub fn within_bound(&self, optimum: u64) -> bool {
        self.weight as f64 <= (self.ratio_bound + RATIO_SLACK) * optimum as f64
    }
}

/// Label 5 on a greedy dominating set and 0 elsewhere.
pub fn qrd_approx(g: &Graph) -> ApproxReport {
    let set = greedy_dominating_set(g);
    let labeling = Labeling::fives_on(g.n(), &set);
    ApproxReport {
        weight: labeling.weight(),
        labeling,
        dominating_set: set,
        ratio_bound: ratio_bound(g.max_degree()),
        exact_ratio: None,
    }
}

/// `G` with one pendant vertex `bᵢ` hung on every vertex `vᵢ`.
///
/// Vertex `vᵢ` keeps id `i`; its pendant `bᵢ` gets id `n + i`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HGraph {
    pub graph: Graph,
    pub original: Vec<Vertex>,
    pub pendant: Vec<Vertex>,
}

impl HGraph {
    pub fn source_n(&self) -> usize {
        self.original.len()
    }
}

pub fn build_h_graph(g: &Graph) -> Result<HGraph> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Precondition("H construction needs at least one vertex".into()));
    }
    let mut b = GraphBuilder::new(2 * n);
    for (u, v) in g.edges() {
        b.add_edge(u, v)?;
    }
    for i in 0..n {
        b.add_edge(i, n + i)?;
    }
    Ok(HGraph { graph: b.build(), original: (0..n).collect(), pendant: (n..2 * n).collect() })
}

/// Moves a 5 from a pendant onto its 0-labeled anchor: wherever
/// `(f(vᵢ), f(bᵢ)) = (0, 5)`, the output has `(5, 0)`. Weight and validity
/// are preserved.
pub fn normalize_pendant_labels(h: &HGraph, f: &Labeling) -> Result<Labeling> {
    if !is_valid(&h.graph, f)? {
        return Err(Error::Precondition("input is not a valid 4RDF of H".into()));
    }
    let mut out = f.clone();
    for (&v, &b) in h.original.iter().zip(&h.pendant) {
        if f.get(v) == 0 && f.get(b) == 5 {
            out.set(v, 5);
            out.set(b, 0);
        }
    }
    Ok(out)
}

/// `T = {vᵢ : f(vᵢ) + f(bᵢ) ≥ 5}` as source-graph vertex ids.
///
/// `f` must be a valid 4RDF of `H` with no `(0, 5)` anchor/pendant pair.
pub fn extract_dominating_set(h: &HGraph, f: &Labeling) -> Result<Vec<Vertex>> {
    if !is_valid(&h.graph, f)? {
        return Err(Error::Precondition("input is not a valid 4RDF of H".into()));
    }
    let mut t = Vec::new();
    for (i, (&v, &b)) in h.original.iter().zip(&h.pendant).enumerate() {
        if f.get(v) == 0 && f.get(b) == 5 {
            return Err(Error::Precondition(format!("pendant pair {i} is not normalized")));
        }
        if f.get(v) + f.get(b) >= 5 {
            t.push(i);
        }
    }
    Ok(t)
}

/// Where [`ds_approx`] obtains its 4RDF of `H`.
#[derive(Debug, Clone, Copy)]
pub enum Backend {
    Greedy,
    Exact(Budget),
}

impl Backend {
    pub fn labeling(&self, g: &Graph) -> Labeling {
        match self {
            Backend::Greedy => qrd_approx(g).labeling,
            Backend::Exact(budget) => branch_and_bound_4r(g, *budget)
                .labeling()
                .cloned()
                .expect("4RDF solver returns a labeling"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsApproxOutcome {
    pub set: Vec<Vertex>,
    /// True when a dominating set smaller than `k` was found directly.
    pub small_set_found: bool,
}

/// Dominating set via the pendant construction.
///
/// If some dominating set has fewer than `k` vertices (decided exactly, for
/// graphs of at most `dom_cap` vertices), a minimum one is returned.
/// Otherwise a 4RDF of `H` from `backend` is normalized and the heavy
/// anchor/pendant pairs are read off.
pub fn ds_approx(g: &Graph, k: usize, backend: Backend, dom_cap: usize) -> Result<DsApproxOutcome> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let exact = domination_number(g, dom_cap)?;
    if (exact.optimum as usize) < k {
        let set = exact.vertex_set().expect("domination witness").to_vec();
        return Ok(DsApproxOutcome { set, small_set_found: true });
    }
    let h = build_h_graph(g)?;
    let f = backend.labeling(&h.graph);
    let norm = normalize_pendant_labels(&h, &f)?;
    let set = extract_dominating_set(&h, &norm)?;
    Ok(DsApproxOutcome { set, small_set_found: false })
}
