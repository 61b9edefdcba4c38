//! Planarity testing by incremental path embedding
//! (Demoucron–Malgrange–Pertuiset), applied block by block.

use std::collections::VecDeque;

use crate::graph::{Graph, Vertex};

/// Whether `g` admits a plane embedding.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return false;
    }
    biconnected_blocks(g).iter().all(|edges| block_is_planar(edges))
}

/// Edge sets of the biconnected components (bridges form their own block).
fn biconnected_blocks(g: &Graph) -> Vec<Vec<(Vertex, Vertex)>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(Vertex, Vertex)>,
        blocks: Vec<Vec<(Vertex, Vertex)>>,
    }

    impl State<'_> {
        fn dfs(&mut self, u: Vertex, parent: Option<Vertex>) {
            self.time += 1;
            self.disc[u] = self.time;
            self.low[u] = self.time;
            for &w in self.g.neighbors(u) {
                if self.disc[w] == 0 {
                    self.stack.push((u, w));
                    self.dfs(w, Some(u));
                    self.low[u] = self.low[u].min(self.low[w]);
                    if self.low[w] >= self.disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = self.stack.pop() {
                            block.push(e);
                            if e == (u, w) {
                                break;
                            }
                        }
                        self.blocks.push(block);
                    }
                } else if Some(w) != parent && self.disc[w] < self.disc[u] {
                    self.stack.push((u, w));
                    self.low[u] = self.low[u].min(self.disc[w]);
                }
            }
        }
    }

    let n = g.n();
    let mut st = State {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in g.vertices() {
        if st.disc[v] == 0 {
            st.dfs(v, None);
        }
    }
    st.blocks
}

fn block_is_planar(edges: &[(Vertex, Vertex)]) -> bool {
    let mut ids: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let n = ids.len();
    if n <= 4 || edges.len() < 9 {
        return true;
    }
    if edges.len() > 3 * n - 6 {
        return false;
    }
    let local = |v: Vertex| ids.binary_search(&v).unwrap();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        let (a, b) = (local(u), local(v));
        adj[a].push(b);
        adj[b].push(a);
    }
    Embedder::new(adj).run()
}

struct Embedder {
    adj: Vec<Vec<usize>>,
    placed_v: Vec<bool>,
    placed_e: Vec<Vec<bool>>,
    faces: Vec<Vec<usize>>,
}

struct Fragment {
    contacts: Vec<usize>,
    /// Unplaced interior vertices; empty for a single chord edge.
    interior: Vec<usize>,
}

impl Embedder {
    fn new(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        Embedder { adj, placed_v: vec![false; n], placed_e: vec![vec![false; n]; n], faces: Vec::new() }
    }

    fn place_edge(&mut self, u: usize, v: usize) {
        self.placed_e[u][v] = true;
        self.placed_e[v][u] = true;
    }

    /// Any cycle, found by DFS from vertex 0 (blocks with ≥ 3 vertices have one).
    fn initial_cycle(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut stack = vec![(0usize, usize::MAX)];
        while let Some((u, p)) = stack.pop() {
            if seen[u] {
                continue;
            }
            seen[u] = true;
            parent[u] = p;
            for &w in &self.adj[u] {
                if w == p {
                    continue;
                }
                if seen[w] {
                    // back edge u–w closes a cycle through the DFS tree
                    let mut cyc = vec![u];
                    let mut x = u;
                    while x != w && parent[x] != usize::MAX {
                        x = parent[x];
                        cyc.push(x);
                    }
                    if x == w {
                        return cyc;
                    }
                } else {
                    stack.push((w, u));
                }
            }
        }
        unreachable!("biconnected block without a cycle")
    }

    fn fragments(&self) -> Vec<Fragment> {
        let n = self.adj.len();
        let mut out = Vec::new();
        for u in 0..n {
            if !self.placed_v[u] {
                continue;
            }
            for &v in &self.adj[u] {
                if u < v && self.placed_v[v] && !self.placed_e[u][v] {
                    out.push(Fragment { contacts: vec![u, v], interior: Vec::new() });
                }
            }
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if self.placed_v[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut interior = vec![s];
            let mut contacts = Vec::new();
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if self.placed_v[w] {
                        contacts.push(w);
                    } else if !seen[w] {
                        seen[w] = true;
                        interior.push(w);
                        queue.push_back(w);
                    }
                }
            }
            contacts.sort_unstable();
            contacts.dedup();
            out.push(Fragment { contacts, interior });
        }
        out
    }

    /// A path `u, …, v` between two distinct contacts through the fragment.
    fn fragment_path(&self, frag: &Fragment) -> Vec<usize> {
        let (u, v) = (frag.contacts[0], frag.contacts[1]);
        if frag.interior.is_empty() {
            return vec![u, v];
        }
        let n = self.adj.len();
        let mut inside = vec![false; n];
        frag.interior.iter().for_each(|&x| inside[x] = true);
        let mut prev = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for &x in &self.adj[u] {
            if inside[x] && prev[x] == usize::MAX {
                prev[x] = u;
                queue.push_back(x);
            }
        }
        while let Some(x) = queue.pop_front() {
            if self.adj[x].contains(&v) {
                let mut path = vec![v, x];
                let mut y = x;
                while prev[y] != u {
                    y = prev[y];
                    path.push(y);
                }
                path.push(u);
                path.reverse();
                return path;
            }
            for &w in &self.adj[x] {
                if inside[w] && prev[w] == usize::MAX {
                    prev[w] = x;
                    queue.push_back(w);
                }
            }
        }
        unreachable!("fragment interior is connected and touches both contacts")
    }

    fn embed(&mut self, face_idx: usize, path: &[usize]) {
        for w in path.windows(2) {
            self.place_edge(w[0], w[1]);
        }
        path.iter().for_each(|&x| self.placed_v[x] = true);
        let face = std::mem::take(&mut self.faces[face_idx]);
        let (u, v) = (path[0], *path.last().unwrap());
        let len = face.len();
        let i = face.iter().position(|&x| x == u).unwrap();
        let j = face.iter().position(|&x| x == v).unwrap();
        let interior = &path[1..path.len() - 1];

        let walk = |from: usize, to: usize| {
            let mut seg = Vec::new();
            let mut k = from;
            loop {
                seg.push(face[k]);
                if k == to {
                    break;
                }
                k = (k + 1) % len;
            }
            seg
        };
        let mut first = walk(i, j);
        first.extend(interior.iter().rev());
        let mut second = walk(j, i);
        second.extend(interior.iter());
        self.faces[face_idx] = first;
        self.faces.push(second);
    }

    fn run(mut self) -> bool {
        let cycle = self.initial_cycle();
        for k in 0..cycle.len() {
            self.place_edge(cycle[k], cycle[(k + 1) % cycle.len()]);
            self.placed_v[cycle[k]] = true;
        }
        self.faces = vec![cycle.clone(), cycle];
        loop {
            let frags = self.fragments();
            if frags.is_empty() {
                return true;
            }
            let mut choice: Option<(usize, usize, usize)> = None; // (fragment, face, #admissible)
            for (fi, frag) in frags.iter().enumerate() {
                let admissible: Vec<usize> = (0..self.faces.len())
                    .filter(|&k| frag.contacts.iter().all(|c| self.faces[k].contains(c)))
                    .collect();
                match admissible.len() {
                    0 => return false,
                    cnt => {
                        if choice.is_none_or(|(_, _, best)| cnt < best) {
                            choice = Some((fi, admissible[0], cnt));
                        }
                    }
                }
            }
            let (fi, face, _) = choice.unwrap();
            let path = self.fragment_path(&frags[fi]);
            self.embed(face, &path);
        }
    }
}
