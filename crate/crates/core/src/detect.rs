//! Friendship-graph (`H_k`) and fan (`F_k`) detection.
//!
//! `H_k` is `k` triangles sharing one vertex; `F_k` is a vertex joined to a
//! path on `k + 1` vertices. Both reduce to questions about the neighbourhood
//! graph `G[N(v)]` of a candidate centre `v`:
//!
//! * `H_k ⊆ G` iff some `G[N(v)]` has a matching of size `k`;
//! * `F_k ⊆ G` iff some `G[N(v)]` contains a path on `k + 1` vertices.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plane::PlaneGraph;

/// Longest path length (in vertices) the exact search accepts.
pub const MAX_PATH_VERTICES: usize = 12;

/// Read-only adjacency access shared by plane and abstract graphs.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn neighbors(&self, v: usize) -> &[usize];
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).contains(&v)
    }
}

impl Adjacency for PlaneGraph {
    fn vertex_count(&self) -> usize {
        PlaneGraph::vertex_count(self)
    }
    fn neighbors(&self, v: usize) -> &[usize] {
        PlaneGraph::neighbors(self, v)
    }
}

/// Abstract simple graph with sorted adjacency lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn from_adjacency<G: Adjacency>(g: &G) -> Self {
        let mut adj: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect();
        adj.iter_mut().for_each(|a| a.sort_unstable());
        Self { adj }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v || self.adj[u].binary_search(&v).is_ok() {
            return;
        }
        let i = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(i, v);
        let j = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(j, u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].retain(|&x| x != v);
        self.adj[v].retain(|&x| x != u);
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect()
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
    }

    pub fn complete(n: usize) -> Self {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Self::from_edges(n, &e)
    }
}

impl Adjacency for SimpleGraph {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }
    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }
}

/// `G[N(center)]` with local ids `0..vertices.len()`.
#[derive(Debug, Clone)]
pub struct NeighborhoodGraph {
    pub center: usize,
    pub vertices: Vec<usize>,
    pub graph: SimpleGraph,
}

pub fn neighborhood<G: Adjacency>(g: &G, center: usize) -> NeighborhoodGraph {
    let vertices = g.neighbors(center).to_vec();
    let mut graph = SimpleGraph::new(vertices.len());
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if g.adjacent(vertices[i], vertices[j]) {
                graph.add_edge(i, j);
            }
        }
    }
    NeighborhoodGraph { center, vertices, graph }
}

/// Maximum matching on a general graph (Edmonds' blossom algorithm).
pub fn max_matching<G: Adjacency>(g: &G) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    const NONE: usize = usize::MAX;
    let mut mate = vec![NONE; n];

    // Greedy start.
    for v in 0..n {
        if mate[v] == NONE {
            if let Some(&w) = g.neighbors(v).iter().find(|&&w| mate[w] == NONE) {
                mate[v] = w;
                mate[w] = v;
            }
        }
    }

    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut blossom = vec![false; n];

    let lca = |mut a: usize, mut b: usize, base: &[usize], mate: &[usize], parent: &[usize]| {
        let mut seen = vec![false; n];
        loop {
            a = base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = parent[mate[a]];
        }
        loop {
            b = base[b];
            if seen[b] {
                return b;
            }
            b = parent[mate[b]];
        }
    };

    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        parent.iter_mut().for_each(|p| *p = NONE);
        used.iter_mut().for_each(|u| *u = false);
        for (i, b) in base.iter_mut().enumerate() {
            *b = i;
        }
        used[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut end = NONE;
        'bfs: while let Some(v) = queue.pop_front() {
            for &to in g.neighbors(v) {
                if base[v] == base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                    let cur = lca(v, to, &base, &mate, &parent);
                    blossom.iter_mut().for_each(|b| *b = false);
                    for (mut x, mut child) in [(v, to), (to, v)] {
                        while base[x] != cur {
                            blossom[base[x]] = true;
                            blossom[base[mate[x]]] = true;
                            parent[x] = child;
                            child = mate[x];
                            x = parent[mate[x]];
                        }
                    }
                    for i in 0..n {
                        if blossom[base[i]] {
                            base[i] = cur;
                            if !used[i] {
                                used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if parent[to] == NONE {
                    parent[to] = v;
                    if mate[to] == NONE {
                        end = to;
                        break 'bfs;
                    }
                    used[mate[to]] = true;
                    queue.push_back(mate[to]);
                }
            }
        }
        let mut v = end;
        while v != NONE {
            let pv = parent[v];
            let ppv = mate[pv];
            mate[v] = pv;
            mate[pv] = v;
            v = ppv;
        }
    }

    (0..n)
        .filter(|&v| mate[v] != NONE && v < mate[v])
        .map(|v| (v, mate[v]))
        .collect()
}

/// Some path on exactly `m` vertices, if one exists.
pub fn longest_path_at_least<G: Adjacency>(g: &G, m: usize) -> Result<Option<Vec<usize>>> {
    if m > MAX_PATH_VERTICES {
        return Err(Error::MTooLarge(m));
    }
    let n = g.vertex_count();
    if m == 0 {
        return Ok(Some(Vec::new()));
    }
    if m > n {
        return Ok(None);
    }
    fn extend<G: Adjacency>(g: &G, m: usize, path: &mut Vec<usize>, on: &mut [bool]) -> bool {
        if path.len() == m {
            return true;
        }
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if !on[w] {
                on[w] = true;
                path.push(w);
                if extend(g, m, path, on) {
                    return true;
                }
                path.pop();
                on[w] = false;
            }
        }
        false
    }
    let mut on = vec![false; n];
    // Low-degree starts first: a path on m >= 2 vertices always has an endpoint
    // and endpoints are more often of small degree.
    let mut starts: Vec<usize> = (0..n).filter(|&v| m == 1 || !g.neighbors(v).is_empty()).collect();
    starts.sort_by_key(|&v| g.neighbors(v).len());
    for s in starts {
        let mut path = vec![s];
        on[s] = true;
        if extend(g, m, &mut path, &mut on) {
            return Ok(Some(path));
        }
        on[s] = false;
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    /// `H_k`, the friendship graph.
    Friendship,
    /// `F_k = K_1 + P_{k+1}`.
    Fan,
}

/// A forbidden pattern `H_k` or `F_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pattern {
    pub kind: PatternKind,
    pub k: usize,
}

impl Pattern {
    pub fn friendship(k: usize) -> Self {
        Self { kind: PatternKind::Friendship, k }
    }

    pub fn fan(k: usize) -> Self {
        Self { kind: PatternKind::Fan, k }
    }

    pub fn find<G: Adjacency>(&self, g: &G) -> Result<Option<PatternWitness>> {
        match self.kind {
            PatternKind::Friendship => Ok(find_hk(g, self.k)),
            PatternKind::Fan => find_fk(g, self.k),
        }
    }

    pub fn is_free<G: Adjacency>(&self, g: &G) -> Result<bool> {
        Ok(self.find(g)?.is_none())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PatternKind::Friendship => write!(f, "H{}", self.k),
            PatternKind::Fan => write!(f, "F{}", self.k),
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("pattern {s:?} (expected H<k> or F<k>)"));
        let (head, tail) = s.split_at(s.chars().next().ok_or_else(bad)?.len_utf8());
        let k: usize = tail.trim_start_matches('_').parse().map_err(|_| bad())?;
        match head {
            "H" | "h" => Ok(Self::friendship(k)),
            "F" | "f" => Ok(Self::fan(k)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternWitness {
    pub kind: PatternKind,
    pub k: usize,
    pub center: usize,
    /// `H_k`: `2k` vertices forming the matched pairs `(limbs[2i], limbs[2i+1])`.
    /// `F_k`: the `k + 1` path vertices in order.
    pub limbs: Vec<usize>,
}

impl fmt::Display for PatternWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            PatternKind::Friendship => "H",
            PatternKind::Fan => "F",
        };
        write!(f, "{name}{} at {} with {:?}", self.k, self.center, self.limbs)
    }
}

impl PatternWitness {
    /// Edges of the embedded copy.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let c = self.center;
        let mut out: Vec<(usize, usize)> = self.limbs.iter().map(|&x| (c, x)).collect();
        match self.kind {
            PatternKind::Friendship => {
                out.extend(self.limbs.chunks(2).map(|p| (p[0], p[1])));
            }
            PatternKind::Fan => {
                out.extend(self.limbs.windows(2).map(|p| (p[0], p[1])));
            }
        }
        out
    }

    /// Re-checks the copy against adjacency alone.
    pub fn verify<G: Adjacency>(&self, g: &G) -> bool {
        let expected = match self.kind {
            PatternKind::Friendship => 2 * self.k,
            PatternKind::Fan => self.k + 1,
        };
        let n = g.vertex_count();
        if self.limbs.len() != expected || self.center >= n || self.limbs.iter().any(|&x| x >= n) {
            return false;
        }
        let mut all = self.limbs.clone();
        all.push(self.center);
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        self.edges().iter().all(|&(a, b)| g.adjacent(a, b))
    }
}

pub fn find_hk<G: Adjacency>(g: &G, k: usize) -> Option<PatternWitness> {
    for v in 0..g.vertex_count() {
        if g.neighbors(v).len() < 2 * k {
            continue;
        }
        let nb = neighborhood(g, v);
        let m = max_matching(&nb.graph);
        if m.len() >= k {
            let limbs = m[..k]
                .iter()
                .flat_map(|&(a, b)| [nb.vertices[a], nb.vertices[b]])
                .collect();
            return Some(PatternWitness { kind: PatternKind::Friendship, k, center: v, limbs });
        }
    }
    None
}

pub fn is_hk_free<G: Adjacency>(g: &G, k: usize) -> bool {
    find_hk(g, k).is_none()
}

pub fn find_fk<G: Adjacency>(g: &G, k: usize) -> Result<Option<PatternWitness>> {
    if k == 0 {
        return Err(Error::KOutOfRange(k));
    }
    let m = k + 1;
    if m > MAX_PATH_VERTICES {
        return Err(Error::MTooLarge(m));
    }
    for v in 0..g.vertex_count() {
        if g.neighbors(v).len() < m {
            continue;
        }
        let nb = neighborhood(g, v);
        if let Some(path) = longest_path_at_least(&nb.graph, m)? {
            let limbs = path.iter().map(|&i| nb.vertices[i]).collect();
            return Ok(Some(PatternWitness { kind: PatternKind::Fan, k, center: v, limbs }));
        }
    }
    Ok(None)
}

pub fn is_fk_free<G: Adjacency>(g: &G, k: usize) -> Result<bool> {
    Ok(find_fk(g, k)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_matching(g: &SimpleGraph) -> usize {
        let edges = g.edges();
        let mut best = 0;
        for mask in 0u32..(1 << edges.len()) {
            let mut used = 0u64;
            let mut ok = true;
            for (i, &(a, b)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if used >> a & 1 == 1 || used >> b & 1 == 1 {
                        ok = false;
                        break;
                    }
                    used |= 1 << a | 1 << b;
                }
            }
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn matching_examples() {
        assert_eq!(max_matching(&SimpleGraph::cycle(5)).len(), 2);
        assert_eq!(max_matching(&SimpleGraph::complete(6)).len(), 3);
        assert_eq!(max_matching(&SimpleGraph::path(7)).len(), 3);
    }

    #[test]
    fn matching_handles_blossoms() {
        // Two triangles joined by an edge plus pendant vertices: needs contraction.
        let g = SimpleGraph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (0, 6), (5, 7)],
        );
        assert_eq!(max_matching(&g).len(), brute_matching(&g));
        assert_eq!(max_matching(&g).len(), 4);
    }

    #[test]
    fn matching_agrees_with_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..400 {
            let n = rng.gen_range(1..=9);
            let mut g = SimpleGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.35) {
                        g.add_edge(u, v);
                    }
                }
            }
            if g.edge_count() > 20 {
                continue;
            }
            let m = max_matching(&g);
            assert_eq!(m.len(), brute_matching(&g), "{:?}", g.edges());
            let mut seen = vec![false; n];
            for &(a, b) in &m {
                assert!(g.adjacent(a, b) && !seen[a] && !seen[b]);
                seen[a] = true;
                seen[b] = true;
            }
        }
    }

    #[test]
    fn path_examples() {
        assert!(longest_path_at_least(&SimpleGraph::cycle(5), 5).unwrap().is_some());
        assert!(longest_path_at_least(&SimpleGraph::cycle(5), 6).unwrap().is_none());
        assert!(longest_path_at_least(&SimpleGraph::cycle(4), 4).unwrap().is_some());
        let star = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(longest_path_at_least(&star, 4).unwrap().is_none());
        assert!(matches!(
            longest_path_at_least(&star, 13),
            Err(Error::MTooLarge(13))
        ));
    }

    #[test]
    fn k7_contains_h3() {
        let g = SimpleGraph::complete(7);
        let w = find_hk(&g, 3).unwrap();
        assert!(w.verify(&g));
    }

    #[test]
    fn bowtie_friendship() {
        let g = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        assert!(!is_hk_free(&g, 2));
        assert!(is_hk_free(&g, 3));
    }

    #[test]
    fn pattern_parse_and_display() {
        let p: Pattern = "H3".parse().unwrap();
        assert_eq!(p, Pattern::friendship(3));
        assert_eq!("F_5".parse::<Pattern>().unwrap().to_string(), "F5");
        assert!("X2".parse::<Pattern>().is_err());
    }

    #[test]
    fn fan_bounds() {
        assert!(matches!(find_fk(&SimpleGraph::new(3), 12), Err(Error::MTooLarge(13))));
        assert!(matches!(find_fk(&SimpleGraph::new(3), 0), Err(Error::KOutOfRange(0))));
    }

    #[test]
    fn witness_verification_rejects_tampering() {
        let g = SimpleGraph::complete(7);
        let mut w = find_hk(&g, 3).unwrap();
        w.limbs[1] = w.limbs[0];
        assert!(!w.verify(&g));
        let h = SimpleGraph::cycle(7);
        let w2 = PatternWitness { kind: PatternKind::Fan, k: 1, center: 0, limbs: vec![1, 2] };
        assert!(!w2.verify(&h));
    }
}
