//! Isomorph-free generation of plane triangulations and of triangulations
//! with up to two edges removed.
//!
//! Triangulations are grown from K4 by vertex splitting, the inverse of
//! contracting an edge that lies on no separating triangle. A child is kept
//! only when its new edge lies in the orbit of the contractible edge chosen
//! canonically for the child (smallest degree key, ties broken by canonical
//! labelling), and isomorphic siblings are merged by canonical code. Every
//! triangulation then arises from exactly one parent, so the search tree has
//! no duplicates and needs no global dedup set.
//!
//! The tree is cut at a fixed split level; the subtrees below it are the
//! units of partitioning, parallel execution and resumption.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::canon::{canonical_code, canonical_form_rot, CanonicalCode, Canonizer};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::plane::PlaneGraph;

type Rot = Vec<Vec<usize>>;

/// Largest order generated without any flag.
pub const DEFAULT_MAX_N: usize = 12;
/// Largest order reachable with the deep flag.
pub const DEEP_MAX_N: usize = 14;
/// Hard limit imposed by the bitmask representation.
pub const HARD_MAX_N: usize = 64;
const SPLIT_LEVEL: usize = 10;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GenLimits {
    /// Allow n = 13 and 14.
    pub deep: bool,
    /// Allow n above 14 (up to 64).
    pub large: bool,
}

impl GenLimits {
    pub fn deep() -> Self {
        GenLimits { deep: true, large: false }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n < 3 {
            return Err(Error::NTooSmall(n));
        }
        let cap = if self.large {
            HARD_MAX_N
        } else if self.deep {
            DEEP_MAX_N
        } else {
            DEFAULT_MAX_N
        };
        if n > cap {
            return Err(Error::NTooLarge(n));
        }
        Ok(())
    }
}

/// Position in a stream: every subtree with index below `next_subtree` has
/// been emitted completely. Written as `n/t/next_subtree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResumeToken {
    pub n: usize,
    pub t: usize,
    pub next_subtree: usize,
}

impl fmt::Display for ResumeToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.n, self.t, self.next_subtree)
    }
}

impl FromStr for ResumeToken {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split('/').collect();
        let num = |x: &str| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad resume token {s:?}")));
        match parts.as_slice() {
            [n, t, k] => Ok(ResumeToken {
                n: num(n)?,
                t: num(t)?,
                next_subtree: num(k)?,
            }),
            _ => Err(Error::Parse(format!("bad resume token {s:?}"))),
        }
    }
}

/// Stream description. Iteration is lazy; the only materialised state is the
/// list of split-level nodes and the current DFS path.
#[derive(Debug, Clone)]
pub struct GenStream {
    n: usize,
    t: usize,
    dedup: bool,
    partition: (usize, usize),
    start: usize,
    roots: Vec<Rot>,
}

pub fn triangulations(n: usize) -> Result<GenStream> {
    triangulations_with(n, GenLimits::default())
}

pub fn triangulations_with(n: usize, limits: GenLimits) -> Result<GenStream> {
    near_triangulations_with(n, 0, limits)
}

/// Every triangulation on `n` vertices minus every set of `t` of its edges.
/// The same graph may come from several parents unless [`GenStream::dedup`]
/// is enabled.
pub fn near_triangulations(n: usize, t: usize) -> Result<GenStream> {
    near_triangulations_with(n, t, GenLimits::default())
}

pub fn near_triangulations_with(n: usize, t: usize, limits: GenLimits) -> Result<GenStream> {
    if t > 2 {
        return Err(Error::TTooLarge(t));
    }
    limits.check(n)?;
    let roots = split_nodes(n);
    Ok(GenStream {
        n,
        t,
        dedup: false,
        partition: (0, 1),
        start: 0,
        roots,
    })
}

impl GenStream {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn deletions(&self) -> usize {
        self.t
    }

    /// Drops graphs already emitted by this iterator (compared by canonical
    /// code). Only meaningful for `t > 0`; triangulations never repeat.
    pub fn dedup(mut self, on: bool) -> Self {
        self.dedup = on;
        self
    }

    /// Keeps only subtrees whose index is congruent to `part` modulo `parts`.
    pub fn partition(mut self, part: usize, parts: usize) -> Result<Self> {
        if parts == 0 || part >= parts {
            return Err(Error::PreconditionViolated(format!("partition {part}/{parts}")));
        }
        self.partition = (part, parts);
        Ok(self)
    }

    pub fn resume(mut self, token: &ResumeToken) -> Result<Self> {
        if token.n != self.n || token.t != self.t {
            return Err(Error::PreconditionViolated(format!(
                "token {token} does not belong to n={} t={}",
                self.n, self.t
            )));
        }
        self.start = token.next_subtree;
        Ok(self)
    }

    pub fn subtree_count(&self) -> usize {
        self.roots.len()
    }

    fn selected(&self) -> Vec<usize> {
        let (p, m) = self.partition;
        (self.start..self.roots.len()).filter(|i| i % m == p).collect()
    }

    pub fn iter(&self) -> GenIter<'_> {
        GenIter::new(self, self.selected())
    }

    /// Runs `f` on every selected subtree, in parallel when `exec` allows.
    /// Results come back in subtree order.
    pub fn map_subtrees<R, F>(&self, exec: Exec, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(&mut GenIter<'_>) -> R + Sync + Send,
    {
        let sel = self.selected();
        exec.map(&sel, |&i| f(&mut GenIter::new(self, vec![i])))
    }

    pub fn count(&self, exec: Exec) -> usize {
        self.map_subtrees(exec, |it| it.count()).into_iter().sum()
    }
}

pub struct GenIter<'a> {
    stream: &'a GenStream,
    subtrees: Vec<usize>,
    pos: usize,
    stack: Vec<Rot>,
    pending: VecDeque<PlaneGraph>,
    seen: Option<HashSet<CanonicalCode>>,
    cz: Canonizer,
}

impl<'a> GenIter<'a> {
    fn new(stream: &'a GenStream, subtrees: Vec<usize>) -> Self {
        GenIter {
            stream,
            subtrees,
            pos: 0,
            stack: Vec::new(),
            pending: VecDeque::new(),
            seen: stream.dedup.then(HashSet::new),
            cz: Canonizer::default(),
        }
    }

    /// (subtrees started, subtrees selected).
    pub fn progress(&self) -> (usize, usize) {
        (self.pos, self.subtrees.len())
    }

    /// Token from which a fresh stream re-emits everything not yet finished.
    pub fn resume_token(&self) -> ResumeToken {
        let busy = !self.stack.is_empty() || !self.pending.is_empty();
        let next = if busy { self.subtrees[self.pos - 1] } else { self.subtrees.get(self.pos).copied().unwrap_or(self.stream.roots.len()) };
        ResumeToken {
            n: self.stream.n,
            t: self.stream.t,
            next_subtree: next,
        }
    }

    fn next_triangulation(&mut self) -> Option<Rot> {
        loop {
            if let Some(node) = self.stack.pop() {
                if node.len() == self.stream.n {
                    return Some(node);
                }
                let mut kids = children(&node, &mut self.cz);
                kids.reverse();
                self.stack.extend(kids);
                continue;
            }
            let &idx = self.subtrees.get(self.pos)?;
            self.pos += 1;
            self.stack.push(self.stream.roots[idx].clone());
        }
    }
}

impl Iterator for GenIter<'_> {
    type Item = PlaneGraph;

    fn next(&mut self) -> Option<PlaneGraph> {
        loop {
            while let Some(g) = self.pending.pop_front() {
                match &mut self.seen {
                    Some(seen) => {
                        if seen.insert(canonical_code(&g).expect("connected")) {
                            return Some(g);
                        }
                    }
                    None => return Some(g),
                }
            }
            let rot = self.next_triangulation()?;
            let tri = PlaneGraph::build(rot, None).expect("generated rotation is a sphere embedding");
            if self.stream.t == 0 {
                self.pending.push_back(tri);
            } else {
                self.pending.extend(edge_deletions(&tri, self.stream.t));
            }
        }
    }
}

/// All graphs `g` minus `t` edges, in lexicographic order of the removed set.
pub fn edge_deletions(g: &PlaneGraph, t: usize) -> Vec<PlaneGraph> {
    let edges = g.edges();
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(t);
    fn rec(g: &PlaneGraph, edges: &[(usize, usize)], from: usize, t: usize, pick: &mut Vec<usize>, out: &mut Vec<PlaneGraph>) {
        if pick.len() == t {
            let mut h = g.clone();
            for &i in pick.iter() {
                let (u, v) = edges[i];
                h = h.delete_edge(u, v).expect("edge present");
            }
            out.push(h);
            return;
        }
        for i in from..edges.len() {
            pick.push(i);
            rec(g, edges, i + 1, t, pick, out);
            pick.pop();
        }
    }
    rec(g, &edges, 0, t, &mut pick, &mut out);
    out
}

fn k3() -> Rot {
    vec![vec![1, 2], vec![2, 0], vec![0, 1]]
}

fn k4() -> Rot {
    let faces = [vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]];
    PlaneGraph::from_face_cycles(4, &faces, None)
        .expect("K4 faces")
        .rotations()
        .to_vec()
}

fn split_nodes(n: usize) -> Vec<Rot> {
    if n == 3 {
        return vec![k3()];
    }
    let level = n.min(SPLIT_LEVEL);
    let mut out = Vec::new();
    let mut cz = Canonizer::default();
    let mut stack = vec![k4()];
    while let Some(node) = stack.pop() {
        if node.len() == level {
            out.push(node);
            continue;
        }
        let mut kids = children(&node, &mut cz);
        kids.reverse();
        stack.extend(kids);
    }
    out
}

fn masks(rot: &[Vec<usize>]) -> Vec<u64> {
    rot.iter().map(|r| r.iter().fold(0u64, |m, &y| m | 1 << y)).collect()
}

type EdgeKey = (u32, u32, u32, u32);

/// Key of an edge if it is contractible (exactly two common neighbours).
fn edge_key(adj: &[u64], x: usize, y: usize) -> Option<EdgeKey> {
    let common = adj[x] & adj[y];
    if common.count_ones() != 2 {
        return None;
    }
    let a = common.trailing_zeros() as usize;
    let b = 63 - common.leading_zeros() as usize;
    let (dx, dy) = (adj[x].count_ones(), adj[y].count_ones());
    let (da, db) = (adj[a].count_ones(), adj[b].count_ones());
    Some((dx.min(dy), dx.max(dy), da.min(db), da.max(db)))
}

/// Split `v`: the new vertex takes the clockwise run `c_i..=c_j` of its
/// neighbours, and both keep `c_i` and `c_j`.
fn split(parent: &[Vec<usize>], v: usize, i: usize, j: usize) -> Rot {
    let w = parent.len();
    let c = &parent[v];
    let mut rot = parent.to_vec();
    let mut rw: Vec<usize> = c[i..=j].to_vec();
    rw.push(v);
    let mut rv: Vec<usize> = c[j..].to_vec();
    rv.extend_from_slice(&c[..=i]);
    rv.push(w);
    for &x in &c[i + 1..j] {
        let p = rot[x].iter().position(|&y| y == v).unwrap();
        rot[x][p] = w;
    }
    let ci = c[i];
    let p = rot[ci].iter().position(|&y| y == v).unwrap();
    rot[ci].insert(p, w);
    let cj = c[j];
    let p = rot[cj].iter().position(|&y| y == v).unwrap();
    rot[cj].insert(p + 1, w);
    rot[v] = rv;
    rot.push(rw);
    rot
}

fn children(parent: &[Vec<usize>], cz: &mut Canonizer) -> Vec<Rot> {
    let n = parent.len();
    let w = n;
    let base = masks(parent);
    let mut adj = base.clone();
    adj.push(0);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    let mut ties = Vec::new();
    for v in 0..n {
        let c = &parent[v];
        let d = c.len();
        for i in 0..d {
            for j in i + 1..d {
                // Child adjacency masks, without building the rotation.
                adj[..n].copy_from_slice(&base);
                let run: u64 = c[i..=j].iter().fold(0, |m, &x| m | 1 << x);
                let inner = run & !(1 << c[i]) & !(1 << c[j]);
                adj[w] = run | 1 << v;
                adj[v] = (base[v] & !inner) | 1 << w;
                for &x in &c[i + 1..j] {
                    adj[x] = (adj[x] & !(1 << v)) | 1 << w;
                }
                adj[c[i]] |= 1 << w;
                adj[c[j]] |= 1 << w;

                let mine = edge_key(&adj, v, w).expect("new edge is contractible");
                ties.clear();
                let mut rejected = false;
                'scan: for x in 0..=n {
                    let mut rest = adj[x] & !((2u64 << x) - 1);
                    while rest != 0 {
                        let y = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        if let Some(k) = edge_key(&adj, x, y) {
                            if k < mine {
                                rejected = true;
                                break 'scan;
                            }
                            if k == mine {
                                ties.push((x, y));
                            }
                        }
                    }
                }
                if rejected {
                    continue;
                }
                let child = split(parent, v, i, j);
                let form = canonical_form_rot(&child, cz).expect("connected");
                if ties.len() > 1 {
                    let pair = |lab: &[u32], (a, b): (usize, usize)| {
                        let (x, y) = (lab[a], lab[b]);
                        (x.min(y), x.max(y))
                    };
                    let l0 = &form.labelings[0];
                    let best = ties.iter().map(|&e| pair(l0, e)).min().unwrap();
                    let own = form.labelings.iter().map(|l| pair(l, (v, w))).min().unwrap();
                    if own != best {
                        continue;
                    }
                }
                if seen.insert(form.code) {
                    out.push(child);
                }
            }
        }
    }
    out
}

/// Independent oracle for small orders: every labelled graph with `3n-6`
/// edges and minimum degree 3 is tested for a set of triangles covering each
/// edge twice whose vertex links are single cycles (a sphere triangulation
/// by Euler's formula); survivors are embedded and deduplicated by
/// canonical code. Exponential; intended for tests.
pub fn brute_force_oracle(n: usize) -> Result<Vec<PlaneGraph>> {
    if n > 7 {
        return Err(Error::NTooLargeForOracle(n));
    }
    if n < 3 {
        return Err(Error::NTooSmall(n));
    }
    if n == 3 {
        return Ok(vec![PlaneGraph::build(k3(), None)?]);
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let m = 3 * n - 6;
    let mut found: BTreeMap<CanonicalCode, PlaneGraph> = BTreeMap::new();
    let mut pick: Vec<usize> = (0..m).collect();
    loop {
        let edges: Vec<(usize, usize)> = pick.iter().map(|&i| pairs[i]).collect();
        if let Some(faces) = sphere_triangles(n, &edges) {
            let g = PlaneGraph::from_face_cycles(n, &faces, None)?;
            found.entry(canonical_code(&g)?).or_insert(g);
        }
        // Next m-combination of pairs.
        let mut k = m;
        loop {
            if k == 0 {
                return Ok(found.into_values().collect());
            }
            k -= 1;
            if pick[k] < pairs.len() - m + k {
                break;
            }
        }
        pick[k] += 1;
        for x in k + 1..m {
            pick[x] = pick[x - 1] + 1;
        }
    }
}

/// Oriented triangle faces of a sphere triangulation with edge set `edges`,
/// if one exists.
fn sphere_triangles(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut adj = vec![vec![false; n]; n];
    let mut deg = vec![0; n];
    for &(a, b) in edges {
        adj[a][b] = true;
        adj[b][a] = true;
        deg[a] += 1;
        deg[b] += 1;
    }
    if deg.iter().any(|&d| d < 3) {
        return None;
    }
    let mut tris = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if adj[a][b] && adj[b][c] && adj[a][c] {
                    tris.push([a, b, c]);
                }
            }
        }
    }
    let eidx = |a: usize, b: usize| edges.iter().position(|&e| e == (a.min(b), a.max(b))).unwrap();
    let tri_edges: Vec<[usize; 3]> = tris.iter().map(|&[a, b, c]| [eidx(a, b), eidx(b, c), eidx(a, c)]).collect();
    let mut cover = vec![0u8; edges.len()];
    let mut chosen = Vec::new();

    fn rec(
        n: usize,
        tris: &[[usize; 3]],
        tri_edges: &[[usize; 3]],
        cover: &mut [u8],
        chosen: &mut Vec<usize>,
    ) -> Option<Vec<Vec<usize>>> {
        let Some(e) = cover.iter().position(|&c| c < 2) else {
            return orient(n, tris, chosen);
        };
        for t in 0..tris.len() {
            if chosen.contains(&t) || !tri_edges[t].contains(&e) || tri_edges[t].iter().any(|&x| cover[x] >= 2) {
                continue;
            }
            for &x in &tri_edges[t] {
                cover[x] += 1;
            }
            chosen.push(t);
            if let Some(r) = rec(n, tris, tri_edges, cover, chosen) {
                return Some(r);
            }
            chosen.pop();
            for &x in &tri_edges[t] {
                cover[x] -= 1;
            }
        }
        None
    }
    rec(n, &tris, &tri_edges, &mut cover, &mut chosen)
}

/// Checks that every vertex link is one cycle, then orients the triangles
/// coherently.
fn orient(n: usize, tris: &[[usize; 3]], chosen: &[usize]) -> Option<Vec<Vec<usize>>> {
    for v in 0..n {
        let link: Vec<(usize, usize)> = chosen
            .iter()
            .filter(|&&t| tris[t].contains(&v))
            .map(|&t| {
                let o: Vec<usize> = tris[t].iter().copied().filter(|&x| x != v).collect();
                (o[0], o[1])
            })
            .collect();
        if link.is_empty() {
            return None;
        }
        // Walk the link from its first edge; it must return after using all edges.
        let (start, mut cur) = link[0];
        let mut prev = start;
        let mut steps = 1;
        while cur != start {
            let next = link
                .iter()
                .enumerate()
                .find(|&(_, &(a, b))| (a == cur && b != prev) || (b == cur && a != prev))
                .map(|(_, &(a, b))| if a == cur { b } else { a })?;
            prev = cur;
            cur = next;
            steps += 1;
            if steps > link.len() {
                return None;
            }
        }
        if steps != link.len() {
            return None;
        }
    }
    let mut faces: Vec<Option<Vec<usize>>> = vec![None; chosen.len()];
    let mut queue = VecDeque::from([0usize]);
    faces[0] = Some(tris[chosen[0]].to_vec());
    while let Some(i) = queue.pop_front() {
        let f = faces[i].clone().unwrap();
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            for (j, &t) in chosen.iter().enumerate() {
                if j == i || !tris[t].contains(&a) || !tris[t].contains(&b) {
                    continue;
                }
                let c = tris[t].iter().copied().find(|&x| x != a && x != b).unwrap();
                let want = vec![b, a, c];
                match &faces[j] {
                    None => {
                        faces[j] = Some(want);
                        queue.push_back(j);
                    }
                    Some(g) => {
                        let r = g.iter().position(|&x| x == b).unwrap();
                        if g[(r + 1) % 3] != a {
                            return None;
                        }
                    }
                }
            }
        }
    }
    faces.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (3..=9).map(|n| triangulations(n).unwrap().iter().count()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 14, 50]);
    }

    #[test]
    fn split_produces_valid_triangulation() {
        let g = split(&k4(), 0, 0, 2);
        let p = PlaneGraph::build(g, None).unwrap();
        assert!(p.is_triangulation());
        assert_eq!(p.vertex_count(), 5);
    }

    #[test]
    fn limits() {
        assert!(matches!(triangulations(2), Err(Error::NTooSmall(2))));
        assert!(matches!(triangulations(13), Err(Error::NTooLarge(13))));
        assert!(triangulations_with(13, GenLimits::deep()).is_ok());
        assert!(matches!(near_triangulations(6, 3), Err(Error::TTooLarge(3))));
        assert!(matches!(brute_force_oracle(8), Err(Error::NTooLargeForOracle(8))));
    }

    #[test]
    fn token_round_trip() {
        let t: ResumeToken = "11/1/7".parse().unwrap();
        assert_eq!(t.to_string(), "11/1/7");
        assert!("11/1".parse::<ResumeToken>().is_err());
    }
}
