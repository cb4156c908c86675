//! Plane graphs stored as rotation systems.
//!
//! A [`PlaneGraph`] is a simple graph together with, for every vertex, the
//! clockwise cyclic order of its neighbours. Faces are traced with a single
//! fixed rule: from the directed edge `(u, v)` the walk continues with
//! `(v, w)` where `w` follows `u` in the rotation at `v`. Every directed edge
//! (dart) lies on exactly one traced face.
//!
//! Each connected component with at least one edge owns its faces and has
//! one designated outer face. A 3-face is *inner* when it is not a designated
//! outer face, so quantities such as `n_k` and `E'_{3,3}` depend on the chosen
//! outer face and are recomputed by [`PlaneGraph::reroot`].

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type FaceId = usize;
/// A directed edge `(tail, head)`.
pub type Dart = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub id: FaceId,
    /// Closed boundary walk; consecutive darts share a vertex.
    pub walk: Vec<Dart>,
}

impl Face {
    pub fn size(&self) -> usize {
        self.walk.len()
    }

    /// Vertices in walk order (with repetitions when the walk revisits a vertex).
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.walk.iter().map(|d| d.0)
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.walk.iter().any(|d| d.0 == v)
    }
}

#[derive(Debug, Clone)]
pub struct PlaneGraph {
    rotations: Vec<Vec<Vertex>>,
    offsets: Vec<usize>,
    dart_face: Vec<FaceId>,
    faces: Vec<Face>,
    component: Vec<usize>,
    component_count: usize,
    /// Outer face per component; `None` for isolated vertices.
    outer: Vec<Option<FaceId>>,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rotations == other.rotations && self.outer == other.outer
    }
}

impl Eq for PlaneGraph {}

impl PlaneGraph {
    /// Builds a plane graph from clockwise rotations.
    ///
    /// The outer face is the face containing `outer_hint` when given; otherwise
    /// each component takes its largest face, ties going to the face whose
    /// smallest dart is lexicographically smallest.
    pub fn build(rotations: Vec<Vec<Vertex>>, outer_hint: Option<Dart>) -> Result<Self> {
        Self::build_with_hints(rotations, outer_hint.as_slice())
    }

    pub(crate) fn build_with_hints(rotations: Vec<Vec<Vertex>>, hints: &[Dart]) -> Result<Self> {
        let n = rotations.len();
        for (u, rot) in rotations.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &v in rot {
                if v >= n {
                    return Err(Error::UnknownVertex(v));
                }
                if v == u {
                    return Err(Error::NonSimple(format!("loop at {u}")));
                }
                if !seen.insert(v) {
                    return Err(Error::NonSimple(format!("parallel edge {u}-{v}")));
                }
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for rot in &rotations {
            offsets.push(acc);
            acc += rot.len();
        }
        offsets.push(acc);
        // For the dart at `offsets[u] + i`, the position of `u` in `rotations[v]`.
        let mut twin_pos = vec![0; acc];
        for (u, rot) in rotations.iter().enumerate() {
            for (i, &v) in rot.iter().enumerate() {
                match rotations[v].iter().position(|&x| x == u) {
                    Some(j) => twin_pos[offsets[u] + i] = j,
                    None => return Err(Error::AsymmetricAdjacency(u, v)),
                }
            }
        }

        let component = components(&rotations);
        let component_count = component.iter().copied().max().map_or(0, |c| c + 1);

        // Trace faces, scanning darts in lexicographic order so that face ids are
        // ordered by their smallest dart.
        let mut dart_face = vec![usize::MAX; acc];
        let mut faces = Vec::new();
        for u in 0..n {
            let mut order: Vec<usize> = (0..rotations[u].len()).collect();
            order.sort_by_key(|&i| rotations[u][i]);
            for i in order {
                let start = offsets[u] + i;
                if dart_face[start] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut walk = Vec::new();
                let (mut x, mut xi) = (u, i);
                loop {
                    let d = offsets[x] + xi;
                    dart_face[d] = id;
                    let y = rotations[x][xi];
                    walk.push((x, y));
                    let j = twin_pos[d];
                    let (nx, nxi) = (y, (j + 1) % rotations[y].len());
                    if offsets[nx] + nxi == start {
                        break;
                    }
                    x = nx;
                    xi = nxi;
                }
                faces.push(Face { id, walk });
            }
        }

        // Euler check per component.
        let mut cn = vec![0usize; component_count];
        let mut ce = vec![0usize; component_count];
        let mut cf = vec![0usize; component_count];
        let mut rep = vec![usize::MAX; component_count];
        for u in 0..n {
            let c = component[u];
            cn[c] += 1;
            ce[c] += rotations[u].len();
            rep[c] = rep[c].min(u);
        }
        for f in &faces {
            cf[component[f.walk[0].0]] += 1;
        }
        for c in 0..component_count {
            let e = ce[c] / 2;
            if e > 0 && cn[c] + cf[c] != e + 2 {
                return Err(Error::NonPlanarRotation {
                    vertex: rep[c],
                    n: cn[c],
                    e,
                    f: cf[c],
                });
            }
        }

        let mut g = PlaneGraph {
            rotations,
            offsets,
            dart_face,
            faces,
            component,
            component_count,
            outer: vec![None; component_count],
        };
        for f in &g.faces {
            let c = g.component[f.walk[0].0];
            let better = match g.outer[c] {
                None => true,
                Some(o) => f.size() > g.faces[o].size(),
            };
            if better {
                g.outer[c] = Some(f.id);
            }
        }
        for &(u, v) in hints {
            let f = g.face_of(u, v).ok_or(Error::UnknownEdge(u, v))?;
            let c = g.component[u];
            g.outer[c] = Some(f);
        }
        Ok(g)
    }

    /// Builds a plane graph from oriented face boundary cycles. Every dart must
    /// occur in exactly one cycle; the rotation at each vertex is recovered from
    /// the face corners. `outer` selects the outer face by its index in `cycles`.
    pub fn from_face_cycles(n: usize, cycles: &[Vec<Vertex>], outer: Option<usize>) -> Result<Self> {
        // succ[v][a] = b means b follows a in the rotation at v.
        let mut succ: Vec<BTreeMap<Vertex, Vertex>> = vec![BTreeMap::new(); n];
        let mut darts = BTreeSet::new();
        for cyc in cycles {
            let m = cyc.len();
            if m < 2 {
                return Err(Error::Parse("face cycle shorter than 2".into()));
            }
            for i in 0..m {
                let (a, v, b) = (cyc[(i + m - 1) % m], cyc[i], cyc[(i + 1) % m]);
                if a >= n || v >= n || b >= n {
                    return Err(Error::UnknownVertex(a.max(v).max(b)));
                }
                if !darts.insert((v, b)) {
                    return Err(Error::NonSimple(format!("dart {v}->{b} used twice")));
                }
                if succ[v].insert(a, b).is_some() {
                    return Err(Error::NonSimple(format!("corner at {v} after {a} used twice")));
                }
            }
        }
        let mut rotations = vec![Vec::new(); n];
        for v in 0..n {
            let Some((&first, _)) = succ[v].iter().next() else {
                continue;
            };
            let mut rot = vec![first];
            let mut cur = succ[v][&first];
            while cur != first {
                rot.push(cur);
                cur = *succ[v]
                    .get(&cur)
                    .ok_or_else(|| Error::NonSimple(format!("open corner chain at {v}")))?;
                if rot.len() > succ[v].len() {
                    return Err(Error::NonSimple(format!("corner chain at {v} does not close")));
                }
            }
            if rot.len() != succ[v].len() {
                return Err(Error::NonPlanarRotation {
                    vertex: v,
                    n: 0,
                    e: 0,
                    f: 0,
                });
            }
            rotations[v] = rot;
        }
        let hint = match outer {
            Some(i) => {
                let c = cycles.get(i).ok_or(Error::UnknownFace(i))?;
                Some((c[0], c[1]))
            }
            None => None,
        };
        Self::build(rotations, hint)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.offsets[self.vertex_count()] / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotations[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.rotations.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.rotations.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Clockwise rotation at `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotations
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        v < self.vertex_count()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && self.rotations[u].contains(&v)
    }

    /// Undirected edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<_> = self
            .rotations
            .iter()
            .enumerate()
            .flat_map(|(u, rot)| rot.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    fn dart_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let i = self.rotations.get(u)?.iter().position(|&x| x == v)?;
        Some(self.offsets[u] + i)
    }

    /// Face containing the dart `u -> v`.
    pub fn face_of(&self, u: Vertex, v: Vertex) -> Option<FaceId> {
        self.dart_index(u, v).map(|d| self.dart_face[d])
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> Option<&Face> {
        self.faces.get(f)
    }

    /// Face boundaries as vertex cycles in walk order.
    pub fn face_cycles(&self) -> Vec<Vec<Vertex>> {
        self.faces.iter().map(|f| f.vertices().collect()).collect()
    }

    pub fn component_of(&self, v: Vertex) -> usize {
        self.component[v]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count <= 1
    }

    /// Outer face of the component containing vertex 0 (the only one for a
    /// connected graph).
    pub fn outer_face(&self) -> Option<FaceId> {
        self.outer.iter().flatten().copied().next()
    }

    pub fn outer_faces(&self) -> Vec<FaceId> {
        self.outer.iter().flatten().copied().collect()
    }

    pub fn is_outer(&self, f: FaceId) -> bool {
        self.outer.contains(&Some(f))
    }

    pub fn is_inner_triangle(&self, f: FaceId) -> bool {
        self.faces[f].size() == 3 && !self.is_outer(f)
    }

    /// Face count with all components sharing a single outer region, so that
    /// `n - e + f = 1 + c` holds for `c` components (isolated vertices included).
    pub fn sphere_face_count(&self) -> usize {
        let with_edges = self.outer.iter().flatten().count();
        self.faces.len() + 1 - with_edges
    }

    /// Faces (by id) incident with the corners at `v`, one per outgoing dart.
    pub fn corner_faces(&self, v: Vertex) -> impl Iterator<Item = FaceId> + '_ {
        let base = self.offsets[v];
        (0..self.rotations[v].len()).map(move |i| self.dart_face[base + i])
    }

    /// Same embedding with `f` as the outer face of its component.
    pub fn reroot(&self, f: FaceId) -> Result<Self> {
        let face = self.faces.get(f).ok_or(Error::UnknownFace(f))?;
        let mut g = self.clone();
        let c = g.component[face.walk[0].0];
        g.outer[c] = Some(f);
        Ok(g)
    }

    /// Mirror image: every rotation reversed.
    pub fn mirror(&self) -> Self {
        let rot = self
            .rotations
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        let hint: Vec<Dart> = self
            .outer_faces()
            .iter()
            .map(|&f| {
                let (u, v) = self.faces[f].walk[0];
                (v, u)
            })
            .collect();
        Self::build_with_hints(rot, &hint).expect("mirror of a valid embedding is valid")
    }

    fn surviving_outer_hints(&self, keep: impl Fn(Dart) -> Option<Dart>) -> Vec<Dart> {
        self.outer_faces()
            .iter()
            .filter_map(|&f| self.faces[f].walk.iter().find_map(|&d| keep(d)))
            .collect()
    }

    /// Removes the edge `uv`; its two incident faces merge.
    pub fn delete_edge(&self, u: Vertex, v: Vertex) -> Result<Self> {
        if !self.adjacent(u, v) {
            return Err(Error::UnknownEdge(u, v));
        }
        let mut rot = self.rotations.clone();
        rot[u].retain(|&x| x != v);
        rot[v].retain(|&x| x != u);
        let hints = self.surviving_outer_hints(|d| {
            (d != (u, v) && d != (v, u)).then_some(d)
        });
        Self::build_with_hints_lenient(rot, &hints)
    }

    /// Inserts edge `uv` so that `v` sits at index `pos_u` of the rotation at
    /// `u` and `u` at index `pos_v` of the rotation at `v`.
    pub fn insert_edge(&self, u: Vertex, pos_u: usize, v: Vertex, pos_v: usize) -> Result<Self> {
        let n = self.vertex_count();
        if u >= n {
            return Err(Error::UnknownVertex(u));
        }
        if v >= n {
            return Err(Error::UnknownVertex(v));
        }
        if u == v || self.adjacent(u, v) {
            return Err(Error::NonSimple(format!("edge {u}-{v}")));
        }
        let mut rot = self.rotations.clone();
        let (lu, lv) = (rot[u].len(), rot[v].len());
        rot[u].insert(pos_u.min(lu), v);
        rot[v].insert(pos_v.min(lv), u);
        let hints = self.surviving_outer_hints(Some);
        Self::build_with_hints_lenient(rot, &hints)
    }

    /// Removes `v` and compacts ids. The returned map sends each old id to its
    /// new id (`None` for `v`).
    pub fn delete_vertex(&self, v: Vertex) -> Result<(Self, Vec<Option<Vertex>>)> {
        let n = self.vertex_count();
        if v >= n {
            return Err(Error::UnknownVertex(v));
        }
        let relabel: Vec<Option<Vertex>> = (0..n)
            .map(|x| match x.cmp(&v) {
                std::cmp::Ordering::Less => Some(x),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(x - 1),
            })
            .collect();
        let rot: Vec<Vec<Vertex>> = (0..n)
            .filter(|&x| x != v)
            .map(|x| self.rotations[x].iter().filter_map(|&y| relabel[y]).collect())
            .collect();
        let hints = self.surviving_outer_hints(|(a, b)| Some((relabel[a]?, relabel[b]?)));
        Ok((Self::build_with_hints_lenient(rot, &hints)?, relabel))
    }

    /// Like `build_with_hints`, but a hint whose face was already claimed by an
    /// earlier hint in the same component is ignored.
    fn build_with_hints_lenient(rot: Vec<Vec<Vertex>>, hints: &[Dart]) -> Result<Self> {
        let g = Self::build(rot, None)?;
        let mut seen = BTreeSet::new();
        let kept: Vec<Dart> = hints
            .iter()
            .copied()
            .filter(|&(a, _)| seen.insert(g.component[a]))
            .collect();
        Self::build_with_hints(g.rotations, &kept)
    }

    /// Induced subgraph on `keep`, relabelled in increasing id order, with the
    /// parent's rotations filtered.
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> (Self, Vec<Vertex>) {
        let old: Vec<Vertex> = keep.iter().copied().collect();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &x) in old.iter().enumerate() {
            new_id[x] = i;
        }
        let rot = old
            .iter()
            .map(|&x| {
                self.rotations[x]
                    .iter()
                    .filter(|&&y| new_id[y] != usize::MAX)
                    .map(|&y| new_id[y])
                    .collect()
            })
            .collect();
        (Self::build(rot, None).expect("filtered rotation stays planar"), old)
    }

    /// Face/edge/vertex statistics relative to the designated outer faces.
    pub fn profile(&self) -> FaceProfile {
        let mut f_counts = BTreeMap::new();
        for f in &self.faces {
            *f_counts.entry(f.size()).or_insert(0) += 1;
        }
        let (mut e3, mut e33, mut e33_prime) = (0, 0, 0);
        for (u, v) in self.edges() {
            let a = self.face_of(u, v).unwrap();
            let b = self.face_of(v, u).unwrap();
            let (ta, tb) = (self.faces[a].size() == 3, self.faces[b].size() == 3);
            if ta || tb {
                e3 += 1;
            }
            if ta && tb {
                e33 += 1;
                if !self.is_outer(a) && !self.is_outer(b) {
                    e33_prime += 1;
                }
            }
        }
        let degrees = self.degrees();
        let mut nk = BTreeMap::new();
        for v in 0..self.vertex_count() {
            let d = degrees[v];
            if d > 0 && self.corner_faces(v).all(|f| self.is_inner_triangle(f)) {
                *nk.entry(d).or_insert(0) += 1;
            }
        }
        let n = self.vertex_count();
        FaceProfile {
            vertex_count: n,
            edge_count: self.edge_count(),
            f_counts,
            e3,
            e33,
            e33_prime,
            nk,
            min_degree: degrees.iter().copied().min().unwrap_or(0),
            max_degree: degrees.iter().copied().max().unwrap_or(0),
            avg_degree: if n == 0 { 0.0 } else { 2.0 * self.edge_count() as f64 / n as f64 },
            degrees,
        }
    }

    /// `G_v`: the union of the boundaries of all 3-faces incident with `v`.
    pub fn link_graph(&self, v: Vertex) -> Result<SubgraphView> {
        if !self.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for f in self.corner_faces(v) {
            let face = &self.faces[f];
            if face.size() != 3 {
                continue;
            }
            for &(a, b) in &face.walk {
                vertices.insert(a);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        Ok(SubgraphView {
            vertices: vertices.into_iter().collect(),
            edges: edges.into_iter().collect(),
        })
    }

    pub fn triangle_face_count(&self) -> usize {
        self.faces.iter().filter(|f| f.size() == 3).count()
    }

    pub fn is_triangulation(&self) -> bool {
        self.is_connected() && self.faces.iter().all(|f| f.size() == 3)
    }
}

fn components(rot: &[Vec<Vertex>]) -> Vec<usize> {
    let n = rot.len();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &rot[x] {
                if comp[y] == usize::MAX {
                    comp[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    comp
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceProfile {
    pub vertex_count: usize,
    pub edge_count: usize,
    /// `f_i`: number of faces of size `i`.
    pub f_counts: BTreeMap<usize, usize>,
    /// Edges on at least one 3-face.
    pub e3: usize,
    /// Edges on two 3-faces (outer included).
    pub e33: usize,
    /// Edges on two inner 3-faces.
    pub e33_prime: usize,
    /// `n_k`: k-vertices all of whose k corners are inner 3-faces.
    pub nk: BTreeMap<usize, usize>,
    pub degrees: Vec<usize>,
    pub min_degree: usize,
    pub max_degree: usize,
    pub avg_degree: f64,
}

impl FaceProfile {
    pub fn f(&self, size: usize) -> usize {
        self.f_counts.get(&size).copied().unwrap_or(0)
    }

    pub fn n_k(&self, k: usize) -> usize {
        self.nk.get(&k).copied().unwrap_or(0)
    }

    pub fn face_count(&self) -> usize {
        self.f_counts.values().sum()
    }
}

/// Vertex and edge subset of a parent plane graph; the rotation order of the
/// subset is the parent's order filtered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphView {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkComponent {
    Path(Vec<Vertex>),
    Cycle(Vec<Vertex>),
}

impl SubgraphView {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Components of the view with `center` removed. Every component of a
    /// link graph minus its centre is a path or a cycle.
    pub fn components_without(&self, center: Vertex) -> Vec<LinkComponent> {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for &v in &self.vertices {
            if v != center {
                adj.entry(v).or_default();
            }
        }
        for &(a, b) in &self.edges {
            if a != center && b != center {
                adj.entry(a).or_default().push(b);
                adj.entry(b).or_default().push(a);
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        // Paths first from their endpoints, then the remaining cycles.
        let starts: Vec<Vertex> = adj
            .iter()
            .filter(|(_, n)| n.len() <= 1)
            .map(|(&v, _)| v)
            .chain(adj.keys().copied())
            .collect();
        for s in starts {
            if seen.contains(&s) {
                continue;
            }
            let is_path = adj[&s].len() <= 1;
            let mut walk = vec![s];
            seen.insert(s);
            let mut cur = s;
            while let Some(&nx) = adj[&cur].iter().find(|x| !seen.contains(x)) {
                seen.insert(nx);
                walk.push(nx);
                cur = nx;
            }
            out.push(if is_path {
                LinkComponent::Path(walk)
            } else {
                LinkComponent::Cycle(walk)
            });
        }
        out
    }

    /// The view as a stand-alone plane graph (ids relabelled in increasing
    /// order) with rotations inherited from `parent`.
    pub fn to_plane_graph(&self, parent: &PlaneGraph) -> PlaneGraph {
        let idx: BTreeMap<Vertex, usize> =
            self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let es: BTreeSet<(Vertex, Vertex)> = self.edges.iter().copied().collect();
        let rot = self
            .vertices
            .iter()
            .map(|&v| {
                parent
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| es.contains(&(v.min(w), v.max(w))))
                    .map(|w| idx[w])
                    .collect()
            })
            .collect();
        PlaneGraph::build(rot, None).expect("sub-rotation of a plane graph is planar")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn k4() -> PlaneGraph {
        PlaneGraph::from_face_cycles(4, &[vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]], None)
            .unwrap()
    }

    fn triangle() -> PlaneGraph {
        PlaneGraph::build(vec![vec![1, 2], vec![2, 0], vec![0, 1]], None).unwrap()
    }

    fn bowtie() -> PlaneGraph {
        // Two triangles 0-1-2 and 0-3-4 sharing vertex 0.
        PlaneGraph::build(
            vec![vec![1, 2, 3, 4], vec![2, 0], vec![0, 1], vec![4, 0], vec![0, 3]],
            None,
        )
        .unwrap()
    }

    #[test]
    fn k4_faces() {
        let g = k4();
        assert_eq!(g.face_count(), 4);
        assert!(g.faces().iter().all(|f| f.size() == 3));
        let p = g.profile();
        assert_eq!((p.e3, p.e33, p.f(3)), (6, 6, 4));
    }

    #[test]
    fn single_triangle_has_two_faces() {
        let g = triangle();
        assert_eq!(g.face_count(), 2);
        assert!(g.faces().iter().all(|f| f.size() == 3));
    }

    #[test]
    fn path_has_one_face() {
        let g = PlaneGraph::build(vec![vec![1], vec![0, 2], vec![1]], None).unwrap();
        assert_eq!(g.face_count(), 1);
        assert_eq!(g.faces()[0].size(), 4);
    }

    #[test]
    fn rejects_bad_rotations() {
        assert!(matches!(
            PlaneGraph::build(vec![vec![0]], None),
            Err(Error::NonSimple(_))
        ));
        assert!(matches!(
            PlaneGraph::build(vec![vec![1, 1], vec![0]], None),
            Err(Error::NonSimple(_))
        ));
        assert!(matches!(
            PlaneGraph::build(vec![vec![1], vec![]], None),
            Err(Error::AsymmetricAdjacency(0, 1))
        ));
        // K4 with a twisted rotation at one vertex lands on the torus-like side.
        let bad = vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]];
        assert!(matches!(
            PlaneGraph::build(bad, None),
            Err(Error::NonPlanarRotation { .. })
        ));
    }

    #[test]
    fn outer_face_defaults_to_largest_then_smallest_dart() {
        let g = k4().delete_edge(0, 1).unwrap();
        let outer = g.outer_face().unwrap();
        assert_eq!(g.faces()[outer].size(), 4);
        // All faces of K4 tie; the face with the smallest dart (0,1) wins.
        let k = k4();
        assert_eq!(k.outer_face(), k.face_of(0, 1));
        assert_eq!(k.outer_face(), Some(0));
    }

    #[test]
    fn k4_minus_edge_faces() {
        let g = k4().delete_edge(2, 3).unwrap();
        let p = g.profile();
        assert_eq!(g.face_count(), 3);
        assert_eq!((p.f(3), p.f(4)), (2, 1));
    }

    #[test]
    fn delete_isolated_vertex() {
        let g = PlaneGraph::build(vec![vec![1, 2], vec![2, 0], vec![0, 1], vec![]], None).unwrap();
        let (h, map) = g.delete_vertex(3).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 3);
        assert_eq!(map, vec![Some(0), Some(1), Some(2), None]);
    }

    #[test]
    fn disconnected_euler() {
        let g = PlaneGraph::build(
            vec![vec![1, 2], vec![2, 0], vec![0, 1], vec![4], vec![3], vec![]],
            None,
        )
        .unwrap();
        assert_eq!(g.component_count(), 3);
        assert_eq!(g.outer_faces().len(), 2);
        let (n, e, f) = (g.vertex_count(), g.edge_count(), g.sphere_face_count());
        assert_eq!(n + f, e + 1 + g.component_count());
    }

    #[test]
    fn reroot_k4_keeps_n3() {
        let g = k4();
        assert_eq!(g.profile().n_k(3), 1);
        for f in 0..4 {
            let h = g.reroot(f).unwrap();
            assert_eq!(h.profile().n_k(3), 1);
            assert_eq!(h.profile().f_counts, g.profile().f_counts);
        }
        assert_eq!(g.reroot(g.outer_face().unwrap()).unwrap(), g);
        assert!(matches!(g.reroot(9), Err(Error::UnknownFace(9))));
    }

    #[test]
    fn link_graph_of_bowtie_center() {
        let g = bowtie();
        let view = g.link_graph(0).unwrap();
        assert_eq!(view.vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(view.edges.len(), 6);
        let comps = view.components_without(0);
        assert_eq!(comps, vec![LinkComponent::Path(vec![1, 2]), LinkComponent::Path(vec![3, 4])]);
    }

    #[test]
    fn link_graph_empty_without_triangles() {
        let g = PlaneGraph::build(vec![vec![1], vec![0, 2], vec![1]], None).unwrap();
        assert!(g.link_graph(1).unwrap().is_empty());
        assert!(matches!(g.link_graph(5), Err(Error::UnknownVertex(5))));
    }

    #[test]
    fn delete_then_insert_restores_rotation() {
        let g = k4();
        let (u, v) = (0, 1);
        let pu = g.neighbors(u).iter().position(|&x| x == v).unwrap();
        let pv = g.neighbors(v).iter().position(|&x| x == u).unwrap();
        let h = g.delete_edge(u, v).unwrap().insert_edge(u, pu, v, pv).unwrap();
        assert_eq!(h.rotations(), g.rotations());
    }

    #[test]
    fn unknown_elements() {
        let g = k4();
        assert!(matches!(g.delete_edge(0, 0), Err(Error::UnknownEdge(0, 0))));
        assert!(matches!(g.delete_vertex(4), Err(Error::UnknownVertex(4))));
    }
}
