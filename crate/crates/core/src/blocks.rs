//! Triangular-blocks and improvement-blocks.
//!
//! A triangular-block is a maximal set of 3-faces closed under sharing an
//! edge; it is computed here as a connected component of the dual graph
//! restricted to 3-faces, which is the same fixpoint as growing it one face
//! at a time but does not depend on the starting face.
//!
//! The block is stored as its own plane graph (rotations inherited from the
//! host, vertices renumbered by increasing host id). Its faces are either
//! "solid" (an inner 3-face of the host) or belong to the C-set: the face
//! containing the host's outer face plus every other face that is not an
//! inner 3-face of the host. Besides the faces of size at least four this
//! includes triangles of the block that enclose further structure of the
//! host; without them the edge-disjointness of the C-set and the per-block
//! decomposition of `e_{3,3}` would fail on such hosts.
//!
//! All inequality checks use exact integer arithmetic after clearing
//! denominators; slacks are reported in those scaled units.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::canon::canonical_code;
use crate::construct;
use crate::detect::{find_fk, find_hk};
use crate::error::{Error, Result};
use crate::plane::{Dart, FaceId, PlaneGraph, Vertex};

fn ratio_str<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangularBlock {
    pub id: usize,
    /// Host edges of the block, `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(Vertex, Vertex)>,
    /// Host vertices of the block, sorted; local vertex `i` is `vertices[i]`.
    pub vertices: Vec<Vertex>,
    #[serde(skip)]
    pub block_graph: PlaneGraph,
    /// Host 3-faces making up the block.
    pub host_faces: Vec<FaceId>,
    /// C-faces as face ids of `block_graph`; the first is the outer one.
    pub c_faces: Vec<FaceId>,
    /// Number of C-face corners at each local vertex. Faces of a block are
    /// cycles, so this is also the number of incident C-faces.
    pub alpha: Vec<usize>,
    /// Host vertices with `alpha == 2`; `None` when some vertex has `alpha > 2`.
    pub a_set: Option<Vec<Vertex>>,
    /// Host vertices lying in exactly two blocks.
    pub b_set: Vec<Vertex>,
    pub l_sizes: Vec<usize>,
    pub e3_block: usize,
    pub e33_prime: usize,
    /// Vertices of block degree 5 all of whose corners are inner 3-faces of the host.
    pub n5: usize,
    #[serde(serialize_with = "ratio_str")]
    pub n_contribution: Rational64,
    /// Whether the host's outer face is a 3-face.
    pub host_outer_is_triangle: bool,
}

impl TriangularBlock {
    pub fn c_face_count(&self) -> usize {
        self.c_faces.len()
    }

    pub fn local(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn block_degree(&self, v: Vertex) -> usize {
        self.local(v).map_or(0, |i| self.block_graph.degree(i))
    }

    /// No edge of the block lies on two C-faces.
    pub fn c_faces_edge_disjoint(&self) -> bool {
        let c: HashSet<FaceId> = self.c_faces.iter().copied().collect();
        self.block_graph.edges().into_iter().all(|(u, v)| {
            let a = self.block_graph.face_of(u, v).unwrap();
            let b = self.block_graph.face_of(v, u).unwrap();
            !(c.contains(&a) && c.contains(&b))
        })
    }
}

/// All triangular-blocks of `g`, ordered by their smallest host face id.
pub fn triangular_blocks(g: &PlaneGraph) -> Vec<TriangularBlock> {
    let faces = g.faces();
    let is_tri: Vec<bool> = faces.iter().map(|f| f.size() == 3).collect();
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (u, v) in g.edges() {
        let a = g.face_of(u, v).unwrap();
        let b = g.face_of(v, u).unwrap();
        if is_tri[a] && is_tri[b] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<FaceId>> = BTreeMap::new();
    for f in 0..faces.len() {
        if is_tri[f] {
            let r = find(&mut parent, f);
            groups.entry(r).or_default().push(f);
        }
    }

    let mut block_count = vec![0usize; g.vertex_count()];
    let mut raw = Vec::new();
    for host_faces in groups.into_values() {
        let mut edges = BTreeSet::new();
        let mut verts = BTreeSet::new();
        for &f in &host_faces {
            for &(u, v) in &faces[f].walk {
                edges.insert((u.min(v), u.max(v)));
                verts.insert(u);
            }
        }
        for &v in &verts {
            block_count[v] += 1;
        }
        raw.push((host_faces, edges, verts));
    }

    let host_outer_is_triangle = g.outer_faces().iter().any(|&f| faces[f].size() == 3);
    raw.into_iter()
        .enumerate()
        .map(|(id, (host_faces, edges, verts))| {
            build_block(g, id, host_faces, edges, verts.into_iter().collect(), &block_count, host_outer_is_triangle)
        })
        .collect()
}

fn build_block(
    g: &PlaneGraph,
    id: usize,
    host_faces: Vec<FaceId>,
    edges: BTreeSet<(Vertex, Vertex)>,
    vertices: Vec<Vertex>,
    block_count: &[usize],
    host_outer_is_triangle: bool,
) -> TriangularBlock {
    let local = |v: Vertex| vertices.binary_search(&v).unwrap();
    let in_block = |u: Vertex, v: Vertex| edges.contains(&(u.min(v), u.max(v)));
    let rot: Vec<Vec<usize>> = vertices
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&w| in_block(v, w)).map(|&w| local(w)).collect())
        .collect();

    let (gu, gv) = gamma_dart(g, vertices[0], &in_block);
    let bg = PlaneGraph::build(rot, Some((local(gu), local(gv)))).expect("sub-rotation of a plane graph is plane");
    let gamma = bg.outer_face().unwrap();

    // A block face is solid when it coincides with an inner 3-face of the host.
    let solid: Vec<bool> = bg
        .faces()
        .iter()
        .map(|f| {
            if f.id == gamma || f.size() != 3 {
                return false;
            }
            let (a, b) = f.walk[0];
            let hf = g.face_of(vertices[a], vertices[b]).unwrap();
            g.face(hf).unwrap().size() == 3 && !g.is_outer(hf)
        })
        .collect();
    let mut c_faces = vec![gamma];
    c_faces.extend(bg.faces().iter().filter(|f| f.id != gamma && !solid[f.id]).map(|f| f.id));
    let in_c: Vec<bool> = (0..bg.face_count()).map(|f| !solid[f]).collect();

    let n = vertices.len();
    let alpha: Vec<usize> = (0..n).map(|v| bg.corner_faces(v).filter(|&f| in_c[f]).count()).collect();
    let a_set = if alpha.iter().all(|&a| a <= 2) {
        Some((0..n).filter(|&v| alpha[v] == 2).map(|v| vertices[v]).collect())
    } else {
        None
    };
    let b_set: Vec<Vertex> = vertices.iter().copied().filter(|&v| block_count[v] == 2).collect();
    let l_sizes: Vec<usize> = c_faces.iter().map(|&f| bg.face(f).unwrap().size()).collect();

    let e33_prime = edges
        .iter()
        .filter(|&&(u, v)| {
            let a = g.face_of(u, v).unwrap();
            let b = g.face_of(v, u).unwrap();
            g.is_inner_triangle(a) && g.is_inner_triangle(b)
        })
        .count();
    let n5 = (0..n)
        .filter(|&v| bg.degree(v) == 5 && bg.corner_faces(v).all(|f| solid[f]))
        .count();
    let n_contribution = vertices
        .iter()
        .map(|&v| Rational64::new(1, block_count[v] as i64))
        .sum();

    TriangularBlock {
        id,
        e3_block: edges.len(),
        edges: edges.into_iter().collect(),
        vertices,
        block_graph: bg,
        host_faces,
        c_faces,
        alpha,
        a_set,
        b_set,
        l_sizes,
        e33_prime,
        n5,
        n_contribution,
        host_outer_is_triangle,
    }
}

/// A host dart of a block edge whose side faces the host's outer face, found
/// by walking from the outer face across edges outside the block.
fn gamma_dart(g: &PlaneGraph, any_vertex: Vertex, in_block: &dyn Fn(Vertex, Vertex) -> bool) -> Dart {
    let comp = g.component_of(any_vertex);
    let start = g
        .outer_faces()
        .into_iter()
        .find(|&f| g.component_of(g.face(f).unwrap().walk[0].0) == comp)
        .expect("component with edges has an outer face");
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        for &(u, v) in &g.face(f).unwrap().walk {
            if in_block(u, v) {
                return (u, v);
            }
            let h = g.face_of(v, u).unwrap();
            if seen.insert(h) {
                queue.push_back(h);
            }
        }
    }
    unreachable!("block edges lie in the component")
}

/// Sum of block contributions equals the number of vertices on 3-faces.
pub fn vertices_on_triangles(g: &PlaneGraph) -> usize {
    (0..g.vertex_count())
        .filter(|&v| g.corner_faces(v).any(|f| g.face(f).unwrap().size() == 3))
        .count()
}

#[derive(Debug, Clone, Serialize)]
pub struct ImprovementBlock {
    #[serde(skip)]
    pub block_graph: PlaneGraph,
    /// Host vertex of each vertex of `block_graph`.
    pub origin: Vec<Vertex>,
    /// Faces holding darts of the original C-faces; the first is the outer one.
    pub c_faces: Vec<FaceId>,
    pub l_sizes: Vec<usize>,
    pub e3: usize,
    /// Edges with a non-C face on both sides.
    pub e33_prime: usize,
}

impl ImprovementBlock {
    pub fn vertex_count(&self) -> usize {
        self.block_graph.vertex_count()
    }

    pub fn max_degree(&self) -> usize {
        self.block_graph.max_degree()
    }

    /// Every vertex lies on at most one C-face.
    pub fn c_faces_vertex_disjoint(&self) -> bool {
        let c: HashSet<FaceId> = self.c_faces.iter().copied().collect();
        (0..self.vertex_count()).all(|v| {
            let touched: BTreeSet<FaceId> = self.block_graph.corner_faces(v).filter(|f| c.contains(f)).collect();
            touched.len() <= 1
        })
    }
}

/// Splits every vertex with at least two C-corners into one copy per run of
/// consecutive solid corners, processing vertices by increasing id until no
/// such vertex remains.
pub fn improvement_block(block: &TriangularBlock) -> Result<ImprovementBlock> {
    if block.host_outer_is_triangle {
        return Err(Error::OuterFaceIsTriangle);
    }
    let bg = &block.block_graph;
    let c: HashSet<FaceId> = block.c_faces.iter().copied().collect();
    let mut c_darts: HashSet<Dart> = bg
        .faces()
        .iter()
        .filter(|f| c.contains(&f.id))
        .flat_map(|f| f.walk.iter().copied())
        .collect();
    let mut gamma = bg.face(block.c_faces[0]).unwrap().walk[0];
    let mut rot: Vec<Vec<usize>> = bg.rotations().to_vec();
    let mut origin: Vec<Vertex> = block.vertices.clone();

    loop {
        // Corner i at v lies between rot[v][i] and rot[v][i+1]; it belongs to the
        // face of the dart (v, rot[v][i+1]).
        let target = (0..rot.len()).find_map(|v| {
            let d = rot[v].len();
            let corners: Vec<usize> = (0..d).filter(|&i| c_darts.contains(&(v, rot[v][(i + 1) % d]))).collect();
            (corners.len() >= 2).then_some((v, corners))
        });
        let Some((v, corners)) = target else { break };
        let d = rot[v].len();
        let old = rot[v].clone();
        let mut runs: Vec<Vec<usize>> = Vec::new();
        for (r, &p) in corners.iter().enumerate() {
            let q = corners[(r + 1) % corners.len()];
            let len = (q + d - p) % d;
            let len = if len == 0 { d } else { len };
            runs.push((1..=len).map(|s| old[(p + s) % d]).collect());
        }
        for (r, run) in runs.iter().enumerate() {
            let id = if r == 0 { v } else { rot.len() };
            if r > 0 {
                rot.push(Vec::new());
                origin.push(origin[v]);
            }
            for &x in run {
                let pos = rot[x].iter().position(|&y| y == v).unwrap();
                rot[x][pos] = id;
                for dart in [(v, x), (x, v)] {
                    if c_darts.remove(&dart) {
                        c_darts.insert(if dart.0 == v { (id, x) } else { (x, id) });
                    }
                    if gamma == dart {
                        gamma = if dart.0 == v { (id, x) } else { (x, id) };
                    }
                }
            }
            rot[id] = run.clone();
        }
    }

    let tg = PlaneGraph::build(rot, Some(gamma))?;
    let outer = tg.face_of(gamma.0, gamma.1).unwrap();
    let mut c_faces = vec![outer];
    let mut extra: BTreeSet<FaceId> = c_darts.iter().map(|&(a, b)| tg.face_of(a, b).unwrap()).collect();
    extra.remove(&outer);
    c_faces.extend(extra);
    let cset: HashSet<FaceId> = c_faces.iter().copied().collect();
    let l_sizes = c_faces.iter().map(|&f| tg.face(f).unwrap().size()).collect();
    let e33_prime = tg
        .edges()
        .into_iter()
        .filter(|&(a, b)| !cset.contains(&tg.face_of(a, b).unwrap()) && !cset.contains(&tg.face_of(b, a).unwrap()))
        .count();
    Ok(ImprovementBlock {
        e3: tg.edge_count(),
        block_graph: tg,
        origin,
        c_faces,
        l_sizes,
        e33_prime,
    })
}

/// Makes every component's outer face a non-3-face by rerooting. Returns
/// `None` when some component has no other face to use (it is a
/// triangulation).
pub fn normalize_outer(g: &PlaneGraph) -> Result<Option<PlaneGraph>> {
    let mut h = g.clone();
    for f in g.outer_faces() {
        if g.face(f).unwrap().size() != 3 {
            continue;
        }
        let comp = g.component_of(g.face(f).unwrap().walk[0].0);
        let alt = g
            .faces()
            .iter()
            .find(|x| x.size() != 3 && g.component_of(x.walk[0].0) == comp)
            .map(|x| x.id);
        match alt {
            Some(a) => h = h.reroot(a)?,
            None => return Ok(None),
        }
    }
    Ok(Some(h))
}

#[derive(Debug, Clone, Serialize)]
pub struct H3BlockCheck {
    pub block: usize,
    pub vertices: usize,
    pub l_sizes: Vec<usize>,
    pub c_faces: usize,
    pub a: usize,
    pub b: usize,
    pub e3: usize,
    pub e33_prime: usize,
    pub n5: usize,
    #[serde(serialize_with = "ratio_str")]
    pub n_contribution: Rational64,
    pub alpha_max: usize,
    /// `2 l_0 + 2 sum l_i - 6|C| + |A| - 2|B| + 12 - |V|`.
    pub face_slack: i64,
    /// `6|V| - 3|B| - 8 n_5` (the per-block n_5 bound times eight).
    pub degree_slack: i64,
    /// `|C| - 1 - |A|`.
    pub c_face_slack: i64,
    pub c_edge_disjoint: bool,
    pub a_b_disjoint: bool,
    pub degree_violations: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct H3Report {
    pub skipped: Option<String>,
    pub n: usize,
    pub n5: usize,
    #[serde(serialize_with = "ratio_str")]
    pub sum_n_contribution: Rational64,
    /// `n - sum n(F)`.
    #[serde(serialize_with = "ratio_str")]
    pub share_slack: Rational64,
    /// `3n - 4 n_5(G)`.
    pub n5_slack: i64,
    pub blocks: Vec<H3BlockCheck>,
    pub violations: Vec<String>,
}

impl H3Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the per-block and global inequalities of the friendship argument
/// on an `H_3`-free plane graph.
pub fn block_inequalities_h3(g: &PlaneGraph) -> Result<H3Report> {
    if let Some(w) = find_hk(g, 3) {
        return Err(Error::PreconditionViolated(format!("graph contains H3: {w}")));
    }
    let n = g.vertex_count();
    let n5_g = g.profile().n_k(5);
    let mut report = H3Report {
        skipped: None,
        n,
        n5: n5_g,
        sum_n_contribution: Rational64::from_integer(0),
        share_slack: Rational64::from_integer(n as i64),
        n5_slack: 3 * n as i64 - 4 * n5_g as i64,
        blocks: Vec::new(),
        violations: Vec::new(),
    };
    let Some(h) = normalize_outer(g)? else {
        report.skipped = Some("a component is a triangulation; no non-3-face to serve as outer face".into());
        return Ok(report);
    };
    let blocks = triangular_blocks(&h);
    let mut v = Vec::new();
    let mut sum_n5 = 0;
    for b in &blocks {
        let alpha_max = b.alpha.iter().copied().max().unwrap_or(0);
        let mut degree_violations = Vec::new();
        let (a, a_b_disjoint) = match &b.a_set {
            None => {
                v.push(format!("block {}: alpha {} > 2", b.id, alpha_max));
                (0, true)
            }
            Some(a) => {
                for &x in a {
                    let d = b.block_degree(x);
                    if !(4..=6).contains(&d) {
                        degree_violations.push(format!("vertex {x} in A has block degree {d}"));
                    }
                }
                for (i, &x) in b.vertices.iter().enumerate() {
                    if b.alpha[i] != 2 && b.block_graph.degree(i) > 5 {
                        degree_violations.push(format!("vertex {x} outside A has block degree {}", b.block_graph.degree(i)));
                    }
                }
                (a.len(), a.iter().all(|x| !b.b_set.contains(x)))
            }
        };
        for &x in &b.b_set {
            let d = b.block_degree(x);
            if d > 3 {
                degree_violations.push(format!("vertex {x} in B has block degree {d}"));
            }
        }
        let vcount = b.vertices.len() as i64;
        let cc = b.c_face_count() as i64;
        let l0 = b.l_sizes[0] as i64;
        let lrest: i64 = b.l_sizes[1..].iter().map(|&l| l as i64).sum();
        let bb = b.b_set.len() as i64;
        let face_slack = 2 * l0 + 2 * lrest - 6 * cc + a as i64 - 2 * bb + 12 - vcount;
        let degree_slack = 6 * vcount - 3 * bb - 8 * b.n5 as i64;
        let c_face_slack = cc - 1 - a as i64;
        let c_edge_disjoint = b.c_faces_edge_disjoint();
        for (name, ok) in [
            ("face", face_slack >= 0),
            ("degree", degree_slack >= 0),
            ("c-faces", c_face_slack >= 0),
            ("c-faces edge-disjoint", c_edge_disjoint),
            ("A and B disjoint", a_b_disjoint),
        ] {
            if !ok {
                v.push(format!("block {}: {name} fails", b.id));
            }
        }
        v.extend(degree_violations.iter().map(|s| format!("block {}: {s}", b.id)));
        sum_n5 += b.n5;
        report.sum_n_contribution += b.n_contribution;
        report.blocks.push(H3BlockCheck {
            block: b.id,
            vertices: b.vertices.len(),
            l_sizes: b.l_sizes.clone(),
            c_faces: b.c_face_count(),
            a,
            b: b.b_set.len(),
            e3: b.e3_block,
            e33_prime: b.e33_prime,
            n5: b.n5,
            n_contribution: b.n_contribution,
            alpha_max,
            face_slack,
            degree_slack,
            c_face_slack,
            c_edge_disjoint,
            a_b_disjoint,
            degree_violations,
        });
    }
    report.share_slack = Rational64::from_integer(n as i64) - report.sum_n_contribution;
    if report.share_slack < Rational64::from_integer(0) {
        v.push("vertex shares exceed n".into());
    }
    if report.n5_slack < 0 {
        v.push("4 n5 exceeds 3n".into());
    }
    if sum_n5 != n5_g {
        v.push(format!("block n5 sum {sum_n5} differs from n5(G) = {n5_g}"));
    }
    report.violations = v;
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct FanBlockCheck {
    pub block: usize,
    pub e3: usize,
    pub e33_prime: usize,
    pub tilde_vertices: usize,
    pub tilde_e3: usize,
    pub tilde_e33_prime: usize,
    pub tilde_c_faces: usize,
    pub tilde_l_sizes: Vec<usize>,
    pub tilde_max_degree: usize,
    pub c_vertex_disjoint: bool,
    /// `k |V| - 2 e_3` on the improvement block.
    pub e3_slack: i64,
    /// `2 sum l - (6-k)|V| - 6|C| + 12` on the improvement block.
    pub fan_face_slack: i64,
    /// `(3k-6) e_3 - 2k e'_{3,3}` on the triangular-block.
    pub e33_block_slack: i64,
    pub is_jk: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FanReport {
    pub k: usize,
    pub skipped: Option<String>,
    pub e3: usize,
    pub e33: usize,
    pub f3: usize,
    /// `(3k-6) e_3(G) - 2k e_{3,3}(G)`.
    pub e33_slack: i64,
    /// `(5k-6) e_3(G) - 6k f_3(G)`.
    pub f3_slack: i64,
    pub blocks: Vec<FanBlockCheck>,
    pub violations: Vec<String>,
}

impl FanReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the per-block and global inequalities of the fan argument on an
/// `F_k`-free plane graph, `2 <= k <= 5`.
pub fn block_inequalities_fan(g: &PlaneGraph, k: usize) -> Result<FanReport> {
    if !(2..=5).contains(&k) {
        return Err(Error::KOutOfRange(k));
    }
    if let Some(w) = find_fk(g, k)? {
        return Err(Error::PreconditionViolated(format!("graph contains F{k}: {w}")));
    }
    let p = g.profile();
    let ki = k as i64;
    let mut report = FanReport {
        k,
        skipped: None,
        e3: p.e3,
        e33: p.e33,
        f3: p.f(3),
        e33_slack: (3 * ki - 6) * p.e3 as i64 - 2 * ki * p.e33 as i64,
        f3_slack: (5 * ki - 6) * p.e3 as i64 - 6 * ki * p.f(3) as i64,
        blocks: Vec::new(),
        violations: Vec::new(),
    };
    let Some(h) = normalize_outer(g)? else {
        report.skipped = Some("a component is a triangulation; no non-3-face to serve as outer face".into());
        return Ok(report);
    };
    let jk = canonical_code(&construct::j_k(k)?)?;
    let mut v = Vec::new();
    let mut sum_e33 = 0;
    for b in triangular_blocks(&h) {
        let t = improvement_block(&b)?;
        let tv = t.vertex_count() as i64;
        let sum_l: i64 = t.l_sizes.iter().map(|&l| l as i64).sum();
        let e3_slack = ki * tv - 2 * t.e3 as i64;
        let fan_face_slack = 2 * sum_l - (6 - ki) * tv - 6 * t.c_faces.len() as i64 + 12;
        let e33_block_slack = (3 * ki - 6) * b.e3_block as i64 - 2 * ki * b.e33_prime as i64;
        let is_jk = canonical_code(&b.block_graph)? == jk;
        let c_vertex_disjoint = t.c_faces_vertex_disjoint();
        for (name, ok) in [
            ("max degree", t.max_degree() <= k),
            ("e3 bound", e3_slack >= 0),
            ("fan face", fan_face_slack >= 0),
            ("e33 block", e33_block_slack >= 0),
            ("e33 equality iff J_k", (e33_block_slack == 0) == is_jk),
            ("e3 conserved", t.e3 == b.e3_block),
            ("e33' conserved", t.e33_prime == b.e33_prime),
            ("C vertex-disjoint", c_vertex_disjoint),
        ] {
            if !ok {
                v.push(format!("block {}: {name} fails", b.id));
            }
        }
        sum_e33 += b.e33_prime;
        report.blocks.push(FanBlockCheck {
            block: b.id,
            e3: b.e3_block,
            e33_prime: b.e33_prime,
            tilde_vertices: t.vertex_count(),
            tilde_e3: t.e3,
            tilde_e33_prime: t.e33_prime,
            tilde_c_faces: t.c_faces.len(),
            tilde_l_sizes: t.l_sizes.clone(),
            tilde_max_degree: t.max_degree(),
            c_vertex_disjoint,
            e3_slack,
            fan_face_slack,
            e33_block_slack,
            is_jk,
        });
    }
    if sum_e33 != p.e33 {
        v.push(format!("block e33' sum {sum_e33} differs from e33(G) = {}", p.e33));
    }
    if report.e33_slack < 0 {
        v.push("global e33 bound fails".into());
    }
    if report.f3_slack < 0 {
        v.push("global f3 bound fails".into());
    }
    report.violations = v;
    Ok(report)
}

/// One JSON object per block.
#[derive(Debug, Clone, Serialize)]
pub struct BlockRecord {
    pub block: usize,
    pub vertices: Vec<Vertex>,
    pub l_sizes: Vec<usize>,
    pub a: Option<usize>,
    pub b: usize,
    pub e3: usize,
    pub e33_prime: usize,
    #[serde(serialize_with = "ratio_str")]
    pub n_contribution: Rational64,
    pub alpha_max: usize,
    pub n5: usize,
    pub slacks: BTreeMap<String, i64>,
}

impl From<&TriangularBlock> for BlockRecord {
    fn from(b: &TriangularBlock) -> Self {
        let a = b.a_set.as_ref().map(Vec::len);
        let mut slacks = BTreeMap::new();
        if let Some(a) = a {
            let vcount = b.vertices.len() as i64;
            let cc = b.c_face_count() as i64;
            let bb = b.b_set.len() as i64;
            let l: i64 = b.l_sizes.iter().map(|&x| x as i64).sum();
            slacks.insert("face".into(), 2 * l - 6 * cc + a as i64 - 2 * bb + 12 - vcount);
            slacks.insert("degree".into(), 6 * vcount - 3 * bb - 8 * b.n5 as i64);
            slacks.insert("c-faces".into(), cc - 1 - a as i64);
        }
        BlockRecord {
            block: b.id,
            vertices: b.vertices.clone(),
            l_sizes: b.l_sizes.clone(),
            a,
            b: b.b_set.len(),
            e3: b.e3_block,
            e33_prime: b.e33_prime,
            n_contribution: b.n_contribution,
            alpha_max: b.alpha.iter().copied().max().unwrap_or(0),
            n5: b.n5,
            slacks,
        }
    }
}

impl fmt::Display for BlockRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "block {}: |V|={} l={:?} |A|={} |B|={} e3={} e33'={} n(F)={}",
            self.block,
            self.vertices.len(),
            self.l_sizes,
            self.a.map_or("-".to_string(), |a| a.to_string()),
            self.b,
            self.e3,
            self.e33_prime,
            self.n_contribution
        )
    }
}
