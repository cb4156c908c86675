//! Named plane graphs and the two recursive extremal families.
//!
//! Everything here is assembled from oriented face lists: a face is a vertex
//! cycle traversing its darts in the face-tracing direction, so gluing two
//! pieces along a boundary amounts to dropping the two boundary faces and
//! listing the remaining ones with the boundary vertices identified.

use crate::error::{Error, Result};
use crate::plane::{FaceId, PlaneGraph, Vertex};

/// A plane graph given by its face cycles, with one of them marked outer.
#[derive(Debug, Clone)]
struct FaceList {
    n: usize,
    faces: Vec<Vec<Vertex>>,
    outer: usize,
}

impl FaceList {
    fn build(&self) -> PlaneGraph {
        PlaneGraph::from_face_cycles(self.n, &self.faces, Some(self.outer)).expect("construction yields a plane graph")
    }

    fn shifted(&self, by: usize) -> Vec<Vec<Vertex>> {
        self.faces.iter().map(|f| f.iter().map(|&v| v + by).collect()).collect()
    }
}

fn k3_faces() -> FaceList {
    FaceList {
        n: 3,
        faces: vec![vec![0, 1, 2], vec![0, 2, 1]],
        outer: 0,
    }
}

fn k4_faces() -> FaceList {
    FaceList {
        n: 4,
        faces: vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]],
        outer: 3,
    }
}

fn octahedron_faces() -> FaceList {
    // Poles 0 and 5 around the ring 1..4.
    let mut faces = Vec::new();
    for i in 0..4 {
        let (a, b) = (1 + i, 1 + (i + 1) % 4);
        faces.push(vec![0, a, b]);
        faces.push(vec![b, a, 5]);
    }
    FaceList { n: 6, faces, outer: 7 }
}

fn icosahedron_faces() -> FaceList {
    // Pole 0, upper ring 1..5, lower ring 6..10, pole 11.
    let mut faces = Vec::new();
    for i in 0..5 {
        let (u, u1) = (1 + i, 1 + (i + 1) % 5);
        let (l, l1) = (6 + i, 6 + (i + 1) % 5);
        faces.push(vec![0, u, u1]);
        faces.push(vec![u, l, u1]);
        faces.push(vec![u1, l, l1]);
        faces.push(vec![l, 11, l1]);
    }
    FaceList { n: 12, faces, outer: 19 }
}

/// Triangles first, then squares; the squares `[2,0,5,6]` and `[3,8,9,11]`
/// are vertex-disjoint.
fn cuboctahedron_faces() -> FaceList {
    let faces = vec![
        vec![1, 0, 2],
        vec![1, 8, 3],
        vec![4, 3, 11],
        vec![5, 0, 4],
        vec![5, 10, 6],
        vec![7, 2, 6],
        vec![9, 8, 7],
        vec![11, 9, 10],
        vec![2, 0, 5, 6],
        vec![3, 8, 9, 11],
        vec![4, 0, 1, 3],
        vec![7, 8, 1, 2],
        vec![10, 9, 7, 6],
        vec![11, 10, 5, 4],
    ];
    FaceList { n: 12, faces, outer: 9 }
}
const CUBO_INNER_SLOT: usize = 8;
const CUBO_OUTER: usize = 9;

fn cube_faces() -> FaceList {
    let faces = vec![
        vec![0, 1, 2, 3],
        vec![4, 7, 6, 5],
        vec![0, 4, 5, 1],
        vec![1, 5, 6, 2],
        vec![2, 6, 7, 3],
        vec![3, 7, 4, 0],
    ];
    FaceList { n: 8, faces, outer: 1 }
}

pub fn k3() -> PlaneGraph {
    k3_faces().build()
}

pub fn k4() -> PlaneGraph {
    k4_faces().build()
}

pub fn octahedron() -> PlaneGraph {
    octahedron_faces().build()
}

pub fn icosahedron() -> PlaneGraph {
    icosahedron_faces().build()
}

pub fn cuboctahedron() -> PlaneGraph {
    cuboctahedron_faces().build()
}

pub fn cube() -> PlaneGraph {
    cube_faces().build()
}

/// The `k`-regular triangulation: K3, K4, octahedron, icosahedron for k = 2..5.
pub fn j_k(k: usize) -> Result<PlaneGraph> {
    jk_faces(k).map(|f| f.build())
}

fn jk_faces(k: usize) -> Result<FaceList> {
    match k {
        2 => Ok(k3_faces()),
        3 => Ok(k4_faces()),
        4 => Ok(octahedron_faces()),
        5 => Ok(icosahedron_faces()),
        _ => Err(Error::KOutOfRange(k)),
    }
}

pub const NAMES: &[&str] = &[
    "k3", "k4", "octahedron", "r1", "icosahedron", "r6", "cuboctahedron", "ring_base", "cube", "j2", "j3", "j4", "j5",
];

/// Looks up a named graph. `r1` and `r6` are aliases of the octahedron and
/// icosahedron, `ring_base` of the cuboctahedron, `jK` of [`j_k`].
pub fn named(name: &str) -> Result<PlaneGraph> {
    let g = match name.to_ascii_lowercase().as_str() {
        "k3" => k3(),
        "k4" => k4(),
        "octahedron" | "r1" => octahedron(),
        "icosahedron" | "r6" => icosahedron(),
        "cuboctahedron" | "ring_base" => cuboctahedron(),
        "cube" => cube(),
        s if s.starts_with('j') => {
            let k: usize = s[1..].parse().map_err(|_| Error::UnknownName(name.to_string()))?;
            j_k(k).map_err(|_| Error::UnknownName(name.to_string()))?
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(g)
}

/// Identification of a patch triangle with a host triangle: the patch face
/// is rotated by `rotation` steps and, if `reflect`, the patch is mirrored.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Alignment {
    pub rotation: usize,
    pub reflect: bool,
}

impl Alignment {
    pub fn all() -> impl Iterator<Item = Alignment> {
        (0..3).flat_map(|rotation| [false, true].map(|reflect| Alignment { rotation, reflect }))
    }
}

fn triangle_cycle(g: &PlaneGraph, f: FaceId) -> Result<Vec<Vertex>> {
    let face = g.face(f).ok_or(Error::UnknownFace(f))?;
    if face.size() != 3 {
        return Err(Error::NonTriangularFace(f));
    }
    Ok(face.walk.iter().map(|&(u, _)| u).collect())
}

/// Face cycles of `patch` with `patch_face` removed, relabelled so that the
/// patch triangle lands on the host triangle `(a, b, c)` (given in host
/// face-walk order); interior patch vertices get ids from `next` on.
fn patch_cycles(
    patch_cycles: &[Vec<Vertex>],
    patch_n: usize,
    patch_face: usize,
    tri: &[Vertex],
    host: [Vertex; 3],
    alignment: Alignment,
    next: usize,
) -> Vec<Vec<Vertex>> {
    let mut p: Vec<Vertex> = tri.to_vec();
    let mut cycles: Vec<Vec<Vertex>> = patch_cycles.to_vec();
    if alignment.reflect {
        p.reverse();
        for c in &mut cycles {
            c.reverse();
        }
    }
    p.rotate_left(alignment.rotation % 3);
    // The patch dart x->y lies on the removed face; its reverse must become
    // the host dart a->b, so y maps to a and x to b.
    let (x, y, z) = (p[0], p[1], p[2]);
    let [a, b, c] = host;
    let mut map = vec![usize::MAX; patch_n];
    map[y] = a;
    map[x] = b;
    map[z] = c;
    let mut id = next;
    for slot in map.iter_mut() {
        if *slot == usize::MAX {
            *slot = id;
            id += 1;
        }
    }
    cycles
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != patch_face)
        .map(|(_, c)| c.iter().map(|&v| map[v]).collect())
        .collect()
}

fn simplicity(e: Error) -> Error {
    match e {
        Error::NonSimple(_) | Error::NonPlanarRotation { .. } => Error::SimplicityViolated,
        other => other,
    }
}

/// Embeds `patch` inside the triangular `face` of `host`, identifying the
/// patch's triangular `patch_face` with the boundary of `face`.
pub fn glue_into_face(
    host: &PlaneGraph,
    face: FaceId,
    patch: &PlaneGraph,
    patch_face: FaceId,
    alignment: Alignment,
) -> Result<PlaneGraph> {
    glue_into_faces(host, &[face], patch, patch_face, alignment)
}

/// [`glue_into_face`] for several host triangles at once.
pub fn glue_into_faces(
    host: &PlaneGraph,
    faces: &[FaceId],
    patch: &PlaneGraph,
    patch_face: FaceId,
    alignment: Alignment,
) -> Result<PlaneGraph> {
    let tri = triangle_cycle(patch, patch_face)?;
    let host_tris = faces.iter().map(|&f| triangle_cycle(host, f)).collect::<Result<Vec<_>>>()?;
    let pcycles = patch.face_cycles();
    let mut cycles = Vec::new();
    let mut outer = None;
    for (i, c) in host.face_cycles().into_iter().enumerate() {
        if faces.contains(&i) {
            continue;
        }
        if host.is_outer(i) && outer.is_none() {
            outer = Some(cycles.len());
        }
        cycles.push(c);
    }
    let mut n = host.vertex_count();
    for t in &host_tris {
        cycles.extend(patch_cycles(&pcycles, patch.vertex_count(), patch_face, &tri, [t[0], t[1], t[2]], alignment, n));
        n += patch.vertex_count() - 3;
    }
    PlaneGraph::from_face_cycles(n, &cycles, outer).map_err(simplicity)
}

/// Replaces every 3-face of `host` by `J_k`, identifying `J_k`'s face 0 with
/// each host triangle read from its smallest dart.
pub fn replace_triangles_with_jk(host: &PlaneGraph, k: usize) -> Result<PlaneGraph> {
    let jk = j_k(k)?;
    let tris: Vec<FaceId> = host.faces().iter().filter(|f| f.size() == 3).map(|f| f.id).collect();
    glue_into_faces(host, &tris, &jk, 0, Alignment::default())
}

/// Quadrilaterals joining a host face (walk `q`) to the outer face (walk `w`)
/// of a graph placed inside it; the host darts and the inner outer-face darts
/// keep their direction.
fn annulus_quads(q: &[Vertex], w: &[Vertex]) -> Vec<Vec<Vertex>> {
    let m = q.len();
    let p = |j: usize| w[(m - j % m) % m];
    (0..m).map(|j| vec![q[j], q[(j + 1) % m], p(j + 1), p(j)]).collect()
}

/// `G_0`: an icosahedron placed inside a face of another, joined by three
/// independent edges; the outer face is one of the three quadrilaterals.
fn h3_base() -> FaceList {
    let a = icosahedron_faces();
    let b = icosahedron_faces();
    let host = a.faces[0].clone();
    let inner: Vec<Vertex> = b.faces[0].iter().map(|&v| v + 12).collect();
    let mut faces: Vec<Vec<Vertex>> = a.faces[1..].to_vec();
    faces.extend(b.shifted(12).into_iter().skip(1));
    let outer = faces.len();
    faces.extend(annulus_quads(&host, &inner));
    FaceList { n: 24, faces, outer }
}

fn h3_family_faces(k: usize) -> FaceList {
    let base = h3_base();
    if k == 0 {
        return base;
    }
    let inner = h3_family_faces(k - 1);
    // Shell quads sit at base.outer, base.outer + 1, base.outer + 2. The next
    // level keeps quad 0 as outer face and fills quad 1.
    let slot = base.outer + 1;
    let host = base.faces[slot].clone();
    let inner_outer: Vec<Vertex> = inner.faces[inner.outer].iter().map(|&v| v + base.n).collect();
    let mut faces: Vec<Vec<Vertex>> = base.faces.iter().enumerate().filter(|&(i, _)| i != slot).map(|(_, f)| f.clone()).collect();
    let outer = base.outer;
    faces.extend(inner.shifted(base.n).into_iter().enumerate().filter(|&(i, _)| i != inner.outer).map(|(_, f)| f));
    faces.extend(annulus_quads(&host, &inner_outer));
    FaceList {
        n: base.n + inner.n,
        faces,
        outer,
    }
}

/// The `H_3`-free extremal graph `G_k` on `24(k+1)` vertices.
pub fn h3_family(k: usize) -> PlaneGraph {
    h3_family_faces(k).build()
}

fn fan_base_faces(t: usize) -> FaceList {
    let shell = cuboctahedron_faces();
    if t == 0 {
        return shell;
    }
    let inner = fan_base_faces(t - 1);
    let off = shell.n + 8;
    let a = shell.faces[CUBO_INNER_SLOT].clone();
    let w: Vec<Vertex> = inner.faces[inner.outer].iter().map(|&v| v + off).collect();
    let b = |i: usize| w[(4 - i % 4) % 4];
    let uu = |i: usize| shell.n + (i % 4);
    let ww = |i: usize| shell.n + 4 + (i % 4);

    let mut faces: Vec<Vec<Vertex>> = shell
        .faces
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != CUBO_INNER_SLOT)
        .map(|(_, f)| f.clone())
        .collect();
    let outer = CUBO_OUTER - 1;
    faces.extend(inner.shifted(off).into_iter().enumerate().filter(|&(i, _)| i != inner.outer).map(|(_, f)| f));
    for i in 0..4 {
        let (ai, ai1) = (a[i], a[(i + 1) % 4]);
        faces.push(vec![ai, ww(i), uu(i)]);
        faces.push(vec![ai, ai1, uu(i + 1), ww(i)]);
        faces.push(vec![ww(i), uu(i + 1), b(i + 1)]);
        faces.push(vec![uu(i), ww(i), b(i + 1), b(i)]);
    }
    FaceList {
        n: off + inner.n,
        faces,
        outer,
    }
}

/// `F_2`-free base of the fan family: `20t + 12` vertices, `48t + 24` edges,
/// every edge on one triangle and one quadrilateral.
pub fn fan_base(t: usize) -> PlaneGraph {
    fan_base_faces(t).build()
}

/// `G_{t,k}`: [`fan_base`] with every triangle replaced by `J_k`.
pub fn fan_family(t: usize, k: usize) -> Result<PlaneGraph> {
    replace_triangles_with_jk(&fan_base(t), k)
}

/// Vertex and edge counts predicted for a family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct FamilyExpectation {
    pub n: usize,
    pub e: usize,
}

pub fn h3_expected(k: usize) -> FamilyExpectation {
    let n = 24 * (k + 1);
    FamilyExpectation { n, e: 67 * n / 24 - 4 }
}

pub fn fan_expected(t: usize, k: usize) -> Result<FamilyExpectation> {
    if !(2..=5).contains(&k) {
        return Err(Error::KOutOfRange(k));
    }
    let d = 6 - k;
    Ok(FamilyExpectation {
        n: ((28 * k + 24) * t + 12 * (k + 2)) / d,
        e: (96 * k * t + 48 * k) / d,
    })
}

/// Stacked rings between two apices, consecutive rings joined by a zigzag
/// band of triangles. `offsets[i]` rotates ring `i + 1` against ring `i`.
fn drum(rings: &[usize], offsets: &[usize]) -> FaceList {
    let mut start = vec![1];
    for &r in rings {
        start.push(start.last().unwrap() + r);
    }
    let n = start.last().unwrap() + 1;
    let bottom = n - 1;
    let v = |ring: usize, i: usize| start[ring] + i % rings[ring];
    let mut faces = Vec::new();
    for i in 0..rings[0] {
        faces.push(vec![0, v(0, i), v(0, i + 1)]);
    }
    for r in 0..rings.len() - 1 {
        let (p, q) = (rings[r], rings[r + 1]);
        let o = offsets[r];
        let b = |j: usize| v(r + 1, j + o);
        let (mut i, mut j) = (0, 0);
        while i < p || j < q {
            // Advance along the ring that is proportionally behind.
            let step_a = j == q || (i < p && (i + 1) * q <= (j + 1) * p);
            if step_a {
                faces.push(vec![v(r, i + 1), v(r, i), b(j)]);
                i += 1;
            } else {
                faces.push(vec![b(j), b(j + 1), v(r, i)]);
                j += 1;
            }
        }
    }
    let last = rings.len() - 1;
    for j in 0..rings[last] {
        faces.push(vec![bottom, v(last, j + 1), v(last, j)]);
    }
    FaceList { n, faces, outer: 0 }
}

/// Candidate ring sequences summing to `total`: an optional leading and
/// trailing ring of size 4..=6 around a run of 5-rings followed by 6-rings.
fn ring_sequences(total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for lead in [0, 4, 5, 6] {
        for trail in [0, 4, 5, 6] {
            let Some(rest) = total.checked_sub(lead + trail) else { continue };
            for m6 in 0..=rest / 6 {
                let r = rest - 6 * m6;
                if r % 5 != 0 {
                    continue;
                }
                let mut seq = Vec::new();
                if lead > 0 {
                    seq.push(lead);
                }
                seq.extend(std::iter::repeat_n(5, r / 5));
                seq.extend(std::iter::repeat_n(6, m6));
                if trail > 0 {
                    seq.push(trail);
                }
                if !seq.is_empty() {
                    out.push(seq);
                }
            }
        }
    }
    out
}

/// A plane triangulation on `n >= 12` vertices with maximum degree at most 6,
/// built as a capped drum. Every `n >= 12` is covered (checked in tests up to
/// a few hundred); `n < 12` gives `UnsupportedOrder`.
pub fn delta6_triangulation(n: usize) -> Result<PlaneGraph> {
    if n < 12 {
        return Err(Error::UnsupportedOrder(n));
    }
    for rings in ring_sequences(n - 2) {
        if rings[0] > 6 || *rings.last().unwrap() > 6 {
            continue;
        }
        // Try each band offset greedily, keeping the first that stays within degree 6.
        let mut offsets = Vec::new();
        let mut ok = true;
        for r in 0..rings.len().saturating_sub(1) {
            let found = (0..rings[r + 1]).find(|&o| {
                let mut trial = offsets.clone();
                trial.push(o);
                let f = drum(&rings[..r + 2], &trial);
                let g = PlaneGraph::from_face_cycles(f.n, &f.faces, Some(0));
                // Rings above the last one already have all their neighbours.
                g.map(|g| (0..f.n - 1 - rings[r + 1]).all(|v| g.degree(v) <= 6)).unwrap_or(false)
            });
            match found {
                Some(o) => offsets.push(o),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let f = drum(&rings, &offsets);
        if let Ok(g) = PlaneGraph::from_face_cycles(f.n, &f.faces, Some(0)) {
            if g.max_degree() <= 6 && g.is_triangulation() {
                return Ok(g);
            }
        }
    }
    Err(Error::UnsupportedOrder(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;

    #[test]
    fn named_graphs_are_regular_triangulations() {
        for (k, n) in [(2, 3), (3, 4), (4, 6), (5, 12)] {
            let g = j_k(k).unwrap();
            assert_eq!(g.vertex_count(), n);
            assert!(g.is_triangulation());
            assert!(g.degrees().iter().all(|&d| d == k));
        }
        let c = cuboctahedron();
        assert_eq!((c.vertex_count(), c.edge_count()), (12, 24));
        assert_eq!((c.profile().f(3), c.profile().f(4)), (8, 6));
        assert!(matches!(named("dodecahedron"), Err(Error::UnknownName(_))));
        assert_eq!(named("R6").unwrap(), icosahedron());
    }

    #[test]
    fn glue_counts() {
        let oct = octahedron();
        let ico = icosahedron();
        let g = glue_into_face(&oct, 0, &ico, 0, Alignment::default()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (15, 39));
        assert!(g.is_triangulation());
        let same = glue_into_face(&oct, 2, &k3(), 0, Alignment::default()).unwrap();
        assert_eq!(canonical_code(&same).unwrap(), canonical_code(&oct).unwrap());
        for al in Alignment::all() {
            let g = glue_into_face(&oct, 3, &k4(), 1, al).unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (7, 15));
        }
        assert!(matches!(
            glue_into_face(&cube(), 0, &k4(), 0, Alignment::default()),
            Err(Error::NonTriangularFace(0))
        ));
    }

    #[test]
    fn family_sizes() {
        for k in 0..3 {
            let g = h3_family(k);
            let ex = h3_expected(k);
            assert_eq!((g.vertex_count(), g.edge_count()), (ex.n, ex.e));
        }
        let g0 = h3_family(0).profile();
        assert_eq!((g0.f(3), g0.f(4)), (38, 3));
        for t in 0..3 {
            let b = fan_base(t);
            assert_eq!((b.vertex_count(), b.edge_count()), (20 * t + 12, 48 * t + 24));
            for k in 2..=5 {
                let g = fan_family(t, k).unwrap();
                let ex = fan_expected(t, k).unwrap();
                assert_eq!((g.vertex_count(), g.edge_count()), (ex.n, ex.e));
            }
        }
        assert_eq!(fan_expected(1, 5).unwrap(), FamilyExpectation { n: 248, e: 720 });
    }

    #[test]
    fn delta6_small_orders() {
        assert_eq!(canonical_code(&delta6_triangulation(12).unwrap()).unwrap(), canonical_code(&icosahedron()).unwrap());
        for n in 12..80 {
            let g = delta6_triangulation(n).unwrap();
            assert_eq!(g.vertex_count(), n);
            assert!(g.is_triangulation() && g.max_degree() <= 6, "n={n}");
        }
        assert!(matches!(delta6_triangulation(11), Err(Error::UnsupportedOrder(11))));
    }
}
