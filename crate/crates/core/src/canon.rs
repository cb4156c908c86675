//! Canonical codes for connected sphere embeddings.
//!
//! A code is produced by a breadth-first relabelling that starts from a root
//! dart and walks every rotation in a fixed orientation, emitting the labels
//! of each vertex's neighbours followed by a zero. The canonical code is the
//! lexicographic minimum over all admissible roots and both orientations, so
//! mirror images receive the same code. Only roots whose endpoint degrees are
//! lexicographically minimal are tried; that set is preserved by every
//! isomorphism, so the minimum is still a complete invariant.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plane::PlaneGraph;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    fn from_labels(code: &[u32]) -> Self {
        let wide = code.first().is_some_and(|&n| n > 255);
        let mut bytes = Vec::with_capacity(code.len() * if wide { 2 } else { 1 } + 1);
        bytes.push(if wide { 2 } else { 1 });
        for &x in code {
            if wide {
                bytes.extend_from_slice(&(x as u16).to_be_bytes());
            } else {
                bytes.push(x as u8);
            }
        }
        CanonicalCode(bytes)
    }
}

/// Minimal code together with the vertex labellings of every root attaining it.
/// Any two of these labellings differ by an automorphism of the embedding
/// (possibly orientation reversing).
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub code: Vec<u32>,
    /// `labelings[r][v]` is the label (1-based) of vertex `v` under root `r`.
    pub labelings: Vec<Vec<u32>>,
}

impl CanonicalForm {
    pub fn code(&self) -> CanonicalCode {
        CanonicalCode::from_labels(&self.code)
    }

    /// Size of the automorphism group of the sphere embedding, reflections included.
    pub fn automorphism_count(&self) -> usize {
        self.labelings.len()
    }
}

#[derive(Default)]
pub(crate) struct Canonizer {
    label: Vec<u32>,
    refv: Vec<usize>,
    queue: Vec<usize>,
    buf: Vec<u32>,
}

impl Canonizer {
    /// Runs the relabelling from `root` in orientation `cw`. Returns `Greater`
    /// (aborted early) when the code would exceed `bound`.
    fn run(&mut self, rot: &[Vec<usize>], root: (usize, usize), cw: bool, bound: Option<&[u32]>) -> Ordering {
        let n = rot.len();
        self.label.clear();
        self.label.resize(n, 0);
        self.refv.clear();
        self.refv.resize(n, usize::MAX);
        self.queue.clear();
        self.buf.clear();

        let mut state = if bound.is_some() { Ordering::Equal } else { Ordering::Less };
        let mut pos = 0usize;
        macro_rules! emit {
            ($x:expr) => {{
                let x: u32 = $x;
                if state == Ordering::Equal {
                    let b = bound.unwrap()[pos];
                    if x < b {
                        state = Ordering::Less;
                    } else if x > b {
                        return Ordering::Greater;
                    }
                }
                self.buf.push(x);
                pos += 1;
            }};
        }

        emit!(n as u32);
        self.label[root.0] = 1;
        self.refv[root.0] = root.1;
        self.queue.push(root.0);
        let mut next = 2u32;
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            let r = &rot[x];
            let d = r.len();
            let start = r.iter().position(|&y| y == self.refv[x]).unwrap_or(0);
            for s in 0..d {
                let y = if cw { r[(start + s) % d] } else { r[(start + d - s) % d] };
                if self.label[y] == 0 {
                    self.label[y] = next;
                    next += 1;
                    self.refv[y] = x;
                    self.queue.push(y);
                }
                emit!(self.label[y]);
            }
            emit!(0);
        }
        state
    }
}

fn is_connected(rot: &[Vec<usize>]) -> bool {
    let n = rot.len();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in &rot[x] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

/// Canonical form of a connected rotation system.
pub(crate) fn canonical_form_rot(rot: &[Vec<usize>], cz: &mut Canonizer) -> Option<CanonicalForm> {
    let n = rot.len();
    if !is_connected(rot) {
        return None;
    }
    if n <= 1 {
        return Some(CanonicalForm {
            code: if n == 0 { vec![0] } else { vec![1, 0] },
            labelings: vec![vec![1; n]],
        });
    }
    let mut best_key = (usize::MAX, usize::MAX);
    for r in rot {
        for &v in r {
            best_key = best_key.min((r.len(), rot[v].len()));
        }
    }
    let mut best: Option<Vec<u32>> = None;
    let mut labelings = Vec::new();
    for (u, r) in rot.iter().enumerate() {
        if r.len() != best_key.0 {
            continue;
        }
        for &v in r {
            if rot[v].len() != best_key.1 {
                continue;
            }
            for cw in [true, false] {
                match cz.run(rot, (u, v), cw, best.as_deref()) {
                    Ordering::Less => {
                        best = Some(cz.buf.clone());
                        labelings.clear();
                        labelings.push(cz.label.clone());
                    }
                    Ordering::Equal => labelings.push(cz.label.clone()),
                    Ordering::Greater => {}
                }
            }
        }
    }
    Some(CanonicalForm { code: best.unwrap(), labelings })
}

pub fn canonical_form(g: &PlaneGraph) -> Result<CanonicalForm> {
    canonical_form_rot(g.rotations(), &mut Canonizer::default()).ok_or(Error::Disconnected)
}

/// Code that is equal for two connected plane graphs iff their sphere
/// embeddings are isomorphic (orientation reversal allowed).
pub fn canonical_code(g: &PlaneGraph) -> Result<CanonicalCode> {
    canonical_form(g).map(|f| f.code())
}

pub fn same_embedding(a: &PlaneGraph, b: &PlaneGraph) -> Result<bool> {
    Ok(canonical_code(a)? == canonical_code(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(g: &PlaneGraph, perm: &[usize]) -> PlaneGraph {
        let n = g.vertex_count();
        let mut rot = vec![Vec::new(); n];
        for v in 0..n {
            rot[perm[v]] = g.neighbors(v).iter().map(|&w| perm[w]).collect();
        }
        PlaneGraph::build(rot, None).unwrap()
    }

    fn octahedron() -> PlaneGraph {
        let mut faces = Vec::new();
        for i in 0..4 {
            let (a, b) = (1 + i, 1 + (i + 1) % 4);
            faces.push(vec![0, a, b]);
            faces.push(vec![b, a, 5]);
        }
        PlaneGraph::from_face_cycles(6, &faces, None).unwrap()
    }

    #[test]
    fn relabelled_and_mirrored_codes_agree() {
        let g = octahedron();
        let h = relabel(&g, &[3, 5, 0, 1, 4, 2]);
        assert_eq!(canonical_code(&g).unwrap(), canonical_code(&h).unwrap());
        assert_eq!(canonical_code(&g).unwrap(), canonical_code(&g.mirror()).unwrap());
    }

    #[test]
    fn octahedron_automorphisms() {
        // Full octahedral group including reflections.
        assert_eq!(canonical_form(&octahedron()).unwrap().automorphism_count(), 48);
    }

    #[test]
    fn distinguishes_k4_minus_edge_from_path() {
        let a = PlaneGraph::build(vec![vec![1, 2, 3], vec![0], vec![0], vec![0]], None).unwrap();
        let b = PlaneGraph::build(vec![vec![1], vec![0, 2], vec![1, 3], vec![2]], None).unwrap();
        assert_ne!(canonical_code(&a).unwrap(), canonical_code(&b).unwrap());
    }

    #[test]
    fn rejects_disconnected() {
        let g = PlaneGraph::build(vec![vec![1], vec![0], vec![]], None).unwrap();
        assert_eq!(canonical_code(&g), Err(Error::Disconnected));
    }
}
