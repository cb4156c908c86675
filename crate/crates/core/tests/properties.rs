use std::collections::BTreeSet;
use std::sync::OnceLock;

use planturan::blocks::triangular_blocks;
use planturan::canon::canonical_code;
use planturan::detect::{Pattern, SimpleGraph};
use planturan::enumerate::{edge_deletions, triangulations};
use planturan::PlaneGraph;
use proptest::prelude::*;
use proptest::sample::Index;

fn pool(n: usize) -> &'static [PlaneGraph] {
    static POOLS: OnceLock<Vec<Vec<PlaneGraph>>> = OnceLock::new();
    &POOLS.get_or_init(|| (0..=10).map(|n| if n < 4 { Vec::new() } else { triangulations(n).unwrap().iter().collect() }).collect())[n]
}

/// A triangulation on `n` vertices with up to two edges removed.
fn near_triangulation() -> impl Strategy<Value = PlaneGraph> {
    (6usize..=10, any::<Index>(), 0usize..=2, any::<Index>()).prop_map(|(n, i, t, j)| {
        let tri = i.get(pool(n)).clone();
        if t == 0 {
            return tri;
        }
        let opts = edge_deletions(&tri, t);
        j.get(&opts).clone()
    })
}

fn relabel(g: &PlaneGraph, perm: &[usize]) -> PlaneGraph {
    let n = g.vertex_count();
    let mut rot = vec![Vec::new(); n];
    for v in 0..n {
        rot[perm[v]] = g.neighbors(v).iter().map(|&w| perm[w]).collect();
    }
    let hint = g.outer_face().map(|f| {
        let (u, v) = g.face(f).unwrap().walk[0];
        (perm[u], perm[v])
    });
    PlaneGraph::build(rot, hint).unwrap()
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); n];
    for &(u, v) in edges {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    adj
}

fn brute_hk(adj: &[BTreeSet<usize>], k: usize) -> bool {
    fn disjoint(edges: &[(usize, usize)], from: usize, used: &mut BTreeSet<usize>, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        for i in from..edges.len() {
            let (a, b) = edges[i];
            if !used.contains(&a) && !used.contains(&b) {
                used.insert(a);
                used.insert(b);
                let ok = disjoint(edges, i + 1, used, left - 1);
                used.remove(&a);
                used.remove(&b);
                if ok {
                    return true;
                }
            }
        }
        false
    }
    (0..adj.len()).any(|v| {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        let mut edges = Vec::new();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if adj[a].contains(&b) {
                    edges.push((a, b));
                }
            }
        }
        disjoint(&edges, 0, &mut BTreeSet::new(), k)
    })
}

fn brute_fk(adj: &[BTreeSet<usize>], k: usize) -> bool {
    fn extend(adj: &[BTreeSet<usize>], inside: &BTreeSet<usize>, path: &mut Vec<usize>, len: usize) -> bool {
        if path.len() == len {
            return true;
        }
        let last = *path.last().unwrap();
        for &w in &adj[last] {
            if inside.contains(&w) && !path.contains(&w) {
                path.push(w);
                if extend(adj, inside, path, len) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    (0..adj.len()).any(|v| adj[v].iter().any(|&s| extend(adj, &adj[v], &mut vec![s], k + 1)))
}

fn random_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (3usize..=8).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        (Just(n), proptest::collection::vec(any::<bool>(), m)).prop_map(move |(n, keep)| {
            (n, pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(&e, _)| e).collect())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn friendship_detector_matches_brute_force((n, edges) in random_graph(), k in 1usize..=3) {
        let g = SimpleGraph::from_edges(n, &edges);
        let found = Pattern::friendship(k).find(&g).unwrap();
        prop_assert_eq!(found.is_some(), brute_hk(&adjacency(n, &edges), k));
        if let Some(w) = found {
            prop_assert!(w.verify(&g));
        }
    }

    #[test]
    fn fan_detector_matches_brute_force((n, edges) in random_graph(), k in 1usize..=4) {
        let g = SimpleGraph::from_edges(n, &edges);
        let found = Pattern::fan(k).find(&g).unwrap();
        prop_assert_eq!(found.is_some(), brute_fk(&adjacency(n, &edges), k));
        if let Some(w) = found {
            prop_assert!(w.verify(&g));
        }
    }

    #[test]
    fn freeness_is_monotone(g in near_triangulation(), k in 1usize..=4) {
        if Pattern::friendship(k).is_free(&g).unwrap() {
            prop_assert!(Pattern::friendship(k + 1).is_free(&g).unwrap());
        }
        if Pattern::fan(k).is_free(&g).unwrap() {
            prop_assert!(Pattern::fan(k + 1).is_free(&g).unwrap());
        }
        // A fan F_{2k-1} contains H_k.
        if Pattern::fan(2 * k - 1).find(&g).unwrap().is_some() {
            prop_assert!(Pattern::friendship(k).find(&g).unwrap().is_some());
        }
    }

    #[test]
    fn deleting_edges_keeps_freeness(g in near_triangulation(), k in 2usize..=5, e in any::<Index>()) {
        let (u, v) = *e.get(&g.edges());
        let h = g.delete_edge(u, v).unwrap();
        for p in [Pattern::friendship(k.min(3)), Pattern::fan(k)] {
            if p.is_free(&g).unwrap() {
                prop_assert!(p.is_free(&h).unwrap());
            }
        }
    }

    #[test]
    fn canonical_code_ignores_labels_and_mirroring(g in near_triangulation(), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed | 1;
        for i in (1..n).rev() {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            perm.swap(i, (x % (i as u64 + 1)) as usize);
        }
        let code = canonical_code(&g).unwrap();
        prop_assert_eq!(&canonical_code(&relabel(&g, &perm)).unwrap(), &code);
        prop_assert_eq!(&canonical_code(&g.mirror()).unwrap(), &code);
    }

    #[test]
    fn block_partition_ignores_labels(g in near_triangulation(), seed in any::<u64>()) {
        let n = g.vertex_count();
        let perm: Vec<usize> = (0..n).map(|v| (v + (seed as usize % n)) % n).collect();
        let summary = |g: &PlaneGraph| {
            let mut s: Vec<_> = triangular_blocks(g)
                .iter()
                .map(|b| {
                    let mut l = b.l_sizes.clone();
                    l.sort();
                    (b.e3_block, b.e33_prime, b.vertices.len(), l, b.n_contribution)
                })
                .collect();
            s.sort();
            s
        };
        prop_assert_eq!(summary(&g), summary(&relabel(&g, &perm)));
    }
}
