//! Small named graphs for tests and the verification suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("simple")
}

/// Center 0, leaves 1..=leaves.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(leaves + 1, &edges).expect("simple")
}

pub fn clique(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).expect("simple")
}

/// Sides 0..a and a..a+b.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    Graph::from_edges(a + b, &edges).expect("simple")
}

/// G(n, p) with edges listed in a seeded random order, so insertion order
/// and sorted order differ.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges.shuffle(&mut rng);
    Graph::from_edges(n, &edges).expect("simple")
}

/// Disjoint union, second graph's vertices shifted past the first's.
pub fn union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n();
    let mut edges = a.edge_order();
    edges.extend(b.edge_order().into_iter().map(|(u, v)| (u + shift, v + shift)));
    Graph::from_edges(a.n() + b.n(), &edges).expect("simple")
}

/// Two stars whose centers are joined: leaves of either side see a
/// high-degree neighbour.
pub fn double_star(left: usize, right: usize) -> Graph {
    let mut edges = vec![(0, 1)];
    edges.extend((0..left).map(|i| (0, 2 + i)));
    edges.extend((0..right).map(|i| (1, 2 + left + i)));
    Graph::from_edges(2 + left + right, &edges).expect("simple")
}

/// The bundled corpus: 50 graphs on at most 50 vertices mixing paths,
/// stars, cliques, bipartite blocks, random graphs and disconnected or
/// isolated-vertex cases. Deterministic.
pub fn standard() -> Vec<NamedGraph> {
    let mut out = Vec::new();
    let mut push = |name: String, g: Graph| out.push(NamedGraph { name, graph: g });
    push("k1".into(), Graph::from_edges(1, &[]).unwrap());
    push("k2".into(), clique(2));
    for n in [3, 5, 8, 13, 20, 50] {
        push(format!("path{n}"), path(n));
    }
    for l in [2, 4, 12, 19, 30] {
        push(format!("star{l}"), star(l));
    }
    for n in [3, 4, 6, 10, 16] {
        push(format!("clique{n}"), clique(n));
    }
    for (a, b) in [(1, 3), (2, 2), (2, 9), (3, 5), (6, 14)] {
        push(format!("kbip{a}x{b}"), complete_bipartite(a, b));
    }
    for (l, r) in [(3, 12), (15, 2), (11, 11)] {
        push(format!("dstar{l}x{r}"), double_star(l, r));
    }
    let iso = Graph::from_edges(3, &[]).unwrap();
    push("path6+iso3".into(), union(&path(6), &iso));
    push("k4+star5".into(), union(&clique(4), &star(5)));
    push("star14+k2".into(), union(&star(14), &clique(2)));
    for (&(n, p), seed) in [
        (8, 0.4),
        (10, 0.3),
        (12, 0.25),
        (14, 0.3),
        (16, 0.2),
        (18, 0.25),
        (20, 0.15),
        (20, 0.3),
        (24, 0.15),
        (28, 0.12),
        (30, 0.1),
        (32, 0.2),
        (36, 0.08),
        (40, 0.1),
        (44, 0.06),
        (48, 0.07),
        (50, 0.05),
        (50, 0.12),
        (12, 0.6),
        (16, 0.5),
        (50, 0.3),
    ]
    .iter()
    .zip(0x5eed..)
    {
        push(format!("gnp{n}p{p}"), gnp(n, p, seed));
    }
    out
}

/// Random graphs on `n ∈ [n_lo, n_hi]` vertices with expected average
/// degree `avg_deg`, all derived from `seed`.
pub fn random_family(count: usize, n_lo: usize, n_hi: usize, avg_deg: f64, seed: u64) -> Vec<NamedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(n_lo..=n_hi);
            let p = (avg_deg / (n - 1) as f64).min(1.0);
            NamedGraph { name: format!("rand{i}n{n}"), graph: gnp(n, p, rng.gen()) }
        })
        .collect()
}
