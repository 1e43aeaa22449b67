//! Immutable simple undirected graph in CSR form.
//!
//! Every vertex keeps three views of its neighbourhood: insertion order
//! (what NEIGH returns), (degree, id) order (what NEIGH-SORTED returns) and
//! id order (used to answer ADJ by binary search).

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    offsets: Vec<usize>,
    neigh: Vec<Vertex>,
    sorted: Vec<Vertex>,
    by_id: Vec<Vertex>,
}

impl Graph {
    /// Builds a graph from an edge list; neighbour order follows edge order.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        let mut lists = vec![Vec::new(); n];
        for (k, &(u, v)) in edges.iter().enumerate() {
            check_edge(n, u, v).map_err(|msg| Error::Parse { line: k + 1, msg })?;
            lists[u].push(v);
            lists[v].push(u);
        }
        Graph::from_lists(lists)
    }

    /// Builds a graph from per-vertex neighbour lists given in insertion order.
    /// The lists must describe a simple undirected graph.
    pub fn from_lists(lists: Vec<Vec<Vertex>>) -> Result<Graph> {
        let n = lists.len();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut neigh = Vec::new();
        for list in &lists {
            neigh.extend_from_slice(list);
            offsets.push(neigh.len());
        }
        if neigh.len() % 2 != 0 {
            return Err(Error::Precondition("odd total degree".into()));
        }
        let m = neigh.len() / 2;
        let mut by_id = neigh.clone();
        for v in 0..n {
            let s = &mut by_id[offsets[v]..offsets[v + 1]];
            s.sort_unstable();
            for w in s.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::Precondition(format!("duplicate edge {{{v}, {}}}", w[0])));
                }
            }
            for &u in s.iter() {
                if u >= n {
                    return Err(Error::InvalidVertex { v: u, n });
                }
                if u == v {
                    return Err(Error::Precondition(format!("self-loop at {v}")));
                }
            }
        }
        let mut g = Graph { n, m, offsets, neigh, sorted: Vec::new(), by_id };
        for v in 0..n {
            for &u in g.neighbors(v) {
                if !g.has_edge(u, v) {
                    return Err(Error::Precondition(format!(
                        "asymmetric adjacency: {u} in N({v}) but not {v} in N({u})"
                    )));
                }
            }
        }
        g.sorted = g.neigh.clone();
        for v in 0..n {
            let (a, b) = (g.offsets[v], g.offsets[v + 1]);
            let mut s = std::mem::take(&mut g.sorted);
            s[a..b].sort_unstable_by_key(|&u| (g.degree(u), u));
            g.sorted = s;
        }
        Ok(g)
    }

    /// Parses the text graph format: `n m`, then `m` lines `u v`.
    /// Lines starting with `#` and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header `n m`".into() })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut lists = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        let mut count = 0usize;
        for (line, l) in lines {
            let (u, v) = parse_pair(line, l)?;
            check_edge(n, u, v).map_err(|msg| Error::Parse { line, msg })?;
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Parse { line, msg: format!("duplicate edge {u} {v}") });
            }
            count += 1;
            if count > m {
                return Err(Error::Parse { line, msg: format!("more than the declared {m} edges") });
            }
            lists[u].push(v);
            lists[v].push(u);
        }
        if count != m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                msg: format!("expected {m} edges, found {count}"),
            });
        }
        Graph::from_lists(lists)
    }

    /// Writes the graph in the text format. The edge order is chosen so that
    /// re-parsing reproduces every neighbour list whenever such an order exists.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.n, self.m).unwrap();
        for (u, v) in self.edge_order() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Edges in an order consistent with all insertion-order lists, if one
    /// exists; otherwise falls back to listing each edge from its lower endpoint.
    pub fn edge_order(&self) -> Vec<(Vertex, Vertex)> {
        // position of each half-edge's twin
        let mut pos_of = std::collections::HashMap::with_capacity(self.m * 2);
        for v in 0..self.n {
            for (i, &u) in self.neighbors(v).iter().enumerate() {
                pos_of.insert((v, u), i);
            }
        }
        let mut next = vec![0usize; self.n];
        let mut out = Vec::with_capacity(self.m);
        let mut stack: Vec<Vertex> = (0..self.n).rev().collect();
        // an edge is ready when it heads both endpoint lists
        let ready = |next: &Vec<usize>, v: Vertex| -> Option<Vertex> {
            let list = self.neighbors(v);
            let i = next[v];
            if i >= list.len() {
                return None;
            }
            let u = list[i];
            (pos_of[&(u, v)] == next[u]).then_some(u)
        };
        while let Some(v) = stack.pop() {
            while let Some(u) = ready(&next, v) {
                out.push((v.min(u), v.max(u)));
                next[v] += 1;
                next[u] += 1;
                stack.push(u);
            }
        }
        if out.len() == self.m {
            return out;
        }
        let mut all = Vec::with_capacity(self.m);
        for v in 0..self.n {
            for &u in self.neighbors(v) {
                if v < u {
                    all.push((v, u));
                }
            }
        }
        all
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Average degree m/n as used in the case tables.
    pub fn avg_degree(&self) -> f64 {
        self.m as f64 / self.n as f64
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.neigh[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn neighbors_sorted(&self, v: Vertex) -> &[Vertex] {
        &self.sorted[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.by_id[self.offsets[u]..self.offsets[u + 1]].binary_search(&v).is_ok()
    }

    /// Owned copies of the insertion-order lists.
    pub fn lists(&self) -> Vec<Vec<Vertex>> {
        (0..self.n).map(|v| self.neighbors(v).to_vec()).collect()
    }

    /// Vertex ids of the connected component containing `v`, in BFS order.
    pub fn component(&self, v: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.n];
        let mut order = vec![v];
        seen[v] = true;
        let mut head = 0;
        while head < order.len() {
            let w = order[head];
            head += 1;
            for &u in self.neighbors(w) {
                if !seen[u] {
                    seen[u] = true;
                    order.push(u);
                }
            }
        }
        order
    }

    /// Component label per vertex (labels are dense, in order of first vertex).
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = Vec::new();
        for v in 0..self.n {
            if label[v] != usize::MAX {
                continue;
            }
            label[v] = next;
            queue.clear();
            queue.push(v);
            while let Some(w) = queue.pop() {
                for &u in self.neighbors(w) {
                    if label[u] == usize::MAX {
                        label[u] = next;
                        queue.push(u);
                    }
                }
            }
            next += 1;
        }
        label
    }
}

fn check_edge(n: usize, u: Vertex, v: Vertex) -> std::result::Result<(), String> {
    if u >= n || v >= n {
        return Err(format!("vertex id out of range (n = {n}) in edge {u} {v}"));
    }
    if u == v {
        return Err(format!("self-loop at {u}"));
    }
    Ok(())
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize)> {
    let mut it = l.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or(Error::Parse { line, msg: "expected two integers".into() })?;
        tok.parse().map_err(|_| Error::Parse { line, msg: format!("not a non-negative integer: {tok:?}") })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse { line, msg: "trailing tokens".into() });
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_k2_and_k3() {
        let g = Graph::parse("2 1\n0 1").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        let g = Graph::parse("3 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(g.degree(2), 2);
        assert!(g.has_edge(0, 2) && g.has_edge(2, 0));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let e = Graph::parse("2 1\n0 0").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = Graph::parse("3 2\n0 1\n# c\n1 0").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
        let e = Graph::parse("3 2\n0 1\n1 3").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        assert!(Graph::parse("3 3\n0 1\n1 2").is_err());
        assert!(Graph::parse("3 1\n0 1\n1 2").is_err());
    }

    #[test]
    fn insertion_order_follows_file() {
        let g = Graph::parse("# path\n3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn sorted_order_is_degree_then_id() {
        // t=0 adjacent to hub 1 (with 9 leaves) and leaf 11
        let mut edges = vec![(0, 1)];
        for l in 2..11 {
            edges.push((1, l));
        }
        edges.push((0, 11));
        let g = Graph::from_edges(12, &edges).unwrap();
        assert_eq!(g.neighbors(0), &[1, 11]);
        assert_eq!(g.neighbors_sorted(0), &[11, 1]);
    }

    #[test]
    fn text_round_trip_preserves_lists() {
        let g = Graph::parse("4 4\n2 1\n0 2\n3 0\n1 0\n").unwrap();
        let h = Graph::parse(&g.to_text()).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn components() {
        let g = Graph::from_edges(5, &[(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.component_labels(), vec![0, 0, 1, 2, 2]);
        assert_eq!(g.component(4), vec![4, 3]);
    }
}
