use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// q = (q1, q2, q3, q4): E⁻ = {q1q2, q3q4}, E⁺ = {q1q3, q2q4}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SwapQuadruple(pub [Vertex; 4]);

impl SwapQuadruple {
    pub fn new(q1: Vertex, q2: Vertex, q3: Vertex, q4: Vertex) -> SwapQuadruple {
        SwapQuadruple([q1, q2, q3, q4])
    }

    pub fn removed(&self) -> [(Vertex, Vertex); 2] {
        let [a, b, c, d] = self.0;
        [(a, b), (c, d)]
    }

    pub fn added(&self) -> [(Vertex, Vertex); 2] {
        let [a, b, c, d] = self.0;
        [(a, c), (b, d)]
    }

    /// E±_q as unordered pairs (smaller id first).
    pub fn pairs(&self) -> [(Vertex, Vertex); 4] {
        let [e1, e2] = self.removed();
        let [e3, e4] = self.added();
        [e1, e2, e3, e4].map(|(u, v)| (u.min(v), u.max(v)))
    }
}

impl fmt::Display for SwapQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

/// Checks the swap definition and names the first failing condition.
pub fn check_swappable(g: &Graph, q: &SwapQuadruple) -> Result<()> {
    let [a, b, c, d] = q.0;
    for (k, &v) in q.0.iter().enumerate() {
        if v >= g.n() {
            return Err(Error::Swap(format!("q{} = {v} is not a vertex", k + 1)));
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if q.0[i] == q.0[j] {
                return Err(Error::Swap(format!("q{} = q{}", i + 1, j + 1)));
            }
        }
    }
    if !g.has_edge(a, b) {
        return Err(Error::Swap(format!("{{q1,q2}} = {{{a},{b}}} is not an edge")));
    }
    if !g.has_edge(c, d) {
        return Err(Error::Swap(format!("{{q3,q4}} = {{{c},{d}}} is not an edge")));
    }
    if g.has_edge(a, c) {
        return Err(Error::Swap(format!("{{q1,q3}} = {{{a},{c}}} is already an edge")));
    }
    if g.has_edge(b, d) {
        return Err(Error::Swap(format!("{{q2,q4}} = {{{b},{d}}} is already an edge")));
    }
    Ok(())
}

fn replace(list: &mut [Vertex], old: Vertex, new: Vertex) {
    let slot = list.iter_mut().find(|v| **v == old).expect("checked edge");
    *slot = new;
}

/// G_q: each added edge takes the list index of the removed edge it replaces.
pub fn apply_swap(g: &Graph, q: &SwapQuadruple) -> Result<Graph> {
    check_swappable(g, q)?;
    let [a, b, c, d] = q.0;
    let mut lists = g.lists();
    replace(&mut lists[a], b, c);
    replace(&mut lists[b], a, d);
    replace(&mut lists[c], d, a);
    replace(&mut lists[d], c, b);
    Graph::from_lists(lists)
}

/// Like [`apply_swap`], but each added edge becomes a 2-path through one of
/// the isolated vertices `reserved`: q1–w1–q3 and q2–w2–q4.
pub fn subdivide_swap(g: &Graph, q: &SwapQuadruple, reserved: [Vertex; 2]) -> Result<Graph> {
    check_swappable(g, q)?;
    let [w1, w2] = reserved;
    for w in reserved {
        if w >= g.n() || g.degree(w) != 0 || q.0.contains(&w) {
            return Err(Error::Generation(format!("vertex {w} is not a free reserved vertex")));
        }
    }
    if w1 == w2 {
        return Err(Error::Generation("reserved vertices must differ".into()));
    }
    let [a, b, c, d] = q.0;
    let mut lists = g.lists();
    replace(&mut lists[a], b, w1);
    replace(&mut lists[c], d, w1);
    replace(&mut lists[b], a, w2);
    replace(&mut lists[d], c, w2);
    lists[w1] = vec![a, c];
    lists[w2] = vec![b, d];
    Graph::from_lists(lists)
}
