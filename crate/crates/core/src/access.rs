//! Query-counted oracle access to a [`Graph`].
//!
//! Estimators are generic over [`Oracle`] and never touch the graph
//! directly. [`Session`] is the production implementation: it enforces the
//! access model and charges one unit per call.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, QueryKind, Result};
use crate::graph::{Graph, Vertex};

/// Which optional queries are available on top of DEG and NEIGH.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct AccessModel {
    pub jump: bool,
    pub sorted: bool,
    pub adj: bool,
}

impl AccessModel {
    pub const BASE: AccessModel = AccessModel { jump: false, sorted: false, adj: false };
    pub const ALL: AccessModel = AccessModel { jump: true, sorted: true, adj: true };

    pub fn new(jump: bool, sorted: bool, adj: bool) -> AccessModel {
        AccessModel { jump, sorted, adj }
    }

    pub fn allows(&self, q: QueryKind) -> bool {
        match q {
            QueryKind::Deg | QueryKind::Neigh => true,
            QueryKind::NeighSorted => self.sorted,
            QueryKind::Jump => self.jump,
            QueryKind::Adj => self.adj,
        }
    }

    /// Errors with the first of `needed` that the model lacks.
    pub fn require(&self, needed: &[QueryKind]) -> Result<()> {
        match needed.iter().find(|q| !self.allows(**q)) {
            Some(&q) => Err(Error::ModelViolation(q)),
            None => Ok(()),
        }
    }
}

impl fmt::Display for AccessModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.jump {
            parts.push("jump");
        }
        if self.sorted {
            parts.push("sorted");
        }
        if self.adj {
            parts.push("adj");
        }
        if parts.is_empty() {
            f.write_str("base")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for AccessModel {
    type Err = Error;

    /// Accepts `base`, `all`, or a comma list of `jump`, `sorted`
    /// (alias `neigh-sorted`) and `adj`.
    fn from_str(s: &str) -> Result<AccessModel> {
        let mut m = AccessModel::BASE;
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok.to_ascii_lowercase().as_str() {
                "base" | "none" => {}
                "all" => m = AccessModel::ALL,
                "jump" => m.jump = true,
                "sorted" | "neigh-sorted" => m.sorted = true,
                "adj" => m.adj = true,
                other => return Err(Error::InvalidParam(format!("unknown query type {other:?}"))),
            }
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryCounts {
    pub deg: u64,
    pub neigh: u64,
    pub sorted: u64,
    pub jump: u64,
    pub adj: u64,
}

impl QueryCounts {
    pub fn total(&self) -> u64 {
        self.deg + self.neigh + self.sorted + self.jump + self.adj
    }

    pub fn bump(&mut self, q: QueryKind) {
        match q {
            QueryKind::Deg => self.deg += 1,
            QueryKind::Neigh => self.neigh += 1,
            QueryKind::NeighSorted => self.sorted += 1,
            QueryKind::Jump => self.jump += 1,
            QueryKind::Adj => self.adj += 1,
        }
    }
}

/// The adjacency-list oracle. `n` and `m` are known to the algorithm for free.
pub trait Oracle {
    fn n(&self) -> usize;
    fn m(&self) -> usize;
    fn model(&self) -> AccessModel;
    fn rng(&mut self) -> &mut ChaCha8Rng;
    fn deg(&mut self, v: Vertex) -> Result<usize>;
    /// `i` is 1-based.
    fn neigh(&mut self, v: Vertex, i: usize) -> Result<Vertex>;
    /// `i` is 1-based; neighbours ordered by (degree, id).
    fn neigh_sorted(&mut self, v: Vertex, i: usize) -> Result<Vertex>;
    fn jump(&mut self) -> Result<Vertex>;
    fn adj(&mut self, u: Vertex, v: Vertex) -> Result<bool>;
}

/// The per-trial RNG: ChaCha8 seeded from a 64-bit seed.
pub fn trial_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A single-owner access session over a shared graph.
pub struct Session<'g> {
    graph: &'g Graph,
    model: AccessModel,
    counts: QueryCounts,
    rng: ChaCha8Rng,
}

impl<'g> Session<'g> {
    pub fn new(graph: &'g Graph, model: AccessModel, seed: u64) -> Session<'g> {
        Session { graph, model, counts: QueryCounts::default(), rng: trial_rng(seed) }
    }

    pub fn counts(&self) -> QueryCounts {
        self.counts
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.graph.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { v, n: self.graph.n() })
        }
    }

    fn check_index(&self, v: Vertex, i: usize) -> Result<()> {
        self.check_vertex(v)?;
        let degree = self.graph.degree(v);
        if i >= 1 && i <= degree {
            Ok(())
        } else {
            Err(Error::InvalidIndex { v, i, degree })
        }
    }
}

impl Oracle for Session<'_> {
    fn n(&self) -> usize {
        self.graph.n()
    }

    fn m(&self) -> usize {
        self.graph.m()
    }

    fn model(&self) -> AccessModel {
        self.model
    }

    fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn deg(&mut self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        self.counts.deg += 1;
        Ok(self.graph.degree(v))
    }

    fn neigh(&mut self, v: Vertex, i: usize) -> Result<Vertex> {
        self.check_index(v, i)?;
        self.counts.neigh += 1;
        Ok(self.graph.neighbors(v)[i - 1])
    }

    fn neigh_sorted(&mut self, v: Vertex, i: usize) -> Result<Vertex> {
        self.model.require(&[QueryKind::NeighSorted])?;
        self.check_index(v, i)?;
        self.counts.sorted += 1;
        Ok(self.graph.neighbors_sorted(v)[i - 1])
    }

    fn jump(&mut self) -> Result<Vertex> {
        self.model.require(&[QueryKind::Jump])?;
        if self.graph.n() == 0 {
            return Err(Error::Precondition("JUMP on an empty graph".into()));
        }
        self.counts.jump += 1;
        let n = self.graph.n();
        Ok(self.rng.gen_range(0..n))
    }

    fn adj(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.model.require(&[QueryKind::Adj])?;
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Precondition(format!("ADJ({u}, {u}) on a simple graph")));
        }
        self.counts.adj += 1;
        Ok(self.graph.has_edge(u, v))
    }
}
