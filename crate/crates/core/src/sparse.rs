use indexmap::IndexMap;

use crate::graph::Vertex;

/// Sparse non-negative vector; absent keys read as 0. Iteration follows
/// first insertion, which keeps every algorithm that walks it reproducible.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseVec {
    entries: IndexMap<Vertex, f64>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec::default()
    }

    pub fn unit(v: Vertex) -> SparseVec {
        let mut s = SparseVec::new();
        s.set(v, 1.0);
        s
    }

    pub fn get(&self, v: Vertex) -> f64 {
        self.entries.get(&v).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, v: Vertex, x: f64) {
        self.entries.insert(v, x);
    }

    /// Adds `x` and returns the new value.
    pub fn add(&mut self, v: Vertex, x: f64) -> f64 {
        let e = self.entries.entry(v).or_insert(0.0);
        *e += x;
        *e
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, f64)> + '_ {
        self.entries.iter().map(|(&v, &x)| (v, x))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.entries.values().sum()
    }

    pub fn max_value(&self) -> f64 {
        self.entries.values().copied().fold(0.0, f64::max)
    }

    pub fn to_dense(&self, n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (v, x) in self.iter() {
            out[v] = x;
        }
        out
    }
}

/// Output of single-source and single-target estimators.
pub type SparseEstimate = SparseVec;
