//! Hard instances: swap families, the overlap parameter K and exact
//! separation checks.

mod families;
mod overlap;
mod separation;
mod swap;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::access::AccessModel;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub use families::gen_family;
pub use overlap::{overlap_k_brute, overlap_k_closed, BRUTE_FORCE_LIMIT};
pub use separation::{verify_separation, SeparationReport};
pub use swap::{apply_swap, check_swappable, subdivide_swap, SwapQuadruple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    SpWorst,
    SpAvg,
    SpAvgXor,
    SpAvgXorSub,
    SsAvg,
    StWcA,
    StWcJsa,
    StAcDegree,
    StAcA,
    StAcJa,
    StAcJsa,
    SnWorst,
    SnWorstSub,
    SnWorstAll,
    SnAvg,
    SnAvgAll,
}

impl FamilyId {
    pub const ALL: [FamilyId; 16] = [
        FamilyId::SpWorst,
        FamilyId::SpAvg,
        FamilyId::SpAvgXor,
        FamilyId::SpAvgXorSub,
        FamilyId::SsAvg,
        FamilyId::StWcA,
        FamilyId::StWcJsa,
        FamilyId::StAcDegree,
        FamilyId::StAcA,
        FamilyId::StAcJa,
        FamilyId::StAcJsa,
        FamilyId::SnWorst,
        FamilyId::SnWorstSub,
        FamilyId::SnWorstAll,
        FamilyId::SnAvg,
        FamilyId::SnAvgAll,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::SpWorst => "sp-worst",
            FamilyId::SpAvg => "sp-avg",
            FamilyId::SpAvgXor => "sp-avg-xor",
            FamilyId::SpAvgXorSub => "sp-avg-xor-sub",
            FamilyId::SsAvg => "ss-avg",
            FamilyId::StWcA => "st-wc-a",
            FamilyId::StWcJsa => "st-wc-j-s-a",
            FamilyId::StAcDegree => "st-ac-degree",
            FamilyId::StAcA => "st-ac-a",
            FamilyId::StAcJa => "st-ac-j-a",
            FamilyId::StAcJsa => "st-ac-j-s-a",
            FamilyId::SnWorst => "sn-worst",
            FamilyId::SnWorstSub => "sn-worst-sub",
            FamilyId::SnWorstAll => "sn-worst-all",
            FamilyId::SnAvg => "sn-avg",
            FamilyId::SnAvgAll => "sn-avg-all",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilyId> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParam(format!("unknown family {s:?}")))
    }
}

/// A designated vertex: fixed, or read off the swapped quadruple (`Role(k)`
/// is q_{k+1}).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Fixed(Vertex),
    Role(usize),
}

impl Endpoint {
    pub fn resolve(&self, q: &SwapQuadruple) -> Vertex {
        match *self {
            Endpoint::Fixed(v) => v,
            Endpoint::Role(k) => q.0[k],
        }
    }
}

/// Union of products R1 × R2 × R3 × R4 of vertex ranges; never materialised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSpace {
    pub blocks: Vec<[Range<Vertex>; 4]>,
}

impl QuadSpace {
    pub fn single(block: [Range<Vertex>; 4]) -> QuadSpace {
        QuadSpace { blocks: vec![block] }
    }

    fn block_len(b: &[Range<Vertex>; 4]) -> u64 {
        b.iter().map(|r| r.len() as u64).product()
    }

    pub fn len(&self) -> u64 {
        self.blocks.iter().map(QuadSpace::block_len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `idx`-th quadruple in block order, last coordinate fastest.
    pub fn nth(&self, mut idx: u64) -> Option<SwapQuadruple> {
        for b in &self.blocks {
            let len = QuadSpace::block_len(b);
            if idx >= len {
                idx -= len;
                continue;
            }
            let mut q = [0; 4];
            for k in (0..4).rev() {
                let size = b[k].len() as u64;
                q[k] = b[k].start + (idx % size) as usize;
                idx /= size;
            }
            return Some(SwapQuadruple(q));
        }
        None
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> SwapQuadruple {
        let idx = rng.gen_range(0..self.len());
        self.nth(idx).expect("index in range")
    }

    pub fn iter(&self) -> impl Iterator<Item = SwapQuadruple> + '_ {
        (0..self.len()).map(move |i| self.nth(i).expect("index in range"))
    }
}

/// How a family separates G from G_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparationKind {
    /// π_G(s,t) = 0 and π_{G_q}(s,t) > 2c δ.
    Pair,
    /// π_{G_q}(t) ≥ (1 + 4c) π_G(t).
    PageRankGap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwapFamily {
    pub graph: Graph,
    pub id: FamilyId,
    pub n: usize,
    pub m: usize,
    pub delta: f64,
    /// Size parameters in the order the construction uses them.
    pub params: Vec<(&'static str, usize)>,
    pub s: Option<Endpoint>,
    pub t: Endpoint,
    pub quads: QuadSpace,
    /// The access model the family's lower bound is stated for.
    pub model: AccessModel,
    /// Vertices the algorithm is handed (W in the overlap lemma).
    pub w: Vec<Endpoint>,
    /// V_W fixed by the proof instead of the JUMP/component rule.
    pub vw_override: Option<Vec<Range<Vertex>>>,
    /// Swapped instances subdivide E⁺ through the two reserved vertices.
    pub reserved: Option<[Vertex; 2]>,
    /// Largest c for which the proof's separation inequality is claimed.
    pub c_bound: f64,
    pub separation: SeparationKind,
    /// (vertices, edges) of the circulant filler.
    pub filler: (usize, usize),
}

impl SwapFamily {
    pub fn param(&self, name: &str) -> Option<usize> {
        self.params.iter().find(|(k, _)| *k == name).map(|&(_, v)| v)
    }

    pub fn subdivided(&self) -> bool {
        self.reserved.is_some()
    }

    /// The swapped instance G_q (subdivided when the family requires it).
    pub fn swapped(&self, q: &SwapQuadruple) -> Result<Graph> {
        match self.reserved {
            Some(r) => subdivide_swap(&self.graph, q, r),
            None => apply_swap(&self.graph, q),
        }
    }

    pub fn source_for(&self, q: &SwapQuadruple) -> Option<Vertex> {
        self.s.map(|e| e.resolve(q))
    }

    pub fn target_for(&self, q: &SwapQuadruple) -> Vertex {
        self.t.resolve(q)
    }

    /// `k` quadruples drawn uniformly (with replacement) from a ChaCha8
    /// stream seeded with `seed`.
    pub fn sample_quads(&self, k: usize, seed: u64) -> Vec<SwapQuadruple> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..k).map(|_| self.quads.sample(&mut rng)).collect()
    }

    /// A representative fixed target (Role endpoints resolve on the first q).
    pub fn default_target(&self) -> Vertex {
        self.target_for(&self.quads.nth(0).expect("nonempty"))
    }

    pub fn default_source(&self) -> Option<Vertex> {
        self.source_for(&self.quads.nth(0).expect("nonempty"))
    }
}
