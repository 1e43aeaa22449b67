//! Generators. Every family is a disjoint union of complete bipartite
//! blocks plus an independent circulant filler with n vertices and m edges.

use std::ops::Range;

use super::{Endpoint, FamilyId, QuadSpace, SeparationKind, SwapFamily};
use crate::access::AccessModel;
use crate::config::{floor_count, EstimatorConfig};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

const JUMP_SORTED: AccessModel = AccessModel { jump: true, sorted: true, adj: false };
const JUMP_ADJ: AccessModel = AccessModel { jump: true, sorted: false, adj: true };
const ADJ_ONLY: AccessModel = AccessModel { jump: false, sorted: false, adj: true };

#[derive(Default)]
struct Builder {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Builder {
    fn part(&mut self, size: usize) -> Range<Vertex> {
        let r = self.n..self.n + size;
        self.n += size;
        r
    }

    fn biclique(&mut self, a: &Range<Vertex>, b: &Range<Vertex>) {
        for u in a.clone() {
            for v in b.clone() {
                self.edges.push((u, v));
            }
        }
    }
}

/// Circulant on `nf` vertices with offsets 1, 2, … until `mf` edges.
fn circulant(first: Vertex, nf: usize, mf: usize) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::with_capacity(mf);
    let mut j = 1;
    while out.len() < mf && j < nf {
        for i in 0..nf {
            if out.len() == mf {
                break;
            }
            let k = (i + j) % nf;
            // offset nf/2 pairs each vertex with itself from both sides
            if 2 * j == nf && i >= j {
                continue;
            }
            out.push((first + i, first + k));
        }
        j += 1;
    }
    out
}

struct Draft {
    params: Vec<(&'static str, usize)>,
    s: Option<Endpoint>,
    t: Endpoint,
    quads: QuadSpace,
    model: AccessModel,
    w: Vec<Endpoint>,
    vw_override: Option<Vec<Range<Vertex>>>,
    subdivided: bool,
    c_bound: f64,
    separation: SeparationKind,
}

struct Request {
    id: FamilyId,
    n: usize,
    m: usize,
    delta: f64,
    alpha: f64,
}

impl Request {
    fn d(&self) -> f64 {
        self.m as f64 / self.n as f64
    }

    fn require(&self, ok: bool, what: &str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::Generation(format!("{}: constraint {what} violated", self.id)))
        }
    }

    fn finish(&self, mut b: Builder, d: Draft) -> Result<SwapFamily> {
        let reserved = d.subdivided.then(|| {
            let r = b.part(2);
            [r.start, r.start + 1]
        });
        // the independent (n, m) filler, clipped so the totals stay in [n, 8n] × [m, 8m]
        let (gn, gm) = (b.n, b.edges.len());
        let mf = self.m.min((8 * self.m).saturating_sub(gm));
        let mut nf = self.n;
        while nf * nf.saturating_sub(1) / 2 < mf {
            nf += 1;
        }
        let nf = nf.min((8 * self.n).saturating_sub(gn));
        if nf * nf.saturating_sub(1) / 2 < mf || gn + nf < self.n {
            return Err(Error::Generation(format!(
                "{}: no room for the filler (gadget has {gn} vertices, {gm} edges)",
                self.id
            )));
        }
        let first = b.n;
        b.n += nf;
        b.edges.extend(circulant(first, nf, mf));
        let graph = Graph::from_edges(b.n, &b.edges)?;
        Ok(SwapFamily {
            graph,
            id: self.id,
            n: self.n,
            m: self.m,
            delta: self.delta,
            params: d.params,
            s: d.s,
            t: d.t,
            quads: d.quads,
            model: d.model,
            w: d.w,
            vw_override: d.vw_override,
            reserved,
            c_bound: d.c_bound,
            separation: d.separation,
            filler: (nf, mf),
        })
    }
}

/// Builds the named family for target size (n, m) and threshold δ.
pub fn gen_family(id: FamilyId, n: usize, m: usize, delta: f64, cfg: &EstimatorConfig) -> Result<SwapFamily> {
    if n < 4 {
        return Err(Error::Generation(format!("{id}: need n ≥ 4, got {n}")));
    }
    if m < n || m > n * n {
        return Err(Error::Generation(format!("{id}: need n ≤ m ≤ n², got n={n}, m={m}")));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::Generation(format!("{id}: need δ ∈ (0,1], got {delta}")));
    }
    let req = Request { id, n, m, delta, alpha: cfg.alpha };
    match id {
        FamilyId::SpWorst => sp_worst(&req),
        FamilyId::SpAvg => sp_avg(&req),
        FamilyId::SpAvgXor => sp_avg_xor(&req, false),
        FamilyId::SpAvgXorSub => sp_avg_xor(&req, true),
        FamilyId::SsAvg => ss_avg(&req),
        FamilyId::StWcA => st_wc_a(&req),
        FamilyId::StWcJsa => st_wc_jsa(&req),
        FamilyId::StAcDegree => st_ac_degree(&req),
        FamilyId::StAcA => st_ac_a(&req),
        FamilyId::StAcJa => st_ac_ja(&req),
        FamilyId::StAcJsa => st_ac_jsa(&req),
        FamilyId::SnWorst => sn(&req, SnVariant::NotAll { subdivided: false }),
        FamilyId::SnWorstSub => sn(&req, SnVariant::NotAll { subdivided: true }),
        FamilyId::SnWorstAll => sn(&req, SnVariant::All),
        FamilyId::SnAvg => sn(&req, SnVariant::AvgNotAll),
        FamilyId::SnAvgAll => sn(&req, SnVariant::AvgAll),
    }
}

fn one(v: Vertex) -> Range<Vertex> {
    v..v + 1
}

fn sp_worst(r: &Request) -> Result<SwapFamily> {
    let (n, m, delta, d) = (r.n as f64, r.m as f64, r.delta, r.d());
    let (x, y) = if delta <= 1.0 / (m * d) {
        (floor_count(2.0 * d), 2 * r.n)
    } else if delta <= 1.0 / n {
        (floor_count(2.0 / (n * delta).sqrt()), 2 * r.n)
    } else {
        (2, floor_count(2.0 / delta))
    };
    r.require(x.min(y) >= 2, "min{x,y} ≥ 2")?;
    r.require(x.max(y) <= 2 * r.n, "max{x,y} ≤ 2n")?;
    r.require(x * y <= 4 * r.m, "xy ≤ 4m")?;
    r.require((x * x * y) as f64 * delta <= 8.0 + 1e-9, "x²yδ ≤ 8")?;
    let mut b = Builder::default();
    let (pa, pb, pc, pd) = (b.part(x), b.part(y), b.part(y), b.part(x));
    b.biclique(&pa, &pb);
    b.biclique(&pc, &pd);
    let (s, t) = (pa.start, pd.start);
    r.finish(
        b,
        Draft {
            params: vec![("x", x), ("y", y)],
            s: Some(Endpoint::Fixed(s)),
            t: Endpoint::Fixed(t),
            quads: QuadSpace::single([pa, pb, pc, pd]),
            model: AccessModel::ALL,
            w: vec![Endpoint::Fixed(s), Endpoint::Fixed(t)],
            vw_override: None,
            subdivided: false,
            c_bound: (1.0 - r.alpha).powi(6) * r.alpha / 16.0,
            separation: SeparationKind::Pair,
        },
    )
}

/// `copies` disjoint copies of K_{A,B} ∪ K_{C,D} with |A| = |D| = x,
/// |B| = |C| = y. Returns the parts of each copy.
fn sp_copies(b: &mut Builder, copies: usize, x: usize, y: usize) -> Vec<[Range<Vertex>; 4]> {
    (0..copies)
        .map(|_| {
            let (pa, pb, pc, pd) = (b.part(x), b.part(y), b.part(y), b.part(x));
            b.biclique(&pa, &pb);
            b.biclique(&pc, &pd);
            [pa, pb, pc, pd]
        })
        .collect()
}

fn sp_avg(r: &Request) -> Result<SwapFamily> {
    let (n, m, delta, d) = (r.n as f64, r.m as f64, r.delta, r.d());
    let (x, y) = if delta <= 1.0 / (m * n) {
        (2 * r.n, floor_count(2.0 * d))
    } else if delta <= 1.0 / d.powi(3) {
        (floor_count(2.0 / (d * delta).sqrt()), floor_count(2.0 * d))
    } else {
        let v = floor_count(2.0 * delta.powf(-1.0 / 3.0));
        (v, v)
    };
    r.require(2 <= y && y <= x && x <= 2 * r.n, "2 ≤ y ≤ x ≤ 2n")?;
    r.require(y as f64 <= 2.0 * d + 1e-9, "y ≤ 2d")?;
    r.require((x * x * y) as f64 * delta <= 8.0 + 1e-9, "x²yδ ≤ 8")?;
    let copies = (r.n / x).max(1);
    let mut b = Builder::default();
    let parts = sp_copies(&mut b, copies, x, y);
    let (first, last) = (&parts[0], &parts[copies - 1]);
    let (s, t) = (first[0].start, last[3].start);
    let quads = QuadSpace::single([first[0].clone(), first[1].clone(), last[2].clone(), last[3].clone()]);
    r.finish(
        b,
        Draft {
            params: vec![("x", x), ("y", y), ("copies", copies)],
            s: Some(Endpoint::Fixed(s)),
            t: Endpoint::Fixed(t),
            quads,
            model: AccessModel::ALL,
            w: vec![Endpoint::Fixed(s), Endpoint::Fixed(t)],
            vw_override: None,
            subdivided: false,
            c_bound: (1.0 - r.alpha).powi(4) * r.alpha / 16.0,
            separation: SeparationKind::Pair,
        },
    )
}

fn sp_avg_xor(r: &Request, subdivided: bool) -> Result<SwapFamily> {
    let x = floor_count(r.d().min(1.0 / r.delta));
    r.require(x >= 1, "x ≥ 1")?;
    r.require(x as f64 * r.delta <= 1.0 + 1e-9, "xδ ≤ 1")?;
    let copies = (r.n / x).max(1);
    let mut b = Builder::default();
    let parts = sp_copies(&mut b, copies, x, x);
    let (first, last) = (&parts[0], &parts[copies - 1]);
    let (s, t) = (first[0].start, last[3].start);
    let quads = QuadSpace::single([one(s), first[1].clone(), one(t), last[2].clone()]);
    let a = r.alpha;
    r.finish(
        b,
        Draft {
            params: vec![("x", x), ("copies", copies)],
            s: Some(Endpoint::Fixed(s)),
            t: Endpoint::Fixed(t),
            quads,
            model: if subdivided { JUMP_ADJ } else { JUMP_SORTED },
            w: vec![Endpoint::Fixed(s), Endpoint::Fixed(t)],
            vw_override: None,
            subdivided,
            c_bound: (1.0 - a).powi(4) * a / 4.0,
            separation: SeparationKind::Pair,
        },
    )
}

fn ss_avg(r: &Request) -> Result<SwapFamily> {
    let (n, m, delta, d) = (r.n as f64, r.m as f64, r.delta, r.d());
    let (x, y) = if delta <= 1.0 / m {
        (2 * r.n, floor_count(2.0 * d))
    } else if delta <= 1.0 / n {
        (2 * r.n, floor_count(2.0 / (n * delta)))
    } else {
        (floor_count(2.0 / delta), 2)
    };
    r.require(2 <= y && y <= x && x <= 2 * r.n, "2 ≤ y ≤ x ≤ 2n")?;
    r.require(y as f64 <= 2.0 * d + 1e-9, "y ≤ 2d")?;
    r.require((x * y) as f64 * delta <= 4.0 + 1e-9, "xyδ ≤ 4")?;
    let copies = (r.n / x).max(1);
    let mut b = Builder::default();
    let parts = sp_copies(&mut b, copies, x, y);
    let (first, last) = (&parts[0], &parts[copies - 1]);
    let s = last[0].start;
    let quads = QuadSpace::single([last[0].clone(), last[1].clone(), first[2].clone(), first[3].clone()]);
    r.finish(
        b,
        Draft {
            params: vec![("x", x), ("y", y), ("copies", copies)],
            s: Some(Endpoint::Fixed(s)),
            t: Endpoint::Role(2),
            quads,
            model: AccessModel::ALL,
            w: vec![Endpoint::Fixed(s)],
            vw_override: None,
            subdivided: false,
            c_bound: (1.0 - r.alpha).powi(3) * r.alpha / 4.0,
            separation: SeparationKind::Pair,
        },
    )
}

/// K_{A_i,B_i} for i < k and K_{C_j,D_j} for j < l.
struct StParts {
    a: Vec<Range<Vertex>>,
    b: Vec<Range<Vertex>>,
    c: Vec<Range<Vertex>>,
    d: Vec<Range<Vertex>>,
}

fn st_blocks(bld: &mut Builder, k: usize, l: usize, sizes: [usize; 4]) -> StParts {
    let mut p = StParts { a: Vec::new(), b: Vec::new(), c: Vec::new(), d: Vec::new() };
    for _ in 0..k {
        let (a, b) = (bld.part(sizes[0]), bld.part(sizes[1]));
        bld.biclique(&a, &b);
        p.a.push(a);
        p.b.push(b);
    }
    for _ in 0..l {
        let (c, d) = (bld.part(sizes[2]), bld.part(sizes[3]));
        bld.biclique(&c, &d);
        p.c.push(c);
        p.d.push(d);
    }
    p
}

fn st_params(k: usize, l: usize, sizes: [usize; 4]) -> Vec<(&'static str, usize)> {
    vec![("k", k), ("l", l), ("n_A", sizes[0]), ("n_B", sizes[1]), ("n_C", sizes[2]), ("n_D", sizes[3])]
}

fn st_wc_a(r: &Request) -> Result<SwapFamily> {
    let d = r.d();
    let x = if r.delta <= 1.0 / d { floor_count(d) } else { floor_count(1.0 / r.delta) };
    r.require(x >= 1, "x ≥ 1")?;
    r.require(x as f64 <= d + 1e-9, "x ≤ d")?;
    r.require(x as f64 * r.delta <= 1.0 + 1e-9, "xδ ≤ 1")?;
    let sizes = [1, 1, r.n, x];
    let mut b = Builder::default();
    let p = st_blocks(&mut b, 1, 1, sizes);
    let (s, t) = (p.b[0].start, p.d[0].start);
    let quads = QuadSpace::single([p.a[0].clone(), p.b[0].clone(), p.c[0].clone(), p.d[0].clone()]);
    r.finish(
        b,
        Draft {
            params: st_params(1, 1, sizes),
            s: Some(Endpoint::Fixed(s)),
            t: Endpoint::Fixed(t),
            quads,
            model: ADJ_ONLY,
            w: vec![Endpoint::Fixed(t)],
            vw_override: None,
            subdivided: false,
            c_bound: (1.0 - r.alpha).powi(3) * r.alpha / 4.0,
            separation: SeparationKind::Pair,
        },
    )
}

fn st_wc_jsa(r: &Request) -> Result<SwapFamily> {
    let d = r.d();
    let x = if r.delta <= 1.0 / (d * d) { floor_count(d) } else { floor_count(1.0 / r.delta.sqrt()) };
    r.require(x >= 1, "x ≥ 1")?;
    r.require(x as f64 <= d + 1e-9, "x ≤ d")?;
    r.require((x * x) as f64 * r.delta <= 1.0 + 1e-9, "x²δ ≤ 1")?;
    let sizes = [x, r.n, r.n, x];
    let mut b = Builder::default();
    let p = st_blocks(&mut b, 1, 1, sizes);
    let t = p.d[0].start;
    let quads = QuadSpace::single([p.a[0].clone(), p.b[0].clone(), p.c[0].clone(), p.d[0].clone()]);
    r.finish(
        b,
        Draft {
            params: st_params(1, 1, sizes),
            s: Some(Endpoint::Role(1)),
            t: Endpoint::Fixed(t),
            quads,
            model: AccessModel::ALL,
            w: vec![Endpoint::Fixed(t)],
            vw_override: None,
            subdivided: false,
            c_bound: (1.0 - r.alpha).powi(3) * r.alpha / 4.0,
            separation: SeparationKind::Pair,
        },
    )
}

fn st_ac_degree(r: &Request) -> Result<SwapFamily> {
    let nc = floor_count(r.d());
    r.require(nc >= 1, "⌊d⌋ ≥ 1")?;
    let sizes = [1, 1, nc, r.n];
    let mut b = Builder::default();
    let p = st_blocks(&mut b, 1, 1, sizes);
    let (s, t) = (p.b[0].start, p.d[0].start);
    let quads = QuadSpace::single([p.a[0].clone(), p.b[0].clone(), p.c[0].clone(), one(t)]);
    r.finish(
        b,
        Draft {
            params: st_params(1, 1, sizes),
            s: Some(Endpoint::Fixed(s)),
            t: Endpoint::Fixed(t),
            quads,
            model: JUMP_ADJ,
            w: vec![Endpoint::Fixed(t)],
            // A_1 and B_1 have constant size and are assumed unvisited
            vw_override: Some(vec![p.c[0].clone(), p.d[0].clone()]),
            subdivided: false,
            c_bound: (1.0 - r.alpha) * r.alpha / 2.0,
            separation: SeparationKind::Pair,
        },
    )
}

fn st_ac_a(r: &Request) -> Result<SwapFamily> {
    let (n, delta, d) = (r.n as f64, r.delta, r.d());
    let (x, y) = if delta <= 1.0 / n {
        (2 * r.n, floor_count(2.0 * d))
    } else if delta <= 1.0 / d {
        (floor_count(2.0 / delta), floor_count(2.0 * d))
    } else {
        let v = floor_count(2.0 / delta);
        (v, v)
    };
    r.require(2 <= y && y <= x && x <= 2 * r.n, "2 ≤ y ≤ x ≤ 2n")?;
    r.require(y as f64 <= 2.0 * d + 1e-9, "y ≤ 2d")?;
    r.require(x as f64 * delta <= 2.0 + 1e-9, "xδ ≤ 2")?;
    let l = (r.n / x).max(1);
    let sizes = [1, 1, y, x];
    let mut b = Builder::default();
    let p = st_blocks(&mut b, 1, l, sizes);
    let s = p.b[0].start;
    let t = p.d[l - 1].start;
    let quads = QuadSpace::single([p.a[0].clone(), p.b[0].clone(), p.c[l - 1].clone(), p.d[l - 1].clone()]);
    r.finish(
        b,
        Draft {
            params: st_params(1, l, sizes),
            s: Some(Endpoint::Fixed(s)),
            t: Endpoint::Fixed(t),
            quads,
            model: ADJ_ONLY,
            w: vec![Endpoint::Fixed(t)],
            vw_override: None,
            subdivided: false,
            c_bound: (1.0 - r.alpha).powi(3) * r.alpha / 4.0,
            separation: SeparationKind::Pair,
        },
    )
}

fn st_ac_ja(r: &Request) -> Result<SwapFamily> {
    let (n, m, delta, d) = (r.n as f64, r.m as f64, r.delta, r.d());
    let (x, y, z) = if delta <= 1.0 / m {
        let v = floor_count(2.0 * d);
        (v, v, 2 * r.n)
    } else if delta <= (d / n).min(n / d.powi(3)) {
        (floor_count((d / (n * delta)).sqrt()), floor_count(2.0 * d), floor_count(2.0 * (n / (d * delta)).sqrt()))
    } else if d / n <= delta && delta <= 1.0 / d {
        (1, floor_count(2.0 * d), floor_count(2.0 / delta))
    } else if n / d.powi(3) <= delta && delta <= 1.0 / n.sqrt() {
        let yz = floor_count(2.0 * n.cbrt() * delta.powf(-1.0 / 3.0));
        (floor_count(n.powf(-1.0 / 3.0) * delta.powf(-2.0 / 3.0)), yz, yz)
    } else {
        let v = floor_count(2.0 / delta);
        (1, v, v)
    };
    r.require(x >= 1, "x ≥ 1")?;
    r.require(2 <= y && y <= z && z <= 2 * r.n, "2 ≤ y ≤ z ≤ 2n")?;
    r.require(x.max(y) as f64 <= 2.0 * d + 1e-9, "max{x,y} ≤ 2d")?;
    r.require((x * z) as f64 * delta <= 4.0 + 1e-9, "xzδ ≤ 4")?;
    let k = (r.n / x).max(1);
    let l = (r.n / z).max(1);
    let sizes = [x, x, y, z];
    let mut b = Builder::default();
    let p = st_blocks(&mut b, k, l, sizes);
    let t = p.d[l - 1].start;
    let blocks = (0..k).map(|i| [p.a[i].clone(), p.b[i].clone(), p.c[l - 1].clone(), p.d[l - 1].clone()]).collect();
    r.finish(
        b,
        Draft {
            params: st_params(k, l, sizes),
            s: Some(Endpoint::Role(1)),
            t: Endpoint::Fixed(t),
            quads: QuadSpace { blocks },
            model: JUMP_ADJ,
            w: vec![Endpoint::Fixed(t)],
            vw_override: None,
            subdivided: false,
            c_bound: (1.0 - r.alpha).powi(3) * r.alpha / 4.0,
            separation: SeparationKind::Pair,
        },
    )
}

fn st_ac_jsa(r: &Request) -> Result<SwapFamily> {
    let (n, m, delta, d) = (r.n as f64, r.m as f64, r.delta, r.d());
    let (x, y) = if delta <= 1.0 / m {
        (2 * r.n, floor_count(2.0 * d))
    } else if delta <= 1.0 / n {
        (2 * r.n, floor_count(2.0 / (n * delta)))
    } else {
        (floor_count(2.0 / delta), 2)
    };
    r.require(2 <= y && y <= x && x <= 2 * r.n, "2 ≤ y ≤ x ≤ 2n")?;
    r.require(y as f64 <= 2.0 * d + 1e-9, "y ≤ 2d")?;
    r.require((x * y) as f64 * delta <= 4.0 + 1e-9, "xyδ ≤ 4")?;
    let l = (r.n / x).max(1);
    let sizes = [x, y, y, x];
    let mut b = Builder::default();
    let p = st_blocks(&mut b, 1, l, sizes);
    let t = p.d[l - 1].start;
    let quads = QuadSpace::single([p.a[0].clone(), p.b[0].clone(), p.c[l - 1].clone(), p.d[l - 1].clone()]);
    r.finish(
        b,
        Draft {
            params: st_params(1, l, sizes),
            s: Some(Endpoint::Role(0)),
            t: Endpoint::Fixed(t),
            quads,
            model: AccessModel::ALL,
            w: vec![Endpoint::Fixed(t)],
            vw_override: None,
            subdivided: false,
            c_bound: (1.0 - r.alpha).powi(4) * r.alpha / 8.0,
            separation: SeparationKind::Pair,
        },
    )
}

#[derive(Clone, Copy)]
enum SnVariant {
    NotAll { subdivided: bool },
    All,
    AvgNotAll,
    AvgAll,
}

fn sn(r: &Request, v: SnVariant) -> Result<SwapFamily> {
    let (n, m, d) = (r.n as f64, r.m as f64, r.d());
    let (x, copies) = match v {
        SnVariant::NotAll { .. } => (floor_count(m.sqrt()), 1),
        SnVariant::All => (floor_count(n.sqrt()), 1),
        // with x = 1 the swap maps the gadget onto an isomorphic copy
        SnVariant::AvgNotAll => (floor_count(d).max(2), (r.n / floor_count(d).max(2)).max(1)),
        SnVariant::AvgAll => (floor_count(d.min(n.sqrt())).max(2), (r.n / floor_count(d).max(2)).max(1)),
    };
    r.require(x >= 2, "x ≥ 2")?;
    r.require(x * x <= r.m, "x² ≤ m")?;
    let mut b = Builder::default();
    let (pa, pb, pc) = (b.part(x), b.part(x), b.part(x));
    let bv = pb.start;
    b.biclique(&pa, &one(bv));
    b.biclique(&pb, &pc);
    let mut df = Vec::with_capacity(copies);
    for _ in 0..copies {
        let (pd, pf) = (b.part(x), b.part(2 * x));
        b.biclique(&pd, &pf);
        df.push((pd, pf));
    }
    let t = df[0].1.start;
    let quads = QuadSpace::single([one(bv), pc.clone(), one(t), df[0].0.clone()]);
    let (model, subdivided, vw_override) = match v {
        SnVariant::NotAll { subdivided: true } => (JUMP_ADJ, true, None),
        SnVariant::NotAll { .. } | SnVariant::AvgNotAll => (JUMP_SORTED, false, None),
        // A ∪ B ∪ C is assumed unvisited, so V_W is the union of the D, F copies
        SnVariant::All | SnVariant::AvgAll => {
            (AccessModel::ALL, false, Some(df.iter().flat_map(|(pd, pf)| [pd.clone(), pf.clone()]).collect()))
        }
    };
    r.finish(
        b,
        Draft {
            params: vec![("x", x), ("copies", copies)],
            s: None,
            t: Endpoint::Fixed(t),
            quads,
            model,
            w: vec![Endpoint::Fixed(t)],
            vw_override,
            subdivided,
            c_bound: (1.0 - r.alpha).powi(2) * r.alpha / 84.0,
            separation: SeparationKind::PageRankGap,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::check_swappable;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> EstimatorConfig {
        EstimatorConfig::default()
    }

    #[test]
    fn circulant_sizes() {
        for nf in 2..12 {
            for mf in 0..=nf * (nf - 1) / 2 {
                let e = circulant(0, nf, mf);
                assert_eq!(e.len(), mf);
                assert!(Graph::from_edges(nf, &e).is_ok(), "nf={nf} mf={mf}");
            }
        }
    }

    #[test]
    fn sp_worst_case_three() {
        let f = gen_family(FamilyId::SpWorst, 100, 400, 0.05, &cfg()).unwrap();
        assert_eq!(f.param("x"), Some(2));
        assert_eq!(f.param("y"), Some(40));
        assert_eq!(f.quads.len(), 2 * 40 * 40 * 2);
    }

    #[test]
    fn sn_worst_sizes() {
        let f = gen_family(FamilyId::SnWorst, 200, 10_000, 0.1, &cfg()).unwrap();
        assert_eq!(f.param("x"), Some(100));
        let t = f.default_target();
        assert_eq!(f.graph.degree(t), 100);
        // D–F block: every D vertex sees 2x vertices of F
        let qd = f.quads.blocks[0][3].start;
        assert_eq!(f.graph.degree(qd), 200);
    }

    #[test]
    fn structural_errors() {
        let e = gen_family(FamilyId::SpWorst, 3, 9, 0.1, &cfg()).unwrap_err();
        assert!(e.to_string().contains("n ≥ 4"), "{e}");
        assert!(gen_family(FamilyId::SpWorst, 10, 9, 0.1, &cfg()).is_err());
        assert!(gen_family(FamilyId::SpWorst, 10, 101, 0.1, &cfg()).is_err());
        assert!(gen_family(FamilyId::SpWorst, 10, 20, 0.0, &cfg()).is_err());
        assert!(gen_family(FamilyId::SpWorst, 10, 20, 1.5, &cfg()).is_err());
    }

    #[test]
    fn every_family_on_a_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for id in FamilyId::ALL {
            for &(n, m) in &[(8usize, 8usize), (20, 60), (40, 400), (64, 64 * 64)] {
                for &delta in &[1.0, 0.3, 0.05, 1e-3, 1e-6, 1e-9] {
                    let f = gen_family(id, n, m, delta, &cfg())
                        .unwrap_or_else(|e| panic!("{id} n={n} m={m} δ={delta}: {e}"));
                    let (gn, gm) = (f.graph.n(), f.graph.m());
                    assert!(gn >= n && gn <= 8 * n, "{id} n={n} m={m} δ={delta}: {gn} vertices");
                    assert!(gm >= m && gm <= 8 * m, "{id} n={n} m={m} δ={delta}: {gm} edges");
                    for _ in 0..100 {
                        let q = f.quads.sample(&mut rng);
                        check_swappable(&f.graph, &q).unwrap_or_else(|e| panic!("{id} n={n} m={m} δ={delta}: {e}"));
                        if f.model.sorted {
                            let g = &f.graph;
                            let [a, b, c, d] = q.0;
                            assert_eq!(g.degree(a), g.degree(d), "{id}");
                            assert_eq!(g.degree(b), g.degree(c), "{id}");
                        }
                    }
                }
            }
        }
    }
}
